#include "mt3/interval.hpp"

namespace mt3 {

namespace {

ComplexBox conj_box(const ComplexBox& b) { return {b.re, -b.im}; }

// Square-root enclosure for a box contained in the closed upper half plane,
// using the determination that is continuous there (principal branch).
ComplexBox sqrt_upper_halfplane(const ComplexBox& b) {
    const RealInterval m2 = box_abs2(b);
    const double mod_lo = std::max(step_down(std::sqrt(std::max(m2.lo, 0.0))), 0.0);
    const double den = step_down(2.0 * step_down(std::sqrt(mod_lo)));
    if (!(mod_lo > 0.0) || !(den > 0.0)) {
        // Box touches the origin: fall back to the modulus bound. Roots of
        // upper-half values lie in the closed first quadrant.
        const double M = step_up(std::sqrt(step_up(std::sqrt(std::max(m2.hi, 0.0)))));
        return {{0.0, M}, {0.0, M}};
    }
    // Centered form: on the cut-free convex region the root map is
    // Lipschitz with constant 1/(2 sqrt(min |v|)).
    const Complex c = b.mid();
    const Complex s = std::sqrt(c);
    const RealInterval dist = box_abs(b - ComplexBox(c));
    double rho = step_up(dist.hi / den);
    // Padding for the non-directed std::sqrt(complex) at the center.
    rho = step_up(rho + 8.0 * std::numeric_limits<double>::epsilon() * std::abs(s));
    return {{step_down(s.real() - rho), step_up(s.real() + rho)},
            {step_down(s.imag() - rho), step_up(s.imag() + rho)}};
}

} // namespace

std::pair<ComplexBox, ComplexBox> interval_sqrt(const ComplexBox& b) {
    // The pair (S, -S) must jointly contain both roots of every member, so
    // each half plane may use whichever determination is continuous on it.
    ComplexBox S;
    if (b.im.lo >= 0.0) {
        S = sqrt_upper_halfplane(b);
    } else if (b.im.hi <= 0.0) {
        S = conj_box(sqrt_upper_halfplane(conj_box(b)));
    } else {
        const ComplexBox upper(b.re, {0.0, b.im.hi});
        const ComplexBox lower(b.re, {b.im.lo, 0.0});
        const ComplexBox s_up = sqrt_upper_halfplane(upper);
        const ComplexBox s_dn = conj_box(sqrt_upper_halfplane(conj_box(lower)));
        // Across the negative real axis the principal branch jumps but the
        // determination continued from above (minus the principal value on
        // the lower half) does not; pick whichever is continuous on the part
        // of the real axis the box crosses. Either choice keeps both roots
        // of every member inside (S, -S).
        S = b.re.hi <= 0.0 ? box_hull(s_up, -s_dn) : box_hull(s_up, s_dn);
    }
    return {S, -S};
}

} // namespace mt3
