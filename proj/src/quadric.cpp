#include "mt3/quadric.hpp"

#include <cmath>

namespace mt3 {

namespace {
const Complex kI(0.0, 1.0);
}

QuadricPoint QuadricPoint::create(Complex w1, Complex w2, Complex w3, Complex w4,
                                  double quadric_tol) {
    require_finite(w1, "w1");
    require_finite(w2, "w2");
    require_finite(w3, "w3");
    require_finite(w4, "w4");
    QuadricPoint W{w1, w2, w3, w4};
    const double res = W.quadric_residual();
    if (res > quadric_tol)
        throw DomainError("quadric residual " + std::to_string(res) +
                          " exceeds tolerance");
    if (std::abs(w1) + std::abs(w3) <= 0.0)
        throw DomainError("degenerate point: w1 = w3 = 0");
    return W;
}

double QuadricPoint::quadric_residual() const {
    return std::abs(w1 * w2 + w3 * w4 - 1.0);
}

std::array<Complex, 4> to_w_coords(Complex z1, Complex z2, Complex z3, Complex z4) {
    return {z1 + kI * z2, z1 - kI * z2, z3 + kI * z4, z3 - kI * z4};
}

std::array<Complex, 4> from_w_coords(Complex w1, Complex w2, Complex w3, Complex w4) {
    const Complex two_i(0.0, 2.0);
    return {(w1 + w2) / 2.0, (w1 - w2) / two_i, (w3 + w4) / 2.0, (w3 - w4) / two_i};
}

double t_level(const QuadricPoint& W) {
    return (abs2(W.w1) + abs2(W.w2) + abs2(W.w3) + abs2(W.w4)) / 2.0;
}

MapImage eval_map(const QuadricPoint& W) {
    return {W.w1, W.w3, W.w2 * W.w3 * W.w4 * W.w4 + kI * W.w1 * W.w2 * W.w2 * W.w4};
}

JacobianValue eval_jacobian(const QuadricPoint& W) {
    const double m1 = std::abs(W.w1);
    const double m3 = std::abs(W.w3);
    if (m1 < 1e-12 && m3 < 1e-12)
        throw DomainError("eval_jacobian: both |w1| and |w3| below 1e-12");
    if (m1 >= m3) {
        const Complex u = W.w3 * W.w4;
        const Complex num = Complex(-3.0, 3.0) * u * u + Complex(2.0, -4.0) * u + kI;
        return {num / W.w1, JacobianChart::Phi};
    }
    const Complex v = W.w1 * W.w2;
    const Complex num = Complex(3.0, -3.0) * v * v + Complex(-4.0, 2.0) * v + 1.0;
    return {-num / W.w3, JacobianChart::Psi};
}

MinGResult min_g(double p, double q) {
    if (!(p > 0.0) || !(q > 0.0))
        throw DomainError("min_g requires p > 0 and q > 0");
    const double sp = std::sqrt(p);
    const double sq = std::sqrt(q);
    return {2.0 * (sp + sq), {sp, sq}};
}

namespace {

// Larger root of x + p/x = c, valid for c >= 2*sqrt(p), p >= 0.
double larger_root(double c, double p) {
    const double disc = c * c - 4.0 * p;
    return (c + std::sqrt(std::max(disc, 0.0))) / 2.0;
}

} // namespace

QuadricPoint degeneracy_witness(double t) {
    const auto& k = DomainConstants::get();
    if (t < k.tau)
        throw DomainError("no degeneracy below threshold tau = " +
                          std::to_string(k.tau));
    const double p = (2.0 + k.sqrt2) / 6.0;
    const double q = (2.0 - k.sqrt2) / 6.0;
    // Keep y0 at the unconstrained minimizer sqrt(q) and absorb the whole
    // level excess into the x-equation.
    const double y0 = std::sqrt(q);
    const double c = 2.0 * t - 2.0 * y0;
    const double x0 = larger_root(c, p);
    const double sx = std::sqrt(x0);
    const double sy = std::sqrt(y0);
    const Complex cplus(3.0 + k.sqrt2, 1.0);
    const Complex cminus(3.0 - k.sqrt2, -1.0);
    return QuadricPoint::create(sx, cplus / (6.0 * sx), sy, cminus / (6.0 * sy));
}

SampleResult sample_mt(double t, Complex a, double phase1, double phase3,
                       double split) {
    require_finite(a, "a");
    if (!(t > 1.0))
        throw DomainError("sample_mt requires t > 1");
    if (!(split >= 0.0 && split <= 1.0))
        throw DomainError("sample_mt requires split in [0,1]");
    const double pa = std::abs(1.0 - a);
    const double qa = std::abs(a);
    const double excess = 2.0 * t - 2.0 * (pa + qa);
    if (excess < 0.0)
        throw DomainError("infeasible level: |1-a| + |a| > t");

    const double x = larger_root(2.0 * pa + split * excess, pa * pa);
    const double y = larger_root(2.0 * qa + (1.0 - split) * excess, qa * qa);
    const double sx = std::sqrt(x);
    const double sy = std::sqrt(y);
    const Complex e1 = std::polar(1.0, phase1);
    const Complex e3 = std::polar(1.0, phase3);

    const Complex w1 = e1 * sx;
    // a = 1 collapses the first pair: w2 is exactly 0.
    const Complex w2 = (pa == 0.0) ? Complex(0.0) : std::conj(e1) * (1.0 - a) / sx;
    const Complex w3 = e3 * sy;
    // a = 0 collapses the second pair: w4 is exactly 0 and any y > 0 works.
    const Complex w4 = (qa == 0.0) ? Complex(0.0) : std::conj(e3) * a / sy;
    return {QuadricPoint::create(w1, w2, w3, w4), x, y};
}

} // namespace mt3
