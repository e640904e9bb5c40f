#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include "mt3/core.hpp"

namespace mt3 {

// Outward rounding by one-ulp stepping. Every primitive result is widened
// by nextafter on both endpoints, which dominates the half-ulp error of the
// round-to-nearest hardware operation.
inline double step_down(double x) {
    return std::nextafter(x, -std::numeric_limits<double>::infinity());
}
inline double step_up(double x) {
    return std::nextafter(x, std::numeric_limits<double>::infinity());
}

// Closed interval [lo, hi] with outward-rounded arithmetic.
struct RealInterval {
    double lo = 0.0;
    double hi = 0.0;

    RealInterval() = default;
    RealInterval(double v) : lo(v), hi(v) {}
    RealInterval(double l, double h) : lo(l), hi(h) {}

    static RealInterval whole() {
        const double inf = std::numeric_limits<double>::infinity();
        return {-inf, inf};
    }

    bool contains(double v) const { return lo <= v && v <= hi; }
    bool contains_zero() const { return lo <= 0.0 && 0.0 <= hi; }
    double width() const { return hi - lo; }
    double mid() const { return 0.5 * (lo + hi); }
};

inline RealInterval operator+(const RealInterval& a, const RealInterval& b) {
    return {step_down(a.lo + b.lo), step_up(a.hi + b.hi)};
}
inline RealInterval operator-(const RealInterval& a, const RealInterval& b) {
    return {step_down(a.lo - b.hi), step_up(a.hi - b.lo)};
}
inline RealInterval operator-(const RealInterval& a) { return {-a.hi, -a.lo}; }

inline RealInterval operator*(const RealInterval& a, const RealInterval& b) {
    const double p1 = a.lo * b.lo, p2 = a.lo * b.hi, p3 = a.hi * b.lo, p4 = a.hi * b.hi;
    return {step_down(std::min({p1, p2, p3, p4})), step_up(std::max({p1, p2, p3, p4}))};
}

inline RealInterval operator*(double s, const RealInterval& a) {
    return RealInterval(s) * a;
}

// Division; returns the whole line when the divisor straddles zero.
inline RealInterval operator/(const RealInterval& a, const RealInterval& b) {
    if (b.contains_zero()) return RealInterval::whole();
    const double p1 = a.lo / b.lo, p2 = a.lo / b.hi, p3 = a.hi / b.lo, p4 = a.hi / b.hi;
    return {step_down(std::min({p1, p2, p3, p4})), step_up(std::max({p1, p2, p3, p4}))};
}

// Tight square: never negative even when the interval straddles zero.
inline RealInterval sqr(const RealInterval& a) {
    const double m = std::max(std::abs(a.lo), std::abs(a.hi));
    double lo = 0.0;
    if (!a.contains_zero()) {
        const double n = std::min(std::abs(a.lo), std::abs(a.hi));
        lo = step_down(n * n);
        if (lo < 0.0) lo = 0.0;
    }
    return {lo, step_up(m * m)};
}

// Square root of a nonnegative interval (lo clamped at zero).
// std::sqrt is correctly rounded, so one ulp of widening is enough.
inline RealInterval isqrt(const RealInterval& a) {
    const double lo = std::sqrt(std::max(a.lo, 0.0));
    const double hi = std::sqrt(std::max(a.hi, 0.0));
    return {std::max(step_down(lo), 0.0), step_up(hi)};
}

inline RealInterval hull(const RealInterval& a, const RealInterval& b) {
    return {std::min(a.lo, b.lo), std::max(a.hi, b.hi)};
}

// Axis-aligned rectangle enclosure of a set of complex values.
struct ComplexBox {
    RealInterval re, im;

    ComplexBox() = default;
    ComplexBox(RealInterval r, RealInterval i) : re(r), im(i) {}
    ComplexBox(const Complex& z) : re(z.real()), im(z.imag()) {}

    bool contains(const Complex& z) const {
        return re.contains(z.real()) && im.contains(z.imag());
    }
    Complex mid() const { return {re.mid(), im.mid()}; }
    double max_side() const { return std::max(re.width(), im.width()); }
};

inline ComplexBox operator+(const ComplexBox& a, const ComplexBox& b) {
    return {a.re + b.re, a.im + b.im};
}
inline ComplexBox operator-(const ComplexBox& a, const ComplexBox& b) {
    return {a.re - b.re, a.im - b.im};
}
inline ComplexBox operator-(const ComplexBox& a) { return {-a.re, -a.im}; }

inline ComplexBox operator*(const ComplexBox& a, const ComplexBox& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

inline ComplexBox operator*(const Complex& s, const ComplexBox& a) {
    return ComplexBox(s) * a;
}

inline RealInterval box_abs2(const ComplexBox& a) { return sqr(a.re) + sqr(a.im); }
inline RealInterval box_abs(const ComplexBox& a) { return isqrt(box_abs2(a)); }

inline ComplexBox box_hull(const ComplexBox& a, const ComplexBox& b) {
    return {hull(a.re, b.re), hull(a.im, b.im)};
}

// Enclosures (S, -S) of the two square roots of every value in b. S encloses
// the principal branch; when b straddles the negative real axis it is split
// into half-planes and the per-half enclosures are hulled.
std::pair<ComplexBox, ComplexBox> interval_sqrt(const ComplexBox& b);

} // namespace mt3
