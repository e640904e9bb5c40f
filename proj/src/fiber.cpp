#include "mt3/fiber.hpp"

#include <algorithm>
#include <cmath>

namespace mt3 {

namespace {

const Complex kI(0.0, 1.0);

Complex radicand(const Complex& u) {
    // 6i u^2 - (2+6i) u + 1
    return Complex(0.0, 6.0) * u * u - Complex(2.0, 6.0) * u + 1.0;
}

void require_off_axes(const QuadricPoint& W) {
    if (std::abs(W.w1) <= 1e-12 || std::abs(W.w3) <= 1e-12)
        throw DomainError("trivial fiber: w1 or w3 vanishes");
}

} // namespace

std::pair<Complex, Complex> companion_w4(const QuadricPoint& W) {
    require_off_axes(W);
    const Complex u = W.w3 * W.w4;
    const Complex s = std::sqrt(radicand(u));
    const Complex base = Complex(-1.0, 2.0) + Complex(1.0, -1.0) * u;
    const Complex den = Complex(-2.0, 2.0) * W.w3;
    return {(base + s) / den, (base - s) / den};
}

FiberResult fiber_of(const QuadricPoint& W, double fiber_tol) {
    FiberResult out;
    out.base = W;
    if (std::abs(W.w1) <= 1e-12 || std::abs(W.w3) <= 1e-12) {
        out.reason = FiberReason::TrivialAxis;
        return out;
    }
    const MapImage img = eval_map(W);
    const Complex u = W.w3 * W.w4;
    out.ill_conditioned = std::abs(radicand(u)) < 1e-12;

    const auto roots = companion_w4(W);
    const double scale = std::max(1.0, std::abs(W.w4));
    int sign = +1;
    for (const Complex& hw4 : {roots.first, roots.second}) {
        const int br = sign;
        sign = -sign;
        if (std::abs(hw4 - W.w4) <= kFiberDedupeTol * scale)
            continue; // companion coincides with the base point
        const Complex hw2 = (1.0 - W.w3 * hw4) / W.w1;
        QuadricPoint comp{W.w1, hw2, W.w3, hw4};
        const MapImage cimg = eval_map(comp);
        const double res = std::abs(cimg.c3 - img.c3);
        if (res > fiber_tol && !out.ill_conditioned)
            throw DomainError("fiber identity residual " + std::to_string(res) +
                              " exceeds tolerance");
        out.companions.push_back(comp);
        out.residuals.push_back(res);
        out.t_levels.push_back(t_level(comp));
        out.branch.push_back(br);
    }
    // Deduplicate the two companions against each other (double-root regime).
    if (out.companions.size() == 2) {
        const double d = std::abs(out.companions[0].w4 - out.companions[1].w4);
        if (d <= kFiberDedupeTol * std::max(1.0, std::abs(out.companions[0].w4))) {
            out.companions.pop_back();
            out.residuals.pop_back();
            out.t_levels.pop_back();
            out.branch.pop_back();
        }
    }
    return out;
}

std::vector<Complex> cubic_oracle(const QuadricPoint& W) {
    require_off_axes(W);
    // Substituting hw2 = (1 - w3*hw4)/w1 into the image identity and
    // multiplying through by w1 gives
    //   (i-1) w3^2 hw4^3 + (1-2i) w3 hw4^2 + i hw4 - w1*c3 = 0.
    const Complex c3 = eval_map(W).c3;
    const std::array<Complex, 4> coeff = {
        -W.w1 * c3,                     // hw4^0
        kI,                             // hw4^1
        Complex(1.0, -2.0) * W.w3,      // hw4^2
        Complex(-1.0, 1.0) * W.w3 * W.w3, // hw4^3
    };

    // Durand-Kerner iteration on the monic normalization.
    std::array<Complex, 3> a;
    for (int k = 0; k < 3; ++k) a[k] = coeff[k] / coeff[3];
    auto p = [&](const Complex& x) { return ((x + a[2]) * x + a[1]) * x + a[0]; };

    std::array<Complex, 3> r = {Complex(0.4, 0.9),
                                Complex(0.4, 0.9) * Complex(0.4, 0.9),
                                Complex(0.4, 0.9) * Complex(0.4, 0.9) * Complex(0.4, 0.9)};
    for (int it = 0; it < 200; ++it) {
        double shift = 0.0;
        for (int k = 0; k < 3; ++k) {
            Complex den(1.0, 0.0);
            for (int j = 0; j < 3; ++j)
                if (j != k) den *= r[k] - r[j];
            const Complex d = p(r[k]) / den;
            r[k] -= d;
            shift = std::max(shift, std::abs(d));
        }
        if (shift < 1e-14) break;
    }
    return {r.begin(), r.end()};
}

std::array<QuadricPoint, 3> three_point_witness(double t) {
    const double s2 = DomainConstants::get().sqrt2;
    if (t < s2)
        throw DomainError("three_point_witness requires t >= sqrt(2)");
    const double u2 = (t + std::sqrt(std::max(t * t - 2.0, 0.0))) / 2.0;
    const double u = std::sqrt(u2);
    const Complex half_plus(0.5, 0.5), half_minus(0.5, -0.5);
    return {
        QuadricPoint::create(u, 1.0 / u, u, 0.0),
        QuadricPoint::create(u, 0.0, u, 1.0 / u),
        QuadricPoint::create(u, half_plus / u, u, half_minus / u),
    };
}

std::vector<double> companion_levels(const QuadricPoint& W) {
    require_off_axes(W);
    return fiber_of(W).t_levels;
}

} // namespace mt3
