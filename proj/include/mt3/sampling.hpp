#pragma once

#include <random>

#include "mt3/certify.hpp"
#include "mt3/quadric.hpp"

namespace mt3 {

// Random point of the quadric with moduli of w1, w3 in [lo, hi]; w2 is
// solved from the quadric relation.
template <class Rng>
QuadricPoint random_quadric_point(Rng& rng, double lo = 0.2, double hi = 2.0) {
    std::uniform_real_distribution<double> mod(lo, hi);
    std::uniform_real_distribution<double> ang(0.0, 6.283185307179586);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    for (;;) {
        const Complex w1 = std::polar(mod(rng), ang(rng));
        const Complex w3 = std::polar(mod(rng), ang(rng));
        const Complex w4(unit(rng), unit(rng));
        const Complex w2 = (1.0 - w3 * w4) / w1;
        if (!is_finite(w2)) continue;
        return QuadricPoint{w1, w2, w3, w4};
    }
}

// Random invariant a with |1-a| + |a| <= t (rejection from the bounding box).
template <class Rng>
Complex random_ellipse_point(Rng& rng, double t) {
    const double semi_major = t / 2.0;
    const double semi_minor = std::sqrt(std::max(semi_major * semi_major - 0.25, 0.0));
    std::uniform_real_distribution<double> ux(0.5 - semi_major, 0.5 + semi_major);
    std::uniform_real_distribution<double> uy(-semi_minor, semi_minor);
    for (;;) {
        const Complex a(ux(rng), uy(rng));
        if (std::abs(1.0 - a) + std::abs(a) <= t) return a;
    }
}

// Random point on the level-t hypersurface via the deterministic sampler
// with random invariant, phases and split.
template <class Rng>
QuadricPoint random_mt_point(Rng& rng, double t) {
    std::uniform_real_distribution<double> ang(0.0, 6.283185307179586);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    const Complex a = random_ellipse_point(rng, t);
    return sample_mt(t, a, ang(rng), ang(rng), u01(rng)).point;
}

} // namespace mt3
