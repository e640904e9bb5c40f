#pragma once

#include <array>

#include "mt3/core.hpp"

namespace mt3 {

inline constexpr double kDefaultQuadricTol = 1e-9;

// A point of the affine quadric {w1*w2 + w3*w4 = 1} in C^4.
// Construction checks the quadric residual and |w1|+|w3| > 0.
struct QuadricPoint {
    Complex w1, w2, w3, w4;

    static QuadricPoint create(Complex w1, Complex w2, Complex w3, Complex w4,
                               double quadric_tol = kDefaultQuadricTol);

    // Residual |w1*w2 + w3*w4 - 1|.
    double quadric_residual() const;
};

// The image (c1, c2, c3) of a quadric point under the cubic map; c1 and c2
// repeat w1 and w3 of the source.
struct MapImage {
    Complex c1, c2, c3;
};

// Linear change of coordinates w1 = z1 + i z2, w2 = z1 - i z2,
// w3 = z3 + i z4, w4 = z3 - i z4 and its inverse.
std::array<Complex, 4> to_w_coords(Complex z1, Complex z2, Complex z3, Complex z4);
std::array<Complex, 4> from_w_coords(Complex w1, Complex w2, Complex w3, Complex w4);

// Level of the norm stratification: (|w1|^2+|w2|^2+|w3|^2+|w4|^2)/2.
// Equals 1 exactly on the sphere slice (w2 = conj w1, w4 = conj w3).
double t_level(const QuadricPoint& W);

// The extended Ahern-Rudin map (w1, w3, w2*w3*w4^2 + i*w1*w2^2*w4).
MapImage eval_map(const QuadricPoint& W);

// Chart used for the Jacobian of the restricted map.
enum class JacobianChart { Phi, Psi }; // Phi: coordinates (w1,w3,w4); Psi: (w1,w2,w3)

struct JacobianValue {
    Complex value;
    JacobianChart chart;
};

// Jacobian of the restricted map in the chart with the larger of |w1|, |w3|:
//   phi chart : ((3i-3)(w3 w4)^2 + (2-4i) w3 w4 + i) / w1
//   psi chart : -((3-3i)(w1 w2)^2 + (2i-4) w1 w2 + 1) / w3
// Throws DomainError if both |w1| and |w3| are below 1e-12.
JacobianValue eval_jacobian(const QuadricPoint& W);

// Minimum of g(x,y) = x + p/x + y + q/y over x,y > 0, which is
// 2(sqrt(p)+sqrt(q)) at (sqrt(p), sqrt(q)). Throws on p <= 0 or q <= 0.
struct MinGResult {
    double min_value;
    std::array<double, 2> argmin;
};
MinGResult min_g(double p, double q);

// A point of the level-t hypersurface where the Jacobian vanishes.
// Only exists for t >= tau; throws DomainError below the threshold.
QuadricPoint degeneracy_witness(double t);

// Deterministic point sampler on the level-t hypersurface with prescribed
// product a = w3*w4. The larger quadratic root is always taken; `split`
// allocates the level excess between the two scalar equations.
struct SampleResult {
    QuadricPoint point;
    double x; // |w1|^2
    double y; // |w3|^2
};
SampleResult sample_mt(double t, Complex a, double phase1, double phase3,
                       double split = 0.5);

} // namespace mt3
