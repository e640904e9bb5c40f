#pragma once

#include <array>
#include <utility>
#include <vector>

#include "mt3/quadric.hpp"

namespace mt3 {

inline constexpr double kDefaultFiberTol = 1e-9;
inline constexpr double kFiberDedupeTol = 1e-8; // relative

// Why a fiber has no companions.
enum class FiberReason {
    Companions,     // two (or one, after deduplication) companions found
    TrivialAxis,    // w1 ~ 0 or w3 ~ 0: the fiber is the point itself
};

struct FiberResult {
    QuadricPoint base;
    std::vector<QuadricPoint> companions; // size <= 2
    std::vector<double> residuals;        // |map(companion) - map(base)| per companion
    std::vector<double> t_levels;         // t_level per companion
    std::vector<int> branch;              // +1 / -1 square-root branch per companion
    FiberReason reason = FiberReason::Companions;
    bool ill_conditioned = false; // radicand nearly zero: double-root regime
};

// The two branch values of the companion fourth coordinate,
//   ((2i-1) + (1-i) w3 w4 +- sqrt(6i (w3 w4)^2 - (2+6i) w3 w4 + 1)) / ((2i-2) w3),
// principal branch first. Throws DomainError if |w1| or |w3| <= 1e-12.
std::pair<Complex, Complex> companion_w4(const QuadricPoint& W);

// Full fiber of the restricted map through W. On the coordinate axes
// (w1 ~ 0 or w3 ~ 0) the companion list is empty with reason TrivialAxis.
FiberResult fiber_of(const QuadricPoint& W, double fiber_tol = kDefaultFiberTol);

// Independent root oracle: assembles the cubic in the companion coordinate
// directly from the image identity and solves it iteratively
// (Durand-Kerner), bypassing the closed form. Returns all three roots.
std::vector<Complex> cubic_oracle(const QuadricPoint& W);

// The explicit three-point fiber over (u, u, 0), defined for t >= sqrt(2):
//   (u, 1/u, u, 0), (u, 0, u, 1/u), (u, (1+i)/(2u), u, (1-i)/(2u))
// with u > 0 from 2u^2 + 1/u^2 = 2t (larger root for u^2).
std::array<QuadricPoint, 3> three_point_witness(double t);

// t-levels of the companions of W.
std::vector<double> companion_levels(const QuadricPoint& W);

} // namespace mt3
