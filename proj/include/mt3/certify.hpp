#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mt3/interval.hpp"

namespace mt3 {

// The open ellipse {z : |1-z| + |z| < threshold} with foci 0 and 1,
// shrunk by `margin` for certification.
struct EllipseDomain {
    double threshold = 0.0; // defaults to tau via make()
    double margin = 0.0;

    static EllipseDomain make(double margin = 0.0);

    double effective() const { return threshold - margin; }
    // Bounding rectangle of the (shrunken) ellipse; empty when the domain is.
    bool bounding_box(ComplexBox& out) const;
};

bool ellipse_contains(const Complex& z, const EllipseDomain& dom);

// Companion value of the invariant a = w3*w4 under the fiber involution:
//   ((2i-1) + (1-i)a + branch * sqrt(6i a^2 - (2+6i) a + 1)) / (2i-2)
// with the principal square root.
Complex companion_a(const Complex& a, int branch);

// The coefficient pair of the level-matching quadratic A s^2 - 2t s + B = 0
// in s = |w3|^2. `feasible` records whether the eliminated ratio
// |w1|^2/|w3|^2 = (R-D)/D is positive, i.e. whether a companion on a common
// level is geometrically possible at all for this branch; AB bounds only
// constrain the feasible configurations.
struct ABValue {
    Complex a;
    Complex a_hat;
    double A = 0.0;
    double B = 0.0;
    double AB = 0.0;
    int branch = +1;
    bool feasible = false;
};

// Throws DomainError("degenerate pair") when a denominator magnitude is
// below 1e-13 (occurs on the ellipse boundary).
ABValue ab_product(const Complex& a, int branch);

// 4(t^2 - AB) for the chosen branch.
double discriminant(double t, const Complex& a, int branch);

// Existence of a geometrically admissible positive root of the
// level-matching quadratic, over both branches.
enum class RootVerdict { None, Exists };
RootVerdict root_check(double t, const Complex& a);

// Interval enclosure of min-over-branches AB over the box, where an
// infeasible branch imposes no constraint (contributes +infinity). Returns
// the whole line when a denominator enclosure straddles zero (subdivide).
RealInterval ab_enclosure(const ComplexBox& b);

struct CertifyConfig {
    int max_depth = 60;
    double min_box_width = 1e-12;
    std::string queue_order = "widest-first";
    int threads = 1;
};

struct CertificateReport {
    EllipseDomain region;
    double bound = 0.0;
    bool certified = false;
    bool refuted = false;
    std::optional<Complex> violation; // witness point when refuted
    std::uint64_t boxes_processed = 0;
    int max_depth_reached = 0;
    std::vector<ComplexBox> unresolved_boxes;
    double wall_time = 0.0;
    CertifyConfig config;
};

// Adaptive branch-and-bound certificate that AB >= bound over every
// feasible branch configuration on the shrunken ellipse. Sound by interval
// enclosure; inconclusive (never unsound) on depth or width exhaustion.
CertificateReport certify_lower_bound(const EllipseDomain& dom, double bound,
                                      const CertifyConfig& cfg = {});

struct GridScanResult {
    double min_ab; // +infinity when no member point yields a feasible value
    Complex argmin{0.0, 0.0};
    std::uint64_t members = 0;
    std::uint64_t missing = 0; // members with no feasible/nondegenerate value
};

// Non-rigorous pointwise scan of min-over-feasible-branches AB on an
// nx-by-ny grid over the bounding rectangle. When `csv_path` is non-empty,
// writes rows re,im,ab_min_branch (value empty for non-members/missing).
GridScanResult grid_scan(const EllipseDomain& dom, int nx, int ny,
                         const std::string& csv_path = "");

} // namespace mt3
