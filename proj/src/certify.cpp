#include "mt3/certify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <thread>

namespace mt3 {

namespace {

const Complex kI(0.0, 1.0);

Complex radicand(const Complex& a) {
    return Complex(0.0, 6.0) * a * a - Complex(2.0, 6.0) * a + 1.0;
}

} // namespace

EllipseDomain EllipseDomain::make(double margin) {
    return {tau(), margin};
}

bool EllipseDomain::bounding_box(ComplexBox& out) const {
    const double semi_major = effective() / 2.0;
    const double disc = semi_major * semi_major - 0.25;
    if (disc <= 0.0) return false; // |1-z|+|z| >= 1 always: domain empty
    const double semi_minor = std::sqrt(disc);
    out = ComplexBox({0.5 - semi_major, 0.5 + semi_major},
                     {-semi_minor, semi_minor});
    return true;
}

bool ellipse_contains(const Complex& z, const EllipseDomain& dom) {
    return std::abs(1.0 - z) + std::abs(z) < dom.effective();
}

Complex companion_a(const Complex& a, int branch) {
    const Complex s = std::sqrt(radicand(a));
    const Complex num = Complex(-1.0, 2.0) + Complex(1.0, -1.0) * a +
                        (branch >= 0 ? s : -s);
    return num / Complex(-2.0, 2.0);
}

ABValue ab_product(const Complex& a, int branch) {
    ABValue v;
    v.a = a;
    v.branch = branch >= 0 ? +1 : -1;
    v.a_hat = companion_a(a, branch);
    const double D = abs2(v.a_hat) - abs2(a);
    const double R = 2.0 * (v.a_hat.real() - a.real());
    const double RD = R - D; // equals |1-a|^2 - |1-a_hat|^2
    if (std::abs(D) < 1e-13 || std::abs(RD) < 1e-13)
        throw DomainError("degenerate pair");
    v.A = R / D;
    v.B = ((1.0 - 2.0 * a.real()) * abs2(v.a_hat) -
           (1.0 - 2.0 * v.a_hat.real()) * abs2(a)) / RD;
    v.AB = v.A * v.B;
    v.feasible = D * RD > 0.0;
    return v;
}

double discriminant(double t, const Complex& a, int branch) {
    return 4.0 * (t * t - ab_product(a, branch).AB);
}

RootVerdict root_check(double t, const Complex& a) {
    if (!(t > 1.0)) throw DomainError("root_check requires t > 1");
    for (int branch : {+1, -1}) {
        const ABValue v = ab_product(a, branch);
        if (!v.feasible) continue; // no admissible configuration on this branch
        const double delta = 4.0 * (t * t - v.AB);
        if (delta < 0.0) continue;
        const double sd = std::sqrt(delta);
        const double r1 = (2.0 * t + sd) / (2.0 * v.A);
        const double r2 = (2.0 * t - sd) / (2.0 * v.A);
        if (r1 > 0.0 || r2 > 0.0) return RootVerdict::Exists;
    }
    return RootVerdict::None;
}

namespace {

struct ABEnclosure {
    // Encloses min-over-feasible-branches AB; [inf, inf] when no branch can
    // be feasible anywhere in the box.
    RealInterval min_ab;
    // Sound upper bound of the min over branches that are feasible for
    // every point of the box; +inf when no branch is certainly feasible.
    double certain_upper = std::numeric_limits<double>::infinity();
};

ABEnclosure ab_enclosure_impl(const ComplexBox& b) {
    const ComplexBox rad = Complex(0.0, 6.0) * (b * b) -
                           Complex(2.0, 6.0) * b + ComplexBox(Complex(1.0, 0.0));
    const auto roots = interval_sqrt(rad);
    const RealInterval a2 = box_abs2(b);

    const double inf = std::numeric_limits<double>::infinity();
    ABEnclosure out;
    out.min_ab = RealInterval(inf, inf); // no constraint if nothing feasible
    bool any = false;
    for (const ComplexBox& s : {roots.first, roots.second}) {
        const ComplexBox num = ComplexBox(Complex(-1.0, 2.0)) +
                               Complex(1.0, -1.0) * b + s;
        const ComplexBox ahat = Complex(-0.25, -0.25) * num; // 1/(2i-2)
        const RealInterval D = box_abs2(ahat) - a2;
        const RealInterval R = 2.0 * (ahat.re - b.re);
        const RealInterval RD = R - D; // equals |1-a|^2 - |1-ahat|^2
        // Feasibility product: the branch constrains only where D*RD > 0.
        const RealInterval P = D * RD;
        if (P.hi <= 0.0) continue; // certainly infeasible on the whole box
        const RealInterval Bn = (RealInterval(1.0) - 2.0 * b.re) * box_abs2(ahat) -
                                (RealInterval(1.0) - 2.0 * ahat.re) * a2;
        RealInterval AB;
        if (!D.contains_zero() && !RD.contains_zero()) {
            AB = (R / D) * (Bn / RD);
        } else {
            // A zero curve of D or RD crosses the box. On the feasible part
            // AB = (R*Bn) / (D*RD) with denominator in (0, P.hi]; the bound
            // is finite on the side where the numerator keeps its sign.
            const RealInterval N = R * Bn;
            AB = {N.lo >= 0.0 ? step_down(N.lo / P.hi) : -inf,
                  N.hi <= 0.0 ? step_up(N.hi / P.hi) : inf};
        }
        out.min_ab = any ? RealInterval(std::min(out.min_ab.lo, AB.lo),
                                        std::max(out.min_ab.hi, AB.hi))
                         : AB;
        any = true;
        const bool certainly_feasible =
            (D.lo > 0.0 && RD.lo > 0.0) || (D.hi < 0.0 && RD.hi < 0.0);
        if (certainly_feasible)
            out.certain_upper = std::min(out.certain_upper, AB.hi);
    }
    return out;
}

} // namespace

namespace {

void refine_enclosure(const ComplexBox& b, double target, int depth,
                      RealInterval& acc, bool& first) {
    if (b.max_side() <= target || depth <= 0) {
        const RealInterval e = ab_enclosure_impl(b).min_ab;
        acc = first ? e : hull(acc, e);
        first = false;
        return;
    }
    ComplexBox halves[2];
    if (b.re.width() >= b.im.width()) {
        const double m = b.re.mid();
        halves[0] = ComplexBox({b.re.lo, m}, b.im);
        halves[1] = ComplexBox({m, b.re.hi}, b.im);
    } else {
        const double m = b.im.mid();
        halves[0] = ComplexBox(b.re, {b.im.lo, m});
        halves[1] = ComplexBox(b.re, {m, b.im.hi});
    }
    refine_enclosure(halves[0], target, depth - 1, acc, first);
    refine_enclosure(halves[1], target, depth - 1, acc, first);
}

} // namespace

RealInterval ab_enclosure(const ComplexBox& b) {
    // The raw one-shot enclosure is sound but loose (interval dependency);
    // hulling over an internal subdivision tightens it at bounded cost. The
    // branch-and-bound certifier subdivides on its own and uses the raw form.
    const double side = b.max_side();
    if (side <= 0.0) return ab_enclosure_impl(b).min_ab;
    RealInterval acc;
    bool first = true;
    refine_enclosure(b, side / 64.0, 12, acc, first);
    return acc;
}

namespace {

enum class BoxOutcome { Discard, Accept, Split, Refute };

struct Task {
    ComplexBox box;
    int depth;
};

struct Classified {
    BoxOutcome outcome;
    Complex witness{0.0, 0.0};
};

Classified classify(const ComplexBox& box, const EllipseDomain& dom, double bound) {
    // Entirely outside the shrunken ellipse?
    const RealInterval sum =
        box_abs(ComplexBox(Complex(1.0, 0.0)) - box) + box_abs(box);
    if (sum.lo > step_up(dom.effective())) return {BoxOutcome::Discard};

    const RealInterval ab = ab_enclosure_impl(box).min_ab;
    if (ab.lo >= step_up(bound)) return {BoxOutcome::Accept};

    // Refutation probe at the midpoint: a member point with a certainly
    // feasible branch whose AB upper bound lies below the target refutes
    // the certificate.
    const Complex m = box.mid();
    const ComplexBox pt(m);
    const RealInterval psum =
        box_abs(ComplexBox(Complex(1.0, 0.0)) - pt) + box_abs(pt);
    if (psum.hi < dom.effective()) {
        const ABEnclosure pab = ab_enclosure_impl(pt);
        if (pab.certain_upper < bound) return {BoxOutcome::Refute, m};
    }
    return {BoxOutcome::Split};
}

void split_box(const ComplexBox& b, ComplexBox& left, ComplexBox& right) {
    if (b.re.width() >= b.im.width()) {
        const double m = b.re.mid();
        left = ComplexBox({b.re.lo, m}, b.im);
        right = ComplexBox({m, b.re.hi}, b.im);
    } else {
        const double m = b.im.mid();
        left = ComplexBox(b.re, {b.im.lo, m});
        right = ComplexBox(b.re, {m, b.im.hi});
    }
}

} // namespace

CertificateReport certify_lower_bound(const EllipseDomain& dom, double bound,
                                      const CertifyConfig& cfg) {
    const auto start = std::chrono::steady_clock::now();
    CertificateReport rep;
    rep.region = dom;
    rep.bound = bound;
    rep.config = cfg;
    if (!(dom.margin > 0.0))
        throw DomainError("certify_lower_bound requires margin > 0");

    std::vector<Task> pending;
    ComplexBox root;
    if (dom.bounding_box(root)) pending.push_back({root, 0});

    const int nthreads = std::max(1, cfg.threads);
    while (!pending.empty() && !rep.refuted) {
        // Widest-first processing order, deterministic tie-break.
        std::stable_sort(pending.begin(), pending.end(),
                         [](const Task& a, const Task& b) {
                             const double wa = a.box.max_side();
                             const double wb = b.box.max_side();
                             if (wa != wb) return wa > wb;
                             if (a.box.re.lo != b.box.re.lo)
                                 return a.box.re.lo < b.box.re.lo;
                             return a.box.im.lo < b.box.im.lo;
                         });

        std::vector<Classified> results(pending.size());
        auto worker = [&](std::size_t begin, std::size_t end) {
            for (std::size_t i = begin; i < end; ++i)
                results[i] = classify(pending[i].box, dom, bound);
        };
        if (nthreads == 1 || pending.size() < 64) {
            worker(0, pending.size());
        } else {
            std::vector<std::thread> pool;
            const std::size_t chunk = (pending.size() + nthreads - 1) / nthreads;
            for (int k = 0; k < nthreads; ++k) {
                const std::size_t b = std::min(pending.size(), k * chunk);
                const std::size_t e = std::min(pending.size(), b + chunk);
                if (b < e) pool.emplace_back(worker, b, e);
            }
            for (auto& th : pool) th.join();
        }

        // Combine in sorted order: results are independent of worker count.
        std::vector<Task> next;
        for (std::size_t i = 0; i < pending.size(); ++i) {
            const Task& t = pending[i];
            ++rep.boxes_processed;
            rep.max_depth_reached = std::max(rep.max_depth_reached, t.depth);
            switch (results[i].outcome) {
            case BoxOutcome::Discard:
            case BoxOutcome::Accept:
                break;
            case BoxOutcome::Refute:
                if (!rep.refuted) {
                    rep.refuted = true;
                    rep.violation = results[i].witness;
                }
                break;
            case BoxOutcome::Split:
                if (t.depth + 1 > cfg.max_depth ||
                    t.box.max_side() / 2.0 < cfg.min_box_width) {
                    rep.unresolved_boxes.push_back(t.box);
                } else {
                    ComplexBox l, r;
                    split_box(t.box, l, r);
                    next.push_back({l, t.depth + 1});
                    next.push_back({r, t.depth + 1});
                }
                break;
            }
        }
        pending = std::move(next);
    }

    rep.certified = !rep.refuted && rep.unresolved_boxes.empty();
    rep.wall_time =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    return rep;
}

GridScanResult grid_scan(const EllipseDomain& dom, int nx, int ny,
                         const std::string& csv_path) {
    if (nx < 2 || ny < 2) throw DomainError("grid_scan requires nx, ny >= 2");
    GridScanResult out;
    out.min_ab = std::numeric_limits<double>::infinity();

    std::ofstream csv;
    if (!csv_path.empty()) {
        csv.open(csv_path);
        if (!csv) throw DomainError("cannot open " + csv_path);
        csv << "re,im,ab_min_branch\n";
    }

    ComplexBox bb;
    const bool nonempty = dom.bounding_box(bb);
    char line[96];
    for (int i = 0; i < nx && nonempty; ++i) {
        const double re = bb.re.lo + (bb.re.hi - bb.re.lo) * i / (nx - 1);
        for (int j = 0; j < ny; ++j) {
            const double im = bb.im.lo + (bb.im.hi - bb.im.lo) * j / (ny - 1);
            const Complex a(re, im);
            bool have = false;
            double val = 0.0;
            if (ellipse_contains(a, dom)) {
                ++out.members;
                for (int branch : {+1, -1}) {
                    try {
                        const ABValue v = ab_product(a, branch);
                        if (!v.feasible) continue;
                        if (!have || v.AB < val) val = v.AB;
                        have = true;
                    } catch (const DomainError&) {
                        // degenerate pair: recorded as missing
                    }
                }
                if (!have) ++out.missing;
                if (have && val < out.min_ab) {
                    out.min_ab = val;
                    out.argmin = a;
                }
            }
            if (csv) {
                if (have)
                    std::snprintf(line, sizeof line, "%.17g,%.17g,%.17g\n", re, im, val);
                else
                    std::snprintf(line, sizeof line, "%.17g,%.17g,\n", re, im);
                csv << line;
            }
        }
    }
    return out;
}

} // namespace mt3
