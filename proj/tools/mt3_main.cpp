#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "mt3/armaps.hpp"
#include "mt3/certify.hpp"
#include "mt3/fiber.hpp"
#include "mt3/io.hpp"
#include "mt3/quadric.hpp"
#include "mt3/sampling.hpp"

using nlohmann::json;
using namespace mt3;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFail = 1;
constexpr int kExitRefuted = 2;
constexpr int kExitInconclusive = 3;
constexpr int kExitBadInput = 64;

void emit(const json& j, const std::string& report_path) {
    if (report_path.empty()) {
        std::cout << j.dump(2) << "\n";
    } else {
        std::ofstream out(report_path);
        if (!out) throw ParseError("cannot open report path " + report_path);
        out << j.dump(2) << "\n";
    }
}

int thread_count(int flag_value) {
    if (flag_value > 0) return flag_value;
    if (const char* env = std::getenv("QC_THREADS")) {
        const int n = std::atoi(env);
        if (n > 0) return n;
    }
    return 1;
}

// ---------------------------------------------------------------------------
// verify: the cross-module identity suites.

struct SuiteResult {
    std::string name;
    bool pass;
    std::string detail;
};

int cmd_verify(std::uint64_t seed, int samples, double quadric_tol,
               const std::string& report_path) {
    std::mt19937_64 rng(seed);
    std::vector<SuiteResult> suites;
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    const double tau_v = tau();

    { // coordinate change: quadratic-form identity and round-trips
        double worst = 0.0;
        for (int k = 0; k < samples; ++k) {
            Complex z[4];
            for (auto& v : z) v = Complex(unit(rng), unit(rng));
            const auto w = to_w_coords(z[0], z[1], z[2], z[3]);
            const Complex lhs = z[0] * z[0] + z[1] * z[1] + z[2] * z[2] + z[3] * z[3];
            const Complex rhs = w[0] * w[1] + w[2] * w[3];
            worst = std::max(worst, std::abs(lhs - rhs));
            const auto back = from_w_coords(w[0], w[1], w[2], w[3]);
            for (int j = 0; j < 4; ++j)
                worst = std::max(worst, std::abs(back[j] - z[j]));
        }
        suites.push_back({"coordinates", worst <= 1e-12,
                          "max residual " + std::to_string(worst)});
    }
    { // quadric membership at the configured tolerance
        bool ok = true;
        std::string detail = "all samples within tolerance";
        for (int k = 0; k < samples && ok; ++k) {
            const QuadricPoint W = random_quadric_point(rng);
            if (W.quadric_residual() > quadric_tol) {
                ok = false;
                detail = "residual " + std::to_string(W.quadric_residual()) +
                         " > tol " + std::to_string(quadric_tol);
            }
        }
        suites.push_back({"membership", ok, detail});
    }
    { // sphere agreement: the cubic map matches its real form on the sphere
        double worst = 0.0;
        for (int k = 0; k < samples; ++k) {
            double v[4];
            double n2 = 0.0;
            for (auto& x : v) { x = unit(rng); n2 += x * x; }
            if (n2 == 0.0) continue;
            const double inv = 1.0 / std::sqrt(n2);
            const Complex z(v[0] * inv, v[1] * inv), w(v[2] * inv, v[3] * inv);
            const QuadricPoint W{z, std::conj(z), w, std::conj(w)};
            const Complex direct = w * std::conj(z) * std::conj(w) * std::conj(w) +
                                   Complex(0, 1) * z * std::conj(z) * std::conj(z) * std::conj(w);
            worst = std::max(worst, std::abs(eval_map(W).c3 - direct));
            worst = std::max(worst, std::abs(t_level(W) - 1.0));
        }
        suites.push_back({"sphere_agreement", worst <= 1e-12,
                          "max residual " + std::to_string(worst)});
    }
    { // Jacobian against central finite differences in the active chart
        double worst = 0.0;
        const double h = 1e-6;
        for (int k = 0; k < samples; ++k) {
            const QuadricPoint W = random_quadric_point(rng);
            const auto J = eval_jacobian(W);
            Complex fd;
            if (J.chart == JacobianChart::Phi) {
                auto phi = [&](const Complex& w4) {
                    return (1.0 - W.w3 * w4) / W.w1 *
                           (Complex(0, 1) * w4 + Complex(1, -1) * W.w3 * w4 * w4);
                };
                fd = (phi(W.w4 + h) - phi(W.w4 - h)) / (2.0 * h);
            } else {
                auto psi = [&](const Complex& w2) {
                    return (1.0 - W.w1 * w2) / W.w3 *
                           (w2 + Complex(-1, 1) * W.w1 * w2 * w2);
                };
                fd = -(psi(W.w2 + h) - psi(W.w2 - h)) / (2.0 * h);
            }
            const double scale = std::max(1.0, std::abs(J.value));
            worst = std::max(worst, std::abs(J.value - fd) / scale);
        }
        suites.push_back({"jacobian_fd", worst <= 1e-5,
                          "max relative error " + std::to_string(worst)});
    }
    { // closed-form companions against the iterative cubic oracle
        double worst = 0.0;
        for (int k = 0; k < samples; ++k) {
            const QuadricPoint W = random_quadric_point(rng);
            const auto pair = companion_w4(W);
            const auto roots = cubic_oracle(W);
            const Complex expect[3] = {W.w4, pair.first, pair.second};
            for (const Complex& e : expect) {
                double best = 1e9;
                for (const Complex& r : roots) best = std::min(best, std::abs(r - e));
                worst = std::max(worst, best);
            }
        }
        suites.push_back({"fiber_oracle", worst <= 1e-8,
                          "max set distance " + std::to_string(worst)});
    }
    { // companion levels stay above the threshold below it
        double min_level = 1e9;
        std::uniform_real_distribution<double> tdist(1.0 + 1e-3, tau_v - 0.01);
        for (int k = 0; k < samples; ++k) {
            const QuadricPoint W = random_mt_point(rng, tdist(rng));
            if (std::abs(W.w1) <= 1e-6 || std::abs(W.w3) <= 1e-6) continue;
            for (double lvl : companion_levels(W)) min_level = std::min(min_level, lvl);
        }
        suites.push_back({"companion_levels", min_level >= tau_v - 1e-9,
                          "min companion level " + std::to_string(min_level)});
    }

    json out = json::array();
    bool all = true;
    for (const auto& s : suites) {
        all = all && s.pass;
        std::cout << (s.pass ? "PASS" : "FAIL") << "  " << s.name << "  ("
                  << s.detail << ")\n";
        out.push_back({{"suite", s.name}, {"pass", s.pass}, {"detail", s.detail}});
    }
    if (!report_path.empty())
        emit({{"suites", out}, {"all_pass", all}, {"seed", seed}}, report_path);
    return all ? kExitOk : kExitFail;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"validated computations for the cubic embedding of the "
                 "level hypersurfaces of the affine quadric"};
    app.require_subcommand(1);

    // verify
    auto* verify = app.add_subcommand("verify", "run the cross-module identity suites");
    std::uint64_t seed = 1;
    int samples = 1000;
    double quadric_tol = kDefaultQuadricTol;
    std::string report_path;
    verify->add_option("--seed", seed, "RNG seed");
    verify->add_option("--samples", samples, "samples per suite");
    verify->add_option("--quadric-tol", quadric_tol, "membership tolerance");
    verify->add_option("--report", report_path, "write JSON report here");

    // certify
    auto* certify = app.add_subcommand("certify", "branch-and-bound lower-bound certificate");
    double epsilon = 1e-2;
    std::string bound_str = "tau2";
    CertifyConfig ccfg;
    int threads_flag = 0;
    certify->add_option("--epsilon", epsilon, "domain shrink margin (> 0)");
    certify->add_option("--bound", bound_str, "lower bound target (number or \"tau2\")");
    certify->add_option("--max-depth", ccfg.max_depth, "subdivision depth limit");
    certify->add_option("--min-width", ccfg.min_box_width, "smallest box width");
    certify->add_option("--threads", threads_flag, "worker threads (QC_THREADS fallback)");
    certify->add_option("--report", report_path, "write JSON report here");

    // scan
    auto* scan = app.add_subcommand("scan", "pointwise grid scan of the invariant product");
    int nx = 200, ny = 100;
    double scan_margin = 0.0;
    std::string scan_out;
    scan->add_option("--nx", nx, "grid columns");
    scan->add_option("--ny", ny, "grid rows");
    scan->add_option("--margin", scan_margin, "domain shrink margin");
    scan->add_option("--out", scan_out, "CSV output path");
    scan->add_option("--report", report_path, "write JSON summary here");

    // fibers
    auto* fibers = app.add_subcommand("fibers", "fibers of the restricted map");
    std::string point_text;
    std::optional<double> fiber_t;
    int fiber_samples = 10;
    std::uint64_t fiber_seed = 1;
    fibers->add_option("--point", point_text, "point as JSON, CSV, tuple, or file");
    fibers->add_option("--t", fiber_t, "sample on this level instead");
    fibers->add_option("--samples", fiber_samples, "number of sampled points");
    fibers->add_option("--seed", fiber_seed, "RNG seed for sampling");
    fibers->add_option("--report", report_path, "write JSON report here");

    // degeneracy
    auto* degeneracy = app.add_subcommand("degeneracy", "Jacobian degeneracy witness");
    double deg_t = 0.0;
    degeneracy->add_option("--t", deg_t, "level")->required();
    degeneracy->add_option("--report", report_path, "write JSON report here");

    // armap
    auto* armap = app.add_subcommand("armap", "generalized-map polynomial pipeline");
    std::string spec_path;
    armap->add_option("--spec", spec_path, "parts file (JSON)")->required();
    armap->add_option("--report", report_path, "write JSON report here");

    CLI11_PARSE(app, argc, argv);

    try {
        if (verify->parsed())
            return cmd_verify(seed, samples, quadric_tol, report_path);

        if (certify->parsed()) {
            double bound;
            if (bound_str == "tau2") {
                bound = tau_sq();
            } else {
                try {
                    bound = std::stod(bound_str);
                } catch (...) {
                    throw ParseError("field --bound: expected a number or \"tau2\"");
                }
            }
            ccfg.threads = thread_count(threads_flag);
            const auto rep =
                certify_lower_bound(EllipseDomain::make(epsilon), bound, ccfg);
            emit(report_to_json(rep), report_path);
            if (rep.certified) return kExitOk;
            return rep.refuted ? kExitRefuted : kExitInconclusive;
        }

        if (scan->parsed()) {
            const auto res = grid_scan(EllipseDomain::make(scan_margin), nx, ny, scan_out);
            json j = {{"min_ab", res.min_ab},
                      {"argmin", {res.argmin.real(), res.argmin.imag()}},
                      {"members", res.members},
                      {"missing", res.missing}};
            emit(j, report_path);
            return kExitOk;
        }

        if (fibers->parsed()) {
            json out = json::array();
            if (!point_text.empty()) {
                out.push_back(fiber_to_json(fiber_of(parse_point(point_text))));
            } else if (fiber_t) {
                std::mt19937_64 rng(fiber_seed);
                for (int k = 0; k < fiber_samples; ++k)
                    out.push_back(fiber_to_json(fiber_of(random_mt_point(rng, *fiber_t))));
            } else {
                throw ParseError("fibers needs --point or --t");
            }
            emit(out, report_path);
            return kExitOk;
        }

        if (degeneracy->parsed()) {
            try {
                const QuadricPoint W = degeneracy_witness(deg_t);
                json j = point_to_json(W);
                j["t_level"] = t_level(W);
                j["jacobian_abs"] = std::abs(eval_jacobian(W).value);
                emit(j, report_path);
                return kExitOk;
            } catch (const DomainError& e) {
                std::cerr << e.what() << "\n";
                return kExitFail;
            }
        }

        if (armap->parsed()) {
            std::ifstream in(spec_path);
            if (!in) throw ParseError("cannot open spec file " + spec_path);
            json j;
            try {
                j = json::parse(in);
            } catch (const json::exception& e) {
                throw ParseError(std::string("bad spec file: ") + e.what());
            }
            const auto parts = parts_from_json(j);

            json report;
            SparseHermitianPolynomial Qsum;
            bool harmonic = true, bidegree = true;
            for (const auto& part : parts) {
                bidegree = bidegree && part.Q.has_bidegree(part.p, part.q);
                harmonic = harmonic && laplacian(part.Q).is_zero();
                Qsum = Qsum + part.Q;
            }
            report["bidegree_ok"] = bidegree;
            report["harmonic_ok"] = harmonic;
            const auto nv = nonvanishing_on_sphere(Qsum);
            report["nonvanishing"] = {
                {"verdict", nv.verdict == SphereVerdict::ExactNonvanishing ? "nonvanishing"
                            : nv.verdict == SphereVerdict::ExactVanishes   ? "vanishes"
                                                               : "probably_nonvanishing"},
                {"exact", nv.exact},
                {"min_abs", nv.min_abs},
                {"samples", nv.samples}};
            if (bidegree && harmonic) {
                const auto P = build_P(parts);
                report["P"] = polynomial_to_json(P);
                report["extended"] = polynomial_to_json(extend(P));
                report["divisible_by_conj"] = divisible_by_conj(P);
                // Collision test at the explicit three-point fiber, u = 1.
                const auto w = three_point_witness(1.5);
                const auto g0 = eval_G(P, w[0]);
                const auto g1 = eval_G(P, w[1]);
                report["collision"] = {
                    {"G_Wu", {g0.c1.real(), g0.c1.imag(), g0.c2.real(), g0.c2.imag(),
                              g0.c3.real(), g0.c3.imag()}},
                    {"G_Wu_prime", {g1.c1.real(), g1.c1.imag(), g1.c2.real(), g1.c2.imag(),
                                    g1.c3.real(), g1.c3.imag()}},
                    {"collides", std::abs(g0.c3 - g1.c3) <= 1e-12}};
            }
            emit(report, report_path);
            return (bidegree && harmonic) ? kExitOk : kExitFail;
        }
    } catch (const ParseError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitBadInput;
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFail;
    }
    return kExitFail;
}
