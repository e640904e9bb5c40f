#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "mt3/armaps.hpp"
#include "mt3/io.hpp"
#include "mt3/sampling.hpp"

using namespace mt3;

namespace {

using GR = GaussianRational;

// Exponent slots: (z, zbar, w, wbar).
SparsePolynomial mono(int a, int b, int g, int d, GR c = GR(1)) {
    return SparsePolynomial::monomial({a, b, g, d}, c);
}

// The classic harmonic polynomials depending only on |z|^2 and |w|^2.
SparsePolynomial harmonic_k1() { return mono(1, 1, 0, 0) - mono(0, 0, 1, 1); }
SparsePolynomial harmonic_k2() {
    return mono(2, 2, 0, 0) - mono(1, 1, 1, 1, GR(4)) + mono(0, 0, 2, 2);
}
SparsePolynomial harmonic_k3() {
    return mono(3, 3, 0, 0) - mono(2, 2, 1, 1, GR(9)) + mono(1, 1, 2, 2, GR(9)) -
           mono(0, 0, 3, 3);
}

} // namespace

TEST_CASE("laplacian") {
    CHECK(laplacian(harmonic_k1()).is_zero());
    CHECK(laplacian(harmonic_k2()).is_zero());
    CHECK(laplacian(harmonic_k3()).is_zero());
    // zzbar*wwbar is not harmonic: laplacian = zzbar + wwbar.
    const auto L = laplacian(mono(1, 1, 1, 1));
    CHECK(L == mono(1, 1, 0, 0) + mono(0, 0, 1, 1));
}

TEST_CASE("apply_operator") {
    CHECK(apply_operator(mono(1, 0, 0, 0)) == mono(0, 0, 0, 1, GR(-1))); // z -> -wbar
    CHECK(apply_operator(mono(0, 0, 1, 0)) == mono(0, 1, 0, 0));         // w -> zbar
    // zzbar w wbar -> z zbar^2 wbar - zbar w wbar^2
    const auto got = apply_operator(mono(1, 1, 1, 1));
    CHECK(got == mono(1, 2, 0, 1) - mono(0, 1, 1, 2));
}

TEST_CASE("build_P on the warned-against subclass") {
    const auto P = build_P({{harmonic_k1(), 1, 1}});
    CHECK(P == mono(0, 1, 0, 1, GR(-1))); // exactly -zbar*wbar
    CHECK(divisible_by_conj(P));
}

TEST_CASE("build_P validates its parts") {
    CHECK_THROWS_AS(build_P({{mono(1, 1, 1, 1), 2, 2}}), DomainError); // not harmonic
    CHECK_THROWS_AS(build_P({{harmonic_k1(), 2, 1}}), DomainError);    // wrong bidegree
    CHECK_THROWS_AS(build_P({{mono(0, 1, 0, 1), 0, 2}}), DomainError); // p < 1
}

TEST_CASE("build_P on the two-part mixed example") {
    const std::vector<HarmonicPart> parts{
        {harmonic_k1(), 1, 1},
        {harmonic_k2().scaled(GR::unit_i()), 2, 2},
    };
    // The weighted pre-operator sum must itself be harmonic.
    SparsePolynomial sum = harmonic_k1().scaled(GR(mpq_class(1, 2), mpq_class(0))) +
                           harmonic_k2().scaled(GR(mpq_class(0), mpq_class(1, 6)));
    CHECK(laplacian(sum).is_zero());
    const auto P = build_P(parts);
    CHECK(P == apply_operator(sum));
    CHECK(divisible_by_conj(P));
}

TEST_CASE("nonvanishing exact path") {
    {
        const auto r = nonvanishing_on_sphere(harmonic_k1());
        CHECK(r.exact);
        CHECK(r.verdict == SphereVerdict::ExactVanishes); // root at |z|^2 = 1/2
    }
    {
        // Q = (zzbar - wwbar) + i*(harmonic_k2()): on the sphere this is
        // (2x-1) + i(6x^2 - 6x + 1) which never vanishes on [0,1].
        const auto Q = harmonic_k1() + harmonic_k2().scaled(GR::unit_i());
        const auto r = nonvanishing_on_sphere(Q);
        CHECK(r.exact);
        CHECK(r.verdict == SphereVerdict::ExactNonvanishing);
    }
    {
        // Purely imaginary scalar multiple keeps the verdict.
        const auto r = nonvanishing_on_sphere(harmonic_k1().scaled(GR::unit_i()));
        CHECK(r.exact);
        CHECK(r.verdict == SphereVerdict::ExactVanishes);
    }
}

TEST_CASE("nonvanishing sampling path") {
    const auto P = ahern_rudin_P(); // mixed exponents: not the subclass
    const auto r = nonvanishing_on_sphere(P, 100000, 1);
    CHECK(!r.exact);
    CHECK(r.verdict == SphereVerdict::ProbablyNonvanishing);
    CHECK(r.samples == 100000);
    // P vanishes at w = 0 points of the sphere, so the sampled minimum is
    // small but positive.
    CHECK(r.min_abs > 0.0);
}

TEST_CASE("extend") {
    const auto F3 = extend(ahern_rudin_P());
    // w2 w3 w4^2 + i w1 w2^2 w4 in the (w1,w2,w3,w4) slots.
    SparsePolynomial want;
    want.add_term({0, 1, 1, 2}, GR(1));
    want.add_term({1, 2, 0, 1}, GR::unit_i());
    CHECK(F3 == want);

    CHECK(extend(mono(0, 1, 0, 1, GR(-1))) == mono(0, 1, 0, 1, GR(-1)));
    CHECK(extend(SparsePolynomial{}).is_zero());
}

TEST_CASE("extend is a ring homomorphism") {
    std::mt19937_64 rng(51);
    std::uniform_int_distribution<int> e(0, 2);
    std::uniform_int_distribution<long> c(-5, 5);
    for (int k = 0; k < 200; ++k) {
        SparsePolynomial p1, p2;
        for (int j = 0; j < 3; ++j) {
            p1.add_term({e(rng), e(rng), e(rng), e(rng)}, GR(c(rng)));
            p2.add_term({e(rng), e(rng), e(rng), e(rng)}, GR(c(rng)));
        }
        CHECK(extend(p1 * p2) == extend(p1) * extend(p2));
        CHECK(extend(p1 + p2) == extend(p1) + extend(p2));
    }
}

TEST_CASE("divisible_by_conj") {
    CHECK(divisible_by_conj(mono(0, 1, 0, 1, GR(-1))));
    CHECK(divisible_by_conj(ahern_rudin_P()));
    CHECK(!divisible_by_conj(mono(1, 0, 0, 0)));
}

TEST_CASE("divisibility holds for the |z|^2,|w|^2 subclass") {
    std::mt19937_64 rng(52);
    std::uniform_int_distribution<long> c(-9, 9);
    auto gr = [&] {
        return GR(mpq_class(c(rng)), mpq_class(c(rng)));
    };
    const QuadricPoint Wu = QuadricPoint::create(1, 1, 1, 0);
    const QuadricPoint Wu2 = QuadricPoint::create(1, 0, 1, 1);
    for (int k = 0; k < 100; ++k) {
        std::vector<HarmonicPart> parts;
        const GR c1 = gr(), c2 = gr(), c3 = gr();
        if (!c1.is_zero()) parts.push_back({harmonic_k1().scaled(c1), 1, 1});
        if (!c2.is_zero()) parts.push_back({harmonic_k2().scaled(c2), 2, 2});
        if (!c3.is_zero()) parts.push_back({harmonic_k3().scaled(c3), 3, 3});
        if (parts.empty()) continue;
        const auto P = build_P(parts);
        CHECK(divisible_by_conj(P));
        // Consequence: the extended maps collide on the explicit fiber pair.
        const MapImage g1 = eval_G(P, Wu);
        const MapImage g2 = eval_G(P, Wu2);
        CHECK(std::abs(g1.c3 - g2.c3) <= 1e-12);
    }
}

TEST_CASE("eval_G values") {
    const auto P = ahern_rudin_P();
    const MapImage img = eval_G(P, QuadricPoint::create(1, 1, 1, 0));
    CHECK(std::abs(img.c1 - 1.0) <= 1e-15);
    CHECK(std::abs(img.c2 - 1.0) <= 1e-15);
    CHECK(std::abs(img.c3) <= 1e-15);

    const MapImage g1 = eval_G(mono(0, 1, 0, 1, GR(-1)), QuadricPoint::create(1, 1, 1, 0));
    const MapImage g2 = eval_G(mono(0, 1, 0, 1, GR(-1)), QuadricPoint::create(1, 0, 1, 1));
    CHECK(std::abs(g1.c3 - g2.c3) <= 1e-15);

    const double r = 1.0 / std::sqrt(2.0);
    const MapImage sph = eval_G(P, QuadricPoint::create(r, r, r, r));
    CHECK(std::abs(sph.c3 - Complex(0.25, 0.25)) <= 1e-15);
}

TEST_CASE("eval_G with the classic P matches eval_map") {
    std::mt19937_64 rng(53);
    const auto P = ahern_rudin_P();
    for (int k = 0; k < 10000; ++k) {
        const QuadricPoint W = random_quadric_point(rng);
        const MapImage a = eval_G(P, W);
        const MapImage b = eval_map(W);
        const double scale = std::max(1.0, std::abs(b.c3));
        CHECK(std::abs(a.c3 - b.c3) / scale <= 1e-12);
    }
}

TEST_CASE("exact evaluation matches floating point") {
    std::mt19937_64 rng(54);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    const auto P = build_P({{harmonic_k1(), 1, 1}, {harmonic_k2(), 2, 2}});
    for (int k = 0; k < 10000; ++k) {
        std::array<Complex, 4> v;
        for (auto& z : v) z = Complex(u(rng), u(rng));
        // Direct double evaluation of -zbar*wbar + apply_operator(k2)/... is
        // covered by evaluating the exact P both through its own eval and a
        // term-by-term double accumulation.
        Complex direct(0, 0);
        for (const auto& [e, c] : P.terms()) {
            Complex t = c.to_complex();
            for (int s = 0; s < 4; ++s)
                for (int j = 0; j < e[s]; ++j) t *= v[s];
            direct += t;
        }
        CHECK(std::abs(P.eval(v) - direct) <= 1e-12);
    }
}

TEST_CASE("polynomial JSON round trip") {
    const auto P = build_P({{harmonic_k1(), 1, 1},
                            {harmonic_k2().scaled(GR::unit_i()), 2, 2}});
    const auto j = polynomial_to_json(P);
    CHECK(polynomial_from_json(j) == P);

    CHECK_THROWS_AS(polynomial_from_json(nlohmann::json::object()), ParseError);
    CHECK_THROWS_AS(
        polynomial_from_json(nlohmann::json::parse(
            R"({"terms":[{"e":[0,1,0],"c":[1,1,0,1]}]})")),
        ParseError);
    CHECK_THROWS_AS(
        polynomial_from_json(nlohmann::json::parse(
            R"({"terms":[{"e":[0,1,0,1],"c":[1,0,0,1]}]})")),
        ParseError); // zero denominator
}
