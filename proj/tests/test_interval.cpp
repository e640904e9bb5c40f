#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "mt3/interval.hpp"

using namespace mt3;

namespace {

std::mt19937_64 rng(31);

RealInterval random_interval(double span = 4.0) {
    std::uniform_real_distribution<double> u(-span, span);
    double a = u(rng), b = u(rng);
    if (a > b) std::swap(a, b);
    return {a, b};
}

double random_member(const RealInterval& i) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    return i.lo + (i.hi - i.lo) * u(rng);
}

ComplexBox random_box(double span = 4.0) {
    return {random_interval(span), random_interval(span)};
}

Complex random_member(const ComplexBox& b) {
    return {random_member(b.re), random_member(b.im)};
}

} // namespace

TEST_CASE("real interval primitive soundness") {
    for (int k = 0; k < 100000; ++k) {
        const RealInterval a = random_interval();
        const RealInterval b = random_interval();
        const double x = random_member(a);
        const double y = random_member(b);
        CHECK((a + b).contains(x + y));
        CHECK((a - b).contains(x - y));
        CHECK((a * b).contains(x * y));
        CHECK(sqr(a).contains(x * x));
        if (y != 0.0) CHECK((a / b).contains(x / y));
        if (x >= 0.0 || a.hi >= 0.0)
            CHECK(isqrt(a).contains(std::sqrt(std::max(x, 0.0))));
    }
}

TEST_CASE("division by a zero-straddling interval is the whole line") {
    const RealInterval r = RealInterval(1.0) / RealInterval(-1.0, 1.0);
    CHECK(r.lo == -std::numeric_limits<double>::infinity());
    CHECK(r.hi == std::numeric_limits<double>::infinity());
}

TEST_CASE("sqr is nonnegative and tight at zero-straddling inputs") {
    const RealInterval s = sqr(RealInterval(-2.0, 1.0));
    CHECK(s.lo == 0.0);
    CHECK(s.hi >= 4.0);
    CHECK(s.hi <= 4.0 + 1e-14);
}

TEST_CASE("complex box primitive soundness") {
    for (int k = 0; k < 100000; ++k) {
        const ComplexBox a = random_box();
        const ComplexBox b = random_box();
        const Complex x = random_member(a);
        const Complex y = random_member(b);
        CHECK((a + b).contains(x + y));
        CHECK((a - b).contains(x - y));
        CHECK((a * b).contains(x * y));
        CHECK(box_abs2(a).contains(abs2(x)));
        CHECK(box_abs(a).contains(std::abs(x)));
    }
}

TEST_CASE("interval_sqrt point boxes") {
    {
        const auto [s, ms] = interval_sqrt(ComplexBox(Complex(4.0, 0.0)));
        CHECK(s.contains(Complex(2.0, 0.0)));
        CHECK(ms.contains(Complex(-2.0, 0.0)));
        CHECK(s.max_side() <= 1e-12);
    }
    {
        // Radicand of the companion formula at a = 0.5.
        const auto [s, ms] = interval_sqrt(ComplexBox(Complex(0.0, -1.5)));
        const Complex root = 0.8660254037844386 * Complex(1.0, -1.0);
        CHECK((s.contains(root) || ms.contains(root)));
        CHECK((s.contains(-root) || ms.contains(-root)));
        CHECK(s.max_side() <= 1e-12);
    }
}

TEST_CASE("interval_sqrt containment on sampled members") {
    const ComplexBox b(RealInterval(-1.0, 1.0), RealInterval(-1.0, 1.0));
    const auto [s, ms] = interval_sqrt(b);
    for (int k = 0; k < 10000; ++k) {
        const Complex v = random_member(b);
        const Complex r = std::sqrt(v);
        CHECK((s.contains(r) || ms.contains(r)));
        CHECK((s.contains(-r) || ms.contains(-r)));
    }
}

TEST_CASE("interval_sqrt containment on random boxes") {
    for (int k = 0; k < 2000; ++k) {
        const ComplexBox b = random_box();
        const auto [s, ms] = interval_sqrt(b);
        for (int j = 0; j < 50; ++j) {
            const Complex v = random_member(b);
            const Complex r = std::sqrt(v);
            CHECK((s.contains(r) || ms.contains(r)));
            CHECK((s.contains(-r) || ms.contains(-r)));
        }
    }
}

TEST_CASE("interval_sqrt is tight across the branch cut") {
    // Boxes straddling the negative real axis must not blow up to O(1)
    // width: the cut-crossing determination is continuous there.
    for (double w : {1e-2, 1e-4, 1e-6}) {
        const ComplexBox b(RealInterval(-1.0 - w, -1.0 + w), RealInterval(-w, w));
        const auto [s, ms] = interval_sqrt(b);
        CHECK(s.max_side() <= 100.0 * w + 1e-12);
        for (int j = 0; j < 200; ++j) {
            const Complex v = random_member(b);
            const Complex r = std::sqrt(v);
            CHECK((s.contains(r) || ms.contains(r)));
            CHECK((s.contains(-r) || ms.contains(-r)));
        }
    }
}

TEST_CASE("interval_sqrt of origin-containing boxes") {
    const ComplexBox b(RealInterval(-0.1, 0.1), RealInterval(-0.1, 0.1));
    const auto [s, ms] = interval_sqrt(b);
    for (int j = 0; j < 1000; ++j) {
        const Complex v = random_member(b);
        const Complex r = std::sqrt(v);
        CHECK((s.contains(r) || ms.contains(r)));
        CHECK((s.contains(-r) || ms.contains(-r)));
    }
}
