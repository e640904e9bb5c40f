#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "mt3/quadric.hpp"

namespace mt3 {

// Exact complex rational a + b*i with arbitrary-precision components.
struct GaussianRational {
    mpq_class re, im;

    GaussianRational() : re(0), im(0) {}
    GaussianRational(long r) : re(r), im(0) {}
    GaussianRational(mpq_class r, mpq_class i) : re(std::move(r)), im(std::move(i)) {}

    static GaussianRational unit_i() { return {mpq_class(0), mpq_class(1)}; }

    bool is_zero() const { return re == 0 && im == 0; }
    Complex to_complex() const { return {re.get_d(), im.get_d()}; }

    GaussianRational operator+(const GaussianRational& o) const {
        return {re + o.re, im + o.im};
    }
    GaussianRational operator-(const GaussianRational& o) const {
        return {re - o.re, im - o.im};
    }
    GaussianRational operator-() const { return {-re, -im}; }
    GaussianRational operator*(const GaussianRational& o) const {
        return {re * o.re - im * o.im, re * o.im + im * o.re};
    }
    bool operator==(const GaussianRational& o) const {
        return re == o.re && im == o.im;
    }
};

// Exponent 4-tuple; for Hermitian polynomials the slots are (z, zbar, w, wbar),
// for extended holomorphic ones (w1, w2, w3, w4).
using Exponents = std::array<int, 4>;

// Sparse polynomial with exact coefficients. Terms are kept in lexicographic
// exponent order and zero coefficients are never stored.
class SparsePolynomial {
public:
    using TermMap = std::map<Exponents, GaussianRational>;

    SparsePolynomial() = default;

    static SparsePolynomial monomial(const Exponents& e,
                                     const GaussianRational& c = GaussianRational(1));

    void add_term(const Exponents& e, const GaussianRational& c);
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    SparsePolynomial operator+(const SparsePolynomial& o) const;
    SparsePolynomial operator-(const SparsePolynomial& o) const;
    SparsePolynomial operator*(const SparsePolynomial& o) const;
    SparsePolynomial scaled(const GaussianRational& c) const;

    // d/d(var), var indexing the exponent slot.
    SparsePolynomial derivative(int var) const;
    // Multiply by the variable of the given slot.
    SparsePolynomial times_var(int var) const;

    // True iff every term satisfies e[0]+e[2] == p and e[1]+e[3] == q.
    bool has_bidegree(int p, int q) const;

    Complex eval(const std::array<Complex, 4>& v) const;

    bool operator==(const SparsePolynomial& o) const { return terms_ == o.terms_; }

private:
    TermMap terms_;
};

using SparseHermitianPolynomial = SparsePolynomial;
using HolomorphicPolynomial4 = SparsePolynomial;

// d^2/dz dzbar + d^2/dw dwbar, exact.
SparseHermitianPolynomial laplacian(const SparseHermitianPolynomial& Q);

// zbar * dQ/dw - wbar * dQ/dz, exact.
SparseHermitianPolynomial apply_operator(const SparseHermitianPolynomial& Q);

struct HarmonicPart {
    SparseHermitianPolynomial Q;
    int p; // holomorphic total degree, >= 1
    int q; // antiholomorphic total degree
};

// Weighted sum sum_j Q_j/(p_j(q_j+1)) followed by apply_operator.
// Throws DomainError if a part fails bidegree or harmonicity.
SparseHermitianPolynomial build_P(const std::vector<HarmonicPart>& parts);

enum class SphereVerdict {
    ExactNonvanishing,
    ExactVanishes,
    ProbablyNonvanishing, // sampling only: min |Q| reported, no exact proof
};

struct NonvanishingResult {
    SphereVerdict verdict;
    bool exact;
    double min_abs;          // observed minimum of |Q| (sampling path)
    std::uint64_t samples;   // 0 on the exact path
};

// Zero test of Q on the unit sphere |z|^2 + |w|^2 = 1. When Q is a function
// of |z|^2 and |w|^2 alone the check reduces to exact root counting of a
// univariate rational polynomial on [0,1] (Sturm chains); otherwise the
// sphere is sampled and the verdict is probabilistic.
NonvanishingResult nonvanishing_on_sphere(const SparseHermitianPolynomial& Q,
                                          std::uint64_t n_samples = 100000,
                                          std::uint64_t seed = 1);

// Holomorphic extension: relabel (z, zbar, w, wbar) -> (w1, w2, w3, w4).
HolomorphicPolynomial4 extend(const SparseHermitianPolynomial& P);

// True iff every term of P carries at least one zbar and one wbar.
bool divisible_by_conj(const SparseHermitianPolynomial& P);

// The extended map (w1, w3, extend(P)) evaluated at a quadric point.
MapImage eval_G(const SparseHermitianPolynomial& P, const QuadricPoint& W);

// The invariant part of the classic totally real embedding:
// P = w*zbar*wbar^2 + i*z*zbar^2*wbar.
SparseHermitianPolynomial ahern_rudin_P();

} // namespace mt3
