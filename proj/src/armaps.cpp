#include "mt3/armaps.hpp"

#include <cmath>
#include <random>

namespace mt3 {

SparsePolynomial SparsePolynomial::monomial(const Exponents& e,
                                            const GaussianRational& c) {
    SparsePolynomial p;
    p.add_term(e, c);
    return p;
}

void SparsePolynomial::add_term(const Exponents& e, const GaussianRational& c) {
    if (c.is_zero()) return;
    auto it = terms_.find(e);
    if (it == terms_.end()) {
        terms_.emplace(e, c);
    } else {
        it->second = it->second + c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

SparsePolynomial SparsePolynomial::operator+(const SparsePolynomial& o) const {
    SparsePolynomial r = *this;
    for (const auto& [e, c] : o.terms_) r.add_term(e, c);
    return r;
}

SparsePolynomial SparsePolynomial::operator-(const SparsePolynomial& o) const {
    SparsePolynomial r = *this;
    for (const auto& [e, c] : o.terms_) r.add_term(e, -c);
    return r;
}

SparsePolynomial SparsePolynomial::operator*(const SparsePolynomial& o) const {
    SparsePolynomial r;
    for (const auto& [e1, c1] : terms_)
        for (const auto& [e2, c2] : o.terms_)
            r.add_term({e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2], e1[3] + e2[3]},
                       c1 * c2);
    return r;
}

SparsePolynomial SparsePolynomial::scaled(const GaussianRational& c) const {
    SparsePolynomial r;
    for (const auto& [e, k] : terms_) r.add_term(e, k * c);
    return r;
}

SparsePolynomial SparsePolynomial::derivative(int var) const {
    SparsePolynomial r;
    for (const auto& [e, c] : terms_) {
        if (e[var] == 0) continue;
        Exponents d = e;
        --d[var];
        r.add_term(d, c * GaussianRational(e[var]));
    }
    return r;
}

SparsePolynomial SparsePolynomial::times_var(int var) const {
    SparsePolynomial r;
    for (const auto& [e, c] : terms_) {
        Exponents d = e;
        ++d[var];
        r.add_term(d, c);
    }
    return r;
}

bool SparsePolynomial::has_bidegree(int p, int q) const {
    for (const auto& [e, c] : terms_)
        if (e[0] + e[2] != p || e[1] + e[3] != q) return false;
    return true;
}

Complex SparsePolynomial::eval(const std::array<Complex, 4>& v) const {
    Complex acc(0.0, 0.0);
    for (const auto& [e, c] : terms_) {
        Complex t = c.to_complex();
        for (int k = 0; k < 4; ++k)
            for (int j = 0; j < e[k]; ++j) t *= v[k];
        acc += t;
    }
    return acc;
}

SparseHermitianPolynomial laplacian(const SparseHermitianPolynomial& Q) {
    return Q.derivative(0).derivative(1) + Q.derivative(2).derivative(3);
}

SparseHermitianPolynomial apply_operator(const SparseHermitianPolynomial& Q) {
    return Q.derivative(2).times_var(1) - Q.derivative(0).times_var(3);
}

SparseHermitianPolynomial build_P(const std::vector<HarmonicPart>& parts) {
    SparseHermitianPolynomial sum;
    for (const auto& part : parts) {
        if (part.p < 1)
            throw DomainError("build_P: holomorphic degree must be >= 1");
        if (!part.Q.has_bidegree(part.p, part.q))
            throw DomainError("build_P: part fails bidegree check");
        if (!laplacian(part.Q).is_zero())
            throw DomainError("build_P: part is not harmonic");
        const GaussianRational weight(
            mpq_class(1, static_cast<long>(part.p) * (part.q + 1)), mpq_class(0));
        sum = sum + part.Q.scaled(weight);
    }
    return apply_operator(sum);
}

// ---------------------------------------------------------------------------
// Exact root counting on [0,1] for the |z|^2,|w|^2 subclass.

namespace {

// Dense univariate polynomial over Q, low-degree-first coefficients.
using RatPoly = std::vector<mpq_class>;

void trim(RatPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

bool rp_zero(const RatPoly& p) { return p.empty(); }

RatPoly rp_neg(const RatPoly& p) {
    RatPoly r = p;
    for (auto& c : r) c = -c;
    return r;
}

RatPoly rp_derivative(const RatPoly& p) {
    RatPoly r;
    for (std::size_t k = 1; k < p.size(); ++k) r.push_back(p[k] * (long)k);
    trim(r);
    return r;
}

mpq_class rp_eval(const RatPoly& p, const mpq_class& x) {
    mpq_class acc = 0;
    for (std::size_t k = p.size(); k-- > 0;) acc = acc * x + p[k];
    return acc;
}

// Remainder of the Euclidean division p / d over Q.
RatPoly rp_rem(RatPoly p, const RatPoly& d) {
    trim(p);
    while (p.size() >= d.size() && !p.empty()) {
        const mpq_class f = p.back() / d.back();
        const std::size_t shift = p.size() - d.size();
        for (std::size_t k = 0; k < d.size(); ++k)
            p[shift + k] -= f * d[k];
        trim(p);
    }
    return p;
}

RatPoly rp_gcd(RatPoly a, RatPoly b) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        RatPoly r = rp_rem(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty()) {
        const mpq_class lead = a.back();
        for (auto& c : a) c /= lead;
    }
    return a;
}

int sign_of(const mpq_class& v) { return v > 0 ? 1 : (v < 0 ? -1 : 0); }

// Number of distinct real roots in the open interval (a, b) by Sturm's
// theorem; endpoints are handled separately by the caller.
int sturm_count_open(const RatPoly& p, const mpq_class& a, const mpq_class& b) {
    std::vector<RatPoly> chain;
    chain.push_back(p);
    chain.push_back(rp_derivative(p));
    trim(chain.back());
    while (!chain.back().empty() && chain.back().size() > 1) {
        RatPoly r = rp_neg(rp_rem(chain[chain.size() - 2], chain.back()));
        trim(r);
        if (r.empty()) break;
        chain.push_back(std::move(r));
    }
    auto variations = [&](const mpq_class& x) {
        int var = 0, prev = 0;
        for (const auto& q : chain) {
            if (rp_zero(q)) continue;
            const int s = sign_of(rp_eval(q, x));
            if (s == 0) continue;
            if (prev != 0 && s != prev) ++var;
            prev = s;
        }
        return var;
    };
    return variations(a) - variations(b);
}

// True iff p (nonzero) has a root in the closed interval [0, 1].
bool has_root_in_unit_interval(const RatPoly& p) {
    if (rp_eval(p, 0) == 0 || rp_eval(p, 1) == 0) return true;
    // Square-free part keeps the same root set and makes the chain valid.
    RatPoly sf = p;
    const RatPoly g = rp_gcd(p, rp_derivative(p));
    if (g.size() > 1) {
        // Exact division p / g via repeated remainder-free steps.
        RatPoly quot;
        RatPoly rem = p;
        trim(rem);
        quot.assign(rem.size() - g.size() + 1, mpq_class(0));
        while (rem.size() >= g.size() && !rem.empty()) {
            const mpq_class f = rem.back() / g.back();
            const std::size_t shift = rem.size() - g.size();
            quot[shift] = f;
            for (std::size_t k = 0; k < g.size(); ++k)
                rem[shift + k] -= f * g[k];
            trim(rem);
        }
        sf = quot;
        trim(sf);
    }
    return sturm_count_open(sf, 0, 1) > 0;
}

// If every term of Q has matching conjugate exponents, reduce Q on the
// sphere to a univariate polynomial in x = |z|^2 (so |w|^2 = 1-x), split
// into real and imaginary rational parts.
bool reduce_to_unit_interval(const SparseHermitianPolynomial& Q,
                             RatPoly& re, RatPoly& im) {
    re.clear();
    im.clear();
    for (const auto& [e, c] : Q.terms())
        if (e[0] != e[1] || e[2] != e[3]) return false;
    for (const auto& [e, c] : Q.terms()) {
        const int a = e[0];
        const int g = e[2];
        // x^a (1-x)^g expanded with exact binomials.
        for (int k = 0; k <= g; ++k) {
            mpz_class binom;
            mpz_bin_uiui(binom.get_mpz_t(), g, k);
            mpq_class coef(binom);
            if (k % 2 == 1) coef = -coef;
            const std::size_t deg = static_cast<std::size_t>(a + k);
            if (re.size() <= deg) re.resize(deg + 1, mpq_class(0));
            if (im.size() <= deg) im.resize(deg + 1, mpq_class(0));
            re[deg] += coef * c.re;
            im[deg] += coef * c.im;
        }
    }
    trim(re);
    trim(im);
    return true;
}

} // namespace

NonvanishingResult nonvanishing_on_sphere(const SparseHermitianPolynomial& Q,
                                          std::uint64_t n_samples,
                                          std::uint64_t seed) {
    RatPoly re, im;
    if (reduce_to_unit_interval(Q, re, im)) {
        bool vanishes;
        if (rp_zero(re) && rp_zero(im)) {
            vanishes = true;
        } else if (rp_zero(im)) {
            vanishes = has_root_in_unit_interval(re);
        } else if (rp_zero(re)) {
            vanishes = has_root_in_unit_interval(im);
        } else {
            const RatPoly g = rp_gcd(re, im);
            vanishes = g.size() > 1 && has_root_in_unit_interval(g);
        }
        return {vanishes ? SphereVerdict::ExactVanishes
                         : SphereVerdict::ExactNonvanishing,
                true, 0.0, 0};
    }

    // General case: probabilistic sampling of the sphere.
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    double min_abs = std::numeric_limits<double>::infinity();
    for (std::uint64_t k = 0; k < n_samples; ++k) {
        double v[4];
        double norm2 = 0.0;
        do {
            norm2 = 0.0;
            for (double& x : v) {
                x = gauss(rng);
                norm2 += x * x;
            }
        } while (norm2 == 0.0);
        const double inv = 1.0 / std::sqrt(norm2);
        const Complex z(v[0] * inv, v[1] * inv);
        const Complex w(v[2] * inv, v[3] * inv);
        const Complex q = Q.eval({z, std::conj(z), w, std::conj(w)});
        min_abs = std::min(min_abs, std::abs(q));
    }
    return {SphereVerdict::ProbablyNonvanishing, false, min_abs, n_samples};
}

HolomorphicPolynomial4 extend(const SparseHermitianPolynomial& P) {
    return P; // pure exponent relabeling: (z,zbar,w,wbar) -> (w1,w2,w3,w4)
}

bool divisible_by_conj(const SparseHermitianPolynomial& P) {
    if (P.is_zero()) return true;
    for (const auto& [e, c] : P.terms())
        if (e[1] < 1 || e[3] < 1) return false;
    return true;
}

MapImage eval_G(const SparseHermitianPolynomial& P, const QuadricPoint& W) {
    return {W.w1, W.w3, extend(P).eval({W.w1, W.w2, W.w3, W.w4})};
}

SparseHermitianPolynomial ahern_rudin_P() {
    SparseHermitianPolynomial p;
    p.add_term({0, 1, 1, 2}, GaussianRational(1));          // w zbar wbar^2
    p.add_term({1, 2, 0, 1}, GaussianRational::unit_i());   // i z zbar^2 wbar
    return p;
}

} // namespace mt3
