#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

namespace mt3 {

using Complex = std::complex<double>;

// Thrown on precondition violations of the math kernels.
class DomainError : public std::runtime_error {
public:
    explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

inline bool is_finite(double x) { return std::isfinite(x); }
inline bool is_finite(const Complex& z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
}

inline void require_finite(const Complex& z, const char* name) {
    if (!is_finite(z))
        throw DomainError(std::string("non-finite value for ") + name);
}

// Squared modulus without the sqrt of std::abs.
inline double abs2(const Complex& z) {
    return z.real() * z.real() + z.imag() * z.imag();
}

// Threshold constants of the embedding problem.
//   tau       = sqrt((2+sqrt(2))/3), the critical level
//   tau_sq    = (2+sqrt(2))/3
//   two_over_sqrt3, sqrt2: the higher thresholds of the fiber analysis
struct DomainConstants {
    double tau;
    double tau_sq;
    double two_over_sqrt3;
    double sqrt2;

    static const DomainConstants& get() {
        static const DomainConstants c = [] {
            DomainConstants k;
            k.sqrt2 = std::sqrt(2.0);
            k.tau_sq = (2.0 + k.sqrt2) / 3.0;
            k.tau = std::sqrt(k.tau_sq);
            k.two_over_sqrt3 = 2.0 / std::sqrt(3.0);
            return k;
        }();
        return c;
    }
};

inline double tau() { return DomainConstants::get().tau; }
inline double tau_sq() { return DomainConstants::get().tau_sq; }

} // namespace mt3
