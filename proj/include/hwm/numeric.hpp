#pragma once

#include <algorithm>
#include <cmath>
#include <complex>

namespace hwm {

using Complex = std::complex<double>;

/// Default comparison tolerance: |a-b| <= tol * max(1, |a|, |b|).
inline constexpr double kDefaultTolerance = 1e-8;

inline bool approx_equal(Complex a, Complex b, double tol = kDefaultTolerance) {
    return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)});
}

inline bool approx_equal(double a, double b, double tol = kDefaultTolerance) {
    return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)});
}

/// Relative error against max(1, |a|, |b|); used by the acceptance suite to
/// report measured deviations.
inline double rel_error(Complex a, Complex b) {
    return std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)});
}

/// Principal complex square root of a real number (i*sqrt(-x) for x < 0).
inline Complex principal_sqrt(double x) {
    return x >= 0.0 ? Complex(std::sqrt(x), 0.0) : Complex(0.0, std::sqrt(-x));
}

/// Principal complex root z^(1/n).
inline Complex principal_root(Complex z, int n) {
    return std::pow(z, 1.0 / static_cast<double>(n));
}

} // namespace hwm
