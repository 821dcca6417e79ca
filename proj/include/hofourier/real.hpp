#pragma once

// Scalar types used by the numeric core. Everything templated on `Real` is
// instantiated for `double` and for `Quad` (IEEE binary128 through libquadmath).
// Generic code calls the elementary functions unqualified after a
// `using std::cos;`-style declaration so ADL picks the right overload.

#include <cmath>
#include <complex>
#include <numbers>

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/float128.hpp>

namespace hofourier {

using Quad = boost::multiprecision::float128;

template <class Real>
inline Real pi_v() {
    return boost::math::constants::pi<Real>();
}

/// log Gamma(x) for x > 0. Reentrant (lgamma_r / lgammaq).
inline double lgamma_pos(double x) {
    int sign = 0;
    return ::lgamma_r(x, &sign);
}

inline Quad lgamma_pos(const Quad& x) {
    // boost 1.74's float128 lgamma wrapper does not compile; call quadmath directly.
    return Quad(::lgammaq(x.backend().value()));
}

inline double to_double(double x) { return x; }
inline double to_double(const Quad& x) { return static_cast<double>(x); }

template <class Real>
inline Real from_double(double x) {
    return Real(x);
}

/// |z|^2 without going through std::abs on complex<Quad>.
template <class Real>
inline Real abs2(const std::complex<Real>& z) {
    return z.real() * z.real() + z.imag() * z.imag();
}

template <class Real>
inline Real cabs(const std::complex<Real>& z) {
    using std::sqrt;
    return sqrt(abs2(z));
}

/// Machine epsilon of the scalar type.
template <class Real>
inline Real epsilon_v() {
    return std::numeric_limits<Real>::epsilon();
}

}  // namespace hofourier
