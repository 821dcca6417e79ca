#pragma once

// Gamma-function values carried in log space with an explicit sign, so that
// products and quotients of large Gammas (norms, weight moments) can be formed
// without overflow.

#include <cmath>

#include "hofourier/errors.hpp"
#include "hofourier/real.hpp"

namespace hofourier {

/// value = sign * exp(log_abs); sign == 0 encodes an exact zero.
template <class Real>
struct SignedLog {
    Real log_abs{0};
    int sign{1};

    Real value() const {
        using std::exp;
        if (sign == 0) {
            return Real(0);
        }
        return sign > 0 ? exp(log_abs) : -exp(log_abs);
    }

    SignedLog operator*(const SignedLog& o) const {
        return {log_abs + o.log_abs, sign * o.sign};
    }
    SignedLog operator/(const SignedLog& o) const {
        return {log_abs - o.log_abs, sign * o.sign};
    }
};

namespace detail {

template <class Real>
bool is_nonpositive_integer(const Real& x) {
    using std::floor;
    return x <= 0 && floor(x) == x;
}

/// sin(pi x) with exact argument reduction to [-1/2, 1/2].
template <class Real>
Real sin_pi(const Real& x) {
    using std::floor;
    using std::sin;
    const Real nearest = floor(x + Real(0.5));
    const Real frac = x - nearest;
    const Real s = sin(pi_v<Real>() * frac);
    const Real half = nearest / 2;
    const bool odd = floor(half) != half;
    return odd ? -s : s;
}

}  // namespace detail

/// log|Gamma(x)| and sign(Gamma(x)); reflection formula for x <= 0.
template <class Real>
SignedLog<Real> log_gamma(const Real& x) {
    using std::fabs;
    using std::log;
    if (detail::is_nonpositive_integer(x)) {
        throw ParameterError("log_gamma: pole at non-positive integer");
    }
    if (x > 0) {
        return {lgamma_pos(x), 1};
    }
    // Gamma(x) = pi / (sin(pi x) Gamma(1 - x))
    const Real s = detail::sin_pi(x);
    return {log(pi_v<Real>()) - log(fabs(s)) - lgamma_pos(Real(1) - x), s > 0 ? 1 : -1};
}

/// 1/Gamma(x) as an entire function: exact zero at non-positive integers.
template <class Real>
SignedLog<Real> log_rgamma(const Real& x) {
    if (detail::is_nonpositive_integer(x)) {
        return {Real(0), 0};
    }
    const auto g = log_gamma(x);
    return {-g.log_abs, g.sign};
}

}  // namespace hofourier
