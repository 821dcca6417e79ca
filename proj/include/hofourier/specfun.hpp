#pragma once

// Fast pointwise evaluation of the Heckman-Opdam family on the torus.
//
//   P_n^k(ix)  = P_n^k(0) * C_n^k(cos x) / C_n^k(1)
//   E_n^k(ix)  = P_n^k(ix) + 2i sin x P_{n-1}^{k+1}(ix)                          n >= 1
//   E_-n^k(ix) = (n+2k)/(n+k) P_n^k(ix) - 2n/(n+k) i sin x P_{n-1}^{k+1}(ix)     n >= 1
//
// with P_n^k(0) = Gamma(k+1) Gamma(n+2k) / (Gamma(2k+1) Gamma(n+k)). At n = 0
// that formula gives 1/2, and 1/2 is the value used for P_0 throughout (the
// symmetrization of E_0 = 1 is 1; the representation formulas above need 1/2).
// k == 0 is a separate branch: E_n(ix) = e^{inx}, P_n(ix) = cos nx.
//
// The templates are instantiated for double and Quad; the Multiplicity
// overloads are the double-precision entry points.

#include <cmath>
#include <complex>
#include <span>
#include <string>
#include <vector>

#include "hofourier/errors.hpp"
#include "hofourier/exppoly.hpp"
#include "hofourier/gamma.hpp"
#include "hofourier/real.hpp"

namespace hofourier {

/// C_n^lambda(t) by the forward three-term recurrence.
template <class Real>
Real gegenbauer(int n, Real lambda, Real t) {
    if (n < 0) {
        throw ParameterError("gegenbauer: degree must be >= 0");
    }
    if (!(lambda > 0)) {
        throw ParameterError("gegenbauer: lambda must be > 0");
    }
    if (n == 0) {
        return Real(1);
    }
    Real prev = 1;
    Real cur = 2 * lambda * t;
    for (int m = 2; m <= n; ++m) {
        const Real next = (2 * (m + lambda - 1) * t * cur - (m + 2 * lambda - 2) * prev) / m;
        prev = cur;
        cur = next;
    }
    return cur;
}

/// C_n^lambda(t) / C_n^lambda(1) for all degrees 0..n_max (lambda >= 0; lambda = 0 gives T_n).
template <class Real>
void gegenbauer_normalized_all(int n_max, Real lambda, Real t, std::vector<Real>& out) {
    out.resize(static_cast<std::size_t>(n_max) + 1);
    out[0] = 1;
    if (n_max == 0) {
        return;
    }
    out[1] = t;
    for (int m = 2; m <= n_max; ++m) {
        out[m] = (2 * (m + lambda - 1) * t * out[m - 1] - (m - 1) * out[m - 2]) / (m + 2 * lambda - 1);
    }
}

/// P_n^k(0) for n >= 0, k > 0 (and n >= 1 when k = 0); 1/2 at n = 0.
template <class Real>
Real p_at_zero(int n, Real k) {
    using std::exp;
    if (n < 0) {
        throw ParameterError("p_at_zero: degree must be >= 0");
    }
    if (n == 0) {
        return Real(1) / 2;
    }
    if (k == 0) {
        return Real(1);
    }
    return exp(lgamma_pos(k + 1) + lgamma_pos(n + 2 * k) - lgamma_pos(2 * k + 1) - lgamma_pos(n + k));
}

namespace detail {

/// P_m^k(0) for m = 0..n_max via P_m(0) / P_{m-1}(0) = (m-1+2k)/(m-1+k); requires k > 0.
template <class Real>
void p_at_zero_all(int n_max, Real k, std::vector<Real>& out) {
    out.resize(static_cast<std::size_t>(n_max) + 1);
    out[0] = Real(1) / 2;
    for (int m = 1; m <= n_max; ++m) {
        out[m] = out[m - 1] * ((m - 1 + 2 * k) / (m - 1 + k));
    }
}

template <class Real>
void check_k(const Real& k) {
    if (!(k >= 0)) {
        throw ParameterError("multiplicity k must be >= 0");
    }
}

}  // namespace detail

/// P_n^k evaluated at ix.
template <class Real>
Real p_eval(int n, Real k, Real x) {
    using std::cos;
    detail::check_k(k);
    if (n < 0) {
        throw ParameterError("p_eval: degree must be >= 0");
    }
    if (n == 0) {
        return Real(1) / 2;
    }
    if (k == 0) {
        return cos(n * x);
    }
    std::vector<Real> r;
    gegenbauer_normalized_all(n, k, cos(x), r);
    return p_at_zero(n, k) * r[n];
}

/// P_n^k at a real argument (cosh x in place of cos x).
template <class Real>
Real p_eval_real(int n, Real k, Real x) {
    using std::cosh;
    detail::check_k(k);
    if (n < 0) {
        throw ParameterError("p_eval_real: degree must be >= 0");
    }
    if (n == 0) {
        return Real(1) / 2;
    }
    std::vector<Real> r;
    gegenbauer_normalized_all(n, k, cosh(x), r);
    return (k == 0 ? Real(1) : p_at_zero(n, k)) * r[n];
}

/// E_n^k(ix).
template <class Real>
std::complex<Real> e_eval(int n, Real k, Real x) {
    using std::cos;
    using std::sin;
    detail::check_k(k);
    if (n == 0) {
        return {Real(1), Real(0)};
    }
    if (k == 0) {
        return {cos(n * x), sin(n * x)};
    }
    const int m = n > 0 ? n : -n;
    const Real p = p_eval(m, k, x);
    const Real q = p_eval(m - 1, k + 1, x);
    const Real s = sin(x);
    if (n > 0) {
        return {p, 2 * s * q};
    }
    return {((m + 2 * k) / (m + k)) * p, -((2 * m) / (m + k)) * s * q};
}

/// E_n^k at a real argument x.
template <class Real>
Real e_eval_real(int n, Real k, Real x) {
    using std::exp;
    using std::sinh;
    detail::check_k(k);
    if (n == 0) {
        return Real(1);
    }
    if (k == 0) {
        return exp(n * x);
    }
    const int m = n > 0 ? n : -n;
    const Real p = p_eval_real(m, k, x);
    const Real q = p_eval_real(m - 1, k + 1, x);
    const Real s = sinh(x);
    if (n > 0) {
        return p + 2 * s * q;
    }
    return ((m + 2 * k) / (m + k)) * p - ((2 * m) / (m + k)) * s * q;
}

/// E_n^k(ix) for n = -N..N, written to out[n + N]. O(N) per call.
template <class Real>
void e_eval_all(int N, Real k, Real x, std::vector<std::complex<Real>>& out) {
    using std::cos;
    using std::sin;
    detail::check_k(k);
    if (N < 0) {
        throw ParameterError("e_eval_all: N must be >= 0");
    }
    out.resize(static_cast<std::size_t>(2 * N + 1));
    out[N] = std::complex<Real>(Real(1), Real(0));
    if (N == 0) {
        return;
    }
    if (k == 0) {
        // e^{inx} by direct angle evaluation; the rotation recurrence drifts.
        for (int n = 1; n <= N; ++n) {
            out[N + n] = std::complex<Real>(cos(n * x), sin(n * x));
            out[N - n] = std::conj(out[N + n]);
        }
        return;
    }
    const Real t = cos(x);
    const Real s = sin(x);
    std::vector<Real> rk, rk1, pk0, pk10;
    gegenbauer_normalized_all(N, k, t, rk);
    gegenbauer_normalized_all(N - 1, k + 1, t, rk1);
    detail::p_at_zero_all(N, k, pk0);
    detail::p_at_zero_all(N - 1, k + 1, pk10);
    for (int n = 1; n <= N; ++n) {
        const Real p = pk0[n] * rk[n];
        const Real q = pk10[n - 1] * rk1[n - 1];
        out[N + n] = std::complex<Real>(p, 2 * s * q);
        out[N - n] = std::complex<Real>(((n + 2 * k) / (n + k)) * p, -((2 * n) / (n + k)) * s * q);
    }
}

/// log ||E_n^k||^2_{2,k}:
///   ||E_n||^2 = pi 2^{1-2k} (n-1)! Gamma(n+2k) / Gamma(n+k)^2   (n >= 1),
///   ||E_-n||^2 = ||E_{n+1}||^2, ||E_0||^2 = ||E_1||^2.
template <class Real>
Real log_norm_sq(int n, Real k) {
    using std::log;
    detail::check_k(k);
    const int m = n >= 1 ? n : 1 - n;
    return log(pi_v<Real>()) + (1 - 2 * k) * log(Real(2)) + lgamma_pos(Real(m)) +
           lgamma_pos(m + 2 * k) - 2 * lgamma_pos(m + k);
}

/// ||E_n||^2 and gamma_n = ||E_n||^{-1} for |n| <= n_max, stored as logs.
template <class Real>
class NormTable {
public:
    NormTable(Real k, int n_max) : k_(k), n_max_(n_max) {
        if (n_max < 0) {
            throw ParameterError("NormTable: n_max must be >= 0");
        }
        log_norm_sq_.reserve(static_cast<std::size_t>(2 * n_max + 1));
        for (int n = -n_max; n <= n_max; ++n) {
            log_norm_sq_.push_back(log_norm_sq(n, k));
        }
    }

    const Real& k() const noexcept { return k_; }
    int n_max() const noexcept { return n_max_; }

    Real log_norm_sq_at(int n) const { return log_norm_sq_.at(index(n)); }
    Real norm_sq(int n) const {
        using std::exp;
        return exp(log_norm_sq_at(n));
    }
    /// gamma_n^2 = 1 / ||E_n||^2
    Real gamma_sq(int n) const {
        using std::exp;
        return exp(-log_norm_sq_at(n));
    }
    Real gamma(int n) const {
        using std::exp;
        return exp(-log_norm_sq_at(n) / 2);
    }

private:
    std::size_t index(int n) const {
        if (n < -n_max_ || n > n_max_) {
            throw ParameterError("NormTable: index " + std::to_string(n) + " out of range");
        }
        return static_cast<std::size_t>(n + n_max_);
    }

    Real k_;
    int n_max_;
    std::vector<Real> log_norm_sq_;
};

// Double-precision entry points.

double gegenbauer(int n, double lambda, double t);
double p_eval(int n, Multiplicity k, double x);
double p_eval_real(int n, Multiplicity k, double x);
std::complex<double> e_eval(int n, Multiplicity k, double x);
double e_eval_real(int n, Multiplicity k, double x);
double norm_sq(int n, Multiplicity k);
/// gamma_n = ||E_n||^{-1}
double gamma_n(int n, Multiplicity k);

/// max over the grid of gamma_n |sin x|^k |E_n^k(ix)|.
double envelope(int n, Multiplicity k, std::span<const double> grid);

/// `points` equispaced angles covering [-pi, pi], endpoints included.
std::vector<double> uniform_grid(int points);

}  // namespace hofourier
