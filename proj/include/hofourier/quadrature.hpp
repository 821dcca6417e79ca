#pragma once

// Integration against dm_k = |sin x|^{2k} dx on [-pi, pi].
//
// Under t = cos x the half-period integral becomes a Jacobi-weight integral,
//   int_0^pi g(x) |sin x|^{2k} dx = int_{-1}^{1} g(arccos t) (1-t^2)^{k-1/2} dt,
// so a Gauss-Jacobi rule in t, mirrored to x -> -x, integrates every
// trigonometric polynomial of degree <= 2M-1 exactly (odd parts cancel
// pairwise). Nodes and weights come from the Golub-Welsch eigenproblem.

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "hofourier/errors.hpp"
#include "hofourier/exppoly.hpp"
#include "hofourier/gamma.hpp"
#include "hofourier/real.hpp"

namespace hofourier {

/// Gauss rule on [-1, 1], nodes ascending.
template <class Real>
struct GaussRule {
    std::vector<Real> nodes;
    std::vector<Real> weights;
};

namespace detail {

/// Implicit QL on a symmetric tridiagonal matrix (diag d, off-diagonal e with
/// e[i] coupling i and i+1). Only the first component of each eigenvector is
/// tracked, which is all Golub-Welsch needs; memory stays O(n).
template <class Real>
void tridiagonal_ql_first_components(std::vector<Real>& d, std::vector<Real>& e, std::vector<Real>& z) {
    using std::fabs;
    using std::hypot;
    const int n = static_cast<int>(d.size());
    const Real eps = std::numeric_limits<Real>::epsilon();
    z.assign(static_cast<std::size_t>(n), Real(0));
    if (n == 0) {
        return;
    }
    z[0] = 1;
    e.resize(static_cast<std::size_t>(n));
    e[n - 1] = 0;
    for (int l = 0; l < n; ++l) {
        int iter = 0;
        int m = l;
        do {
            for (m = l; m < n - 1; ++m) {
                const Real dd = fabs(d[m]) + fabs(d[m + 1]);
                if (fabs(e[m]) <= eps * dd) {
                    break;
                }
            }
            if (m != l) {
                if (iter++ == 100) {
                    throw ConvergenceError("tridiagonal QL: too many iterations", 0.0, 0.0);
                }
                Real g = (d[l + 1] - d[l]) / (2 * e[l]);
                Real r = hypot(g, Real(1));
                g = d[m] - d[l] + e[l] / (g + (g >= 0 ? fabs(r) : -fabs(r)));
                Real s = 1;
                Real c = 1;
                Real p = 0;
                int i = m - 1;
                for (; i >= l; --i) {
                    const Real f = s * e[i];
                    const Real b = c * e[i];
                    r = hypot(f, g);
                    e[i + 1] = r;
                    if (r == 0) {
                        d[i + 1] -= p;
                        e[m] = 0;
                        break;
                    }
                    s = f / r;
                    c = g / r;
                    g = d[i + 1] - p;
                    r = (d[i] - g) * s + 2 * c * b;
                    p = s * r;
                    d[i + 1] = g + p;
                    g = c * r - b;
                    const Real zf = z[i + 1];
                    z[i + 1] = s * z[i] + c * zf;
                    z[i] = c * z[i] - s * zf;
                }
                if (r == 0 && i >= l) {
                    continue;
                }
                d[l] -= p;
                e[l] = g;
                e[m] = 0;
            }
        } while (m != l);
    }
}

}  // namespace detail

/// M-point Gauss rule for the weight (1-t)^alpha (1+t)^beta on [-1, 1].
template <class Real>
GaussRule<Real> gauss_jacobi(int M, Real alpha, Real beta) {
    using std::exp;
    using std::log;
    using std::sqrt;
    if (M <= 0) {
        throw ParameterError("gauss_jacobi: node count must be >= 1, got " + std::to_string(M));
    }
    if (!(alpha > -1) || !(beta > -1)) {
        throw ParameterError("gauss_jacobi: exponents must be > -1");
    }
    const Real ab = alpha + beta;
    std::vector<Real> d(static_cast<std::size_t>(M));
    std::vector<Real> e(static_cast<std::size_t>(M), Real(0));
    d[0] = (beta - alpha) / (ab + 2);
    for (int n = 1; n < M; ++n) {
        const Real s = 2 * n + ab;
        d[n] = (beta * beta - alpha * alpha) / (s * (s + 2));
    }
    for (int n = 1; n < M; ++n) {
        Real b2;
        if (n == 1) {
            // the generic form is 0/0 when alpha + beta = -1
            b2 = 4 * (1 + alpha) * (1 + beta) / ((2 + ab) * (2 + ab) * (3 + ab));
        } else {
            const Real s = 2 * n + ab;
            b2 = (4 * n / s) * ((n + alpha) / s) * ((n + beta) / (s + 1)) * ((n + ab) / (s - 1));
        }
        e[n - 1] = sqrt(b2);
    }
    const Real mu0 = exp((ab + 1) * log(Real(2)) + lgamma_pos(alpha + 1) + lgamma_pos(beta + 1) -
                         lgamma_pos(ab + 2));

    std::vector<Real> z;
    detail::tridiagonal_ql_first_components(d, e, z);

    std::vector<int> order(static_cast<std::size_t>(M));
    for (int i = 0; i < M; ++i) {
        order[i] = i;
    }
    std::sort(order.begin(), order.end(), [&](int a, int b) { return d[a] < d[b]; });
    GaussRule<Real> rule;
    rule.nodes.reserve(static_cast<std::size_t>(M));
    rule.weights.reserve(static_cast<std::size_t>(M));
    for (const int i : order) {
        rule.nodes.push_back(d[i]);
        rule.weights.push_back(mu0 * z[i] * z[i]);
    }
    return rule;
}

/// Half-period rule: each (angle, weight) is applied at +angle and -angle.
/// Angles ascending in (0, pi).
template <class Real>
struct MirroredRule {
    std::vector<Real> angles;
    std::vector<Real> weights;

    std::size_t size() const noexcept { return 2 * angles.size(); }

    /// All nodes in ascending order over (-pi, pi).
    std::vector<Real> nodes() const {
        std::vector<Real> out;
        out.reserve(size());
        for (auto it = angles.rbegin(); it != angles.rend(); ++it) {
            out.push_back(-*it);
        }
        out.insert(out.end(), angles.begin(), angles.end());
        return out;
    }
};

template <class Real>
struct BasicQuadRule : MirroredRule<Real> {
    Real k{0};
    int exact_degree{0};  ///< largest trigonometric degree integrated exactly
};

template <class Real>
struct BasicSingularRule : MirroredRule<Real> {
    Real k{0};
    Real p{1};
    Real alpha{0};  ///< exponent of (1 - t) absorbed into the weight
    Real beta{0};   ///< exponent of (1 + t)
};

using QuadRule = BasicQuadRule<double>;
using SingularRule = BasicSingularRule<double>;

namespace detail {

/// Maps a Gauss rule in t to ascending angles x = arccos t.
template <class Real>
void fill_mirrored(const GaussRule<Real>& g, MirroredRule<Real>& out) {
    using std::acos;
    const std::size_t m = g.nodes.size();
    out.angles.resize(m);
    out.weights.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
        out.angles[m - 1 - i] = acos(g.nodes[i]);
        out.weights[m - 1 - i] = g.weights[i];
    }
}

}  // namespace detail

/// Gauss rule for dm_k with M nodes per half period (2M nodes in total).
template <class Real>
BasicQuadRule<Real> build_rule(Real k, int M) {
    if (!(k >= 0)) {
        throw ParameterError("build_rule: k must be >= 0");
    }
    if (M <= 0) {
        throw ParameterError("build_rule: node count must be >= 1, got " + std::to_string(M));
    }
    const Real a = k - Real(1) / 2;
    BasicQuadRule<Real> rule;
    detail::fill_mirrored(gauss_jacobi<Real>(M, a, a), rule);
    rule.k = k;
    rule.exact_degree = 2 * M - 1;
    return rule;
}

/// (k - 1/2) - p(k+1)/2: the exponent of (1 - t) left after absorbing
/// (1 - cos x)^{-p(k+1)/2} |sin x|^{2k} dx.
inline double singular_exponent(double k, double p) {
    return (k - 0.5) - p * (k + 1.0) / 2.0;
}

/// Rule for int (1 - cos x)^{-p(k+1)/2} g(x) dm_k(x); throws IntegrabilityError
/// when the absorbed exponent is <= -1, i.e. (1 - cos x)^{-(k+1)/2} is not in L^p(dm_k).
template <class Real>
BasicSingularRule<Real> build_singular_rule(Real k, Real p, int M) {
    if (!(k >= 0)) {
        throw ParameterError("build_singular_rule: k must be >= 0");
    }
    if (M <= 0) {
        throw ParameterError("build_singular_rule: node count must be >= 1");
    }
    const Real alpha = (k - Real(1) / 2) - p * (k + 1) / 2;
    if (!(alpha > -1)) {
        throw IntegrabilityError("f = (1 - cos x)^{-(k+1)/2} is not in L^p(dm_k) at p = " +
                                 std::to_string(to_double(p)) + ", k = " + std::to_string(to_double(k)) +
                                 " (absorbed exponent " + std::to_string(to_double(alpha)) + " <= -1)");
    }
    BasicSingularRule<Real> rule;
    rule.k = k;
    rule.p = p;
    rule.alpha = alpha;
    rule.beta = k - Real(1) / 2;
    detail::fill_mirrored(gauss_jacobi<Real>(M, rule.alpha, rule.beta), rule);
    return rule;
}

namespace detail {

template <class Real>
bool is_finite(const Real& v) {
    using std::isfinite;
    return isfinite(v);
}

template <class Real>
bool is_finite(const std::complex<Real>& v) {
    return is_finite(v.real()) && is_finite(v.imag());
}

template <class Real>
double node_as_double(const Real& x) {
    return to_double(x);
}

}  // namespace detail

/// sum_i w_i (f(x_i) + f(-x_i)), pairs in ascending angle order. Pairing makes
/// the result bitwise invariant under f(x) -> f(-x).
template <class Real, class F>
auto integrate(F&& f, const MirroredRule<Real>& rule) {
    using Value = decltype(f(rule.angles.front()));
    Value sum{};
    for (std::size_t i = 0; i < rule.angles.size(); ++i) {
        const Real x = rule.angles[i];
        const Value plus = f(x);
        const Value minus = f(-x);
        if (!detail::is_finite(plus) || !detail::is_finite(minus)) {
            const double at = detail::node_as_double(detail::is_finite(plus) ? Real(-x) : x);
            throw EvaluationError("integrate: non-finite integrand at node x = " + std::to_string(at), at);
        }
        sum += rule.weights[i] * (plus + minus);
    }
    return sum;
}

using ComplexFunction = std::function<std::complex<double>(double)>;
using RealFunction = std::function<double(double)>;

/// Refinement policy for lp_norm.
struct LpControl {
    int initial_nodes = 64;      ///< first node count M (per half period)
    double rel_tol = 1e-8;       ///< stop when successive estimates agree to this relative tolerance
    double abs_tol = 0.0;        ///< ... or to this absolute tolerance (noise floor)
    int max_nodes = 1 << 16;     ///< cap on M

    /// Angles in (-pi, pi) where |f| has a simple zero. When present (or when
    /// detect_sign_changes finds any), the interval is split into panels at
    /// these points and at 0, +-pi, and each panel uses a Gauss-Jacobi rule
    /// absorbing |x - zero|^p and |sin x|^{2k} at its ends.
    std::vector<double> breakpoints;
    bool detect_sign_changes = false;  ///< real-valued f only (lp_norm_signed)
    /// |f|^p behaves like |x|^{origin_exponent} at x = 0; a nonzero value forces
    /// panel mode with the power absorbed at the origin.
    double origin_exponent = 0.0;
    int scan_points = 4096;            ///< sampling density for sign-change detection
    int panel_initial_nodes = 8;
    int panel_max_nodes = 1024;
};

/// (int |f|^p dm_k)^{1/p} under the doubling policy of `control`.
double lp_norm(const ComplexFunction& f, double p, Multiplicity k, const LpControl& control = {});

/// Same for a real-valued f evaluated in precision Real; sign changes of f can
/// be located and used as panel breakpoints.
template <class Real>
double lp_norm_signed(const std::function<Real(double)>& f, double p, Multiplicity k,
                      const LpControl& control = {});

extern template double lp_norm_signed<double>(const std::function<double(double)>&, double, Multiplicity,
                                              const LpControl&);
extern template double lp_norm_signed<Quad>(const std::function<Quad(double)>&, double, Multiplicity,
                                            const LpControl&);

/// Cached double-precision rule (the cache is transparent: same result as build_rule).
const QuadRule& cached_rule(Multiplicity k, int M);

// Double-precision conveniences matching the module contract.
QuadRule build_rule(Multiplicity k, int M);
SingularRule build_singular_rule(Multiplicity k, double p, int M);

/// Zeros of a real function on (-pi, pi) from sign changes on a uniform scan,
/// refined by bisection. Returns nothing if more than scan_points/8 are found.
template <class Real>
std::vector<double> locate_sign_changes(const std::function<Real(double)>& f, int scan_points);

}  // namespace hofourier
