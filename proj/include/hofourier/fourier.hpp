#pragma once

// Fourier-Heckman-Opdam expansions:
//   a_n = gamma_n^2 int f(y) E_n(-iy) dm_k(y),     S_N f = sum_{|n|<=N} a_n E_n(ix),
//   S_N f(x) = int K_N(x, y) f(y) dm_k(y),        K_N = sum gamma_n^2 E_n(ix) E_n(-iy).
// The kernel also has a two-term closed form
//   K_N(x, y) = gamma_{N+1}^2 Im(e^{-i(x-y)/2} E_{N+1}(ix) E_{N+1}(-iy)) / sin((x-y)/2).
// For real k the coefficients of E_n are real, so E_n(-iy) = conj(E_n(iy)).

#include <complex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hofourier/exppoly.hpp"
#include "hofourier/functions.hpp"
#include "hofourier/quadrature.hpp"
#include "hofourier/specfun.hpp"

namespace hofourier {

/// Default node count for degree-N work; integrands in partial sums have degree <= 2N+2.
inline int default_node_count(int N) {
    return std::max(64, 2 * N + 16);
}

struct CoeffTable {
    Multiplicity k{0.0};
    int N = 0;
    std::vector<std::complex<double>> a;  ///< a[n + N]

    std::complex<double> at(int n) const;
};

/// Throws ContractError if the rule is not exact to degree 2N+2 or was built for another k.
CoeffTable coefficients(const ComplexFunction& f, int N, Multiplicity k, const QuadRule& rule);

/// gamma_n^2 sum_i w_i (g(x_i) conj E_n(ix_i) + g(-x_i) E_n(ix_i)) for |n| <= N, out[n + N].
/// With a singular rule, g is the part of f left after absorbing the weight.
template <class Real, class G>
std::vector<std::complex<Real>> project(G&& g, int N, Real k, const MirroredRule<Real>& rule) {
    const NormTable<Real> norms(k, N);
    std::vector<std::complex<Real>> acc(static_cast<std::size_t>(2 * N + 1));
    std::vector<std::complex<Real>> e;
    for (std::size_t i = 0; i < rule.angles.size(); ++i) {
        const Real x = rule.angles[i];
        const std::complex<Real> gp = g(x);
        const std::complex<Real> gm = g(Real(-x));
        if (!detail::is_finite(gp) || !detail::is_finite(gm)) {
            const double at = to_double(detail::is_finite(gp) ? Real(-x) : x);
            throw EvaluationError("coefficients: non-finite integrand at node x = " + std::to_string(at), at);
        }
        e_eval_all(N, k, x, e);
        for (int n = -N; n <= N; ++n) {
            const std::complex<Real>& en = e[n + N];
            acc[n + N] += rule.weights[i] * (gp * std::conj(en) + gm * en);
        }
    }
    for (int n = -N; n <= N; ++n) {
        acc[n + N] *= norms.gamma_sq(n);
    }
    return acc;
}

/// sum_{|n|<=N} a_n E_n(ix) with a[n + N].
template <class Real>
std::complex<Real> expand(const std::vector<std::complex<Real>>& a, Real k, Real x) {
    const int N = static_cast<int>(a.size() / 2);
    std::vector<std::complex<Real>> e;
    e_eval_all(N, k, x, e);
    std::complex<Real> s{};
    for (int n = -N; n <= N; ++n) {
        s += a[n + N] * e[n + N];
    }
    return s;
}

struct KernelQuery {
    double x = 0.0;
    double y = 0.0;
    int N = 0;
    Multiplicity k{0.0};
};

/// Direct sum; throws ContractError if the imaginary part exceeds 1e-10 of the term magnitude.
double kernel_direct(const KernelQuery& q);
/// Closed form; falls back to kernel_direct when |sin((x-y)/2)| < 1e-8.
double kernel_closed(const KernelQuery& q);
inline constexpr double kKernelDiagonalThreshold = 1e-8;

/// sin((N+1/2)u) / (2 pi sin(u/2)), and (2N+1)/(2 pi) on the diagonal.
double dirichlet_kernel(int N, double u);

std::complex<double> partial_sum(const CoeffTable& c, double x);
/// int K_N(x, y) f(y) dm_k(y) through kernel_closed. Complex because f may be.
std::complex<double> partial_sum_kernel(const ComplexFunction& f, int N, Multiplicity k, const QuadRule& rule,
                                        double x);

using Metadata = std::vector<std::pair<std::string, std::string>>;

struct ConvergenceRow {
    int N = 0;
    double p = 0.0;
    double k = 0.0;
    std::optional<double> error;  ///< empty: f not in L^p, or no convergence
    std::string note;
};

struct ConvergenceReport {
    std::vector<ConvergenceRow> rows;  ///< sorted by p, then N
    Metadata metadata;

    bool all_failed() const;
};

struct ExperimentOptions {
    int M = 0;                ///< node override; 0 selects default_node_count
    int scan_points = 4096;   ///< sign-change scan for the error function
};

/// ||S_N f - f||_{p,k} for every (p, N). Runs in binary128 when f provides eval_quad.
ConvergenceReport converge_experiment(const TestFunction& f, Multiplicity k, std::vector<double> p_list,
                                      std::vector<int> N_list, const ExperimentOptions& opts = {});

struct CounterexampleRow {
    int n = 0;
    double b_n = 0.0;
    double a_n = 0.0;
    double a_minus_n = 0.0;
    double ratio_residual = 0.0;     ///< |a_{-n}/a_n - (n+k)/n| / ((n+k)/n)
    double identity_residual = 0.0;  ///< b_n vs 2 a_n (n+k)/n ||P_n||_{p,k}, relative
};

struct CounterexampleReport {
    std::vector<CounterexampleRow> rows;  ///< sorted by n
    Metadata metadata;
};

inline constexpr double kCounterexampleTolerance = 1e-8;

/// b_n = ||a_n E_n + a_{-n} E_{-n}||_{p,k} for f = (1 - cos x)^{-(k+1)/2}. Throws
/// IntegrabilityError when the coefficient integrals diverge (k = 0) and
/// ContractError if either coefficient identity fails beyond 1e-8.
CounterexampleReport counterexample_experiment(Multiplicity k, double p, std::vector<int> n_list,
                                               const ExperimentOptions& opts = {});

struct CotPolicy {
    double h0 = 1.0 / 64.0;  ///< first excision radius
    int max_levels = 24;      ///< halvings of h
    double rel_tol = 1e-9;    ///< on successive extrapolated values
};

/// int |cot((x-y)/2) (|sin x / sin y|^a - |sin x / sin y|^b)| dy over [-pi, pi]
/// minus (x-h, x+h), extrapolated to h -> 0. Diagnostic only.
double cot_comparison_integral(double x, double a, double b, const CotPolicy& policy = {});

}  // namespace hofourier
