#include "hofourier/fourier.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include <boost/math/quadrature/tanh_sinh.hpp>

namespace hofourier {

namespace {

constexpr double kPi = std::numbers::pi;

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void check_N(int N) {
    if (N < 0) {
        throw ParameterError("truncation N must be >= 0, got " + std::to_string(N));
    }
}

}  // namespace

std::complex<double> CoeffTable::at(int n) const {
    if (n < -N || n > N) {
        return 0.0;
    }
    return a[static_cast<std::size_t>(n + N)];
}

CoeffTable coefficients(const ComplexFunction& f, int N, Multiplicity k, const QuadRule& rule) {
    check_N(N);
    if (rule.k != k.value()) {
        throw ContractError("coefficients: rule was built for k = " + fmt(rule.k) + ", not " + fmt(k.value()));
    }
    if (rule.exact_degree < 2 * N + 2) {
        throw ContractError("coefficients: rule exact to degree " + std::to_string(rule.exact_degree) +
                            ", need " + std::to_string(2 * N + 2));
    }
    CoeffTable c;
    c.k = k;
    c.N = N;
    c.a = project<double>(f, N, k.value(), rule);
    return c;
}

double kernel_direct(const KernelQuery& q) {
    check_N(q.N);
    const double k = q.k.value();
    std::vector<std::complex<double>> ex;
    std::vector<std::complex<double>> ey;
    e_eval_all(q.N, k, q.x, ex);
    e_eval_all(q.N, k, q.y, ey);
    const NormTable<double> norms(k, q.N);
    std::complex<double> sum = 0.0;
    double magnitude = 0.0;
    for (int n = -q.N; n <= q.N; ++n) {
        const std::complex<double> term = norms.gamma_sq(n) * ex[n + q.N] * std::conj(ey[n + q.N]);
        sum += term;
        magnitude += std::abs(term);
    }
    if (std::abs(sum.imag()) > 1e-10 * magnitude) {
        throw ContractError("kernel_direct: imaginary part " + fmt(sum.imag()) + " is not negligible");
    }
    return sum.real();
}

double kernel_closed(const KernelQuery& q) {
    check_N(q.N);
    const double u = q.x - q.y;
    const double s = std::sin(u / 2.0);
    if (std::abs(s) < kKernelDiagonalThreshold) {
        return kernel_direct(q);
    }
    const double k = q.k.value();
    const std::complex<double> ex = e_eval<double>(q.N + 1, k, q.x);
    const std::complex<double> ey = e_eval<double>(q.N + 1, k, q.y);
    const std::complex<double> z = std::polar(1.0, -u / 2.0) * ex * std::conj(ey);
    const double g2 = std::exp(-log_norm_sq<double>(q.N + 1, k));
    return g2 * z.imag() / s;
}

double dirichlet_kernel(int N, double u) {
    check_N(N);
    const double s = std::sin(u / 2.0);
    if (std::abs(s) < kKernelDiagonalThreshold) {
        return (2.0 * N + 1.0) / (2.0 * kPi);
    }
    return std::sin((N + 0.5) * u) / (2.0 * kPi * s);
}

std::complex<double> partial_sum(const CoeffTable& c, double x) {
    return expand<double>(c.a, c.k.value(), x);
}

std::complex<double> partial_sum_kernel(const ComplexFunction& f, int N, Multiplicity k, const QuadRule& rule,
                                        double x) {
    check_N(N);
    if (rule.k != k.value()) {
        throw ContractError("partial_sum_kernel: rule was built for another k");
    }
    return integrate<double>(
        [&](double y) {
            return kernel_closed(KernelQuery{x, y, N, k}) * f(y);
        },
        rule);
}

bool ConvergenceReport::all_failed() const {
    return std::all_of(rows.begin(), rows.end(), [](const ConvergenceRow& r) { return !r.error.has_value(); });
}

namespace {

template <class Real>
std::function<std::complex<Real>(const Real&)> evaluator(const TestFunction& f);

template <>
std::function<std::complex<double>(const double&)> evaluator<double>(const TestFunction& f) {
    return [ev = f.eval](const double& x) { return ev(x); };
}

template <>
std::function<std::complex<Quad>(const Quad&)> evaluator<Quad>(const TestFunction& f) {
    return f.eval_quad;
}

template <class Real>
void converge_impl(const TestFunction& f, Multiplicity k, const std::vector<double>& p_list,
                   const std::vector<int>& N_list, const ExperimentOptions& opts, ConvergenceReport& report) {
    const auto feval = evaluator<Real>(f);
    const Real kr(k.value());
    for (const int N : N_list) {
        const int M = opts.M > 0 ? opts.M : default_node_count(N);
        std::vector<std::complex<Real>> a;
        double scale = 0.0;
        std::string failure;
        try {
            if (f.origin_singularity > 0.0) {
                if (!f.cosine_power) {
                    throw ContractError("converge: no rule for the singularity of " + f.id);
                }
                const auto rule = build_singular_rule<Real>(kr, Real(1), M);
                a = project<Real>([](const Real&) { return std::complex<Real>(1); }, N, kr, rule);
                for (const Real& x : rule.angles) {
                    scale = std::max(scale, to_double(cabs(feval(x))));
                }
            } else {
                const auto rule = build_rule<Real>(kr, M);
                if (rule.exact_degree < 2 * N + 2) {
                    throw ContractError("converge: M = " + std::to_string(M) + " is too small for N = " +
                                        std::to_string(N));
                }
                a = project<Real>(feval, N, kr, rule);
                for (const Real& x : rule.angles) {
                    scale = std::max({scale, to_double(cabs(feval(x))), to_double(cabs(feval(Real(-x))))});
                }
            }
        } catch (const IntegrabilityError& e) {
            failure = e.what();
        }
        for (const double p : p_list) {
            ConvergenceRow row;
            row.N = N;
            row.p = p;
            row.k = k.value();
            if (!failure.empty()) {
                row.note = failure;
            } else if (!f.in_lp(p, k)) {
                row.note = "f not in L^p(dm_k)";
            } else {
                LpControl c;
                c.abs_tol = 1e3 * to_double(epsilon_v<Real>()) * scale * std::pow(norm_sq(0, k), 1.0 / p);
                c.origin_exponent = -p * f.origin_singularity;
                c.scan_points = opts.scan_points;
                std::function<Real(double)> err;
                if (f.real_valued) {
                    c.detect_sign_changes = true;
                    err = [&](double x) {
                        const Real xr(x);
                        return (expand<Real>(a, kr, xr) - feval(xr)).real();
                    };
                } else {
                    err = [&](double x) {
                        const Real xr(x);
                        return cabs(expand<Real>(a, kr, xr) - feval(xr));
                    };
                }
                try {
                    row.error = lp_norm_signed<Real>(err, p, k, c);
                } catch (const ConvergenceError& e) {
                    row.note = std::string(e.what()) + " (last estimates " + fmt(e.previous_estimate()) + ", " +
                               fmt(e.last_estimate()) + ")";
                } catch (const IntegrabilityError& e) {
                    row.note = e.what();
                }
            }
            report.rows.push_back(std::move(row));
        }
    }
}

}  // namespace

ConvergenceReport converge_experiment(const TestFunction& f, Multiplicity k, std::vector<double> p_list,
                                      std::vector<int> N_list, const ExperimentOptions& opts) {
    if (p_list.empty() || N_list.empty()) {
        throw ParameterError("converge: need at least one p and one N");
    }
    for (const double p : p_list) {
        if (!std::isfinite(p) || p < 1.0) {
            throw ParameterError("converge: p must be >= 1, got " + fmt(p));
        }
    }
    for (const int N : N_list) {
        check_N(N);
    }
    std::sort(p_list.begin(), p_list.end());
    p_list.erase(std::unique(p_list.begin(), p_list.end()), p_list.end());
    std::sort(N_list.begin(), N_list.end());
    N_list.erase(std::unique(N_list.begin(), N_list.end()), N_list.end());

    ConvergenceReport report;
    const bool quad = static_cast<bool>(f.eval_quad);
    if (quad) {
        converge_impl<Quad>(f, k, p_list, N_list, opts, report);
    } else {
        converge_impl<double>(f, k, p_list, N_list, opts, report);
    }
    std::stable_sort(report.rows.begin(), report.rows.end(), [](const ConvergenceRow& a, const ConvergenceRow& b) {
        return a.p != b.p ? a.p < b.p : a.N < b.N;
    });
    report.metadata = {
        {"function", f.id},
        {"k", fmt(k.value())},
        {"nodes", opts.M > 0 ? std::to_string(opts.M) : "max(64,2N+16)"},
        {"precision", quad ? "binary128" : "double"},
        {"scan_points", std::to_string(opts.scan_points)},
    };
    return report;
}

CounterexampleReport counterexample_experiment(Multiplicity k, double p, std::vector<int> n_list,
                                               const ExperimentOptions& opts) {
    if (!std::isfinite(p) || p < 1.0) {
        throw ParameterError("counterexample: p must be >= 1, got " + fmt(p));
    }
    if (n_list.empty()) {
        throw ParameterError("counterexample: need at least one n");
    }
    for (const int n : n_list) {
        if (n < 1) {
            throw ParameterError("counterexample: n must be a positive integer, got " + std::to_string(n));
        }
    }
    std::sort(n_list.begin(), n_list.end());
    n_list.erase(std::unique(n_list.begin(), n_list.end()), n_list.end());

    const double kv = k.value();
    CounterexampleReport report;
    double max_ratio = 0.0;
    double max_identity = 0.0;
    std::vector<std::complex<double>> e;
    for (const int n : n_list) {
        const int M = opts.M > 0 ? opts.M : default_node_count(n);
        const SingularRule rule = build_singular_rule(k, 1.0, M);
        // a_m = gamma_m^2 sum_i w_i 2 Re E_m(ix_i): f is absorbed into the weight.
        double sn = 0.0;
        double smn = 0.0;
        for (std::size_t i = 0; i < rule.angles.size(); ++i) {
            e_eval_all(n, kv, rule.angles[i], e);
            sn += rule.weights[i] * 2.0 * e[2 * n].real();
            smn += rule.weights[i] * 2.0 * e[0].real();
        }
        CounterexampleRow row;
        row.n = n;
        row.a_n = sn * std::exp(-log_norm_sq<double>(n, kv));
        row.a_minus_n = smn * std::exp(-log_norm_sq<double>(-n, kv));
        const double expected = (n + kv) / n;
        row.ratio_residual = std::abs(row.a_minus_n / row.a_n - expected) / expected;
        if (!(row.ratio_residual <= kCounterexampleTolerance)) {
            throw ContractError("counterexample: a_{-n}/a_n deviates from (n+k)/n at n = " + std::to_string(n) +
                                " (relative " + fmt(row.ratio_residual) + ")");
        }

        LpControl c;
        c.scan_points = opts.scan_points;
        // zeros of P_n(ix): cos x at the roots of C_n^k, i.e. the Gauss nodes for (1-t^2)^{k-1/2}
        const GaussRule<double> zeros = gauss_jacobi<double>(n, kv - 0.5, kv - 0.5);
        for (const double t : zeros.nodes) {
            const double x = std::acos(t);
            c.breakpoints.push_back(x);
            c.breakpoints.push_back(-x);
        }
        const double an = row.a_n;
        const double amn = row.a_minus_n;
        const std::function<double(double)> term = [&](double x) {
            const std::complex<double> en = e_eval<double>(n, kv, x);
            const std::complex<double> emn = e_eval<double>(-n, kv, x);
            return (an * en + amn * emn).real();
        };
        const std::function<double(double)> pn = [&](double x) { return p_eval<double>(n, kv, x); };
        row.b_n = lp_norm_signed<double>(term, p, k, c);
        const double pn_norm = lp_norm_signed<double>(pn, p, k, c);
        const double predicted = 2.0 * std::abs(an) * expected * pn_norm;
        row.identity_residual = std::abs(row.b_n - predicted) / std::max(row.b_n, predicted);
        if (!(row.identity_residual <= kCounterexampleTolerance)) {
            throw ContractError("counterexample: b_n disagrees with 2 a_n (n+k)/n ||P_n|| at n = " +
                                std::to_string(n) + " (relative " + fmt(row.identity_residual) + ")");
        }
        max_ratio = std::max(max_ratio, row.ratio_residual);
        max_identity = std::max(max_identity, row.identity_residual);
        report.rows.push_back(row);
    }
    report.metadata = {
        {"function", "counterexample"},
        {"k", fmt(kv)},
        {"p", fmt(p)},
        {"nodes", opts.M > 0 ? std::to_string(opts.M) : "max(64,2n+16)"},
        {"max_ratio_residual", fmt(max_ratio)},
        {"max_identity_residual", fmt(max_identity)},
    };
    return report;
}

double cot_comparison_integral(double x, double a, double b, const CotPolicy& policy) {
    if (!(a > 0.0 && a < 1.0) || !(b > 0.0 && b < 1.0)) {
        throw ParameterError("cot_comparison_integral: exponents must lie in (0, 1)");
    }
    if (!(x >= -kPi && x <= kPi)) {
        throw ParameterError("cot_comparison_integral: x must lie in [-pi, pi]");
    }
    const double sx = std::abs(std::sin(x));
    if (a == b || sx < 1e-15) {
        return 0.0;
    }
    // |sin y| from the distance to a multiple of pi when one is the nearer panel end,
    // and r^a - r^b = r^b expm1((a - b) log r) with log r free of cancellation near y = x
    auto integrand = [=](double y, double sy) {
        const double half = (x - y) / 2.0;
        double log_r;
        if ((std::sin(x) > 0.0) == (std::sin(y) > 0.0)) {
            const double diff = (std::sin(x) > 0.0 ? 2.0 : -2.0) * std::cos((x + y) / 2.0) * std::sin(half);
            log_r = std::log1p(diff / sy);
        } else {
            log_r = std::log(sx / sy);
        }
        const double rb = std::exp(b * log_r);
        return std::abs(std::cos(half) / std::sin(half) * rb * std::expm1((a - b) * log_r));
    };
    auto on_pi_lattice = [](double c) { return c == -kPi || c == 0.0 || c == kPi; };
    boost::math::quadrature::tanh_sinh<double> ts;
    auto excised = [&](double h) {
        std::vector<double> cuts{-kPi, 0.0, kPi};
        for (const double c : {x - h, x + h}) {
            if (c > -kPi && c < kPi) {
                cuts.push_back(c);
            }
        }
        std::sort(cuts.begin(), cuts.end());
        cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
        double total = 0.0;
        for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
            const double lo = cuts[i];
            const double hi = cuts[i + 1];
            if (lo >= x - h && hi <= x + h) {
                continue;
            }
            const bool lo_pi = on_pi_lattice(lo);
            const bool hi_pi = on_pi_lattice(hi);
            // yc is a - y left of the midpoint and b - y right of it
            auto panel = [&](double y, double yc) {
                double sy;
                if (yc < 0.0 && lo_pi) {
                    sy = std::sin(-yc);
                } else if (yc > 0.0 && hi_pi) {
                    sy = std::sin(yc);
                } else {
                    sy = std::abs(std::sin(y));
                }
                return sy > 0.0 ? integrand(y, sy) : 0.0;
            };
            total += ts.integrate(panel, lo, hi, 1e-13);
        }
        return total;
    };
    // I(h) = I - c h + O(h^2): the integrand is bounded across y = x
    // the expansion in h only holds once the excision stays clear of the lattice pi Z
    const double clearance = std::min({std::abs(x), kPi - std::abs(x)});
    double h = std::min(policy.h0, clearance / 8.0);
    double prev_i = excised(h);
    double prev_r = 0.0;
    bool have_r = false;
    for (int level = 0; level < policy.max_levels; ++level) {
        h /= 2.0;
        const double cur_i = excised(h);
        const double r = 2.0 * cur_i - prev_i;
        if (have_r && std::abs(r - prev_r) <= policy.rel_tol * std::abs(r)) {
            return r;
        }
        prev_i = cur_i;
        prev_r = r;
        have_r = true;
    }
    throw ConvergenceError("cot_comparison_integral: no convergence as h -> 0", prev_r, prev_i);
}

}  // namespace hofourier
