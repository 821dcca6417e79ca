#include "hofourier/quadrature.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <tuple>

namespace hofourier {

namespace {

constexpr double kPi = std::numbers::pi;

void check_p(double p) {
    if (!std::isfinite(p) || p < 1.0) {
        throw ParameterError("lp_norm: p must be a finite real >= 1, got " + std::to_string(p));
    }
}

const GaussRule<double>& cached_jacobi(int M, double alpha, double beta) {
    static std::mutex mu;
    static std::map<std::tuple<int, double, double>, std::unique_ptr<GaussRule<double>>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto& slot = cache[{M, alpha, beta}];
    if (!slot) {
        slot = std::make_unique<GaussRule<double>>(gauss_jacobi<double>(M, alpha, beta));
    }
    return *slot;
}

bool converged(double prev, double est, const LpControl& c) {
    const double diff = std::abs(est - prev);
    return diff <= c.rel_tol * std::abs(est) || diff <= c.abs_tol;
}

template <class Real>
Real abs_real(const Real& v) {
    using std::fabs;
    return fabs(v);
}

template <class Real>
Real checked_abs(const std::function<Real(double)>& f, double x) {
    const Real v = f(x);
    if (!detail::is_finite(v)) {
        throw EvaluationError("lp_norm: non-finite integrand at x = " + std::to_string(x), x);
    }
    return abs_real(v);
}

template <class Real>
double root_p(const Real& integral, double p) {
    using std::pow;
    return to_double(pow(integral, Real(1) / Real(p)));
}

template <class Real>
double global_lp(const std::function<Real(double)>& f, double p, Multiplicity k, const LpControl& c) {
    using std::pow;
    const Real rp(p);
    double prev = 0.0;
    bool have_prev = false;
    for (int M = c.initial_nodes; M <= c.max_nodes; M *= 2) {
        const QuadRule& rule = cached_rule(k, M);
        Real sum = 0;
        for (std::size_t i = 0; i < rule.angles.size(); ++i) {
            const double x = rule.angles[i];
            sum += Real(rule.weights[i]) * (pow(checked_abs(f, x), rp) + pow(checked_abs(f, -x), rp));
        }
        const double est = root_p(sum, p);
        if (have_prev && converged(prev, est, c)) {
            return est;
        }
        if (have_prev && M * 2 > c.max_nodes) {
            throw ConvergenceError("lp_norm: no convergence at the node cap " + std::to_string(c.max_nodes), prev,
                                   est);
        }
        prev = est;
        have_prev = true;
    }
    throw ConvergenceError("lp_norm: node cap reached before two estimates", prev, prev);
}

struct Endpoint {
    double x;
    bool weight;  // |sin x|^{2k} vanishes here
    bool zero;    // f has a simple zero here
};

std::vector<Endpoint> panel_endpoints(std::vector<double> zeros) {
    std::vector<Endpoint> pts{{-kPi, true, false}, {0.0, true, false}, {kPi, true, false}};
    for (const double z : zeros) {
        if (!(z > -kPi && z < kPi)) {
            throw ParameterError("lp_norm: breakpoints must lie in (-pi, pi)");
        }
        pts.push_back({z, false, true});
    }
    std::sort(pts.begin(), pts.end(), [](const Endpoint& a, const Endpoint& b) { return a.x < b.x; });
    std::vector<Endpoint> merged;
    for (const Endpoint& e : pts) {
        if (!merged.empty() && e.x - merged.back().x < 1e-12) {
            Endpoint& m = merged.back();
            if (e.weight) {
                m.x = e.x;
            }
            m.weight = m.weight || e.weight;
            m.zero = m.zero || e.zero;
        } else {
            merged.push_back(e);
        }
    }
    return merged;
}

template <class Real>
double panel_lp(const std::function<Real(double)>& f, double p, Multiplicity k, const std::vector<double>& zeros,
                const LpControl& c) {
    using std::pow;
    const double two_k = 2.0 * k.value();
    auto exponent = [&](const Endpoint& e) {
        double ex = (e.weight ? two_k : 0.0) + (e.zero ? p : 0.0);
        if (e.x == 0.0) {
            ex += c.origin_exponent;
        }
        return ex;
    };
    if (!(two_k + c.origin_exponent > -1.0)) {
        throw IntegrabilityError("lp_norm: |f|^p dm_k is not integrable at the origin");
    }
    const std::vector<Endpoint> pts = panel_endpoints(zeros);
    const Real rp(p);
    double prev = 0.0;
    bool have_prev = false;
    for (int M = c.panel_initial_nodes; M <= c.panel_max_nodes; M *= 2) {
        Real total = 0;
        for (std::size_t j = 0; j + 1 < pts.size(); ++j) {
            const Endpoint& a = pts[j];
            const Endpoint& b = pts[j + 1];
            const double beta = exponent(a);
            const double alpha = exponent(b);
            const GaussRule<double>& g = cached_jacobi(M, alpha, beta);
            const double h = (b.x - a.x) / 2.0;
            Real panel = 0;
            for (std::size_t i = 0; i < g.nodes.size(); ++i) {
                const double u = g.nodes[i];
                const double da = h * (1.0 + u);
                const double db = h * (1.0 - u);
                const bool near_a = da <= db;
                const double x = near_a ? a.x + da : b.x - db;
                double s;
                if (near_a && a.weight) {
                    s = std::sin(da);
                } else if (!near_a && b.weight) {
                    s = std::sin(db);
                } else {
                    s = std::abs(std::sin(x));
                }
                const double smooth = std::pow(s, two_k) * std::pow(1.0 - u, -alpha) * std::pow(1.0 + u, -beta);
                panel += Real(g.weights[i] * smooth) * pow(checked_abs(f, x), rp);
            }
            total += Real(h) * panel;
        }
        const double est = root_p(total, p);
        if (have_prev && converged(prev, est, c)) {
            return est;
        }
        if (have_prev && M * 2 > c.panel_max_nodes) {
            throw ConvergenceError("lp_norm: no convergence at the panel node cap " +
                                       std::to_string(c.panel_max_nodes),
                                   prev, est);
        }
        prev = est;
        have_prev = true;
    }
    throw ConvergenceError("lp_norm: panel node cap reached before two estimates", prev, prev);
}

template <class Real>
double lp_engine(const std::function<Real(double)>& f, double p, Multiplicity k, const LpControl& c,
                 bool allow_detection) {
    check_p(p);
    if (c.initial_nodes <= 0 || c.max_nodes < c.initial_nodes || c.panel_initial_nodes <= 0 ||
        c.panel_max_nodes < c.panel_initial_nodes) {
        throw ParameterError("lp_norm: invalid node policy");
    }
    std::vector<double> zeros = c.breakpoints;
    if (c.detect_sign_changes) {
        if (!allow_detection) {
            throw ParameterError("lp_norm: sign-change detection needs a real-valued function");
        }
        const std::vector<double> found = locate_sign_changes<Real>(f, c.scan_points);
        zeros.insert(zeros.end(), found.begin(), found.end());
    }
    if (zeros.empty() && c.origin_exponent == 0.0) {
        return global_lp<Real>(f, p, k, c);
    }
    return panel_lp<Real>(f, p, k, zeros, c);
}

}  // namespace

template <class Real>
std::vector<double> locate_sign_changes(const std::function<Real(double)>& f, int scan_points) {
    if (scan_points < 2) {
        throw ParameterError("locate_sign_changes: need at least 2 scan points");
    }
    auto sign = [](const Real& v) { return v > 0 ? 1 : (v < 0 ? -1 : 0); };
    const double step = 2.0 * kPi / scan_points;
    std::vector<double> xs(static_cast<std::size_t>(scan_points));
    std::vector<int> sg(xs.size());
    for (int j = 0; j < scan_points; ++j) {
        xs[j] = -kPi + (j + 0.5) * step;
        sg[j] = sign(f(xs[j]));
    }
    std::vector<double> zeros;
    for (int j = 0; j < scan_points; ++j) {
        if (sg[j] == 0) {
            zeros.push_back(xs[j]);
            continue;
        }
        if (j + 1 < scan_points && sg[j] * sg[j + 1] < 0) {
            double lo = xs[j];
            double hi = xs[j + 1];
            const int s_lo = sg[j];
            for (int it = 0; it < 200 && hi - lo > 4 * std::numeric_limits<double>::epsilon(); ++it) {
                const double mid = 0.5 * (lo + hi);
                const int s = sign(f(mid));
                if (s == 0) {
                    lo = hi = mid;
                    break;
                }
                (s == s_lo ? lo : hi) = mid;
            }
            zeros.push_back(0.5 * (lo + hi));
        }
    }
    if (zeros.size() > static_cast<std::size_t>(scan_points / 8)) {
        // sign pattern is rounding noise, not structure
        return {};
    }
    return zeros;
}

template std::vector<double> locate_sign_changes<double>(const std::function<double(double)>&, int);
template std::vector<double> locate_sign_changes<Quad>(const std::function<Quad(double)>&, int);

template <class Real>
double lp_norm_signed(const std::function<Real(double)>& f, double p, Multiplicity k, const LpControl& control) {
    return lp_engine<Real>(f, p, k, control, true);
}

template double lp_norm_signed<double>(const std::function<double(double)>&, double, Multiplicity,
                                       const LpControl&);
template double lp_norm_signed<Quad>(const std::function<Quad(double)>&, double, Multiplicity, const LpControl&);

double lp_norm(const ComplexFunction& f, double p, Multiplicity k, const LpControl& control) {
    const std::function<double(double)> mag = [&f](double x) {
        const std::complex<double> v = f(x);
        if (!detail::is_finite(v)) {
            throw EvaluationError("lp_norm: non-finite integrand at x = " + std::to_string(x), x);
        }
        return std::abs(v);
    };
    return lp_engine<double>(mag, p, k, control, false);
}

const QuadRule& cached_rule(Multiplicity k, int M) {
    static std::mutex mu;
    static std::map<std::pair<double, int>, std::unique_ptr<QuadRule>> cache;
    if (M <= 0) {
        throw ParameterError("build_rule: node count must be >= 1, got " + std::to_string(M));
    }
    std::lock_guard<std::mutex> lock(mu);
    auto& slot = cache[{k.value(), M}];
    if (!slot) {
        slot = std::make_unique<QuadRule>(build_rule<double>(k.value(), M));
    }
    return *slot;
}

QuadRule build_rule(Multiplicity k, int M) {
    return build_rule<double>(k.value(), M);
}

SingularRule build_singular_rule(Multiplicity k, double p, int M) {
    return build_singular_rule<double>(k.value(), p, M);
}

}  // namespace hofourier
