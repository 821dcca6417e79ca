// Acceptance suite. `acceptance <n>` runs one criterion, no argument runs all.
// Each prints one PASS/FAIL line; the exit status is nonzero if any failed.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "hofourier/cli.hpp"
#include "hofourier/exppoly.hpp"
#include "hofourier/fourier.hpp"
#include "hofourier/functions.hpp"
#include "hofourier/quadrature.hpp"
#include "hofourier/specfun.hpp"

using namespace hofourier;
using std::numbers::pi;
using C = std::complex<double>;

namespace {

const double kValues[] = {0.5, 1.0, 2.5};

struct Outcome {
    bool pass = true;
    std::string detail;
    double limit_seconds = 0.0;  // 0: no runtime bound
};

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

// 1. Normalized Gram matrix and closed-form norms.
Outcome orthogonality() {
    constexpr int kMax = 16;
    constexpr double kOffTol = 1e-9;
    constexpr double kNormTol = 1e-10;
    double worst_off = 0.0;
    double worst_norm = 0.0;
    for (const double kv : kValues) {
        const Multiplicity k(kv);
        const GramSchmidtBasis basis(k, kMax);
        for (int n = -kMax; n <= kMax; ++n) {
            const double closed = norm_sq(n, k);
            const double computed = basis.inner_product(basis.E(n), basis.E(n)).real();
            worst_norm = std::max(worst_norm, std::abs(computed - closed) / closed);
            for (int m = -kMax; m <= kMax; ++m) {
                if (m != n) {
                    const C g = gamma_n(n, k) * gamma_n(m, k) * basis.inner_product(basis.E(n), basis.E(m));
                    worst_off = std::max(worst_off, std::abs(g));
                }
            }
        }
    }
    return {worst_off < kOffTol && worst_norm < kNormTol,
            "max off-diagonal " + fmt(worst_off) + ", max norm error " + fmt(worst_norm), 10.0};
}

// 2. T E_n = n_k E_n and T^2 P_n = (n+k)^2 P_n.
Outcome eigen_identities() {
    constexpr int kMax = 32;
    constexpr double kTol = 1e-12;
    double worst = 0.0;
    for (const double kv : kValues) {
        const GramSchmidtBasis basis(Multiplicity(kv), kMax + 1);
        for (int n = -kMax; n <= kMax; ++n) {
            const IdentityReport r = identity_checks(basis, n);
            worst = std::max({worst, r.eigen_residual, r.symmetric_eigen_residual});
        }
    }
    return {worst < kTol, "max residual " + fmt(worst), 5.0};
}

// 3. Shift and reflection identities; triangular support with non-negative coefficients.
Outcome structure() {
    constexpr int kMax = 20;
    constexpr double kTol = 1e-12;
    double worst = 0.0;
    double most_negative = 0.0;
    bool support_ok = true;
    for (const double kv : kValues) {
        const GramSchmidtBasis basis(Multiplicity(kv), kMax + 1);
        for (int n = -kMax; n <= kMax; ++n) {
            const IdentityReport r = identity_checks(basis, n);
            worst = std::max(worst, r.shift_residual);
            if (r.reflection_residual) {
                worst = std::max(worst, *r.reflection_residual);
            }
            for (const auto& [j, c] : basis.E(n).terms()) {
                if (j == n) {
                    support_ok = support_ok && c == C(1.0);
                    continue;
                }
                support_ok = support_ok && precedes(j, n) && c.imag() == 0.0;
                most_negative = std::min(most_negative, c.real());
            }
        }
    }
    return {worst < kTol && most_negative >= -kTol && support_ok,
            "max residual " + fmt(worst) + ", min coefficient " + fmt(most_negative) +
                (support_ok ? ", support triangular" : ", support NOT triangular")};
}

// 4. Closed-form kernel against the direct sum; Dirichlet kernel at k = 0.
Outcome kernel_identity() {
    constexpr int kQueries = 100;
    constexpr double kTol = 1e-9;
    constexpr double kClassicalTol = 1e-12;
    std::mt19937_64 gen(20240611);
    std::uniform_real_distribution<double> angle(-pi, pi);
    std::uniform_int_distribution<int> degree(0, 16);
    double worst = 0.0;
    for (const double kv : kValues) {
        for (int i = 0; i < kQueries; ++i) {
            const KernelQuery q{angle(gen), angle(gen), degree(gen), Multiplicity(kv)};
            worst = std::max(worst, std::abs(kernel_direct(q) - kernel_closed(q)));
        }
    }
    double worst_classical = 0.0;
    for (int i = 0; i < kQueries; ++i) {
        const KernelQuery q{angle(gen), angle(gen), degree(gen), Multiplicity(0.0)};
        const double d = dirichlet_kernel(q.N, q.x - q.y);
        worst_classical = std::max({worst_classical, std::abs(kernel_direct(q) - d), std::abs(kernel_closed(q) - d)});
    }
    return {worst < kTol && worst_classical < kClassicalTol,
            "max |direct - closed| " + fmt(worst) + ", max k=0 Dirichlet error " + fmt(worst_classical), 5.0};
}

// 5. S_N reproduces E_m for |m| <= N <= 12 with 2N+16 nodes.
Outcome projection() {
    constexpr int kMaxN = 12;
    constexpr int kGrid = 256;
    constexpr double kTol = 1e-8;
    const std::vector<double> grid = uniform_grid(kGrid);
    double worst = 0.0;
    for (const double kv : kValues) {
        const Multiplicity k(kv);
        for (int N = 0; N <= kMaxN; ++N) {
            const QuadRule& rule = cached_rule(k, 2 * N + 16);
            for (int m = -N; m <= N; ++m) {
                const CoeffTable c = coefficients([&](double x) { return e_eval(m, k, x); }, N, k, rule);
                for (const double x : grid) {
                    worst = std::max(worst, std::abs(partial_sum(c, x) - e_eval(m, k, x)));
                }
            }
        }
    }
    return {worst < kTol, "max sup-norm error " + fmt(worst)};
}

// 6. e^{cos x} at k = 1 inside the convergence window.
Outcome in_window_convergence() {
    constexpr double kFinalTol = 1e-6;
    const Multiplicity k(1.0);
    const ConvergenceReport rep = converge_experiment(parse_function("expcos", k), k, {1.6, 2.0, 2.8}, {4, 8, 16, 32});
    bool ok = rep.rows.size() == 12;
    std::string detail;
    for (std::size_t i = 0; ok && i < rep.rows.size(); ++i) {
        const ConvergenceRow& r = rep.rows[i];
        if (!r.error) {
            ok = false;
            detail = "missing error at N=" + std::to_string(r.N) + " p=" + fmt(r.p) + " ";
            break;
        }
        if (i % 4 != 0 && !(*r.error < *rep.rows[i - 1].error)) {
            ok = false;
            detail += "not decreasing at N=" + std::to_string(r.N) + " p=" + fmt(r.p) + " ";
        }
        if (r.N == 32) {
            detail += "p=" + fmt(r.p) + ": " + fmt(*r.error) + " ";
            ok = ok && *r.error < kFinalTol;
        }
    }
    return {ok, "errors at N=32: " + detail, 60.0};
}

// 7. Counterexample: decay at p = 2, none at p = 1.45, coefficient ratio (n+k)/n.
Outcome counterexample() {
    constexpr double kRatioTol = 1e-8;
    const Multiplicity k(1.0);
    std::vector<int> ns;
    for (int n = 10; n <= 200; ++n) {
        ns.push_back(n);
    }
    const CounterexampleReport p2 = counterexample_experiment(k, 2.0, {10, 200});
    const CounterexampleReport below = counterexample_experiment(k, 1.45, ns);
    double worst_ratio = 0.0;
    for (const auto* rep : {&p2, &below}) {
        for (const CounterexampleRow& r : rep->rows) {
            worst_ratio = std::max(worst_ratio, r.ratio_residual);
        }
    }
    const double b10 = p2.rows.front().b_n;
    const double b200 = p2.rows.back().b_n;
    double lo = HUGE_VAL;
    double hi = 0.0;
    for (const CounterexampleRow& r : below.rows) {
        lo = std::min(lo, r.b_n);
        hi = std::max(hi, r.b_n);
    }
    const bool decays = b200 < b10 / 10.0;
    const bool persists = lo > 0.5 * hi;
    return {decays && persists && worst_ratio < kRatioTol,
            "p=2: b_10=" + fmt(b10) + " b_200=" + fmt(b200) + (decays ? "" : " (no decay)") + "; p=1.45: min/max=" +
                fmt(lo / hi) + "; max ratio residual " + fmt(worst_ratio)};
}

// 8. gamma_n |sin x|^k |E_n(ix)| bounded; running max flat after n = 8.
Outcome envelope_bound() {
    constexpr int kMaxN = 64;
    constexpr int kGrid = 512;
    constexpr double kBound = 10.0;
    constexpr double kGrowth = 1.05;
    const std::vector<double> grid = uniform_grid(kGrid);
    double overall = 0.0;
    double worst_growth = 0.0;
    for (const double kv : kValues) {
        double running = 0.0;
        double at8 = 0.0;
        for (int n = 0; n <= kMaxN; ++n) {
            running = std::max(running, envelope(n, Multiplicity(kv), grid));
            if (n == 8) {
                at8 = running;
            }
        }
        overall = std::max(overall, running);
        worst_growth = std::max(worst_growth, running / at8);
    }
    return {overall <= kBound && worst_growth <= kGrowth,
            "max " + fmt(overall) + ", running max growth after n=8 " + fmt(worst_growth)};
}

std::string capture_process(const std::string& command) {
    std::string text;
    FILE* pipe = popen(command.c_str(), "r");
    if (pipe == nullptr) {
        return "<popen failed>";
    }
    char buf[4096];
    std::size_t got;
    while ((got = std::fread(buf, 1, sizeof buf, pipe)) > 0) {
        text.append(buf, got);
    }
    const int status = pclose(pipe);
    return status == 0 ? text : "<exit " + std::to_string(status) + ">";
}

// 9. Identical configurations give byte-identical output, in process and as separate processes.
Outcome determinism() {
    const std::vector<std::vector<std::string>> configs{
        {"gram", "--k", "1", "--N", "6"},
        {"eig", "--k", "2.5", "--N", "10"},
        {"kernel-check", "--k", "0.5", "--N", "16", "--seed", "11"},
        {"converge", "--k", "1", "--p", "1.6,2,2.8", "--f", "expcos", "--N", "4,8"},
        {"counterexample", "--k", "1", "--p", "1.45", "--n", "10..40:10"},
        {"converge", "--k", "1", "--p", "2", "--f", "abssin", "--N", "3", "--json"},
    };
    bool ok = true;
    std::string detail;
    for (const auto& cfg : configs) {
        std::ostringstream a;
        std::ostringstream b;
        std::ostringstream err;
        const int sa = cli::run(cfg, a, err);
        const int sb = cli::run(cfg, b, err);
        std::string command = HOFOURIER_CLI_PATH;
        for (const auto& arg : cfg) {
            command += " " + arg;
        }
        const std::string p1 = capture_process(command);
        const std::string p2 = capture_process(command);
        const bool same = sa == 0 && sb == 0 && a.str() == b.str() && p1 == p2 && p1 == a.str();
        if (!same) {
            ok = false;
            detail += cfg[0] + " differs; ";
        }
    }
    return {ok, ok ? std::to_string(configs.size()) + " configurations byte-identical" : detail};
}

struct Criterion {
    const char* name;
    std::function<Outcome()> run;
};

const Criterion kCriteria[] = {
    {"orthogonality and norms", orthogonality},
    {"eigen identities", eigen_identities},
    {"shift, reflection, triangularity", structure},
    {"kernel identity", kernel_identity},
    {"projection", projection},
    {"in-window convergence", in_window_convergence},
    {"counterexample dichotomy", counterexample},
    {"envelope boundedness", envelope_bound},
    {"determinism", determinism},
};

bool run_one(int index) {
    const Criterion& c = kCriteria[index - 1];
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
        o = c.run();
    } catch (const std::exception& e) {
        o = {false, std::string("threw: ") + e.what()};
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::string timing = fmt(seconds) + " s";
    if (o.limit_seconds > 0.0) {
        timing += " (limit " + fmt(o.limit_seconds) + " s)";
        if (seconds >= o.limit_seconds) {
            o.pass = false;
        }
    }
    std::cout << (o.pass ? "PASS" : "FAIL") << " " << index << " " << c.name << ": " << o.detail << " [" << timing
              << "]" << std::endl;
    return o.pass;
}

}  // namespace

int main(int argc, char** argv) {
    constexpr int kCount = static_cast<int>(std::size(kCriteria));
    std::vector<int> which;
    for (int i = 1; i < argc; ++i) {
        const int n = std::atoi(argv[i]);
        if (n < 1 || n > kCount) {
            std::cerr << "usage: acceptance [1.." << kCount << "]...\n";
            return 64;
        }
        which.push_back(n);
    }
    if (which.empty()) {
        for (int n = 1; n <= kCount; ++n) {
            which.push_back(n);
        }
    }
    bool all = true;
    for (const int n : which) {
        all = run_one(n) && all;
    }
    return all ? 0 : 1;
}
