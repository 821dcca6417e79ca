#include "hofourier/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>
#include <variant>

#include "hofourier/errors.hpp"
#include "hofourier/exppoly.hpp"
#include "hofourier/fourier.hpp"
#include "hofourier/functions.hpp"
#include "hofourier/specfun.hpp"

namespace hofourier::cli {

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t");
    const auto e = s.find_last_not_of(" \t");
    return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
}

int to_int(const std::string& s) {
    const std::string t = trim(s);
    int v = 0;
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (t.empty() || ec != std::errc() || ptr != t.data() + t.size()) {
        throw ParameterError("not an integer: '" + s + "'");
    }
    return v;
}

double to_real(const std::string& s) {
    const std::string t = trim(s);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (t.empty() || ec != std::errc() || ptr != t.data() + t.size() || !std::isfinite(v)) {
        throw ParameterError("not a finite real: '" + s + "'");
    }
    return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, sep)) {
        parts.push_back(cur);
    }
    if (!s.empty() && s.back() == sep) {
        parts.emplace_back();
    }
    return parts;
}

}  // namespace

std::vector<int> parse_int_list(const std::string& spec) {
    std::vector<int> out;
    for (const std::string& item : split(spec, ',')) {
        const auto dots = item.find("..");
        if (dots == std::string::npos) {
            out.push_back(to_int(item));
            continue;
        }
        const int lo = to_int(item.substr(0, dots));
        std::string rest = item.substr(dots + 2);
        int step = 1;
        if (const auto colon = rest.find(':'); colon != std::string::npos) {
            step = to_int(rest.substr(colon + 1));
            rest = rest.substr(0, colon);
        }
        const int hi = to_int(rest);
        if (step <= 0 || hi < lo) {
            throw ParameterError("bad range '" + item + "'");
        }
        if ((static_cast<long long>(hi) - lo) / step > 100000) {
            throw ParameterError("range '" + item + "' is too long");
        }
        for (long long v = lo; v <= hi; v += step) {
            out.push_back(static_cast<int>(v));
        }
    }
    if (out.empty()) {
        throw ParameterError("empty list");
    }
    return out;
}

std::vector<double> parse_real_list(const std::string& spec) {
    std::vector<double> out;
    for (const std::string& item : split(spec, ',')) {
        out.push_back(to_real(item));
    }
    if (out.empty()) {
        throw ParameterError("empty list");
    }
    return out;
}

namespace {

struct NA {};
using Cell = std::variant<long long, double, std::string, NA>;

struct Table {
    std::vector<std::string> comments;  // before the header
    std::vector<std::string> header;
    std::vector<std::vector<Cell>> rows;
    std::vector<std::string> trailer;   // after the rows
};

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) {
        return s;
    }
    std::string q = "\"";
    for (const char c : s) {
        q += c;
        if (c == '"') {
            q += '"';
        }
    }
    return q + "\"";
}

std::string render_csv(const Table& t) {
    std::string s;
    for (const auto& c : t.comments) {
        s += "# " + c + "\n";
    }
    for (std::size_t i = 0; i < t.header.size(); ++i) {
        s += (i ? "," : "") + t.header[i];
    }
    s += "\n";
    for (const auto& row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) {
                s += ",";
            }
            std::visit(
                [&s](const auto& v) {
                    using V = std::decay_t<decltype(v)>;
                    if constexpr (std::is_same_v<V, long long>) {
                        s += std::to_string(v);
                    } else if constexpr (std::is_same_v<V, double>) {
                        s += format_double(v);
                    } else if constexpr (std::is_same_v<V, std::string>) {
                        s += csv_field(v);
                    } else {
                        s += "NA";
                    }
                },
                row[i]);
        }
        s += "\n";
    }
    for (const auto& c : t.trailer) {
        s += "# " + c + "\n";
    }
    return s;
}

std::string render_json(const Table& t) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& row : t.rows) {
        nlohmann::ordered_json rec = nlohmann::ordered_json::object();
        for (std::size_t i = 0; i < row.size(); ++i) {
            std::visit(
                [&](const auto& v) {
                    using V = std::decay_t<decltype(v)>;
                    if constexpr (std::is_same_v<V, NA>) {
                        rec[t.header[i]] = nullptr;
                    } else {
                        rec[t.header[i]] = v;
                    }
                },
                row[i]);
        }
        arr.push_back(std::move(rec));
    }
    return arr.dump(2) + "\n";
}

struct RunConfig {
    double k = 0.0;
    std::string N;
    std::string n;
    std::string p;
    int M = 0;
    int grid = 100;
    std::uint64_t seed = 0;
    std::string f;
    std::string out;
    bool json = false;
};

int single_N(const RunConfig& c) {
    const std::vector<int> Ns = parse_int_list(c.N);
    if (Ns.size() != 1) {
        throw ParameterError("--N must be a single integer for this subcommand");
    }
    if (Ns[0] < 0) {
        throw ParameterError("--N must be >= 0");
    }
    return Ns[0];
}

void config_comments(Table& t, const std::string& cmd, const RunConfig& c) {
    t.comments.push_back("hofourier " + cmd);
    t.comments.push_back("k=" + format_double(c.k));
}

Table cmd_gram(const RunConfig& c) {
    const Multiplicity k(c.k);
    const int N = single_N(c);
    const GramSchmidtBasis basis(k, N);
    Table t;
    config_comments(t, "gram", c);
    t.comments.push_back("N=" + std::to_string(N));
    t.header = {"n", "m", "re", "im"};
    for (int n = -N; n <= N; ++n) {
        for (int m = -N; m <= N; ++m) {
            const std::complex<double> g =
                gamma_n(n, k) * gamma_n(m, k) * basis.inner_product(basis.E(n), basis.E(m));
            t.rows.push_back({static_cast<long long>(n), static_cast<long long>(m), g.real(), g.imag()});
        }
    }
    return t;
}

Table cmd_eig(const RunConfig& c) {
    const Multiplicity k(c.k);
    const int N = single_N(c);
    const GramSchmidtBasis basis(k, N + 1);
    Table t;
    config_comments(t, "eig", c);
    t.comments.push_back("N=" + std::to_string(N));
    t.header = {"n", "eigenvalue", "residual"};
    double worst = 0.0;
    for (int n = -N; n <= N; ++n) {
        const IdentityReport r = identity_checks(basis, n);
        worst = std::max(worst, r.eigen_residual);
        t.rows.push_back({static_cast<long long>(n), r.eigenvalue, r.eigen_residual});
    }
    t.trailer.push_back("max_residual=" + format_double(worst));
    return t;
}

Table cmd_kernel_check(const RunConfig& c) {
    const Multiplicity k(c.k);
    const int N = single_N(c);
    if (c.grid < 1) {
        throw ParameterError("--grid must be >= 1");
    }
    std::mt19937_64 rng(c.seed);
    // 53 random bits -> [0, 1); independent of the standard library's distributions
    auto unit = [&rng]() { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
    const double pi = std::numbers::pi;
    Table t;
    config_comments(t, "kernel-check", c);
    t.comments.push_back("N=" + std::to_string(N));
    t.comments.push_back("queries=" + std::to_string(c.grid) + " seed=" + std::to_string(c.seed));
    t.header = {"x", "y", "direct", "closed", "absdiff"};
    double worst = 0.0;
    double worst_dirichlet = 0.0;
    for (int i = 0; i < c.grid; ++i) {
        const double x = -pi + 2.0 * pi * unit();
        // every tenth query sits on the diagonal
        const double y = i % 10 == 0 ? x : -pi + 2.0 * pi * unit();
        const KernelQuery q{x, y, N, k};
        const double direct = kernel_direct(q);
        const double closed = kernel_closed(q);
        const double diff = std::abs(direct - closed);
        worst = std::max(worst, diff);
        if (k.classical()) {
            worst_dirichlet = std::max(worst_dirichlet, std::abs(closed - dirichlet_kernel(N, x - y)));
        }
        t.rows.push_back({x, y, direct, closed, diff});
    }
    t.trailer.push_back("max_absdiff=" + format_double(worst));
    if (k.classical()) {
        t.trailer.push_back("max_dirichlet_absdiff=" + format_double(worst_dirichlet));
    }
    return t;
}

Table cmd_converge(const RunConfig& c, bool& all_failed) {
    const Multiplicity k(c.k);
    const TestFunction f = parse_function(c.f, k);
    const std::vector<int> Ns = parse_int_list(c.N);
    const std::vector<double> ps = parse_real_list(c.p);
    ExperimentOptions opts;
    opts.M = c.M;
    if (c.M > 0) {
        for (const int N : Ns) {
            if (2 * c.M - 1 < 2 * N + 2) {
                throw ParameterError("--M " + std::to_string(c.M) + " is below N + 2 for N = " + std::to_string(N));
            }
        }
    }
    const ConvergenceReport r = converge_experiment(f, k, ps, Ns, opts);
    Table t;
    config_comments(t, "converge", c);
    for (const auto& [key, value] : r.metadata) {
        if (key != "k") {
            t.comments.push_back(key + "=" + value);
        }
    }
    t.header = {"N", "p", "k", "error"};
    for (const ConvergenceRow& row : r.rows) {
        t.rows.push_back({static_cast<long long>(row.N), row.p, row.k,
                          row.error ? Cell(*row.error) : Cell(NA{})});
        if (!row.error) {
            t.trailer.push_back("N=" + std::to_string(row.N) + " p=" + format_double(row.p) + ": " + row.note);
        }
    }
    all_failed = r.all_failed();
    return t;
}

Table cmd_counterexample(const RunConfig& c) {
    const Multiplicity k(c.k);
    const std::vector<double> ps = parse_real_list(c.p);
    if (ps.size() != 1) {
        throw ParameterError("--p must be a single value for counterexample");
    }
    const std::vector<int> ns = parse_int_list(c.n.empty() ? c.N : c.n);
    ExperimentOptions opts;
    opts.M = c.M;
    const CounterexampleReport r = counterexample_experiment(k, ps[0], ns, opts);
    Table t;
    config_comments(t, "counterexample", c);
    for (const auto& [key, value] : r.metadata) {
        if (key != "k") {
            t.comments.push_back(key + "=" + value);
        }
    }
    t.header = {"n", "b_n"};
    for (const CounterexampleRow& row : r.rows) {
        t.rows.push_back({static_cast<long long>(row.n), row.b_n});
    }
    return t;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Fourier analysis in the non-symmetric Heckman-Opdam basis", "hofourier"};
    app.require_subcommand(1);
    RunConfig c;

    auto common = [&c](CLI::App* sub) {
        sub->add_option("--k", c.k, "multiplicity k >= 0")->required();
        sub->add_option("--out", c.out, "write output to this file instead of stdout");
        sub->add_flag("--json", c.json, "emit rows as a JSON array of records");
    };

    CLI::App* gram = app.add_subcommand("gram", "normalized Gram matrix of E_n, |n|,|m| <= N");
    common(gram);
    gram->add_option("--N", c.N, "truncation")->required();

    CLI::App* eig = app.add_subcommand("eig", "Cherednik eigenvalues and residuals for |n| <= N");
    common(eig);
    eig->add_option("--N", c.N, "truncation")->required();

    CLI::App* kc = app.add_subcommand("kernel-check", "direct vs closed-form kernel on random queries");
    common(kc);
    kc->add_option("--N", c.N, "truncation")->required();
    kc->add_option("--grid", c.grid, "number of random queries")->capture_default_str();
    kc->add_option("--seed", c.seed, "random seed")->capture_default_str();

    CLI::App* cv = app.add_subcommand("converge", "||S_N f - f||_{p,k} sweep");
    common(cv);
    cv->add_option("--N", c.N, "truncations: list or range, e.g. 4,8,16 or 4..32:4")->required();
    cv->add_option("--p", c.p, "exponents, comma-separated")->required();
    cv->add_option("--f", c.f, "expcos | abssin | basis:<m> | counterexample")->required();
    cv->add_option("--M", c.M, "node count per half period (default max(64, 2N+16))");

    CLI::App* ce = app.add_subcommand("counterexample", "b_n sweep for (1 - cos x)^{-(k+1)/2}");
    common(ce);
    auto* n_opt = ce->add_option("--n", c.n, "indices: list or range, e.g. 10..200");
    auto* N_opt = ce->add_option("--N", c.N, "alias of --n");
    n_opt->excludes(N_opt);
    ce->add_option("--p", c.p, "exponent")->required();
    ce->add_option("--M", c.M, "node count for the coefficient integrals (default max(64, 2n+16))");

    std::vector<std::string> argv_store{"hofourier"};
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (std::string& s : argv_store) {
        argv.push_back(s.data());
    }
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsage;
    }

    Table table;
    int status = kOk;
    try {
        if (c.M < 0) {
            throw ParameterError("--M must be >= 1");
        }
        if (*gram) {
            table = cmd_gram(c);
        } else if (*eig) {
            table = cmd_eig(c);
        } else if (*kc) {
            table = cmd_kernel_check(c);
        } else if (*cv) {
            bool all_failed = false;
            table = cmd_converge(c, all_failed);
            if (all_failed) {
                status = kNumeric;
            }
        } else {
            if (c.n.empty() && c.N.empty()) {
                throw ParameterError("counterexample needs --n");
            }
            table = cmd_counterexample(c);
        }
    } catch (const ParameterError& e) {
        err << "hofourier: " << e.what() << "\n";
        return kUsage;
    } catch (const ResourceLimitError& e) {
        err << "hofourier: " << e.what() << "\n";
        return kUsage;
    } catch (const ConvergenceError& e) {
        err << "hofourier: " << e.what() << " (last estimates " << format_double(e.previous_estimate()) << ", "
            << format_double(e.last_estimate()) << ")\n";
        return kNumeric;
    } catch (const IntegrabilityError& e) {
        err << "hofourier: " << e.what() << "\n";
        return kNumeric;
    } catch (const EvaluationError& e) {
        err << "hofourier: " << e.what() << "\n";
        return kNumeric;
    } catch (const ContractError& e) {
        err << "hofourier: " << e.what() << "\n";
        return kNumeric;
    }

    const std::string text = c.json ? render_json(table) : render_csv(table);
    if (c.out.empty()) {
        out << text;
        out.flush();
        if (!out) {
            err << "hofourier: write to stdout failed\n";
            return kIoError;
        }
    } else {
        std::ofstream file(c.out, std::ios::binary | std::ios::trunc);
        if (!file) {
            err << "hofourier: cannot open '" << c.out << "' for writing\n";
            return kIoError;
        }
        file << text;
        file.close();
        if (!file) {
            err << "hofourier: write to '" << c.out << "' failed\n";
            return kIoError;
        }
    }
    if (status == kNumeric) {
        err << "hofourier: every row failed\n";
    }
    return status;
}

}  // namespace hofourier::cli
