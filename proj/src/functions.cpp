#include "hofourier/functions.hpp"

#include <charconv>
#include <cmath>

#include "hofourier/errors.hpp"
#include "hofourier/specfun.hpp"

namespace hofourier {

bool TestFunction::in_lp(double p, Multiplicity k) const {
    if (origin_singularity == 0.0) {
        return true;
    }
    return 2.0 * k.value() - p * origin_singularity > -1.0;
}

namespace {

int parse_int(const std::string& s) {
    int v = 0;
    const char* first = s.data();
    const char* last = s.data() + s.size();
    if (*first == '+') {
        ++first;
    }
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last || first == last) {
        throw ParameterError("basis index is not an integer: '" + s + "'");
    }
    return v;
}

}  // namespace

TestFunction parse_function(const std::string& id, Multiplicity k) {
    TestFunction f;
    f.id = id;
    if (id == "expcos") {
        f.eval = [](double x) { return std::complex<double>(std::exp(std::cos(x)), 0.0); };
        f.eval_quad = [](const Quad& x) { return std::complex<Quad>(exp(cos(x)), Quad(0)); };
        return f;
    }
    if (id == "abssin") {
        f.eval = [](double x) { return std::complex<double>(std::abs(std::sin(x)), 0.0); };
        f.eval_quad = [](const Quad& x) { return std::complex<Quad>(fabs(sin(x)), Quad(0)); };
        return f;
    }
    if (id == "counterexample") {
        const double e = -(k.value() + 1.0) / 2.0;
        f.origin_singularity = k.value() + 1.0;
        f.cosine_power = true;
        // 1 - cos x = 2 sin^2(x/2), without the cancellation near 0
        f.eval = [e](double x) {
            const double s = std::sin(x / 2.0);
            return std::complex<double>(std::pow(2.0 * s * s, e), 0.0);
        };
        f.eval_quad = [e](const Quad& x) {
            const Quad s = sin(x / 2);
            return std::complex<Quad>(pow(2 * s * s, Quad(e)), Quad(0));
        };
        return f;
    }
    const std::string prefix = "basis:";
    if (id.rfind(prefix, 0) == 0) {
        const int m = parse_int(id.substr(prefix.size()));
        f.real_valued = m == 0;
        const double kv = k.value();
        f.eval = [m, kv](double x) { return e_eval<double>(m, kv, x); };
        f.eval_quad = [m, kv](const Quad& x) { return e_eval<Quad>(m, Quad(kv), x); };
        return f;
    }
    throw ParameterError("unknown function '" + id + "' (expected expcos, abssin, basis:<m>, counterexample)");
}

}  // namespace hofourier
