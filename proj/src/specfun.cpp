#include "hofourier/specfun.hpp"

#include <algorithm>
#include <numbers>

namespace hofourier {

double gegenbauer(int n, double lambda, double t) {
    return gegenbauer<double>(n, lambda, t);
}

double p_eval(int n, Multiplicity k, double x) {
    return p_eval<double>(n, k.value(), x);
}

double p_eval_real(int n, Multiplicity k, double x) {
    return p_eval_real<double>(n, k.value(), x);
}

std::complex<double> e_eval(int n, Multiplicity k, double x) {
    return e_eval<double>(n, k.value(), x);
}

double e_eval_real(int n, Multiplicity k, double x) {
    return e_eval_real<double>(n, k.value(), x);
}

double norm_sq(int n, Multiplicity k) {
    return std::exp(log_norm_sq<double>(n, k.value()));
}

double gamma_n(int n, Multiplicity k) {
    return std::exp(-0.5 * log_norm_sq<double>(n, k.value()));
}

double envelope(int n, Multiplicity k, std::span<const double> grid) {
    if (grid.empty()) {
        throw ParameterError("envelope: grid must be nonempty");
    }
    const double g = gamma_n(n, k);
    double best = 0.0;
    for (const double x : grid) {
        const double w = std::pow(std::abs(std::sin(x)), k.value());
        best = std::max(best, g * w * std::abs(e_eval(n, k, x)));
    }
    return best;
}

std::vector<double> uniform_grid(int points) {
    if (points < 2) {
        throw ParameterError("uniform_grid: need at least 2 points");
    }
    std::vector<double> grid(static_cast<std::size_t>(points));
    const double step = 2.0 * std::numbers::pi / (points - 1);
    for (int i = 0; i < points; ++i) {
        grid[i] = -std::numbers::pi + i * step;
    }
    grid.back() = std::numbers::pi;
    return grid;
}

}  // namespace hofourier
