#include <doctest.h>

#include <cmath>
#include <numbers>

#include <boost/math/special_functions/gegenbauer.hpp>

#include "hofourier/errors.hpp"
#include "hofourier/exppoly.hpp"
#include "hofourier/specfun.hpp"

using namespace hofourier;
using std::numbers::pi;
using C = std::complex<double>;

namespace {

// C_n^lambda(t) = sum_j (-1)^j Gamma(n-j+lambda) / (Gamma(lambda) j! (n-2j)!) (2t)^{n-2j}
double gegenbauer_series(int n, double lambda, double t) {
    double s = 0.0;
    for (int j = 0; 2 * j <= n; ++j) {
        const double lg = std::lgamma(n - j + lambda) - std::lgamma(lambda) - std::lgamma(j + 1.0) -
                          std::lgamma(n - 2 * j + 1.0);
        s += (j % 2 ? -1.0 : 1.0) * std::exp(lg) * std::pow(2.0 * t, n - 2 * j);
    }
    return s;
}

double rel(C a, C b) {
    const double scale = std::max({std::abs(a), std::abs(b), 1e-300});
    return std::abs(a - b) / scale;
}

}  // namespace

TEST_CASE("gegenbauer examples and oracles") {
    CHECK(gegenbauer(0, 1.5, 0.7) == 1.0);
    CHECK(gegenbauer(1, 1.5, 0.5) == doctest::Approx(1.5).epsilon(1e-15));
    CHECK(gegenbauer(2, 1.0, 1.0) == doctest::Approx(3.0).epsilon(1e-15));
    CHECK_THROWS_AS(gegenbauer(3, 0.0, 0.2), ParameterError);
    CHECK_THROWS_AS(gegenbauer(3, -1.0, 0.2), ParameterError);
    CHECK_THROWS_AS(gegenbauer(-1, 1.0, 0.2), ParameterError);

    for (const double lambda : {0.5, 1.0, 1.5, 2.5, 3.5}) {
        for (int n = 0; n <= 20; ++n) {
            // value at 1: Gamma(n + 2 lambda) / (n! Gamma(2 lambda))
            const double at1 = std::exp(std::lgamma(n + 2 * lambda) - std::lgamma(n + 1.0) - std::lgamma(2 * lambda));
            CHECK(gegenbauer(n, lambda, 1.0) == doctest::Approx(at1).epsilon(1e-12));
            for (const double t : {-0.9, -0.3, 0.1, 0.77}) {
                CAPTURE(n);
                CAPTURE(lambda);
                CAPTURE(t);
                const double scale = at1;
                if (n <= 10) {
                    // the explicit sum cancels badly beyond this
                    CHECK(std::abs(gegenbauer(n, lambda, t) - gegenbauer_series(n, lambda, t)) <= 1e-11 * scale);
                }
                CHECK(std::abs(gegenbauer(n, lambda, t) - boost::math::gegenbauer(n, lambda, t)) <= 1e-12 * scale);
            }
        }
    }
}

TEST_CASE("p_eval examples") {
    CHECK(p_eval(1, Multiplicity(2.0), pi / 3) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(p_at_zero(2, 1.0) == doctest::Approx(1.5).epsilon(1e-14));
    CHECK(p_eval(2, Multiplicity(1.0), 0.0) == doctest::Approx(1.5).epsilon(1e-14));
    for (const double kv : {0.0, 0.5, 1.0, 2.5}) {
        for (const double x : {-2.0, 0.0, 0.4, 3.0}) {
            CHECK(p_eval(0, Multiplicity(kv), x) == 0.5);
        }
    }
    for (int n = 1; n <= 12; ++n) {
        CHECK(p_eval(n, Multiplicity(0.0), 0.7) == doctest::Approx(std::cos(n * 0.7)).epsilon(1e-14));
    }
    CHECK_THROWS_AS(p_eval(-1, Multiplicity(1.0), 0.1), ParameterError);
}

TEST_CASE("e_eval examples") {
    for (const double kv : {0.0, 0.5, 1.0, 2.5}) {
        CHECK(e_eval(0, Multiplicity(kv), 1.3) == C(1.0, 0.0));
        CHECK(rel(e_eval(1, Multiplicity(kv), 0.4), std::polar(1.0, 0.4)) < 1e-15);
    }
    CHECK(std::abs(e_eval(-1, Multiplicity(1.0), pi / 2) - C(0.0, -0.5)) < 1e-15);
}

TEST_CASE("real-argument variants") {
    // E_1(x) = e^x, E_{-1}(x) = e^{-x} + k/(1+k) e^x
    for (const double kv : {0.0, 0.5, 2.0}) {
        const Multiplicity k(kv);
        CHECK(e_eval_real(1, k, 0.3) == doctest::Approx(std::exp(0.3)).epsilon(1e-14));
        CHECK(e_eval_real(-1, k, 0.3) ==
              doctest::Approx(std::exp(-0.3) + kv / (1 + kv) * std::exp(0.3)).epsilon(1e-14));
        CHECK(p_eval_real(1, k, 0.3) == doctest::Approx(std::cosh(0.3)).epsilon(1e-14));
    }
    // against the Gram-Schmidt polynomial evaluated at real x
    const Multiplicity k(1.5);
    const GramSchmidtBasis basis(k, 6);
    for (int n = -6; n <= 6; ++n) {
        for (const double x : {-0.8, 0.25, 1.1}) {
            CHECK(rel(e_eval_real(n, k, x), basis.E(n).eval(x)) < 1e-12);
        }
    }
}

TEST_CASE("oracle equivalence with the Gram-Schmidt basis") {
    for (const double kv : {0.5, 1.0, 2.5}) {
        const Multiplicity k(kv);
        const GramSchmidtBasis basis(k, 16);
        for (int n = -16; n <= 16; ++n) {
            double worst = 0.0;
            double scale = 0.0;
            for (int i = 0; i < 64; ++i) {
                const double x = -pi + (i + 0.5) * 2.0 * pi / 64.0;
                const C fast = e_eval(n, k, x);
                const C ref = basis.E(n).eval_imag(x);
                worst = std::max(worst, std::abs(fast - ref));
                scale = std::max(scale, std::abs(ref));
            }
            CAPTURE(kv);
            CAPTURE(n);
            CHECK(worst <= 1e-9 * scale);
        }
    }
}

TEST_CASE("e_eval_all matches e_eval") {
    for (const double kv : {0.0, 0.5, 2.5}) {
        std::vector<C> all;
        e_eval_all(20, kv, 0.9, all);
        for (int n = -20; n <= 20; ++n) {
            CHECK(rel(all[n + 20], e_eval(n, Multiplicity(kv), 0.9)) < 1e-13);
        }
    }
}

TEST_CASE("derivative identity converges at second order") {
    // d/dx P_n(ix) = -2n sin x P_{n-1}^{k+1}(ix)
    for (const double kv : {0.5, 1.0, 2.5}) {
        const Multiplicity k(kv);
        const Multiplicity k1(kv + 1.0);
        for (const int n : {1, 3, 8}) {
            const double x = 0.7;
            const double exact = -2.0 * n * std::sin(x) * p_eval(n - 1, k1, x);
            double prev_err = 0.0;
            for (int level = 0; level < 4; ++level) {
                const double h = 1e-2 / std::pow(2.0, level);
                const double fd = (p_eval(n, k, x + h) - p_eval(n, k, x - h)) / (2.0 * h);
                const double err = std::abs(fd - exact);
                if (level > 0) {
                    CAPTURE(kv);
                    CAPTURE(n);
                    const double order = std::log2(prev_err / err);
                    CHECK(order == doctest::Approx(2.0).epsilon(0.05));
                }
                prev_err = err;
            }
        }
    }
}

TEST_CASE("symmetrization") {
    for (const double kv : {0.5, 1.0, 2.5}) {
        const Multiplicity k(kv);
        for (int n = 1; n <= 15; ++n) {
            for (const double x : {-2.9, -0.4, 0.3, 1.9}) {
                const double p = p_eval(n, k, x);
                CHECK(std::abs(p - e_eval(n, k, x).real()) <= 1e-14 * std::max(1.0, std::abs(p)));
                const C sym = (e_eval(n, k, x) + e_eval(n, k, -x)) / 2.0;
                CHECK(std::abs(sym - C(p, 0.0)) <= 1e-14 * std::max(1.0, std::abs(p)));
            }
        }
    }
}

TEST_CASE("norms") {
    CHECK(norm_sq(0, Multiplicity(1.0)) == doctest::Approx(pi).epsilon(1e-15));
    for (int n = -10; n <= 10; ++n) {
        CHECK(norm_sq(n, Multiplicity(0.0)) == doctest::Approx(2 * pi).epsilon(1e-14));
        CHECK(gamma_n(n, Multiplicity(0.0)) == doctest::Approx(1.0 / std::sqrt(2 * pi)).epsilon(1e-14));
    }
    CHECK(norm_sq(4, Multiplicity(0.5)) / norm_sq(3, Multiplicity(0.5)) ==
          doctest::Approx(12.0 / 12.25).epsilon(1e-14));

    for (const double kv : {0.5, 1.0, 2.5, 7.0}) {
        const NormTable<double> table(kv, 40);
        for (int n = 0; n < 40; ++n) {
            CHECK(table.norm_sq(n + 1) == doctest::Approx(table.norm_sq(-n)).epsilon(1e-15));
            CHECK(table.gamma(n) > 0.0);
            if (n >= 1) {
                const double ratio = n * (n + 2 * kv) / ((n + kv) * (n + kv));
                CHECK(std::abs(table.norm_sq(n + 1) / table.norm_sq(n) - ratio) <= 1e-12 * ratio);
            }
        }
        CHECK_THROWS_AS(table.norm_sq(41), ParameterError);
    }

    for (const double kv : {0.5, 1.0, 2.5}) {
        const Multiplicity k(kv);
        const GramSchmidtBasis basis(k, 20);
        for (int n = -20; n <= 20; ++n) {
            const double ip = inner_product(basis.E(n), basis.E(n), k).real();
            CHECK(std::abs(norm_sq(n, k) - ip) <= 1e-10 * ip);
        }
    }
}

TEST_CASE("classical reduction") {
    const Multiplicity k(0.0);
    for (int n = -64; n <= 64; ++n) {
        for (const double x : {-3.0, -0.5, 0.1, 2.2}) {
            CHECK(std::abs(e_eval(n, k, x) - std::polar(1.0, n * x)) < 1e-15);
        }
    }
}

TEST_CASE("envelope") {
    const std::vector<double> grid = uniform_grid(512);
    CHECK(grid.size() == 512);
    CHECK(grid.front() == -pi);
    CHECK(grid.back() == pi);
    CHECK_THROWS_AS(uniform_grid(1), ParameterError);
    CHECK_THROWS_AS(envelope(3, Multiplicity(1.0), std::span<const double>()), ParameterError);

    double expected = 0.0;
    for (const double x : grid) {
        expected = std::max(expected, std::abs(std::sin(x)) * gamma_n(0, Multiplicity(1.0)));
    }
    CHECK(envelope(0, Multiplicity(1.0), grid) == doctest::Approx(expected).epsilon(1e-15));
    for (const int n : {-5, 0, 3, 40}) {
        CHECK(envelope(n, Multiplicity(0.0), grid) == doctest::Approx(1.0 / std::sqrt(2 * pi)).epsilon(1e-14));
    }
    CHECK(envelope(16, Multiplicity(1.0), grid) <= 10.0);
}

TEST_CASE("binary128 instantiation agrees with double") {
    for (const double kv : {0.5, 2.5}) {
        for (const int n : {-9, -1, 0, 4, 17}) {
            const std::complex<Quad> q = e_eval<Quad>(n, Quad(kv), Quad(0.6));
            const C d = e_eval(n, Multiplicity(kv), 0.6);
            CHECK(std::abs(C(to_double(q.real()), to_double(q.imag())) - d) <= 1e-14 * std::abs(d));
            CHECK(to_double(log_norm_sq<Quad>(n, Quad(kv))) ==
                  doctest::Approx(log_norm_sq<double>(n, kv)).epsilon(1e-14));
        }
    }
}
