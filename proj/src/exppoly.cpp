#include "hofourier/exppoly.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <string>

#include "hofourier/errors.hpp"
#include "hofourier/real.hpp"

namespace hofourier {

Multiplicity::Multiplicity(double k) : k_(k) {
    if (!std::isfinite(k) || k < 0.0) {
        throw ParameterError("multiplicity k must be finite and >= 0, got " + std::to_string(k));
    }
}

double spectral_eigenvalue(int n, Multiplicity k) noexcept {
    return n > 0 ? n + k.value() : n - k.value();
}

// ---------------------------------------------------------------------------
// ExpPoly

ExpPoly ExpPoly::monomial(int frequency, Coeff c) {
    ExpPoly p;
    p.add_term(frequency, c);
    return p;
}

ExpPoly::Coeff ExpPoly::coeff(int frequency) const {
    const auto it = terms_.find(frequency);
    return it == terms_.end() ? Coeff{} : it->second;
}

void ExpPoly::add_term(int frequency, Coeff c) {
    if (c == Coeff{}) {
        return;
    }
    auto [it, inserted] = terms_.try_emplace(frequency, c);
    if (!inserted) {
        it->second += c;
        if (it->second == Coeff{}) {
            terms_.erase(it);
        }
    }
}

int ExpPoly::min_frequency() const {
    if (terms_.empty()) {
        throw ContractError("min_frequency of the zero polynomial");
    }
    return terms_.begin()->first;
}

int ExpPoly::max_frequency() const {
    if (terms_.empty()) {
        throw ContractError("max_frequency of the zero polynomial");
    }
    return terms_.rbegin()->first;
}

ExpPoly::Coeff ExpPoly::eval(double x) const {
    Coeff sum{};
    for (const auto& [j, c] : terms_) {
        sum += c * std::exp(j * x);
    }
    return sum;
}

ExpPoly::Coeff ExpPoly::eval_imag(double x) const {
    Coeff sum{};
    for (const auto& [j, c] : terms_) {
        sum += c * std::polar(1.0, j * x);
    }
    return sum;
}

ExpPoly ExpPoly::reflected() const {
    ExpPoly r;
    for (const auto& [j, c] : terms_) {
        r.terms_.emplace(-j, c);
    }
    return r;
}

ExpPoly ExpPoly::shifted(int s) const {
    ExpPoly r;
    for (const auto& [j, c] : terms_) {
        r.terms_.emplace(j + s, c);
    }
    return r;
}

double ExpPoly::coeff_norm() const {
    double sum = 0.0;
    for (const auto& [j, c] : terms_) {
        sum += std::norm(c);
    }
    return std::sqrt(sum);
}

ExpPoly& ExpPoly::operator+=(const ExpPoly& o) {
    for (const auto& [j, c] : o.terms_) {
        add_term(j, c);
    }
    return *this;
}

ExpPoly& ExpPoly::operator-=(const ExpPoly& o) {
    for (const auto& [j, c] : o.terms_) {
        add_term(j, -c);
    }
    return *this;
}

ExpPoly& ExpPoly::operator*=(Coeff s) {
    if (s == Coeff{}) {
        terms_.clear();
        return *this;
    }
    for (auto it = terms_.begin(); it != terms_.end();) {
        it->second *= s;
        it = (it->second == Coeff{}) ? terms_.erase(it) : std::next(it);
    }
    return *this;
}

double relative_residual(const ExpPoly& a, const ExpPoly& b) {
    const double scale = std::max(a.coeff_norm(), b.coeff_norm());
    if (scale == 0.0) {
        return 0.0;
    }
    return (a - b).coeff_norm() / scale;
}

bool approx_equal(const ExpPoly& a, const ExpPoly& b, double tol) {
    return relative_residual(a, b) <= tol;
}

// ---------------------------------------------------------------------------
// Partial order and enumeration

bool precedes(int j, int n) noexcept {
    const int aj = std::abs(j);
    const int an = std::abs(n);
    if (aj < an) {
        return (an - aj) % 2 == 0;
    }
    return aj == an && n < j;
}

int enumeration_position(int n) noexcept {
    return n > 0 ? 2 * n - 1 : -2 * n;
}

int enumeration_frequency(int position) noexcept {
    return position % 2 == 1 ? (position + 1) / 2 : -(position / 2);
}

// ---------------------------------------------------------------------------
// Cherednik operator

ExpPoly cherednik_apply(const ExpPoly& f, Multiplicity k) {
    const double kk = k.value();
    ExpPoly out;
    for (const auto& [j, c] : f.terms()) {
        // derivative and the -k f term
        out.add_term(j, c * (static_cast<double>(j) - kk));
        if (j == 0 || kk == 0.0) {
            continue;
        }
        // (e^{jx} - e^{-jx}) / (1 - e^{-2x}) = +-sum_{m=0}^{|j|-1} e^{(|j|-2m)x}
        const int aj = std::abs(j);
        const ExpPoly::Coeff scaled = c * (j > 0 ? 2.0 * kk : -2.0 * kk);
        for (int m = 0; m < aj; ++m) {
            out.add_term(aj - 2 * m, scaled);
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Weight moments and inner products

std::vector<double> weight_fourier_moments_even(int r_max, Multiplicity k) {
    const double kk = k.value();
    std::vector<double> mu(static_cast<std::size_t>(std::max(r_max, 0)) + 1, 0.0);
    // mu_0 = pi 2^{1-2k} Gamma(2k+1) / Gamma(k+1)^2
    mu[0] = std::exp(std::log(std::numbers::pi) + (1.0 - 2.0 * kk) * std::numbers::ln2 +
                     lgamma_pos(2.0 * kk + 1.0) - 2.0 * lgamma_pos(kk + 1.0));
    // mu_{2r} / mu_{2r-2} = (r - 1 - k) / (r + k); vanishes from r = k + 1 on for integer k.
    for (int r = 1; r <= r_max; ++r) {
        mu[r] = mu[r - 1] * ((r - 1.0 - kk) / (r + kk));
    }
    return mu;
}

double weight_fourier_moment(int m, Multiplicity k) {
    const int am = std::abs(m);
    if (am % 2 != 0) {
        return 0.0;
    }
    return weight_fourier_moments_even(am / 2, k).back();
}

namespace {

std::complex<double> inner_with_moments(const ExpPoly& f, const ExpPoly& g,
                                        const std::vector<double>& mu) {
    std::complex<double> sum{};
    for (const auto& [j, c] : f.terms()) {
        for (const auto& [m, d] : g.terms()) {
            const int diff = std::abs(j - m);
            if (diff % 2 != 0) {
                continue;
            }
            sum += c * std::conj(d) * mu.at(static_cast<std::size_t>(diff / 2));
        }
    }
    return sum;
}

int max_frequency_gap(const ExpPoly& f, const ExpPoly& g) {
    if (f.is_zero() || g.is_zero()) {
        return 0;
    }
    return std::max(std::abs(f.max_frequency() - g.min_frequency()),
                    std::abs(g.max_frequency() - f.min_frequency()));
}

}  // namespace

std::complex<double> inner_product(const ExpPoly& f, const ExpPoly& g, Multiplicity k) {
    const auto mu = weight_fourier_moments_even(max_frequency_gap(f, g) / 2, k);
    return inner_with_moments(f, g, mu);
}

// ---------------------------------------------------------------------------
// Gram-Schmidt basis

namespace {

// Dense real coefficient vector over frequencies -D..D, used for the
// extended-precision Gram-Schmidt pass.
struct DenseQuadPoly {
    int offset = 0;
    std::vector<Quad> c;
    std::vector<int> support;  // frequencies with nonzero coefficient

    Quad& at(int j) { return c[static_cast<std::size_t>(j + offset)]; }
    const Quad& at(int j) const { return c[static_cast<std::size_t>(j + offset)]; }
};

Quad dense_inner(const DenseQuadPoly& f, const DenseQuadPoly& g, const std::vector<Quad>& mu) {
    Quad sum = 0;
    for (const int j : f.support) {
        Quad row = 0;
        for (const int m : g.support) {
            const int diff = std::abs(j - m);
            if (diff % 2 == 0) {
                row += g.at(m) * mu[static_cast<std::size_t>(diff / 2)];
            }
        }
        sum += f.at(j) * row;
    }
    return sum;
}

std::vector<Quad> quad_moments_even(int r_max, double k) {
    const Quad kk = k;
    std::vector<Quad> mu(static_cast<std::size_t>(r_max) + 1, Quad(0));
    mu[0] = exp(log(pi_v<Quad>()) + (Quad(1) - 2 * kk) * log(Quad(2)) + lgamma_pos(2 * kk + 1) -
                2 * lgamma_pos(kk + 1));
    for (int r = 1; r <= r_max; ++r) {
        mu[r] = mu[r - 1] * ((Quad(r) - 1 - kk) / (Quad(r) + kk));
    }
    return mu;
}

}  // namespace

GramSchmidtBasis::GramSchmidtBasis(Multiplicity k, int max_degree, int degree_cap)
    : k_(k), max_degree_(max_degree) {
    if (max_degree < 0) {
        throw ParameterError("GramSchmidtBasis: max_degree must be >= 0");
    }
    if (max_degree > degree_cap) {
        throw ResourceLimitError("GramSchmidtBasis: degree " + std::to_string(max_degree) +
                                 " exceeds cap " + std::to_string(degree_cap));
    }
    moments_ = weight_fourier_moments_even(2 * max_degree, k);
    const auto mu = quad_moments_even(2 * max_degree, k.value());

    const int count = 2 * max_degree + 1;
    std::vector<DenseQuadPoly> dense;
    std::vector<Quad> dense_norms;
    dense.reserve(static_cast<std::size_t>(count));
    polys_.reserve(static_cast<std::size_t>(count));
    norms_sq_.reserve(static_cast<std::size_t>(count));
    std::vector<int> lower;
    for (int pos = 0; pos < count; ++pos) {
        const int n = enumeration_frequency(pos);
        lower.clear();
        for (int q = 0; q < pos; ++q) {
            if (precedes(enumeration_frequency(q), n)) {
                lower.push_back(q);
            }
        }
        DenseQuadPoly e;
        e.offset = max_degree;
        e.c.assign(static_cast<std::size_t>(2 * max_degree + 1), Quad(0));
        e.support.push_back(n);
        for (const int q : lower) {
            e.support.push_back(enumeration_frequency(q));
        }
        std::sort(e.support.begin(), e.support.end());
        e.at(n) = 1;
        // Projections only touch frequencies below n in <|, so the leading
        // coefficient stays exactly 1.
        for (int pass = 0; pass < 2; ++pass) {
            for (const int q : lower) {
                const DenseQuadPoly& prev = dense[static_cast<std::size_t>(q)];
                const Quad c = dense_inner(e, prev, mu) / dense_norms[static_cast<std::size_t>(q)];
                for (const int j : prev.support) {
                    e.at(j) -= c * prev.at(j);
                }
            }
        }
        const Quad nsq = dense_inner(e, e, mu);
        ExpPoly rounded;
        for (const int j : e.support) {
            rounded.add_term(j, to_double(e.at(j)));
        }
        dense_norms.push_back(nsq);
        dense.push_back(std::move(e));
        norms_sq_.push_back(to_double(nsq));
        polys_.push_back(std::move(rounded));
    }
}

const ExpPoly& GramSchmidtBasis::E(int n) const {
    if (std::abs(n) > max_degree_) {
        throw ParameterError("GramSchmidtBasis::E: |n| = " + std::to_string(std::abs(n)) +
                             " exceeds max degree " + std::to_string(max_degree_));
    }
    return polys_[static_cast<std::size_t>(enumeration_position(n))];
}

double GramSchmidtBasis::norm_sq(int n) const {
    (void)E(n);
    return norms_sq_[static_cast<std::size_t>(enumeration_position(n))];
}

std::complex<double> GramSchmidtBasis::inner_product(const ExpPoly& f, const ExpPoly& g) const {
    if (max_frequency_gap(f, g) / 2 < static_cast<int>(moments_.size())) {
        return inner_with_moments(f, g, moments_);
    }
    return hofourier::inner_product(f, g, k_);
}

ExpPoly build_E_gram_schmidt(int n, Multiplicity k, int degree_cap) {
    if (std::abs(n) > degree_cap) {
        throw ResourceLimitError("build_E_gram_schmidt: |n| = " + std::to_string(std::abs(n)) +
                                 " exceeds degree cap " + std::to_string(degree_cap));
    }
    return GramSchmidtBasis(k, std::abs(n), degree_cap).E(n);
}

// ---------------------------------------------------------------------------
// Identity checks

double IdentityReport::max_residual() const {
    double m = std::max({shift_residual, eigen_residual, symmetric_eigen_residual});
    if (reflection_residual) {
        m = std::max(m, *reflection_residual);
    }
    return m;
}

IdentityReport identity_checks(const GramSchmidtBasis& basis, int n) {
    const Multiplicity k = basis.multiplicity();
    const double kk = k.value();
    const ExpPoly& en = basis.E(n);

    IdentityReport rep{};
    rep.n = n;
    rep.k = kk;
    rep.eigenvalue = spectral_eigenvalue(n, k);

    rep.shift_residual = relative_residual(basis.E(n + 1), basis.E(-n).reflected().shifted(1));

    if (n >= 1) {
        rep.reflection_residual =
            relative_residual(basis.E(-n), en.reflected() + en * (kk / (n + kk)));
    }

    rep.eigen_residual = relative_residual(cherednik_apply(en, k), en * rep.eigenvalue);

    const ExpPoly sym = (en + en.reflected()) * 0.5;
    const double shifted = std::abs(n) + kk;
    rep.symmetric_eigen_residual =
        relative_residual(cherednik_apply(cherednik_apply(sym, k), k), sym * (shifted * shifted));
    return rep;
}

IdentityReport identity_checks(int n, Multiplicity k) {
    return identity_checks(GramSchmidtBasis(k, std::abs(n) + 1), n);
}

}  // namespace hofourier
