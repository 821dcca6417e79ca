#pragma once

// Exact algebra on exponential polynomials f(x) = sum_j c_j e^{jx}.
//
// This is the native representation of the non-symmetric Heckman-Opdam
// polynomials E_n^k. Everything here works on coefficients only: the Cherednik
// operator acts on monomials by a finite geometric sum, and inner products
// against |sin x|^{2k} dx reduce to closed-form Fourier moments of the weight.
// The Gram-Schmidt construction in this header is the reference that the fast
// evaluators in specfun.hpp are tested against.

#include <complex>
#include <map>
#include <optional>
#include <vector>

namespace hofourier {

/// The multiplicity parameter k >= 0. k == 0 is the classical Fourier case.
class Multiplicity {
public:
    explicit Multiplicity(double k);

    double value() const noexcept { return k_; }
    bool classical() const noexcept { return k_ == 0.0; }

private:
    double k_;
};

/// Eigenvalue n_k of the Cherednik operator on E_n: n + k for n > 0, n - k for n <= 0.
double spectral_eigenvalue(int n, Multiplicity k) noexcept;

struct SpectralIndex {
    int n;
    double eigenvalue;

    SpectralIndex(int n_, Multiplicity k) : n(n_), eigenvalue(spectral_eigenvalue(n_, k)) {}
};

class ExpPoly {
public:
    using Coeff = std::complex<double>;
    using Terms = std::map<int, Coeff>;

    ExpPoly() = default;

    static ExpPoly monomial(int frequency, Coeff c = 1.0);
    static ExpPoly constant(Coeff c) { return monomial(0, c); }

    /// Coefficient of e^{jx}; zero if absent.
    Coeff coeff(int frequency) const;
    /// Adds c to the coefficient of e^{jx}; exact zeros are erased.
    void add_term(int frequency, Coeff c);

    const Terms& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }
    std::size_t size() const noexcept { return terms_.size(); }
    int min_frequency() const;
    int max_frequency() const;

    /// f(x) = sum c_j e^{jx} at real x.
    Coeff eval(double x) const;
    /// f(ix) = sum c_j e^{ijx}.
    Coeff eval_imag(double x) const;

    /// x -> -x, i.e. c_j moves to frequency -j.
    ExpPoly reflected() const;
    /// Multiplication by e^{sx}.
    ExpPoly shifted(int s) const;

    /// l2 norm of the coefficient vector.
    double coeff_norm() const;

    ExpPoly& operator+=(const ExpPoly& o);
    ExpPoly& operator-=(const ExpPoly& o);
    ExpPoly& operator*=(Coeff s);

    friend ExpPoly operator+(ExpPoly a, const ExpPoly& b) { return a += b; }
    friend ExpPoly operator-(ExpPoly a, const ExpPoly& b) { return a -= b; }
    friend ExpPoly operator*(ExpPoly a, ExpPoly::Coeff s) { return a *= s; }
    friend ExpPoly operator*(ExpPoly::Coeff s, ExpPoly a) { return a *= s; }
    friend ExpPoly operator-(ExpPoly a) { return a *= -1.0; }

    /// Exact coefficient-wise equality.
    friend bool operator==(const ExpPoly& a, const ExpPoly& b) { return a.terms_ == b.terms_; }

private:
    Terms terms_;
};

/// ||a - b|| / max(||a||, ||b||) in the coefficient l2 norm; 0 when both vanish.
double relative_residual(const ExpPoly& a, const ExpPoly& b);

/// Coefficient-wise equality up to `tol` scaled by the larger operand norm.
bool approx_equal(const ExpPoly& a, const ExpPoly& b, double tol = 1e-12);

/// The partial order j <| n: |j| < |n| with |n| - |j| even and positive,
/// or |j| == |n| with n < j.
bool precedes(int j, int n) noexcept;

/// Position of n in the enumeration 0, 1, -1, 2, -2, ... (a linear extension of <|).
int enumeration_position(int n) noexcept;
/// Inverse of enumeration_position.
int enumeration_frequency(int position) noexcept;

/// T^k f = f' + 2k (f(x) - f(-x)) / (1 - e^{-2x}) - k f, exactly on coefficients.
ExpPoly cherednik_apply(const ExpPoly& f, Multiplicity k);

/// int_{-pi}^{pi} e^{imx} |sin x|^{2k} dx.
double weight_fourier_moment(int m, Multiplicity k);

/// The moments mu_{2r} for r = 0..r_max, sharing one recurrence.
std::vector<double> weight_fourier_moments_even(int r_max, Multiplicity k);

/// (f, g)_k = int f(ix) conj(g(ix)) |sin x|^{2k} dx, from the weight moments.
std::complex<double> inner_product(const ExpPoly& f, const ExpPoly& g, Multiplicity k);

inline constexpr int kDefaultDegreeCap = 128;

/// E_n^k for all |n| <= max_degree, built by Gram-Schmidt in the order
/// 0, 1, -1, 2, -2, ... with one re-orthogonalization pass.
class GramSchmidtBasis {
public:
    GramSchmidtBasis(Multiplicity k, int max_degree, int degree_cap = kDefaultDegreeCap);

    Multiplicity multiplicity() const noexcept { return k_; }
    int max_degree() const noexcept { return max_degree_; }

    const ExpPoly& E(int n) const;
    /// (E_n, E_n)_k as computed from the exact moments.
    double norm_sq(int n) const;

    std::complex<double> inner_product(const ExpPoly& f, const ExpPoly& g) const;

private:
    Multiplicity k_;
    int max_degree_;
    std::vector<double> moments_;  // mu_{2r}
    std::vector<ExpPoly> polys_;   // by enumeration position
    std::vector<double> norms_sq_;
};

/// Throws ResourceLimitError if |n| exceeds degree_cap.
ExpPoly build_E_gram_schmidt(int n, Multiplicity k, int degree_cap = kDefaultDegreeCap);

/// Coefficient-level residuals (relative to the larger operand) of the
/// structural identities at index n.
struct IdentityReport {
    int n;
    double k;
    double eigenvalue;                         ///< n_k
    double shift_residual;                     ///< E_{n+1}(x) vs e^x E_{-n}(-x)
    std::optional<double> reflection_residual; ///< E_{-n} vs E_n(-x) + k/(n+k) E_n, n >= 1
    double eigen_residual;                     ///< T E_n vs n_k E_n
    double symmetric_eigen_residual;           ///< T^2 P_n vs (|n|+k)^2 P_n

    double max_residual() const;
};

IdentityReport identity_checks(int n, Multiplicity k);
/// Same, reusing an existing basis (needs max_degree >= |n| + 1).
IdentityReport identity_checks(const GramSchmidtBasis& basis, int n);

}  // namespace hofourier
