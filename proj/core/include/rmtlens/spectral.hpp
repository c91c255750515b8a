#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "rmtlens/polyroots.hpp"

namespace rmtlens {

using cplx = std::complex<double>;

/// Matrix-model potential V(x) = sum_{i=1}^{2p} t_i x^i.
/// `coefficients()[i-1]` holds t_i; there is no constant term.
class Potential {
 public:
  explicit Potential(std::vector<double> coefficients);

  int degree() const noexcept { return static_cast<int>(t_.size()); }
  const std::vector<double>& coefficients() const noexcept { return t_; }

  double value(double x) const noexcept;
  cplx value(cplx z) const noexcept;
  double derivative(double x) const noexcept;
  cplx derivative(cplx z) const noexcept;
  cplx second_derivative(cplx z) const noexcept;

  /// V'(z) as a polynomial, ascending coefficients.
  const poly::PolyCoeffs& derivative_poly() const noexcept { return dv_; }

 private:
  std::vector<double> t_;
  poly::PolyCoeffs dv_;
  poly::PolyCoeffs d2v_;
};

struct Interval {
  double lo;
  double hi;

  double length() const noexcept { return hi - lo; }
  double center() const noexcept { return 0.5 * (lo + hi); }
  bool contains(double x, double tol = 0.0) const noexcept { return x >= lo - tol && x <= hi + tol; }
};

/// Support of the eigenvalue density: ordered, disjoint closed intervals.
class SupportCuts {
 public:
  explicit SupportCuts(std::vector<Interval> intervals);

  const std::vector<Interval>& intervals() const noexcept { return cuts_; }
  std::size_t size() const noexcept { return cuts_.size(); }

  bool contains(double x, double tol = 0.0) const noexcept;
  /// Euclidean distance from z to the union of cuts.
  double distance(cplx z) const noexcept;
  /// Closest point of the union of cuts to z.
  double project(cplx z) const noexcept;
  double max_abs_endpoint() const noexcept;

 private:
  std::vector<Interval> cuts_;
};

struct SpectralFactor {
  cplx root;
  int multiplicity;
};

/// P(z) = leading * prod (z - r_k)^{m_k}, kept in factored form so that the
/// square root can be assembled factor by factor.
class SpectralPolynomial {
 public:
  SpectralPolynomial(double leading, std::vector<SpectralFactor> factors);

  /// Builds the factored form from real ascending coefficients by root
  /// clustering; used for user-supplied models.
  static SpectralPolynomial from_coefficients(std::span<const double> ascending);

  double leading() const noexcept { return leading_; }
  const std::vector<SpectralFactor>& factors() const noexcept { return factors_; }
  int degree() const noexcept;
  const poly::PolyCoeffs& coefficients() const noexcept { return coeffs_; }

  cplx value(cplx z) const noexcept { return coeffs_(z); }

  /// sqrt(leading) * prod of per-factor principal branches. The sign relative
  /// to the physical branch is fixed by LensModel.
  cplx sqrt_product(cplx z) const noexcept;
  /// Derivative of sqrt_product, by the product rule over factors.
  cplx sqrt_product_derivative(cplx z) const noexcept;

 private:
  double leading_;
  std::vector<SpectralFactor> factors_;
  poly::PolyCoeffs coeffs_;
};

enum class ModelFamily { generic, gaussian, quartic };

enum class MassScaling { unit, total };

struct DensitySample {
  double x;
  double rho;
};

/// Full lens description: potential, spectral polynomial, support and mass.
/// Construction validates the degree relation, the cut endpoints against the
/// odd-multiplicity roots of P, and the unit normalization of the density.
class LensModel {
 public:
  LensModel(Potential potential, SpectralPolynomial spectral, SupportCuts cuts, double mass,
            ModelFamily family = ModelFamily::generic, std::string description = "generic");

  const Potential& potential() const noexcept { return potential_; }
  const SpectralPolynomial& spectral() const noexcept { return spectral_; }
  const SupportCuts& cuts() const noexcept { return cuts_; }
  double mass() const noexcept { return mass_; }
  ModelFamily family() const noexcept { return family_; }
  const std::string& description() const noexcept { return description_; }

  /// +1 or -1: multiplies SpectralPolynomial::sqrt_product to give the branch
  /// with V' - sqrt(P) ~ 1/z at infinity.
  double branch_sign() const noexcept { return sign_; }
  /// V'(z)^2 - P(z) truncated to degree 2p - 2. The Cauchy transform far
  /// from the cuts is evaluated as this over V' + sqrt P.
  const poly::PolyCoeffs& loop_numerator() const noexcept { return numerator_; }

 private:
  Potential potential_;
  SpectralPolynomial spectral_;
  SupportCuts cuts_;
  double mass_;
  ModelFamily family_;
  std::string description_;
  double sign_ = 1.0;
  poly::PolyCoeffs numerator_;
};

inline constexpr double kBranchEpsilon = 1e-12;

/// Unit-normalized density (1/pi)|sqrt P(x)|. Throws DomainError off the cuts.
double eval_density(const LensModel& model, double x);

/// Density divided by sqrt((x - lo)(hi - x)) for the cut containing x; smooth
/// up to the endpoints.
double reduced_density(const LensModel& model, std::size_t cut_index, double x);

/// Samples of the density, `per_cut` Chebyshev-spaced points per cut
/// including the endpoints.
std::vector<DensitySample> sample_density(const LensModel& model, int per_cut);

/// Integral of f(x) rho(x) over the support by second-kind Gauss-Chebyshev
/// quadrature on each cut.
cplx integrate_density(const LensModel& model, const std::function<cplx(double)>& f,
                       int nodes = 256);

/// Numerical integral of rho over the support. Throws NumericError when the
/// n and n/2 node estimates disagree beyond 1e-10.
double check_normalization(const LensModel& model, int nodes = 256);

/// Branch of sqrt P(z) with V'(z) - sqrt P(z) = 1/z + O(1/z^2).
/// Throws BranchAmbiguityError within 1e-12 of the cuts.
cplx branch_sqrt_P(const LensModel& model, cplx z);

/// Cauchy transform of the unit density; V'(x) on the cuts (principal value).
cplx cauchy_transform(const LensModel& model, cplx z, MassScaling scaling = MassScaling::unit);

/// V'(z) - sqrt P(z) on the physical sheet without the on-cut special case.
/// Exactly on a cut it returns the limit selected by the principal branches.
cplx cauchy_transform_sheet(const LensModel& model, cplx z);

/// d/dz of the unit Cauchy transform off the cuts.
cplx cauchy_transform_derivative(const LensModel& model, cplx z);

}  // namespace rmtlens
