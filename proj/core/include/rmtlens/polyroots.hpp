#pragma once

#include <complex>
#include <span>
#include <vector>

namespace rmtlens::poly {

using cplx = std::complex<double>;

inline constexpr int kMaxDegree = 16;

/// Polynomial with complex coefficients stored in ascending degree.
/// Trailing (leading-degree) coefficients that are exactly zero are trimmed.
class PolyCoeffs {
 public:
  PolyCoeffs() = default;
  explicit PolyCoeffs(std::vector<cplx> ascending);

  static PolyCoeffs from_real(std::span<const double> ascending);

  /// -1 for the zero polynomial.
  int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const noexcept { return c_.empty(); }
  bool is_real(double tol = 0.0) const noexcept;

  const std::vector<cplx>& coefficients() const noexcept { return c_; }
  cplx operator[](std::size_t k) const { return k < c_.size() ? c_[k] : cplx{}; }
  cplx leading() const { return c_.back(); }
  double max_abs_coefficient() const noexcept;

  cplx operator()(cplx z) const noexcept;
  double operator()(double x) const noexcept;

  PolyCoeffs derivative() const;

  friend PolyCoeffs operator*(const PolyCoeffs& a, const PolyCoeffs& b);
  friend PolyCoeffs operator+(const PolyCoeffs& a, const PolyCoeffs& b);
  friend PolyCoeffs operator-(const PolyCoeffs& a, const PolyCoeffs& b);
  PolyCoeffs operator*(cplx s) const;

 private:
  std::vector<cplx> c_;
};

/// Monic linear factor (z - r).
PolyCoeffs linear_factor(cplx r);

struct RootCluster {
  cplx value;  ///< centroid of the clustered roots
  int multiplicity;
};

/// All complex roots, repeated according to multiplicity, ordered by real
/// part then imaginary part. Aberth-Ehrlich iteration with a companion-matrix
/// eigenvalue fallback when the resubstitution bound is not met.
/// Throws DomainError for the zero or constant polynomial and for degree > 16.
std::vector<cplx> roots(const PolyCoeffs& p);

/// Roots grouped transitively within `radius * max(1, |r|)`.
std::vector<RootCluster> clustered_roots(const PolyCoeffs& p, double radius = 1e-7);

/// Real roots in the closed interval [lo, hi], merged within 1e-9 and sorted.
/// Requires real coefficients; throws DomainError when lo > hi.
std::vector<double> real_roots_in(const PolyCoeffs& p, double lo, double hi);

/// Resubstitution bound |p(r)| <= 1e-10 * max|c| * max(1,|r|)^deg.
bool satisfies_residual_bound(const PolyCoeffs& p, cplx r, double factor = 1e-10);

}  // namespace rmtlens::poly
