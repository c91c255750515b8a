#pragma once

#include <array>
#include <complex>
#include <span>

#include "rmtlens/spectral.hpp"

namespace rmtlens {

/// Elliptic domain x^2/alpha^2 + y^2/beta^2 < 1 with foci at +-a.
struct Ellipse {
  double alpha;
  double beta;
  double a;

  static Ellipse from(double alpha, double beta);
  /// Ellipse with focal half-distance `a` and semi-major axis `alpha`.
  static Ellipse with_focus(double a, double alpha);

  /// x^2/alpha^2 + y^2/beta^2; below 1 inside.
  double level(cplx z) const noexcept;
  cplx boundary_point(double theta) const noexcept;
  double area() const noexcept;
};

/// Schwarz function S(z) = A1 z + i A2 sqrt(a^2 - z^2), with the square root
/// continued from the exterior so that conj(z) = S(z) on the whole boundary.
cplx schwarz(const Ellipse& e, cplx z);

struct EllipticCauchy {
  cplx value;
  bool inside;
  /// Within 1e-12 of the boundary; the value is the (continuous) exterior
  /// expression there.
  bool boundary;
};

/// Cauchy transform of the unit uniform density on the ellipse, piecewise
/// closed form.
EllipticCauchy elliptic_uniform_cauchy(const Ellipse& e, cplx z);

/// Same transform by elliptic-polar quadrature: Gauss-Legendre in r,
/// trapezoid in theta.
cplx elliptic_uniform_cauchy_quadrature(const Ellipse& e, cplx z, int nr = 512, int ntheta = 512);

/// Max relative error between m omega_e of the Gaussian model with
/// a^2 = alpha^2 - beta^2, m = pi alpha beta and the ellipse's exterior
/// transform. Throws DomainError for points in the closed ellipse.
double verify_gaussian_mother_body(const Ellipse& e, std::span<const cplx> points);

/// As above with the 2D quadrature on the ellipse side.
double verify_gaussian_mother_body_quadrature(const Ellipse& e, std::span<const cplx> points, int nr = 512,
                                              int ntheta = 512);

/// Coefficients of the planar density whose exterior field equals the
/// one-cut quartic measure.
struct QuarticBodyCoeffs {
  double A1;
  double A2;
  double c1;
  double c2;
  double c3;
};

/// Requires the ellipse's focal half-distance to match the one-cut a(t).
QuarticBodyCoeffs quartic_body_coeffs(const Ellipse& e, double t);

/// Residuals of (3 A1^2 + A2^2) c1 + c2 = 1, c3 - a^2 A2^2 c1 = c and
/// c2 = 3 c1, in that order.
std::array<double, 3> quartic_body_residuals(const QuarticBodyCoeffs& k, const Ellipse& e, double t);

/// m/(pi |A2|) (2 c2 (x^2 - y^2) + c3) at a point of the closed ellipse.
double quartic_body_density(const Ellipse& e, double t, double m, cplx point);

/// Lowest value of the density on the closed ellipse, attained at (0, +-beta).
double quartic_body_min_density(const Ellipse& e, double t, double m);

/// beta in (alpha/sqrt(3), alpha): then the density is positive on D.
bool quartic_body_sufficient(const Ellipse& e) noexcept;

/// Cauchy transform of the planar quartic body by quadrature.
cplx quartic_body_cauchy(const Ellipse& e, double t, double m, cplx z, int nr = 512, int ntheta = 512);

/// Integral of the planar density over the ellipse (equals m).
double quartic_body_mass(const Ellipse& e, double t, double m, int nr = 512, int ntheta = 512);

/// Max relative error between the planar quadrature and m omega_e of the
/// one-cut quartic model. Throws DomainError if the density is not positive
/// on D or a point lies in the closed ellipse.
double verify_quartic_mother_body(const Ellipse& e, double t, double m, std::span<const cplx> points, int nr = 512,
                                  int ntheta = 512);

}  // namespace rmtlens
