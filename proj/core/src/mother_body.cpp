#include "rmtlens/mother_body.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "rmtlens/errors.hpp"
#include "rmtlens/gaussian_lens.hpp"
#include "rmtlens/quadrature.hpp"
#include "rmtlens/quartic_lens.hpp"

namespace rmtlens {

namespace {

constexpr double kPi = std::numbers::pi;

cplx exterior_root(cplx z, double a) { return std::sqrt(z - a) * std::sqrt(z + a); }

// Integral over the ellipse of rho(zeta) / (z - zeta), elliptic-polar nodes.
template <class Density>
cplx ellipse_cauchy(const Ellipse& e, cplx z, Density rho, int nr, int ntheta) {
  if (nr < 1 || ntheta < 1) throw DomainError("ellipse quadrature: node counts must be positive");
  const quad::Rule rule = quad::gauss_legendre(nr);
  const double h = 2.0 * kPi / ntheta;
  std::vector<double> cs(ntheta);
  std::vector<double> sn(ntheta);
  for (int k = 0; k < ntheta; ++k) {
    cs[k] = std::cos(k * h);
    sn[k] = std::sin(k * h);
  }
  cplx total = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const double r = 0.5 * (rule.nodes[i] + 1.0);
    const double wr = 0.5 * rule.weights[i] * r;
    cplx ring = 0.0;
    for (int k = 0; k < ntheta; ++k) {
      const cplx zeta{e.alpha * r * cs[k], e.beta * r * sn[k]};
      ring += rho(zeta) / (z - zeta);
    }
    total += wr * ring;
  }
  return e.alpha * e.beta * h * total;
}

void require_exterior(const Ellipse& e, std::span<const cplx> points) {
  for (const cplx& z : points) {
    if (e.level(z) <= 1.0 + 1e-12) throw DomainError("mother body: sample point lies in the closed ellipse");
  }
}

QuarticParams matched_quartic(const Ellipse& e, double t) {
  const QuarticParams q = QuarticParams::from(t, 1.0);
  if (q.phase != QuarticPhase::one_cut) throw DomainError("quartic mother body: t must be in the one-cut phase");
  if (std::abs(q.a * q.a - e.a * e.a) > 1e-10 * q.a * q.a) {
    throw DomainError("quartic mother body: ellipse foci do not match the cut endpoints");
  }
  return q;
}

}  // namespace

Ellipse Ellipse::from(double alpha, double beta) {
  if (!(alpha > beta && beta > 0.0)) throw DomainError("Ellipse: need alpha > beta > 0");
  return {alpha, beta, std::sqrt(alpha * alpha - beta * beta)};
}

Ellipse Ellipse::with_focus(double a, double alpha) {
  if (!(alpha > a && a > 0.0)) throw DomainError("Ellipse: need alpha > a > 0");
  return {alpha, std::sqrt(alpha * alpha - a * a), a};
}

double Ellipse::level(cplx z) const noexcept {
  const double x = z.real() / alpha;
  const double y = z.imag() / beta;
  return x * x + y * y;
}

cplx Ellipse::boundary_point(double theta) const noexcept {
  return {alpha * std::cos(theta), beta * std::sin(theta)};
}

double Ellipse::area() const noexcept { return kPi * alpha * beta; }

cplx schwarz(const Ellipse& e, cplx z) {
  const double a2 = e.a * e.a;
  const double a1 = (e.alpha * e.alpha + e.beta * e.beta) / a2;
  // i sqrt(a^2 - z^2) continued from infinity is -sqrt(z - a) sqrt(z + a).
  return a1 * z - (2.0 * e.alpha * e.beta / a2) * exterior_root(z, e.a);
}

EllipticCauchy elliptic_uniform_cauchy(const Ellipse& e, cplx z) {
  const double lv = e.level(z);
  const double a2 = e.a * e.a;
  const bool boundary = std::abs(lv - 1.0) <= 1e-12;
  if (lv < 1.0 && !boundary) {
    const double k = (e.alpha - e.beta) * (e.alpha - e.beta) / a2;
    return {kPi * std::conj(z) - kPi * k * z, true, false};
  }
  const cplx v = (2.0 * kPi * e.alpha * e.beta / a2) * (z - exterior_root(z, e.a));
  return {v, false, boundary};
}

cplx elliptic_uniform_cauchy_quadrature(const Ellipse& e, cplx z, int nr, int ntheta) {
  return ellipse_cauchy(e, z, [](cplx) { return 1.0; }, nr, ntheta);
}

double verify_gaussian_mother_body(const Ellipse& e, std::span<const cplx> points) {
  require_exterior(e, points);
  const LensModel model = gaussian_model(e.a, e.area());
  double worst = 0.0;
  for (const cplx& z : points) {
    const cplx line = cauchy_transform(model, z, MassScaling::total);
    const cplx body = elliptic_uniform_cauchy(e, z).value;
    worst = std::max(worst, std::abs(line - body) / std::abs(body));
  }
  return worst;
}

double verify_gaussian_mother_body_quadrature(const Ellipse& e, std::span<const cplx> points, int nr, int ntheta) {
  require_exterior(e, points);
  const LensModel model = gaussian_model(e.a, e.area());
  double worst = 0.0;
  for (const cplx& z : points) {
    const cplx line = cauchy_transform(model, z, MassScaling::total);
    const cplx body = elliptic_uniform_cauchy_quadrature(e, z, nr, ntheta);
    worst = std::max(worst, std::abs(line - body) / std::abs(line));
  }
  return worst;
}

QuarticBodyCoeffs quartic_body_coeffs(const Ellipse& e, double t) {
  const QuarticParams q = matched_quartic(e, t);
  const double a2 = e.a * e.a;
  const double A1 = (e.alpha * e.alpha + e.beta * e.beta) / a2;
  const double A2 = -2.0 * e.alpha * e.beta / a2;
  const double den = 3.0 * A1 * A1 + A2 * A2 + 3.0;
  return {A1, A2, 1.0 / den, 3.0 / den, q.c + a2 * A2 * A2 / den};
}

std::array<double, 3> quartic_body_residuals(const QuarticBodyCoeffs& k, const Ellipse& e, double t) {
  const QuarticParams q = matched_quartic(e, t);
  const double a2 = e.a * e.a;
  return {(3.0 * k.A1 * k.A1 + k.A2 * k.A2) * k.c1 + k.c2 - 1.0, k.c3 - a2 * k.A2 * k.A2 * k.c1 - q.c,
          k.c2 - 3.0 * k.c1};
}

double quartic_body_density(const Ellipse& e, double t, double m, cplx point) {
  if (!(m > 0.0)) throw DomainError("quartic_body_density: m must be positive");
  if (e.level(point) > 1.0 + 1e-12) throw DomainError("quartic_body_density: point outside the ellipse");
  const QuarticBodyCoeffs k = quartic_body_coeffs(e, t);
  const double x = point.real();
  const double y = point.imag();
  return m / (kPi * std::abs(k.A2)) * (2.0 * k.c2 * (x * x - y * y) + k.c3);
}

double quartic_body_min_density(const Ellipse& e, double t, double m) {
  return quartic_body_density(e, t, m, cplx{0.0, e.beta});
}

bool quartic_body_sufficient(const Ellipse& e) noexcept {
  return e.beta > e.alpha / std::sqrt(3.0) && e.beta < e.alpha;
}

cplx quartic_body_cauchy(const Ellipse& e, double t, double m, cplx z, int nr, int ntheta) {
  const QuarticBodyCoeffs k = quartic_body_coeffs(e, t);
  const double scale = m / (kPi * std::abs(k.A2));
  auto rho = [&](cplx s) { return scale * (2.0 * k.c2 * (s.real() * s.real() - s.imag() * s.imag()) + k.c3); };
  return ellipse_cauchy(e, z, rho, nr, ntheta);
}

double quartic_body_mass(const Ellipse& e, double t, double m, int nr, int ntheta) {
  const QuarticBodyCoeffs k = quartic_body_coeffs(e, t);
  const double scale = m / (kPi * std::abs(k.A2));
  // Exact for this quadratic density: the r-integrand is a polynomial.
  const quad::Rule rule = quad::gauss_legendre(nr);
  const double h = 2.0 * kPi / ntheta;
  double total = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const double r = 0.5 * (rule.nodes[i] + 1.0);
    for (int j = 0; j < ntheta; ++j) {
      const double x = e.alpha * r * std::cos(j * h);
      const double y = e.beta * r * std::sin(j * h);
      total += 0.5 * rule.weights[i] * r * scale * (2.0 * k.c2 * (x * x - y * y) + k.c3);
    }
  }
  return e.alpha * e.beta * h * total;
}

double verify_quartic_mother_body(const Ellipse& e, double t, double m, std::span<const cplx> points, int nr,
                                  int ntheta) {
  require_exterior(e, points);
  if (!(quartic_body_min_density(e, t, m) > 0.0)) {
    throw DomainError("verify_quartic_mother_body: planar density is not positive on the ellipse");
  }
  const LensModel model = quartic_model(t, m);
  double worst = 0.0;
  for (const cplx& z : points) {
    const cplx line = cauchy_transform(model, z, MassScaling::total);
    const cplx body = quartic_body_cauchy(e, t, m, z, nr, ntheta);
    worst = std::max(worst, std::abs(line - body) / std::abs(line));
  }
  return worst;
}

}  // namespace rmtlens
