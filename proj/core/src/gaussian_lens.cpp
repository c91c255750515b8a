#include "rmtlens/gaussian_lens.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

#include "rmtlens/errors.hpp"
#include "rmtlens/generic_lens.hpp"
#include "rmtlens/polyroots.hpp"

namespace rmtlens {

namespace {

constexpr double kUnitCircleBand = 1e-9;
constexpr double kDedupRadius = 1e-8;

// F(Z) = Z^2 - 2p|Z|^2 - 2uZ + 1, the Joukowski form of the bright equation.
cplx joukowski_residual(cplx zz, double p, cplx u) {
  return zz * zz - 2.0 * p * std::norm(zz) - 2.0 * u * zz + 1.0;
}

// F is not holomorphic, so Newton solves F + A d + B conj(d) = 0 with
// A = dF/dZ and B = dF/dconj(Z).
cplx polish(cplx zz, double p, cplx u) {
  for (int it = 0; it < 8; ++it) {
    const cplx f = joukowski_residual(zz, p, u);
    if (std::abs(f) < 1e-15) break;
    const cplx a = 2.0 * zz - 2.0 * p * std::conj(zz) - 2.0 * u;
    const cplx b = -2.0 * p * zz;
    const double den = std::norm(a) - std::norm(b);
    if (std::abs(den) < 1e-300) break;
    const cplx next = zz + (b * std::conj(f) - f * std::conj(a)) / den;
    if (!(std::abs(joukowski_residual(next, p, u)) < std::abs(f))) break;
    zz = next;
  }
  return zz;
}

// Candidates from the two conics of the bright equation.
std::vector<cplx> conic_candidates(double p, double alpha, double beta) {
  std::vector<cplx> out;
  const double q = 1.0 + 2.0 * p;
  if (alpha == 0.0 && beta == 0.0) {
    out.emplace_back(0.0, 1.0 / std::sqrt(q));
    out.emplace_back(0.0, -1.0 / std::sqrt(q));
    if (p > 0.5) {
      out.emplace_back(1.0 / std::sqrt(2.0 * p - 1.0), 0.0);
      out.emplace_back(-1.0 / std::sqrt(2.0 * p - 1.0), 0.0);
    }
    return out;
  }
  if (beta == 0.0) {
    // y = 0: (1 - 2p) x^2 - 2 alpha x + 1 = 0
    const double lead = 1.0 - 2.0 * p;
    if (lead == 0.0) {
      out.emplace_back(1.0 / (2.0 * alpha), 0.0);
    } else {
      const double disc = alpha * alpha - lead;
      if (disc >= 0.0) {
        const double s = std::sqrt(disc);
        // Stable pair: the product of the roots is 1/lead.
        const double r1 = (alpha + std::copysign(s, alpha)) / lead;
        out.emplace_back(r1, 0.0);
        out.emplace_back(1.0 / (lead * r1), 0.0);
      }
    }
    // x = alpha: y^2 = (1 - (1 + 2p) alpha^2) / (1 + 2p)
    const double y2 = (1.0 - q * alpha * alpha) / q;
    if (y2 >= 0.0) {
      out.emplace_back(alpha, std::sqrt(y2));
      out.emplace_back(alpha, -std::sqrt(y2));
    }
    return out;
  }
  if (alpha == 0.0) {
    // x = 0: y = (beta +- sqrt(beta^2 + 1 + 2p)) / (1 + 2p)
    const double s = std::sqrt(beta * beta + q);
    out.emplace_back(0.0, (beta + s) / q);
    out.emplace_back(0.0, (beta - s) / q);
    // y = beta: x^2 = 1/(2p - 1) - beta^2
    if (p != 0.5) {
      const double x2 = 1.0 / (2.0 * p - 1.0) - beta * beta;
      if (x2 >= 0.0) {
        out.emplace_back(std::sqrt(x2), beta);
        out.emplace_back(-std::sqrt(x2), beta);
      }
    }
    return out;
  }
  // Off-axis: eliminate y = beta x / (x - alpha) and solve for x.
  const double r2 = alpha * alpha + beta * beta;
  const std::vector<double> ascending{
      alpha * alpha,
      -2.0 * alpha * (r2 + 1.0),
      5.0 * alpha * alpha + beta * beta - 2.0 * p * r2 + 1.0,
      4.0 * alpha * (p - 1.0),
      1.0 - 2.0 * p,
  };
  const poly::PolyCoeffs quartic = poly::PolyCoeffs::from_real(ascending);
  for (const cplx& r : poly::roots(quartic)) {
    // Near a fold the two real roots turn into a pair with an O(sqrt eps)
    // imaginary part; polishing decides whether they are genuine.
    if (std::abs(r.imag()) > 1e-6 * std::max(1.0, std::abs(r))) continue;
    const double x = r.real();
    out.emplace_back(x, beta * x / (x - alpha));
  }
  return out;
}

double gaussian_bright_residual(const GaussianParams& g, cplx w, cplx z) {
  const cplx root = std::sqrt(z - g.a) * std::sqrt(z + g.a);
  return std::abs(std::conj(w) - std::conj(z) + g.p * (z - root));
}

}  // namespace

GaussianParams GaussianParams::from(double a, double m) {
  if (!(a > 0.0) || !(m > 0.0)) throw DomainError("gaussian: a and m must be positive");
  const double p = 2.0 * m / (a * a);
  return {a, m, p, std::abs(p - 1.0) <= 1e-12};
}

LensModel gaussian_model(double a, double m) {
  const GaussianParams g = GaussianParams::from(a, m);
  const double a2 = g.a * g.a;
  Potential v({0.0, 1.0 / a2});
  SpectralPolynomial pz(4.0 / (a2 * a2), {{cplx{-g.a, 0.0}, 1}, {cplx{g.a, 0.0}, 1}});
  char buf[96];
  std::snprintf(buf, sizeof buf, "gaussian a=%.15g m=%.15g", g.a, g.m);
  return LensModel(std::move(v), std::move(pz), SupportCuts({{-g.a, g.a}}), g.m, ModelFamily::gaussian,
                   buf);
}

ImageSet dim_images_gaussian(const GaussianParams& g, cplx w) {
  ImageSet out{w, {}, "gaussian"};
  if (w.imag() != 0.0) return out;
  if (g.degenerate) {
    if (w.real() == 0.0) {
      out.images.push_back({cplx{0.0, 0.0}, ImageKind::continuum, 0.0, false, {}, Interval{-g.a, g.a}});
    }
    return out;
  }
  const double x = w.real() / (1.0 - g.p);
  if (std::abs(x) <= g.a * (1.0 + 1e-15)) {
    const double xc = std::clamp(x, -g.a, g.a);
    const double res = std::abs(w.real() - (1.0 - g.p) * xc);
    out.images.push_back({cplx{xc, 0.0}, ImageKind::dim, res, std::abs(xc) == g.a, {}, {}});
  }
  return out;
}

ImageSet bright_images_gaussian(const GaussianParams& g, cplx w) {
  const cplx u = w / g.a;
  ImageSet out{w, {}, "gaussian"};
  for (cplx zz : conic_candidates(g.p, u.real(), u.imag())) {
    zz = polish(zz, g.p, u);
    if (std::abs(joukowski_residual(zz, g.p, u)) > 1e-10) continue;
    const double r = std::abs(zz);
    if (r > 1.0 + kUnitCircleBand || zz == cplx{}) continue;
    const bool boundary = r >= 1.0 - kUnitCircleBand;
    const cplx z = 0.5 * g.a * (zz + 1.0 / zz);
    const bool duplicate = std::any_of(out.images.begin(), out.images.end(), [&](const Image& im) {
      return std::abs(im.z - z) <= kDedupRadius * std::max(1.0, std::abs(z));
    });
    if (duplicate) continue;
    out.images.push_back({z, ImageKind::bright, gaussian_bright_residual(g, w, z), boundary, {}, {}});
  }
  out.sort();
  return out;
}

ImageSet images_gaussian(const GaussianParams& g, cplx w) {
  ImageSet out = dim_images_gaussian(g, w);
  ImageSet bright = bright_images_gaussian(g, w);
  out.images.insert(out.images.end(), bright.images.begin(), bright.images.end());
  out.sort();
  return out;
}

double discriminant_half(double alpha, double beta) {
  const double a2 = alpha * alpha;
  const double b2 = beta * beta;
  return 16.0 * a2 * a2 * a2 + 8.0 * a2 * a2 * (4.0 * b2 - 3.0) + 4.0 * a2 * (4.0 * b2 * b2 + 10.0 * b2 + 3.0) -
         (b2 + 2.0);
}

int count_regions_half(cplx u) {
  const double alpha = std::abs(u.real());
  const double beta = std::abs(u.imag());
  if (alpha == 0.0 && beta == 0.0) return 2;
  if (beta == 0.0) {
    if (alpha <= 0.5) return 2;
    return alpha < 1.0 / std::sqrt(2.0) ? 3 : 1;
  }
  if (alpha == 0.0) return beta < 0.5 ? 2 : 1;
  if (discriminant_half(alpha, beta) > 0.0) return 1;
  // Inside the curve: each root M = |Z|^2 in (0, 1) of the modulus cubic is
  // one admissible image.
  const double a2 = alpha * alpha;
  const std::vector<double> cubic{-1.0, 4.0 * (1.0 + a2 + beta * beta), -4.0 * (1.0 + 4.0 * a2), 16.0 * a2};
  const auto ms = poly::real_roots_in(poly::PolyCoeffs::from_real(cubic), 0.0, 1.0);
  return static_cast<int>(std::count_if(ms.begin(), ms.end(), [](double m) { return m > 0.0 && m < 1.0; }));
}

}  // namespace rmtlens
