#include "rmtlens/time_delay.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "rmtlens/errors.hpp"
#include "rmtlens/quadrature.hpp"
#include "rmtlens/quartic_lens.hpp"

namespace rmtlens {

namespace {

double gaussian_log_potential(double a, cplx z) {
  const cplx r = std::sqrt(z - a) * std::sqrt(z + a);
  return -std::real(z * z - z * r) / (a * a) - std::log(std::abs(z + r)) + 0.5 + std::numbers::ln2;
}

}  // namespace

double log_potential_quadrature(const LensModel& model, cplx z, double tol) {
  double total = 0.0;
  const auto& cuts = model.cuts().intervals();
  for (std::size_t i = 0; i < cuts.size(); ++i) {
    const Interval& cut = cuts[i];
    auto integrand = [&](double x) {
      const double d = std::abs(z - x);
      if (d == 0.0) return 0.0;
      const double s = std::max(0.0, (x - cut.lo) * (cut.hi - x));
      return -reduced_density(model, i, x) * std::sqrt(s) * std::log(d);
    };
    const double split = std::clamp(z.real(), cut.lo, cut.hi);
    if (split > cut.lo && split < cut.hi) {
      total += quad::tanh_sinh(integrand, cut.lo, split, tol) + quad::tanh_sinh(integrand, split, cut.hi, tol);
    } else {
      total += quad::tanh_sinh(integrand, cut.lo, cut.hi, tol);
    }
  }
  return total;
}

double log_potential(const LensModel& model, cplx z) {
  if (model.family() == ModelFamily::gaussian) {
    return gaussian_log_potential(model.cuts().intervals().front().hi, z);
  }
  return log_potential_quadrature(model, z);
}

double time_delay(const LensModel& model, cplx w, cplx z) {
  return 0.5 * std::norm(z - w) + model.mass() * log_potential(model, z);
}

DelayReport delay_report(const LensModel& model, const ImageSet& images) {
  DelayReport report{images.source, {}, {}};
  for (const Image& im : images.images) {
    if (im.kind == ImageKind::continuum) continue;
    report.entries.push_back({im.z, time_delay(model, images.source, im.z), im.kind, im.label});
  }
  for (std::size_t i = 0; i < report.entries.size(); ++i) {
    for (std::size_t j = i + 1; j < report.entries.size(); ++j) {
      report.pairs.push_back({i, j, report.entries[j].tau - report.entries[i].tau});
    }
  }
  return report;
}

double dim_pair_delay(const LensModel& model, cplx w, double x1, double x2) {
  if (!model.cuts().contains(x1, 1e-12) || !model.cuts().contains(x2, 1e-12)) {
    throw DomainError("dim_pair_delay: both points must lie on the cuts");
  }
  const double geometric = 0.5 * (std::norm(cplx{x2} - w) - std::norm(cplx{x1} - w));
  return geometric + model.mass() * (model.potential().value(x1) - model.potential().value(x2));
}

double gaussian_cross_delay(double a, double m) {
  if (!(a > 0.0) || !(m > 0.0)) throw DomainError("gaussian_cross_delay: a and m must be positive");
  const double q = 0.25 * a * a;
  if (!(m > q)) throw DomainError("gaussian_cross_delay: the real pair needs m > a^2/4");
  return 0.5 * m * std::log((m - q) / (m + q));
}

namespace {

void check_two_cut_window(double m, double t) {
  const double lo = -m - 0.5 / m;
  if (!(m > 1.0 / std::numbers::sqrt2) || !(t > lo && t < -std::numbers::sqrt2)) {
    throw DomainError("relative_delay_two_cut: needs m > 1/sqrt(2) and -m - 1/(2m) < t < -sqrt(2)");
  }
}

}  // namespace

double relative_delay_two_cut(double m, double t) {
  check_two_cut_window(m, t);
  const double r = std::sqrt(t * t - 2.0);
  const double m2 = m * m;
  return (1.0 + 4.0 * m * t - 4.0 * m2 * std::log(m) + 2.0 * m2 * (1.0 + t * t + t * r) -
          4.0 * m2 * std::log(-t - r)) /
         (8.0 * m);
}

double relative_delay_two_cut_quadrature(double m, double t) {
  check_two_cut_window(m, t);
  const LensModel model = quartic_model(t, m);
  const double y = std::sqrt(m + 0.5 / m + t);
  // U(iy) - U(0) = -(i/2) int_0^y (omega(is) - omega(-is)) ds = int_0^y Im omega(is) ds
  const double du = quad::tanh_sinh([&](double s) { return cauchy_transform(model, cplx{0.0, s}).imag(); }, 0.0, y,
                                    1e-13);
  return 0.5 * y * y + m * du;
}

}  // namespace rmtlens
