#include "rmtlens/generic_lens.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "rmtlens/errors.hpp"

namespace rmtlens {

std::string_view to_string(ImageKind kind) noexcept {
  switch (kind) {
    case ImageKind::dim:
      return "dim";
    case ImageKind::bright:
      return "bright";
    case ImageKind::continuum:
      return "continuum";
  }
  return "unknown";
}

std::size_t ImageSet::count(ImageKind kind) const noexcept {
  return static_cast<std::size_t>(
      std::count_if(images.begin(), images.end(), [kind](const Image& im) { return im.kind == kind; }));
}

void ImageSet::sort() {
  std::sort(images.begin(), images.end(), [](const Image& a, const Image& b) {
    if (a.z.real() != b.z.real()) return a.z.real() < b.z.real();
    return a.z.imag() < b.z.imag();
  });
}

void SolverConfig::validate() const {
  if (seed_resolution < 2) throw DomainError("SolverConfig: seed_resolution must be at least 2");
  if (max_iter < 1) throw DomainError("SolverConfig: max_iter must be positive");
  if (!(newton_tol > 0.0 && newton_tol <= 1e-10)) {
    throw DomainError("SolverConfig: newton_tol must lie in (0, 1e-10]");
  }
  if (!(dedup_radius >= 10.0 * newton_tol)) {
    throw DomainError("SolverConfig: dedup_radius must be at least 10 newton_tol");
  }
  if (!(residual_tol > 0.0) || !(cut_tube > 0.0) || !(ring_distance > cut_tube)) {
    throw DomainError("SolverConfig: tolerances must be positive with ring_distance > cut_tube");
  }
  if (seed_half_width < 0.0) throw DomainError("SolverConfig: seed_half_width must be nonnegative");
}

namespace {

bool on_cut(const LensModel& model, cplx z) {
  return z.imag() == 0.0 && model.cuts().contains(z.real());
}

// G(z) = conj(z) - m omega(z) - conj(w)
cplx lens_map(const LensModel& model, cplx w, cplx z) {
  return std::conj(z) - model.mass() * cauchy_transform_sheet(model, z) - std::conj(w);
}

struct NewtonOutcome {
  cplx z;
  double residual;
  bool converged;
};

NewtonOutcome newton(const LensModel& model, cplx w, cplx z, const SolverConfig& cfg, double step_cap) {
  cplx g = lens_map(model, w, z);
  double res = std::abs(g);
  double last_step = std::numeric_limits<double>::infinity();
  for (int it = 0; it < cfg.max_iter; ++it) {
    if (res <= cfg.residual_tol && last_step <= cfg.newton_tol * std::max(1.0, std::abs(z))) break;
    const cplx hp = -model.mass() * cauchy_transform_derivative(model, z);
    const double den = 1.0 - std::norm(hp);
    if (!std::isfinite(den) || std::abs(den) < 1e-300) return {z, res, false};
    cplx delta = (std::conj(hp) * g - std::conj(g)) / den;
    if (!std::isfinite(delta.real()) || !std::isfinite(delta.imag())) return {z, res, false};
    if (std::abs(delta) > step_cap) delta *= step_cap / std::abs(delta);

    cplx trial = z + delta;
    cplx gt = lens_map(model, w, trial);
    for (int k = 0; k < 12 && !(std::abs(gt) < res); ++k) {
      delta *= 0.5;
      trial = z + delta;
      gt = lens_map(model, w, trial);
    }
    if (!(std::abs(gt) <= res) && res <= cfg.residual_tol) break;
    last_step = std::abs(trial - z);
    z = trial;
    g = gt;
    res = std::abs(g);
    if (!std::isfinite(res)) return {z, res, false};
    if (last_step == 0.0) break;
  }
  // A fold (double image) only converges linearly; accept the double
  // precision floor there.
  const bool ok = res <= cfg.residual_tol || res < 1e-10;
  return {z, res, ok};
}

double default_half_width(const LensModel& model, cplx w) {
  const double r = model.cuts().max_abs_endpoint();
  return std::max({3.0 * r, std::abs(w) + r, std::abs(w) + 2.0 * std::sqrt(model.mass())});
}

}  // namespace

double bright_residual(const LensModel& model, cplx w, cplx z) { return std::abs(lens_map(model, w, z)); }

double residual(const LensModel& model, cplx w, cplx z) {
  if (on_cut(model, z)) {
    const double x = z.real();
    return std::abs(w - x + model.mass() * model.potential().derivative(x));
  }
  return bright_residual(model, w, z);
}

ImageSet dim_images(const LensModel& model, cplx w) {
  ImageSet out{w, {}, model.description()};
  if (w.imag() != 0.0) return out;

  // x - m V'(x) - w as a real polynomial.
  const poly::PolyCoeffs& dv = model.potential().derivative_poly();
  std::vector<cplx> c(std::max<std::size_t>(2, dv.coefficients().size()), cplx{});
  for (std::size_t k = 0; k < dv.coefficients().size(); ++k) c[k] = -model.mass() * dv[k];
  c[1] += 1.0;
  const double scale = std::max(1.0, model.mass() * dv.max_abs_coefficient());
  bool degenerate = true;
  for (const cplx& v : c) degenerate = degenerate && std::abs(v) <= 1e-14 * scale;
  if (degenerate) {
    if (std::abs(w) <= 1e-14 * scale) {
      for (const Interval& cut : model.cuts().intervals()) {
        Image im{cplx{cut.center(), 0.0}, ImageKind::continuum, 0.0, false, {}, cut};
        out.images.push_back(im);
      }
    }
    return out;
  }
  c[0] -= w.real();
  const poly::PolyCoeffs q(std::move(c));
  if (q.degree() < 1) return out;
  for (const Interval& cut : model.cuts().intervals()) {
    for (double x : poly::real_roots_in(q, cut.lo, cut.hi)) {
      const bool edge = std::abs(x - cut.lo) <= 1e-12 * std::max(1.0, std::abs(x)) ||
                        std::abs(x - cut.hi) <= 1e-12 * std::max(1.0, std::abs(x));
      out.images.push_back({cplx{x, 0.0}, ImageKind::dim, residual(model, w, cplx{x, 0.0}), edge, {}, {}});
    }
  }
  out.sort();
  return out;
}

ImageSet bright_images_numeric(const LensModel& model, cplx w, const SolverConfig& cfg) {
  cfg.validate();
  const double half = cfg.seed_half_width > 0.0 ? cfg.seed_half_width : default_half_width(model, w);
  const double step_cap = 0.5 * half;

  std::vector<cplx> seeds;
  const int n = cfg.seed_resolution;
  // Centered halfway between lens and source so that both sit well inside.
  const cplx center{w.real() * 0.5, w.imag() * 0.5};
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const cplx s = center + cplx{-half + 2.0 * half * (i + 0.5) / n, -half + 2.0 * half * (j + 0.5) / n};
      if (model.cuts().distance(s) > cfg.cut_tube) seeds.push_back(s);
    }
  }
  for (const Interval& cut : model.cuts().intervals()) {
    for (int k = 0; k <= n; ++k) {
      const double x = cut.center() - 0.5 * cut.length() * std::cos(std::numbers::pi * k / n);
      seeds.emplace_back(x, cfg.ring_distance);
      seeds.emplace_back(x, -cfg.ring_distance);
    }
    seeds.emplace_back(cut.lo - cfg.ring_distance, 0.0);
    seeds.emplace_back(cut.hi + cfg.ring_distance, 0.0);
  }

  std::vector<NewtonOutcome> found;
  for (const cplx& s : seeds) {
    NewtonOutcome r = newton(model, w, s, cfg, step_cap);
    if (r.converged && !on_cut(model, r.z)) found.push_back(r);
  }
  std::sort(found.begin(), found.end(),
            [](const NewtonOutcome& a, const NewtonOutcome& b) { return a.residual < b.residual; });

  ImageSet out{w, {}, model.description()};
  for (const NewtonOutcome& r : found) {
    const bool duplicate = std::any_of(out.images.begin(), out.images.end(), [&](const Image& im) {
      return std::abs(im.z - r.z) <= cfg.dedup_radius * std::max(1.0, std::abs(r.z));
    });
    if (duplicate) continue;
    const bool near_cut = model.cuts().distance(r.z) <= cfg.cut_tube;
    out.images.push_back({r.z, ImageKind::bright, r.residual, near_cut, {}, {}});
  }
  out.sort();
  return out;
}

ImageSet all_images_numeric(const LensModel& model, cplx w, const SolverConfig& cfg) {
  ImageSet out = dim_images(model, w);
  ImageSet bright = bright_images_numeric(model, w, cfg);
  out.images.insert(out.images.end(), bright.images.begin(), bright.images.end());
  out.sort();
  return out;
}

}  // namespace rmtlens
