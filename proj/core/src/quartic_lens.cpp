#include "rmtlens/quartic_lens.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>

#include "rmtlens/errors.hpp"
#include "rmtlens/polyroots.hpp"

namespace rmtlens {

namespace {

constexpr double kSqrt2 = std::numbers::sqrt2;
constexpr double kInvSqrt2 = 1.0 / std::numbers::sqrt2;
constexpr double kEdgeTol = 1e-12;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

bool near(double x, double v, double tol = kEdgeTol) { return std::abs(x - v) <= tol * std::max(1.0, std::abs(v)); }
bool at_critical(double t) { return std::abs(t + kSqrt2) <= kCriticalBand; }

double t_critical_mass(double m) { return (2.0 * std::sqrt(1.0 - 2.0 * m * m) - 1.0) / m; }

void add_pair(std::vector<std::string>& out, const char* stem) {
  out.push_back(std::string(stem) + "+");
  out.push_back(std::string(stem) + "-");
}

// Real positive roots of a polynomial given in ascending order.
std::vector<double> positive_roots(std::vector<double> ascending) {
  const poly::PolyCoeffs p = poly::PolyCoeffs::from_real(ascending);
  std::vector<double> out;
  if (p.degree() < 1) return out;
  for (const cplx& r : poly::roots(p)) {
    if (std::abs(r.imag()) > 1e-9 * std::max(1.0, std::abs(r))) continue;
    if (r.real() > 0.0) out.push_back(r.real());
  }
  return out;
}

// f(x) = m x^3 + (mt - 1) x - m (x^2 + c) sqrt(x^2 - a^2), x > a.
double real_axis_equation(const QuarticParams& q, double x) {
  return q.m * x * x * x + (q.m * q.t - 1.0) * x - q.m * (x * x + q.c) * std::sqrt(x * x - q.a * q.a);
}

// g(y) = -m y^3 + (mt + 1) y - m (c - y^2) sqrt(y^2 + a^2), y > 0.
double imag_axis_equation(const QuarticParams& q, double y) {
  return -q.m * y * y * y + (q.m * q.t + 1.0) * y - q.m * (q.c - y * y) * std::sqrt(y * y + q.a * q.a);
}

// Secant refinement of a root of f seeded from the squared equation.
template <class F>
double refine(F f, double x, double lo) {
  double x0 = x;
  double x1 = x * (1.0 + 1e-7);
  if (x1 <= lo) x1 = x0 + 1e-9;
  double f0 = f(x0);
  double f1 = f(x1);
  for (int it = 0; it < 30 && f1 != f0; ++it) {
    const double x2 = x1 - f1 * (x1 - x0) / (f1 - f0);
    if (!(x2 > lo) || !std::isfinite(x2)) break;
    x0 = x1;
    f0 = f1;
    x1 = x2;
    f1 = f(x1);
    if (std::abs(x1 - x0) <= 1e-16 * std::abs(x1)) break;
  }
  return std::abs(f1) <= std::abs(f(x)) ? x1 : x;
}

// Signed filter for the squared axis equations: keeps roots for which both
// sides carry the same sign.
bool same_side(double lhs, double rhs) { return std::abs(lhs - rhs) <= 1e-8 * (std::abs(lhs) + std::abs(rhs)) + 1e-14; }

CatalogEntry make_entry(const LensModel& model, std::string label, cplx z, ImageKind kind, bool boundary) {
  return {std::move(label), z, kind, residual(model, cplx{}, z), boundary};
}

void add_mirror(std::vector<CatalogEntry>& out, const LensModel& model, const char* stem, cplx z, ImageKind kind,
                bool boundary) {
  out.push_back(make_entry(model, std::string(stem) + "+", z, kind, boundary));
  out.push_back(make_entry(model, std::string(stem) + "-", -z, kind, boundary));
}

}  // namespace

std::string_view to_string(QuarticPhase phase) noexcept {
  switch (phase) {
    case QuarticPhase::one_cut:
      return "one_cut";
    case QuarticPhase::critical:
      return "critical";
    case QuarticPhase::two_cut:
      return "two_cut";
  }
  return "unknown";
}

QuarticParams QuarticParams::from(double t, double m) {
  if (!(m > 0.0)) throw DomainError("quartic: m must be positive");
  if (!std::isfinite(t)) throw DomainError("quartic: t must be finite");
  QuarticParams q{t, m, QuarticPhase::one_cut, 0.0, 0.0, 0.0};
  if (at_critical(t)) {
    q.t = -kSqrt2;
    q.phase = QuarticPhase::critical;
    q.a = std::sqrt(2.0 * kSqrt2);
  } else if (t > -kSqrt2) {
    const double s = std::sqrt(t * t + 6.0);
    q.a = std::sqrt(2.0 / 3.0 * (s - t));
    q.c = (2.0 * t + s) / 3.0;
  } else {
    q.phase = QuarticPhase::two_cut;
    q.a = std::sqrt(kSqrt2 - t);
    q.b = std::sqrt(-kSqrt2 - t);
  }
  return q;
}

LensModel quartic_model(double t, double m) { return quartic_model(QuarticParams::from(t, m)); }

LensModel quartic_model(const QuarticParams& q) {
  Potential v({0.0, 0.5 * q.t, 0.0, 0.25});
  const cplx a{q.a, 0.0};
  std::vector<SpectralFactor> factors{{-a, 1}, {a, 1}};
  std::vector<Interval> cuts;
  switch (q.phase) {
    case QuarticPhase::one_cut: {
      const cplx ic{0.0, std::sqrt(q.c)};
      factors.push_back({ic, 2});
      factors.push_back({-ic, 2});
      cuts.push_back({-q.a, q.a});
      break;
    }
    case QuarticPhase::critical:
      factors.push_back({cplx{}, 4});
      cuts.push_back({-q.a, q.a});
      break;
    case QuarticPhase::two_cut:
      factors.push_back({cplx{-q.b, 0.0}, 1});
      factors.push_back({cplx{q.b, 0.0}, 1});
      factors.push_back({cplx{}, 2});
      cuts.push_back({-q.a, -q.b});
      cuts.push_back({q.b, q.a});
      break;
  }
  char buf[96];
  std::snprintf(buf, sizeof buf, "quartic t=%.15g m=%.15g", q.t, q.m);
  return LensModel(std::move(v), SpectralPolynomial(1.0, std::move(factors)), SupportCuts(std::move(cuts)), q.m,
                   ModelFamily::quartic, buf);
}

bool ImageCatalog::has(std::string_view label) const noexcept { return find(label) != nullptr; }

const CatalogEntry* ImageCatalog::find(std::string_view label) const noexcept {
  for (const CatalogEntry& e : entries) {
    if (e.label == label) return &e;
  }
  return nullptr;
}

std::vector<std::string> ImageCatalog::labels() const {
  std::vector<std::string> out;
  for (const CatalogEntry& e : entries) out.push_back(e.label);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::string> expected_labels_one_cut(double m, double t) {
  if (!(m > 0.0)) throw DomainError("expected_labels_one_cut: m must be positive");
  if (t < -kSqrt2 && !at_critical(t)) throw DomainError("expected_labels_one_cut: t below -sqrt(2)");
  const bool crit = at_critical(t);
  std::vector<std::string> out{"x0"};
  bool xd = false;
  bool x1 = false;
  bool iy1 = false;
  if (near(m, kInvSqrt2)) {
    if (crit) {
      xd = true;
    } else {
      xd = t < kSqrt2 && !near(t, kSqrt2);
      x1 = iy1 = true;
    }
  } else if (m > kInvSqrt2) {
    xd = t < 1.0 / m && !near(t, 1.0 / m);
    x1 = iy1 = true;
  } else if (!crit) {
    const double tc = t_critical_mass(m);
    const bool on_tc = near(t, tc);
    const bool below_one_over_m = t < 1.0 / m && !near(t, 1.0 / m);
    xd = (t > tc || on_tc) && below_one_over_m;
    x1 = t > tc && !on_tc;
    iy1 = true;
  }
  if (xd) add_pair(out, "xd");
  if (x1) add_pair(out, "x1");
  if (iy1) add_pair(out, "iy1");
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::string> expected_labels_two_cut(double m, double t) {
  if (!(m > 0.0)) throw DomainError("expected_labels_two_cut: m must be positive");
  if (t > -kSqrt2 && !at_critical(t)) throw DomainError("expected_labels_two_cut: t above -sqrt(2)");
  std::vector<std::string> out{"x0"};
  if (near(m, kInvSqrt2)) {
    add_pair(out, "xd");
  } else if (m > kInvSqrt2) {
    add_pair(out, "xd");
    add_pair(out, "x2");
    const double edge = -m - 0.5 / m;
    if (t > edge && !near(t, edge)) add_pair(out, "iy2");
  }
  std::sort(out.begin(), out.end());
  return out;
}

ImageCatalog images_origin_one_cut(double m, double t) {
  const QuarticParams q = QuarticParams::from(t, m);
  if (q.phase == QuarticPhase::two_cut) throw DomainError("images_origin_one_cut: t below -sqrt(2)");
  const LensModel model = quartic_model(q);
  const bool crit = q.phase == QuarticPhase::critical;
  ImageCatalog cat{m, q.t, q.phase, {}, crit};
  const double a2 = q.a * q.a;
  const ImageKind x0_kind = q.phase == QuarticPhase::critical ? ImageKind::bright : ImageKind::dim;
  cat.entries.push_back(make_entry(model, "x0", cplx{}, x0_kind, crit));

  // Dim pair: m x^2 + m t - 1 = 0 inside the cut.
  const double xd2 = 1.0 / m - q.t;
  if (xd2 > 1e-14 * a2 && xd2 <= a2 * (1.0 + kEdgeTol)) {
    const bool edge = near(xd2, a2, 1e-9);
    add_mirror(cat.entries, model, "xd", cplx{std::sqrt(std::min(xd2, a2)), 0.0}, ImageKind::dim, edge);
    cat.boundary = cat.boundary || edge;
  }

  // Real bright pair. Squaring the axis equation in X = x^2 gives a quadratic
  // whose roots beyond a^2 are kept when the signs agree.
  const double mt1 = q.m * q.t - 1.0;
  const double c = q.c;
  for (double xx : positive_roots({m * m * c * c * a2, mt1 * mt1 - m * m * (c * c - 2.0 * c * a2),
                                   2.0 * m * mt1 - m * m * (2.0 * c - a2)})) {
    if (!(xx > a2 * (1.0 + kEdgeTol))) continue;
    const double lhs = m * xx + mt1;
    const double rhs = m * (xx + c) * std::sqrt((xx - a2) / xx);
    if (!same_side(lhs, rhs)) continue;
    const double x = refine([&](double s) { return real_axis_equation(q, s); }, std::sqrt(xx), q.a);
    add_mirror(cat.entries, model, "x1", cplx{x, 0.0}, ImageKind::bright, false);
    break;
  }

  // Imaginary bright pair, same construction in Y = y^2.
  const double mt1p = q.m * q.t + 1.0;
  for (double yy : positive_roots({-m * m * c * c * a2, mt1p * mt1p - m * m * (c * c - 2.0 * c * a2),
                                   -2.0 * m * mt1p - m * m * (a2 - 2.0 * c)})) {
    if (!(yy > 1e-14)) continue;
    const double lhs = mt1p - m * yy;
    const double rhs = m * (c - yy) * std::sqrt((yy + a2) / yy);
    if (!same_side(lhs, rhs)) continue;
    const double y = refine([&](double s) { return imag_axis_equation(q, s); }, std::sqrt(yy), 0.0);
    add_mirror(cat.entries, model, "iy1", cplx{0.0, y}, ImageKind::bright, false);
    break;
  }
  return cat;
}

ImageCatalog images_origin_two_cut(double m, double t) {
  const QuarticParams q = QuarticParams::from(t, m);
  if (q.phase == QuarticPhase::one_cut) throw DomainError("images_origin_two_cut: t above -sqrt(2)");
  const LensModel model = quartic_model(q);
  ImageCatalog cat{m, q.t, q.phase, {}, q.phase == QuarticPhase::critical};
  const double a2 = q.a * q.a;
  const double b2 = q.b * q.b;
  cat.entries.push_back(make_entry(model, "x0", cplx{}, ImageKind::bright, q.phase == QuarticPhase::critical));

  const double xd2 = 1.0 / m - q.t;
  if (xd2 >= b2 && xd2 <= a2 * (1.0 + kEdgeTol)) {
    const bool edge = near(xd2, a2, 1e-9);
    add_mirror(cat.entries, model, "xd", cplx{std::sqrt(std::min(xd2, a2)), 0.0}, ImageKind::dim, edge);
    cat.boundary = cat.boundary || edge;
  }
  if (m > kInvSqrt2 && !near(m, kInvSqrt2)) {
    const double x2 = m + 0.5 / m - q.t;
    if (x2 > a2) add_mirror(cat.entries, model, "x2", cplx{std::sqrt(x2), 0.0}, ImageKind::bright, false);
    const double y2 = m + 0.5 / m + q.t;
    if (y2 > 0.0 && !near(q.t, -m - 0.5 / m)) {
      add_mirror(cat.entries, model, "iy2", cplx{0.0, std::sqrt(y2)}, ImageKind::bright, false);
    }
  }
  return cat;
}

ImageCatalog images_origin(double m, double t) {
  const QuarticParams q = QuarticParams::from(t, m);
  return q.phase == QuarticPhase::two_cut ? images_origin_two_cut(m, t) : images_origin_one_cut(m, t);
}

ImageSet images_quartic(const QuarticParams& q, cplx w, const SolverConfig& cfg) {
  const LensModel model = quartic_model(q);
  ImageSet out = dim_images(model, w);
  const ImageSet bright = bright_images_numeric(model, w, cfg);
  for (const Image& im : bright.images) {
    const bool shadowed = std::any_of(out.images.begin(), out.images.end(), [&](const Image& d) {
      return std::abs(d.z - im.z) <= cfg.dedup_radius * std::max(1.0, std::abs(im.z));
    });
    if (!shadowed) out.images.push_back(im);
  }
  if (w == cplx{}) {
    const ImageCatalog cat = images_origin(q.m, q.t);
    for (Image& im : out.images) {
      for (const CatalogEntry& e : cat.entries) {
        if (std::abs(e.z - im.z) <= 1e-6 * std::max(1.0, std::abs(e.z))) {
          im.label = e.label;
          im.kind = e.kind;
          im.z = e.z;
          im.residual = e.residual;
          im.boundary = im.boundary || e.boundary;
          break;
        }
      }
    }
  }
  out.sort();
  return out;
}

PhaseScan phase_transition_scan(double m, std::span<const double> t_values) {
  if (!(m > 0.0)) throw DomainError("phase_transition_scan: m must be positive");
  if (t_values.empty()) throw DomainError("phase_transition_scan: no t values");
  const auto [lo, hi] = std::minmax_element(t_values.begin(), t_values.end());
  if (!(*lo <= -kSqrt2 && *hi >= -kSqrt2)) {
    throw DomainError("phase_transition_scan: t values must straddle -sqrt(2)");
  }

  PhaseScan scan;
  scan.m = m;
  for (double t : t_values) {
    ImageCatalog cat = images_origin(m, t);
    scan.rows.push_back({cat.t, cat.phase, std::move(cat)});
  }
  for (std::size_t i = 1; i < scan.rows.size() && !scan.x0_flip; ++i) {
    const CatalogEntry* prev = scan.rows[i - 1].catalog.find("x0");
    const CatalogEntry* cur = scan.rows[i].catalog.find("x0");
    if (prev->kind != cur->kind) {
      scan.x0_flip = true;
      scan.x0_flip_t = 0.5 * (scan.rows[i - 1].t + scan.rows[i].t);
    }
  }

  const ImageCatalog above = images_origin_one_cut(m, -kSqrt2 + scan.probe);
  const ImageCatalog below = images_origin_two_cut(m, -kSqrt2 - scan.probe);
  auto coord = [](const ImageCatalog& c, const char* label, bool imag) {
    const CatalogEntry* e = c.find(label);
    if (e == nullptr) return kNaN;
    return imag ? e->z.imag() : e->z.real();
  };
  scan.x_one_cut = coord(above, "x1+", false);
  scan.x_two_cut = coord(below, "x2+", false);
  scan.y_one_cut = coord(above, "iy1+", true);
  scan.y_two_cut = coord(below, "iy2+", true);
  scan.x_gap = std::abs(scan.x_one_cut - scan.x_two_cut);
  scan.y_gap = std::abs(scan.y_one_cut - scan.y_two_cut);
  return scan;
}

}  // namespace rmtlens
