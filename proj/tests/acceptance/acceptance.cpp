// Acceptance checks: one PASS/FAIL line per criterion, nonzero exit on any
// failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "rmtlens/gaussian_lens.hpp"
#include "rmtlens/generic_lens.hpp"
#include "rmtlens/mother_body.hpp"
#include "rmtlens/polyroots.hpp"
#include "rmtlens/quartic_lens.hpp"
#include "rmtlens/spectral.hpp"
#include "rmtlens/time_delay.hpp"

using namespace rmtlens;

namespace {

constexpr double kSqrt2 = std::numbers::sqrt2;
const double kInvSqrt2 = 1.0 / std::numbers::sqrt2;

struct Outcome {
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      if (!detail.empty()) detail += "; ";
      detail += what;
    }
  }
};

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::vector<cplx> positions(const ImageSet& s, ImageKind kind) {
  std::vector<cplx> out;
  for (const Image& im : s.images) {
    if (im.kind == kind) out.push_back(im.z);
  }
  return out;
}

std::vector<std::string> sorted(std::vector<std::string> v) {
  std::sort(v.begin(), v.end());
  return v;
}

// ------------------------------------------------------------------------

Outcome einstein_cross() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  const ImageSet s = images_gaussian(GaussianParams::from(1.0, 1.0), 0.0);
  const double elapsed = seconds_since(t0);
  const auto bright = positions(s, ImageKind::bright);
  const auto dim = positions(s, ImageKind::dim);
  const std::vector<cplx> ref{{0.0, -2.0 / std::sqrt(5.0)}, {0.0, 2.0 / std::sqrt(5.0)},
                              {-2.0 / std::sqrt(3.0), 0.0}, {2.0 / std::sqrt(3.0), 0.0}};
  o.require(bright.size() == 4, fmt("bright count %.0f", bright.size()));
  o.require(dim.size() == 1 && std::abs(dim[0]) < 1e-10, "dim image at 0");
  o.require(s.size() == 5, "no extra images");
  const double h = oracle::hausdorff(bright, ref);
  o.require(h < 1e-10, fmt("position error %.3g", h));
  o.require(elapsed < 0.1, fmt("runtime %.3g s", elapsed));
  o.detail = o.ok ? fmt("max position error %.2e, runtime %.2e s", h, elapsed) : o.detail;
  return o;
}

Outcome gaussian_axis_catalog() {
  Outcome o;
  const auto g = GaussianParams::from(1.0, 0.25);  // p = 1/2, a = 1
  const std::vector<std::pair<cplx, int>> cases{{0.25, 2}, {0.6, 3}, {0.8, 1}, {cplx(0, 0.3), 2}, {cplx(0, 0.7), 1}};
  for (const auto& [u, want] : cases) {
    const int rule = count_regions_half(u);
    const int found = static_cast<int>(bright_images_gaussian(g, u).count(ImageKind::bright));
    o.require(rule == want, fmt("rule count %.0f at (%.2f,%.2f)", rule, u.real(), u.imag()));
    o.require(found == want, fmt("solved count %.0f at (%.2f,%.2f)", found, u.real(), u.imag()));
  }
  if (o.ok) o.detail = "alpha {0.25,0.6,0.8} -> (2,3,1), beta {0.3,0.7} -> (2,1)";
  return o;
}

Outcome discriminant_curve() {
  Outcome o;
  double worst = 0.0;
  for (int k = 0; k <= 200; ++k) {
    const double alpha = 2.0 * k / 200.0;
    const double f = 2.0 * alpha * alpha - 1.0;
    worst = std::max(worst, std::abs(discriminant_half(alpha, 0.0) - 2.0 * f * f * f));
  }
  o.require(worst < 1e-12, fmt("factor mismatch %.3g", worst));

  // D(alpha, 0) expanded: 16 a^6 - 24 a^4 + 12 a^2 - 2.
  const std::vector<double> coeffs{-2.0, 0.0, 12.0, 0.0, -24.0, 0.0, 16.0};
  const auto clusters = poly::clustered_roots(poly::PolyCoeffs::from_real(coeffs), 1e-4);
  bool triples = clusters.size() == 2;
  for (const auto& cl : clusters) {
    triples = triples && cl.multiplicity == 3 && std::abs(std::abs(cl.value.real()) - kInvSqrt2) < 1e-4 &&
              std::abs(cl.value.imag()) < 1e-4;
  }
  o.require(triples, "triple roots at +-1/sqrt2");

  // Count-map transitions along the positive real axis from the image solver.
  const auto g = GaussianParams::from(1.0, 0.25);
  const double step = 0.01;
  std::vector<double> transitions;
  int prev = -1;
  for (int k = 1; k <= 120; ++k) {
    const double alpha = k * step;
    const int n = static_cast<int>(bright_images_gaussian(g, alpha).count(ImageKind::bright));
    if (prev >= 0 && n != prev) transitions.push_back(alpha - 0.5 * step);
    prev = n;
  }
  o.require(transitions.size() == 2, fmt("%.0f transitions", transitions.size()));
  if (transitions.size() == 2) {
    o.require(std::abs(transitions[0] - 0.5) <= step, fmt("first transition %.3f", transitions[0]));
    o.require(std::abs(transitions[1] - kInvSqrt2) <= step, fmt("second transition %.3f", transitions[1]));
    if (o.ok) {
      o.detail = fmt("factor error %.1e; transitions near %.3f and %.3f", worst, transitions[0], transitions[1]);
    }
  }
  return o;
}

struct TableCase {
  double m;
  double t;
  std::vector<std::string> labels;
};

Outcome catalog_rows(const std::vector<TableCase>& rows, double max_seconds, bool two_cut_positions) {
  Outcome o;
  double worst = 0.0;
  const auto t0 = std::chrono::steady_clock::now();
  for (const TableCase& r : rows) {
    const ImageCatalog cat = images_origin(r.m, r.t);
    o.require(cat.labels() == sorted(r.labels), fmt("labels differ at m=%.4f t=%.4f", r.m, r.t));
    for (const CatalogEntry& e : cat.entries) worst = std::max(worst, e.residual);
  }
  const double elapsed = seconds_since(t0);
  o.require(worst < 1e-10, fmt("residual %.3g", worst));
  if (max_seconds > 0.0) o.require(elapsed < max_seconds, fmt("runtime %.3g s", elapsed));
  if (two_cut_positions) {
    const ImageCatalog cat = images_origin(1.0, -1.45);
    const std::vector<std::pair<const char*, double>> want{
        {"xd+", 1.56525}, {"xd-", -1.56525}, {"x2+", 1.71756}, {"x2-", -1.71756}, {"iy2+", 0.22361}, {"iy2-", -0.22361}};
    for (const auto& [label, v] : want) {
      const CatalogEntry* e = cat.find(label);
      const double got = e == nullptr ? NAN : (label[0] == 'i' ? e->z.imag() : e->z.real());
      o.require(std::abs(got - v) < 1e-5, std::string(label) + fmt(" = %.7f", got));
    }
  }
  if (o.ok) o.detail = fmt("%.0f rows, max residual %.2e, runtime %.2e s", rows.size(), worst, elapsed);
  return o;
}

Outcome one_cut_table() {
  const std::vector<TableCase> rows{
      {1.0, 1.5, {"x0", "x1+", "x1-", "iy1+", "iy1-"}},
      {1.0, 0.5, {"x0", "xd+", "xd-", "x1+", "x1-", "iy1+", "iy1-"}},
      {kInvSqrt2, 2.0, {"x0", "x1+", "x1-", "iy1+", "iy1-"}},
      {kInvSqrt2, 0.0, {"x0", "xd+", "xd-", "x1+", "x1-", "iy1+", "iy1-"}},
      {0.5, 0.9, {"x0", "xd+", "xd-", "x1+", "x1-", "iy1+", "iy1-"}},
      {0.5, 0.0, {"x0", "iy1+", "iy1-"}},
      {0.5, -kSqrt2, {"x0"}},
  };
  return catalog_rows(rows, 1.0, false);
}

Outcome two_cut_table() {
  const std::vector<TableCase> rows{
      {1.0, -1.45, {"x0", "xd+", "xd-", "x2+", "x2-", "iy2+", "iy2-"}},
      {1.0, -2.0, {"x0", "xd+", "xd-", "x2+", "x2-"}},
      {kInvSqrt2, -2.0, {"x0", "xd+", "xd-"}},
      {0.5, -2.0, {"x0"}},
  };
  return catalog_rows(rows, 0.0, true);
}

Outcome phase_transition() {
  Outcome o;
  const std::vector<double> ts{-1.2, -1.3, -1.4, -1.43, -1.5, -1.6};
  const PhaseScan scan = phase_transition_scan(1.0, ts);
  o.require(std::abs(scan.x_one_cut - 1.70710) < 1e-3, fmt("x1 = %.6f", scan.x_one_cut));
  o.require(std::abs(scan.y_one_cut - 0.29290) < 1e-3, fmt("y1 = %.6f", scan.y_one_cut));
  o.require(std::abs(scan.x_two_cut - 1.70710) < 1e-3, fmt("x2 = %.6f", scan.x_two_cut));
  o.require(std::abs(scan.y_two_cut - 0.29290) < 1e-3, fmt("y2 = %.6f", scan.y_two_cut));
  o.require(scan.x_gap < 1e-3 && scan.y_gap < 1e-3, fmt("gaps %.2e %.2e", scan.x_gap, scan.y_gap));
  if (o.ok) {
    o.detail = fmt("x1 %.8f vs x2 %.8f, ", scan.x_one_cut, scan.x_two_cut) +
               fmt("y1 %.8f vs y2 %.8f", scan.y_one_cut, scan.y_two_cut);
  }
  return o;
}

std::vector<cplx> exterior_points(const Ellipse& e, int n, double scale_lo, double scale_hi, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> th(0.0, 2.0 * std::numbers::pi);
  std::uniform_real_distribution<double> sc(scale_lo, scale_hi);
  std::vector<cplx> pts;
  for (int k = 0; k < n; ++k) {
    const double s = sc(rng);
    const double a = th(rng);
    pts.emplace_back(s * e.alpha * std::cos(a), s * e.beta * std::sin(a));
  }
  return pts;
}

Outcome gaussian_mother_body() {
  Outcome o;
  const Ellipse e = Ellipse::from(2.0, 1.0);
  const auto pts = exterior_points(e, 20, 1.1, 3.0, 42);
  const double closed = verify_gaussian_mother_body(e, pts);
  const double quad = verify_gaussian_mother_body_quadrature(e, pts);
  o.require(closed < 1e-10, fmt("closed-form error %.3g", closed));
  o.require(quad < 1e-4, fmt("quadrature error %.3g", quad));
  if (o.ok) o.detail = fmt("closed form %.2e, quadrature %.2e", closed, quad);
  return o;
}

Outcome quartic_mother_body() {
  Outcome o;
  const double t = 0.0;
  const Ellipse e = Ellipse::with_focus(QuarticParams::from(t, 1.0).a, 1.8);
  o.require(quartic_body_sufficient(e), "ellipse outside the sufficient window");
  const QuarticBodyCoeffs k = quartic_body_coeffs(e, t);
  double res = 0.0;
  for (double r : quartic_body_residuals(k, e, t)) res = std::max(res, std::abs(r));
  o.require(res < 1e-14, fmt("coefficient residual %.3g", res));

  const auto pts = exterior_points(e, 10, 1.1, 3.0, 7);
  const double field = verify_quartic_mother_body(e, t, 1.0, pts);
  o.require(field < 1e-5, fmt("field error %.3g", field));

  std::mt19937 rng(99);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  int samples = 0;
  double lowest = INFINITY;
  while (samples < 10000) {
    const cplx z(e.alpha * u(rng), e.beta * u(rng));
    if (e.level(z) > 1.0) continue;
    lowest = std::min(lowest, quartic_body_density(e, t, 1.0, z));
    ++samples;
  }
  o.require(lowest > 0.0, fmt("min density %.3g", lowest));
  if (o.ok) o.detail = fmt("residual %.1e, field %.2e, min density %.4f", res, field, lowest);
  return o;
}

Outcome time_delays() {
  Outcome o;
  // Gaussian cross, a = 2, m = 4: two routes against the closed form.
  const double a = 2.0;
  const double m = 4.0;
  const double closed = gaussian_cross_delay(a, m);
  const LensModel g = gaussian_model(a, m);
  const ImageSet s = images_gaussian(GaussianParams::from(a, m), 0.0);
  double tau_re = NAN;
  double tau_im = NAN;
  double tau_re_q = NAN;
  double tau_im_q = NAN;
  for (const Image& im : s.images) {
    if (im.kind != ImageKind::bright) continue;
    const double geom = 0.5 * std::norm(im.z);
    const double tau = time_delay(g, 0.0, im.z);
    const double tau_q = geom + m * log_potential_quadrature(g, im.z);
    if (std::abs(im.z.imag()) < 1e-12) {
      tau_re = tau;
      tau_re_q = tau_q;
    } else {
      tau_im = tau;
      tau_im_q = tau_q;
    }
  }
  const double d1 = tau_im - tau_re;
  const double d2 = tau_im_q - tau_re_q;
  o.require(std::abs(closed - (-1.02165)) < 1e-5, fmt("closed %.8f", closed));
  o.require(std::abs(d1 - closed) < 1e-8 && std::abs(d2 - closed) < 1e-8, fmt("routes %.10f %.10f", d1, d2));

  // Two-cut quartic, m = 1, t = -1.45.
  const double rel = relative_delay_two_cut(1.0, -1.45);
  const double rel_q = relative_delay_two_cut_quadrature(1.0, -1.45);
  o.require(std::abs(rel - (-0.00147131809)) < 1e-10, fmt("two-cut closed %.12f", rel));
  o.require(std::abs(rel - rel_q) < 1e-8, fmt("two-cut quadrature %.12f", rel_q));
  if (o.ok) {
    o.detail = fmt("gaussian %.10f (routes %.1e), ", closed, std::max(std::abs(d1 - closed), std::abs(d2 - closed))) +
               fmt("two-cut %.11f (quadrature %.1e)", rel, std::abs(rel - rel_q));
  }
  return o;
}

Outcome property_suites() {
  Outcome o;
  // Normalization sweeps.
  double norm_err = 0.0;
  for (double a = 0.25; a <= 4.0; a += 0.25) norm_err = std::max(norm_err, std::abs(check_normalization(gaussian_model(a, 1.0)) - 1.0));
  for (double t = -4.0; t <= 4.0; t += 0.1) norm_err = std::max(norm_err, std::abs(check_normalization(quartic_model(t, 1.0)) - 1.0));
  o.require(norm_err < 1e-9, fmt("normalization error %.3g", norm_err));

  // Residuals over 1000 random sources across four models.
  const std::vector<LensModel> models{gaussian_model(1.0, 1.0), gaussian_model(1.0, 0.25), quartic_model(0.5, 1.0),
                                      quartic_model(-1.8, 1.0)};
  SolverConfig cfg;
  cfg.seed_resolution = 32;
  std::mt19937 rng(2024);
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  double worst_res = 0.0;
  std::size_t images = 0;
  for (int k = 0; k < 1000; ++k) {
    const LensModel& model = models[k % models.size()];
    const cplx w(u(rng), u(rng));
    for (const Image& im : all_images_numeric(model, w, cfg).images) {
      if (im.kind == ImageKind::continuum) continue;
      worst_res = std::max(worst_res, residual(model, w, im.z));
      ++images;
    }
  }
  o.require(worst_res < 1e-10, fmt("worst residual %.3g", worst_res));

  // No off-axis bright image of w = 0 for the quartic models over 10^4 seeds.
  std::size_t off_axis = 0;
  SolverConfig dense;
  dense.seed_resolution = 100;
  for (const auto& [m, t] : std::vector<std::pair<double, double>>{{1.0, 0.5}, {0.5, 0.0}, {1.0, -1.45}, {1.0, -2.0}}) {
    const QuarticParams q = QuarticParams::from(t, m);
    dense.seed_half_width = 3.0 * q.a;
    for (const Image& im : bright_images_numeric(quartic_model(q), 0.0, dense).images) {
      if (std::abs(im.z.real()) > 1e-9 && std::abs(im.z.imag()) > 1e-9) ++off_axis;
    }
  }
  o.require(off_axis == 0, fmt("%.0f off-axis images", off_axis));

  // Numeric against analytic Gaussian images over 100 sources.
  double worst_h = 0.0;
  std::uniform_real_distribution<double> v(-1.0, 1.0);
  for (int k = 0; k < 100; ++k) {
    const double p = k % 2 == 0 ? 0.5 : 2.0;
    const cplx w(v(rng), v(rng));
    const auto exact = positions(bright_images_gaussian(GaussianParams::from(1.0, 0.5 * p), w), ImageKind::bright);
    const auto numeric = positions(bright_images_numeric(gaussian_model(1.0, 0.5 * p), w), ImageKind::bright);
    worst_h = std::max(worst_h, oracle::hausdorff(exact, numeric));
  }
  o.require(worst_h < 1e-8, fmt("Hausdorff %.3g", worst_h));
  if (o.ok) {
    o.detail = fmt("norm %.1e, residual %.1e over ", norm_err, worst_res) + std::to_string(images) +
               fmt(" images, Hausdorff %.1e", worst_h);
  }
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"gaussian einstein cross", einstein_cross},
      {"gaussian p=1/2 axis catalog", gaussian_axis_catalog},
      {"discriminant curve", discriminant_curve},
      {"quartic one-cut table", one_cut_table},
      {"quartic two-cut table", two_cut_table},
      {"phase transition continuity", phase_transition},
      {"gaussian mother body", gaussian_mother_body},
      {"quartic mother body", quartic_mother_body},
      {"time delays", time_delays},
      {"property suites", property_suites},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& ex) {
      o.ok = false;
      o.detail = std::string("exception: ") + ex.what();
    }
    failures += o.ok ? 0 : 1;
    std::printf("%s %zu %s: %s\n", o.ok ? "PASS" : "FAIL", i + 1, criteria[i].first, o.detail.c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
