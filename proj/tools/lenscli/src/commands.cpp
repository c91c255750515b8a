#include "lenscli/commands.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <numbers>
#include <sstream>
#include <thread>

#include "lenscli/output.hpp"
#include "rmtlens/errors.hpp"
#include "rmtlens/gaussian_lens.hpp"
#include "rmtlens/mother_body.hpp"
#include "rmtlens/quadrature.hpp"
#include "rmtlens/quartic_lens.hpp"
#include "rmtlens/time_delay.hpp"

namespace lenscli {

using rmtlens::cplx;
using rmtlens::Image;
using rmtlens::ImageKind;
using rmtlens::ImageSet;

namespace {

rmtlens::ImageSet solve(const ModelSpec& spec, const rmtlens::LensModel& model, cplx w, const SolveOptions& opts) {
  switch (spec.kind) {
    case ModelKind::gaussian:
      if (!opts.numeric) {
        return rmtlens::images_gaussian(rmtlens::GaussianParams::from(*spec.a, spec.mass()), w);
      }
      break;
    case ModelKind::quartic:
      return rmtlens::images_quartic(rmtlens::QuarticParams::from(*spec.t, spec.mass()), w, opts.solver_config());
    case ModelKind::generic:
      break;
  }
  return rmtlens::all_images_numeric(model, w, opts.solver_config());
}

json image_json(const Image& im) {
  json j;
  j["z"] = complex_json(im.z);
  j["kind"] = std::string(rmtlens::to_string(im.kind));
  j["residual"] = round15(im.residual);
  j["boundary"] = im.boundary;
  if (!im.label.empty()) j["label"] = im.label;
  if (im.segment) j["segment"] = json::array({round15(im.segment->lo), round15(im.segment->hi)});
  return j;
}

std::vector<cplx> exterior_points(const rmtlens::Ellipse& e, int n) {
  // Deterministic spread: golden-angle directions at radii 1.1 .. 3 times
  // the boundary.
  std::vector<cplx> pts;
  const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
  for (int k = 0; k < n; ++k) {
    const double s = 1.1 + 1.9 * (n > 1 ? static_cast<double>(k) / (n - 1) : 0.0);
    const double th = golden * k + 0.1;
    pts.emplace_back(s * e.alpha * std::cos(th), s * e.beta * std::sin(th));
  }
  return pts;
}

bool on_critical_curve_half(cplx u) {
  const double alpha = std::abs(u.real());
  const double beta = std::abs(u.imag());
  if (beta == 0.0) return std::abs(alpha - 0.5) < 1e-9 || std::abs(alpha - std::numbers::sqrt2 / 2.0) < 1e-9;
  if (alpha == 0.0) return std::abs(beta - 0.5) < 1e-9;
  return std::abs(rmtlens::discriminant_half(alpha, beta)) < 1e-9;
}

}  // namespace

Format parse_format(const std::string& name) {
  if (name == "json") return Format::json;
  if (name == "csv") return Format::csv;
  throw ConfigError("unknown format '" + name + "' (expected json or csv)");
}

rmtlens::SolverConfig SolveOptions::solver_config() const {
  rmtlens::SolverConfig cfg;
  cfg.seed_resolution = seed_grid;
  if (tol) cfg.newton_tol = *tol;
  try {
    cfg.validate();
  } catch (const rmtlens::DomainError& e) {
    throw ConfigError(e.what());
  }
  return cfg;
}

std::string cmd_images(const ModelSpec& spec, cplx source, const SolveOptions& opts, Format format) {
  const rmtlens::LensModel model = build_model(spec);
  opts.solver_config();
  const ImageSet set = solve(spec, model, source, opts);
  if (format == Format::csv) {
    std::ostringstream out;
    out << "re,im,kind,residual,boundary,label\n";
    for (const Image& im : set.images) {
      out << csv_number(im.z.real()) << ',' << csv_number(im.z.imag()) << ',' << rmtlens::to_string(im.kind) << ','
          << csv_number(im.residual) << ',' << (im.boundary ? 1 : 0) << ',' << im.label << '\n';
    }
    return out.str();
  }
  json j;
  j["model"] = model.description();
  j["source"] = complex_json(source);
  j["images"] = json::array();
  for (const Image& im : set.images) j["images"].push_back(image_json(im));
  j["counts"] = {{"dim", set.count(ImageKind::dim)},
                 {"bright", set.count(ImageKind::bright)},
                 {"continuum", set.count(ImageKind::continuum)}};
  return dump(j);
}

std::string cmd_countmap(const ModelSpec& spec, const GridAxis& re, const GridAxis& im, const SolveOptions& opts,
                         int threads) {
  const rmtlens::LensModel model = build_model(spec);
  opts.solver_config();
  const bool gaussian = spec.kind == ModelKind::gaussian;
  const double scale = gaussian ? *spec.a : 1.0;
  const bool predict = gaussian && std::abs(rmtlens::GaussianParams::from(*spec.a, spec.mass()).p - 0.5) < 1e-12;

  const std::vector<double> xs = re.points();
  const std::vector<double> ys = im.points();
  struct Cell {
    std::size_t dim = 0;
    std::size_t bright = 0;
    bool boundary = false;
  };
  std::vector<Cell> cells(xs.size() * ys.size());

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t i = next++; i < cells.size(); i = next++) {
      try {
        const cplx u(xs[i % xs.size()], ys[i / xs.size()]);
        const ImageSet s = solve(spec, model, scale * u, opts);
        Cell& c = cells[i];
        c.dim = s.count(ImageKind::dim);
        c.bright = s.count(ImageKind::bright);
        c.boundary = std::any_of(s.images.begin(), s.images.end(), [](const Image& x) { return x.boundary; });
        // On the critical curve two bright images merge and the count is ambiguous.
        if (predict) c.boundary = c.boundary || on_critical_curve_half(u);
      } catch (...) {
        const std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = cells.size();
      }
    }
  };
  {
    const int n = std::max(1, threads);
    std::vector<std::jthread> pool;
    for (int k = 1; k < n; ++k) pool.emplace_back(worker);
    worker();
  }
  if (failure) std::rethrow_exception(failure);

  std::ostringstream out;
  out << "u_re,u_im,dim_count,bright_count" << (predict ? ",predicted_bright" : "") << ",boundary\n";
  for (std::size_t i = 0; i < cells.size(); ++i) {
    const cplx u(xs[i % xs.size()], ys[i / xs.size()]);
    out << csv_number(u.real()) << ',' << csv_number(u.imag()) << ',' << cells[i].dim << ',' << cells[i].bright;
    if (predict) out << ',' << rmtlens::count_regions_half(u);
    out << ',' << (cells[i].boundary ? 1 : 0) << '\n';
  }
  return out.str();
}

std::string cmd_density(const ModelSpec& spec, int samples, Format format) {
  const rmtlens::LensModel model = build_model(spec);
  if (samples < 2) throw ConfigError("--samples must be at least 2");
  const auto rows = rmtlens::sample_density(model, samples);
  if (format == Format::csv) {
    std::ostringstream out;
    out << "x,rho\n";
    for (const auto& r : rows) out << csv_number(r.x) << ',' << csv_number(r.rho) << '\n';
    return out.str();
  }
  json j;
  j["model"] = model.description();
  j["normalization"] = round15(rmtlens::check_normalization(model));
  j["cuts"] = json::array();
  for (const auto& c : model.cuts().intervals()) j["cuts"].push_back(json::array({round15(c.lo), round15(c.hi)}));
  j["samples"] = json::array();
  for (const auto& r : rows) j["samples"].push_back(json::array({round15(r.x), round15(r.rho)}));
  return dump(j);
}

std::vector<ProfileComponent> galaxy_profile(const ModelSpec& spec, const std::vector<double>& areas, int samples) {
  const rmtlens::LensModel model = build_model(spec);
  if (samples < 2) throw ConfigError("--samples must be at least 2");
  const auto& cuts = model.cuts().intervals();
  if (areas.size() != 1 && areas.size() != cuts.size()) {
    throw ConfigError("--S takes one area or one per cut (" + std::to_string(cuts.size()) + ")");
  }
  for (double s : areas) {
    if (!(s > 0.0)) throw ConfigError("areas must be positive");
  }
  const double m = model.mass();
  const rmtlens::quad::Rule rule = rmtlens::quad::gauss_chebyshev_second(256);
  std::vector<ProfileComponent> out;
  for (std::size_t i = 0; i < cuts.size(); ++i) {
    const rmtlens::Interval& cut = cuts[i];
    const double h = 0.5 * cut.length();
    double unit_mass = 0.0;
    for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
      unit_mass += rule.weights[k] * rmtlens::reduced_density(model, i, cut.center() + h * rule.nodes[k]);
    }
    unit_mass *= h * h;
    const double mi = m * unit_mass;
    const double area = areas.size() == 1 ? areas[0] * unit_mass : areas[i];
    ProfileComponent c{cut, area, mi, {}};
    for (int k = 0; k < samples; ++k) {
      double x = cut.center() + h * std::sin(std::numbers::pi * (static_cast<double>(k) / (samples - 1) - 0.5));
      if (k == 0) x = cut.lo;
      if (k == samples - 1) x = cut.hi;
      c.upper.emplace_back(x, 0.5 * area * (m / mi) * rmtlens::eval_density(model, x));
    }
    out.push_back(std::move(c));
  }
  return out;
}

std::string cmd_galaxy(const ModelSpec& spec, const std::vector<double>& areas, int samples) {
  std::ostringstream out;
  out << "component,X,Y_upper,Y_lower\n";
  const auto comps = galaxy_profile(spec, areas, samples);
  for (std::size_t i = 0; i < comps.size(); ++i) {
    for (const auto& [x, y] : comps[i].upper) {
      out << i << ',' << csv_number(x) << ',' << csv_number(y) << ',' << csv_number(-y) << '\n';
    }
  }
  return out.str();
}

std::string cmd_delays(const ModelSpec& spec, cplx source, bool pairs, const SolveOptions& opts, Format format) {
  const rmtlens::LensModel model = build_model(spec);
  opts.solver_config();
  const rmtlens::DelayReport r = rmtlens::delay_report(model, solve(spec, model, source, opts));
  if (format == Format::csv) {
    std::ostringstream out;
    if (pairs) {
      out << "first,second,delta\n";
      for (const auto& p : r.pairs) out << p.first << ',' << p.second << ',' << csv_number(p.delta) << '\n';
    } else {
      out << "re,im,kind,label,tau\n";
      for (const auto& e : r.entries) {
        out << csv_number(e.z.real()) << ',' << csv_number(e.z.imag()) << ',' << rmtlens::to_string(e.kind) << ','
            << e.label << ',' << csv_number(e.tau) << '\n';
      }
    }
    return out.str();
  }
  json j;
  j["model"] = model.description();
  j["source"] = complex_json(source);
  j["entries"] = json::array();
  for (const auto& e : r.entries) {
    json row{{"z", complex_json(e.z)}, {"kind", std::string(rmtlens::to_string(e.kind))}, {"tau", round15(e.tau)}};
    if (!e.label.empty()) row["label"] = e.label;
    j["entries"].push_back(row);
  }
  if (pairs) {
    j["pairs"] = json::array();
    for (const auto& p : r.pairs) {
      j["pairs"].push_back({{"first", p.first}, {"second", p.second}, {"delta", round15(p.delta)}});
    }
  }
  return dump(j);
}

std::string cmd_motherbody(const MotherBodyOptions& opts) {
  if (opts.points < 1) throw ConfigError("--points must be positive");
  if (opts.nr < 1 || opts.ntheta < 1) throw ConfigError("quadrature node counts must be positive");
  json j;
  if (opts.kind == ModelKind::gaussian) {
    rmtlens::Ellipse e{};
    try {
      e = rmtlens::Ellipse::from(opts.alpha, opts.beta);
    } catch (const rmtlens::DomainError& ex) {
      throw ConfigError(ex.what());
    }
    const auto pts = exterior_points(e, opts.points);
    const double closed = rmtlens::verify_gaussian_mother_body(e, pts);
    const double quad = rmtlens::verify_gaussian_mother_body_quadrature(e, pts, opts.nr, opts.ntheta);
    j["model"] = "gaussian";
    j["ellipse"] = {{"alpha", round15(e.alpha)}, {"beta", round15(e.beta)}, {"a", round15(e.a)}};
    j["mass"] = round15(e.area());
    j["points"] = opts.points;
    j["closed_form_error"] = round15(closed);
    j["closed_form_tol"] = 1e-10;
    j["quadrature_error"] = round15(quad);
    j["quadrature_tol"] = 1e-4;
    j["pass"] = closed < 1e-10 && quad < 1e-4;
    return dump(j);
  }
  if (opts.kind != ModelKind::quartic) throw ConfigError("motherbody supports the gaussian and quartic models");
  rmtlens::QuarticParams q{};
  rmtlens::Ellipse e{};
  try {
    q = rmtlens::QuarticParams::from(opts.t, opts.m);
    if (q.phase != rmtlens::QuarticPhase::one_cut) throw ConfigError("motherbody needs a one-cut t > -sqrt(2)");
    e = rmtlens::Ellipse::with_focus(q.a, opts.alpha);
  } catch (const rmtlens::DomainError& ex) {
    throw ConfigError(ex.what());
  }
  const rmtlens::QuarticBodyCoeffs k = rmtlens::quartic_body_coeffs(e, opts.t);
  const auto res = rmtlens::quartic_body_residuals(k, e, opts.t);
  const double min_density = rmtlens::quartic_body_min_density(e, opts.t, opts.m);
  j["model"] = "quartic";
  j["t"] = round15(opts.t);
  j["m"] = round15(opts.m);
  j["ellipse"] = {{"alpha", round15(e.alpha)}, {"beta", round15(e.beta)}, {"a", round15(e.a)}};
  j["coefficients"] = {{"A1", round15(k.A1)}, {"A2", round15(k.A2)}, {"c1", round15(k.c1)},
                       {"c2", round15(k.c2)}, {"c3", round15(k.c3)}};
  j["coefficient_residuals"] = json::array({round15(res[0]), round15(res[1]), round15(res[2])});
  j["sufficient_condition"] = rmtlens::quartic_body_sufficient(e);
  j["min_density"] = round15(min_density);
  if (min_density > 0.0) {
    const auto pts = exterior_points(e, opts.points);
    const double field = rmtlens::verify_quartic_mother_body(e, opts.t, opts.m, pts, opts.nr, opts.ntheta);
    j["mass"] = round15(rmtlens::quartic_body_mass(e, opts.t, opts.m, 64, 128));
    j["points"] = opts.points;
    j["field_error"] = round15(field);
    j["field_tol"] = 1e-5;
    j["pass"] = field < 1e-5;
  } else {
    j["pass"] = false;
  }
  return dump(j);
}

std::string cmd_phasescan(double m, double t_from, double t_to, int steps, Format format) {
  if (steps < 2) throw ConfigError("--steps must be at least 2");
  if (!(m > 0.0)) throw ConfigError("--m must be positive");
  std::vector<double> ts;
  for (int k = 0; k < steps; ++k) ts.push_back(t_from + (t_to - t_from) * k / (steps - 1));
  const rmtlens::PhaseScan scan = rmtlens::phase_transition_scan(m, ts);
  if (format == Format::csv) {
    std::ostringstream out;
    out << "t,phase,label,re,im,kind,residual,boundary\n";
    for (const auto& row : scan.rows) {
      for (const auto& e : row.catalog.entries) {
        out << csv_number(row.t) << ',' << rmtlens::to_string(row.phase) << ',' << e.label << ','
            << csv_number(e.z.real()) << ',' << csv_number(e.z.imag()) << ',' << rmtlens::to_string(e.kind) << ','
            << csv_number(e.residual) << ',' << (e.boundary ? 1 : 0) << '\n';
      }
    }
    return out.str();
  }
  json j;
  j["m"] = round15(m);
  j["rows"] = json::array();
  for (const auto& row : scan.rows) {
    json r{{"t", round15(row.t)}, {"phase", std::string(rmtlens::to_string(row.phase))},
           {"boundary", row.catalog.boundary}, {"images", json::array()}};
    for (const auto& e : row.catalog.entries) {
      r["images"].push_back({{"label", e.label},
                             {"z", complex_json(e.z)},
                             {"kind", std::string(rmtlens::to_string(e.kind))},
                             {"residual", round15(e.residual)},
                             {"boundary", e.boundary}});
    }
    j["rows"].push_back(r);
  }
  j["transition"] = {{"probe", round15(scan.probe)},         {"x_one_cut", round15(scan.x_one_cut)},
                     {"x_two_cut", round15(scan.x_two_cut)}, {"y_one_cut", round15(scan.y_one_cut)},
                     {"y_two_cut", round15(scan.y_two_cut)}, {"x_gap", round15(scan.x_gap)},
                     {"y_gap", round15(scan.y_gap)},         {"x0_flip", scan.x0_flip}};
  if (scan.x0_flip) j["transition"]["x0_flip_t"] = round15(scan.x0_flip_t);
  return dump(j);
}

Scaling physical_to_dimensionless(const PhysicalConfig& cfg) {
  if (!(cfg.D_s > 0.0) || !(cfg.D_d > 0.0) || !(cfg.xi0 > 0.0)) {
    throw ConfigError("D_s, D_d and xi0 must be positive");
  }
  if (!(cfg.D_ds >= 0.0)) throw ConfigError("D_ds must be non-negative");
  return {cfg.xi0 * cfg.D_s / cfg.D_d, 4.0 * cfg.D_d * cfg.D_ds / cfg.D_s};
}

std::string cmd_convert(const PhysicalConfig& cfg) {
  const Scaling s = physical_to_dimensionless(cfg);
  json j;
  j["D_s"] = round15(cfg.D_s);
  j["D_d"] = round15(cfg.D_d);
  j["D_ds"] = round15(cfg.D_ds);
  j["xi0"] = round15(cfg.xi0);
  j["eta0"] = round15(s.eta0);
  j["kappa_factor"] = round15(s.kappa_factor);
  j["kappa_units"] = "G * Sigma";
  return dump(j);
}

}  // namespace lenscli
