#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "lenscli/commands.hpp"
#include "lenscli/model_spec.hpp"
#include "rmtlens/errors.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitSolver = 3;

// Raw string values of the model flags; parsed after CLI11 is done so that
// the error text can name the offending value.
struct ModelFlags {
  std::string model = "gaussian";
  std::optional<double> a;
  std::optional<double> m;
  std::optional<double> t;
  std::optional<double> p;
  std::string potential;
  std::string spectral;
  std::string cuts;

  lenscli::ModelSpec spec() const {
    lenscli::ModelSpec s;
    s.kind = lenscli::parse_model_kind(model);
    s.a = a;
    s.m = m;
    s.t = t;
    s.p = p;
    if (!potential.empty()) s.potential = lenscli::parse_list(potential);
    if (!spectral.empty()) s.spectral = lenscli::parse_list(spectral);
    if (!cuts.empty()) s.cuts = lenscli::parse_cuts(cuts);
    return s;
  }
};

void add_model_flags(CLI::App* cmd, ModelFlags& f) {
  cmd->add_option("--model", f.model, "gaussian | quartic | generic")->capture_default_str();
  cmd->add_option("--a", f.a, "Gaussian cut half-width");
  cmd->add_option("--m", f.m, "Total lens mass");
  cmd->add_option("--t", f.t, "Quartic coupling t");
  cmd->add_option("--p", f.p, "Gaussian ratio p = 2m/a^2 (instead of --m)");
  cmd->add_option("--potential", f.potential, "Generic: t_1,...,t_2p");
  cmd->add_option("--spectral", f.spectral, "Generic: ascending coefficients of P");
  cmd->add_option("--cuts", f.cuts, "Generic: lo:hi,lo:hi,...");
}

void add_solver_flags(CLI::App* cmd, lenscli::SolveOptions& s) {
  cmd->add_option("--seed-grid", s.seed_grid, "Seeds per axis for the numeric solver")->capture_default_str();
  cmd->add_option("--tol", s.tol, "Newton step tolerance");
  cmd->add_flag("--numeric", s.numeric, "Gaussian: use the seeded solver");
}

// Expands "--config FILE" into --key=value tokens placed right after the
// subcommand name, so that flags given on the command line win.
std::vector<std::string> expand_config(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  std::vector<std::string> from_file;
  for (std::size_t i = 0; i < args.size(); ++i) {
    std::string path;
    if (args[i] == "--config" && i + 1 < args.size()) {
      path = args[i + 1];
      args.erase(args.begin() + static_cast<long>(i), args.begin() + static_cast<long>(i) + 2);
    } else if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
      args.erase(args.begin() + static_cast<long>(i));
    } else {
      continue;
    }
    std::ifstream in(path);
    if (!in) throw lenscli::ConfigError("cannot read config file '" + path + "'");
    std::string line;
    while (std::getline(in, line)) {
      const auto first = line.find_first_not_of(" \t");
      if (first == std::string::npos || line[first] == '#' || line[first] == ';') continue;
      const auto eq = line.find('=');
      if (eq == std::string::npos) throw lenscli::ConfigError("config line without '=': " + line);
      auto strip = [](std::string s) {
        const auto b = s.find_first_not_of(" \t");
        const auto e = s.find_last_not_of(" \t\r");
        return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
      };
      from_file.push_back("--" + strip(line.substr(0, eq)) + "=" + strip(line.substr(eq + 1)));
    }
    --i;
  }
  if (!from_file.empty()) {
    if (args.empty()) throw lenscli::ConfigError("--config needs a subcommand");
    args.insert(args.begin() + 1, from_file.begin(), from_file.end());
  }
  return args;
}

void emit(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::fwrite(text.data(), 1, text.size(), stdout);
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw lenscli::ConfigError("cannot write '" + path + "'");
  out << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lens equation solver for random-matrix eigenvalue densities", "lenscli"};
  app.require_subcommand(1);
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

  std::string out_path;
  std::string format_name = "json";
  std::string source_text = "0,0";
  ModelFlags model;
  lenscli::SolveOptions solve;

  auto common = [&](CLI::App* cmd, bool with_format) {
    add_model_flags(cmd, model);
    cmd->add_option("--out", out_path, "Write to this file instead of stdout");
    if (with_format) cmd->add_option("--format", format_name, "json | csv")->capture_default_str();
  };

  CLI::App* images = app.add_subcommand("images", "Solve the lens equation for one source");
  common(images, true);
  add_solver_flags(images, solve);
  images->add_option("--source", source_text, "Source position re,im")->capture_default_str();

  std::string grid_text = "0:1:0.05";
  std::string grid_im_text;
  int threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  CLI::App* countmap = app.add_subcommand("countmap", "Image counts over a grid of sources (CSV)");
  common(countmap, false);
  add_solver_flags(countmap, solve);
  countmap->add_option("--grid", grid_text, "lo:hi:step for both axes")->capture_default_str();
  countmap->add_option("--grid-im", grid_im_text, "lo:hi:step for the imaginary axis");
  countmap->add_option("--threads", threads, "Worker threads");

  int samples = 101;
  CLI::App* density = app.add_subcommand("density", "Sample the eigenvalue density");
  common(density, true);
  density->add_option("--samples", samples, "Samples per cut")->capture_default_str();

  std::string areas_text = "1";
  CLI::App* galaxy = app.add_subcommand("galaxy", "Edge-on galaxy profile curves (CSV)");
  common(galaxy, false);
  galaxy->add_option("--S", areas_text, "Area, or one area per cut")->capture_default_str();
  galaxy->add_option("--samples", samples, "Samples per cut")->capture_default_str();

  bool pairs = false;
  CLI::App* delays = app.add_subcommand("delays", "Time delays of the images of one source");
  common(delays, true);
  add_solver_flags(delays, solve);
  delays->add_option("--source", source_text, "Source position re,im")->capture_default_str();
  delays->add_flag("--pairs", pairs, "Include pairwise differences");

  lenscli::MotherBodyOptions mb;
  CLI::App* motherbody = app.add_subcommand("motherbody", "Check an elliptic mother body");
  motherbody->add_option("--model", model.model, "gaussian | quartic")->capture_default_str();
  motherbody->add_option("--alpha", mb.alpha, "Semi-major axis")->required();
  motherbody->add_option("--beta", mb.beta, "Semi-minor axis (gaussian)");
  motherbody->add_option("--t", mb.t, "Quartic coupling t (one-cut)");
  motherbody->add_option("--m", mb.m, "Quartic mass")->capture_default_str();
  motherbody->add_option("--points", mb.points, "Exterior test points")->capture_default_str();
  motherbody->add_option("--nr", mb.nr, "Radial quadrature nodes")->capture_default_str();
  motherbody->add_option("--ntheta", mb.ntheta, "Angular quadrature nodes")->capture_default_str();
  motherbody->add_option("--out", out_path, "Write to this file instead of stdout");

  double scan_m = 1.0;
  double t_from = -1.5;
  double t_to = -1.3;
  int steps = 21;
  CLI::App* phasescan = app.add_subcommand("phasescan", "Image catalogs of w = 0 across the quartic transition");
  phasescan->add_option("--m", scan_m, "Mass")->capture_default_str();
  phasescan->add_option("--t-from", t_from, "First t")->capture_default_str();
  phasescan->add_option("--t-to", t_to, "Last t")->capture_default_str();
  phasescan->add_option("--steps", steps, "Number of t values")->capture_default_str();
  phasescan->add_option("--format", format_name, "json | csv")->capture_default_str();
  phasescan->add_option("--out", out_path, "Write to this file instead of stdout");

  lenscli::PhysicalConfig phys{1.0, 1.0, 1.0, 1.0};
  CLI::App* convert = app.add_subcommand("convert", "Physical distances to dimensionless scales");
  convert->add_option("--D-s", phys.D_s, "Observer-source distance")->required();
  convert->add_option("--D-d", phys.D_d, "Observer-lens distance")->required();
  convert->add_option("--D-ds", phys.D_ds, "Lens-source distance")->required();
  convert->add_option("--xi0", phys.xi0, "Lens-plane length scale")->capture_default_str();
  convert->add_option("--out", out_path, "Write to this file instead of stdout");

  try {
    std::vector<std::string> args = expand_config(argc, argv);
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  } catch (const lenscli::ConfigError& e) {
    std::cerr << "lenscli: " << e.what() << '\n';
    return kExitConfig;
  }

  try {
    std::string text;
    // Parse everything that can be a config mistake before solving.
    const lenscli::Format format = lenscli::parse_format(format_name);
    if (*images) {
      text = lenscli::cmd_images(model.spec(), lenscli::parse_complex(source_text), solve, format);
    } else if (*countmap) {
      const lenscli::GridAxis re = lenscli::parse_grid(grid_text);
      const lenscli::GridAxis im = grid_im_text.empty() ? re : lenscli::parse_grid(grid_im_text);
      text = lenscli::cmd_countmap(model.spec(), re, im, solve, threads);
    } else if (*density) {
      text = lenscli::cmd_density(model.spec(), samples, format);
    } else if (*galaxy) {
      text = lenscli::cmd_galaxy(model.spec(), lenscli::parse_list(areas_text), samples);
    } else if (*delays) {
      text = lenscli::cmd_delays(model.spec(), lenscli::parse_complex(source_text), pairs, solve, format);
    } else if (*motherbody) {
      mb.kind = lenscli::parse_model_kind(model.model);
      text = lenscli::cmd_motherbody(mb);
    } else if (*phasescan) {
      text = lenscli::cmd_phasescan(scan_m, t_from, t_to, steps, format);
    } else if (*convert) {
      text = lenscli::cmd_convert(phys);
    }
    emit(text, out_path);
  } catch (const lenscli::ConfigError& e) {
    std::cerr << "lenscli: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "lenscli: " << e.what() << '\n';
    return kExitSolver;
  }
  return 0;
}
