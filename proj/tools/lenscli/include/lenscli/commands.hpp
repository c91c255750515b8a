#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "lenscli/model_spec.hpp"
#include "rmtlens/generic_lens.hpp"

namespace lenscli {

enum class Format { json, csv };

Format parse_format(const std::string& name);

struct SolveOptions {
  /// Seeds per axis for the numeric bright-image search.
  int seed_grid = 64;
  /// Newton step tolerance; the library default when unset.
  std::optional<double> tol;
  /// Gaussian models only: use the seeded solver instead of the Joukowski
  /// route.
  bool numeric = false;

  rmtlens::SolverConfig solver_config() const;
};

std::string cmd_images(const ModelSpec& spec, std::complex<double> source, const SolveOptions& opts, Format format);

/// One row per grid cell in row-major order (imaginary part outer). For the
/// Gaussian family the grid is over the reduced source u = w / a, otherwise
/// over w itself. Cells are solved on `threads` workers.
std::string cmd_countmap(const ModelSpec& spec, const GridAxis& re, const GridAxis& im, const SolveOptions& opts,
                         int threads);

std::string cmd_density(const ModelSpec& spec, int samples, Format format);

struct ProfileComponent {
  rmtlens::Interval cut;
  double area;
  double mass;
  /// (X, Y) with Y >= 0; the boundary is the curve (X, +-Y).
  std::vector<std::pair<double, double>> upper;
};

/// Edge-on profile Y = (S_i / 2)(m / m_i) rho(X) per cut. A single area is
/// split between the cuts in proportion to their masses.
std::vector<ProfileComponent> galaxy_profile(const ModelSpec& spec, const std::vector<double>& areas, int samples);

std::string cmd_galaxy(const ModelSpec& spec, const std::vector<double>& areas, int samples);

std::string cmd_delays(const ModelSpec& spec, std::complex<double> source, bool pairs, const SolveOptions& opts,
                       Format format);

struct MotherBodyOptions {
  ModelKind kind = ModelKind::gaussian;
  double alpha = 0.0;
  /// Gaussian only.
  double beta = 0.0;
  /// Quartic only; the ellipse foci are the one-cut endpoints at this t.
  double t = 0.0;
  double m = 1.0;
  int points = 20;
  int nr = 512;
  int ntheta = 512;
};

std::string cmd_motherbody(const MotherBodyOptions& opts);

std::string cmd_phasescan(double m, double t_from, double t_to, int steps, Format format);

struct PhysicalConfig {
  double D_s;
  double D_d;
  double D_ds;
  double xi0;
};

struct Scaling {
  /// Source-plane length scale xi0 D_s / D_d.
  double eta0;
  /// kappa = kappa_factor * G * Sigma(xi0 x).
  double kappa_factor;
};

/// Throws ConfigError unless D_s, D_d, xi0 > 0 and D_ds >= 0.
Scaling physical_to_dimensionless(const PhysicalConfig& cfg);

std::string cmd_convert(const PhysicalConfig& cfg);

}  // namespace lenscli
