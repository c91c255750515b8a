#pragma once

#include <complex>
#include <span>
#include <string>
#include <vector>

#include "rmtlens/generic_lens.hpp"
#include "rmtlens/images.hpp"
#include "rmtlens/spectral.hpp"

namespace rmtlens {

/// Phase of the quartic model V = z^4/4 + t z^2/2; the support splits at
/// t = -sqrt(2).
enum class QuarticPhase { one_cut, critical, two_cut };

std::string_view to_string(QuarticPhase phase) noexcept;

/// |t + sqrt(2)| below this is treated as the critical point, so that
/// decimal inputs such as -1.4142136 land on it.
inline constexpr double kCriticalBand = 5e-8;

struct QuarticParams {
  double t;
  double m;
  QuarticPhase phase;
  /// Outer cut endpoint.
  double a;
  /// Inner cut endpoint (two-cut); zero otherwise.
  double b;
  /// Double-root parameter of the one-cut P = (z^2 - a^2)(z^2 + c)^2; zero
  /// otherwise.
  double c;

  static QuarticParams from(double t, double m);
};

LensModel quartic_model(double t, double m);
LensModel quartic_model(const QuarticParams& q);

struct CatalogEntry {
  std::string label;
  cplx z;
  ImageKind kind;
  double residual;
  bool boundary = false;
};

/// Labelled images of the source w = 0. Labels are x0, xd+, xd-, x1+, x1-,
/// iy1+, iy1- (one cut) and x2+, x2-, iy2+, iy2- (two cuts).
struct ImageCatalog {
  double m;
  double t;
  QuarticPhase phase;
  std::vector<CatalogEntry> entries;
  /// Set when an entry sits on a cut endpoint or a table row boundary.
  bool boundary = false;

  bool has(std::string_view label) const noexcept;
  const CatalogEntry* find(std::string_view label) const noexcept;
  /// Sorted label list.
  std::vector<std::string> labels() const;
};

/// Label sets of the one-cut classification table, as predicates on (m, t).
std::vector<std::string> expected_labels_one_cut(double m, double t);
/// Label sets of the two-cut classification table.
std::vector<std::string> expected_labels_two_cut(double m, double t);

/// Images of w = 0 for t >= -sqrt(2), solved from the axis equations.
ImageCatalog images_origin_one_cut(double m, double t);
/// Images of w = 0 for t <= -sqrt(2), from the closed forms.
ImageCatalog images_origin_two_cut(double m, double t);
/// Dispatches on the phase of t.
ImageCatalog images_origin(double m, double t);

/// Dim images by real roots on the cuts, bright images by the numeric
/// solver. For w = 0 the images are labelled from the catalog and take its
/// axis-exact positions.
ImageSet images_quartic(const QuarticParams& q, cplx w, const SolverConfig& cfg = {});

struct PhaseScanRow {
  double t;
  QuarticPhase phase;
  ImageCatalog catalog;
};

struct PhaseScan {
  double m;
  std::vector<PhaseScanRow> rows;
  /// One-sided limits of the real and imaginary bright pairs at t = -sqrt(2),
  /// refined at distance `probe` on each side. NaN when a pair does not exist.
  double probe = 1e-6;
  double x_one_cut = 0.0;
  double x_two_cut = 0.0;
  double y_one_cut = 0.0;
  double y_two_cut = 0.0;
  double x_gap = 0.0;
  double y_gap = 0.0;
  /// Kind of x0 changes between consecutive rows.
  bool x0_flip = false;
  /// Midpoint of the first interval in which x0 changes kind.
  double x0_flip_t = 0.0;
};

/// Image catalogs over `t_values` together with the continuity diagnostics
/// across the phase transition.
PhaseScan phase_transition_scan(double m, std::span<const double> t_values);

}  // namespace rmtlens
