#pragma once

#include <complex>

#include "rmtlens/images.hpp"
#include "rmtlens/spectral.hpp"

namespace rmtlens {

/// Knobs of the seeded Newton search for bright images. The seed grid has no
/// completeness guarantee; raising `seed_resolution` is the usual remedy when
/// a configuration looks incomplete.
struct SolverConfig {
  /// Seeds per axis of the square grid.
  int seed_resolution = 64;
  /// Half-width of the seed square; 0 picks max(3R, |w| + R, |w| + 2 sqrt(m))
  /// with R the largest cut endpoint.
  double seed_half_width = 0.0;
  double newton_tol = 1e-13;
  double residual_tol = 1e-11;
  int max_iter = 80;
  double dedup_radius = 1e-8;
  /// Seeds closer than this to a cut are skipped.
  double cut_tube = 1e-6;
  /// Extra seeds are placed this far above and below every cut.
  double ring_distance = 1e-4;

  /// Throws DomainError unless newton_tol <= 1e-10, dedup_radius >= 10 newton_tol
  /// and the counts are positive.
  void validate() const;
};

/// Real roots of x - m V'(x) = w on the cuts. Empty for non-real w. When the
/// dim equation degenerates to 0 = 0 every cut is reported as a continuum.
ImageSet dim_images(const LensModel& model, cplx w);

/// Bright images by damped Newton from grid and ring seeds. Every reported
/// image has residual below 1e-10.
ImageSet bright_images_numeric(const LensModel& model, cplx w, const SolverConfig& cfg = {});

/// Dim and bright images together, sorted.
ImageSet all_images_numeric(const LensModel& model, cplx w, const SolverConfig& cfg = {});

/// Residual of the lens equation at z: the dim branch for real z on a cut,
/// the bright branch elsewhere.
double residual(const LensModel& model, cplx w, cplx z);

/// Residual of the bright branch only; on a cut it uses the upper-side limit.
double bright_residual(const LensModel& model, cplx w, cplx z);

}  // namespace rmtlens
