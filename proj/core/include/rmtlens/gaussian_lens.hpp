#pragma once

#include <complex>

#include "rmtlens/images.hpp"
#include "rmtlens/spectral.hpp"

namespace rmtlens {

/// Gaussian (semicircle) lens: V = z^2/a^2 on the cut [-a, a], p = 2m/a^2.
struct GaussianParams {
  double a;
  double m;
  double p;
  /// p == 1: the whole cut is imaged onto w = 0.
  bool degenerate;

  static GaussianParams from(double a, double m);
};

LensModel gaussian_model(double a, double m);

/// x = w / (1 - p) when w is real and |w| <= a|1 - p|.
ImageSet dim_images_gaussian(const GaussianParams& params, cplx w);

/// Bright images through the Joukowski variable Z, z = (a/2)(Z + 1/Z),
/// |Z| < 1. Solutions with |Z| within 1e-9 of 1 are kept with the boundary
/// flag set.
ImageSet bright_images_gaussian(const GaussianParams& params, cplx w);

/// Dim and bright images together, sorted.
ImageSet images_gaussian(const GaussianParams& params, cplx w);

/// Discriminant of the p = 1/2 modulus cubic in the reduced source u = w/a.
/// Negative inside the three-image region; vanishes on the critical curve.
double discriminant_half(double alpha, double beta);

/// Number of bright images for p = 1/2 at reduced source u = w/a, from the
/// axis rules and the discriminant curve.
int count_regions_half(cplx u);

}  // namespace rmtlens
