#pragma once

#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include "rmtlens/images.hpp"
#include "rmtlens/spectral.hpp"

namespace rmtlens {

/// U(z) = -integral of rho(x) ln|z - x| over the cuts, for the unit-mass
/// density. Closed form for the Gaussian family, tanh-sinh quadrature
/// otherwise. Finite on the cuts.
double log_potential(const LensModel& model, cplx z);

/// Same integral, always by quadrature; each cut is split at the point
/// nearest to z.
double log_potential_quadrature(const LensModel& model, cplx z, double tol = 1e-13);

/// tau(z) = |z - w|^2 / 2 + m U(z), defined up to an additive constant.
double time_delay(const LensModel& model, cplx w, cplx z);

struct DelayEntry {
  cplx z;
  double tau;
  ImageKind kind;
  std::string label;
};

struct DelayPair {
  std::size_t first;
  std::size_t second;
  /// tau(second) - tau(first).
  double delta;
};

struct DelayReport {
  cplx source;
  std::vector<DelayEntry> entries;
  std::vector<DelayPair> pairs;
};

/// Delays of every point image in `images` and all pairwise differences.
DelayReport delay_report(const LensModel& model, const ImageSet& images);

/// Difference of two dim images from the potential alone:
/// tau(x2) - tau(x1) = (|x2 - w|^2 - |x1 - w|^2)/2 + m (V(x1) - V(x2)).
double dim_pair_delay(const LensModel& model, cplx w, double x1, double x2);

/// tau of the imaginary pair minus tau of the real pair of the Gaussian
/// Einstein cross (w = 0): (m/2) ln((m - a^2/4)/(m + a^2/4)). Needs m > a^2/4.
double gaussian_cross_delay(double a, double m);

/// Closed form of tau(iy2) - tau(0) for the two-cut quartic model, valid for
/// m > 1/sqrt(2) and -m - 1/(2m) < t < -sqrt(2).
double relative_delay_two_cut(double m, double t);

/// The same difference from y^2/2 + m * integral_0^y Im omega(is) ds.
double relative_delay_two_cut_quadrature(double m, double t);

}  // namespace rmtlens
