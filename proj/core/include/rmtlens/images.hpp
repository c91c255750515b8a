#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rmtlens/spectral.hpp"

namespace rmtlens {

/// Dim images lie on the support, bright images off it. A continuum image is
/// a whole interval mapped onto the source (Gaussian model at p = 1, w = 0).
enum class ImageKind { dim, bright, continuum };

std::string_view to_string(ImageKind kind) noexcept;

struct Image {
  cplx z;
  ImageKind kind = ImageKind::bright;
  double residual = 0.0;
  /// Set when the solution sits within the solver's tube around a cut or on
  /// the unit circle of the Joukowski variable.
  bool boundary = false;
  /// Catalog label such as "x0" or "iy2+"; empty when not classified.
  std::string label;
  /// Only for continuum images: the interval that is imaged as a whole.
  std::optional<Interval> segment;
};

struct ImageSet {
  cplx source;
  std::vector<Image> images;
  std::string model;

  std::size_t count(ImageKind kind) const noexcept;
  std::size_t size() const noexcept { return images.size(); }
  /// Sorts by (Re z, Im z) so that equal inputs give equal outputs.
  void sort();
};

}  // namespace rmtlens
