#include "rmtlens/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "rmtlens/errors.hpp"
#include "rmtlens/quadrature.hpp"

namespace rmtlens {

namespace {

poly::PolyCoeffs derivative_of(const std::vector<double>& t) {
  // V(x) = sum t_i x^i  =>  V'(x) = sum i t_i x^{i-1}
  std::vector<cplx> d(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) d[i] = static_cast<double>(i + 1) * t[i];
  return poly::PolyCoeffs(std::move(d));
}

bool is_real_root(cplx r) { return std::abs(r.imag()) <= 1e-9 * std::max(1.0, std::abs(r)); }

// Factor value (z - r)^{m/2} on the principal branch for odd m.
cplx factor_value(cplx z, const SpectralFactor& f) {
  const cplx d = z - f.root;
  cplx v = 1.0;
  for (int k = 0; k < f.multiplicity / 2; ++k) v *= d;
  if (f.multiplicity % 2 == 1) v *= std::sqrt(d);
  return v;
}

cplx factor_derivative(cplx z, const SpectralFactor& f) {
  const cplx d = z - f.root;
  const double half = 0.5 * f.multiplicity;
  // (m/2) (z - r)^{m/2 - 1}
  return half * factor_value(z, f) / d;
}

// Real points are evaluated as limits from above; a negative zero imaginary
// part would otherwise select the lower side factor by factor.
cplx upper_side(cplx z) { return z.imag() == 0.0 ? cplx{z.real(), 0.0} : z; }

}  // namespace

// ---------------------------------------------------------------- Potential

Potential::Potential(std::vector<double> coefficients) : t_(std::move(coefficients)) {
  while (!t_.empty() && t_.back() == 0.0) t_.pop_back();
  if (t_.size() < 2 || t_.size() % 2 != 0) {
    throw DomainError("Potential: degree must be even and at least 2");
  }
  if (!(t_.back() > 0.0)) throw DomainError("Potential: leading coefficient must be positive");
  dv_ = derivative_of(t_);
  d2v_ = dv_.derivative();
}

double Potential::value(double x) const noexcept {
  double s = 0.0;
  for (std::size_t i = t_.size(); i-- > 0;) s = (s + t_[i]) * x;
  return s;
}

cplx Potential::value(cplx z) const noexcept {
  cplx s = 0.0;
  for (std::size_t i = t_.size(); i-- > 0;) s = (s + t_[i]) * z;
  return s;
}

double Potential::derivative(double x) const noexcept { return dv_(x); }
cplx Potential::derivative(cplx z) const noexcept { return dv_(z); }
cplx Potential::second_derivative(cplx z) const noexcept { return d2v_(z); }

// -------------------------------------------------------------- SupportCuts

SupportCuts::SupportCuts(std::vector<Interval> intervals) : cuts_(std::move(intervals)) {
  if (cuts_.empty()) throw DomainError("SupportCuts: at least one interval is required");
  for (std::size_t i = 0; i < cuts_.size(); ++i) {
    if (!(cuts_[i].lo < cuts_[i].hi)) throw DomainError("SupportCuts: each interval needs lo < hi");
    if (i > 0 && !(cuts_[i - 1].hi < cuts_[i].lo)) {
      throw DomainError("SupportCuts: intervals must be ordered and disjoint");
    }
  }
}

bool SupportCuts::contains(double x, double tol) const noexcept {
  return std::any_of(cuts_.begin(), cuts_.end(), [=](const Interval& c) { return c.contains(x, tol); });
}

double SupportCuts::project(cplx z) const noexcept {
  double best = cuts_.front().lo;
  double best_d = std::numeric_limits<double>::infinity();
  for (const Interval& c : cuts_) {
    const double x = std::clamp(z.real(), c.lo, c.hi);
    const double d = std::abs(z - cplx{x, 0.0});
    if (d < best_d) {
      best_d = d;
      best = x;
    }
  }
  return best;
}

double SupportCuts::distance(cplx z) const noexcept { return std::abs(z - cplx{project(z), 0.0}); }

double SupportCuts::max_abs_endpoint() const noexcept {
  return std::max(std::abs(cuts_.front().lo), std::abs(cuts_.back().hi));
}

// ------------------------------------------------------- SpectralPolynomial

SpectralPolynomial::SpectralPolynomial(double leading, std::vector<SpectralFactor> factors)
    : leading_(leading), factors_(std::move(factors)) {
  if (!(leading_ > 0.0)) throw DomainError("SpectralPolynomial: leading coefficient must be positive");
  poly::PolyCoeffs p(std::vector<cplx>{cplx{leading_}});
  for (const SpectralFactor& f : factors_) {
    if (f.multiplicity < 1) throw DomainError("SpectralPolynomial: multiplicity must be positive");
    for (int k = 0; k < f.multiplicity; ++k) p = p * poly::linear_factor(f.root);
  }
  // Real polynomial: drop rounding residue in the imaginary parts.
  std::vector<cplx> c = p.coefficients();
  for (cplx& v : c) v = cplx{v.real(), 0.0};
  coeffs_ = poly::PolyCoeffs(std::move(c));
}

SpectralPolynomial SpectralPolynomial::from_coefficients(std::span<const double> ascending) {
  const poly::PolyCoeffs p = poly::PolyCoeffs::from_real(ascending);
  if (p.degree() < 1) throw DomainError("SpectralPolynomial: degree must be at least 1");
  const double lead = p.leading().real();
  std::vector<SpectralFactor> factors;
  for (const poly::RootCluster& cl : poly::clustered_roots(p, 1e-7)) {
    cplx r = cl.value;
    if (is_real_root(r)) r = cplx{r.real(), 0.0};
    factors.push_back({r, cl.multiplicity});
  }
  return SpectralPolynomial(lead, std::move(factors));
}

int SpectralPolynomial::degree() const noexcept {
  int d = 0;
  for (const SpectralFactor& f : factors_) d += f.multiplicity;
  return d;
}

cplx SpectralPolynomial::sqrt_product(cplx z) const noexcept {
  z = upper_side(z);
  cplx v = std::sqrt(leading_);
  for (const SpectralFactor& f : factors_) v *= factor_value(z, f);
  return v;
}

cplx SpectralPolynomial::sqrt_product_derivative(cplx z) const noexcept {
  z = upper_side(z);
  cplx total = 0.0;
  for (std::size_t k = 0; k < factors_.size(); ++k) {
    cplx term = factor_derivative(z, factors_[k]);
    for (std::size_t j = 0; j < factors_.size(); ++j) {
      if (j != k) term *= factor_value(z, factors_[j]);
    }
    total += term;
  }
  return std::sqrt(leading_) * total;
}

// ---------------------------------------------------------------- LensModel

LensModel::LensModel(Potential potential, SpectralPolynomial spectral, SupportCuts cuts, double mass,
                     ModelFamily family, std::string description)
    : potential_(std::move(potential)),
      spectral_(std::move(spectral)),
      cuts_(std::move(cuts)),
      mass_(mass),
      family_(family),
      description_(std::move(description)) {
  if (!(mass_ > 0.0)) throw DomainError("LensModel: mass must be positive");
  const int p2 = potential_.degree();
  if (spectral_.degree() != 2 * p2 - 2) {
    throw DomainError("LensModel: deg P must equal 2 deg V - 2");
  }

  // Odd-multiplicity roots are the branch points; they must be exactly the
  // cut endpoints.
  const double scale = std::max(1.0, cuts_.max_abs_endpoint());
  std::vector<double> branch_points;
  for (const SpectralFactor& f : spectral_.factors()) {
    if (f.multiplicity % 2 == 0) continue;
    if (!is_real_root(f.root)) throw DomainError("LensModel: branch point of P off the real axis");
    branch_points.push_back(f.root.real());
  }
  std::sort(branch_points.begin(), branch_points.end());
  std::vector<double> endpoints;
  for (const Interval& c : cuts_.intervals()) {
    endpoints.push_back(c.lo);
    endpoints.push_back(c.hi);
  }
  if (branch_points.size() != endpoints.size()) {
    throw DomainError("LensModel: cut endpoints do not match the simple roots of P");
  }
  for (std::size_t i = 0; i < endpoints.size(); ++i) {
    if (std::abs(branch_points[i] - endpoints[i]) > 1e-8 * scale) {
      throw DomainError("LensModel: cut endpoints do not match the simple roots of P");
    }
  }

  // Global sign of the factor product: at a far probe the physical branch
  // nearly cancels V'.
  const cplx probe = std::max(1e6, 1e3 * scale) * cplx{1.0, 1.0};
  const cplx dv = potential_.derivative(probe);
  const cplx sq = spectral_.sqrt_product(probe);
  sign_ = std::abs(dv - sq) <= std::abs(dv + sq) ? 1.0 : -1.0;

  // V'^2 - P: coefficients above 2p - 2 must cancel.
  const poly::PolyCoeffs& dvp = potential_.derivative_poly();
  const poly::PolyCoeffs full = dvp * dvp - spectral_.coefficients();
  const double ref = (dvp * dvp).max_abs_coefficient();
  std::vector<cplx> kept;
  for (int k = 0; k <= full.degree(); ++k) {
    const cplx v = full[static_cast<std::size_t>(k)];
    if (k <= p2 - 2) {
      kept.push_back(cplx{v.real(), 0.0});
    } else if (std::abs(v) > 1e-8 * ref) {
      throw DomainError("LensModel: P is inconsistent with V (Cauchy transform not O(1/z))");
    }
  }
  numerator_ = poly::PolyCoeffs(std::move(kept));

  const double norm = check_normalization(*this);
  if (std::abs(norm - 1.0) > 1e-9) {
    throw DomainError("LensModel: density is not unit-normalized (integral = " +
                      std::to_string(norm) + ")");
  }
}

// --------------------------------------------------------------- operations

double reduced_density(const LensModel& model, std::size_t cut_index, double x) {
  const Interval& cut = model.cuts().intervals().at(cut_index);
  const auto& factors = model.spectral().factors();
  double v = std::sqrt(model.spectral().leading());
  const double tol = 1e-8 * std::max(1.0, model.cuts().max_abs_endpoint());
  bool used_lo = false;
  bool used_hi = false;
  for (const SpectralFactor& f : factors) {
    int mult = f.multiplicity;
    if (f.root.imag() == 0.0) {
      if (!used_lo && std::abs(f.root.real() - cut.lo) <= tol && mult % 2 == 1) {
        --mult;
        used_lo = true;
      } else if (!used_hi && std::abs(f.root.real() - cut.hi) <= tol && mult % 2 == 1) {
        --mult;
        used_hi = true;
      }
    }
    v *= std::pow(std::abs(cplx{x} - f.root), 0.5 * mult);
  }
  return v / std::numbers::pi;
}

double eval_density(const LensModel& model, double x) {
  const auto& cuts = model.cuts().intervals();
  const double tol = 1e-12 * std::max(1.0, model.cuts().max_abs_endpoint());
  for (std::size_t i = 0; i < cuts.size(); ++i) {
    if (!cuts[i].contains(x, tol)) continue;
    const double xc = std::clamp(x, cuts[i].lo, cuts[i].hi);
    return reduced_density(model, i, xc) * std::sqrt((xc - cuts[i].lo) * (cuts[i].hi - xc));
  }
  throw DomainError("eval_density: x lies outside the support");
}

std::vector<DensitySample> sample_density(const LensModel& model, int per_cut) {
  if (per_cut < 2) throw DomainError("sample_density: need at least two samples per cut");
  std::vector<DensitySample> out;
  for (const Interval& c : model.cuts().intervals()) {
    for (int k = 0; k < per_cut; ++k) {
      // Sine form keeps the midpoint exactly at the center.
      const double s = std::sin(std::numbers::pi * (static_cast<double>(k) / (per_cut - 1) - 0.5));
      double x = c.center() + 0.5 * c.length() * s;
      if (k == 0) x = c.lo;
      if (k == per_cut - 1) x = c.hi;
      out.push_back({x, eval_density(model, x)});
    }
  }
  return out;
}

cplx integrate_density(const LensModel& model, const std::function<cplx(double)>& f, int nodes) {
  const quad::Rule rule = quad::gauss_chebyshev_second(nodes);
  cplx total = 0.0;
  const auto& cuts = model.cuts().intervals();
  for (std::size_t i = 0; i < cuts.size(); ++i) {
    const double h = 0.5 * cuts[i].length();
    const double c = cuts[i].center();
    cplx s = 0.0;
    for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
      const double x = c + h * rule.nodes[k];
      s += rule.weights[k] * reduced_density(model, i, x) * f(x);
    }
    total += h * h * s;
  }
  return total;
}

double check_normalization(const LensModel& model, int nodes) {
  auto one = [](double) { return cplx{1.0}; };
  const double fine = integrate_density(model, one, nodes).real();
  const double coarse = integrate_density(model, one, std::max(1, nodes / 2)).real();
  if (!std::isfinite(fine) || std::abs(fine - coarse) > 1e-10) {
    throw NumericError("check_normalization: quadrature did not converge", fine);
  }
  return fine;
}

cplx branch_sqrt_P(const LensModel& model, cplx z) {
  if (model.cuts().distance(z) <= kBranchEpsilon * std::max(1.0, model.cuts().max_abs_endpoint())) {
    throw BranchAmbiguityError("branch_sqrt_P: point lies on or too close to the support");
  }
  return model.branch_sign() * model.spectral().sqrt_product(z);
}

cplx cauchy_transform_sheet(const LensModel& model, cplx z) {
  const cplx dv = model.potential().derivative(z);
  const cplx sq = model.branch_sign() * model.spectral().sqrt_product(z);
  const cplx direct = dv - sq;
  if (std::abs(direct) < 0.5 * std::abs(dv)) {
    // Cancellation regime: (V' - sqrt P) = (V'^2 - P) / (V' + sqrt P).
    return model.loop_numerator()(z) / (dv + sq);
  }
  return direct;
}

cplx cauchy_transform(const LensModel& model, cplx z, MassScaling scaling) {
  const double factor = scaling == MassScaling::total ? model.mass() : 1.0;
  const double eps = kBranchEpsilon * std::max(1.0, model.cuts().max_abs_endpoint());
  if (model.cuts().distance(z) <= eps) {
    return factor * model.potential().derivative(cplx{model.cuts().project(z), 0.0});
  }
  return factor * cauchy_transform_sheet(model, z);
}

cplx cauchy_transform_derivative(const LensModel& model, cplx z) {
  return model.potential().second_derivative(z) -
         model.branch_sign() * model.spectral().sqrt_product_derivative(z);
}

}  // namespace rmtlens
