#include "rmtlens/polyroots.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

#include <Eigen/Eigenvalues>

#include "rmtlens/errors.hpp"

namespace rmtlens::poly {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

void trim(std::vector<cplx>& c) {
  while (!c.empty() && c.back() == cplx{}) c.pop_back();
}

// Horner evaluation of p and p' together.
std::pair<cplx, cplx> eval_with_derivative(const std::vector<cplx>& c, cplx z) {
  cplx p = c.back();
  cplx dp = 0.0;
  for (std::size_t k = c.size() - 1; k-- > 0;) {
    dp = dp * z + p;
    p = p * z + c[k];
  }
  return {p, dp};
}

// Sum |c_k| |z|^k, the scale of rounding errors in Horner's rule.
double abs_eval(const std::vector<cplx>& c, double r) {
  double s = 0.0;
  for (std::size_t k = c.size(); k-- > 0;) s = s * r + std::abs(c[k]);
  return s;
}

bool aberth(const std::vector<cplx>& c, std::vector<cplx>& z) {
  const int n = static_cast<int>(c.size()) - 1;
  const double radius = std::pow(std::abs(c.front() / c.back()), 1.0 / n);
  z.resize(n);
  for (int k = 0; k < n; ++k) {
    const double theta = 2.0 * std::numbers::pi * k / n + 0.4;
    z[k] = std::polar(radius, theta);
  }

  std::vector<bool> done(n, false);
  for (int iter = 0; iter < 800; ++iter) {
    bool all_done = true;
    for (int k = 0; k < n; ++k) {
      if (done[k]) continue;
      const auto [p, dp] = eval_with_derivative(c, z[k]);
      if (std::abs(p) <= 4.0 * kEps * abs_eval(c, std::abs(z[k]))) {
        done[k] = true;
        continue;
      }
      cplx s = 0.0;
      for (int j = 0; j < n; ++j) {
        if (j != k) s += 1.0 / (z[k] - z[j]);
      }
      const cplx ratio = p / dp;
      cplx step = ratio / (1.0 - ratio * s);
      if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) {
        step = cplx{1e-8 * (1.0 + std::abs(z[k])), 1e-8};
      }
      z[k] -= step;
      if (std::abs(step) <= 2.0 * kEps * std::abs(z[k])) done[k] = true;
      all_done = all_done && done[k];
    }
    if (all_done) return true;
  }
  return false;
}

std::vector<cplx> companion_roots(const std::vector<cplx>& c) {
  const int n = static_cast<int>(c.size()) - 1;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
  for (int i = 1; i < n; ++i) m(i, i - 1) = 1.0;
  for (int i = 0; i < n; ++i) m(i, n - 1) = -c[i] / c.back();
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(m, false);
  std::vector<cplx> out(n);
  for (int i = 0; i < n; ++i) out[i] = solver.eigenvalues()[i];
  return out;
}

void newton_polish(const std::vector<cplx>& c, cplx& r) {
  for (int it = 0; it < 4; ++it) {
    const auto [p, dp] = eval_with_derivative(c, r);
    if (dp == cplx{}) return;
    const cplx next = r - p / dp;
    if (std::abs(eval_with_derivative(c, next).first) < std::abs(p)) {
      r = next;
    } else {
      return;
    }
  }
}

double worst_scaled_residual(const PolyCoeffs& p, const std::vector<cplx>& rs) {
  double worst = 0.0;
  const double scale = p.max_abs_coefficient();
  for (const cplx& r : rs) {
    const double bound = scale * std::pow(std::max(1.0, std::abs(r)), p.degree());
    worst = std::max(worst, std::abs(p(r)) / bound);
  }
  return worst;
}

}  // namespace

PolyCoeffs::PolyCoeffs(std::vector<cplx> ascending) : c_(std::move(ascending)) { trim(c_); }

PolyCoeffs PolyCoeffs::from_real(std::span<const double> ascending) {
  return PolyCoeffs(std::vector<cplx>(ascending.begin(), ascending.end()));
}

bool PolyCoeffs::is_real(double tol) const noexcept {
  return std::all_of(c_.begin(), c_.end(), [tol](cplx v) { return std::abs(v.imag()) <= tol; });
}

double PolyCoeffs::max_abs_coefficient() const noexcept {
  double m = 0.0;
  for (const cplx& v : c_) m = std::max(m, std::abs(v));
  return m;
}

cplx PolyCoeffs::operator()(cplx z) const noexcept {
  cplx s = 0.0;
  for (std::size_t k = c_.size(); k-- > 0;) s = s * z + c_[k];
  return s;
}

double PolyCoeffs::operator()(double x) const noexcept {
  double s = 0.0;
  for (std::size_t k = c_.size(); k-- > 0;) s = s * x + c_[k].real();
  return s;
}

PolyCoeffs PolyCoeffs::derivative() const {
  if (c_.size() <= 1) return PolyCoeffs{};
  std::vector<cplx> d(c_.size() - 1);
  for (std::size_t k = 1; k < c_.size(); ++k) d[k - 1] = static_cast<double>(k) * c_[k];
  return PolyCoeffs(std::move(d));
}

PolyCoeffs operator*(const PolyCoeffs& a, const PolyCoeffs& b) {
  if (a.is_zero() || b.is_zero()) return PolyCoeffs{};
  std::vector<cplx> out(a.c_.size() + b.c_.size() - 1, cplx{});
  for (std::size_t i = 0; i < a.c_.size(); ++i)
    for (std::size_t j = 0; j < b.c_.size(); ++j) out[i + j] += a.c_[i] * b.c_[j];
  return PolyCoeffs(std::move(out));
}

PolyCoeffs operator+(const PolyCoeffs& a, const PolyCoeffs& b) {
  std::vector<cplx> out(std::max(a.c_.size(), b.c_.size()), cplx{});
  for (std::size_t i = 0; i < a.c_.size(); ++i) out[i] += a.c_[i];
  for (std::size_t i = 0; i < b.c_.size(); ++i) out[i] += b.c_[i];
  return PolyCoeffs(std::move(out));
}

PolyCoeffs operator-(const PolyCoeffs& a, const PolyCoeffs& b) { return a + b * cplx{-1.0}; }

PolyCoeffs PolyCoeffs::operator*(cplx s) const {
  std::vector<cplx> out(c_);
  for (cplx& v : out) v *= s;
  return PolyCoeffs(std::move(out));
}

PolyCoeffs linear_factor(cplx r) { return PolyCoeffs({-r, cplx{1.0}}); }

bool satisfies_residual_bound(const PolyCoeffs& p, cplx r, double factor) {
  const double bound =
      factor * p.max_abs_coefficient() * std::pow(std::max(1.0, std::abs(r)), p.degree());
  return std::abs(p(r)) <= bound;
}

std::vector<cplx> roots(const PolyCoeffs& p) {
  if (p.is_zero()) throw DomainError("roots: zero polynomial");
  if (p.degree() > kMaxDegree) throw DomainError("roots: degree above 16 is not supported");

  std::vector<cplx> c = p.coefficients();
  std::vector<cplx> out;
  // Exact zero roots are split off so that they come back exactly.
  std::size_t zeros = 0;
  while (zeros < c.size() && c[zeros] == cplx{}) ++zeros;
  out.assign(zeros, cplx{});
  c.erase(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(zeros));

  const int n = static_cast<int>(c.size()) - 1;
  if (n == 1) {
    out.push_back(-c[0] / c[1]);
  } else if (n > 1) {
    std::vector<cplx> z;
    aberth(c, z);
    for (cplx& r : z) newton_polish(c, r);
    const PolyCoeffs reduced(c);
    if (worst_scaled_residual(reduced, z) > 1e-10) {
      std::vector<cplx> alt = companion_roots(c);
      for (cplx& r : alt) newton_polish(c, r);
      if (worst_scaled_residual(reduced, alt) < worst_scaled_residual(reduced, z)) z = std::move(alt);
    }
    out.insert(out.end(), z.begin(), z.end());
  }

  std::sort(out.begin(), out.end(), [](cplx a, cplx b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
  return out;
}

std::vector<RootCluster> clustered_roots(const PolyCoeffs& p, double radius) {
  const std::vector<cplx> rs = roots(p);
  const std::size_t n = rs.size();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const double scale = std::max({1.0, std::abs(rs[i]), std::abs(rs[j])});
      if (std::abs(rs[i] - rs[j]) <= radius * scale) parent[find(i)] = find(j);
    }

  std::vector<RootCluster> out;
  std::vector<std::size_t> slot(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t r = find(i);
    if (slot[r] == n) {
      slot[r] = out.size();
      out.push_back({cplx{}, 0});
    }
    RootCluster& cl = out[slot[r]];
    cl.value += rs[i];
    cl.multiplicity += 1;
  }
  for (RootCluster& cl : out) cl.value /= static_cast<double>(cl.multiplicity);
  return out;
}

std::vector<double> real_roots_in(const PolyCoeffs& p, double lo, double hi) {
  if (lo > hi) throw DomainError("real_roots_in: lo > hi");
  if (!p.is_real(1e-14 * p.max_abs_coefficient())) {
    throw DomainError("real_roots_in: polynomial has non-real coefficients");
  }
  if (p.is_zero()) throw DomainError("real_roots_in: zero polynomial");
  if (p.degree() == 0) return {};

  const double slack = 1e-12 * std::max({1.0, std::abs(lo), std::abs(hi)});
  std::vector<double> out;
  const PolyCoeffs dp = p.derivative();
  for (const cplx& r : roots(p)) {
    const double scale = std::max(1.0, std::abs(r));
    // A real multiple root comes back as a cluster split off the axis by
    // about sqrt(eps); its real part still satisfies the residual bound.
    if (std::abs(r.imag()) >= 1e-9 * scale &&
        (std::abs(r.imag()) >= 1e-6 * scale || !satisfies_residual_bound(p, cplx{r.real(), 0.0}))) {
      continue;
    }
    double x = r.real();
    for (int it = 0; it < 3; ++it) {
      const double d = dp(x);
      if (d == 0.0) break;
      const double next = x - p(x) / d;
      if (std::abs(p(next)) >= std::abs(p(x))) break;
      x = next;
    }
    if (x < lo - slack || x > hi + slack) continue;
    out.push_back(std::clamp(x, lo, hi));
  }
  std::sort(out.begin(), out.end());
  std::vector<double> merged;
  for (double x : out) {
    if (merged.empty() || x - merged.back() > 1e-9) merged.push_back(x);
  }
  return merged;
}

}  // namespace rmtlens::poly
