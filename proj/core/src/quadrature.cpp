#include "rmtlens/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/legendre.hpp>

#include "rmtlens/errors.hpp"

namespace rmtlens::quad {

Rule gauss_chebyshev_second(int n) {
  if (n < 1) throw DomainError("gauss_chebyshev_second: n < 1");
  Rule r;
  r.nodes.resize(n);
  r.weights.resize(n);
  const double h = std::numbers::pi / (n + 1);
  for (int k = 1; k <= n; ++k) {
    const double s = std::sin(k * h);
    r.nodes[k - 1] = std::cos(k * h);
    r.weights[k - 1] = h * s * s;
  }
  return r;
}

Rule gauss_legendre(int n) {
  if (n < 1) throw DomainError("gauss_legendre: n < 1");
  // Boost returns the non-negative zeros in ascending order.
  const std::vector<double> half = boost::math::legendre_p_zeros<double>(n);
  Rule r;
  r.nodes.reserve(n);
  auto weight = [n](double x) {
    const double dp = boost::math::legendre_p_prime(n, x);
    return 2.0 / ((1.0 - x * x) * dp * dp);
  };
  for (auto it = half.rbegin(); it != half.rend(); ++it) {
    if (*it == 0.0) continue;
    r.nodes.push_back(-*it);
  }
  for (double x : half) r.nodes.push_back(x);
  std::sort(r.nodes.begin(), r.nodes.end());
  r.weights.reserve(r.nodes.size());
  for (double x : r.nodes) r.weights.push_back(weight(x));
  return r;
}

double tanh_sinh(const std::function<double(double)>& f, double a, double b, double tol) {
  if (a == b) return 0.0;
  static thread_local boost::math::quadrature::tanh_sinh<double> integrator(15);
  double error = 0.0;
  double l1 = 0.0;
  const double value = integrator.integrate(f, a, b, tol, &error, &l1);
  if (!std::isfinite(value) || error > 100.0 * tol * std::max(1.0, l1)) {
    throw NumericError("tanh_sinh quadrature did not converge", value);
  }
  return value;
}

}  // namespace rmtlens::quad
