#pragma once

#include <functional>
#include <vector>

namespace rmtlens::quad {

/// Nodes and weights of a rule on [-1, 1].
struct Rule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Second-kind Gauss-Chebyshev rule: weights include the factor sqrt(1 - s^2),
/// so sum w_k f(s_k) approximates the integral of f(s) sqrt(1 - s^2).
Rule gauss_chebyshev_second(int n);

/// Gauss-Legendre rule of order n.
Rule gauss_legendre(int n);

/// Adaptive tanh-sinh integral of f over [a, b]; tolerates integrable
/// endpoint singularities. Throws NumericError if the error estimate exceeds
/// `tol` by more than a factor of 100.
double tanh_sinh(const std::function<double(double)>& f, double a, double b, double tol = 1e-12);

}  // namespace rmtlens::quad
