#pragma once

#include <functional>
#include <vector>

namespace lienard {

struct GaussRule {
  std::vector<double> nodes;    // on [-1, 1]
  std::vector<double> weights;
};

/// n-point Gauss-Legendre rule (Newton iteration on P_n).
GaussRule gauss_legendre(int n);

/// Cached 8-point rule.
const GaussRule& gauss8();

/// Fixed composite Gauss-Legendre with `panels` equal panels of the 8-point rule.
double composite_gauss(const std::function<double(double)>& f, double a, double b, int panels);

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  int panels = 0;
};

/// Composite 8-point Gauss-Legendre, doubling the panel count until two
/// successive estimates agree to `abs_tol`. Throws NumericalError past
/// `max_panels`.
QuadratureResult integrate_doubling(const std::function<double(double)>& f, double a, double b,
                                    double abs_tol = 1e-12, int max_panels = 1 << 16);

/// Recursive adaptive Gauss-Legendre (8 vs 2x8 points per interval).
/// Throws NumericalError when the recursion budget runs out.
double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double abs_tol = 1e-12, int max_depth = 40);

}  // namespace lienard
