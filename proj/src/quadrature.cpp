#include "lienard/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "lienard/errors.hpp"

namespace lienard {

GaussRule gauss_legendre(int n) {
  GaussRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p1 = 1.0;
      double p2 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j + 1.0) * z * p2 - j * p3) / (j + 1.0);
      }
      pp = n * (z * p1 - p2) / (z * z - 1.0);
      const double z1 = z;
      z = z1 - p1 / pp;
      if (std::abs(z - z1) <= 1e-15) break;
    }
    rule.nodes[i] = -z;
    rule.nodes[n - 1 - i] = z;
    rule.weights[i] = 2.0 / ((1.0 - z * z) * pp * pp);
    rule.weights[n - 1 - i] = rule.weights[i];
  }
  return rule;
}

const GaussRule& gauss8() {
  static const GaussRule rule = gauss_legendre(8);
  return rule;
}

namespace {

double gauss_panel(const std::function<double(double)>& f, double a, double b) {
  const GaussRule& r = gauss8();
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  double acc = 0.0;
  for (std::size_t i = 0; i < r.nodes.size(); ++i) acc += r.weights[i] * f(mid + half * r.nodes[i]);
  return half * acc;
}

double adaptive_step(const std::function<double(double)>& f, double a, double b, double whole,
                     double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double left = gauss_panel(f, a, m);
  const double right = gauss_panel(f, m, b);
  if (std::abs(left + right - whole) <= tol) return left + right;
  if (depth <= 0) {
    std::ostringstream os;
    os << "adaptive quadrature did not converge on [" << a << ", " << b << "]";
    throw NumericalError(os.str());
  }
  return adaptive_step(f, a, m, left, 0.5 * tol, depth - 1) +
         adaptive_step(f, m, b, right, 0.5 * tol, depth - 1);
}

}  // namespace

double composite_gauss(const std::function<double(double)>& f, double a, double b, int panels) {
  const double h = (b - a) / panels;
  double acc = 0.0;
  for (int p = 0; p < panels; ++p) acc += gauss_panel(f, a + p * h, a + (p + 1) * h);
  return acc;
}

QuadratureResult integrate_doubling(const std::function<double(double)>& f, double a, double b,
                                    double abs_tol, int max_panels) {
  int panels = 4;
  double prev = composite_gauss(f, a, b, panels);
  while (panels < max_panels) {
    panels *= 2;
    const double cur = composite_gauss(f, a, b, panels);
    const double err = std::abs(cur - prev);
    if (err <= abs_tol) return {cur, err, panels};
    prev = cur;
  }
  throw NumericalError("composite Gauss-Legendre did not converge");
}

double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double abs_tol, int max_depth) {
  if (a == b) return 0.0;
  return adaptive_step(f, a, b, gauss_panel(f, a, b), abs_tol, max_depth);
}

}  // namespace lienard
