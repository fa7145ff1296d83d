#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "lienard/function_model.hpp"
#include "lienard/system.hpp"

namespace lienard {

/// Weakly nonlinear oscillator x'' + x + mu p(x) x' = 0, i.e. h(x, x') = p(x) x'.
struct PhiProblem {
  /// Coefficients of p, ascending degree.
  std::vector<double> p;
  double mu = 1.0;
  Interval r_range{0.01, 2.0};
};

/// Phi(r) = integral over [0, 2 pi] of h(r sin u, r cos u) cos u du, by
/// composite Gauss-Legendre with panel doubling (abs tol 1e-12).
/// Throws DomainError for r <= 0 and NumericalError on non-convergence.
double phi(const PhiProblem& problem, double r);

struct PhiRoots {
  /// Radii where Phi changes sign.
  std::vector<double> roots;
  /// Tangential zeros (|Phi| local minimum below 1e-10 without a sign change).
  std::vector<double> non_simple;
  std::vector<std::pair<double, double>> values;
};

/// Sign-change scan on grid_n points over r_range, bisection to 1e-12.
PhiRoots phi_roots(const PhiProblem& problem, int grid_n = 400);

struct QuinticRadii {
  std::optional<double> r1;
  std::optional<double> r2;
  double discriminant = 0.0;
};

/// Positive real roots of r^2 = (15 -/+ sqrt(225 - 64k)) / (10k), r1 <= r2.
/// Throws DomainError for k = 0.
QuinticRadii quintic_radii(double k);

/// p for the quintic family: -4 + 75x^2 - 50k x^4.
std::vector<double> quintic_p(double k);

/// Phi problem whose p is f / mu for a single-polynomial F (f = F').
/// Throws ConfigError for other models.
PhiProblem phi_problem_from(const LienardSystem& system, Interval r_range, double mu = 1.0);

/// Canonical-plane point (x, x') to the Lienard plane: (-x, F(-x) - x').
std::pair<double, double> canonical_to_lienard(double x, double xdot, const FunctionModel& F);
/// Lienard-plane point (u, v) to the canonical plane: (-u, -v + F(u)).
std::pair<double, double> lienard_to_canonical(double u, double v, const FunctionModel& F);

}  // namespace lienard
