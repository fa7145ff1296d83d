#pragma once

#include "lienard/cycles.hpp"
#include "lienard/system.hpp"

namespace lienard {

struct AlphaBarResult {
  /// Root from y_plus0.
  double alpha_prime = 0.0;
  /// Root from |y_minus0|.
  double alpha_double_prime = 0.0;
  /// max(alpha_prime, alpha_double_prime).
  double alpha_bar = 0.0;
  double y_plus0 = 0.0;
  double y_minus0 = 0.0;
  /// Which interval (a_i, a_{i+1}) the bound belongs to; 0 for the
  /// single-interval case.
  int interval_index = 0;
};

/// r(alpha) = G(alpha) + F(alpha)^2 / 2 - y0^2 / 2.
double alpha_residual(const LienardSystem& system, double y0, double alpha);

/// Smallest root of r in the bracket, refined by bisection to 1e-12.
/// An infinite right end is replaced by doubling until r turns positive
/// (at most 60 doublings). Throws NoRootError when r has no sign change.
double solve_alpha(const LienardSystem& system, double y0, Interval bracket);

/// alpha-bar for a cycle. Throws NoRootError from either root; throws
/// AnalysisError if the two roots of an odd system differ by more than 1e-10.
AlphaBarResult alpha_bar(const LienardSystem& system, const LimitCycle& cycle, Interval bracket,
                         int interval_index = 0);

/// Standalone estimate from a user supplied intercept (y_minus0 = -y0).
AlphaBarResult alpha_bar(const LienardSystem& system, double y0, Interval bracket,
                         int interval_index = 0);

}  // namespace lienard
