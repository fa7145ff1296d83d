#pragma once

#include <string>
#include <vector>

#include "lienard/integrator.hpp"
#include "lienard/system.hpp"

namespace lienard {

enum class Stability { stable, unstable, semi_stable };

const char* stability_name(Stability s);

struct LimitCycle {
  /// Intersection with the positive y-axis.
  double y_plus0 = 0.0;
  /// Intersection with the negative y-axis (= -y_plus0 for odd F and g).
  double y_minus0 = 0.0;
  /// max |x| on the cycle, attained where the cycle crosses y = F(x).
  double amplitude = 0.0;
  /// y at the maximising crossing (on the curve y = F(x)).
  double amplitude_y = 0.0;
  Stability stability = Stability::stable;
  /// 1 for a simple cycle, 2 for a tangential (semi-stable) one.
  int multiplicity = 1;
};

/// |y| at the first return to x = 0 with y < 0 of the orbit from (0, y0).
/// Returns +inf when the orbit escapes (blow-up of an F -> -inf model).
/// Throws AnalysisError when the orbit neither returns nor escapes (time or
/// step budget exhausted, or exit through a finite domain edge).
double half_return(const LienardSystem& system, double y0, const StepControl& ctrl = {});

struct CycleScanOptions {
  /// Top of the y0 grid; <= 0 selects the automatic bound.
  double y_max = 0.0;
  int grid_n = 400;
  StepControl ctrl{};
  /// A same-sign extremum of D within this of zero is a semi-stable cycle.
  double semi_stable_threshold = 1e-7;
  /// |D| at or below this counts as zero (a continuum of closed orbits).
  double zero_floor = 1e-9;
  /// Bisection width for the cycle intercepts.
  double root_tol = 1e-12;
};

struct CycleScan {
  double y_max = 0.0;
  int doublings = 0;
  /// Log-spaced y0 grid and D(y0) = half_return(y0) - y0 (+inf on escape,
  /// NaN where the orbit could not be followed).
  std::vector<double> y0;
  std::vector<double> D;
  std::vector<LimitCycle> cycles;
};

/// Automatic y_max: 2 (max |F(L)| over extrema + sqrt(2 G(a_N + 1))).
double default_y_max(const LienardSystem& system);

/// Half-return scan and cycle extraction. Without an explicit y_max, the
/// automatic bound is doubled (at most 6 times) until D(y_max) has the sign
/// the tail of F implies: negative when F grows to +inf (or stays positive),
/// positive when F falls to -inf.
CycleScan scan_limit_cycles(const LienardSystem& system, const CycleScanOptions& opt = {});

std::vector<LimitCycle> find_limit_cycles(const LienardSystem& system, double y_max = 0.0,
                                          int grid_n = 400, const StepControl& ctrl = {});

/// Re-integrates the orbit from (0, y_plus0) and measures the amplitude.
LimitCycle measure_cycle(const LienardSystem& system, double y_plus0, Stability stability,
                         int multiplicity, const StepControl& ctrl = {});

struct PotentialScan {
  std::vector<double> alphas;
  /// V(alpha) = v(Y') - v(Y) along the path through Q(alpha, F(alpha));
  /// NaN where an arc failed to reach x = 0.
  std::vector<double> V_values;
  std::vector<double> sign_changes;
  /// Alphas whose arcs could not be completed.
  std::vector<double> flagged;
};

/// V(alpha) for one Q point; NaN when an arc does not reach x = 0.
double potential_at(const LienardSystem& system, double alpha, const StepControl& ctrl = {});

PotentialScan potential_scan(const LienardSystem& system, Interval alpha_range, int grid_n = 400,
                             const StepControl& ctrl = {});

struct PotentialDecomposition {
  double alpha = 0.0;
  /// Zeros a_i < alpha of F where the path is split.
  std::vector<double> crossings;
  /// Integral of F dy over each piece in path order: the upper arcs from Y,
  /// the cap through Q, then the lower arcs to Y'.
  std::vector<double> terms;
  std::vector<std::string> labels;
  /// v(Y') - v(Y).
  double total = 0.0;
};

PotentialDecomposition potential_decomposition(const LienardSystem& system, double alpha,
                                               const StepControl& ctrl = {});

}  // namespace lienard
