#pragma once

#include <map>
#include <string>
#include <vector>

#include "lienard/function_model.hpp"

namespace lienard {

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

/// x' = y - F(x), y' = -g(x) on |x| < d.
///
/// Construction checks that g is positive on sampled points of (0, d) and
/// throws ConfigError otherwise.
class LienardSystem {
 public:
  /// `d` defaults to the smaller domain end of F and g.
  LienardSystem(std::string name, FunctionModel F, FunctionModel g, double d = kInf);

  const std::string& name() const { return name_; }
  const FunctionModel& F() const { return F_; }
  const FunctionModel& g() const { return g_; }
  double d() const { return d_; }

  /// G(x) = integral of g from 0 to x.
  double G(double x) const { return g_.antiderivative(x); }
  /// v(x, y) = G(x) + y^2/2.
  double potential(double x, double y) const { return G(x) + 0.5 * y * y; }

  /// Finite right end for scans on (0, d): d itself when finite, otherwise a
  /// bound derived from the outermost joint and polynomial root bounds.
  double scan_horizon() const;

 private:
  std::string name_;
  FunctionModel F_;
  FunctionModel g_;
  double d_;
};

struct ZeroStructure {
  /// Positive simple zeros a_1 < a_2 < ... of F.
  std::vector<double> zeros;
  /// Abscissae of the local extrema of F (sign changes of f), ascending.
  std::vector<double> extrema;
  std::vector<double> values_at_extrema;
  /// Zeros rejected as non-simple (|f| < 1e-8 or touching without crossing).
  std::vector<double> non_simple;
};

/// Zeros and extrema of F on `scan_range` from a sign-change scan refined by
/// bisection to 1e-12. Each segment inside the range gets its own `grid_n`
/// points so that joints are always sample points.
ZeroStructure find_zero_structure(const LienardSystem& system, Interval scan_range,
                                  int grid_n = 2000);
/// Same, over (0, scan_horizon()].
ZeroStructure find_zero_structure(const LienardSystem& system, int grid_n = 2000);

using Params = std::map<std::string, double>;

/// Published model catalog: vdp(mu), vdp_bounded(mu[, finite]),
/// quintic(k[, mu=0.1]), two_cycle, three_cycle.
LienardSystem builtin(const std::string& name, const Params& params = {});
std::vector<std::string> builtin_names();

}  // namespace lienard
