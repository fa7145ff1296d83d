#include "lienard/cycles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "lienard/errors.hpp"
#include "lienard/parallel.hpp"
#include "lienard/quadrature.hpp"
#include "lienard/roots.hpp"

namespace lienard {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double half_return_or_nan(const LienardSystem& system, double y0, const StepControl& ctrl) {
  try {
    return half_return(system, y0, ctrl) - y0;
  } catch (const NumericalError&) {
    return kNaN;
  } catch (const DomainError&) {
    return kNaN;
  }
}

/// Sign D(y0) takes for large orbits: -1 inward, +1 outward, 0 unknown.
int expected_outer_sign(const LienardSystem& system) {
  switch (system.F().tail()) {
    case Tail::grows_positive:
      return -1;
    case Tail::grows_negative:
      return 1;
    case Tail::bounded: {
      const double h = system.scan_horizon();
      const double far = system.F().value(std::isfinite(system.d()) ? std::nextafter(h, 0.0) : h);
      return far > 0.0 ? -1 : (far < 0.0 ? 1 : 0);
    }
  }
  return 0;
}

/// Arc from Q(alpha, F(alpha)) to the y-axis, forward (+1) or backward (-1).
Trajectory arc_from_q(const LienardSystem& system, double alpha, int time_direction,
                      StepControl ctrl, bool record) {
  ctrl.time_direction = time_direction;
  ctrl.record = record;
  const PhaseState q{0.0, alpha, system.F().value(alpha)};
  return integrate(system, q, {EventKind::y_axis_cross, Direction::any, 1}, ctrl);
}

/// Integral of F dy over the pieces of a recorded arc on which x decreases
/// monotonically, split at the x values in `cuts` (descending). Returns
/// cuts.size() + 1 integrals in integration order.
std::vector<double> split_F_dy(const LienardSystem& system, const Trajectory& traj,
                               const std::vector<double>& cuts) {
  const GaussRule& rule = gauss8();
  std::vector<double> pieces(cuts.size() + 1, 0.0);
  std::size_t piece = 0;
  auto segment_integral_theta = [&](const DenseStep& ds, double a, double b) {
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (a + b);
    double acc = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      const double th = mid + half * rule.nodes[i];
      double dx = 0.0;
      double dy = 0.0;
      ds.slope(th, dx, dy);
      acc += rule.weights[i] * system.F().value(ds.at(th).x) * dy;
    }
    return half * acc;
  };
  for (const DenseStep& ds : traj.dense) {
    double th = 0.0;
    while (piece < cuts.size()) {
      const double c = cuts[piece];
      const double x_end = ds.at(ds.theta_max).x;
      if (x_end > c) break;
      // Locate x(theta) = c within [th, theta_max].
      double lo = th;
      double hi = ds.theta_max;
      for (int it = 0; it < 200; ++it) {
        const double m = 0.5 * (lo + hi);
        if (m == lo || m == hi) break;
        (ds.at(m).x > c ? lo : hi) = m;
      }
      const double cut = 0.5 * (lo + hi);
      pieces[piece] += segment_integral_theta(ds, th, cut);
      th = cut;
      ++piece;
    }
    pieces[piece] += segment_integral_theta(ds, th, ds.theta_max);
  }
  return pieces;
}

}  // namespace

const char* stability_name(Stability s) {
  switch (s) {
    case Stability::stable:
      return "stable";
    case Stability::unstable:
      return "unstable";
    case Stability::semi_stable:
      return "semi_stable";
  }
  return "unknown";
}

double half_return(const LienardSystem& system, double y0, const StepControl& ctrl_in) {
  if (!(y0 > 0.0)) throw ConfigError("half_return needs y0 > 0");
  StepControl ctrl = ctrl_in;
  ctrl.record = false;
  ctrl.time_direction = 1;
  const Trajectory tr =
      integrate(system, {0.0, 0.0, y0}, {EventKind::y_axis_cross, Direction::falling, 1}, ctrl);
  switch (tr.status) {
    case Status::event_reached:
      return -tr.end.y;
    case Status::domain_exit:
      if (std::isfinite(system.d()) && std::abs(tr.end.x) > 0.5 * system.d()) {
        throw AnalysisError("orbit from y0 left the finite domain before returning");
      }
      return std::numeric_limits<double>::infinity();
    case Status::max_time:
    case Status::max_steps:
      break;
  }
  throw AnalysisError(std::string("orbit did not return to the y-axis (status ") +
                      status_name(tr.status) + ")");
}

double default_y_max(const LienardSystem& system) {
  const ZeroStructure zs = find_zero_structure(system);
  double fmax = 0.0;
  for (double v : zs.values_at_extrema) fmax = std::max(fmax, std::abs(v));
  double reach = (zs.zeros.empty() ? 0.0 : zs.zeros.back()) + 1.0;
  if (std::isfinite(system.d())) reach = std::min(reach, 0.999 * system.d());
  return 2.0 * (fmax + std::sqrt(2.0 * system.G(reach)));
}

LimitCycle measure_cycle(const LienardSystem& system, double y_plus0, Stability stability,
                         int multiplicity, const StepControl& ctrl_in) {
  StepControl ctrl = ctrl_in;
  ctrl.record = false;
  ctrl.time_direction = 1;
  const EventSpec watch[] = {{EventKind::curve_F_cross, Direction::any, 1}};
  const Trajectory tr = integrate(system, {0.0, 0.0, y_plus0},
                                  {EventKind::y_axis_cross, Direction::falling, 1}, ctrl, watch);
  LimitCycle c;
  c.y_plus0 = y_plus0;
  c.y_minus0 = -y_plus0;
  c.stability = stability;
  c.multiplicity = multiplicity;
  for (const Event& e : tr.events) {
    if (e.kind == EventKind::curve_F_cross && std::abs(e.state.x) > c.amplitude) {
      c.amplitude = std::abs(e.state.x);
      c.amplitude_y = e.state.y;
    }
  }
  if (tr.status != Status::event_reached || c.amplitude == 0.0) {
    throw AnalysisError("cycle orbit could not be re-integrated for its amplitude");
  }
  return c;
}

CycleScan scan_limit_cycles(const LienardSystem& system, const CycleScanOptions& opt) {
  if (opt.grid_n < 200) throw ConfigError("cycle scan grid_n must be >= 200");
  CycleScan scan;
  scan.y_max = opt.y_max > 0.0 ? opt.y_max : default_y_max(system);
  if (!(scan.y_max > 0.0)) scan.y_max = 1.0;
  auto D = [&](double y0) { return half_return_or_nan(system, y0, opt.ctrl); };

  if (!(opt.y_max > 0.0)) {
    const int want = expected_outer_sign(system);
    for (; want != 0 && scan.doublings < 6; ++scan.doublings) {
      const double top = D(scan.y_max);
      if (std::isnan(top) || (want < 0 ? top < 0.0 : top > 0.0)) break;
      scan.y_max *= 2.0;
    }
  }

  const int n = opt.grid_n;
  const double lo = std::log(scan.y_max * 1e-3);
  const double hi = std::log(scan.y_max);
  scan.y0.resize(n);
  for (int i = 0; i < n; ++i) scan.y0[i] = std::exp(lo + (hi - lo) * i / (n - 1));
  scan.y0.back() = scan.y_max;
  scan.D = parallel_map<double>(n, [&](std::size_t i) { return D(scan.y0[i]); });

  ScanOptions so;
  so.tol = opt.root_tol;
  so.touch_threshold = opt.semi_stable_threshold;
  so.zero_floor = opt.zero_floor;
  so.refine_extrema = true;
  const std::vector<ScanRoot> roots = scan_roots(D, scan.y0, scan.D, so);

  scan.cycles = parallel_map<LimitCycle>(roots.size(), [&](std::size_t i) {
    const ScanRoot& r = roots[i];
    Stability st = Stability::semi_stable;
    int mult = 2;
    if (r.kind == RootKind::simple) {
      st = r.sign_before > 0 ? Stability::stable : Stability::unstable;
      mult = 1;
    }
    return measure_cycle(system, r.x, st, mult, opt.ctrl);
  });
  return scan;
}

std::vector<LimitCycle> find_limit_cycles(const LienardSystem& system, double y_max, int grid_n,
                                          const StepControl& ctrl) {
  CycleScanOptions opt;
  opt.y_max = y_max;
  opt.grid_n = grid_n;
  opt.ctrl = ctrl;
  return scan_limit_cycles(system, opt).cycles;
}

double potential_at(const LienardSystem& system, double alpha, const StepControl& ctrl) {
  if (!(alpha > 0.0) || !(alpha < system.d())) return kNaN;
  try {
    const Trajectory up = arc_from_q(system, alpha, -1, ctrl, false);
    const Trajectory down = arc_from_q(system, alpha, 1, ctrl, false);
    if (up.status != Status::event_reached || down.status != Status::event_reached) return kNaN;
    if (!(up.end.y > 0.0) || !(down.end.y < 0.0)) return kNaN;
    return system.potential(down.end.x, down.end.y) - system.potential(up.end.x, up.end.y);
  } catch (const NumericalError&) {
    return kNaN;
  } catch (const DomainError&) {
    return kNaN;
  }
}

PotentialScan potential_scan(const LienardSystem& system, Interval alpha_range, int grid_n,
                             const StepControl& ctrl) {
  if (grid_n < 2) throw ConfigError("potential_scan grid_n must be >= 2");
  const double lo = std::max(alpha_range.lo, 0.0);
  const double hi = std::min(alpha_range.hi, system.d());
  if (!(lo < hi)) throw ConfigError("potential_scan: empty alpha range");
  PotentialScan ps;
  ps.alphas.resize(grid_n);
  for (int i = 0; i < grid_n; ++i) ps.alphas[i] = lo + (hi - lo) * i / (grid_n - 1);
  if (ps.alphas.front() <= 0.0) ps.alphas.front() = 1e-3 * (hi - lo) / grid_n;
  if (ps.alphas.back() >= system.d()) ps.alphas.back() = std::nextafter(system.d(), 0.0);
  auto V = [&](double a) { return potential_at(system, a, ctrl); };
  ps.V_values = parallel_map<double>(ps.alphas.size(), [&](std::size_t i) { return V(ps.alphas[i]); });
  for (std::size_t i = 0; i < ps.alphas.size(); ++i) {
    if (std::isnan(ps.V_values[i])) ps.flagged.push_back(ps.alphas[i]);
  }
  ScanOptions so;
  so.tol = 1e-12;
  so.zero_floor = 1e-10;
  so.refine_extrema = true;
  for (const ScanRoot& r : scan_roots(V, ps.alphas, ps.V_values, so)) ps.sign_changes.push_back(r.x);
  return ps;
}

PotentialDecomposition potential_decomposition(const LienardSystem& system, double alpha,
                                               const StepControl& ctrl) {
  if (!(alpha > 0.0) || !(alpha < system.d())) throw DomainError("alpha outside (0, d)");
  PotentialDecomposition pd;
  pd.alpha = alpha;
  const ZeroStructure zs = find_zero_structure(system);
  for (double a : zs.zeros) {
    if (a < alpha) pd.crossings.push_back(a);
  }
  const Trajectory up = arc_from_q(system, alpha, -1, ctrl, true);
  const Trajectory down = arc_from_q(system, alpha, 1, ctrl, true);
  if (up.status != Status::event_reached || down.status != Status::event_reached) {
    throw AnalysisError("an arc through Q did not reach the y-axis");
  }
  std::vector<double> cuts(pd.crossings.rbegin(), pd.crossings.rend());
  const std::vector<double> upper = split_F_dy(system, up, cuts);
  const std::vector<double> lower = split_F_dy(system, down, cuts);
  const std::size_t n = pd.crossings.size();
  // Upper arc pieces run Q -> Y; reverse orientation to follow Y -> Q.
  for (std::size_t k = 1; k <= n; ++k) {
    pd.terms.push_back(-upper[n + 1 - k]);
    pd.labels.push_back("upper_" + std::to_string(k));
  }
  pd.terms.push_back(-upper[0] + lower[0]);
  pd.labels.push_back("cap");
  for (std::size_t k = n; k >= 1; --k) {
    pd.terms.push_back(lower[n + 1 - k]);
    pd.labels.push_back("lower_" + std::to_string(k));
  }
  pd.total = system.potential(down.end.x, down.end.y) - system.potential(up.end.x, up.end.y);
  return pd;
}

}  // namespace lienard
