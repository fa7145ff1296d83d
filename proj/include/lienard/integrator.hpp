#pragma once

#include <span>
#include <vector>

#include "lienard/system.hpp"

namespace lienard {

struct PhaseState {
  double t = 0.0;
  double x = 0.0;
  double y = 0.0;
};

/// Event surfaces: x_axis_cross is y = 0, y_axis_cross is x = 0,
/// curve_F_cross is y = F(x).
enum class EventKind { x_axis_cross, y_axis_cross, curve_F_cross };

/// Crossing direction of the event function (y, x or y - F(x)) taken in
/// integration order: rising means it goes from negative to positive.
enum class Direction { rising, falling, any };

struct EventSpec {
  EventKind kind = EventKind::y_axis_cross;
  Direction direction = Direction::any;
  /// Stop after this many matching crossings (>= 1).
  int count = 1;
};

struct StepControl {
  double rtol = 1e-10;
  double atol = 1e-12;
  long max_steps = 10'000'000;
  double max_time = 1e4;
  /// 0 selects a starting step automatically.
  double initial_step = 0.0;
  double max_step = kInf;
  /// |(x, y)| beyond max(escape_radius, 1e3 |start|) counts as escape.
  double escape_radius = 1e6;
  /// +1 integrates forward in time, -1 backward.
  int time_direction = 1;
  /// Keep accepted states and dense-output pieces.
  bool record = true;
};

/// Continuous extension of one accepted Dormand-Prince step:
/// state(theta) for theta in [0, theta_max], time t0 + theta * h.
struct DenseStep {
  double t0 = 0.0;
  double h = 0.0;
  double theta_max = 1.0;
  double rc[5][2] = {};

  PhaseState at(double theta) const;
  /// d(x, y)/d(theta) of the interpolant.
  void slope(double theta, double& dx, double& dy) const;
};

struct Event {
  EventKind kind = EventKind::y_axis_cross;
  PhaseState state;
};

enum class Status { event_reached, max_time, max_steps, domain_exit };

const char* status_name(Status s);
const char* event_kind_name(EventKind k);

struct Trajectory {
  std::vector<PhaseState> states;
  std::vector<DenseStep> dense;
  /// Stop events followed in time order by watched events.
  std::vector<Event> events;
  Status status = Status::max_time;
  PhaseState start;
  PhaseState end;
  long steps = 0;
};

struct FieldValue {
  double dx_dt = 0.0;
  double dy_dt = 0.0;
};

/// (y - F(x), -g(x)); throws DomainError when |x| >= d.
FieldValue vector_field(const LienardSystem& system, const PhaseState& s);

/// Value of the event function for `kind` at (x, y).
double event_function(const LienardSystem& system, EventKind kind, double x, double y);

/// Adaptive Dormand-Prince 5(4) integration with PI step control and dense
/// output. Integration stops at the `stop.count`-th matching crossing of the
/// stop surface; crossings of the `watch` surfaces are recorded without
/// stopping. Crossings are located by bisection in time on the dense output
/// down to floating-point resolution. A start point lying on an event surface
/// is not itself an event. Escape (radius bound, or step-size collapse while
/// the state grows) ends with status domain_exit; any other step-size
/// underflow throws NumericalError.
Trajectory integrate(const LienardSystem& system, const PhaseState& start, const EventSpec& stop,
                     const StepControl& ctrl = {}, std::span<const EventSpec> watch = {});

struct PotentialDelta {
  /// v(end) - v(start) with v = G(x) + y^2/2.
  double delta_v = 0.0;
  /// Integral of F(x) dy along the dense path.
  double integral_F_dy = 0.0;
  /// -Integral of F(x) g(x) dt along the dense path.
  double integral_gF_dt = 0.0;
};

/// Path potentials of a recorded trajectory (8-point Gauss-Legendre on each
/// dense step). Throws AnalysisError when the trajectory has no dense record.
PotentialDelta path_potential_delta(const LienardSystem& system, const Trajectory& traj);

}  // namespace lienard
