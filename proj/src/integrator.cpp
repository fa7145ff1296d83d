#include "lienard/integrator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "lienard/errors.hpp"
#include "lienard/quadrature.hpp"

namespace lienard {

namespace {

// Dormand-Prince 5(4) tableau with the continuous extension of Hairer,
// Norsett and Wanner (dopri5).
// The field is autonomous, so the stage nodes c_i are not needed.
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double a71 = 35.0 / 384, a73 = 500.0 / 1113, a74 = 125.0 / 192,
                 a75 = -2187.0 / 6784, a76 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                 e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;
constexpr double d1 = -12715105075.0 / 11282082432.0, d3 = 87487479700.0 / 32700410799.0,
                 d4 = -10690763975.0 / 1880347072.0, d5 = 701980252875.0 / 199316789632.0,
                 d6 = -1453857185.0 / 822651844.0, d7 = 69997945.0 / 29380423.0;

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }

bool direction_matches(Direction d, double before, double after) {
  switch (d) {
    case Direction::rising:
      return before < 0.0 && after > 0.0;
    case Direction::falling:
      return before > 0.0 && after < 0.0;
    case Direction::any:
      return true;
  }
  return true;
}

int sgn(double v) { return v > 0.0 ? 1 : (v < 0.0 ? -1 : 0); }

struct Watcher {
  EventSpec spec;
  bool stops = false;
  int last_sign = 0;
  int hits = 0;
};

}  // namespace

PhaseState DenseStep::at(double theta) const {
  const double th1 = 1.0 - theta;
  double out[2];
  for (int i = 0; i < 2; ++i) {
    out[i] = rc[0][i] + theta * (rc[1][i] + th1 * (rc[2][i] + theta * (rc[3][i] + th1 * rc[4][i])));
  }
  return {t0 + theta * h, out[0], out[1]};
}

void DenseStep::slope(double theta, double& dx, double& dy) const {
  const double th1 = 1.0 - theta;
  double out[2];
  for (int i = 0; i < 2; ++i) {
    const double q = rc[2][i] + theta * (rc[3][i] + th1 * rc[4][i]);
    const double dq = rc[3][i] + (1.0 - 2.0 * theta) * rc[4][i];
    const double r = rc[1][i] + th1 * q;
    const double dr = -q + th1 * dq;
    out[i] = r + theta * dr;
  }
  dx = out[0];
  dy = out[1];
}

const char* status_name(Status s) {
  switch (s) {
    case Status::event_reached:
      return "event_reached";
    case Status::max_time:
      return "max_time";
    case Status::max_steps:
      return "max_steps";
    case Status::domain_exit:
      return "domain_exit";
  }
  return "unknown";
}

const char* event_kind_name(EventKind k) {
  switch (k) {
    case EventKind::x_axis_cross:
      return "x_axis_cross";
    case EventKind::y_axis_cross:
      return "y_axis_cross";
    case EventKind::curve_F_cross:
      return "curve_F_cross";
  }
  return "unknown";
}

FieldValue vector_field(const LienardSystem& system, const PhaseState& s) {
  if (!(std::abs(s.x) < system.d())) {
    std::ostringstream os;
    os << "state x = " << s.x << " outside (-d, d) with d = " << system.d();
    throw DomainError(os.str());
  }
  return {s.y - system.F().value(s.x), -system.g().value(s.x)};
}

double event_function(const LienardSystem& system, EventKind kind, double x, double y) {
  switch (kind) {
    case EventKind::x_axis_cross:
      return y;
    case EventKind::y_axis_cross:
      return x;
    case EventKind::curve_F_cross:
      return y - system.F().value(x);
  }
  return 0.0;
}

Trajectory integrate(const LienardSystem& system, const PhaseState& start, const EventSpec& stop,
                     const StepControl& ctrl, std::span<const EventSpec> watch) {
  if (stop.count < 1) throw ConfigError("EventSpec.count must be >= 1");
  if (!(ctrl.rtol > 0.0) || !(ctrl.atol > 0.0)) throw ConfigError("tolerances must be positive");
  if (!(std::abs(start.x) < system.d())) throw DomainError("start state outside (-d, d)");

  const double d = system.d();
  const double dir = ctrl.time_direction < 0 ? -1.0 : 1.0;
  const double escape = std::max(ctrl.escape_radius, 1e3 * std::hypot(start.x, start.y));
  const double t_end = start.t + dir * ctrl.max_time;

  auto field = [&](Vec2 s, Vec2& out) -> bool {
    if (!(std::abs(s.x) < d) || !std::isfinite(s.x) || !std::isfinite(s.y)) return false;
    out = {s.y - system.F().value(s.x), -system.g().value(s.x)};
    return std::isfinite(out.x) && std::isfinite(out.y);
  };

  std::vector<Watcher> watchers;
  watchers.push_back({stop, true, 0, 0});
  for (const EventSpec& w : watch) watchers.push_back({w, false, 0, 0});
  for (Watcher& w : watchers) w.last_sign = sgn(event_function(system, w.spec.kind, start.x, start.y));

  Trajectory traj;
  traj.start = start;
  if (ctrl.record) traj.states.push_back(start);

  Vec2 y{start.x, start.y};
  double t = start.t;
  Vec2 k1;
  if (!field(y, k1)) throw DomainError("vector field undefined at start state");

  // Starting step (Hairer's heuristic, simplified to two norms).
  auto scale = [&](double v, double w) { return ctrl.atol + ctrl.rtol * std::max(std::abs(v), std::abs(w)); };
  double h = ctrl.initial_step;
  if (!(h > 0.0)) {
    const double n0 = std::hypot(y.x / scale(y.x, y.x), y.y / scale(y.y, y.y)) / std::sqrt(2.0);
    const double n1 = std::hypot(k1.x / scale(y.x, y.x), k1.y / scale(y.y, y.y)) / std::sqrt(2.0);
    h = (n0 < 1e-5 || n1 < 1e-5) ? 1e-6 : 0.01 * n0 / n1;
    h = std::min(h, 0.01);
  }
  h = std::min(h, ctrl.max_step);

  constexpr double kBeta = 0.04;
  constexpr double kExpo1 = 0.2 - kBeta * 0.75;
  constexpr double kSafe = 0.9;
  // Step ratio limits: h_new / h in [kFacMin, kFacMax].
  constexpr double kFacMin = 0.2;
  constexpr double kFacMax = 10.0;
  double facold = 1e-4;
  bool last_rejected = false;

  auto finish = [&](Status status, const PhaseState& end) {
    traj.status = status;
    traj.end = end;
    if (ctrl.record && (traj.states.empty() || traj.states.back().t != end.t)) traj.states.push_back(end);
    std::stable_sort(traj.events.begin(), traj.events.end(),
                     [&](const Event& a, const Event& b) { return dir * a.state.t < dir * b.state.t; });
    return traj;
  };

  auto growing = [&](Vec2 a, Vec2 b) { return std::hypot(b.x, b.y) > std::hypot(a.x, a.y); };

  for (long step = 0;; ++step) {
    if (step >= ctrl.max_steps) return finish(Status::max_steps, {t, y.x, y.y});
    const double remaining = std::abs(t_end - t);
    const double hmin = 16.0 * std::numeric_limits<double>::epsilon() * std::max(std::abs(t), 1.0);
    if (remaining <= hmin) return finish(Status::max_time, {t, y.x, y.y});
    h = std::min({h, remaining, ctrl.max_step});
    if (h < hmin) {
      const double size = std::hypot(y.x, y.y);
      if (size > std::max(1.0, 10.0 * std::hypot(start.x, start.y)) || std::abs(y.x) > 0.999 * d) {
        return finish(Status::domain_exit, {t, y.x, y.y});
      }
      std::ostringstream os;
      os << "step size underflow at t = " << t << ", state (" << y.x << ", " << y.y << ")";
      throw NumericalError(os.str());
    }
    const double hs = dir * h;

    Vec2 k2, k3, k4, k5, k6, k7;
    Vec2 y1;
    bool ok = field(y + (hs * a21) * k1, k2) &&
              field(y + hs * (a31 * k1 + a32 * k2), k3) &&
              field(y + hs * (a41 * k1 + a42 * k2 + a43 * k3), k4) &&
              field(y + hs * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4), k5) &&
              field(y + hs * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5), k6);
    if (ok) {
      y1 = y + hs * (a71 * k1 + a73 * k3 + a74 * k4 + a75 * k5 + a76 * k6);
      ok = field(y1, k7);
    }
    if (!ok) {
      // Stage left the domain or overflowed: shrink hard.
      h *= 0.25;
      last_rejected = true;
      continue;
    }

    const Vec2 err_vec = hs * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
    const double ex = err_vec.x / scale(y.x, y1.x);
    const double ey = err_vec.y / scale(y.y, y1.y);
    const double err = std::sqrt(0.5 * (ex * ex + ey * ey));

    const double fac11 = std::pow(std::max(err, 1e-300), kExpo1);
    if (!(err <= 1.0)) {
      const double shrink = std::min(1.0 / kFacMin, fac11 / kSafe);
      h /= std::isfinite(shrink) ? shrink : 1.0 / kFacMin;
      last_rejected = true;
      continue;
    }

    // Accepted step: build the continuous extension.
    DenseStep ds;
    ds.t0 = t;
    ds.h = hs;
    const Vec2 dy{y1.x - y.x, y1.y - y.y};
    const Vec2 bspl{hs * k1.x - dy.x, hs * k1.y - dy.y};
    const Vec2 r4{dy.x - hs * k7.x - bspl.x, dy.y - hs * k7.y - bspl.y};
    const Vec2 r5 = hs * (d1 * k1 + d3 * k3 + d4 * k4 + d5 * k5 + d6 * k6 + d7 * k7);
    const Vec2 rcs[5] = {y, dy, bspl, r4, r5};
    for (int r = 0; r < 5; ++r) {
      ds.rc[r][0] = rcs[r].x;
      ds.rc[r][1] = rcs[r].y;
    }

    // Event detection on this step.
    double stop_theta = -1.0;
    for (Watcher& w : watchers) {
      const double g_end = event_function(system, w.spec.kind, y1.x, y1.y);
      const int s_end = sgn(g_end);
      if (w.last_sign == 0) {
        w.last_sign = s_end;
        continue;
      }
      if (s_end == 0 || s_end == w.last_sign) {
        if (s_end != 0) w.last_sign = s_end;
        continue;
      }
      const double g_begin = static_cast<double>(w.last_sign);
      w.last_sign = s_end;
      if (!direction_matches(w.spec.direction, g_begin, g_end)) continue;
      // Bisection in theta on the interpolant.
      auto gth = [&](double th) {
        const PhaseState p = ds.at(th);
        return event_function(system, w.spec.kind, p.x, p.y);
      };
      double lo = 0.0;
      double hi = 1.0;
      double glo = gth(lo);
      for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) break;
        const double gm = gth(mid);
        if (gm == 0.0) {
          lo = hi = mid;
          break;
        }
        if (sgn(gm) == sgn(glo)) {
          lo = mid;
          glo = gm;
        } else {
          hi = mid;
        }
      }
      const double theta = std::abs(gth(lo)) <= std::abs(gth(hi)) ? lo : hi;
      if (w.stops && ++w.hits >= w.spec.count) stop_theta = theta;
      traj.events.push_back({w.spec.kind, ds.at(theta)});
    }

    ++traj.steps;
    if (stop_theta >= 0.0) {
      // Drop watched events past the stop point.
      const double t_stop = ds.at(stop_theta).t;
      std::erase_if(traj.events, [&](const Event& e) { return dir * (e.state.t - t_stop) > 0.0; });
      ds.theta_max = stop_theta;
      const PhaseState end = ds.at(stop_theta);
      if (ctrl.record) traj.dense.push_back(ds);
      return finish(Status::event_reached, end);
    }
    if (ctrl.record) {
      traj.dense.push_back(ds);
      traj.states.push_back({t + hs, y1.x, y1.y});
    }

    const bool was_growing = growing(y, y1);
    t += hs;
    y = y1;
    k1 = k7;
    if (std::hypot(y.x, y.y) > escape && was_growing) return finish(Status::domain_exit, {t, y.x, y.y});

    double fac = fac11 / std::pow(facold, kBeta);
    fac = std::max(1.0 / kFacMax, std::min(1.0 / kFacMin, fac / kSafe));
    double hnew = h / fac;
    if (last_rejected) hnew = std::min(hnew, h);
    facold = std::max(err, 1e-4);
    last_rejected = false;
    h = hnew;
  }
}

PotentialDelta path_potential_delta(const LienardSystem& system, const Trajectory& traj) {
  if (traj.dense.empty()) throw AnalysisError("trajectory has no dense record");
  const GaussRule& rule = gauss8();
  PotentialDelta out;
  const PhaseState& a = traj.start;
  const PhaseState& b = traj.end;
  out.delta_v = system.potential(b.x, b.y) - system.potential(a.x, a.y);
  double f_dy = 0.0;
  double fg_dt = 0.0;
  for (const DenseStep& ds : traj.dense) {
    const double half = 0.5 * ds.theta_max;
    double acc_dy = 0.0;
    double acc_dt = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      const double th = half * (1.0 + rule.nodes[i]);
      const PhaseState p = ds.at(th);
      double dx = 0.0;
      double dy = 0.0;
      ds.slope(th, dx, dy);
      const double F = system.F().value(p.x);
      acc_dy += rule.weights[i] * F * dy;
      acc_dt += rule.weights[i] * F * system.g().value(p.x);
    }
    f_dy += half * acc_dy;
    fg_dt += half * acc_dt * ds.h;
  }
  out.integral_F_dy = f_dy;
  out.integral_gF_dt = -fg_dt;
  return out;
}

}  // namespace lienard
