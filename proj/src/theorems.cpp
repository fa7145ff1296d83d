#include "lienard/theorems.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "lienard/errors.hpp"
#include "lienard/function_model.hpp"

namespace lienard {

namespace {

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

struct Checker {
  const LienardSystem& system;
  const CheckSettings& settings;
  const std::vector<LimitCycle>* given_cycles;
  std::vector<LimitCycle> owned_cycles;
  bool cycles_ready = false;
  ZeroStructure zs;

  Checker(const LienardSystem& s, const CheckSettings& cs, const std::vector<LimitCycle>* c)
      : system(s), settings(cs), given_cycles(c), zs(find_zero_structure(s)) {}

  const std::vector<LimitCycle>& cycles() {
    if (given_cycles != nullptr) return *given_cycles;
    if (!cycles_ready) {
      owned_cycles = find_limit_cycles(system);
      cycles_ready = true;
    }
    return owned_cycles;
  }

  double clip(double x) const {
    return x >= system.d() ? std::nextafter(system.d(), 0.0) : x;
  }

  /// Horizon of the asymptotic checks beyond the last zero.
  double horizon() const {
    const double aN = zs.zeros.empty() ? 0.0 : zs.zeros.back();
    const double h = aN > 0.0 ? settings.horizon_factor * aN : system.scan_horizon();
    return clip(std::min(h, system.d()));
  }

  /// min over samples in (lo, hi] of sign * f(x).
  double min_slope(double lo, double hi, double sign) const {
    hi = clip(hi);
    double worst = std::numeric_limits<double>::infinity();
    for (int i = 1; i <= settings.samples; ++i) {
      const double x = lo + (hi - lo) * i / settings.samples;
      worst = std::min(worst, sign * system.F().derivative(x));
    }
    return worst;
  }

  /// Extrema of F strictly inside (lo, hi).
  std::vector<double> extrema_in(double lo, double hi) const {
    std::vector<double> out;
    for (double e : zs.extrema) {
      if (e > lo && e < hi) out.push_back(e);
    }
    return out;
  }

  /// alpha-bar for interval (lo, hi) from the first cycle with amplitude there.
  std::optional<AlphaBarResult> bound_for(double lo, double hi, int index,
                                          std::vector<std::string>& notes) {
    for (const LimitCycle& c : cycles()) {
      if (c.amplitude > lo && c.amplitude < hi) {
        try {
          return alpha_bar(system, c, {lo, hi}, index);
        } catch (const NumericalError& e) {
          notes.push_back("interval " + std::to_string(index) + ": " + e.what());
          return std::nullopt;
        }
      }
    }
    notes.push_back("interval " + std::to_string(index) + " (" + fmt(lo) + ", " + fmt(hi) +
                    "): no detected cycle amplitude, so alpha-bar cannot be formed");
    return std::nullopt;
  }

  Hypothesis continuity(std::vector<std::string>& notes) const {
    Hypothesis h{"i", "f and g are continuous (values of F and g match at every joint)",
                 Verdict::fail, {}};
    const ValidationReport vF = validate_model(system.F(), false, settings.continuity_tol);
    const ValidationReport vg = validate_model(system.g(), false, settings.continuity_tol);
    const ValidationReport dF = validate_model(system.F(), true, settings.continuity_tol);
    h.witness = {vF.max_value_residual, vg.max_value_residual, dF.max_derivative_residual};
    h.verdict = vF.pass && vg.pass ? Verdict::pass : Verdict::fail;
    if (dF.max_derivative_residual > settings.continuity_tol) {
      notes.push_back("f jumps by up to " + fmt(dF.max_derivative_residual) +
                      " at segment joints; only value continuity of F is enforced");
    }
    return h;
  }

  Hypothesis oddness() const {
    Hypothesis h{"ii", "F and g are odd and g(x) > 0 for x > 0", Verdict::fail, {}};
    const double top = clip(system.scan_horizon());
    double odd_F = 0.0;
    double odd_g = 0.0;
    double g_min = std::numeric_limits<double>::infinity();
    for (int i = 1; i <= settings.samples; ++i) {
      const double x = top * i / settings.samples;
      odd_F = std::max(odd_F, std::abs(system.F().value(-x) + system.F().value(x)));
      odd_g = std::max(odd_g, std::abs(system.g().value(-x) + system.g().value(x)));
      g_min = std::min(g_min, system.g().value(x));
    }
    h.witness = {odd_F, odd_g, g_min};
    h.verdict = odd_F <= settings.odd_tol && odd_g <= settings.odd_tol && g_min > 0.0
                    ? Verdict::pass
                    : Verdict::fail;
    return h;
  }

  bool simple_zero_count(std::size_t n) const {
    return zs.zeros.size() == n && zs.non_simple.empty();
  }
};

TheoremReport classical(Checker& c) {
  TheoremReport r;
  r.theorem = Theorem::classical;
  r.hypotheses.push_back(c.continuity(r.notes));
  r.hypotheses.push_back(c.oddness());

  Hypothesis iii{"iii", "F vanishes for x > 0 only at a single simple zero a", Verdict::fail,
                 c.zs.zeros};
  if (c.simple_zero_count(1)) iii.verdict = Verdict::pass;
  r.hypotheses.push_back(iii);

  Hypothesis iv{"iv", "F(x) -> +inf monotonically for x > a", Verdict::fail, {}};
  if (iii.verdict == Verdict::pass) {
    const double a = c.zs.zeros[0];
    const double h = c.horizon();
    const double slope = c.min_slope(a, h, 1.0);
    iv.witness = {slope, c.system.F().value(h)};
    const bool grows = c.system.F().tail() == Tail::grows_positive;
    if (!grows) r.notes.push_back("F stays bounded: a case for the extension theorem");
    iv.verdict = slope >= -c.settings.monotone_tol && grows &&
                         c.system.F().value(h) > c.system.F().value(a)
                     ? Verdict::pass
                     : Verdict::fail;
  } else {
    iv.verdict = Verdict::not_checked;
  }
  r.hypotheses.push_back(iv);
  return r;
}

TheoremReport extension(Checker& c) {
  TheoremReport r;
  r.theorem = Theorem::extension;
  r.hypotheses.push_back(c.continuity(r.notes));
  r.hypotheses.push_back(c.oddness());

  Hypothesis iii{"iii", "F vanishes for x > 0 only at a single zero a with 0 < a < d",
                 Verdict::fail, c.zs.zeros};
  if (c.simple_zero_count(1) && c.zs.zeros[0] < c.system.d()) iii.verdict = Verdict::pass;
  r.hypotheses.push_back(iii);

  Hypothesis iv{"iv",
                "alpha-bar exists, F is increasing on (a, alpha-bar] and nondecreasing on "
                "(alpha-bar, d)",
                Verdict::fail, {}};
  if (iii.verdict == Verdict::pass) {
    const double a = c.zs.zeros[0];
    const auto ab = c.bound_for(a, c.system.d(), 1, r.notes);
    if (ab) {
      r.alpha_bars.push_back(*ab);
      const double s1 = c.min_slope(a, ab->alpha_bar, 1.0);
      const double top = std::isfinite(c.system.d())
                             ? c.clip(c.system.d())
                             : std::max(c.horizon(), ab->alpha_bar * 2.0);
      const double s2 = c.min_slope(ab->alpha_bar, top, 1.0);
      iv.witness = {ab->alpha_bar, s1, s2};
      iv.verdict = s1 >= -c.settings.monotone_tol && s2 >= -c.settings.monotone_tol &&
                           c.system.F().value(ab->alpha_bar) > c.system.F().value(a)
                       ? Verdict::pass
                       : Verdict::fail;
    }
  } else {
    iv.verdict = Verdict::not_checked;
  }
  r.hypotheses.push_back(iv);
  return r;
}

/// First local maximum of F among the extrema in (lo, hi), if any.
std::optional<double> first_maximum(const Checker& c, double lo, double hi) {
  for (double e : c.extrema_in(lo, hi)) {
    const double dx = 1e-6 * std::max(1.0, e);
    if (c.system.F().derivative(e - dx) > 0.0) return e;
  }
  return std::nullopt;
}

TheoremReport two_cycle(Checker& c) {
  TheoremReport r;
  r.theorem = Theorem::two_cycle;
  r.hypotheses.push_back(c.continuity(r.notes));
  r.hypotheses.push_back(c.oddness());

  Hypothesis iii{"iii", "F has positive simple zeros only at a1 and a2, with a2 > alpha-bar",
                 Verdict::fail, {}};
  Hypothesis iv{"iv",
                "F is increasing on (a1, alpha-bar] with alpha-bar < L, the first local maximum "
                "of F in [a1, a2], and F(x) -> -inf monotonically for x > a2",
                Verdict::fail, {}};
  if (!c.simple_zero_count(2)) {
    iii.witness = c.zs.zeros;
    iv.verdict = Verdict::not_checked;
    r.hypotheses.push_back(iii);
    r.hypotheses.push_back(iv);
    return r;
  }
  const double a1 = c.zs.zeros[0];
  const double a2 = c.zs.zeros[1];
  const auto L = first_maximum(c, a1, a2);
  const auto ab = c.bound_for(a1, a2, 1, r.notes);
  iii.witness = {a1, a2, ab ? ab->alpha_bar : std::nan("")};
  if (ab) {
    r.alpha_bars.push_back(*ab);
    if (ab->alpha_bar < a2) iii.verdict = Verdict::pass;
  }
  if (L) r.extrema_compared.push_back(*L);
  if (!L) r.notes.push_back("F has no local maximum in [a1, a2]");
  if (ab && L) {
    r.notes.push_back("alpha-bar = " + fmt(ab->alpha_bar) + (ab->alpha_bar < *L ? " < " : " >= ") +
                      "L = " + fmt(*L));
  }

  const double h = c.horizon();
  const double tail_slope = c.min_slope(a2, h, -1.0);
  const bool falls = c.system.F().tail() == Tail::grows_negative;
  if (ab) {
    const double s1 = c.min_slope(a1, ab->alpha_bar, 1.0);
    iv.witness = {ab->alpha_bar, L ? *L : std::nan(""), s1, tail_slope};
    iv.verdict = L && ab->alpha_bar < *L && s1 >= -c.settings.monotone_tol &&
                         tail_slope >= -c.settings.monotone_tol && falls
                     ? Verdict::pass
                     : Verdict::fail;
  } else {
    iv.witness = {std::nan(""), L ? *L : std::nan(""), std::nan(""), tail_slope};
    r.notes.push_back("hypothesis iv needs alpha-bar, which is missing");
  }
  r.hypotheses.push_back(iii);
  r.hypotheses.push_back(iv);
  return r;
}

TheoremReport n_cycle(Checker& c) {
  TheoremReport r;
  r.theorem = Theorem::n_cycle;
  r.hypotheses.push_back(c.continuity(r.notes));
  r.hypotheses.push_back(c.oddness());

  const std::vector<double>& a = c.zs.zeros;
  const std::size_t N = a.size();
  Hypothesis iii{"iii",
                 "F has N positive simple zeros a_1 < ... < a_N and each (a_i, a_i+1) holds a "
                 "unique extremum L_i (only the first one counts for i = N-1)",
                 Verdict::fail, a};
  Hypothesis iv{"iv",
                "alpha-bar_i < L_i and F is monotonic on (a_i, alpha-bar_i] for every i, and "
                "|F(x)| -> inf monotonically for x > a_N",
                Verdict::fail, {}};
  if (N == 0 || !c.zs.non_simple.empty()) {
    r.notes.push_back(N == 0 ? "F has no positive zero" : "F has a non-simple positive zero");
    iv.verdict = Verdict::not_checked;
    r.hypotheses.push_back(iii);
    r.hypotheses.push_back(iv);
    return r;
  }

  bool iii_ok = true;
  bool iv_ok = true;
  std::vector<double> iv_witness;
  for (std::size_t i = 0; i + 1 < N; ++i) {
    const int index = static_cast<int>(i + 1);
    const std::vector<double> ext = c.extrema_in(a[i], a[i + 1]);
    const bool last = i + 2 == N;
    if (ext.empty() || (!last && ext.size() != 1)) {
      r.notes.push_back("interval " + std::to_string(index) + " holds " +
                        std::to_string(ext.size()) + " extrema");
      iii_ok = false;
    }
    const auto ab = c.bound_for(a[i], a[i + 1], index, r.notes);
    if (!ab) {
      iv_ok = false;
      iv_witness.push_back(std::nan(""));
      continue;
    }
    r.alpha_bars.push_back(*ab);
    iv_witness.push_back(ab->alpha_bar);
    if (!ext.empty()) {
      const double L = ext.front();
      r.extrema_compared.push_back(L);
      iv_witness.push_back(L);
      r.notes.push_back("interval " + std::to_string(index) + ": alpha-bar = " + fmt(ab->alpha_bar) +
                        (ab->alpha_bar < L ? " < " : " >= ") + "L = " + fmt(L));
      if (!(ab->alpha_bar < L)) iv_ok = false;
    } else {
      iv_ok = false;
    }
    const double mid = 0.5 * (a[i] + ab->alpha_bar);
    const double sign = c.system.F().derivative(mid) >= 0.0 ? 1.0 : -1.0;
    const double s = c.min_slope(a[i], ab->alpha_bar, sign);
    iv_witness.push_back(s);
    if (s < -c.settings.monotone_tol) iv_ok = false;
  }

  const double h = c.horizon();
  const Tail tail = c.system.F().tail();
  const double sign = tail == Tail::grows_positive ? 1.0 : -1.0;
  const double tail_slope = c.min_slope(a.back(), h, sign);
  iv_witness.push_back(tail_slope);
  if (tail == Tail::bounded) {
    r.notes.push_back("|F| stays bounded beyond a_N");
    iv_ok = false;
  }
  if (tail_slope < -c.settings.monotone_tol) iv_ok = false;

  if (N >= 3 && c.zs.extrema.size() >= 3) {
    const double f0 = std::abs(c.zs.values_at_extrema[0]);
    const double f2 = std::abs(c.zs.values_at_extrema[2]);
    r.notes.push_back("|F(L0)| = " + fmt(f0) + (f0 > f2 ? " > " : " <= ") + "|F(L2)| = " + fmt(f2));
  }

  iii.verdict = iii_ok ? Verdict::pass : Verdict::fail;
  iv.verdict = iv_ok ? Verdict::pass : Verdict::fail;
  iv.witness = iv_witness;
  r.hypotheses.push_back(iii);
  r.hypotheses.push_back(iv);
  return r;
}

TheoremReport run_check(Checker& c, Theorem t) {
  TheoremReport r;
  switch (t) {
    case Theorem::classical:
      r = classical(c);
      break;
    case Theorem::extension:
      r = extension(c);
      break;
    case Theorem::two_cycle:
      r = two_cycle(c);
      break;
    case Theorem::n_cycle:
      r = n_cycle(c);
      break;
  }
  const bool all = std::all_of(r.hypotheses.begin(), r.hypotheses.end(),
                               [](const Hypothesis& h) { return h.verdict == Verdict::pass; });
  if (all) {
    switch (t) {
      case Theorem::classical:
      case Theorem::extension:
        r.predicted_N = 1;
        break;
      case Theorem::two_cycle:
        r.predicted_N = 2;
        break;
      case Theorem::n_cycle:
        r.predicted_N = static_cast<int>(c.zs.zeros.size());
        break;
    }
  }
  return r;
}

}  // namespace

const char* theorem_name(Theorem t) {
  switch (t) {
    case Theorem::classical:
      return "classical";
    case Theorem::extension:
      return "extension";
    case Theorem::two_cycle:
      return "two_cycle";
    case Theorem::n_cycle:
      return "n_cycle";
  }
  return "unknown";
}

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::pass:
      return "pass";
    case Verdict::fail:
      return "fail";
    case Verdict::not_checked:
      return "not_checked";
  }
  return "unknown";
}

Theorem parse_theorem(const std::string& name) {
  for (Theorem t : {Theorem::classical, Theorem::extension, Theorem::two_cycle, Theorem::n_cycle}) {
    if (name == theorem_name(t)) return t;
  }
  throw LookupError("unknown theorem '" + name + "'");
}

TheoremReport check_hypotheses(const LienardSystem& system, Theorem theorem,
                               const std::vector<LimitCycle>* cycles,
                               const CheckSettings& settings) {
  Checker c(system, settings, cycles);
  return run_check(c, theorem);
}

CountPrediction predict_count(const LienardSystem& system, const std::vector<LimitCycle>* cycles,
                              const CheckSettings& settings) {
  Checker c(system, settings, cycles);
  CountPrediction out;
  std::vector<std::string> rejected;
  for (Theorem t : {Theorem::n_cycle, Theorem::two_cycle, Theorem::extension, Theorem::classical}) {
    TheoremReport r = run_check(c, t);
    out.tried.push_back(r);
    if (r.predicted_N) {
      out.predicted_N = r.predicted_N;
      out.report = r;
      for (const std::string& n : rejected) out.report.notes.push_back(n);
      return out;
    }
    std::string why = std::string(theorem_name(t)) + " rejected: hypotheses";
    for (const Hypothesis& h : r.hypotheses) {
      if (h.verdict != Verdict::pass) why += " " + h.id + "(" + verdict_name(h.verdict) + ")";
    }
    rejected.push_back(why);
  }
  out.report = out.tried.front();
  for (const std::string& n : rejected) out.report.notes.push_back(n);
  return out;
}

}  // namespace lienard
