#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lienard/amplitude.hpp"
#include "lienard/cycles.hpp"
#include "lienard/system.hpp"

namespace lienard {

enum class Theorem { classical, extension, two_cycle, n_cycle };
enum class Verdict { pass, fail, not_checked };

const char* theorem_name(Theorem t);
const char* verdict_name(Verdict v);
/// Throws LookupError for unknown names.
Theorem parse_theorem(const std::string& name);

struct Hypothesis {
  std::string id;
  std::string statement;
  Verdict verdict = Verdict::not_checked;
  std::vector<double> witness;
};

struct TheoremReport {
  Theorem theorem = Theorem::classical;
  std::vector<Hypothesis> hypotheses;
  /// Set iff every hypothesis passed.
  std::optional<int> predicted_N;
  std::vector<std::string> notes;
  /// Per-interval amplitude bounds used by the checks (interval_index 1..).
  std::vector<AlphaBarResult> alpha_bars;
  /// Extrema L_i compared against the bounds.
  std::vector<double> extrema_compared;
};

/// Tolerances of the numerical hypothesis checks.
struct CheckSettings {
  int samples = 1000;
  double odd_tol = 1e-10;
  double monotone_tol = 1e-12;
  double continuity_tol = 5e-7;
  /// Horizon factor for the asymptotic checks: beyond a_N up to
  /// min(d, factor * a_N).
  double horizon_factor = 10.0;
};

/// Verifies the hypotheses of `theorem`. Theorems whose hypotheses involve
/// the amplitude bound use `cycles` when given, otherwise they run the
/// default cycle scan. Each bound alpha-bar_i comes from the first cycle whose
/// amplitude lies in (a_i, a_{i+1}).
TheoremReport check_hypotheses(const LienardSystem& system, Theorem theorem,
                               const std::vector<LimitCycle>* cycles = nullptr,
                               const CheckSettings& settings = {});

struct CountPrediction {
  std::optional<int> predicted_N;
  TheoremReport report;
  /// Every report produced, in the order tried.
  std::vector<TheoremReport> tried;
};

/// Tries n_cycle, two_cycle, extension, classical and returns the first
/// theorem whose hypotheses all pass; otherwise the n_cycle report with notes
/// naming each rejected theorem.
CountPrediction predict_count(const LienardSystem& system,
                              const std::vector<LimitCycle>* cycles = nullptr,
                              const CheckSettings& settings = {});

}  // namespace lienard
