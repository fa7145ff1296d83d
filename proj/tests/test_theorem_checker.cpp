#include <algorithm>
#include <cmath>

#include "lienard/errors.hpp"
#include "lienard/io.hpp"
#include "lienard/theorems.hpp"
#include "test_support.hpp"

using namespace lienard;
using doctest::Approx;

namespace {

const Hypothesis& hyp(const TheoremReport& r, const std::string& id) {
  for (const Hypothesis& h : r.hypotheses) {
    if (h.id == id) return h;
  }
  FAIL("missing hypothesis " << id);
  return r.hypotheses.front();
}

bool all_pass(const TheoremReport& r) {
  return std::all_of(r.hypotheses.begin(), r.hypotheses.end(),
                     [](const Hypothesis& h) { return h.verdict == Verdict::pass; });
}

bool has_note(const TheoremReport& r, const std::string& needle) {
  return std::any_of(r.notes.begin(), r.notes.end(),
                     [&](const std::string& n) { return n.find(needle) != std::string::npos; });
}

}  // namespace

TEST_CASE("theorem names") {
  for (Theorem t : {Theorem::classical, Theorem::extension, Theorem::two_cycle, Theorem::n_cycle}) {
    CHECK(parse_theorem(theorem_name(t)) == t);
  }
  CHECK_THROWS_AS(parse_theorem("fermat"), LookupError);
}

TEST_CASE("classical theorem on van der Pol") {
  const TheoremReport r = check_hypotheses(builtin("vdp", {{"mu", 1.0}}), Theorem::classical);
  CHECK(r.hypotheses.size() == 4);
  CHECK(all_pass(r));
  REQUIRE(r.predicted_N.has_value());
  CHECK(*r.predicted_N == 1);
}

TEST_CASE("extension theorem on the bounded van der Pol model") {
  const LienardSystem s = builtin("vdp_bounded", {{"mu", 1.0}});
  const TheoremReport classical = check_hypotheses(s, Theorem::classical);
  CHECK(hyp(classical, "iv").verdict == Verdict::fail);
  CHECK(has_note(classical, "extension"));
  const TheoremReport ext = check_hypotheses(s, Theorem::extension);
  CHECK(all_pass(ext));
  REQUIRE(ext.predicted_N.has_value());
  CHECK(*ext.predicted_N == 1);
  REQUIRE(ext.alpha_bars.size() == 1);
  CHECK(ext.alpha_bars[0].alpha_bar == Approx(2.032773726195946).epsilon(1e-8));
}

TEST_CASE("two-cycle theorem on the quintic family") {
  SUBCASE("k = 3: all hypotheses hold") {
    const TheoremReport r = check_hypotheses(builtin("quintic", {{"k", 3.0}}), Theorem::two_cycle);
    CHECK(all_pass(r));
    REQUIRE(r.predicted_N.has_value());
    CHECK(*r.predicted_N == 2);
    REQUIRE(r.alpha_bars.size() == 1);
    REQUIRE(r.extrema_compared.size() == 1);
    CHECK(std::abs(r.extrema_compared[0] - 0.66279) < 1e-4);
    CHECK(r.alpha_bars[0].alpha_bar < r.extrema_compared[0]);
    CHECK(std::abs(r.alpha_bars[0].alpha_bar - 0.5576704014536147) < 1e-8);
  }
  SUBCASE("k = 225/64: condition iv fails") {
    const LienardSystem s = builtin("quintic", {{"k", 3.515625}});
    const TheoremReport r = check_hypotheses(s, Theorem::two_cycle);
    CHECK(hyp(r, "iv").verdict == Verdict::fail);
    CHECK_FALSE(r.predicted_N.has_value());
    CHECK(std::abs(find_zero_structure(s).extrema.at(1) - 0.60348) < 1e-4);
  }
  SUBCASE("k = 3.5: condition iv fails although two cycles exist") {
    const LienardSystem s = builtin("quintic", {{"k", 3.5}});
    const TheoremReport r = check_hypotheses(s, Theorem::two_cycle);
    CHECK(hyp(r, "iv").verdict == Verdict::fail);
    CHECK_FALSE(r.predicted_N.has_value());
    CHECK(has_note(r, ">= L"));
    CHECK(find_limit_cycles(s).size() == 2);
  }
}

TEST_CASE("predict_count examples") {
  SUBCASE("three_cycle") {
    const CountPrediction p = predict_count(builtin("three_cycle"));
    REQUIRE(p.predicted_N.has_value());
    CHECK(*p.predicted_N == 3);
    CHECK(p.report.theorem == Theorem::n_cycle);
    REQUIRE(p.report.alpha_bars.size() == 2);
    CHECK(std::abs(p.report.alpha_bars[0].alpha_bar - 0.133002186) < 1e-5);
    CHECK(std::abs(p.report.alpha_bars[1].alpha_bar - 0.21203506657) < 1e-5);
    CHECK(has_note(p.report, "|F(L0)|"));
    CHECK(has_note(p.report, "f jumps"));
  }
  SUBCASE("quintic k = 3.5: no prediction, with notes for every rejected theorem") {
    const CountPrediction p = predict_count(builtin("quintic", {{"k", 3.5}}));
    CHECK_FALSE(p.predicted_N.has_value());
    CHECK(p.tried.size() == 4);
    for (const char* name : {"n_cycle", "two_cycle", "extension", "classical"}) {
      CHECK(has_note(p.report, std::string(name) + " rejected"));
    }
  }
  SUBCASE("two_cycle model") {
    const CountPrediction p = predict_count(builtin("two_cycle"));
    REQUIRE(p.predicted_N.has_value());
    CHECK(*p.predicted_N == 2);
    REQUIRE(p.report.alpha_bars.size() == 1);
    CHECK(std::abs(p.report.alpha_bars[0].alpha_bar - 0.1222144) < 1e-5);
    CHECK(has_note(p.report, "< L = 0.1499999"));
  }
  SUBCASE("quintic k = 3.65: no zero structure for any theorem") {
    const CountPrediction p = predict_count(builtin("quintic", {{"k", 3.65}}));
    CHECK_FALSE(p.predicted_N.has_value());
  }
}

TEST_CASE("missing alpha-bar fails the hypothesis with a note") {
  const LienardSystem s = builtin("quintic", {{"k", 3.0}});
  const std::vector<LimitCycle> none;
  const TheoremReport r = check_hypotheses(s, Theorem::two_cycle, &none);
  CHECK(hyp(r, "iv").verdict == Verdict::fail);
  CHECK(has_note(r, "alpha-bar cannot be formed"));
  CHECK_FALSE(r.predicted_N.has_value());
}

TEST_CASE("property: predictions are sound on the corpus") {
  const LienardSystem corpus[] = {builtin("vdp", {{"mu", 0.1}}), builtin("vdp", {{"mu", 1.0}}),
                                  builtin("vdp", {{"mu", 5.0}}), builtin("quintic", {{"k", 3.0}}),
                                  builtin("two_cycle"),          builtin("three_cycle")};
  for (const LienardSystem& s : corpus) {
    CAPTURE(s.name());
    const CountPrediction p = predict_count(s);
    REQUIRE(p.predicted_N.has_value());
    CHECK(find_limit_cycles(s).size() == static_cast<std::size_t>(*p.predicted_N));
    // predicted_N is set iff every verdict passes
    for (const TheoremReport& r : p.tried) CHECK(r.predicted_N.has_value() == all_pass(r));
  }
}

TEST_CASE("property: reports are deterministic") {
  for (const LienardSystem& s : {builtin("three_cycle"), builtin("quintic", {{"k", 3.5}})}) {
    const std::string a = to_json(predict_count(s).report).dump(2);
    const std::string b = to_json(predict_count(s).report).dump(2);
    CHECK(a == b);
  }
}
