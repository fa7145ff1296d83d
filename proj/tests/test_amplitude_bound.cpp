#include <cmath>

#include "lienard/amplitude.hpp"
#include "lienard/errors.hpp"
#include "lienard/theorems.hpp"
#include "test_support.hpp"

using namespace lienard;
using doctest::Approx;

TEST_CASE("solve_alpha examples") {
  CHECK(solve_alpha(builtin("vdp", {{"mu", 0.0}}), 2.0, {0.0, 4.0}) == Approx(2.0).epsilon(1e-12));
  const LienardSystem q = builtin("quintic", {{"k", 3.5}});
  const ZeroStructure z = find_zero_structure(q);
  // From the published intercept 0.624499 the root is the published 0.62393.
  CHECK(std::abs(solve_alpha(q, 0.624499, {z.zeros[0], z.zeros[1]}) - 0.62393) < 1e-4);
  CHECK(std::abs(solve_alpha(builtin("vdp", {{"mu", 1.0}}), 2.1727135, {std::sqrt(3.0), 4.0}) -
                 2.0327736318) < 1e-6);
  // Infinite right end is expanded.
  CHECK(solve_alpha(builtin("vdp", {{"mu", 0.0}}), 50.0, {0.0, kInf}) == Approx(50.0).epsilon(1e-12));
  CHECK_THROWS_AS(solve_alpha(builtin("vdp", {{"mu", 1.0}}), 2.0, {0.1, 0.2}), NoRootError);
}

TEST_CASE("alpha_bar examples") {
  const LienardSystem v01 = builtin("vdp", {{"mu", 0.1}});
  const AlphaBarResult a = alpha_bar(v01, 2.00117, {1.0, 4.0});
  CHECK(std::abs(a.alpha_bar - 2.0000586437) < 1e-6);
  const AlphaBarResult b = alpha_bar(builtin("vdp", {{"mu", 10.0}}), 7.5528123, {std::sqrt(3.0), 4.0});
  CHECK(std::abs(b.alpha_bar - 2.0200959691) < 1e-6);

  const LienardSystem t = builtin("three_cycle");
  const ZeroStructure z = find_zero_structure(t);
  const std::vector<LimitCycle> c = find_limit_cycles(t);
  REQUIRE(c.size() == 3);
  const AlphaBarResult b1 = alpha_bar(t, c[0], {z.zeros[0], z.zeros[1]}, 1);
  const AlphaBarResult b2 = alpha_bar(t, c[1], {z.zeros[1], z.zeros[2]}, 2);
  CHECK(std::abs(b1.alpha_bar - 0.133002186) < 1e-5);
  CHECK(std::abs(b2.alpha_bar - 0.21203506657) < 1e-5);
  // independent oracle (brentq on the oracle intercepts)
  CHECK(std::abs(b1.alpha_bar - 0.13299976849617415) < 1e-8);
  CHECK(std::abs(b2.alpha_bar - 0.21203537438424053) < 1e-8);
  CHECK(b1.interval_index == 1);
  CHECK(b2.interval_index == 2);
}

TEST_CASE("alpha_bar of the van der Pol cycles against the oracle") {
  const double mus[] = {0.1, 1.0, 5.0};
  const double oracle[] = {2.0006535640001846, 2.032773726195946, 2.0351546605582693};
  for (int i = 0; i < 3; ++i) {
    const LienardSystem s = builtin("vdp", {{"mu", mus[i]}});
    const std::vector<LimitCycle> c = find_limit_cycles(s);
    REQUIRE(c.size() == 1);
    CHECK(std::abs(alpha_bar(s, c[0], {std::sqrt(3.0), kInf}).alpha_bar - oracle[i]) < 1e-8);
  }
}

TEST_CASE("property: invariants of AlphaBarResult") {
  const LienardSystem systems[] = {builtin("vdp", {{"mu", 1.0}}), builtin("quintic", {{"k", 3.0}}),
                                   builtin("two_cycle"), builtin("three_cycle")};
  for (const LienardSystem& s : systems) {
    CAPTURE(s.name());
    const ZeroStructure z = find_zero_structure(s);
    const std::vector<LimitCycle> cycles = find_limit_cycles(s);
    std::vector<double> edges = z.zeros;
    edges.push_back(s.d());
    int checked = 0;
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
      for (const LimitCycle& c : cycles) {
        if (!(c.amplitude > edges[i] && c.amplitude < edges[i + 1])) continue;
        const AlphaBarResult r = alpha_bar(s, c, {edges[i], edges[i + 1]}, static_cast<int>(i + 1));
        const double half = 0.5 * c.y_plus0 * c.y_plus0;
        const double Fa = s.F().value(r.alpha_prime);
        CHECK(std::abs(s.G(r.alpha_prime) + 0.5 * Fa * Fa - half) <= 1e-10);
        CHECK(r.alpha_bar == std::max(r.alpha_prime, r.alpha_double_prime));
        CHECK(r.alpha_prime == r.alpha_double_prime);
        CHECK(r.alpha_bar >= c.amplitude);
        CHECK(r.alpha_bar - c.amplitude <= 0.05 * c.amplitude);
        ++checked;
        break;
      }
    }
    CHECK(checked >= 1);
  }
}

TEST_CASE("property: amplitudes interleave with the bounds on theorem-satisfying models") {
  // alpha-bar_{i-1} < amplitude_i <= alpha-bar_i with alpha-bar_0 = L_0.
  for (const LienardSystem& s : {builtin("quintic", {{"k", 3.0}}), builtin("two_cycle"),
                                 builtin("three_cycle"), builtin("vdp", {{"mu", 1.0}})}) {
    CAPTURE(s.name());
    const CountPrediction p = predict_count(s);
    REQUIRE(p.predicted_N.has_value());
    const ZeroStructure z = find_zero_structure(s);
    const std::vector<LimitCycle> cycles = find_limit_cycles(s);
    REQUIRE(static_cast<int>(cycles.size()) == *p.predicted_N);
    double prev = z.extrema.empty() ? 0.0 : z.extrema.front();
    std::vector<double> edges = z.zeros;
    edges.push_back(s.d());
    for (std::size_t i = 0; i < cycles.size(); ++i) {
      const double bound = alpha_bar(s, cycles[i], {edges[i], edges[i + 1]}).alpha_bar;
      CHECK(prev < cycles[i].amplitude);
      CHECK(cycles[i].amplitude <= bound);
      prev = bound;
    }
  }
}

TEST_CASE("property: bounded tail does not change alpha-bar") {
  for (double mu : {0.1, 1.0, 5.0}) {
    CAPTURE(mu);
    const LienardSystem a = builtin("vdp", {{"mu", mu}});
    const LienardSystem b = builtin("vdp_bounded", {{"mu", mu}});
    const LimitCycle ca = find_limit_cycles(a).at(0);
    const LimitCycle cb = find_limit_cycles(b).at(0);
    const double xa = alpha_bar(a, ca, {std::sqrt(3.0), kInf}).alpha_bar;
    const double xb = alpha_bar(b, cb, {std::sqrt(3.0), kInf}).alpha_bar;
    CHECK(std::abs(xa - xb) <= 1e-9);
  }
}

TEST_CASE("property: van der Pol alpha-bar stays below 2.05 on mu in [0, 10]") {
  // mu = 0 is a center (no isolated cycle); there every orbit is a circle and
  // alpha-bar from y0 = 2 is 2.
  CHECK(solve_alpha(builtin("vdp", {{"mu", 0.0}}), 2.0, {0.0, kInf}) <= 2.05);
  for (int i = 1; i <= 40; ++i) {
    const double mu = 0.25 * i;
    CAPTURE(mu);
    const LienardSystem s = builtin("vdp", {{"mu", mu}});
    const std::vector<LimitCycle> c = find_limit_cycles(s);
    REQUIRE(c.size() == 1);
    const double ab = alpha_bar(s, c[0], {std::sqrt(3.0), kInf}).alpha_bar;
    CHECK(ab <= 2.05);
    CHECK(ab >= c[0].amplitude);
  }
}
