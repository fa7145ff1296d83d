#include <algorithm>
#include <cmath>

#include "lienard/errors.hpp"
#include "test_support.hpp"

using namespace lienard;
using doctest::Approx;

namespace {

std::vector<LienardSystem> catalog() {
  return {builtin("vdp", {{"mu", 1.0}}),         builtin("vdp_bounded", {{"mu", 1.0}}),
          builtin("quintic", {{"k", 3.0}}),      builtin("quintic", {{"k", 3.5}}),
          builtin("two_cycle"),                  builtin("three_cycle")};
}

}  // namespace

TEST_CASE("eval examples") {
  const LienardSystem q = builtin("quintic", {{"k", 3.5}});
  CHECK(q.F().value(1.0) == Approx(-1.4).epsilon(1e-14));
  CHECK(q.g().antiderivative(2.0) == Approx(2.0).epsilon(1e-15));
  const LienardSystem v = builtin("vdp", {{"mu", 1.0}});
  CHECK(std::abs(v.F().value(std::sqrt(3.0))) < 1e-15);
  CHECK(v.F().eval(Which::derivative, 2.0) == Approx(3.0).epsilon(1e-15));
  CHECK(v.F().eval(Which::antiderivative, 2.0) == Approx(-2.0 / 3.0).epsilon(1e-14));
}

TEST_CASE("eval beyond a finite domain is a domain error") {
  const LienardSystem b = builtin("vdp_bounded", {{"mu", 1.0}, {"finite", 1.0}});
  CHECK(b.d() == 3.0);
  CHECK_THROWS_AS(b.F().value(3.5), DomainError);
  CHECK_THROWS_AS(b.F().value(-3.5), DomainError);
}

TEST_CASE("malformed tilings are structural errors") {
  CHECK_THROWS_AS(FunctionModel("gap", {Segment{0.0, 1.0, Constant{0.0}},
                                        Segment{1.5, kInf, Constant{0.0}}}),
                  StructuralError);
  CHECK_THROWS_AS(FunctionModel("overlap", {Segment{0.0, 1.0, Constant{0.0}},
                                            Segment{0.5, kInf, Constant{0.0}}}),
                  StructuralError);
  CHECK_THROWS_AS(FunctionModel("empty", {}), StructuralError);
}

TEST_CASE("validate_model examples") {
  SUBCASE("single polynomial segment") {
    const ValidationReport r = validate_model(test::polynomial("p", {0, 1, 0, 2}), true);
    CHECK(r.pass);
    CHECK(r.joints.empty());
    CHECK(r.max_value_residual == 0.0);
    CHECK(r.max_derivative_residual == 0.0);
  }
  SUBCASE("value mismatch of 1e-3 at the joint") {
    const FunctionModel m("jump", {Segment{0.0, 1.0, Polynomial{{0.0, 1.0}}},
                                   Segment{1.0, kInf, Constant{1.001}}});
    const ValidationReport r = validate_model(m, false);
    CHECK_FALSE(r.pass);
    REQUIRE(r.joints.size() == 1);
    CHECK(r.joints[0].x == 1.0);
    CHECK(r.max_value_residual == Approx(1e-3).epsilon(1e-9));
  }
  SUBCASE("two_cycle model is C1") {
    const ValidationReport r = validate_model(builtin("two_cycle").F(), true);
    CHECK(r.pass);
    CHECK(r.max_derivative_residual < 1e-12);
  }
  SUBCASE("three_cycle model: values match, slopes do not at 5e-7") {
    // Multiprecision evaluation of the published constants gives slope jumps
    // of 6.0e-7, 1.56e-5 and 1.62e-5 at the three joints and F(0+) = -2.1e-9.
    const LienardSystem sys = builtin("three_cycle");
    const FunctionModel& F = sys.F();
    const ValidationReport c0 = validate_model(F, false);
    CHECK(c0.pass);
    CHECK(c0.max_value_residual <= 5e-7);
    CHECK(c0.origin_residual == Approx(2.1e-9).epsilon(0.05));
    const ValidationReport c1 = validate_model(F, true);
    REQUIRE(c1.joints.size() == 3);
    CHECK(c1.joints[0].derivative_residual == Approx(6.0e-7).epsilon(0.05));
    CHECK(c1.joints[1].derivative_residual == Approx(1.56e-5).epsilon(0.05));
    CHECK(c1.joints[2].derivative_residual == Approx(1.62e-5).epsilon(0.05));
    CHECK_FALSE(c1.pass);
  }
}

TEST_CASE("find_zero_structure examples") {
  SUBCASE("quintic k=3.5 zeros") {
    const ZeroStructure z = find_zero_structure(builtin("quintic", {{"k", 3.5}}));
    REQUIRE(z.zeros.size() == 2);
    CHECK(std::abs(z.zeros[0] - 0.4919) < 1e-4);
    CHECK(std::abs(z.zeros[1] - 0.68725) < 1e-4);
    // independent brentq oracle
    CHECK(std::abs(z.zeros[0] - 0.4919021716285443) < 1e-11);
    CHECK(std::abs(z.zeros[1] - 0.6872539325699317) < 1e-11);
  }
  SUBCASE("quintic k=3 extrema") {
    const ZeroStructure z = find_zero_structure(builtin("quintic", {{"k", 3.0}}));
    REQUIRE(z.extrema.size() == 2);
    CHECK(std::abs(z.extrema[0] - 0.24638) < 1e-4);
    CHECK(std::abs(z.extrema[1] - 0.66279) < 1e-4);
    REQUIRE(z.values_at_extrema.size() == 2);
    CHECK(z.values_at_extrema[0] < 0.0);
    CHECK(z.values_at_extrema[1] > 0.0);
  }
  SUBCASE("F(x) = x has no positive zero or extremum") {
    const ZeroStructure z = find_zero_structure(test::poly_system({0.0, 1.0}));
    CHECK(z.zeros.empty());
    CHECK(z.extrema.empty());
    CHECK(z.non_simple.empty());
  }
  SUBCASE("double root is listed as non-simple") {
    // F = x (x - 1)^2 = x - 2x^2 + x^3 touches zero at x = 1.
    const ZeroStructure z = find_zero_structure(test::poly_system({0.0, 1.0, -2.0, 1.0}));
    CHECK(z.zeros.empty());
    REQUIRE(z.non_simple.size() == 1);
    CHECK(z.non_simple[0] == Approx(1.0).epsilon(1e-4));
  }
}

TEST_CASE("builtin catalog") {
  SUBCASE("two_cycle zeros") {
    const ZeroStructure z = find_zero_structure(builtin("two_cycle"));
    REQUIRE(z.zeros.size() == 2);
    CHECK(std::abs(z.zeros[0] - 0.1) < 1e-12);
    CHECK(std::abs(z.zeros[1] - 0.25052350868645645) < 1e-12);
  }
  SUBCASE("three_cycle zeros") {
    const ZeroStructure z = find_zero_structure(builtin("three_cycle"));
    REQUIRE(z.zeros.size() == 3);
    CHECK(std::abs(z.zeros[0] - 0.097979588) < 1e-8);
    CHECK(std::abs(z.zeros[1] - 0.197647912) < 1e-8);
    CHECK(std::abs(z.zeros[2] - 0.397273968) < 1e-8);
    for (double a : z.zeros) CHECK(std::abs(builtin("three_cycle").F().value(a)) <= 1e-10);
  }
  SUBCASE("vdp with mu = 0 has F identically zero") {
    const LienardSystem s = builtin("vdp", {{"mu", 0.0}});
    for (double x : {0.1, 1.0, 7.0}) CHECK(s.F().value(x) == 0.0);
  }
  SUBCASE("errors") {
    CHECK_THROWS_AS(builtin("no_such_model"), LookupError);
    CHECK_THROWS_AS(builtin("vdp"), ConfigError);
    CHECK_THROWS_AS(builtin("quintic"), ConfigError);
  }
  SUBCASE("vdp_bounded breakpoints and constant tail") {
    const LienardSystem s = builtin("vdp_bounded", {{"mu", 1.0}});
    const std::vector<double> j = s.F().joints();
    REQUIRE(j.size() == 2);
    CHECK(j[0] == Approx(2.4));
    CHECK(j[1] == Approx(3.0));
    CHECK(s.F().tail() == Tail::bounded);
    CHECK(s.F().value(5.0) == Approx(s.F().value(3.0)).epsilon(1e-12));
    CHECK(validate_model(s.F(), true).pass);
  }
}

TEST_CASE("property: odd symmetry of every builtin") {
  for (const LienardSystem& s : catalog()) {
    CAPTURE(s.name());
    const double top = std::min(s.scan_horizon(), s.d());
    double worst_value = 0.0;
    double worst_anti = 0.0;
    for (int i = 0; i < 1000; ++i) {
      const double x = test::uniform(0.0, top);
      worst_value = std::max(worst_value, std::abs(s.F().value(-x) + s.F().value(x)));
      worst_value = std::max(worst_value, std::abs(s.g().value(-x) + s.g().value(x)));
      worst_anti = std::max(worst_anti, std::abs(s.F().antiderivative(-x) - s.F().antiderivative(x)));
      worst_anti = std::max(worst_anti, std::abs(s.G(-x) - s.G(x)));
    }
    CHECK(worst_value <= 1e-12);
    CHECK(worst_anti <= 1e-10);
  }
}

TEST_CASE("property: derivative matches central differences away from joints") {
  for (const LienardSystem& s : catalog()) {
    CAPTURE(s.name());
    const std::vector<double> joints = s.F().joints();
    const double top = std::min(s.scan_horizon(), s.d());
    int checked = 0;
    while (checked < 300) {
      const double x = test::uniform(1e-3, 0.999 * top);
      const bool near_joint = std::any_of(joints.begin(), joints.end(),
                                          [&](double j) { return std::abs(x - j) < 5e-3; });
      if (near_joint) continue;
      const double h = 1e-6 * std::max(1.0, x);
      const double fd = (s.F().value(x + h) - s.F().value(x - h)) / (2.0 * h);
      const double f = s.F().derivative(x);
      CAPTURE(x);
      CHECK(std::abs(fd - f) <= 1e-6 * std::max(std::abs(f), 1.0));
      ++checked;
    }
  }
}

TEST_CASE("property: zero structure is stable under grid doubling") {
  for (const LienardSystem& s : catalog()) {
    CAPTURE(s.name());
    const ZeroStructure a = find_zero_structure(s, 1000);
    const ZeroStructure b = find_zero_structure(s, 2000);
    REQUIRE(a.zeros.size() == b.zeros.size());
    REQUIRE(a.extrema.size() == b.extrema.size());
    for (std::size_t i = 0; i < a.zeros.size(); ++i) CHECK(std::abs(a.zeros[i] - b.zeros[i]) <= 1e-10);
    for (std::size_t i = 0; i < a.extrema.size(); ++i) {
      CHECK(std::abs(a.extrema[i] - b.extrema[i]) <= 1e-10);
    }
  }
}

TEST_CASE("property: closed-form G for g(x) = x") {
  const LienardSystem s = builtin("vdp", {{"mu", 1.0}});
  for (int i = 0; i < 1000; ++i) {
    const double x = test::uniform(-20.0, 20.0);
    CHECK(std::abs(s.G(x) - 0.5 * x * x) <= 1e-14 * std::max(1.0, 0.5 * x * x));
  }
}
