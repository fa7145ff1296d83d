#include "lienard/amplitude.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include "lienard/errors.hpp"
#include "lienard/roots.hpp"

namespace lienard {

double alpha_residual(const LienardSystem& system, double y0, double alpha) {
  const double F = system.F().value(alpha);
  return system.G(alpha) + 0.5 * F * F - 0.5 * y0 * y0;
}

double solve_alpha(const LienardSystem& system, double y0, Interval bracket) {
  if (!(y0 > 0.0)) throw ConfigError("solve_alpha needs y0 > 0");
  auto r = [&](double a) { return alpha_residual(system, y0, a); };
  const double a = std::max(bracket.lo, 0.0);
  double b = std::min(bracket.hi, system.d());
  if (!std::isfinite(b)) {
    b = std::max({2.0 * a, y0, 1.0});
    for (int i = 0; i < 60 && !(r(b) > 0.0); ++i) b *= 2.0;
  } else if (b >= system.d()) {
    b = std::nextafter(b, a);
  }
  if (!(a < b)) throw NoRootError("solve_alpha: empty bracket");

  // Fine scan so that the smallest root is the one refined.
  constexpr int kSamples = 4000;
  double xa = a;
  double fa = r(xa);
  if (fa == 0.0 && a > 0.0) return a;
  for (int i = 1; i <= kSamples; ++i) {
    const double xb = a + (b - a) * i / kSamples;
    const double fb = r(xb);
    if (fb == 0.0) return xb;
    if ((fa < 0.0 && fb > 0.0) || (fa > 0.0 && fb < 0.0)) return bisect(r, xa, xb, fa, fb, 1e-12);
    xa = xb;
    fa = fb;
  }
  std::ostringstream os;
  os << "no root of G(a) + F(a)^2/2 = y0^2/2 for y0 = " << y0 << " in (" << bracket.lo << ", "
     << bracket.hi << ")";
  throw NoRootError(os.str());
}

AlphaBarResult alpha_bar(const LienardSystem& system, const LimitCycle& cycle, Interval bracket,
                         int interval_index) {
  AlphaBarResult out;
  out.y_plus0 = cycle.y_plus0;
  out.y_minus0 = cycle.y_minus0;
  out.interval_index = interval_index;
  out.alpha_prime = solve_alpha(system, cycle.y_plus0, bracket);
  out.alpha_double_prime = solve_alpha(system, std::abs(cycle.y_minus0), bracket);
  out.alpha_bar = std::max(out.alpha_prime, out.alpha_double_prime);
  if (std::abs(cycle.y_plus0 + cycle.y_minus0) <= 1e-14 * cycle.y_plus0 &&
      std::abs(out.alpha_prime - out.alpha_double_prime) > 1e-10) {
    throw AnalysisError("alpha' and alpha'' differ for a symmetric cycle");
  }
  return out;
}

AlphaBarResult alpha_bar(const LienardSystem& system, double y0, Interval bracket,
                         int interval_index) {
  LimitCycle c;
  c.y_plus0 = y0;
  c.y_minus0 = -y0;
  return alpha_bar(system, c, bracket, interval_index);
}

}  // namespace lienard
