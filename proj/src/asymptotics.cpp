#include "lienard/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "lienard/errors.hpp"
#include "lienard/quadrature.hpp"
#include "lienard/roots.hpp"

namespace lienard {

namespace {

double horner(const std::vector<double>& c, double x) {
  double acc = 0.0;
  for (std::size_t i = c.size(); i-- > 0;) acc = acc * x + c[i];
  return acc;
}

}  // namespace

double phi(const PhiProblem& problem, double r) {
  if (!(r > 0.0)) throw DomainError("phi needs r > 0");
  auto integrand = [&](double u) {
    const double c = std::cos(u);
    return horner(problem.p, r * std::sin(u)) * r * c * c;
  };
  // 1e-12 absolute, relaxed to a few ulps of the integrand scale for large r
  // where cancellation alone exceeds 1e-12.
  double scale = 0.0;
  for (std::size_t i = 0; i < problem.p.size(); ++i) {
    scale += std::abs(problem.p[i]) * std::pow(r, static_cast<double>(i + 1));
  }
  const double tol = std::max(1e-12, 64.0 * std::numeric_limits<double>::epsilon() * scale);
  return integrate_doubling(integrand, 0.0, 2.0 * std::numbers::pi, tol).value;
}

PhiRoots phi_roots(const PhiProblem& problem, int grid_n) {
  if (grid_n < 100) throw ConfigError("phi_roots grid_n must be >= 100");
  const double lo = problem.r_range.lo;
  const double hi = problem.r_range.hi;
  if (!(lo > 0.0) || !(lo < hi)) throw ConfigError("phi_roots needs 0 < r_lo < r_hi");
  std::vector<double> grid(grid_n);
  std::vector<double> vals(grid_n);
  PhiRoots out;
  for (int i = 0; i < grid_n; ++i) {
    grid[i] = lo + (hi - lo) * i / (grid_n - 1);
    vals[i] = phi(problem, grid[i]);
    out.values.emplace_back(grid[i], vals[i]);
  }
  ScanOptions so;
  so.tol = 1e-12;
  so.touch_threshold = 1e-10;
  auto f = [&](double r) { return phi(problem, r); };
  for (const ScanRoot& root : scan_roots(f, grid, vals, so)) {
    (root.kind == RootKind::simple ? out.roots : out.non_simple).push_back(root.x);
  }
  return out;
}

QuinticRadii quintic_radii(double k) {
  if (k == 0.0) throw DomainError("quintic_radii is undefined for k = 0");
  QuinticRadii out;
  out.discriminant = 225.0 - 64.0 * k;
  if (out.discriminant < 0.0) return out;
  const double s = std::sqrt(out.discriminant);
  std::vector<double> radii;
  for (double r2 : {(15.0 - s) / (10.0 * k), (15.0 + s) / (10.0 * k)}) {
    if (r2 > 0.0) radii.push_back(std::sqrt(r2));
  }
  std::sort(radii.begin(), radii.end());
  if (!radii.empty()) out.r1 = radii.front();
  if (radii.size() > 1) out.r2 = radii.back();
  return out;
}

std::vector<double> quintic_p(double k) { return {-4.0, 0.0, 75.0, 0.0, -50.0 * k}; }

PhiProblem phi_problem_from(const LienardSystem& system, Interval r_range, double mu) {
  const auto& segs = system.F().segments();
  const auto* poly = segs.size() == 1 ? std::get_if<Polynomial>(&segs.front().form) : nullptr;
  if (poly == nullptr) throw ConfigError("phi needs F given by a single polynomial");
  if (!(mu > 0.0)) throw ConfigError("phi needs mu > 0");
  PhiProblem pr;
  pr.mu = mu;
  pr.r_range = r_range;
  for (std::size_t i = 1; i < poly->coeffs.size(); ++i) {
    pr.p.push_back(static_cast<double>(i) * poly->coeffs[i] / mu);
  }
  return pr;
}

std::pair<double, double> canonical_to_lienard(double x, double xdot, const FunctionModel& F) {
  return {-x, F.value(-x) - xdot};
}

std::pair<double, double> lienard_to_canonical(double u, double v, const FunctionModel& F) {
  return {-u, -v + F.value(u)};
}

}  // namespace lienard
