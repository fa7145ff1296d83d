#include "lienard/system.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "lienard/errors.hpp"
#include "lienard/roots.hpp"

namespace lienard {

namespace {

FunctionModel identity_g() { return FunctionModel("g=x", {{0.0, kInf, Polynomial{{0.0, 1.0}}}}); }

double cauchy_bound(const FunctionModel& m) {
  const auto* p = std::get_if<Polynomial>(&m.segments().back().form);
  if (p == nullptr) return 0.0;
  std::size_t top = p->coeffs.size();
  while (top > 0 && p->coeffs[top - 1] == 0.0) --top;
  if (top < 2) return 0.0;
  const double lead = std::abs(p->coeffs[top - 1]);
  double worst = 0.0;
  for (std::size_t i = 0; i + 1 < top; ++i) worst = std::max(worst, std::abs(p->coeffs[i]) / lead);
  return 1.0 + worst;
}

double require(const Params& params, const std::string& key, const std::string& model) {
  auto it = params.find(key);
  if (it == params.end()) {
    throw ConfigError("builtin '" + model + "' needs parameter '" + key + "'");
  }
  return it->second;
}

double optional(const Params& params, const std::string& key, double fallback) {
  auto it = params.find(key);
  return it == params.end() ? fallback : it->second;
}

LienardSystem make_vdp(double mu) {
  FunctionModel F("vdp", {{0.0, kInf, Polynomial{{0.0, -mu, 0.0, mu / 3.0}}}}, true);
  return LienardSystem("vdp", std::move(F), identity_g());
}

LienardSystem make_vdp_bounded(double mu, bool finite) {
  const double cubic_at_break = mu * (2.4 * 2.4 * 2.4 / 3.0 - 2.4);
  const double amp = 4.76 * mu / std::sin(0.6);
  // cos(x - 3) = sin(x - 3 + pi/2)
  Sinusoid bridge{amp, 1.0, std::numbers::pi / 2.0 - 3.0, cubic_at_break - amp * std::cos(0.6)};
  std::vector<Segment> segs{
      {0.0, 2.4, Polynomial{{0.0, -mu, 0.0, mu / 3.0}}},
      {2.4, 3.0, bridge},
  };
  if (!finite) segs.push_back({3.0, kInf, Constant{cubic_at_break - amp * (std::cos(0.6) - 1.0)}});
  FunctionModel F("vdp_bounded", std::move(segs), true);
  return LienardSystem("vdp_bounded", std::move(F), identity_g(), finite ? 3.0 : kInf);
}

LienardSystem make_quintic(double k, double mu) {
  // mu (-4x + 25x^3 - 10k x^5); mu = 0.1 gives -0.4x + 2.5x^3 - k x^5
  FunctionModel F("quintic",
                  {{0.0, kInf,
                    Polynomial{{0.0, -4.0 * mu, 0.0, 25.0 * mu, 0.0, -10.0 * mu * k}}}},
                  true);
  return LienardSystem("quintic", std::move(F), identity_g());
}

LienardSystem make_two_cycle() {
  const double joint = 0.15 + 1.0 / std::sqrt(101.0);
  std::vector<Segment> segs{
      {0.0, 0.15, Sinusoid{-0.01, 10.0 * std::numbers::pi, 0.0, 0.0}},
      {0.15, joint, EllipseArc{0.0, 0.01, 0.15, 0.1, 1}},
      {joint, kInf, SqrtBranch{0.02099503719021, -0.2, 0.2395037190209989}},
  };
  FunctionModel F("two_cycle", std::move(segs), true);
  return LienardSystem("two_cycle", std::move(F), identity_g());
}

LienardSystem make_three_cycle() {
  constexpr double a1 = 0.097979588;
  constexpr double a2 = 0.197647912;
  constexpr double a3 = 0.397273968;
  std::vector<Segment> segs{
      {0.0, a1, EllipseArc{0.005, 0.025, 0.048989794, 0.05, -1}},
      {a1, a2, EllipseArc{-0.0008137888130718, 0.01, 0.14781375, 0.05, 1}},
      {a2, a3, EllipseArc{0.0009168416064002765, 0.015, 0.29746094, 0.1, -1}},
      {a3, kInf, SqrtBranch{-0.0003265987749816556, 0.04, 0.3972073012751128}},
  };
  FunctionModel F("three_cycle", std::move(segs), true);
  return LienardSystem("three_cycle", std::move(F), identity_g());
}

}  // namespace

LienardSystem::LienardSystem(std::string name, FunctionModel F, FunctionModel g, double d)
    : name_(std::move(name)),
      F_(std::move(F)),
      g_(std::move(g)),
      d_(std::min({d, F_.domain_end(), g_.domain_end()})) {
  if (!(d_ > 0.0)) throw ConfigError("system '" + name_ + "': domain half-width must be positive");
  const double h = scan_horizon();
  constexpr int kSamples = 1000;
  for (int i = 1; i <= kSamples; ++i) {
    const double x = h * i / (kSamples + 1.0);
    if (!(g_.value(x) > 0.0)) {
      std::ostringstream os;
      os << "system '" << name_ << "': g(" << x << ") = " << g_.value(x) << " is not positive";
      throw ConfigError(os.str());
    }
  }
}

double LienardSystem::scan_horizon() const {
  if (std::isfinite(d_)) return d_;
  double last_joint = 0.0;
  for (double j : F_.joints()) last_joint = std::max(last_joint, j);
  for (double j : g_.joints()) last_joint = std::max(last_joint, j);
  return 1.5 * std::max({2.0 * last_joint, cauchy_bound(F_), 1.0});
}

ZeroStructure find_zero_structure(const LienardSystem& system, Interval scan_range, int grid_n) {
  if (grid_n < 100) throw ConfigError("find_zero_structure: grid_n must be >= 100");
  const double lo = std::max(scan_range.lo, 0.0);
  const double hi = std::min(scan_range.hi, system.d());
  if (!(lo < hi)) throw ConfigError("find_zero_structure: empty scan range");
  const FunctionModel& F = system.F();

  // Per-segment uniform grids so that joints are sample points.
  std::vector<double> grid;
  for (const Segment& s : F.segments()) {
    const double a = std::max(s.lo, lo);
    const double b = std::min(s.hi, hi);
    if (!(a < b)) continue;
    for (int i = 0; i <= grid_n; ++i) {
      double x = a + (b - a) * i / grid_n;
      if (i == grid_n && b >= system.d()) x = std::nextafter(b, a);
      if (x <= 0.0) continue;
      grid.push_back(x);
    }
  }
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

  std::vector<double> fv(grid.size());
  std::vector<double> dv(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    fv[i] = F.value(grid[i]);
    dv[i] = F.derivative(grid[i]);
  }

  ZeroStructure zs;
  ScanOptions zero_opt;
  zero_opt.tol = 1e-12;
  zero_opt.touch_threshold = 1e-10;
  auto value = [&F](double x) { return F.value(x); };
  for (const ScanRoot& r : scan_roots(value, grid, fv, zero_opt)) {
    const bool simple = r.kind == RootKind::simple && std::abs(F.derivative(r.x)) > 1e-8;
    (simple ? zs.zeros : zs.non_simple).push_back(r.x);
  }

  ScanOptions ext_opt;
  ext_opt.tol = 1e-12;
  ext_opt.refine_extrema = false;
  auto slope = [&F](double x) { return F.derivative(x); };
  for (const ScanRoot& r : scan_roots(slope, grid, dv, ext_opt)) {
    zs.extrema.push_back(r.x);
    zs.values_at_extrema.push_back(F.value(r.x));
  }
  return zs;
}

ZeroStructure find_zero_structure(const LienardSystem& system, int grid_n) {
  return find_zero_structure(system, {0.0, system.scan_horizon()}, grid_n);
}

LienardSystem builtin(const std::string& name, const Params& params) {
  if (name == "vdp") return make_vdp(require(params, "mu", name));
  if (name == "vdp_bounded") {
    return make_vdp_bounded(require(params, "mu", name), optional(params, "finite", 0.0) != 0.0);
  }
  if (name == "quintic") return make_quintic(require(params, "k", name), optional(params, "mu", 0.1));
  if (name == "two_cycle") return make_two_cycle();
  if (name == "three_cycle") return make_three_cycle();
  throw LookupError("unknown builtin model '" + name + "'");
}

std::vector<std::string> builtin_names() {
  return {"vdp", "vdp_bounded", "quintic", "two_cycle", "three_cycle"};
}

}  // namespace lienard
