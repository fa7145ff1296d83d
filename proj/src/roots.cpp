#include "lienard/roots.hpp"

#include <algorithm>

namespace lienard {

namespace {

int classify(double v, double zero_floor) {
  if (std::isnan(v)) return 2;
  if (std::abs(v) <= zero_floor) return 0;
  return v > 0.0 ? 1 : -1;
}

}  // namespace

std::vector<ScanRoot> scan_roots(const std::function<double(double)>& f,
                                 std::span<const double> grid, std::span<const double> values,
                                 const ScanOptions& opt) {
  std::vector<ScanRoot> roots;
  const std::size_t n = grid.size();
  if (n < 2 || values.size() != n) return roots;

  std::vector<int> sign(n);
  for (std::size_t i = 0; i < n; ++i) sign[i] = classify(values[i], opt.zero_floor);
  auto usable = [](int s) { return s == 1 || s == -1; };

  auto add_simple = [&](double a, double b, double fa, double fb) {
    const double x = bisect(f, a, b, fa, fb, opt.tol);
    roots.push_back({x, RootKind::simple, fa < 0.0 ? -1 : 1, fb < 0.0 ? -1 : 1, f(x)});
  };

  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (usable(sign[i]) && usable(sign[i + 1]) && sign[i] != sign[i + 1]) {
      add_simple(grid[i], grid[i + 1], values[i], values[i + 1]);
    }
  }

  for (std::size_t i = 1; i + 1 < n; ++i) {
    const int sl = sign[i - 1];
    const int sr = sign[i + 1];
    if (!usable(sl) || !usable(sr)) continue;
    if (sign[i] == 0) {
      if (sl != sr) {
        add_simple(grid[i - 1], grid[i + 1], values[i - 1], values[i + 1]);
        continue;
      }
    } else if (!(sign[i] == sl && sign[i] == sr && opt.refine_extrema &&
                 std::abs(values[i]) < std::abs(values[i - 1]) &&
                 std::abs(values[i]) <= std::abs(values[i + 1]))) {
      continue;
    }
    if (!opt.refine_extrema) continue;

    // Same-sign local minimum of |f|: a touch, a hidden pair, or nothing.
    const double s = static_cast<double>(sl);
    const double a = grid[i - 1];
    const double b = grid[i + 1];
    const double tol = std::max(opt.tol, 1e-10 * (b - a));
    const MinimumResult m = golden_minimize([&](double x) { return s * f(x); }, a, b, tol);
    if (std::abs(m.value) <= opt.touch_threshold) {
      roots.push_back({m.x, RootKind::touching, sl, sr, s * m.value});
    } else if (m.value < 0.0) {
      const double fm = s * m.value;
      add_simple(a, m.x, values[i - 1], fm);
      add_simple(m.x, b, fm, values[i + 1]);
    }
  }

  std::sort(roots.begin(), roots.end(),
            [](const ScanRoot& l, const ScanRoot& r) { return l.x < r.x; });
  roots.erase(std::unique(roots.begin(), roots.end(),
                          [&](const ScanRoot& l, const ScanRoot& r) {
                            return std::abs(l.x - r.x) <= 4.0 * opt.tol &&
                                   l.kind == r.kind;
                          }),
              roots.end());
  return roots;
}

}  // namespace lienard
