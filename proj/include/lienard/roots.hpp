#pragma once

#include <cmath>
#include <functional>
#include <span>
#include <vector>

namespace lienard {

/// Bisection on [a, b] given the endpoint values. Stops when the bracket is
/// narrower than `tol` or cannot shrink further in floating point. Returns
/// the endpoint with the smaller |f|.
template <class Fn>
double bisect(Fn&& f, double a, double b, double fa, double fb, double tol) {
  for (int it = 0; it < 400; ++it) {
    if (std::abs(b - a) <= tol) break;
    const double m = 0.5 * (a + b);
    if (m == a || m == b) break;
    const double fm = f(m);
    if (fm == 0.0) return m;
    if ((fm < 0.0) == (fa < 0.0)) {
      a = m;
      fa = fm;
    } else {
      b = m;
      fb = fm;
    }
  }
  return std::abs(fa) <= std::abs(fb) ? a : b;
}

/// Golden-section search for the minimiser of a unimodal `f` on [a, b].
struct MinimumResult {
  double x = 0.0;
  double value = 0.0;
};

template <class Fn>
MinimumResult golden_minimize(Fn&& f, double a, double b, double tol) {
  constexpr double kInvPhi = 0.6180339887498949;
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = f(c);
  double fd = f(d);
  for (int it = 0; it < 200 && std::abs(b - a) > tol; ++it) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = f(d);
    }
  }
  return fc < fd ? MinimumResult{c, fc} : MinimumResult{d, fd};
}

enum class RootKind { simple, touching };

struct ScanRoot {
  double x = 0.0;
  RootKind kind = RootKind::simple;
  /// Sign of f just left / right of the root (+1 or -1). Equal for touching roots.
  int sign_before = 0;
  int sign_after = 0;
  /// f at the refined point (the extremum value for touching roots).
  double residual = 0.0;
};

struct ScanOptions {
  /// Bisection bracket width.
  double tol = 1e-12;
  /// A same-sign local extremum of f with |f| at or below this is a touching root.
  double touch_threshold = 0.0;
  /// Samples with |f| at or below this count as zero (noise floor).
  double zero_floor = 0.0;
  /// Search same-sign local minima of |f| for a hidden pair of roots or a touch.
  bool refine_extrema = true;
};

/// Roots of `f` on a sorted grid whose values are already known. Non-finite
/// values: +/-inf carry their sign, NaN breaks the scan. Samples within the
/// zero floor take part only when both neighbours are nonzero; runs of zero
/// samples are skipped as degenerate.
std::vector<ScanRoot> scan_roots(const std::function<double(double)>& f,
                                 std::span<const double> grid, std::span<const double> values,
                                 const ScanOptions& opt);

}  // namespace lienard
