#include "lienard/function_model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "lienard/errors.hpp"

namespace lienard {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

double horner(const std::vector<double>& c, double x) {
  double acc = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
  return acc;
}

double ellipse_root(const EllipseArc& e, double x) {
  const double u = (x - e.center_x) / e.semi_x;
  return std::sqrt(std::max(0.0, 1.0 - u * u));
}

// Primitive of sqrt(1 - ((x - c)/a)^2) in x.
double ellipse_primitive(const EllipseArc& e, double x) {
  const double u = std::clamp((x - e.center_x) / e.semi_x, -1.0, 1.0);
  return 0.5 * e.semi_x * (u * std::sqrt(std::max(0.0, 1.0 - u * u)) + std::asin(u));
}

}  // namespace

double segment_value(const SegmentForm& form, double x) {
  return std::visit(
      Overloaded{
          [x](const Polynomial& p) { return horner(p.coeffs, x); },
          [x](const Sinusoid& s) {
            return s.offset + s.amplitude * std::sin(s.angular_frequency * x + s.phase);
          },
          [x](const EllipseArc& e) {
            return e.offset + e.sign * e.semi_y * ellipse_root(e, x);
          },
          [x](const SqrtBranch& r) {
            return r.offset + r.scale * std::sqrt(std::max(0.0, x - r.shift));
          },
          [](const Constant& c) { return c.value; },
      },
      form);
}

double segment_derivative(const SegmentForm& form, double x) {
  return std::visit(
      Overloaded{
          [x](const Polynomial& p) {
            double acc = 0.0;
            for (std::size_t i = p.coeffs.size(); i-- > 1;) {
              acc = acc * x + static_cast<double>(i) * p.coeffs[i];
            }
            return acc;
          },
          [x](const Sinusoid& s) {
            return s.amplitude * s.angular_frequency *
                   std::cos(s.angular_frequency * x + s.phase);
          },
          [x](const EllipseArc& e) {
            const double u = (x - e.center_x) / e.semi_x;
            return -e.sign * e.semi_y * u / (e.semi_x * ellipse_root(e, x));
          },
          [x](const SqrtBranch& r) { return 0.5 * r.scale / std::sqrt(x - r.shift); },
          [](const Constant&) { return 0.0; },
      },
      form);
}

double segment_integral(const SegmentForm& form, double a, double b) {
  return std::visit(
      Overloaded{
          [a, b](const Polynomial& p) {
            std::vector<double> q(p.coeffs.size() + 1, 0.0);
            for (std::size_t i = 0; i < p.coeffs.size(); ++i) {
              q[i + 1] = p.coeffs[i] / static_cast<double>(i + 1);
            }
            return horner(q, b) - horner(q, a);
          },
          [a, b](const Sinusoid& s) {
            const double w = s.angular_frequency;
            double osc = 0.0;
            if (w == 0.0) {
              osc = s.amplitude * std::sin(s.phase) * (b - a);
            } else {
              osc = -s.amplitude / w * (std::cos(w * b + s.phase) - std::cos(w * a + s.phase));
            }
            return s.offset * (b - a) + osc;
          },
          [a, b](const EllipseArc& e) {
            return e.offset * (b - a) +
                   e.sign * e.semi_y * (ellipse_primitive(e, b) - ellipse_primitive(e, a));
          },
          [a, b](const SqrtBranch& r) {
            auto prim = [&r](double x) {
              const double s = std::max(0.0, x - r.shift);
              return 2.0 / 3.0 * s * std::sqrt(s);
            };
            return r.offset * (b - a) + r.scale * (prim(b) - prim(a));
          },
          [a, b](const Constant& c) { return c.value * (b - a); },
      },
      form);
}

const char* form_name(const SegmentForm& form) {
  return std::visit(Overloaded{
                        [](const Polynomial&) { return "polynomial"; },
                        [](const Sinusoid&) { return "sinusoid"; },
                        [](const EllipseArc&) { return "ellipse_arc"; },
                        [](const SqrtBranch&) { return "sqrt_branch"; },
                        [](const Constant&) { return "constant"; },
                    },
                    form);
}

FunctionModel::FunctionModel(std::string name, std::vector<Segment> segments, bool c1)
    : name_(std::move(name)), segments_(std::move(segments)), c1_(c1) {
  if (segments_.empty()) throw StructuralError("model '" + name_ + "' has no segments");
  if (segments_.front().lo != 0.0) {
    throw StructuralError("model '" + name_ + "': first segment must start at 0");
  }
  for (std::size_t i = 0; i < segments_.size(); ++i) {
    const Segment& s = segments_[i];
    if (!(s.lo < s.hi)) {
      std::ostringstream os;
      os << "model '" << name_ << "': segment " << i << " has lo >= hi";
      throw StructuralError(os.str());
    }
    if (i > 0 && s.lo != segments_[i - 1].hi) {
      std::ostringstream os;
      os << "model '" << name_ << "': segments " << i - 1 << " and " << i
         << (s.lo > segments_[i - 1].hi ? " leave a gap" : " overlap");
      throw StructuralError(os.str());
    }
    if (i + 1 < segments_.size() && std::isinf(s.hi)) {
      throw StructuralError("model '" + name_ + "': only the last segment may be unbounded");
    }
    if (const auto* e = std::get_if<EllipseArc>(&s.form)) {
      const double slack = 1e-12 * e->semi_x;
      if (e->semi_x <= 0.0 || std::abs(e->sign) != 1 || std::isinf(s.hi) ||
          std::abs(s.lo - e->center_x) > e->semi_x + slack ||
          std::abs(s.hi - e->center_x) > e->semi_x + slack) {
        throw StructuralError("model '" + name_ + "': ellipse_arc leaves its domain");
      }
    }
    if (const auto* r = std::get_if<SqrtBranch>(&s.form)) {
      if (s.lo < r->shift) {
        throw StructuralError("model '" + name_ + "': sqrt_branch needs x >= shift");
      }
    }
  }
  prefix_.resize(segments_.size(), 0.0);
  for (std::size_t i = 1; i < segments_.size(); ++i) {
    const Segment& p = segments_[i - 1];
    prefix_[i] = prefix_[i - 1] + segment_integral(p.form, p.lo, p.hi);
  }
}

std::size_t FunctionModel::locate(double x) const {
  auto it = std::upper_bound(segments_.begin(), segments_.end(), x,
                             [](double v, const Segment& s) { return v < s.lo; });
  return static_cast<std::size_t>(std::distance(segments_.begin(), it)) - 1;
}

std::size_t FunctionModel::locate_left(double x) const {
  const std::size_t i = locate(x);
  return (i > 0 && x == segments_[i].lo) ? i - 1 : i;
}

void FunctionModel::check_domain(double ax) const {
  if (!(ax < domain_end())) {
    std::ostringstream os;
    os << "model '" << name_ << "': |x| = " << ax << " outside domain (" << -domain_end()
       << ", " << domain_end() << ")";
    throw DomainError(os.str());
  }
}

double FunctionModel::value(double x) const {
  const double ax = std::abs(x);
  check_domain(ax);
  const double v = segment_value(segments_[locate(ax)].form, ax);
  return x < 0.0 ? -v : v;
}

double FunctionModel::derivative(double x) const {
  const double ax = std::abs(x);
  check_domain(ax);
  return segment_derivative(segments_[locate_left(ax)].form, ax);
}

double FunctionModel::antiderivative(double x) const {
  const double ax = std::abs(x);
  check_domain(ax);
  const std::size_t i = locate(ax);
  return prefix_[i] + segment_integral(segments_[i].form, segments_[i].lo, ax);
}

double FunctionModel::eval(Which which, double x) const {
  switch (which) {
    case Which::value:
      return value(x);
    case Which::derivative:
      return derivative(x);
    case Which::antiderivative:
      return antiderivative(x);
  }
  return 0.0;
}

std::vector<double> FunctionModel::joints() const {
  std::vector<double> out;
  for (std::size_t i = 1; i < segments_.size(); ++i) out.push_back(segments_[i].lo);
  return out;
}

Tail FunctionModel::tail() const {
  const Segment& last = segments_.back();
  if (!std::isinf(last.hi)) return Tail::bounded;
  return std::visit(Overloaded{
                        [](const Polynomial& p) {
                          for (std::size_t i = p.coeffs.size(); i-- > 1;) {
                            if (p.coeffs[i] != 0.0) {
                              return p.coeffs[i] > 0.0 ? Tail::grows_positive
                                                       : Tail::grows_negative;
                            }
                          }
                          return Tail::bounded;
                        },
                        [](const SqrtBranch& r) {
                          if (r.scale == 0.0) return Tail::bounded;
                          return r.scale > 0.0 ? Tail::grows_positive : Tail::grows_negative;
                        },
                        [](const auto&) { return Tail::bounded; },
                    },
                    last.form);
}

ValidationReport validate_model(const FunctionModel& model, bool c1_required, double tolerance) {
  ValidationReport report;
  report.c1_required = c1_required;
  report.tolerance = tolerance;
  const auto& segs = model.segments();
  report.origin_residual = std::abs(segment_value(segs.front().form, 0.0));
  report.max_value_residual = report.origin_residual;
  for (std::size_t i = 1; i < segs.size(); ++i) {
    const double x = segs[i].lo;
    JointResidual r;
    r.x = x;
    r.value_residual =
        std::abs(segment_value(segs[i].form, x) - segment_value(segs[i - 1].form, x));
    r.derivative_residual = std::abs(segment_derivative(segs[i].form, x) -
                                     segment_derivative(segs[i - 1].form, x));
    report.max_value_residual = std::max(report.max_value_residual, r.value_residual);
    report.max_derivative_residual =
        std::max(report.max_derivative_residual, r.derivative_residual);
    report.joints.push_back(r);
  }
  report.pass = report.max_value_residual <= tolerance &&
                (!c1_required || report.max_derivative_residual <= tolerance);
  return report;
}

}  // namespace lienard
