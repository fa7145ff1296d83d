#pragma once

#include <limits>
#include <string>
#include <variant>
#include <vector>

namespace lienard {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// c0 + c1 x + c2 x^2 + ...
struct Polynomial {
  std::vector<double> coeffs;
};

/// offset + amplitude * sin(angular_frequency * x + phase)
struct Sinusoid {
  double amplitude = 0.0;
  double angular_frequency = 1.0;
  double phase = 0.0;
  double offset = 0.0;
};

/// offset + sign * semi_y * sqrt(1 - ((x - center_x) / semi_x)^2)
struct EllipseArc {
  double offset = 0.0;
  double semi_y = 0.0;
  double center_x = 0.0;
  double semi_x = 1.0;
  int sign = 1;
};

/// offset + scale * sqrt(x - shift)
struct SqrtBranch {
  double offset = 0.0;
  double scale = 0.0;
  double shift = 0.0;
};

struct Constant {
  double value = 0.0;
};

using SegmentForm = std::variant<Polynomial, Sinusoid, EllipseArc, SqrtBranch, Constant>;

/// One closed-form piece on [lo, hi).
struct Segment {
  double lo = 0.0;
  double hi = kInf;
  SegmentForm form;
};

enum class Which { value, derivative, antiderivative };

/// Growth of the last segment as x -> hi of the model.
enum class Tail { grows_positive, grows_negative, bounded };

double segment_value(const SegmentForm& form, double x);
double segment_derivative(const SegmentForm& form, double x);
/// Integral of the form over [a, b] in closed form.
double segment_integral(const SegmentForm& form, double a, double b);
const char* form_name(const SegmentForm& form);

/// Odd scalar function given by closed-form segments on x >= 0.
///
/// Values for x < 0 come from odd reflection, so the derivative is even and
/// the antiderivative (taken from 0) is even. Segments must tile [0, end)
/// without gaps; the constructor throws StructuralError otherwise. Instances
/// are immutable.
class FunctionModel {
 public:
  FunctionModel(std::string name, std::vector<Segment> segments, bool c1 = false);

  double value(double x) const;
  /// At an interior joint the left one-sided derivative is returned.
  double derivative(double x) const;
  double antiderivative(double x) const;
  double eval(Which which, double x) const;

  /// Right end of the last segment (+inf for unbounded models).
  double domain_end() const { return segments_.back().hi; }
  const std::vector<Segment>& segments() const { return segments_; }
  const std::string& name() const { return name_; }
  bool c1() const { return c1_; }

  /// Interior segment boundaries, ascending.
  std::vector<double> joints() const;
  Tail tail() const;

 private:
  std::size_t locate(double x) const;
  std::size_t locate_left(double x) const;
  void check_domain(double ax) const;

  std::string name_;
  std::vector<Segment> segments_;
  std::vector<double> prefix_;  // integral over [0, segments_[i].lo]
  bool c1_ = false;
};

struct JointResidual {
  double x = 0.0;
  double value_residual = 0.0;
  double derivative_residual = 0.0;
};

struct ValidationReport {
  bool c1_required = false;
  double tolerance = 5e-7;
  /// |F(0+)|: the jump of the odd extension at the origin.
  double origin_residual = 0.0;
  std::vector<JointResidual> joints;
  double max_value_residual = 0.0;
  double max_derivative_residual = 0.0;
  bool pass = true;
};

/// Continuity (and with c1_required, slope continuity) at every joint.
ValidationReport validate_model(const FunctionModel& model, bool c1_required,
                                double tolerance = 5e-7);

}  // namespace lienard
