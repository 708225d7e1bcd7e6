#pragma once

#include <functional>
#include <memory>
#include <string>

namespace selfstab {

/// sign(r)|r|^s.  signed_power(0,s) = 0 for s > 0 so jump terms vanish
/// continuously; throws DomainError for r = 0 with s <= 0.
double signed_power(double r, double s);

/// max{ |y|^{-1/a}(1+|log|y||), |y|^{-1/b}(1+|log|y||) }, the weight
/// appearing in the mean-value estimate for differences of signed powers.
/// Throws DomainError for y = 0.
double y_weight_ab(double y, double a, double b);

/// Integral route for the stable normalizing constant:
///   integral_0^inf u^{-alpha} sin u du
/// computed by series near 0, adaptive quadrature on the head, and an
/// integration-by-parts asymptotic expansion for the oscillatory tail.
double stable_sine_integral(double alpha);

/// C_alpha = (integral_0^inf u^{-alpha} sin u du)^{-1/alpha}.  Cross-checked
/// against the closed form (Gamma(1-alpha) cos(pi alpha/2))^{-1/alpha};
/// throws QuadratureFailure if the two routes disagree beyond 1e-8 relative.
double stable_norm_constant(double alpha);

enum class AlphaKind { kConstant, kCosine, kRational, kCustom };

/// The stability-index map alpha: R -> [a,b] in (0,1) together with the
/// scalar bounds derived from it: the range bounds a, b and the
/// derivative-ratio bound M = sup |alpha'(xi)| / alpha(xi)^2.
///
/// Immutable after construction; evaluation is pure and thread-safe.
class AlphaModel {
 public:
  static AlphaModel constant(double value);
  /// c0 + c1*cos(z)
  static AlphaModel cosine(double c0, double c1);
  /// c0 + c1/(1 + c2*z^2)
  static AlphaModel rational(double c0, double c1, double c2);
  /// User-supplied evaluator with declared range bounds and declared M.
  /// The range is spot-checked on a sample grid; M is trusted as declared
  /// (a supremum over R is not computable from an opaque evaluator).
  static AlphaModel custom(std::function<double(double)> eval, double a, double b,
                           double declared_m, std::string label = "custom");

  /// alpha(z).  Throws RangeViolation if the result leaves [a,b] by more
  /// than 1e-12; values within tolerance are clamped to the range.
  double operator()(double z) const;

  double a() const { return a_; }
  double b() const { return b_; }
  AlphaKind kind() const { return kind_; }
  const std::string& label() const { return label_; }

  /// M = sup over all of R. For built-in families this is computed from the
  /// closed-form derivative by dense grid maximization plus golden-section
  /// refinement; for custom evaluators it is the declared value.
  double derivative_ratio_bound() const { return m_; }

  /// sup over [lo,hi] only.  Reported alongside the global bound for
  /// diagnostics; it does not certify the global truncation estimates.
  /// Throws MissingBound for custom evaluators (no derivative available).
  double derivative_ratio_bound_on(double lo, double hi) const;

 private:
  AlphaModel() = default;

  AlphaKind kind_ = AlphaKind::kConstant;
  double a_ = 0.0;
  double b_ = 0.0;
  double m_ = 0.0;
  double c0_ = 0.0, c1_ = 0.0, c2_ = 0.0;
  std::function<double(double)> eval_;
  std::string label_;
};

}  // namespace selfstab
