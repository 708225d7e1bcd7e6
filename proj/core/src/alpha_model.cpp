#include "selfstab/alpha_model.hpp"

#include <algorithm>
#include <cmath>

#include "selfstab/errors.hpp"

namespace selfstab {

double signed_power(double r, double s) {
  if (r == 0.0) {
    if (s <= 0.0) throw DomainError("signed_power: r = 0 with s <= 0");
    return 0.0;
  }
  double mag = std::pow(std::fabs(r), s);
  return r < 0.0 ? -mag : mag;
}

double y_weight_ab(double y, double a, double b) {
  if (y == 0.0) throw DomainError("y_weight_ab: y = 0");
  double ay = std::fabs(y);
  double logfac = 1.0 + std::fabs(std::log(ay));
  return logfac * std::max(std::pow(ay, -1.0 / a), std::pow(ay, -1.0 / b));
}

namespace {

// integral_0^1 u^{-alpha} sin u du by the alternating power series; terms
// fall off like 1/(2k+1)! so a handful suffice at double precision.
double sine_integral_series01(double alpha) {
  double sum = 0.0;
  double factorial = 1.0;  // (2k+1)!
  for (int k = 0; k < 20; ++k) {
    if (k > 0) factorial *= (2.0 * k) * (2.0 * k + 1.0);
    double term = 1.0 / (factorial * (2.0 * k + 2.0 - alpha));
    sum += (k % 2 == 0) ? term : -term;
    if (term < 1e-18) break;
  }
  return sum;
}

template <typename F>
double adaptive_simpson_rec(const F& f, double a, double b, double fa, double fm, double fb,
                            double whole, double tol, int depth) {
  double m = 0.5 * (a + b);
  double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  double flm = f(lm), frm = f(rm);
  double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  double delta = left + right - whole;
  if (depth <= 0 || std::fabs(delta) <= 15.0 * tol)
    return left + right + delta / 15.0;
  return adaptive_simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         adaptive_simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

template <typename F>
double adaptive_simpson(const F& f, double a, double b, double tol) {
  double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return adaptive_simpson_rec(f, a, b, fa, fm, fb, whole, tol, 48);
}

double tail_cos(double s, double x, int depth);

// integral_X^inf u^{-s} sin u du by repeated integration by parts; each
// level gains a factor s/X, so depth 12 at X ~ 40*pi leaves a remainder
// far below double precision.
double tail_sin(double s, double x, int depth) {
  if (depth <= 0) return 0.0;
  return std::pow(x, -s) * std::cos(x) - s * tail_cos(s + 1.0, x, depth - 1);
}

double tail_cos(double s, double x, int depth) {
  if (depth <= 0) return 0.0;
  return -std::pow(x, -s) * std::sin(x) + s * tail_sin(s + 1.0, x, depth - 1);
}

// Dense grid maximization refined by golden-section search around the best
// grid cell.
template <typename F>
double grid_refine_max(const F& f, double lo, double hi, int n) {
  double best = -1.0;
  int best_i = 0;
  double step = (hi - lo) / n;
  for (int i = 0; i <= n; ++i) {
    double v = f(lo + i * step);
    if (v > best) {
      best = v;
      best_i = i;
    }
  }
  double a = lo + std::max(0, best_i - 1) * step;
  double b = lo + std::min(n, best_i + 1) * step;
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = b - invphi * (b - a), x2 = a + invphi * (b - a);
  double f1 = f(x1), f2 = f(x2);
  for (int it = 0; it < 200 && (b - a) > 1e-14 * std::max(1.0, std::fabs(a)); ++it) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + invphi * (b - a);
      f2 = f(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - invphi * (b - a);
      f1 = f(x1);
    }
  }
  return std::max({best, f1, f2});
}

}  // namespace

double stable_sine_integral(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw DomainError("stable_sine_integral: alpha must be in (0,1)");
  const double cut = 40.0 * M_PI;
  auto integrand = [alpha](double u) { return std::pow(u, -alpha) * std::sin(u); };
  return sine_integral_series01(alpha) + adaptive_simpson(integrand, 1.0, cut, 1e-13) +
         tail_sin(alpha, cut, 12);
}

double stable_norm_constant(double alpha) {
  double integral = stable_sine_integral(alpha);
  double quad = std::pow(integral, -1.0 / alpha);
  double closed = std::pow(std::tgamma(1.0 - alpha) * std::cos(M_PI * alpha / 2.0), -1.0 / alpha);
  if (std::fabs(quad - closed) > 1e-8 * std::fabs(closed))
    throw QuadratureFailure("stable_norm_constant: quadrature and closed form disagree at alpha=" +
                            std::to_string(alpha));
  return quad;
}

AlphaModel AlphaModel::constant(double value) {
  if (!(value > 0.0 && value < 1.0))
    throw InvariantViolation("constant alpha must lie in (0,1)");
  AlphaModel m;
  m.kind_ = AlphaKind::kConstant;
  m.a_ = m.b_ = value;
  m.m_ = 0.0;
  m.c0_ = value;
  m.label_ = "constant(" + std::to_string(value) + ")";
  return m;
}

AlphaModel AlphaModel::cosine(double c0, double c1) {
  double lo = c0 - std::fabs(c1), hi = c0 + std::fabs(c1);
  if (!(lo > 0.0 && hi < 1.0))
    throw InvariantViolation("cosine alpha range must stay inside (0,1)");
  if (c1 == 0.0) return constant(c0);
  AlphaModel m;
  m.kind_ = AlphaKind::kCosine;
  m.c0_ = c0;
  m.c1_ = c1;
  m.a_ = lo;
  m.b_ = hi;
  m.m_ = m.derivative_ratio_bound_on(0.0, 2.0 * M_PI);  // one full period
  m.label_ = "cosine(" + std::to_string(c0) + "," + std::to_string(c1) + ")";
  return m;
}

AlphaModel AlphaModel::rational(double c0, double c1, double c2) {
  if (!(c2 > 0.0)) throw InvariantViolation("rational alpha requires c2 > 0");
  double lo = std::min(c0, c0 + c1), hi = std::max(c0, c0 + c1);
  if (!(lo > 0.0 && hi < 1.0))
    throw InvariantViolation("rational alpha range must stay inside (0,1)");
  if (c1 == 0.0) return constant(c0);
  AlphaModel m;
  m.kind_ = AlphaKind::kRational;
  m.c0_ = c0;
  m.c1_ = c1;
  m.c2_ = c2;
  m.a_ = lo;
  m.b_ = hi;
  // |alpha'| -> 0 as |z| -> inf; the ratio is even in z and its critical
  // points sit at |z| = O(1/sqrt(c2)), so a wide symmetric window captures
  // the supremum.
  double window = 50.0 / std::sqrt(std::min(1.0, c2));
  m.m_ = m.derivative_ratio_bound_on(-window, window);
  m.label_ = "rational(" + std::to_string(c0) + "," + std::to_string(c1) + "," +
             std::to_string(c2) + ")";
  return m;
}

AlphaModel AlphaModel::custom(std::function<double(double)> eval, double a, double b,
                              double declared_m, std::string label) {
  if (!(0.0 < a && a <= b && b < 1.0))
    throw InvariantViolation("custom alpha requires 0 < a <= b < 1");
  if (!(declared_m >= 0.0)) throw MissingBound("custom alpha requires declared M >= 0");
  // Spot check the declared range on a sample grid.
  for (int i = 0; i <= 2000; ++i) {
    double z = -20.0 + i * 0.02;
    double v = eval(z);
    if (v < a - 1e-12 || v > b + 1e-12)
      throw RangeViolation("custom alpha leaves declared range [a,b] at z=" + std::to_string(z));
  }
  AlphaModel m;
  m.kind_ = AlphaKind::kCustom;
  m.a_ = a;
  m.b_ = b;
  m.m_ = declared_m;
  m.eval_ = std::move(eval);
  m.label_ = std::move(label);
  return m;
}

double AlphaModel::operator()(double z) const {
  double v;
  switch (kind_) {
    case AlphaKind::kConstant:
      return c0_;
    case AlphaKind::kCosine:
      v = c0_ + c1_ * std::cos(z);
      break;
    case AlphaKind::kRational:
      v = c0_ + c1_ / (1.0 + c2_ * z * z);
      break;
    case AlphaKind::kCustom:
      v = eval_(z);
      break;
    default:
      v = c0_;
  }
  if (v < a_ - 1e-12 || v > b_ + 1e-12)
    throw RangeViolation("alpha(" + std::to_string(z) + ") = " + std::to_string(v) +
                         " outside [" + std::to_string(a_) + "," + std::to_string(b_) + "]");
  return std::clamp(v, a_, b_);
}

double AlphaModel::derivative_ratio_bound_on(double lo, double hi) const {
  switch (kind_) {
    case AlphaKind::kConstant:
      return 0.0;
    case AlphaKind::kCosine: {
      auto ratio = [this](double z) {
        double alpha = c0_ + c1_ * std::cos(z);
        return std::fabs(c1_ * std::sin(z)) / (alpha * alpha);
      };
      return grid_refine_max(ratio, lo, hi, 1000000);
    }
    case AlphaKind::kRational: {
      auto ratio = [this](double z) {
        double q = 1.0 + c2_ * z * z;
        double alpha = c0_ + c1_ / q;
        return std::fabs(2.0 * c1_ * c2_ * z) / (q * q * alpha * alpha);
      };
      return grid_refine_max(ratio, lo, hi, 1000000);
    }
    case AlphaKind::kCustom:
      throw MissingBound("derivative_ratio_bound_on: no derivative for custom alpha");
  }
  return 0.0;
}

}  // namespace selfstab
