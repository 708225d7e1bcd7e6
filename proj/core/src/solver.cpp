#include "selfstab/solver.hpp"

#include <cmath>

#include "selfstab/errors.hpp"
#include "selfstab/numeric.hpp"

namespace selfstab {

namespace {

// Shared sequential pass.  `term(x, y, pre)` is the signed jump contribution
// of one point given the pre-jump value; co-located points are summed with
// the common pre-jump value before the value advances.
template <typename Term>
JumpFunction sequential_pass(const PointSet& ps, double a0, Term&& term) {
  std::vector<double> breakpoints;
  std::vector<double> values;
  values.push_back(a0);

  KahanSum running;
  running.add(a0);
  std::size_t i = 0;
  const auto& pts = ps.points;
  while (i < pts.size()) {
    double x = pts[i].x;
    double pre = running.value();
    KahanSum jump;
    for (; i < pts.size() && pts[i].x == x; ++i) jump.add(term(x, pts[i].y, pre));
    running.add(jump.value());
    breakpoints.push_back(x);
    values.push_back(running.value());
  }
  return JumpFunction(ps.t0, ps.t1, std::move(breakpoints), std::move(values));
}

}  // namespace

JumpFunction solve_sequential(const PointSet& ps, const AlphaModel& alpha, double a0) {
  return sequential_pass(ps, a0, [&alpha](double, double y, double pre) {
    return signed_power(y, -1.0 / alpha(pre));
  });
}

double contraction_sum(const PointSet& ps, const AlphaModel& alpha) {
  double m = alpha.derivative_ratio_bound();
  if (m == 0.0) return 0.0;
  KahanSum s;
  for (const Point& p : ps.points) s.add(y_weight_ab(p.y, alpha.a(), alpha.b()));
  return m * s.value();
}

JumpFunction solve_picard(const PointSet& ps, const AlphaModel& alpha, double a0,
                          double tol, int max_iter, int* iterations) {
  if (!(tol > 0.0)) throw DomainError("solve_picard: tol must be positive");
  double k = contraction_sum(ps, alpha);
  if (!(k < 1.0))
    throw NotContractive("solve_picard: contraction sum " + std::to_string(k) +
                         " >= 1; use solve_sequential");

  // Distinct jump times; all iterates share this breakpoint grid.
  std::vector<double> breakpoints;
  for (const Point& p : ps.points)
    if (breakpoints.empty() || p.x != breakpoints.back()) breakpoints.push_back(p.x);

  std::vector<double> values(breakpoints.size() + 1, a0);
  for (int iter = 1; iter <= max_iter; ++iter) {
    // One application of the operator: the jump at x_k reads the previous
    // iterate's left limit, which on this grid is values[k].
    std::vector<double> next(values.size());
    KahanSum running;
    running.add(a0);
    next[0] = a0;
    std::size_t i = 0;
    for (std::size_t k_idx = 0; k_idx < breakpoints.size(); ++k_idx) {
      double x = breakpoints[k_idx];
      double pre = values[k_idx];
      KahanSum jump;
      for (; i < ps.points.size() && ps.points[i].x == x; ++i)
        jump.add(signed_power(ps.points[i].y, -1.0 / alpha(pre)));
      running.add(jump.value());
      next[k_idx + 1] = running.value();
    }
    double change = 0.0;
    for (std::size_t j = 0; j < values.size(); ++j)
      change = std::max(change, std::fabs(next[j] - values[j]));
    values = std::move(next);
    if (change < tol) {
      if (iterations) *iterations = iter;
      return JumpFunction(ps.t0, ps.t1, std::move(breakpoints), std::move(values));
    }
  }
  throw NoConvergence("solve_picard: no convergence after " + std::to_string(max_iter) +
                      " iterations");
}

JumpFunction solve_truncated(const PointSet& ps, const AlphaModel& alpha, double a0,
                             double n) {
  return solve_sequential(ps.truncated(n), alpha, a0);
}

double truncation_error_bound(const PointSet& ps, const AlphaModel& alpha, double n) {
  double m = alpha.derivative_ratio_bound();
  double product = 1.0;
  KahanSum tail;
  bool has_tail = false;
  for (const Point& p : ps.points) {
    double ay = std::fabs(p.y);
    if (ay <= n) {
      if (m != 0.0) product *= 1.0 + m * y_weight_ab(p.y, alpha.a(), alpha.b());
    } else {
      tail.add(std::pow(ay, -1.0 / alpha.b()));
      has_tail = true;
    }
  }
  if (!has_tail) return 0.0;
  return product * tail.value();
}

double truncation_error_bound_exp(const PointSet& ps, const AlphaModel& alpha, double n) {
  double m = alpha.derivative_ratio_bound();
  KahanSum head;
  KahanSum tail;
  bool has_tail = false;
  for (const Point& p : ps.points) {
    double ay = std::fabs(p.y);
    if (ay <= n) {
      if (m != 0.0) head.add(y_weight_ab(p.y, alpha.a(), alpha.b()));
    } else {
      tail.add(std::pow(ay, -1.0 / alpha.b()));
      has_tail = true;
    }
  }
  if (!has_tail) return 0.0;
  return std::exp(m * head.value()) * tail.value();
}

JumpFunction solve_weighted(const PointSet& ps, const AlphaModel& alpha,
                            const std::function<double(double)>& w, double a0) {
  return sequential_pass(ps, a0, [&alpha, &w](double, double y, double pre) {
    double av = alpha(pre);
    return w(av) * signed_power(y, -1.0 / av);
  });
}

JumpFunction solve_nonautonomous(
    const PointSet& ps, const std::function<double(double, double, double)>& alpha3,
    const std::function<double(double)>& g, double a0) {
  return sequential_pass(ps, a0, [&alpha3, &g](double x, double y, double pre) {
    double av = alpha3(x, pre, g(x));
    if (!(av > 0.0 && av < 1.0))
      throw RangeViolation("solve_nonautonomous: alpha(t,z,g) = " + std::to_string(av) +
                           " outside (0,1)");
    return signed_power(y, -1.0 / av);
  });
}

}  // namespace selfstab
