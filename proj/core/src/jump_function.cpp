#include "selfstab/jump_function.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "selfstab/errors.hpp"

namespace selfstab {

JumpFunction::JumpFunction(double t0, double t1, std::vector<double> breakpoints,
                           std::vector<double> values)
    : t0_(t0), t1_(t1), breakpoints_(std::move(breakpoints)), values_(std::move(values)) {
  if (!(t0_ < t1_)) throw InvariantViolation("JumpFunction: t0 must be < t1");
  if (values_.size() != breakpoints_.size() + 1)
    throw InvariantViolation("JumpFunction: values must be one longer than breakpoints");
  double prev = t0_;
  for (double x : breakpoints_) {
    if (!(x > prev && x < t1_))
      throw InvariantViolation("JumpFunction: breakpoints must be strictly increasing in (t0,t1)");
    prev = x;
  }
}

JumpFunction JumpFunction::constant(double t0, double t1, double value) {
  return JumpFunction(t0, t1, {}, {value});
}

double JumpFunction::eval(double t) const {
  if (!(t >= t0_ && t < t1_))
    throw OutOfInterval("eval: t = " + std::to_string(t) + " outside [t0,t1)");
  auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), t);
  return values_[static_cast<std::size_t>(it - breakpoints_.begin())];
}

double JumpFunction::left_limit(double t) const {
  if (!(t > t0_ && t <= t1_))
    throw OutOfInterval("left_limit: t = " + std::to_string(t) + " outside (t0,t1]");
  auto it = std::lower_bound(breakpoints_.begin(), breakpoints_.end(), t);
  return values_[static_cast<std::size_t>(it - breakpoints_.begin())];
}

double sup_distance(const JumpFunction& f, const JumpFunction& g) {
  if (f.t0() != g.t0() || f.t1() != g.t1())
    throw InvariantViolation("sup_distance: interval mismatch");
  double d = std::fabs(f.initial_value() - g.initial_value());
  for (const JumpFunction* h : {&f, &g})
    for (double x : h->breakpoints()) d = std::max(d, std::fabs(f.eval(x) - g.eval(x)));
  return d;
}

void save_path_csv(const JumpFunction& f, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open for writing: " + path);
  out << "t,value\n";
  char buf[80];
  std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", f.t0(), f.initial_value());
  out << buf;
  for (std::size_t k = 0; k < f.breakpoints().size(); ++k) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", f.breakpoints()[k], f.values()[k + 1]);
    out << buf;
  }
  std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", f.t1(), f.final_value());
  out << buf;
  if (!out) throw Error("write failed: " + path);
}

}  // namespace selfstab
