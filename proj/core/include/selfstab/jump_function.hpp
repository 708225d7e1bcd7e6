#pragma once

#include <string>
#include <vector>

namespace selfstab {

/// Piecewise-constant cadlag function on [t0,t1): strictly increasing jump
/// times x_1 < ... < x_K with values v_0 (the initial value on [t0,x_1)) and
/// v_k on [x_k, x_{k+1}).  Immutable; evaluation is a binary search.
class JumpFunction {
 public:
  JumpFunction(double t0, double t1, std::vector<double> breakpoints,
               std::vector<double> values);

  static JumpFunction constant(double t0, double t1, double value);

  /// Right-continuous evaluation; t must lie in [t0,t1).
  double eval(double t) const;

  /// lim_{s -> t-} f(s); t must lie in (t0,t1].
  double left_limit(double t) const;

  double t0() const { return t0_; }
  double t1() const { return t1_; }
  double initial_value() const { return values_.front(); }
  double final_value() const { return values_.back(); }
  const std::vector<double>& breakpoints() const { return breakpoints_; }
  const std::vector<double>& values() const { return values_; }

 private:
  double t0_, t1_;
  std::vector<double> breakpoints_;
  std::vector<double> values_;  // size = breakpoints_.size() + 1
};

/// sup_{t in [t0,t1)} |f - g|.  Both functions are piecewise constant, so
/// the supremum is attained at t0 or at a breakpoint of either function.
double sup_distance(const JumpFunction& f, const JumpFunction& g);

/// CSV export "t,value": one row for t0, one per breakpoint (post-jump
/// value), and a closing row for the left limit at t1.
void save_path_csv(const JumpFunction& f, const std::string& path);

}  // namespace selfstab
