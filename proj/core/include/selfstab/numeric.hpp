#pragma once

namespace selfstab {

/// Kahan compensated accumulator.  The truncation bounds in the solver tests
/// are tight enough that naive accumulation can mask violations.
struct KahanSum {
  double sum = 0.0;
  double c = 0.0;

  void add(double x) noexcept {
    double y = x - c;
    double t = sum + y;
    c = (t - sum) - y;
    sum = t;
  }

  double value() const noexcept { return sum; }
};

}  // namespace selfstab
