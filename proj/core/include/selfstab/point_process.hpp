#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace selfstab {

struct Point {
  double x;  // time coordinate, strictly inside (t0,t1)
  double y;  // mark, never zero

  friend bool operator==(const Point&, const Point&) = default;
};

/// Finite plane point configuration, the deterministic stand-in for the
/// (possibly infinite) driving point set.  Points are kept sorted by x then
/// |y|; ties in x are allowed and handled by the solver's summed-jump rule.
struct PointSet {
  double t0 = 0.0;
  double t1 = 1.0;
  std::vector<Point> points;

  /// Validates invariants (x strictly inside the interval, y != 0), sorts,
  /// and returns the set.  Throws InvariantViolation.
  static PointSet create(double t0, double t1, std::vector<Point> pts);

  /// Subset with |y| <= n (preserves order).
  PointSet truncated(double n) const;

  std::size_t size() const { return points.size(); }
};

/// Truncated two-strip domain (t0,t1) x (-N,-K] u [K,N) plus the seed that
/// makes sampling on it reproducible.
struct StripSpec {
  double t0 = 0.0;
  double t1 = 1.0;
  double K = 0.0;  // small-|y| cutoff, >= 0
  double N = 1.0;  // large-|y| cutoff, > K
  std::uint64_t seed = 0;
};

/// Samples a Poisson point process with Lebesgue mean measure on the strip:
/// per half-strip the |y| values start at K and grow by Exponential(t1-t0)
/// gaps until they exceed N (the overshoot point is discarded); each
/// retained point gets an independent x uniform on (t0,t1).  The two
/// half-strips use independent substreams of spec.seed, so the output is
/// fully deterministic given the spec.
PointSet generate_poisson_strip(const StripSpec& spec);

/// Minimum positive difference between consecutive distinct x values.
/// Throws TooFewPoints when fewer than two distinct x values exist.
double min_x_gap(const PointSet& ps);

/// CSV round-trip with header "x,y" and 17-significant-digit decimals, so
/// save-then-load reproduces the set bitwise.  load_points sorts unsorted
/// rows (with a warning on stderr) and rejects rows violating invariants.
void save_points(const PointSet& ps, const std::string& path);
PointSet load_points(const std::string& path, double t0, double t1);

}  // namespace selfstab
