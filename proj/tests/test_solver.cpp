#include <cmath>
#include <numbers>
#include <vector>

#include <doctest.h>

#include "selfstab/alpha_model.hpp"
#include "selfstab/errors.hpp"
#include "selfstab/jump_function.hpp"
#include "selfstab/point_process.hpp"
#include "selfstab/rng.hpp"
#include "selfstab/solver.hpp"

using namespace selfstab;

namespace {

// random point set with |y| in [ylo, yhi]
PointSet random_set(std::uint64_t seed, std::size_t n, double ylo, double yhi,
                    double t0 = 0.0, double t1 = 1.0) {
  SplitMix64 rng(seed);
  std::vector<Point> pts(n);
  for (auto& p : pts)
    p = {rng.uniform_open(t0, t1), rng.uniform_open(ylo, yhi) * rng.sign()};
  return PointSet::create(t0, t1, std::move(pts));
}

const AlphaModel& fig_model() {
  static AlphaModel m = AlphaModel::cosine(0.57, 0.4);
  return m;
}

}  // namespace

TEST_CASE("jump function basics") {
  JumpFunction f(0.0, 1.0, {0.25, 0.75}, {1.0, 2.0, 3.0});
  CHECK(f.eval(0.0) == 1.0);
  CHECK(f.eval(0.25) == 2.0);       // right continuity
  CHECK(f.left_limit(0.25) == 1.0);
  CHECK(f.left_limit(1.0) == 3.0);
  CHECK(f.initial_value() == 1.0);
  CHECK(f.final_value() == 3.0);
  CHECK_THROWS_AS(f.eval(1.0), OutOfInterval);
  CHECK_THROWS_AS(f.eval(-0.1), OutOfInterval);
  CHECK_THROWS_AS(f.left_limit(0.0), OutOfInterval);
  CHECK_THROWS_AS(JumpFunction(0.0, 1.0, {0.5, 0.5}, {1.0, 2.0, 3.0}), InvariantViolation);
  CHECK_THROWS_AS(JumpFunction(0.0, 1.0, {0.5}, {1.0}), InvariantViolation);

  JumpFunction g = JumpFunction::constant(0.0, 1.0, 2.0);
  CHECK(sup_distance(f, g) == doctest::Approx(1.0));
  CHECK(sup_distance(f, f) == 0.0);
  JumpFunction other_interval = JumpFunction::constant(0.0, 2.0, 2.0);
  CHECK_THROWS_AS(sup_distance(f, other_interval), InvariantViolation);
}

TEST_CASE("sequential solve oracles") {
  AlphaModel half = AlphaModel::constant(0.5);
  // empty set: constant a0
  JumpFunction f0 = solve_sequential(PointSet::create(0.0, 1.0, {}), half, 2.5);
  CHECK(f0.breakpoints().empty());
  CHECK(f0.final_value() == 2.5);

  // one point (0.3, 4): jump 4^{-1/0.5} = 1/16
  JumpFunction f1 = solve_sequential(PointSet::create(0.0, 1.0, {{0.3, 4.0}}), half, 0.0);
  CHECK(f1.eval(0.2) == 0.0);
  CHECK(f1.eval(0.3) == doctest::Approx(0.0625).epsilon(1e-15));
  CHECK(f1.final_value() == doctest::Approx(0.0625).epsilon(1e-15));

  // negative mark: signed jump
  JumpFunction f2 = solve_sequential(PointSet::create(0.0, 1.0, {{0.3, -4.0}}), half, 1.0);
  CHECK(f2.final_value() == doctest::Approx(1.0 - 0.0625).epsilon(1e-15));

  // two points, state-dependent exponent, independent recomputation
  const AlphaModel& m = fig_model();
  PointSet ps = PointSet::create(0.0, 1.0, {{0.2, 3.0}, {0.7, -5.0}});
  JumpFunction f3 = solve_sequential(ps, m, 0.25);
  double v  = 0.25;
  double v1 = v + std::pow(3.0, -1.0 / (0.57 + 0.4 * std::cos(v)));
  double v2 = v1 - std::pow(5.0, -1.0 / (0.57 + 0.4 * std::cos(v1)));
  CHECK(f3.eval(0.5) == doctest::Approx(v1).epsilon(1e-15));
  CHECK(f3.final_value() == doctest::Approx(v2).epsilon(1e-15));
}

TEST_CASE("co-located jumps are summed against the shared pre-jump value") {
  AlphaModel half = AlphaModel::constant(0.5);
  PointSet tied = PointSet::create(0.0, 1.0, {{0.4, 2.0}, {0.4, 3.0}});
  JumpFunction f = solve_sequential(tied, half, 0.0);
  CHECK(f.breakpoints().size() == 1);
  CHECK(f.final_value() == doctest::Approx(0.25 + 1.0 / 9.0).epsilon(1e-15));
}

TEST_CASE("restart identity") {
  const AlphaModel& m = fig_model();
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    PointSet ps = random_set(seed, 40, 1.0, 50.0);
    JumpFunction full = solve_sequential(ps, m, 0.3);
    const double tm = 0.5;
    std::vector<Point> left, right;
    for (const Point& p : ps.points) (p.x < tm ? left : right).push_back(p);
    JumpFunction fl = solve_sequential(PointSet::create(0.0, tm, left), m, 0.3);
    JumpFunction fr = solve_sequential(PointSet::create(tm, 1.0, right), m,
                                       fl.final_value());
    for (double t : {0.1, 0.3, 0.49})
      CHECK(std::fabs(full.eval(t) - fl.eval(t)) < 1e-12);
    for (double t : {0.5, 0.7, 0.99})
      CHECK(std::fabs(full.eval(t) - fr.eval(t)) < 1e-12);
  }
}

TEST_CASE("sign symmetry and monotonicity") {
  const AlphaModel& m = fig_model();  // even in z
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    PointSet ps = random_set(seed + 31, 30, 1.0, 20.0);
    std::vector<Point> flipped = ps.points;
    for (Point& p : flipped) p.y = -p.y;
    JumpFunction f = solve_sequential(ps, m, 0.0);
    JumpFunction g = solve_sequential(PointSet::create(0.0, 1.0, flipped), m, 0.0);
    REQUIRE(f.values().size() == g.values().size());
    for (std::size_t k = 0; k < f.values().size(); ++k)
      CHECK(f.values()[k] == doctest::Approx(-g.values()[k]).epsilon(1e-13));

    std::vector<Point> pos = ps.points;
    for (Point& p : pos) p.y = std::fabs(p.y);
    JumpFunction h = solve_sequential(PointSet::create(0.0, 1.0, pos), m, 0.0);
    for (std::size_t k = 1; k < h.values().size(); ++k)
      CHECK(h.values()[k] >= h.values()[k - 1]);
  }
}

TEST_CASE("contraction sum") {
  AlphaModel half = AlphaModel::constant(0.5);  // M = 0
  CHECK(contraction_sum(random_set(5, 30, 1.0, 10.0), half) == 0.0);
  const AlphaModel& m = fig_model();
  PointSet one = PointSet::create(0.0, 1.0, {{0.5, 4.0}});
  CHECK(contraction_sum(one, m) ==
        doctest::Approx(m.derivative_ratio_bound() * y_weight_ab(4.0, m.a(), m.b()))
            .epsilon(1e-14));
}

TEST_CASE("picard iteration agrees with the sequential pass") {
  const AlphaModel& m = fig_model();
  int checked = 0;
  for (std::uint64_t seed = 0; checked < 40; ++seed) {
    PointSet ps = random_set(seed + 900, 30, 2e5, 5e6);
    if (contraction_sum(ps, m) >= 0.5) continue;
    ++checked;
    JumpFunction seq = solve_sequential(ps, m, 0.1);
    JumpFunction pic = solve_picard(ps, m, 0.1, 1e-14, 200);
    CHECK(sup_distance(seq, pic) < 1e-10);
  }
}

TEST_CASE("picard on constant alpha converges immediately") {
  AlphaModel half = AlphaModel::constant(0.5);
  PointSet ps = random_set(3, 25, 1.0, 10.0);
  int iters = 0;
  JumpFunction pic = solve_picard(ps, half, 0.0, 1e-14, 50, &iters);
  CHECK(iters <= 2);
  CHECK(sup_distance(pic, solve_sequential(ps, half, 0.0)) == 0.0);
}

TEST_CASE("picard refuses non-contractive input") {
  const AlphaModel& m = fig_model();
  PointSet ps = random_set(8, 100, 1.0, 3.0);  // big weights, sum >> 1
  REQUIRE(contraction_sum(ps, m) >= 1.0);
  CHECK_THROWS_AS(solve_picard(ps, m, 0.0, 1e-14, 100), NotContractive);
}

TEST_CASE("truncated solve is filter-then-solve") {
  const AlphaModel& m = fig_model();
  PointSet ps = random_set(17, 60, 1.0, 40.0);
  JumpFunction a = solve_truncated(ps, m, 0.0, 10.0);
  JumpFunction b = solve_sequential(ps.truncated(10.0), m, 0.0);
  CHECK(sup_distance(a, b) == 0.0);
  CHECK(sup_distance(solve_truncated(ps, m, 0.0, 1e9), solve_sequential(ps, m, 0.0)) == 0.0);
  JumpFunction none = solve_truncated(ps, m, 0.0, 0.5);
  CHECK(none.breakpoints().empty());
}

TEST_CASE("truncation error bound dominates the actual gap") {
  const AlphaModel& m = fig_model();
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    PointSet ps = random_set(seed + 50, 30, 1.0, 50.0);
    JumpFunction full = solve_sequential(ps, m, 0.0);
    for (double n : {2.0, 5.0, 10.0, 25.0, 60.0}) {
      double gap = sup_distance(solve_truncated(ps, m, 0.0, n), full);
      double bound = truncation_error_bound(ps, m, n);
      CHECK(gap <= bound * (1.0 + 1e-12) + 1e-15);
      CHECK(truncation_error_bound_exp(ps, m, n) >= bound * (1.0 - 1e-12));
    }
    // no tail left: bound collapses to zero
    CHECK(truncation_error_bound(ps, m, 51.0) == 0.0);
  }
}

TEST_CASE("truncation error bound closed-case oracle") {
  // constant alpha 0.5 (M = 0, product factor 1), single tail point y = 4,
  // threshold n = 2: bound = 4^{-1/0.5} = 0.0625
  AlphaModel half = AlphaModel::constant(0.5);
  PointSet ps = PointSet::create(0.0, 1.0, {{0.3, 1.5}, {0.6, 4.0}});
  CHECK(truncation_error_bound(ps, half, 2.0) == doctest::Approx(0.0625).epsilon(1e-15));
  CHECK(truncation_error_bound_exp(ps, half, 2.0) ==
        doctest::Approx(0.0625).epsilon(1e-15));
}

TEST_CASE("weighted solve") {
  const AlphaModel& m = fig_model();
  PointSet ps = random_set(23, 40, 1.0, 30.0);
  JumpFunction plain = solve_sequential(ps, m, 0.2);
  JumpFunction w1 = solve_weighted(ps, m, [](double) { return 1.0; }, 0.2);
  CHECK(sup_distance(plain, w1) == 0.0);

  // constant alpha: doubling the weight doubles every jump
  AlphaModel half = AlphaModel::constant(0.5);
  JumpFunction base = solve_sequential(ps, half, 0.0);
  JumpFunction dbl = solve_weighted(ps, half, [](double) { return 2.0; }, 0.0);
  REQUIRE(base.values().size() == dbl.values().size());
  for (std::size_t k = 0; k < base.values().size(); ++k)
    CHECK(dbl.values()[k] == doctest::Approx(2.0 * base.values()[k]).epsilon(1e-13));

  // w = C_alpha normalizes the jumps; for alpha = 1/2 the factor is 2/pi
  JumpFunction norm =
      solve_weighted(ps, half, [](double a) { return stable_norm_constant(a); }, 0.0);
  for (std::size_t k = 0; k < base.values().size(); ++k)
    CHECK(norm.values()[k] ==
          doctest::Approx(2.0 / std::numbers::pi * base.values()[k]).epsilon(1e-12));
}

TEST_CASE("non-autonomous solve") {
  // alpha3 ignoring (t,g) reduces to the plain solve
  const AlphaModel& m = fig_model();
  PointSet ps = random_set(29, 25, 1.0, 20.0);
  JumpFunction a = solve_nonautonomous(
      ps, [&](double, double z, double) { return m(z); }, [](double t) { return t; },
      0.1);
  CHECK(sup_distance(a, solve_sequential(ps, m, 0.1)) == 0.0);

  // exponent frozen at the jump time: alpha = 0.4 + 0.2 g, g(t) = t
  PointSet two = PointSet::create(0.0, 1.0, {{0.25, 2.0}, {0.75, 3.0}});
  JumpFunction b = solve_nonautonomous(
      two, [](double, double, double g) { return 0.4 + 0.2 * g; },
      [](double t) { return t; }, 0.0);
  double v1 = std::pow(2.0, -1.0 / (0.4 + 0.2 * 0.25));
  double v2 = v1 + std::pow(3.0, -1.0 / (0.4 + 0.2 * 0.75));
  CHECK(b.eval(0.5) == doctest::Approx(v1).epsilon(1e-15));
  CHECK(b.final_value() == doctest::Approx(v2).epsilon(1e-15));

  CHECK_THROWS_AS(solve_nonautonomous(
                      two, [](double, double, double) { return 1.5; },
                      [](double t) { return t; }, 0.0),
                  RangeViolation);
}
