#include "selfstab/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "selfstab/errors.hpp"
#include "selfstab/rng.hpp"
#include "selfstab/solver.hpp"

namespace selfstab {

double SampledPath::value_at(double t) const {
  if (times.empty() || t < times.front())
    throw OutOfInterval("SampledPath::value_at: t before grid start");
  auto it = std::upper_bound(times.begin(), times.end(), t);
  return values[static_cast<std::size_t>(it - times.begin()) - 1];
}

void SampledPath::save_csv(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw Error("cannot open for writing: " + path);
  out << "t,value\n";
  char buf[80];
  for (std::size_t i = 0; i < times.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", times[i], values[i]);
    out << buf;
  }
  if (!out) throw Error("write failed: " + path);
}

SampledPath sample_on_grid(const JumpFunction& f, double t0, double t1,
                           std::size_t grid_len, PathMeta meta) {
  if (grid_len < 2) throw DomainError("sample_on_grid: grid_len must be >= 2");
  std::vector<double> grid(grid_len);
  double step = (t1 - t0) / static_cast<double>(grid_len - 1);
  for (std::size_t i = 0; i < grid_len; ++i) grid[i] = t0 + step * static_cast<double>(i);
  grid.back() = t1;

  // Refine with the jump times when the uniform step is too coarse for the
  // at-most-one-jump-per-step rule.
  const auto& bp = f.breakpoints();
  bool coarse = false;
  for (std::size_t k = 1; k < bp.size(); ++k)
    if (bp[k] - bp[k - 1] <= step) {
      coarse = true;
      break;
    }
  if (coarse) {
    grid.insert(grid.end(), bp.begin(), bp.end());
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  }

  SampledPath path;
  path.times = std::move(grid);
  path.values.resize(path.times.size());
  for (std::size_t i = 0; i < path.times.size(); ++i)
    path.values[i] = path.times[i] < t1 ? f.eval(path.times[i]) : f.left_limit(t1);
  path.meta = std::move(meta);
  return path;
}

SampledPath simulate_path(const AlphaModel& alpha, double a0, double t0, double t1,
                          const TruncationPlan& plan, std::uint64_t seed,
                          std::size_t grid_len) {
  PointSet ps = generate_poisson_strip({t0, t1, plan.K, plan.N, seed});
  JumpFunction f = solve_sequential(ps, alpha, a0);
  PathMeta meta{seed, plan.K, plan.N, a0, alpha.label(), "selfstab"};
  return sample_on_grid(f, t0, t1, grid_len, std::move(meta));
}

SampledPath simulate_stable_motion(double alpha_const, double t0, double t1, double K,
                                   double N, std::uint64_t seed, std::size_t grid_len) {
  TruncationPlan plan;
  plan.K = K;
  plan.N = N;
  SampledPath path = simulate_path(AlphaModel::constant(alpha_const), 0.0, t0, t1, plan,
                                   seed, grid_len);
  path.meta.variant = "stable";
  return path;
}

SampledPath simulate_subordinator(double alpha_const, double t0, double t1, double K,
                                  double N, std::uint64_t seed, std::size_t grid_len) {
  PointSet ps = generate_poisson_strip({t0, t1, K, N, seed});
  double inv_alpha = 1.0 / alpha_const;
  std::vector<double> breakpoints;
  std::vector<double> values{0.0};
  double running = 0.0;
  std::size_t i = 0;
  while (i < ps.points.size()) {
    double x = ps.points[i].x;
    for (; i < ps.points.size() && ps.points[i].x == x; ++i)
      running += std::pow(std::fabs(ps.points[i].y), -inv_alpha);
    breakpoints.push_back(x);
    values.push_back(running);
  }
  JumpFunction sub(t0, t1, std::move(breakpoints), std::move(values));
  PathMeta meta{seed, K, N, 0.0, "constant(" + std::to_string(alpha_const) + ")",
                "subordinator"};
  return sample_on_grid(sub, t0, t1, grid_len, std::move(meta));
}

SampledPath simulate_weighted(const AlphaModel& alpha,
                              const std::function<double(double)>& w, double a0,
                              double t0, double t1, const TruncationPlan& plan,
                              std::uint64_t seed, std::size_t grid_len) {
  PointSet ps = generate_poisson_strip({t0, t1, plan.K, plan.N, seed});
  JumpFunction f = solve_weighted(ps, alpha, w, a0);
  PathMeta meta{seed, plan.K, plan.N, a0, alpha.label(), "weighted"};
  return sample_on_grid(f, t0, t1, grid_len, std::move(meta));
}

SampledPath simulate_tempered(const AlphaModel& alpha, double horizon,
                              std::size_t n_terms, std::uint64_t seed,
                              std::size_t grid_len, double* residual_envelope) {
  if (n_terms < 1) throw DomainError("simulate_tempered: n_terms must be >= 1");
  // Independent ingredient sequences, one substream each.
  SplitMix64 rng_gamma(seed, 0), rng_x(seed, 1), rng_sign(seed, 2), rng_e(seed, 3),
      rng_u(seed, 4);
  struct Term {
    double x, gamma, sign, e, u;
  };
  std::vector<Term> terms(n_terms);
  double gamma = 0.0;
  for (std::size_t i = 0; i < n_terms; ++i) {
    gamma += rng_gamma.exponential(1.0);
    terms[i] = {rng_x.uniform_open(0.0, horizon), gamma, rng_sign.sign(),
                rng_e.exponential(1.0), rng_u.uniform01()};
  }
  if (residual_envelope) {
    // Envelope of the first min-term of the last arrival over the alpha
    // range; heuristic remainder indication only.
    double g = terms.back().gamma;
    *residual_envelope =
        std::max(std::pow(alpha.a() * g / horizon, -1.0 / alpha.a()),
                 std::pow(alpha.b() * g / horizon, -1.0 / alpha.b()));
  }
  std::sort(terms.begin(), terms.end(),
            [](const Term& p, const Term& q) { return p.x < q.x; });

  std::vector<double> breakpoints;
  std::vector<double> values{0.0};
  breakpoints.reserve(n_terms);
  double running = 0.0;
  for (const Term& tm : terms) {
    double av = alpha(running);
    double cap = std::pow(av * tm.gamma / horizon, -1.0 / av);
    double small = tm.e * std::pow(tm.u, 1.0 / av);
    running += tm.sign * std::min(cap, small);
    if (!breakpoints.empty() && tm.x == breakpoints.back()) {
      values.back() = running;  // measure-zero tie; fold into one jump
    } else {
      breakpoints.push_back(tm.x);
      values.push_back(running);
    }
  }
  JumpFunction f(0.0, horizon, std::move(breakpoints), std::move(values));
  PathMeta meta{seed, 0.0, static_cast<double>(n_terms), 0.0, alpha.label(), "tempered"};
  return sample_on_grid(f, 0.0, horizon, grid_len, std::move(meta));
}

}  // namespace selfstab
