#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "selfstab/alpha_model.hpp"
#include "selfstab/jump_function.hpp"
#include "selfstab/point_process.hpp"
#include "selfstab/truncation.hpp"

namespace selfstab {

struct PathMeta {
  std::uint64_t seed = 0;
  double K = 0.0;
  double N = 0.0;
  double a0 = 0.0;
  std::string alpha_label;
  std::string variant;
};

/// Grid evaluation of a simulated process.  The grid is uniform, refined by
/// inserting the driving jump times whenever the uniform step would exceed
/// the minimum x-gap, so at most one jump occurs between successive grid
/// points.  Values are piecewise constant between jumps.
struct SampledPath {
  std::vector<double> times;
  std::vector<double> values;
  PathMeta meta;

  /// Value at the last grid time <= t.
  double value_at(double t) const;
  double final_value() const { return values.back(); }

  /// CSV export "t,value" with 17-significant-digit decimals.
  void save_csv(const std::string& path) const;
};

/// Samples a jump function on the refined grid described above.
SampledPath sample_on_grid(const JumpFunction& f, double t0, double t1,
                           std::size_t grid_len, PathMeta meta);

/// Simulates the self-stabilizing process: Poisson strip per the plan,
/// sequential solve, grid sampling.  Deterministic given the seed.
SampledPath simulate_path(const AlphaModel& alpha, double a0, double t0, double t1,
                          const TruncationPlan& plan, std::uint64_t seed,
                          std::size_t grid_len);

/// Constant-alpha specialization (non-normalized stable motion), started at 0.
SampledPath simulate_stable_motion(double alpha_const, double t0, double t1, double K,
                                   double N, std::uint64_t seed, std::size_t grid_len);

/// Stable subordinator: jumps |y|^{-1/alpha}, nondecreasing, started at 0.
SampledPath simulate_subordinator(double alpha_const, double t0, double t1, double K,
                                  double N, std::uint64_t seed, std::size_t grid_len);

/// Weighted variant: inner solver uses w(alpha(f(x-))) * signed_power(...).
SampledPath simulate_weighted(const AlphaModel& alpha,
                              const std::function<double(double)>& w, double a0,
                              double t0, double t1, const TruncationPlan& plan,
                              std::uint64_t seed, std::size_t grid_len);

/// Tempered self-stabilizing process on [0,T] via the shot-noise series:
/// jumps eta_i * min{ (alpha(z-) Gamma_i / T)^{-1/alpha(z-)},
///                    E_i * U_i^{1/alpha(z-)} },
/// truncated at n_terms.  `residual_envelope`, when non-null, receives the
/// first min-term envelope of the last included term as a heuristic
/// indication of the series remainder (no certified bound exists here).
SampledPath simulate_tempered(const AlphaModel& alpha, double horizon,
                              std::size_t n_terms, std::uint64_t seed,
                              std::size_t grid_len, double* residual_envelope = nullptr);

}  // namespace selfstab
