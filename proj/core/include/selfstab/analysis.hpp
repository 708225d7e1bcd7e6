#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "selfstab/alpha_model.hpp"
#include "selfstab/simulate.hpp"
#include "selfstab/truncation.hpp"

namespace selfstab {

/// Two-sample Kolmogorov-Smirnov statistic: sup over pooled points of
/// |F_a - F_b|.  Throws EmptySample.
double ks_distance(std::span<const double> samples_a, std::span<const double> samples_b);

/// Empirical check of right-localizability: per scale r the process is
/// restarted n_paths times from z0 (conditioning on F_t realized via the
/// Markov property), the normalized increment (Z(ru) - z0) / r^{1/alpha(z0)}
/// is collected, and its KS distance to the stable reference law
/// L0_{alpha(z0)}(u) = C_{alpha(z0)}^{-1} L_{alpha(z0)}(u) is recorded.
struct LocalizationReport {
  double z0 = 0.0;
  double alpha_at_z0 = 0.0;
  double u = 1.0;
  std::vector<double> r_values;
  std::vector<double> ks_stats;
  std::vector<std::size_t> sample_counts;
  std::vector<double> cutoffs_used;  // per-scale large-|y| cutoff N_r
};

/// plan.K is the absolute small-|y| cutoff.  plan.N is interpreted at the
/// scaled (unit-horizon) level: the strip for scale r uses N_r = plan.N/(ru),
/// which keeps the expected point count per restart (~2 plan.N) and the
/// relative truncation error independent of r.
LocalizationReport localization_experiment(const AlphaModel& alpha, double z0,
                                           const std::vector<double>& r_values, double u,
                                           std::size_t n_paths, const TruncationPlan& plan,
                                           std::uint64_t seed);

struct HolderFit {
  double slope = 0.0;
  double intercept = 0.0;
  std::vector<double> residuals;
  std::size_t increments_used = 0;
};

/// Least-squares fit of log|Z(t+h) - Z(t)| against log h over h_values with
/// zero increments excluded.  Throws InsufficientScales for fewer than three
/// scales, AllIncrementsZero for a quiescent window.
HolderFit holder_fit(const SampledPath& path, double t, const std::vector<double>& h_values);

/// The fitted slope (exponent estimate) alone.
double holder_estimate(const SampledPath& path, double t, const std::vector<double>& h_values);

}  // namespace selfstab
