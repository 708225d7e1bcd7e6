#include "selfstab/analysis.hpp"

#include <algorithm>
#include <cmath>

#include "selfstab/errors.hpp"
#include "selfstab/parallel.hpp"
#include "selfstab/rng.hpp"
#include "selfstab/solver.hpp"
#include "selfstab/stable.hpp"

namespace selfstab {

double ks_distance(std::span<const double> samples_a, std::span<const double> samples_b) {
  if (samples_a.empty() || samples_b.empty())
    throw EmptySample("ks_distance: both samples must be nonempty");
  std::vector<double> a(samples_a.begin(), samples_a.end());
  std::vector<double> b(samples_b.begin(), samples_b.end());
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    double v = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= v) ++i;
    while (j < b.size() && b[j] <= v) ++j;
    d = std::max(d, std::fabs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  return d;
}

LocalizationReport localization_experiment(const AlphaModel& alpha, double z0,
                                           const std::vector<double>& r_values, double u,
                                           std::size_t n_paths, const TruncationPlan& plan,
                                           std::uint64_t seed) {
  if (r_values.empty()) throw DomainError("localization_experiment: empty r list");
  if (!(u > 0.0 && u <= 1.0)) throw DomainError("localization_experiment: u must be in (0,1]");
  if (n_paths < 100)
    throw DomainError("localization_experiment: need at least 100 restarts per scale");

  LocalizationReport report;
  report.z0 = z0;
  report.alpha_at_z0 = alpha(z0);
  report.u = u;
  report.r_values = r_values;

  const double alpha0 = report.alpha_at_z0;
  const double ref_scale = std::pow(u, 1.0 / alpha0) / stable_norm_constant(alpha0);
  const std::size_t ref_count = std::max<std::size_t>(4 * n_paths, 4000);
  std::vector<double> reference =
      cms_stable_sample(alpha0, ref_scale, ref_count, substream_seed(seed, 0x726566ULL));

  for (std::size_t j = 0; j < r_values.size(); ++j) {
    const double r = r_values[j];
    const double h = r * u;
    if (!(h > 0.0)) throw DomainError("localization_experiment: r values must be positive");
    const double big_cut = plan.N / h;
    const double r_inv_scale = std::pow(r, -1.0 / alpha0);
    report.cutoffs_used.push_back(big_cut);

    std::vector<double> samples(n_paths);
    parallel_for(n_paths, [&](std::size_t i) {
      std::uint64_t path_seed = substream_seed(seed, (j << 32) | i);
      PointSet ps = generate_poisson_strip({0.0, h, plan.K, big_cut, path_seed});
      JumpFunction f = solve_sequential(ps, alpha, z0);
      samples[i] = (f.final_value() - z0) * r_inv_scale;
    });
    report.ks_stats.push_back(ks_distance(samples, reference));
    report.sample_counts.push_back(n_paths);
  }
  return report;
}

HolderFit holder_fit(const SampledPath& path, double t, const std::vector<double>& h_values) {
  if (h_values.size() < 3)
    throw InsufficientScales("holder_fit: need at least three h values");
  double base = path.value_at(t);
  std::vector<double> logs_h, logs_inc;
  for (double h : h_values) {
    if (!(h > 0.0)) throw DomainError("holder_fit: h values must be positive");
    double inc = std::fabs(path.value_at(t + h) - base);
    if (inc == 0.0) continue;  // quiescent scale, excluded from the fit
    logs_h.push_back(std::log(h));
    logs_inc.push_back(std::log(inc));
  }
  if (logs_h.empty()) throw AllIncrementsZero("holder_fit: all increments zero in window");

  const std::size_t n = logs_h.size();
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += logs_h[i];
    my += logs_inc[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (logs_h[i] - mx) * (logs_h[i] - mx);
    sxy += (logs_h[i] - mx) * (logs_inc[i] - my);
  }
  if (sxx == 0.0) throw InsufficientScales("holder_fit: h values collapse to one scale");

  HolderFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.increments_used = n;
  fit.residuals.resize(n);
  for (std::size_t i = 0; i < n; ++i)
    fit.residuals[i] = logs_inc[i] - (fit.intercept + fit.slope * logs_h[i]);
  return fit;
}

double holder_estimate(const SampledPath& path, double t,
                       const std::vector<double>& h_values) {
  return holder_fit(path, t, h_values).slope;
}

}  // namespace selfstab
