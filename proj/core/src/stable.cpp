#include "selfstab/stable.hpp"

#include <cmath>

#include "selfstab/errors.hpp"
#include "selfstab/rng.hpp"

namespace selfstab {

std::vector<double> cms_stable_sample(double alpha, double scale, std::size_t count,
                                      std::uint64_t seed) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw DomainError("cms_stable_sample: alpha must be in (0,1)");
  std::vector<double> out(count);
  SplitMix64 rng(seed, 0x434d53ULL);  // "CMS" stream tag
  // The unit law here is pinned to the two-sided plane-Poisson sum: with
  // C_alpha = (int_0^inf u^{-alpha} sin u du)^{-1/alpha}, the sum over the
  // full strip up to t = 1 times C_alpha must be a unit sample.  Its
  // characteristic function is exp(-2|t|^alpha), which is 2^{1/alpha} times
  // the trigonometric sampler's exp(-|t|^alpha) normalization.
  const double unit = std::pow(2.0, 1.0 / alpha);
  for (std::size_t i = 0; i < count; ++i) {
    double u = M_PI * (rng.uniform01() - 0.5);  // uniform on (-pi/2, pi/2)
    double e = rng.exponential(1.0);
    double x = std::sin(alpha * u) / std::pow(std::cos(u), 1.0 / alpha) *
               std::pow(std::cos((1.0 - alpha) * u) / e, (1.0 - alpha) / alpha);
    out[i] = scale * unit * x;
  }
  return out;
}

}  // namespace selfstab
