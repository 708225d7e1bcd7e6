#pragma once

#include <cstdint>
#include <vector>

namespace selfstab {

/// i.i.d. symmetric alpha-stable samples (beta = 0, mu = 0) by the standard
/// trigonometric transform of a uniform angle and an exponential variate.
/// The unit sample is normalized so that the plane-Poisson sum over the
/// two-sided strip at horizon 1, multiplied by the sine-integral constant
/// C_alpha, is a unit sample (characteristic function exp(-2|t|^alpha)).
/// `scale` multiplies each sample; deterministic given the seed.  Serves as
/// the independent reference law for distributional checks.
std::vector<double> cms_stable_sample(double alpha, double scale, std::size_t count,
                                      std::uint64_t seed);

}  // namespace selfstab
