#pragma once

#include <algorithm>
#include <cmath>

namespace fdd2d::sim {

template <class Cdf>
double ks_distance(std::vector<double> samples, Cdf cdf) {
  if (samples.empty()) return 1.0;
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());
  double d = 0.0;
  for (size_t i = 0; i < samples.size(); ++i) {
    const double F = cdf(samples[i]);
    d = std::max({d, F - i / n, (i + 1) / n - F});
  }
  return d;
}

}  // namespace fdd2d::sim
