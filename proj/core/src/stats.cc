// Copyright 2026 The Greenlist Authors
// SPDX-License-Identifier: Apache-2.0

#include "greenlist/stats.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "greenlist/errors.h"

namespace greenlist {

double z_score(std::size_t green, std::size_t counted, double gamma) {
  if (counted == 0) throw EmptyScoreError("z-score of zero counted tokens is undefined");
  if (!(gamma > 0.0 && gamma < 1.0)) throw ConfigError("gamma must lie in (0, 1)");
  const double t = static_cast<double>(counted);
  return (static_cast<double>(green) - gamma * t) / std::sqrt(t * gamma * (1.0 - gamma));
}

double normal_upper_tail(double z) { return 0.5 * std::erfc(z / std::numbers::sqrt2); }

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }

double log_normal_upper_tail(double z) {
  if (z < 30.0) return std::log(normal_upper_tail(z));
  // Asymptotic series of Mills' ratio; the truncation error at z >= 30 is
  // below 1e-12 relative.
  const double z2 = z * z;
  const double series = 1.0 - 1.0 / z2 + 3.0 / (z2 * z2) - 15.0 / (z2 * z2 * z2);
  return -0.5 * z2 - std::log(z) - 0.5 * std::log(2.0 * std::numbers::pi) + std::log(series);
}

double binomial_upper_tail(std::size_t n, double p, std::size_t c) {
  if (!(p >= 0.0 && p <= 1.0)) throw ConfigError("probability must lie in [0, 1]");
  if (c == 0) return 1.0;
  if (c > n) return 0.0;
  if (p == 0.0) return 0.0;
  if (p == 1.0) return 1.0;
  const double lp = std::log(p);
  const double lq = std::log1p(-p);
  const double nn = static_cast<double>(n);
  double max_term = -INFINITY;
  std::vector<double> terms;
  terms.reserve(n - c + 1);
  for (std::size_t k = c; k <= n; ++k) {
    const double kk = static_cast<double>(k);
    const double t = std::lgamma(nn + 1) - std::lgamma(kk + 1) - std::lgamma(nn - kk + 1) +
                     kk * lp + (nn - kk) * lq;
    terms.push_back(t);
    max_term = std::max(max_term, t);
  }
  double sum = 0.0;
  for (double t : terms) sum += std::exp(t - max_term);
  return std::min(1.0, std::exp(max_term) * sum);
}

}  // namespace greenlist
