// Copyright 2026 The Greenlist Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef GREENLIST_STATS_H_
#define GREENLIST_STATS_H_

#include <cstddef>

namespace greenlist {

// One-proportion z statistic (green - gamma T) / sqrt(T gamma (1 - gamma)).
double z_score(std::size_t green, std::size_t counted, double gamma);

// Upper tail of the standard normal, 1 - Phi(z), via erfc.
double normal_upper_tail(double z);

// log(1 - Phi(z)); stays finite far beyond the range where the tail
// underflows a double.
double log_normal_upper_tail(double z);

// Standard normal CDF.
double normal_cdf(double z);

// P(Binomial(n, p) >= c), summed exactly in log space.
double binomial_upper_tail(std::size_t n, double p, std::size_t c);

}  // namespace greenlist

#endif  // GREENLIST_STATS_H_
