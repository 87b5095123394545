// Copyright 2026 The Greenlist Authors
// SPDX-License-Identifier: Apache-2.0
//
// Closed-form watermark theory (spike entropy, green-count bounds,
// perplexity factor, Gaussian sensitivity) together with exhaustive
// partition-enumeration oracles that check the bounds on small
// vocabularies.

#ifndef GREENLIST_ANALYSIS_H_
#define GREENLIST_ANALYSIS_H_

#include <cstddef>
#include <optional>
#include <span>

namespace greenlist {

// Largest vocabulary the enumeration oracles accept.
inline constexpr std::size_t kMaxEnumerationVocab = 16;

// S(p, z) = sum_k p_k / (1 + z p_k).
double spike_entropy(std::span<const double> p, double modulus);

// Modulus at which spike entropy enters the green-count bounds:
// (1 - gamma)(alpha - 1) / (1 + (alpha - 1) gamma), alpha = e^delta.
// Tends to (1 - gamma) / gamma as delta grows.
double spike_modulus(double gamma, double delta);

// gamma alpha / (1 + (alpha - 1) gamma); tends to 1 as delta grows.
double green_coefficient(double gamma, double delta);

// Lower bound on E|s|_G for T tokens of average spike entropy >= s_star.
double expected_green_lower_bound(double s_star, double gamma, double delta, std::size_t t);

// T q (1 - q) with q = green_coefficient * s_star.
double green_variance_upper_bound(double s_star, double gamma, double delta, std::size_t t);

// T gamma (1 - gamma); valid only for gamma >= 0.5 (ConfigError otherwise).
double simple_green_variance_upper_bound(double gamma, std::size_t t);

// Green count at which z first reaches z_threshold under the null.
double detection_cutoff(double gamma, std::size_t t, double z_threshold);

// Gaussian type-II error: P(N(mean, sd^2) < cutoff).
double type2_error_estimate(double mean_green, double sd_green, double gamma, std::size_t t,
                            double z_threshold);

// gamma alpha / (1 + (alpha - 1) gamma) * S(p, spike_modulus).
double green_probability_lower_bound(std::span<const double> p, double gamma, double delta);

// Exact probability of sampling a green token from the soft-watermarked p,
// averaged over every green list of size gamma |V| (gamma |V| must be an
// integer). Throws SizeError for |V| > kMaxEnumerationVocab.
double exact_green_probability(std::span<const double> p, double gamma, double delta);

// 1 + (alpha - 1) gamma.
double perplexity_bound_factor(double gamma, double delta);

// Shannon entropy -sum p ln p (the magnitude of P*).
double model_entropy(std::span<const double> p);

// E over all green lists of -sum_k phat_k ln p_k, enumerated exactly.
double expected_cross_entropy(std::span<const double> p, double gamma, double delta);

struct BoundReport {
  double gamma = 0.0;
  double delta = 0.0;
  std::size_t t = 0;
  double s_star = 0.0;
  double modulus = 0.0;
  double coefficient = 0.0;
  double expected_green_lb = 0.0;
  double variance_ub = 0.0;
  double sigma_ub = 0.0;
  std::optional<double> simple_variance_ub;  // present when gamma >= 0.5
  double z_threshold = 4.0;
  double cutoff = 0.0;
  double type2_estimate = 0.0;
  std::optional<double> empirical_mean;
  std::optional<double> type2_empirical;
  double perplexity_factor = 0.0;
};

// The full sensitivity chain for (gamma, delta, T, S*), optionally repeated
// with an empirically measured mean green count.
BoundReport compute_bounds(double gamma, double delta, std::size_t t, double s_star,
                           double z_threshold = 4.0,
                           std::optional<double> empirical_mean = std::nullopt);

}  // namespace greenlist

#endif  // GREENLIST_ANALYSIS_H_
