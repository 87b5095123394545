// Copyright 2026 The Greenlist Authors
// SPDX-License-Identifier: Apache-2.0

#include "greenlist/analysis.h"

#include <bit>
#include <cmath>
#include <cstdint>

#include "greenlist/errors.h"
#include "greenlist/stats.h"

namespace greenlist {

namespace {

void check_params(double gamma, double delta) {
  if (!(gamma > 0.0 && gamma < 1.0)) throw ConfigError("gamma must lie in (0, 1)");
  if (std::isnan(delta) || delta < 0.0) throw ConfigError("delta must be >= 0");
}

// Number of green entries for an exact partition of n; gamma * n must be
// integral (up to rounding noise).
std::size_t integral_green_size(double gamma, std::size_t n) {
  const double g = gamma * static_cast<double>(n);
  const double r = std::round(g);
  if (std::abs(g - r) > 1e-9 || r < 1 || r >= static_cast<double>(n)) {
    throw ConfigError("gamma * |V| must be an integer in [1, |V| - 1] for enumeration");
  }
  return static_cast<std::size_t>(r);
}

void check_enumerable(std::span<const double> p) {
  if (p.size() < 2) throw ConfigError("enumeration needs |V| >= 2");
  if (p.size() > kMaxEnumerationVocab) {
    throw SizeError("partition enumeration supports |V| <= 16, got " + std::to_string(p.size()));
  }
}

// Calls fn(green_mass, green_bits) for every green list of size g.
template <typename Fn>
std::size_t for_each_partition(std::span<const double> p, std::size_t g, Fn&& fn) {
  const std::uint32_t n = static_cast<std::uint32_t>(p.size());
  std::size_t count = 0;
  for (std::uint32_t bits = 0; bits < (1u << n); ++bits) {
    if (static_cast<std::size_t>(std::popcount(bits)) != g) continue;
    double green_mass = 0.0;
    for (std::uint32_t k = 0; k < n; ++k) {
      if (bits & (1u << k)) green_mass += p[k];
    }
    fn(green_mass, bits);
    ++count;
  }
  return count;
}

}  // namespace

double spike_entropy(std::span<const double> p, double modulus) {
  if (std::isnan(modulus) || modulus < 0.0) throw ConfigError("modulus must be >= 0");
  double s = 0.0;
  for (double pk : p) s += pk / (1.0 + modulus * pk);
  return s;
}

// Both closed forms are evaluated with e^-delta so delta = +inf gives the
// exact limits.
double spike_modulus(double gamma, double delta) {
  check_params(gamma, delta);
  const double inv_alpha = std::exp(-delta);
  return (1.0 - gamma) * (1.0 - inv_alpha) / (inv_alpha + (1.0 - inv_alpha) * gamma);
}

double green_coefficient(double gamma, double delta) {
  check_params(gamma, delta);
  const double inv_alpha = std::exp(-delta);
  return gamma / (inv_alpha + (1.0 - inv_alpha) * gamma);
}

double expected_green_lower_bound(double s_star, double gamma, double delta, std::size_t t) {
  return green_coefficient(gamma, delta) * static_cast<double>(t) * s_star;
}

double green_variance_upper_bound(double s_star, double gamma, double delta, std::size_t t) {
  const double q = green_coefficient(gamma, delta) * s_star;
  return static_cast<double>(t) * q * (1.0 - q);
}

double simple_green_variance_upper_bound(double gamma, std::size_t t) {
  if (!(gamma >= 0.5 && gamma < 1.0)) {
    throw ConfigError("the simple variance bound T gamma (1 - gamma) requires gamma >= 0.5");
  }
  return static_cast<double>(t) * gamma * (1.0 - gamma);
}

double detection_cutoff(double gamma, std::size_t t, double z_threshold) {
  const double tt = static_cast<double>(t);
  return gamma * tt + z_threshold * std::sqrt(tt * gamma * (1.0 - gamma));
}

double type2_error_estimate(double mean_green, double sd_green, double gamma, std::size_t t,
                            double z_threshold) {
  if (!(sd_green > 0.0)) throw ConfigError("standard deviation must be > 0");
  const double cutoff = detection_cutoff(gamma, t, z_threshold);
  return normal_cdf((cutoff - mean_green) / sd_green);
}

double green_probability_lower_bound(std::span<const double> p, double gamma, double delta) {
  return green_coefficient(gamma, delta) * spike_entropy(p, spike_modulus(gamma, delta));
}

double exact_green_probability(std::span<const double> p, double gamma, double delta) {
  check_params(gamma, delta);
  check_enumerable(p);
  const std::size_t g = integral_green_size(gamma, p.size());
  const double inv_alpha = std::exp(-delta);
  double total = 0.0;
  const std::size_t count = for_each_partition(p, g, [&](double green_mass, std::uint32_t) {
    const double red_mass = 1.0 - green_mass;
    const double denom = red_mass * inv_alpha + green_mass;
    total += denom > 0.0 ? green_mass / denom : 0.0;
  });
  return total / static_cast<double>(count);
}

double perplexity_bound_factor(double gamma, double delta) {
  check_params(gamma, delta);
  return 1.0 + std::expm1(delta) * gamma;
}

double model_entropy(std::span<const double> p) {
  double h = 0.0;
  for (double pk : p) {
    if (pk > 0.0) h -= pk * std::log(pk);
  }
  return h;
}

double expected_cross_entropy(std::span<const double> p, double gamma, double delta) {
  check_params(gamma, delta);
  check_enumerable(p);
  const std::size_t g = integral_green_size(gamma, p.size());
  const double inv_alpha = std::exp(-delta);
  const std::uint32_t n = static_cast<std::uint32_t>(p.size());
  double total = 0.0;
  const std::size_t count = for_each_partition(p, g, [&](double green_mass, std::uint32_t bits) {
    // Scaled by 1/alpha: green weight 1, red weight e^-delta.
    const double denom = (1.0 - green_mass) * inv_alpha + green_mass;
    double ce = 0.0;
    for (std::uint32_t k = 0; k < n; ++k) {
      if (p[k] <= 0.0) continue;
      const double w = (bits & (1u << k)) ? 1.0 : inv_alpha;
      ce -= (w * p[k] / denom) * std::log(p[k]);
    }
    total += ce;
  });
  return total / static_cast<double>(count);
}

BoundReport compute_bounds(double gamma, double delta, std::size_t t, double s_star,
                           double z_threshold, std::optional<double> empirical_mean) {
  check_params(gamma, delta);
  if (t < 1) throw ConfigError("T must be >= 1");
  BoundReport r;
  r.gamma = gamma;
  r.delta = delta;
  r.t = t;
  r.s_star = s_star;
  r.modulus = spike_modulus(gamma, delta);
  r.coefficient = green_coefficient(gamma, delta);
  r.expected_green_lb = expected_green_lower_bound(s_star, gamma, delta, t);
  r.variance_ub = green_variance_upper_bound(s_star, gamma, delta, t);
  r.sigma_ub = std::sqrt(r.variance_ub);
  if (gamma >= 0.5) r.simple_variance_ub = simple_green_variance_upper_bound(gamma, t);
  r.z_threshold = z_threshold;
  r.cutoff = detection_cutoff(gamma, t, z_threshold);
  r.type2_estimate = type2_error_estimate(r.expected_green_lb, r.sigma_ub, gamma, t, z_threshold);
  if (empirical_mean) {
    r.empirical_mean = empirical_mean;
    r.type2_empirical = type2_error_estimate(*empirical_mean, r.sigma_ub, gamma, t, z_threshold);
  }
  r.perplexity_factor = perplexity_bound_factor(gamma, delta);
  return r;
}

}  // namespace greenlist
