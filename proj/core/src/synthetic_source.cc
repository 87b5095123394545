// Copyright 2026 The Greenlist Authors
// SPDX-License-Identifier: Apache-2.0

#include "greenlist/synthetic_source.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "greenlist/analysis.h"
#include "greenlist/errors.h"
#include "greenlist/rng.h"
#include "greenlist/warp.h"

namespace greenlist {

namespace {

double sharpened_entropy(std::span<const double> base, double beta, double modulus) {
  std::vector<double> scaled(base.size());
  for (std::size_t i = 0; i < base.size(); ++i) scaled[i] = beta * base[i];
  const ProbVector p = softmax(scaled);
  return spike_entropy(p, modulus);
}

// Spike entropy falls from its maximum at beta = 0 toward 1/(1+z) as beta
// grows; bisect on log beta.
LogitVector solve(std::span<const double> base, double target, double modulus) {
  const double top = SyntheticSource::max_target(modulus, base.size());
  if (target >= top) return LogitVector(base.size(), 0.0);
  double lo = -20.0, hi = 20.0;
  if (sharpened_entropy(base, std::exp(hi), modulus) > target) {
    throw RangeError("spike entropy target " + std::to_string(target) +
                     " unreachable for this base distribution");
  }
  for (int it = 0; it < 200 && hi - lo > 1e-13; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (sharpened_entropy(base, std::exp(mid), modulus) > target) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  const double beta = std::exp(0.5 * (lo + hi));
  LogitVector out(base.size());
  for (std::size_t i = 0; i < base.size(); ++i) out[i] = beta * base[i];
  return out;
}

}  // namespace

SyntheticSource::SyntheticSource(SyntheticSpec spec) : spec_(spec) {
  if (spec_.vocab_size < 2) throw ConfigError("synthetic vocab_size must be >= 2");
  if (spec_.pool_size == 0) throw ConfigError("synthetic pool_size must be >= 1");
  if (!(spec_.modulus > 0.0) || !std::isfinite(spec_.modulus)) {
    throw ConfigError("synthetic modulus must be positive and finite");
  }
  const double lo = min_target(spec_.modulus);
  const double hi = max_target(spec_.modulus, spec_.vocab_size);
  if (!(spec_.target > lo && spec_.target <= hi)) {
    throw RangeError("spike entropy target " + std::to_string(spec_.target) + " outside (" +
                     std::to_string(lo) + ", " + std::to_string(hi) + "]");
  }
  pool_.reserve(spec_.pool_size);
  for (std::size_t k = 0; k < spec_.pool_size; ++k) {
    SeededRng rng(derive_seed(spec_.seed, k));
    std::vector<double> base(spec_.vocab_size);
    for (auto& b : base) {
      // log of an Exp(1) draw; 1 - u keeps the argument in (0, 1].
      b = std::log(-std::log(1.0 - rng.uniform01()) + 1e-300);
    }
    pool_.push_back(solve(base, spec_.target, spec_.modulus));
  }
}

LogitVector SyntheticSource::next_logits(std::span<const TokenId> context) const {
  std::uint64_t h = splitmix64(spec_.seed ^ 0x73796e7468ULL);
  for (TokenId t : context) h = splitmix64(h ^ t);
  const LogitVector& shape = pool_[h % pool_.size()];
  const std::size_t n = spec_.vocab_size;
  const std::size_t shift = static_cast<std::size_t>((h >> 32) % n);
  LogitVector out(n);
  for (std::size_t i = 0; i < n; ++i) out[(i + shift) % n] = shape[i];
  return out;
}

}  // namespace greenlist
