// Copyright 2026 The Greenlist Authors
// SPDX-License-Identifier: Apache-2.0

#include "greenlist/warp.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "greenlist/errors.h"

namespace greenlist {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

void check_dims(std::span<const double> logits, const GreenMask& mask) {
  if (logits.size() != mask.size()) {
    throw ConfigError("logit vector and green mask sizes differ");
  }
}

}  // namespace

ProbVector softmax(std::span<const double> logits) {
  double max = kNegInf;
  for (double l : logits) {
    if (std::isnan(l) || l == std::numeric_limits<double>::infinity()) {
      throw SourceError("logit vector contains NaN or +inf");
    }
    max = std::max(max, l);
  }
  if (max == kNegInf) throw SourceError("every logit is -inf; nothing can be sampled");
  ProbVector p(logits.size());
  double z = 0.0;
  for (std::size_t i = 0; i < logits.size(); ++i) {
    p[i] = logits[i] == kNegInf ? 0.0 : std::exp(logits[i] - max);
    z += p[i];
  }
  for (double& v : p) v /= z;
  return p;
}

LogitVector hard_warp(std::span<const double> logits, const GreenMask& mask) {
  check_dims(logits, mask);
  if (mask.green_count() == 0) throw ConfigError("all-red mask leaves nothing to sample");
  LogitVector out(logits.begin(), logits.end());
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (!mask.is_green(static_cast<TokenId>(i))) out[i] = kNegInf;
  }
  return out;
}

ProbVector soft_warp(std::span<const double> logits, const GreenMask& mask, double delta) {
  check_dims(logits, mask);
  if (std::isnan(delta) || delta < 0.0) throw ConfigError("delta must be >= 0");
  if (std::isinf(delta)) return softmax(hard_warp(logits, mask));
  LogitVector boosted(logits.begin(), logits.end());
  for (std::size_t i = 0; i < boosted.size(); ++i) {
    if (mask.is_green(static_cast<TokenId>(i))) boosted[i] += delta;
  }
  return softmax(boosted);
}

LogitVector apply_temperature(std::span<const double> logits, double temp) {
  if (!(temp > 0.0) || std::isinf(temp)) throw ConfigError("temperature must be finite and > 0");
  LogitVector out(logits.begin(), logits.end());
  if (temp == 1.0) return out;
  for (double& l : out) l /= temp;
  return out;
}

}  // namespace greenlist
