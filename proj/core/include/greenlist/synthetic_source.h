// Copyright 2026 The Greenlist Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef GREENLIST_SYNTHETIC_SOURCE_H_
#define GREENLIST_SYNTHETIC_SOURCE_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "greenlist/lm_source.h"
#include "greenlist/types.h"

namespace greenlist {

struct SyntheticSpec {
  double target = 0.8;   // spike entropy every emitted distribution hits
  double modulus = 1.0;  // z in S(p, z)
  std::size_t vocab_size = 64;
  std::uint64_t seed = 0;
  // Distinct base distributions; each context picks one by hash and
  // rotates it by a context-dependent offset.
  std::size_t pool_size = 1024;
};

// Random next-token distributions with controlled spike entropy. Base
// shapes are normalized Exp(1) draws (a flat Dirichlet); each is sharpened
// to softmax(beta * log w) with beta found by bisection so that
// S(p, modulus) equals the target.
class SyntheticSource final : public LmSource {
 public:
  // Throws RangeError unless min_target < target <= max_target.
  explicit SyntheticSource(SyntheticSpec spec);

  static double min_target(double modulus) { return 1.0 / (1.0 + modulus); }
  static double max_target(double modulus, std::size_t vocab_size) {
    const double n = static_cast<double>(vocab_size);
    return n / (n + modulus);
  }

  std::size_t vocab_size() const override { return spec_.vocab_size; }
  LogitVector next_logits(std::span<const TokenId> context) const override;
  const SyntheticSpec& spec() const { return spec_; }

 private:
  SyntheticSpec spec_;
  std::vector<LogitVector> pool_;
};

// Every token equally likely; a stand-in for text drawn without regard to
// the watermark.
class UniformSource final : public LmSource {
 public:
  explicit UniformSource(std::size_t vocab_size) : vocab_size_(vocab_size) {}
  std::size_t vocab_size() const override { return vocab_size_; }
  LogitVector next_logits(std::span<const TokenId>) const override {
    return LogitVector(vocab_size_, 0.0);
  }

 private:
  std::size_t vocab_size_;
};

}  // namespace greenlist

#endif  // GREENLIST_SYNTHETIC_SOURCE_H_
