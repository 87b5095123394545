// Copyright 2026 The Greenlist Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef GREENLIST_DETECTOR_H_
#define GREENLIST_DETECTOR_H_

#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "greenlist/coloring.h"
#include "greenlist/types.h"
#include "greenlist/vocab_prf.h"

namespace greenlist {

struct DetectorOptions {
  // Count each (ngram_width)-gram on its first occurrence only; repeats are
  // neither green nor red and do not increment T.
  bool skip_repeated_ngrams = false;
  std::size_t ngram_width = 0;  // 0 selects h + 1
  double z_threshold = 4.0;
  // When false the prompt is ignored and the first h generated tokens are
  // unscorable.
  bool use_prompt = true;
};

struct DetectionReport {
  std::size_t t_counted = 0;
  std::size_t green_count = 0;
  double gamma = 0.0;
  double z = 0.0;
  double p_one_sided = 1.0;
  double log_p = 0.0;
  bool detected = false;  // z > z_threshold
  std::vector<Color> colors;  // one entry per generated token
};

// Recomputes every color exactly as the generator did and applies the
// one-proportion z-test. Throws EmptyScoreError when nothing is countable.
DetectionReport score(const TokenSequence& tokens, const WatermarkConfig& config,
                      const DetectorOptions& opts = {});
DetectionReport score(const TokenSequence& tokens, const ColoringRule& rule,
                      const DetectorOptions& opts = {});

// One-sided upper-tail p-value of z.
double p_value(double z);

struct MultiKeyResult {
  std::vector<DetectionReport> reports;
  bool rejected = false;
  double corrected_alpha = 0.0;  // alpha / k
};

// k tests with Bonferroni correction: reject iff some p <= alpha / k.
MultiKeyResult multi_key_score(const TokenSequence& tokens, std::span<const WatermarkConfig> configs,
                               double alpha, const DetectorOptions& opts = {});
MultiKeyResult multi_key_score(const TokenSequence& tokens,
                               std::span<const std::shared_ptr<const ColoringRule>> rules,
                               double alpha, const DetectorOptions& opts = {});

enum class FprMode {
  kHardPerfect,  // probability a natural source never violates: gamma^T
  kZTest,        // Gaussian p-value of the z threshold
};
double null_false_positive_rate(std::size_t t, double gamma, FprMode mode,
                                double z_threshold = 4.0);

// Exact binomial probability that T null tokens score z > z_threshold.
double exact_null_false_positive_rate(std::size_t t, double gamma, double z_threshold = 4.0);

// Run-length encoding of a color trace, e.g. "G3R1S2U1".
std::string run_length_colors(std::span<const Color> colors);

}  // namespace greenlist

#endif  // GREENLIST_DETECTOR_H_
