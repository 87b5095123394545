// Copyright 2026 The Greenlist Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef GREENLIST_EXPERIMENT_H_
#define GREENLIST_EXPERIMENT_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "greenlist/coloring.h"
#include "greenlist/detector.h"
#include "greenlist/generator.h"
#include "greenlist/lm_source.h"
#include "greenlist/types.h"

namespace greenlist {

// Runs fn(0..n-1) on up to `threads` workers (0: hardware concurrency).
// Callers write results into pre-sized slots, so output order never
// depends on scheduling. The first exception thrown is rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn,
                  std::size_t threads = 0);

// One sequence per prompt. A multinomial strategy gets the per-sequence
// seed derive_seed(seed, i); other strategies ignore the seed.
std::vector<TokenSequence> generate_batch(const LmSource& lm,
                                          std::span<const std::vector<TokenId>> prompts,
                                          const PartitionRule* rule, double delta,
                                          const DecodeSpec& base, std::uint64_t seed,
                                          std::size_t threads = 0);

// z of the first t generated tokens (all of them when t is larger).
double prefix_z(const TokenSequence& tokens, const ColoringRule& rule, std::size_t t,
                const DetectorOptions& opts = {});

// "multinomial", "greedy", or "beam<width>" such as "beam8".
Strategy parse_strategy(std::string_view name);
std::string strategy_name(const Strategy& strategy);

struct SweepGrid {
  std::vector<double> gammas{0.25, 0.5};
  std::vector<double> deltas{1.0, 2.0, 5.0};
  std::vector<std::string> strategies{"multinomial"};
  std::vector<std::size_t> lengths{25, 50, 100, 200};
  std::size_t window = 1;
  std::uint64_t salt = 0;
  std::uint64_t seed = 0;
  double z_threshold = 4.0;
};

struct SweepRow {
  double gamma = 0.0;
  double delta = 0.0;
  std::string strategy;
  std::size_t t = 0;
  double mean_z = 0.0;
  double std_z = 0.0;
  double tpr = 0.0;  // fraction of watermarked sequences with z > threshold
  double fnr = 0.0;
  double fpr = 0.0;  // same threshold on unwatermarked sequences
  double tnr = 0.0;
  double auc = 0.0;
  double auc_se = 0.0;
};

// Raw z values behind one SweepRow.
struct SweepScores {
  std::vector<double> watermarked;
  std::vector<double> plain;
};

// For every (gamma, delta, strategy) cell: generate one watermarked and one
// unwatermarked sequence per prompt with max(lengths) tokens, then score
// each prefix length. When `scores` is given it receives one entry per row.
std::vector<SweepRow> run_sweep(const LmSource& lm, std::span<const std::vector<TokenId>> prompts,
                                const SweepGrid& grid, std::size_t threads = 0,
                                std::vector<SweepScores>* scores = nullptr);

std::string sweep_csv(std::span<const SweepRow> rows);

}  // namespace greenlist

#endif  // GREENLIST_EXPERIMENT_H_
