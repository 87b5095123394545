// Copyright 2026 The Greenlist Authors
// SPDX-License-Identifier: Apache-2.0

#include "greenlist/experiment.h"

#include <gtest/gtest.h>

#include <atomic>

#include "greenlist/coloring.h"
#include "greenlist/detector.h"
#include "greenlist/errors.h"
#include "test_support.h"

namespace greenlist {
namespace {

using testing::toy_model;

TEST(ParallelFor, VisitsEveryIndexOnce) {
  for (std::size_t threads : {1, 3, 8}) {
    std::vector<std::atomic<int>> hits(1000);
    parallel_for(hits.size(), [&](std::size_t i) { ++hits[i]; }, threads);
    for (const auto& h : hits) EXPECT_EQ(h.load(), 1);
  }
  EXPECT_THROW(parallel_for(
                   10, [](std::size_t i) { if (i == 7) throw DataError("boom"); }, 2),
               DataError);
}

TEST(Batch, DeterministicAcrossThreadCounts) {
  const auto& m = toy_model();
  const auto cfg = testing::lefthash(0.5, 2.0, m.lm.vocab_size());
  const LeftHashRule rule(cfg);
  const auto prompts = toy_prompts(m.vocab, 1, 12, 4);
  DecodeSpec spec;
  spec.max_tokens = 40;
  const auto a = generate_batch(m.lm, prompts, &rule, 2.0, spec, 77, 1);
  const auto b = generate_batch(m.lm, prompts, &rule, 2.0, spec, 77, 4);
  EXPECT_EQ(a, b);
  spec.strategy = Multinomial{derive_seed(77, 5)};
  EXPECT_EQ(a[5], generate(m.lm, prompts[5], &rule, 2.0, spec));
}

TEST(PrefixZ, EqualsScoreOfTruncation) {
  const auto& m = toy_model();
  const auto cfg = testing::lefthash(0.25, 2.0, m.lm.vocab_size());
  const LeftHashRule rule(cfg);
  DecodeSpec spec;
  spec.strategy = Multinomial{3};
  spec.max_tokens = 60;
  const auto seq = generate(m.lm, toy_prompts(m.vocab, 2, 1, 4)[0], cfg, spec);
  TokenSequence cut = seq;
  cut.generated.resize(25);
  EXPECT_EQ(prefix_z(seq, rule, 25), score(cut, cfg).z);
  EXPECT_EQ(prefix_z(seq, rule, 1000), score(seq, cfg).z);
}

TEST(Strategy, ParseAndName) {
  EXPECT_TRUE(std::holds_alternative<Multinomial>(parse_strategy("multinomial")));
  EXPECT_TRUE(std::holds_alternative<Greedy>(parse_strategy("greedy")));
  const Strategy b = parse_strategy("beam8");
  ASSERT_TRUE(std::holds_alternative<Beam>(b));
  EXPECT_EQ(std::get<Beam>(b).width, 8u);
  EXPECT_EQ(strategy_name(b), "beam8");
  EXPECT_EQ(strategy_name(Greedy{}), "greedy");
  EXPECT_THROW(parse_strategy("beam"), ConfigError);
  EXPECT_THROW(parse_strategy("nucleus"), ConfigError);
}

TEST(Sweep, TrendsOnToyModel) {
  const auto& m = toy_model();
  SweepGrid grid;
  grid.gammas = {0.25};
  grid.deltas = {1.0, 5.0};
  grid.lengths = {25, 50, 100};
  grid.seed = 4;
  const auto prompts = toy_prompts(m.vocab, 3, 40, 4);
  std::vector<SweepScores> scores;
  const auto rows = run_sweep(m.lm, prompts, grid, 0, &scores);
  ASSERT_EQ(rows.size(), 6u);
  ASSERT_EQ(scores.size(), 6u);
  for (std::size_t d = 0; d < 2; ++d) {
    for (std::size_t k = 1; k < 3; ++k) EXPECT_GT(rows[3 * d + k].mean_z, rows[3 * d + k - 1].mean_z);
  }
  for (std::size_t k = 0; k < 3; ++k) EXPECT_GE(rows[3 + k].auc, rows[k].auc);
  for (const auto& r : rows) {
    EXPECT_NEAR(r.tpr + r.fnr, 1.0, 1e-12);
    EXPECT_NEAR(r.fpr + r.tnr, 1.0, 1e-12);
  }
  const std::string csv = sweep_csv(rows);
  EXPECT_EQ(csv.substr(0, csv.find('\n')),
            "gamma,delta,strategy,T,mean_z,std_z,tpr@z4,fnr@z4,fpr@z4,tnr@z4,auc,auc_se");
}

}  // namespace
}  // namespace greenlist
