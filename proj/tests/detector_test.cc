// Copyright 2026 The Greenlist Authors
// SPDX-License-Identifier: Apache-2.0

#include "greenlist/detector.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "greenlist/analysis.h"
#include "greenlist/coloring.h"
#include "greenlist/errors.h"
#include "greenlist/stats.h"
#include "test_support.h"

namespace greenlist {
namespace {

using testing::lefthash;

TokenSequence random_sequence(SeededRng& rng, std::size_t vocab, std::size_t t,
                              std::size_t prompt_len = 1) {
  TokenSequence s;
  s.vocab_size = vocab;
  for (std::size_t i = 0; i < prompt_len; ++i) s.prompt.push_back(rng.below(vocab));
  for (std::size_t i = 0; i < t; ++i) s.generated.push_back(rng.below(vocab));
  return s;
}

TEST(ZScore, Examples) {
  EXPECT_NEAR(z_score(600, 1000, 0.5), 6.324555320336759, 1e-12);
  EXPECT_NEAR(p_value(z_score(600, 1000, 0.5)), 1.2698142947354325e-10, 1e-16);
  EXPECT_DOUBLE_EQ(z_score(16, 16, 0.5), 4.0);
  EXPECT_EQ(z_score(50, 200, 0.25), 0.0);
  EXPECT_EQ(p_value(0.0), 0.5);
}

TEST(ZScore, GreenCutoffAtTwoHundredTokens) {
  EXPECT_NEAR(detection_cutoff(0.5, 200, 4.0), 128.2842712474619, 1e-9);
  EXPECT_LT(z_score(128, 200, 0.5), 4.0);
  EXPECT_GT(z_score(129, 200, 0.5), 4.0);
}

// 28 green of 36 tokens at a quarter green list.
TEST(ZScore, ShortPassageQuarterGreen) {
  const double z = z_score(28, 36, 0.25);
  EXPECT_NEAR(z, 7.3131034097352597, 1e-12);
  EXPECT_NEAR(p_value(z) / 1.3052098133349194e-13, 1.0, 1e-6);
}

TEST(PValue, MatchesHighPrecisionTail) {
  EXPECT_NEAR(p_value(4.0) / 3.167124183311992e-5, 1.0, 1e-6);
  EXPECT_NEAR(p_value(6.325) / 1.2661629140031475e-10, 1.0, 1e-6);
  EXPECT_NEAR(p_value(8.0) / 6.220960574271784e-16, 1.0, 1e-6);
  EXPECT_NEAR(log_normal_upper_tail(20.0), -203.91715537109726, 1e-9);
}

TEST(Score, RecomputesZFromCounts) {
  SeededRng rng(1);
  const auto cfg = lefthash(0.25, 2.0, 300, 2, 9);
  for (int i = 0; i < 100; ++i) {
    const auto r = score(random_sequence(rng, 300, 1 + rng.below(80), 2), cfg);
    EXPECT_LE(r.green_count, r.t_counted);
    const double tt = static_cast<double>(r.t_counted);
    EXPECT_NEAR(r.z, (r.green_count - 0.25 * tt) / std::sqrt(tt * 0.25 * 0.75), 1e-12);
    EXPECT_EQ(r.p_one_sided, normal_upper_tail(r.z));
    EXPECT_EQ(r.detected, r.z > 4.0);
  }
}

TEST(Score, EmptyIsAnError) {
  const auto cfg = lefthash(0.5, 2.0, 50);
  TokenSequence s;
  s.prompt = {1};
  s.vocab_size = 50;
  EXPECT_THROW(score(s, cfg), EmptyScoreError);
  DetectorOptions no_prompt;
  no_prompt.use_prompt = false;
  s.generated = {4};
  EXPECT_THROW(score(s, cfg, no_prompt), EmptyScoreError);
}

TEST(Score, OutOfVocabularyTokenIsDataError) {
  const auto cfg = lefthash(0.5, 2.0, 50);
  TokenSequence s;
  s.prompt = {1};
  s.generated = {50};
  EXPECT_THROW(score(s, cfg), DataError);
}

TEST(Score, PromptFreeModeMarksWindowUnscorable) {
  SeededRng rng(2);
  const auto cfg = lefthash(0.5, 2.0, 100, 3);
  const auto s = random_sequence(rng, 100, 20, 3);
  DetectorOptions opts;
  opts.use_prompt = false;
  const auto r = score(s, cfg, opts);
  EXPECT_EQ(r.t_counted, 17u);
  for (std::size_t i = 0; i < 3; ++i) EXPECT_EQ(r.colors[i], Color::kUnscorable);
  // Positions past the window see the same context either way.
  const auto with_prompt = score(s, cfg);
  EXPECT_EQ(with_prompt.t_counted, 20u);
  for (std::size_t i = 3; i < 20; ++i) EXPECT_EQ(r.colors[i], with_prompt.colors[i]);
}

TEST(Score, RepeatedBigramsAreSkipped) {
  const auto cfg = lefthash(0.5, 2.0, 100);
  TokenSequence s;
  s.vocab_size = 100;
  s.prompt = {7};
  for (int i = 0; i < 50; ++i) s.generated.insert(s.generated.end(), {3, 7});
  DetectorOptions skip;
  skip.skip_repeated_ngrams = true;
  const auto r = score(s, cfg, skip);
  // (7,3) and (3,7) are the only distinct bigrams.
  EXPECT_EQ(r.t_counted, 2u);
  EXPECT_EQ(std::count(r.colors.begin(), r.colors.end(), Color::kSkipped), 98);
  EXPECT_EQ(score(s, cfg).t_counted, 100u);
}

TEST(Score, SkippingIsIdempotentUnderCopies) {
  SeededRng rng(3);
  for (std::size_t h : {1, 2, 3}) {
    const auto cfg = lefthash(0.5, 2.0, 500, h, 11);
    DetectorOptions skip;
    skip.skip_repeated_ngrams = true;
    for (int trial = 0; trial < 20; ++trial) {
      const auto base = random_sequence(rng, 500, 30 + rng.below(40), 0);
      // A prompt equal to the passage tail makes the first window match
      // the window at every copy boundary.
      TokenSequence one;
      one.vocab_size = 500;
      one.prompt.assign(base.generated.end() - h, base.generated.end());
      one.generated = base.generated;
      TokenSequence many = one;
      const std::size_t copies = 2 + rng.below(4);
      for (std::size_t c = 1; c < copies; ++c) {
        many.generated.insert(many.generated.end(), base.generated.begin(), base.generated.end());
      }
      const auto a = score(one, cfg, skip);
      const auto b = score(many, cfg, skip);
      EXPECT_EQ(a.t_counted, b.t_counted);
      EXPECT_EQ(a.green_count, b.green_count);
    }
  }
}

TEST(Score, AppendingGreenRaisesZAndRedLowersIt) {
  SeededRng rng(4);
  const auto cfg = lefthash(0.25, 2.0, 200);
  const LeftHashRule rule(cfg);
  for (int i = 0; i < 100; ++i) {
    auto s = random_sequence(rng, 200, 5 + rng.below(60));
    const double z0 = score(s, cfg).z;
    const std::vector<TokenId> window{s.generated.back()};
    const GreenMask m = rule.mask(window);
    TokenId green = 0, red = 0;
    while (!m.is_green(green)) ++green;
    while (m.is_green(red)) ++red;
    auto up = s;
    up.generated.push_back(green);
    auto down = s;
    down.generated.push_back(red);
    EXPECT_GT(score(up, cfg).z, z0);
    EXPECT_LT(score(down, cfg).z, z0);
  }
}

TEST(Score, ExplicitNgramWidth) {
  const auto cfg = lefthash(0.5, 2.0, 100);
  DetectorOptions opts;
  opts.skip_repeated_ngrams = true;
  opts.ngram_width = 1;
  TokenSequence s;
  s.prompt = {1};
  s.generated = {2, 3};
  EXPECT_THROW(score(s, cfg, opts), ConfigError);
  opts.ngram_width = 3;
  s.generated = {5, 6, 5, 6, 5, 6};
  // BOS-padded trigrams (0,1,5) (1,5,6) (5,6,5) (6,5,6), then repeats.
  EXPECT_EQ(score(s, cfg, opts).t_counted, 4u);
}

TEST(MultiKey, SingleKeyMatchesScore) {
  SeededRng rng(5);
  const auto cfg = lefthash(0.5, 2.0, 100, 1, 3);
  const auto s = random_sequence(rng, 100, 40);
  const std::vector<WatermarkConfig> one{cfg};
  const auto m = multi_key_score(s, one, 3.17e-5);
  EXPECT_EQ(m.reports[0].z, score(s, cfg).z);
  EXPECT_EQ(m.rejected, m.reports[0].p_one_sided <= 3.17e-5);
}

TEST(MultiKey, FourKeyBonferroniCutoffIsZFour) {
  SeededRng rng(6);
  std::vector<WatermarkConfig> configs;
  for (int k = 0; k < 4; ++k) configs.push_back(lefthash(0.5, 2.0, 100, 1, 100 + k));
  const auto m = multi_key_score(random_sequence(rng, 100, 30), configs, 1.27e-4);
  EXPECT_DOUBLE_EQ(m.corrected_alpha, 3.175e-5);
  EXPECT_NEAR(m.corrected_alpha, p_value(4.0), 1e-7);
  EXPECT_THROW(multi_key_score(random_sequence(rng, 100, 3), std::vector<WatermarkConfig>{}, 0.01),
               ConfigError);
}

TEST(MultiKey, NullFalsePositiveRateWithinAlpha) {
  const std::size_t vocab = 64, t = 25, keys = 8, trials = 100000;
  const double alpha = 0.01;
  std::vector<std::shared_ptr<const ColoringRule>> rules;
  for (std::size_t k = 0; k < keys; ++k) {
    rules.push_back(std::make_shared<CachedPartitionRule>(
        std::make_shared<LeftHashRule>(lefthash(0.5, 2.0, vocab, 1, 500 + k))));
  }
  SeededRng rng(7);
  std::size_t rejected = 0;
  for (std::size_t i = 0; i < trials; ++i) {
    rejected += multi_key_score(random_sequence(rng, vocab, t), rules, alpha).rejected;
  }
  const double fpr = rejected / static_cast<double>(trials);
  EXPECT_LE(fpr, alpha + 3 * testing::binomial_sd(alpha, trials));
}

TEST(NullFpr, Modes) {
  EXPECT_NEAR(null_false_positive_rate(12, 0.5, FprMode::kHardPerfect), 1.0 / 4096, 1e-18);
  EXPECT_NEAR(null_false_positive_rate(12, 0.5, FprMode::kHardPerfect), 2.44e-4, 1e-6);
  EXPECT_DOUBLE_EQ(null_false_positive_rate(1, 0.25, FprMode::kHardPerfect), 0.25);
  EXPECT_EQ(null_false_positive_rate(200, 0.5, FprMode::kZTest), p_value(4.0));
  EXPECT_THROW(null_false_positive_rate(0, 0.5, FprMode::kZTest), ConfigError);
}

TEST(NullFpr, ExactBinomialMatchesEnumeration) {
  EXPECT_NEAR(exact_null_false_positive_rate(30, 0.5) / 2.9738061130046844e-5, 1.0, 1e-12);
  EXPECT_NEAR(exact_null_false_positive_rate(30, 0.25) / 2.1569382609508154e-4, 1.0, 1e-12);
  // Brute force over all 2^20 colorings at gamma = 1/2.
  const std::size_t t = 20;
  std::size_t hits = 0;
  for (std::uint32_t mask = 0; mask < (1u << t); ++mask) {
    hits += z_score(static_cast<std::size_t>(__builtin_popcount(mask)), t, 0.5) > 4.0;
  }
  EXPECT_NEAR(exact_null_false_positive_rate(t, 0.5), hits / double(1u << t), 1e-15);
}

TEST(RunLength, Encoding) {
  const std::vector<Color> c{Color::kUnscorable, Color::kGreen, Color::kGreen, Color::kRed,
                             Color::kSkipped, Color::kSkipped, Color::kGreen};
  EXPECT_EQ(run_length_colors(c), "U1G2R1S2G1");
  EXPECT_EQ(run_length_colors({}), "");
}

}  // namespace
}  // namespace greenlist
