// Copyright 2026 The Greenlist Authors
// SPDX-License-Identifier: Apache-2.0

#include "greenlist/generator.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <limits>

#include "greenlist/analysis.h"
#include "greenlist/coloring.h"
#include "greenlist/detector.h"
#include "greenlist/errors.h"
#include "greenlist/synthetic_source.h"
#include "test_support.h"

namespace greenlist {
namespace {

using testing::lefthash;
using testing::toy_model;

constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<TokenId> prompt_of(std::size_t i) {
  return toy_prompts(toy_model().vocab, 99, i + 1, 4).back();
}

DecodeSpec multinomial(std::uint64_t seed, std::size_t t = 60) {
  DecodeSpec s;
  s.strategy = Multinomial{seed};
  s.max_tokens = t;
  return s;
}

class WrongLength final : public LmSource {
 public:
  std::size_t vocab_size() const override { return 10; }
  LogitVector next_logits(std::span<const TokenId>) const override { return LogitVector(9, 0.0); }
};

// Two logit spikes at tokens 3 and 7 separated by `gap`; everything else is
// far below both.
class TwoSpike final : public LmSource {
 public:
  explicit TwoSpike(double gap) : gap_(gap) {}
  std::size_t vocab_size() const override { return 16; }
  LogitVector next_logits(std::span<const TokenId>) const override {
    LogitVector l(16, -50.0);
    l[3] = 5.0;
    l[7] = 5.0 - gap_;
    return l;
  }

 private:
  double gap_;
};

// One finite logit per step, chosen by the last context token.
class Forced final : public LmSource {
 public:
  std::size_t vocab_size() const override { return 12; }
  LogitVector next_logits(std::span<const TokenId> ctx) const override {
    LogitVector l(12, -std::numeric_limits<double>::infinity());
    l[(ctx.back() * 5 + 1) % 12] = 0.0;
    return l;
  }
};

TEST(Generate, ZeroDeltaMatchesUnwatermarked) {
  const auto& m = toy_model();
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto prompt = prompt_of(seed);
    const auto cfg = lefthash(0.5, 0.0, m.lm.vocab_size());
    EXPECT_EQ(generate(m.lm, prompt, cfg, multinomial(seed)),
              generate_unwatermarked(m.lm, prompt, multinomial(seed)));
  }
}

TEST(Generate, HardModeIsAllGreen) {
  const auto& m = toy_model();
  const auto cfg = lefthash(0.5, kInf, m.lm.vocab_size());
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto seq = generate(m.lm, prompt_of(seed), cfg, multinomial(seed, 100));
    const auto r = score(seq, cfg);
    EXPECT_EQ(r.green_count, r.t_counted);
    EXPECT_NEAR(r.z, std::sqrt(static_cast<double>(r.t_counted)), 1e-9);
  }
}

TEST(Generate, DetectorReproducesGenerationColors) {
  const auto& m = toy_model();
  const auto cfg = lefthash(0.25, 2.0, m.lm.vocab_size(), 2, 17);
  const LeftHashRule rule(cfg);
  std::vector<DecodeSpec> specs{multinomial(5)};
  DecodeSpec greedy;
  greedy.strategy = Greedy{};
  greedy.max_tokens = 60;
  specs.push_back(greedy);
  for (const auto& spec : specs) {
    std::vector<bool> during;
    const auto seq = generate(m.lm, prompt_of(3), &rule, cfg.delta, spec,
                              [&](const StepTrace& s) { during.push_back(s.mask->is_green(s.token)); });
    const auto r = score(seq, cfg);
    ASSERT_EQ(r.colors.size(), during.size());
    for (std::size_t i = 0; i < during.size(); ++i) {
      EXPECT_EQ(r.colors[i] == Color::kGreen, during[i]) << i;
    }
  }
}

TEST(Generate, BeamColorsMatchRecomputedMasks) {
  const auto& m = toy_model();
  const auto cfg = lefthash(0.25, 2.0, m.lm.vocab_size());
  const LeftHashRule rule(cfg);
  BeamOptions opts;
  opts.width = 4;
  opts.length = 40;
  opts.eos_id = Vocabulary::kEos;
  const auto seq = beam_generate(m.lm, prompt_of(1), &rule, cfg.delta, opts);
  const auto full = seq.full();
  const auto r = score(seq, cfg);
  for (std::size_t i = 0; i < seq.generated.size(); ++i) {
    const std::size_t pos = seq.prompt.size() + i;
    const auto ctx = seeding_window(std::span(full).first(pos), 1);
    EXPECT_EQ(r.colors[i] == Color::kGreen, rule.mask(ctx).is_green(full[pos]));
  }
}

TEST(Generate, Reproducible) {
  const auto& m = toy_model();
  const auto cfg = lefthash(0.5, 2.0, m.lm.vocab_size(), 1, 4);
  EXPECT_EQ(generate(m.lm, prompt_of(0), cfg, multinomial(8)),
            generate(m.lm, prompt_of(0), cfg, multinomial(8)));
  EXPECT_NE(generate(m.lm, prompt_of(0), cfg, multinomial(8)).generated,
            generate(m.lm, prompt_of(0), cfg, multinomial(9)).generated);
}

TEST(Generate, WrongLengthLogitsAreSourceErrors) {
  WrongLength lm;
  const std::vector<TokenId> prompt{1};
  EXPECT_THROW(generate_unwatermarked(lm, prompt, multinomial(0)), SourceError);
}

TEST(Generate, SpecValidation) {
  DecodeSpec s;
  s.max_tokens = 0;
  EXPECT_THROW(s.validate(), ConfigError);
  s.max_tokens = 5;
  s.strategy = Beam{1};
  EXPECT_THROW(s.validate(), ConfigError);
  s.strategy = Greedy{};
  s.temperature = 0.0;
  EXPECT_THROW(s.validate(), ConfigError);
}

TEST(Generate, ShortPromptIsPaddedWithBos) {
  const auto& m = toy_model();
  const auto cfg = lefthash(0.5, 2.0, m.lm.vocab_size(), 3);
  const std::vector<TokenId> prompt{prompt_of(0)[0]};
  const auto seq = generate(m.lm, prompt, cfg, multinomial(1, 10));
  EXPECT_EQ(seq.generated.size(), 10u);
  const LeftHashRule rule(cfg);
  const std::vector<TokenId> padded{kBosId, kBosId, prompt[0]};
  EXPECT_EQ(score(seq, cfg).colors[0] == Color::kGreen,
            rule.mask(padded).is_green(seq.generated[0]));
}

TEST(BeamGenerate, WidthOneIsGreedy) {
  const auto& m = toy_model();
  const auto cfg = lefthash(0.5, 2.0, m.lm.vocab_size());
  const LeftHashRule rule(cfg);
  BeamOptions opts;
  opts.width = 1;
  opts.length = 50;
  opts.suppress_eos = false;
  DecodeSpec greedy;
  greedy.strategy = Greedy{};
  greedy.max_tokens = 50;
  for (std::size_t i = 0; i < 5; ++i) {
    EXPECT_EQ(beam_generate(m.lm, prompt_of(i), &rule, cfg.delta, opts).generated,
              generate(m.lm, prompt_of(i), &rule, cfg.delta, greedy).generated);
  }
}

TEST(BeamGenerate, SingleContinuationCollapsesToGreedy) {
  Forced lm;
  const std::vector<TokenId> prompt{4};
  BeamOptions opts;
  opts.width = 6;
  opts.length = 30;
  DecodeSpec greedy;
  greedy.strategy = Greedy{};
  greedy.max_tokens = 30;
  EXPECT_EQ(beam_generate(lm, prompt, nullptr, 0.0, opts).generated,
            generate_unwatermarked(lm, prompt, greedy).generated);
}

TEST(BeamGenerate, SuppressedEosNeverAppearsAndLengthIsExact) {
  const auto& m = toy_model();
  const auto cfg = lefthash(0.25, 2.0, m.lm.vocab_size());
  const LeftHashRule rule(cfg);
  BeamOptions opts;
  opts.width = 8;
  opts.length = 120;
  opts.eos_id = Vocabulary::kEos;
  for (std::size_t i = 0; i < 4; ++i) {
    const auto seq = beam_generate(m.lm, prompt_of(i), &rule, cfg.delta, opts);
    EXPECT_EQ(seq.generated.size(), 120u);
    EXPECT_EQ(std::count(seq.generated.begin(), seq.generated.end(), Vocabulary::kEos), 0);
  }
}

TEST(SelfHash, WideScanEmitsGreen) {
  SeededRng rng(21);
  const SyntheticSource lm({0.9, 1.0, 64, 3});
  for (int trial = 0; trial < 20; ++trial) {
    const auto scheme =
        SeedingScheme::make_private(HashKind::kSelfHash, 3, testing::random_key(rng));
    const SelfHashRule rule(scheme, 0.25, 64);
    const std::vector<TokenId> prompt{static_cast<TokenId>(rng.below(64)), 5, 9};
    const auto seq = generate_self_hash(lm, prompt, rule, 1e6, 30);
    const auto r = score(seq, rule);
    EXPECT_EQ(r.green_count, r.t_counted);
  }
}

TEST(SelfHash, ZeroDeltaIsArgmax) {
  SeededRng rng(22);
  const SyntheticSource lm({0.9, 1.0, 64, 4});
  const auto scheme = SeedingScheme::make_private(HashKind::kSelfHash, 2, testing::random_key(rng));
  const SelfHashRule rule(scheme, 0.5, 64);
  const std::vector<TokenId> prompt{1, 2};
  const auto seq = generate_self_hash(lm, prompt, rule, 0.0, 40);
  std::vector<TokenId> ctx = prompt;
  for (TokenId t : seq.generated) {
    const auto l = lm.next_logits(ctx);
    EXPECT_EQ(t, std::max_element(l.begin(), l.end()) - l.begin());
    ctx.push_back(t);
  }
}

TEST(SelfHash, TwoSpikeGapDecidesWhetherTheRunnerUpCanWin) {
  SeededRng rng(23);
  const double gamma = 0.5;
  const int n = 4000;
  for (double gap : {1.0, 3.0}) {
    const TwoSpike lm(gap);
    int argmax_red = 0, runner_up = 0;
    for (int i = 0; i < n; ++i) {
      const auto scheme =
          SeedingScheme::make_private(HashKind::kSelfHash, 1, testing::random_key(rng));
      const SelfHashRule rule(scheme, gamma, 16);
      const std::vector<TokenId> prompt{static_cast<TokenId>(rng.below(16))};
      const TokenId t = generate_self_hash(lm, prompt, rule, 2.0, 1).generated[0];
      const bool top_red = !rule.is_green(prompt, 3);
      const bool second_green = rule.is_green(prompt, 7);
      argmax_red += top_red;
      runner_up += t == 7;
      if (gap > 2.0) {
        EXPECT_EQ(t, 3u);
      } else {
        EXPECT_EQ(t, top_red && second_green ? 7u : 3u);
      }
    }
    EXPECT_NEAR(argmax_red / double(n), 1.0 - gamma, 4 * testing::binomial_sd(0.5, n));
    if (gap < 2.0) {
      EXPECT_NEAR(runner_up / double(n), (1.0 - gamma) * gamma,
                  4 * testing::binomial_sd(0.25, n));
    }
  }
}

TEST(SelfHash, GreenRateExceedsGammaOnHighEntropySource) {
  SeededRng rng(24);
  const SyntheticSource lm({0.9, 1.0, 256, 5});
  std::size_t green = 0, total = 0;
  for (int trial = 0; trial < 30; ++trial) {
    const auto scheme =
        SeedingScheme::make_private(HashKind::kSelfHash, 4, testing::random_key(rng));
    const SelfHashRule rule(scheme, 0.25, 256);
    const std::vector<TokenId> prompt{static_cast<TokenId>(rng.below(256)), 3, 4, 5};
    const auto r = score(generate_self_hash(lm, prompt, rule, 2.0, 50), rule);
    green += r.green_count;
    total += r.t_counted;
  }
  EXPECT_GT(green / static_cast<double>(total), 0.25 + 4 * testing::binomial_sd(0.25, total));
}

TEST(SelfHash, ConfigEntryPointRequiresGreedy) {
  const auto& m = toy_model();
  WatermarkConfig cfg;
  cfg.gamma = 0.5;
  cfg.delta = 2.0;
  cfg.vocab_size = m.lm.vocab_size();
  cfg.scheme = SeedingScheme::make_private(HashKind::kSelfHash, 2,
                                           WatermarkKey(std::vector<std::uint8_t>(16, 3)));
  EXPECT_THROW(generate_self_hash(m.lm, prompt_of(0), cfg, multinomial(1)), ConfigError);
}

// Mean green fraction over many watermarked runs sits above the expected
// green lower bound evaluated at the observed mean spike entropy.
TEST(Generate, GreenFractionBeatsLowerBoundOnToyModel) {
  const auto& m = toy_model();
  const double gamma = 0.5, delta = 2.0;
  const std::size_t t = 200;
  const auto cfg = lefthash(gamma, delta, m.lm.vocab_size());
  const LeftHashRule rule(cfg);
  const double modulus = spike_modulus(gamma, delta);
  const auto prompts = toy_prompts(m.vocab, 5, 200, 4);
  double spike_sum = 0.0, green_sum = 0.0;
  std::size_t steps = 0;
  for (std::size_t i = 0; i < prompts.size(); ++i) {
    DecodeSpec spec = multinomial(1000 + i, t);
    spec.strategy = Multinomial{1000 + i};
    std::size_t green = 0;
    generate(m.lm, prompts[i], &rule, delta, spec, [&](const StepTrace& s) {
      spike_sum += spike_entropy(s.raw_probs, modulus);
      green += s.mask->is_green(s.token);
      ++steps;
    });
    green_sum += static_cast<double>(green) / t;
  }
  const double s_star = spike_sum / static_cast<double>(steps);
  const double bound = expected_green_lower_bound(s_star, gamma, delta, t) / t;
  EXPECT_GT(green_sum / prompts.size(), bound);
}

}  // namespace
}  // namespace greenlist
