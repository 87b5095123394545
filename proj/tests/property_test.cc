// Copyright 2026 The Greenlist Authors
// SPDX-License-Identifier: Apache-2.0

// Randomized invariants driven by small hand-rolled generators. Each case
// reports its seed so a failure can be replayed.

#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "greenlist/analysis.h"
#include "greenlist/attacks.h"
#include "greenlist/coloring.h"
#include "greenlist/detector.h"
#include "greenlist/generator.h"
#include "greenlist/normalize.h"
#include "greenlist/stats.h"
#include "greenlist/synthetic_source.h"
#include "greenlist/warp.h"
#include "test_support.h"

namespace greenlist {
namespace {

constexpr int kCases = 300;

// Code points biased toward the interesting classes: ASCII, whitespace,
// zero-width, mapped lookalikes and arbitrary BMP/astral characters.
std::string random_unicode(SeededRng& rng, const CanonicalizationPolicy& policy) {
  static const char32_t kSpecial[] = {U' ',    U'\n',   U'\t',   U'\r',   0x200B, 0x200C,
                                      0x200D, 0x2060,  0xFEFF,  0x00A0, 0x3000, 0x2028};
  std::vector<char32_t> mapped;
  for (auto [from, to] : policy.homoglyphs) mapped.push_back(from);
  std::u32string s;
  const std::size_t n = rng.below(40);
  for (std::size_t i = 0; i < n; ++i) {
    switch (rng.below(5)) {
      case 0: s += static_cast<char32_t>(0x20 + rng.below(95)); break;
      case 1: s += kSpecial[rng.below(std::size(kSpecial))]; break;
      case 2: s += mapped[rng.below(mapped.size())]; break;
      case 3: {
        char32_t c;
        do {
          c = static_cast<char32_t>(0x80 + rng.below(0xFFFF - 0x80));
        } while (c >= 0xD800 && c <= 0xDFFF);
        s += c;
        break;
      }
      default: s += static_cast<char32_t>(0x10000 + rng.below(0x100000 - 0x10000)); break;
    }
  }
  return encode_utf8(s);
}

TEST(Property, CanonicalizeIsIdempotent) {
  for (bool fold : {true, false}) {
    CanonicalizationPolicy p = CanonicalizationPolicy::default_policy();
    p.fold_newlines = fold;
    SeededRng rng(fold ? 1 : 2);
    for (int i = 0; i < 5 * kCases; ++i) {
      const std::string s = random_unicode(rng, p);
      const std::string once = canonicalize(s, p);
      EXPECT_EQ(canonicalize(once, p), once) << "case " << i;
      for (char32_t c : decode_utf8(once)) {
        EXPECT_FALSE(is_zero_width(c));
        EXPECT_EQ(p.homoglyphs.count(c) == 0 || p.homoglyphs.at(c) == c, true);
      }
    }
  }
}

TEST(Property, SoftWarpIsNormalized) {
  SeededRng rng(3);
  for (int i = 0; i < kCases; ++i) {
    const std::size_t n = 2 + rng.below(300);
    std::vector<double> l(n);
    const double scale = std::pow(10.0, 3.0 * rng.uniform01());
    for (auto& x : l) x = scale * (2.0 * rng.uniform01() - 1.0);
    const double gamma = 0.05 + 0.9 * rng.uniform01();
    if (green_list_size(gamma, n) == 0) continue;
    const GreenMask m = partition_vocab(rng.next_u64(), gamma, n);
    const auto p = soft_warp(l, m, 20.0 * rng.uniform01());
    EXPECT_NEAR(std::accumulate(p.begin(), p.end(), 0.0), 1.0, 1e-9) << i;
    for (double x : p) EXPECT_GE(x, 0.0);
  }
}

TEST(Property, PartitionHasExactGreenCount) {
  SeededRng rng(4);
  for (int i = 0; i < kCases; ++i) {
    const std::size_t n = 2 + rng.below(5000);
    const double gamma = 0.01 + 0.98 * rng.uniform01();
    const GreenMask m = partition_vocab(rng.next_u64(), gamma, n);
    EXPECT_EQ(m.green_count(), green_list_size(gamma, n));
    EXPECT_EQ(m.size(), n);
  }
}

TEST(Property, ReportMatchesClosedForm) {
  SeededRng rng(5);
  for (int i = 0; i < kCases; ++i) {
    const std::size_t vocab = 10 + rng.below(500);
    const double gamma = rng.below(2) ? 0.5 : 0.25;
    const auto cfg = testing::lefthash(gamma, 2.0, vocab, 1 + rng.below(4), rng.next_u64());
    TokenSequence s;
    s.vocab_size = vocab;
    s.prompt.push_back(rng.below(vocab));
    for (std::size_t k = 0, t = 1 + rng.below(120); k < t; ++k) s.generated.push_back(rng.below(vocab));
    DetectorOptions opts;
    opts.skip_repeated_ngrams = rng.below(2) == 1;
    const auto r = score(s, cfg, opts);
    std::size_t green = 0, counted = 0;
    for (Color c : r.colors) {
      green += c == Color::kGreen;
      counted += c == Color::kGreen || c == Color::kRed;
    }
    EXPECT_EQ(green, r.green_count);
    EXPECT_EQ(counted, r.t_counted);
    const double tt = static_cast<double>(counted);
    EXPECT_NEAR(r.z, (green - gamma * tt) / std::sqrt(tt * gamma * (1 - gamma)), 1e-12);
    EXPECT_EQ(r.p_one_sided, normal_upper_tail(r.z));
  }
}

TEST(Property, GeneratorAndDetectorAgreeOnRandomConfigs) {
  SeededRng rng(6);
  for (int i = 0; i < 60; ++i) {
    const std::size_t vocab = 16 + rng.below(200);
    const double gamma = rng.below(2) ? 0.5 : 0.25;
    const std::size_t h = 1 + rng.below(3);
    const auto cfg = testing::lefthash(gamma, 0.5 + 4.0 * rng.uniform01(), vocab, h, rng.next_u64());
    const SyntheticSource lm({0.7, 1.0, vocab, rng.next_u64(), 64});
    const LeftHashRule rule(cfg);
    DecodeSpec spec;
    spec.max_tokens = 30;
    switch (rng.below(3)) {
      case 0: spec.strategy = Multinomial{rng.next_u64()}; break;
      case 1: spec.strategy = Greedy{}; break;
      default: spec.strategy = Beam{2 + rng.below(4), true, false}; break;
    }
    std::vector<TokenId> prompt{static_cast<TokenId>(rng.below(vocab))};
    const auto seq = generate(lm, prompt, cfg, spec);
    const auto r = score(seq, cfg);
    const auto full = seq.full();
    for (std::size_t k = 0; k < seq.generated.size(); ++k) {
      const std::size_t pos = seq.prompt.size() + k;
      const auto w = seeding_window(std::span<const TokenId>(full).first(pos), h);
      EXPECT_EQ(r.colors[k] == Color::kGreen, rule.mask(w).is_green(full[pos])) << i;
    }
  }
}

TEST(Property, SpikeEntropyWithinRange) {
  SeededRng rng(7);
  for (int i = 0; i < kCases; ++i) {
    const std::size_t n = 1 + rng.below(100);
    std::vector<double> p(n);
    for (auto& x : p) x = rng.below(4) == 0 ? 0.0 : rng.uniform01();
    double sum = std::accumulate(p.begin(), p.end(), 0.0);
    if (sum == 0.0) {
      p[0] = 1.0;
      sum = 1.0;
    }
    for (auto& x : p) x /= sum;
    const double z = 10.0 * rng.uniform01();
    const double s = spike_entropy(p, z);
    EXPECT_GE(s, 1.0 / (1.0 + z) - 1e-12);
    EXPECT_LE(s, n / (n + z) + 1e-12);
  }
}

TEST(Property, EditLogsReplay) {
  SeededRng rng(8);
  for (int i = 0; i < kCases; ++i) {
    const std::size_t vocab = 50;
    TokenSequence s;
    s.vocab_size = vocab;
    s.prompt = {1};
    for (std::size_t k = 0, t = 4 + rng.below(60); k < t; ++k) s.generated.push_back(rng.below(vocab));
    AttackBudget b;
    b.epsilon = 0.5 * rng.uniform01();
    const auto ins = insert_attack(s, b, UniformSource(vocab), rng.next_u64());
    EXPECT_EQ(replay_edits(s.generated, ins.edits), ins.attacked.generated);
    const auto del = delete_attack(s, b, 1, rng.next_u64());
    EXPECT_EQ(replay_edits(s.generated, del.edits), del.attacked.generated);
    EXPECT_EQ(del.attacked.generated.size(), s.generated.size() - b.edits(s.generated.size()));
  }
}

}  // namespace
}  // namespace greenlist
