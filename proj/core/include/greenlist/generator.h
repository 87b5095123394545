// Copyright 2026 The Greenlist Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef GREENLIST_GENERATOR_H_
#define GREENLIST_GENERATOR_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <variant>

#include "greenlist/coloring.h"
#include "greenlist/lm_source.h"
#include "greenlist/types.h"
#include "greenlist/vocab_prf.h"

namespace greenlist {

struct Multinomial {
  std::uint64_t seed = 0;
};
struct Greedy {};
struct Beam {
  std::size_t width = 4;
  bool suppress_eos = true;
  // Score beams with raw LM log-probabilities instead of watermarked ones.
  bool raw_scores = false;
};
using Strategy = std::variant<Multinomial, Greedy, Beam>;

struct DecodeSpec {
  Strategy strategy = Multinomial{};
  std::size_t max_tokens = 200;
  std::optional<TokenId> eos_id;
  double temperature = 1.0;
  // Default order divides raw logits by the temperature, then adds delta.
  bool temperature_after_boost = false;

  void validate() const;
};

// What the generator saw at one decoding step; handed to an optional
// observer. raw_probs is softmax(logits / temperature) before warping.
struct StepTrace {
  std::size_t position = 0;
  std::span<const double> raw_probs;
  const GreenMask* mask = nullptr;  // null when not watermarking
  TokenId token = 0;
};
using StepObserver = std::function<void(const StepTrace&)>;

// Watermarked decoding with the soft rule (hard rule when config.delta is
// +inf). config must use a LeftHash scheme; see generate_self_hash for the
// SelfHash rule.
TokenSequence generate(const LmSource& lm, std::span<const TokenId> prompt,
                       const WatermarkConfig& config, const DecodeSpec& spec,
                       const StepObserver& observer = {});

// Same loop over an arbitrary partition rule; rule == nullptr decodes
// without a watermark.
TokenSequence generate(const LmSource& lm, std::span<const TokenId> prompt,
                       const PartitionRule* rule, double delta, const DecodeSpec& spec,
                       const StepObserver& observer = {});

TokenSequence generate_unwatermarked(const LmSource& lm, std::span<const TokenId> prompt,
                                     const DecodeSpec& spec, const StepObserver& observer = {});

// Greedy decoding under the self-hash rule: candidates are tried in
// descending logit order (ties to the smaller id) and the first green one
// is kept; once the next candidate's logit drops below top - delta the top
// (red) token is emitted instead.
TokenSequence generate_self_hash(const LmSource& lm, std::span<const TokenId> prompt,
                                 const SelfHashRule& rule, double delta, std::size_t max_tokens,
                                 std::optional<TokenId> eos_id = std::nullopt);
TokenSequence generate_self_hash(const LmSource& lm, std::span<const TokenId> prompt,
                                 const WatermarkConfig& config, const DecodeSpec& spec);

struct BeamOptions {
  std::size_t width = 4;
  std::size_t length = 200;
  bool suppress_eos = true;
  std::optional<TokenId> eos_id;
  bool raw_scores = false;
  double temperature = 1.0;
  bool temperature_after_boost = false;
};

// Beam search scored by cumulative log watermarked probability. Returns the
// best beam truncated to options.length tokens. width 1 reduces to greedy.
TokenSequence beam_generate(const LmSource& lm, std::span<const TokenId> prompt,
                            const PartitionRule* rule, double delta, const BeamOptions& options);

}  // namespace greenlist

#endif  // GREENLIST_GENERATOR_H_
