// Copyright 2026 The Greenlist Authors
// SPDX-License-Identifier: Apache-2.0

#include "greenlist/generator.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "greenlist/errors.h"
#include "greenlist/rng.h"
#include "greenlist/warp.h"

namespace greenlist {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

void check_prompt(const LmSource& lm, std::span<const TokenId> prompt) {
  if (prompt.empty()) throw DataError("prompt must contain at least one token");
  for (TokenId t : prompt) {
    if (t >= lm.vocab_size()) throw DataError("prompt token id outside the vocabulary");
  }
}

LogitVector checked_logits(const LmSource& lm, std::span<const TokenId> context) {
  LogitVector logits = lm.next_logits(context);
  if (logits.size() != lm.vocab_size()) {
    throw SourceError("LM source returned " + std::to_string(logits.size()) +
                      " logits for a vocabulary of " + std::to_string(lm.vocab_size()));
  }
  return logits;
}

// Scaled logits plus the delta to apply to them, honoring the configured
// temperature/boost order.
struct Prepared {
  LogitVector logits;
  double delta;
};

Prepared prepare(LogitVector logits, double delta, double temperature, bool after_boost) {
  Prepared out{apply_temperature(logits, temperature), delta};
  if (after_boost && std::isfinite(delta)) out.delta = delta / temperature;
  return out;
}

TokenId argmax(std::span<const double> values) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (values[i] > values[best]) best = i;
  }
  return static_cast<TokenId>(best);
}

TokenId sample(std::span<const double> probs, SeededRng& rng) {
  const double u = rng.uniform01();
  double cum = 0.0;
  std::size_t last_positive = 0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    if (probs[i] <= 0.0) continue;
    cum += probs[i];
    last_positive = i;
    if (u < cum) return static_cast<TokenId>(i);
  }
  return static_cast<TokenId>(last_positive);
}

}  // namespace

void DecodeSpec::validate() const {
  if (max_tokens < 1) throw ConfigError("max_tokens must be >= 1");
  if (!(temperature > 0.0) || std::isinf(temperature)) {
    throw ConfigError("temperature must be finite and > 0");
  }
  if (const auto* beam = std::get_if<Beam>(&strategy); beam && beam->width < 2) {
    throw ConfigError("beam width must be >= 2");
  }
}

TokenSequence generate(const LmSource& lm, std::span<const TokenId> prompt,
                       const WatermarkConfig& config, const DecodeSpec& spec,
                       const StepObserver& observer) {
  if (config.vocab_size != lm.vocab_size()) {
    throw ConfigError("config vocab_size does not match the LM source");
  }
  const LeftHashRule rule(config);
  return generate(lm, prompt, &rule, config.delta, spec, observer);
}

TokenSequence generate(const LmSource& lm, std::span<const TokenId> prompt,
                       const PartitionRule* rule, double delta, const DecodeSpec& spec,
                       const StepObserver& observer) {
  spec.validate();
  check_prompt(lm, prompt);
  if (rule != nullptr && rule->vocab_size() != lm.vocab_size()) {
    throw ConfigError("rule vocab_size does not match the LM source");
  }
  if (const auto* beam = std::get_if<Beam>(&spec.strategy)) {
    BeamOptions opts;
    opts.width = beam->width;
    opts.length = spec.max_tokens;
    opts.suppress_eos = beam->suppress_eos;
    opts.eos_id = spec.eos_id;
    opts.raw_scores = beam->raw_scores;
    opts.temperature = spec.temperature;
    opts.temperature_after_boost = spec.temperature_after_boost;
    return beam_generate(lm, prompt, rule, delta, opts);
  }

  const auto* multinomial = std::get_if<Multinomial>(&spec.strategy);
  SeededRng rng(multinomial ? multinomial->seed : 0);

  TokenSequence seq;
  seq.prompt.assign(prompt.begin(), prompt.end());
  seq.vocab_size = lm.vocab_size();
  std::vector<TokenId> context(prompt.begin(), prompt.end());
  for (std::size_t step = 0; step < spec.max_tokens; ++step) {
    Prepared prep = prepare(checked_logits(lm, context), delta, spec.temperature,
                            spec.temperature_after_boost);
    ProbVector raw;
    if (observer) raw = softmax(prep.logits);
    ProbVector probs;
    GreenMask mask;
    if (rule != nullptr) {
      mask = rule->mask(seeding_window(context, rule->window()));
      probs = soft_warp(prep.logits, mask, prep.delta);
    } else {
      probs = observer ? raw : softmax(prep.logits);
    }
    const TokenId token = multinomial ? sample(probs, rng) : argmax(probs);
    if (observer) observer(StepTrace{step, raw, rule ? &mask : nullptr, token});
    seq.generated.push_back(token);
    context.push_back(token);
    if (spec.eos_id && token == *spec.eos_id) break;
  }
  return seq;
}

TokenSequence generate_unwatermarked(const LmSource& lm, std::span<const TokenId> prompt,
                                     const DecodeSpec& spec, const StepObserver& observer) {
  return generate(lm, prompt, static_cast<const PartitionRule*>(nullptr), 0.0, spec, observer);
}

TokenSequence generate_self_hash(const LmSource& lm, std::span<const TokenId> prompt,
                                 const SelfHashRule& rule, double delta, std::size_t max_tokens,
                                 std::optional<TokenId> eos_id) {
  check_prompt(lm, prompt);
  if (std::isnan(delta) || delta < 0.0) throw ConfigError("delta must be >= 0");
  if (rule.vocab_size() != lm.vocab_size()) {
    throw ConfigError("rule vocab_size does not match the LM source");
  }
  TokenSequence seq;
  seq.prompt.assign(prompt.begin(), prompt.end());
  seq.vocab_size = lm.vocab_size();
  std::vector<TokenId> context(prompt.begin(), prompt.end());
  std::vector<TokenId> order(lm.vocab_size());
  for (std::size_t step = 0; step < max_tokens; ++step) {
    const LogitVector logits = checked_logits(lm, context);
    const std::vector<TokenId> window = seeding_window(context, rule.window());
    std::iota(order.begin(), order.end(), TokenId{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](TokenId a, TokenId b) { return logits[a] > logits[b]; });
    const double top = logits[order[0]];
    TokenId chosen = order[0];
    for (std::size_t k = 0; k < order.size(); ++k) {
      if (rule.is_green(window, order[k])) {
        chosen = order[k];
        break;
      }
      if (k + 1 == order.size() || logits[order[k + 1]] < top - delta ||
          logits[order[k + 1]] == kNegInf) {
        chosen = order[0];
        break;
      }
    }
    seq.generated.push_back(chosen);
    context.push_back(chosen);
    if (eos_id && chosen == *eos_id) break;
  }
  return seq;
}

TokenSequence generate_self_hash(const LmSource& lm, std::span<const TokenId> prompt,
                                 const WatermarkConfig& config, const DecodeSpec& spec) {
  spec.validate();
  if (!std::holds_alternative<Greedy>(spec.strategy)) {
    throw ConfigError("the self-hash generator supports greedy decoding only");
  }
  const SelfHashRule rule(config.scheme, config.gamma, config.vocab_size);
  return generate_self_hash(lm, prompt, rule, config.delta, spec.max_tokens, spec.eos_id);
}

TokenSequence beam_generate(const LmSource& lm, std::span<const TokenId> prompt,
                            const PartitionRule* rule, double delta, const BeamOptions& options) {
  check_prompt(lm, prompt);
  if (options.width < 1) throw ConfigError("beam width must be >= 1");
  if (options.length < 1) throw ConfigError("beam length must be >= 1");
  const std::size_t vocab = lm.vocab_size();
  if (options.eos_id && *options.eos_id >= vocab) throw ConfigError("eos id outside vocabulary");

  struct Hyp {
    std::vector<TokenId> tokens;
    double score = 0.0;
  };
  struct Cand {
    double score;
    std::size_t beam;
    TokenId token;
  };

  std::vector<Hyp> beams{Hyp{}};
  std::vector<Hyp> finished;
  for (std::size_t step = 0; step < options.length && !beams.empty(); ++step) {
    std::vector<Cand> cands;
    for (std::size_t b = 0; b < beams.size(); ++b) {
      std::vector<TokenId> context(prompt.begin(), prompt.end());
      context.insert(context.end(), beams[b].tokens.begin(), beams[b].tokens.end());
      Prepared prep = prepare(checked_logits(lm, context), delta, options.temperature,
                              options.temperature_after_boost);
      if (options.suppress_eos && options.eos_id) prep.logits[*options.eos_id] = kNegInf;
      ProbVector probs;
      if (rule != nullptr && !options.raw_scores) {
        probs = soft_warp(prep.logits, rule->mask(seeding_window(context, rule->window())),
                          prep.delta);
      } else {
        probs = softmax(prep.logits);
      }
      std::vector<TokenId> idx(vocab);
      std::iota(idx.begin(), idx.end(), TokenId{0});
      const std::size_t keep = std::min(options.width, vocab);
      std::partial_sort(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(keep), idx.end(),
                        [&](TokenId a, TokenId c) {
                          return probs[a] != probs[c] ? probs[a] > probs[c] : a < c;
                        });
      for (std::size_t i = 0; i < keep; ++i) {
        if (probs[idx[i]] <= 0.0) break;
        cands.push_back(Cand{beams[b].score + std::log(probs[idx[i]]), b, idx[i]});
      }
    }
    std::stable_sort(cands.begin(), cands.end(),
                     [](const Cand& a, const Cand& c) { return a.score > c.score; });
    std::vector<Hyp> next;
    for (const Cand& c : cands) {
      if (next.size() == options.width) break;
      Hyp h{beams[c.beam].tokens, c.score};
      h.tokens.push_back(c.token);
      if (!options.suppress_eos && options.eos_id && c.token == *options.eos_id) {
        finished.push_back(std::move(h));
      } else {
        next.push_back(std::move(h));
      }
    }
    beams = std::move(next);
  }
  finished.insert(finished.end(), beams.begin(), beams.end());
  if (finished.empty()) throw SourceError("beam search produced no hypothesis");
  const auto best = std::max_element(finished.begin(), finished.end(),
                                     [](const Hyp& a, const Hyp& c) { return a.score < c.score; });
  TokenSequence seq;
  seq.prompt.assign(prompt.begin(), prompt.end());
  seq.vocab_size = vocab;
  seq.generated = best->tokens;
  if (seq.generated.size() > options.length) seq.generated.resize(options.length);
  return seq;
}

}  // namespace greenlist
