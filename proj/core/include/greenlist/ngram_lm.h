// Copyright 2026 The Greenlist Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef GREENLIST_NGRAM_LM_H_
#define GREENLIST_NGRAM_LM_H_

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "greenlist/lm_source.h"
#include "greenlist/types.h"

namespace greenlist {

// Count-based n-gram model with Dirichlet-prior smoothing toward the next
// lower order:
//   P_1(w)     = (c(w) + k) / (N + k |V|)
//   P_m(w | u) = (c(u, w) + k |V| P_{m-1}(w | u')) / (c(u) + k |V|)
// where u' drops the oldest token of u. A context never seen in training
// backs off to the lower order. k = 0 gives maximum-likelihood estimates.
class NGramLM final : public LmSource {
 public:
  // Each training sequence is left-padded with order-1 <bos> ids (id 0) and
  // terminated with eos_id.
  static NGramLM train(std::span<const std::vector<TokenId>> corpus, std::size_t vocab_size,
                       std::size_t order, double smoothing, TokenId eos_id = 1);

  std::size_t vocab_size() const override { return vocab_size_; }
  std::size_t order() const { return order_; }
  double smoothing() const { return smoothing_; }

  // Natural-log probabilities; unseen tokens under k = 0 get -inf.
  LogitVector next_logits(std::span<const TokenId> context) const override;
  ProbVector next_probs(std::span<const TokenId> context) const;
  // log P(token | context) without materializing the full distribution.
  double log_prob(std::span<const TokenId> context, TokenId token) const;

  // Per-token perplexity of held-out sequences, padded as in training.
  double perplexity(std::span<const std::vector<TokenId>> sequences) const;

  std::string to_json() const;
  static NGramLM from_json(std::string_view json);

 private:
  struct Table {
    std::size_t total = 0;
    std::vector<std::pair<TokenId, std::size_t>> counts;  // sorted by token
    std::size_t count_of(TokenId w) const;
  };
  struct KeyHash {
    std::size_t operator()(const std::vector<TokenId>& key) const noexcept;
  };
  using Level = std::unordered_map<std::vector<TokenId>, Table, KeyHash>;

  NGramLM() = default;

  std::size_t vocab_size_ = 0;
  std::size_t order_ = 1;
  double smoothing_ = 0.0;
  TokenId eos_id_ = 1;
  std::vector<Level> levels_;  // levels_[m-1] keyed by (m-1)-token contexts
};

}  // namespace greenlist

#endif  // GREENLIST_NGRAM_LM_H_
