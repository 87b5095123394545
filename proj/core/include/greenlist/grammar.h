// Copyright 2026 The Greenlist Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef GREENLIST_GRAMMAR_H_
#define GREENLIST_GRAMMAR_H_

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "greenlist/ngram_lm.h"
#include "greenlist/types.h"
#include "greenlist/vocabulary.h"

namespace greenlist {

// Random English-like sentences from a small probabilistic grammar with a
// few hundred content words. Deterministic in the seed.
std::vector<std::string> grammar_sentences(std::uint64_t seed, std::size_t count);

// Documents of roughly `tokens_per_doc` whitespace tokens, each a run of
// grammar sentences.
std::vector<std::string> grammar_corpus(std::uint64_t seed, std::size_t total_tokens,
                                        std::size_t tokens_per_doc = 64);

struct ToyModelSpec {
  std::uint64_t seed = 1;
  std::size_t corpus_tokens = 100000;
  std::size_t order = 2;
  double smoothing = 0.01;
};

// A vocabulary and n-gram model trained on a grammar corpus: the
// stand-in language model for every desk-scale experiment.
struct ToyModel {
  Vocabulary vocab;
  NGramLM lm;
  std::vector<std::vector<TokenId>> corpus;  // the encoded training documents
};

ToyModel build_toy_model(const ToyModelSpec& spec);

// n prompts of `length` tokens cut from fresh grammar text.
std::vector<std::vector<TokenId>> toy_prompts(const Vocabulary& vocab, std::uint64_t seed,
                                              std::size_t n, std::size_t length);

}  // namespace greenlist

#endif  // GREENLIST_GRAMMAR_H_
