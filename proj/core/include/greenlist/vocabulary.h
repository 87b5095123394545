// Copyright 2026 The Greenlist Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef GREENLIST_VOCABULARY_H_
#define GREENLIST_VOCABULARY_H_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "greenlist/types.h"

namespace greenlist {

// Whitespace word tokenizer with a byte fallback for out-of-vocabulary
// words. Id layout: 0 <bos>, 1 <eos>, 2..257 the raw bytes 0x00..0xff,
// then the word list in training order.
//
// Decoding joins words with single spaces and glues consecutive byte
// tokens into one word, so two adjacent out-of-vocabulary words decode as
// one.
class Vocabulary {
 public:
  static constexpr TokenId kBos = 0;
  static constexpr TokenId kEos = 1;
  static constexpr TokenId kFirstByte = 2;
  static constexpr TokenId kFirstWord = kFirstByte + 256;

  Vocabulary() = default;
  explicit Vocabulary(std::vector<std::string> words);

  // Words ordered by descending count, ties broken lexicographically.
  // max_words == 0 keeps every word with at least min_count occurrences.
  static Vocabulary build(std::span<const std::string> texts, std::size_t max_words = 0,
                          std::size_t min_count = 1);

  std::size_t size() const { return kFirstWord + words_.size(); }
  const std::vector<std::string>& words() const { return words_; }
  std::optional<TokenId> word_id(std::string_view word) const;
  static bool is_byte(TokenId id) { return id >= kFirstByte && id < kFirstWord; }

  std::vector<TokenId> encode(std::string_view text) const;
  std::string decode(std::span<const TokenId> ids) const;

  // Printable form of one token: the word, "<0xNN>" for bytes, "<bos>"...
  std::string token_string(TokenId id) const;

  friend bool operator==(const Vocabulary& a, const Vocabulary& b) { return a.words_ == b.words_; }

 private:
  std::vector<std::string> words_;
  std::unordered_map<std::string, TokenId> index_;
};

// Splits on ASCII whitespace.
std::vector<std::string_view> split_words(std::string_view text);

}  // namespace greenlist

#endif  // GREENLIST_VOCABULARY_H_
