// Copyright 2026 The Greenlist Authors
// SPDX-License-Identifier: Apache-2.0

#include "greenlist/vocabulary.h"

#include <algorithm>
#include <cstdio>
#include <map>

#include "greenlist/errors.h"

namespace greenlist {

namespace {

bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

}  // namespace

std::vector<std::string_view> split_words(std::string_view text) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && is_space(text[i])) ++i;
    std::size_t j = i;
    while (j < text.size() && !is_space(text[j])) ++j;
    if (j > i) out.push_back(text.substr(i, j - i));
    i = j;
  }
  return out;
}

Vocabulary::Vocabulary(std::vector<std::string> words) : words_(std::move(words)) {
  for (std::size_t i = 0; i < words_.size(); ++i) {
    if (words_[i].empty()) throw DataError("vocabulary words must be nonempty");
    if (!index_.emplace(words_[i], static_cast<TokenId>(kFirstWord + i)).second) {
      throw DataError("duplicate vocabulary word: " + words_[i]);
    }
  }
}

Vocabulary Vocabulary::build(std::span<const std::string> texts, std::size_t max_words,
                             std::size_t min_count) {
  std::map<std::string, std::size_t, std::less<>> counts;
  for (const auto& text : texts) {
    for (std::string_view w : split_words(text)) ++counts[std::string(w)];
  }
  if (counts.empty()) throw DataError("cannot build a vocabulary from an empty corpus");
  std::vector<std::pair<std::string, std::size_t>> ranked;
  for (auto& [w, c] : counts) {
    if (c >= min_count) ranked.emplace_back(w, c);
  }
  std::stable_sort(ranked.begin(), ranked.end(),
                   [](const auto& a, const auto& b) { return a.second > b.second; });
  if (max_words != 0 && ranked.size() > max_words) ranked.resize(max_words);
  std::vector<std::string> words;
  words.reserve(ranked.size());
  for (auto& [w, c] : ranked) words.push_back(std::move(w));
  return Vocabulary(std::move(words));
}

std::optional<TokenId> Vocabulary::word_id(std::string_view word) const {
  auto it = index_.find(std::string(word));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::vector<TokenId> Vocabulary::encode(std::string_view text) const {
  std::vector<TokenId> ids;
  for (std::string_view w : split_words(text)) {
    if (auto id = word_id(w)) {
      ids.push_back(*id);
      continue;
    }
    for (unsigned char c : w) ids.push_back(kFirstByte + c);
  }
  return ids;
}

std::string Vocabulary::decode(std::span<const TokenId> ids) const {
  std::string out;
  bool prev_byte = false;
  for (TokenId id : ids) {
    if (id >= size()) throw DataError("token id outside the vocabulary");
    if (id == kBos || id == kEos) {
      prev_byte = false;
      continue;
    }
    if (is_byte(id)) {
      if (!prev_byte && !out.empty()) out += ' ';
      out += static_cast<char>(id - kFirstByte);
      prev_byte = true;
      continue;
    }
    if (!out.empty()) out += ' ';
    out += words_[id - kFirstWord];
    prev_byte = false;
  }
  return out;
}

std::string Vocabulary::token_string(TokenId id) const {
  if (id == kBos) return "<bos>";
  if (id == kEos) return "<eos>";
  if (is_byte(id)) {
    char buf[8];
    std::snprintf(buf, sizeof buf, "<0x%02X>", id - kFirstByte);
    return buf;
  }
  if (id >= size()) throw DataError("token id outside the vocabulary");
  return words_[id - kFirstWord];
}

}  // namespace greenlist
