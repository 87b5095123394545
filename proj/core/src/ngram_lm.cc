// Copyright 2026 The Greenlist Authors
// SPDX-License-Identifier: Apache-2.0

#include "greenlist/ngram_lm.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "greenlist/errors.h"
#include "greenlist/rng.h"
#include "json.hpp"

namespace greenlist {

using nlohmann::json;

std::size_t NGramLM::KeyHash::operator()(const std::vector<TokenId>& key) const noexcept {
  std::uint64_t h = 0x2545f4914f6cdd1dULL ^ key.size();
  for (TokenId t : key) h = splitmix64(h ^ t);
  return static_cast<std::size_t>(h);
}

NGramLM NGramLM::train(std::span<const std::vector<TokenId>> corpus, std::size_t vocab_size,
                       std::size_t order, double smoothing, TokenId eos_id) {
  if (corpus.empty()) throw DataError("cannot train an n-gram model on an empty corpus");
  if (order < 1) throw ConfigError("n-gram order must be >= 1");
  if (vocab_size < 2) throw ConfigError("vocab_size must be >= 2");
  if (!(smoothing >= 0.0) || std::isinf(smoothing)) throw ConfigError("smoothing must be >= 0");
  if (eos_id >= vocab_size) throw ConfigError("eos id outside vocabulary");

  NGramLM lm;
  lm.vocab_size_ = vocab_size;
  lm.order_ = order;
  lm.smoothing_ = smoothing;
  lm.eos_id_ = eos_id;
  std::vector<std::map<std::vector<TokenId>, std::map<TokenId, std::size_t>>> raw(order);
  std::size_t tokens_seen = 0;
  for (const auto& seq : corpus) {
    std::vector<TokenId> padded(order - 1, 0);
    padded.insert(padded.end(), seq.begin(), seq.end());
    padded.push_back(eos_id);
    for (std::size_t pos = order - 1; pos < padded.size(); ++pos) {
      const TokenId w = padded[pos];
      if (w >= vocab_size) throw DataError("corpus token id outside the vocabulary");
      ++tokens_seen;
      for (std::size_t m = 1; m <= order; ++m) {
        std::vector<TokenId> ctx(padded.begin() + static_cast<std::ptrdiff_t>(pos - (m - 1)),
                                 padded.begin() + static_cast<std::ptrdiff_t>(pos));
        ++raw[m - 1][ctx][w];
      }
    }
  }
  if (tokens_seen == 0) throw DataError("corpus contains no tokens");
  lm.levels_.resize(order);
  for (std::size_t m = 0; m < order; ++m) {
    for (auto& [ctx, counts] : raw[m]) {
      Table t;
      for (auto [w, c] : counts) {
        t.counts.emplace_back(w, c);
        t.total += c;
      }
      lm.levels_[m].emplace(ctx, std::move(t));
    }
  }
  return lm;
}

ProbVector NGramLM::next_probs(std::span<const TokenId> context) const {
  const double v = static_cast<double>(vocab_size_);
  const double kv = smoothing_ * v;
  ProbVector p(vocab_size_, 0.0);
  {
    const Table& uni = levels_[0].at({});
    const double denom = static_cast<double>(uni.total) + kv;
    std::fill(p.begin(), p.end(), smoothing_ / denom);
    for (auto [w, c] : uni.counts) p[w] += static_cast<double>(c) / denom;
  }
  // Pad short histories with <bos> the same way training did.
  std::vector<TokenId> hist(order_ > 0 ? order_ - 1 : 0, 0);
  const std::size_t take = std::min(hist.size(), context.size());
  std::copy(context.end() - static_cast<std::ptrdiff_t>(take), context.end(),
            hist.end() - static_cast<std::ptrdiff_t>(take));
  for (std::size_t m = 2; m <= order_; ++m) {
    std::vector<TokenId> ctx(hist.end() - static_cast<std::ptrdiff_t>(m - 1), hist.end());
    auto it = levels_[m - 1].find(ctx);
    if (it == levels_[m - 1].end()) continue;
    const Table& t = it->second;
    const double denom = static_cast<double>(t.total) + kv;
    for (double& x : p) x *= kv / denom;
    for (auto [w, c] : t.counts) p[w] += static_cast<double>(c) / denom;
  }
  return p;
}

std::size_t NGramLM::Table::count_of(TokenId w) const {
  auto it = std::lower_bound(counts.begin(), counts.end(), w,
                             [](const auto& e, TokenId x) { return e.first < x; });
  return it != counts.end() && it->first == w ? it->second : 0;
}

double NGramLM::log_prob(std::span<const TokenId> context, TokenId token) const {
  if (token >= vocab_size_) throw DataError("token id outside the vocabulary");
  const double kv = smoothing_ * static_cast<double>(vocab_size_);
  const Table& uni = levels_[0].at({});
  double p = (static_cast<double>(uni.count_of(token)) + smoothing_) /
             (static_cast<double>(uni.total) + kv);
  std::vector<TokenId> hist(order_ > 0 ? order_ - 1 : 0, 0);
  const std::size_t take = std::min(hist.size(), context.size());
  std::copy(context.end() - static_cast<std::ptrdiff_t>(take), context.end(),
            hist.end() - static_cast<std::ptrdiff_t>(take));
  for (std::size_t m = 2; m <= order_; ++m) {
    std::vector<TokenId> ctx(hist.end() - static_cast<std::ptrdiff_t>(m - 1), hist.end());
    auto it = levels_[m - 1].find(ctx);
    if (it == levels_[m - 1].end()) continue;
    const Table& t = it->second;
    p = (static_cast<double>(t.count_of(token)) + kv * p) / (static_cast<double>(t.total) + kv);
  }
  return p > 0.0 ? std::log(p) : -std::numeric_limits<double>::infinity();
}

LogitVector NGramLM::next_logits(std::span<const TokenId> context) const {
  ProbVector p = next_probs(context);
  for (double& x : p) x = x > 0.0 ? std::log(x) : -std::numeric_limits<double>::infinity();
  return p;
}

double NGramLM::perplexity(std::span<const std::vector<TokenId>> sequences) const {
  double nll = 0.0;
  std::size_t n = 0;
  for (const auto& seq : sequences) {
    std::vector<TokenId> ctx;
    std::vector<TokenId> targets(seq);
    targets.push_back(eos_id_);
    for (TokenId w : targets) {
      const double p = next_probs(ctx)[w];
      nll -= std::log(p);
      ++n;
      ctx.push_back(w);
    }
  }
  if (n == 0) throw DataError("perplexity of an empty sample");
  return std::exp(nll / static_cast<double>(n));
}

std::string NGramLM::to_json() const {
  json j;
  j["format"] = "greenlist-ngram";
  j["version"] = 1;
  j["order"] = order_;
  j["smoothing"] = smoothing_;
  j["vocab_size"] = vocab_size_;
  j["eos_id"] = eos_id_;
  json levels = json::array();
  for (const Level& level : levels_) {
    // Sorted for byte-stable snapshots.
    std::map<std::vector<TokenId>, const Table*> sorted;
    for (const auto& [ctx, t] : level) sorted.emplace(ctx, &t);
    json tables = json::array();
    for (const auto& [ctx, t] : sorted) {
      json counts = json::array();
      for (auto [w, c] : t->counts) counts.push_back({w, c});
      tables.push_back({{"context", ctx}, {"counts", counts}});
    }
    levels.push_back(tables);
  }
  j["levels"] = levels;
  return j.dump();
}

NGramLM NGramLM::from_json(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw DataError(std::string("malformed n-gram snapshot: ") + e.what());
  }
  if (j.value("format", "") != "greenlist-ngram" || j.value("version", 0) != 1) {
    throw DataError("unsupported n-gram snapshot format");
  }
  try {
    NGramLM lm;
    lm.order_ = j.at("order").get<std::size_t>();
    lm.smoothing_ = j.at("smoothing").get<double>();
    lm.vocab_size_ = j.at("vocab_size").get<std::size_t>();
    lm.eos_id_ = j.at("eos_id").get<TokenId>();
    const auto& levels = j.at("levels");
    if (levels.size() != lm.order_) throw DataError("n-gram snapshot level count mismatch");
    lm.levels_.resize(lm.order_);
    for (std::size_t m = 0; m < lm.order_; ++m) {
      for (const auto& tj : levels[m]) {
        Table t;
        for (const auto& pair : tj.at("counts")) {
          const auto w = pair.at(0).get<TokenId>();
          const auto c = pair.at(1).get<std::size_t>();
          if (w >= lm.vocab_size_) throw DataError("n-gram snapshot token outside vocabulary");
          t.counts.emplace_back(w, c);
          t.total += c;
        }
        lm.levels_[m].emplace(tj.at("context").get<std::vector<TokenId>>(), std::move(t));
      }
    }
    if (lm.levels_.empty() || !lm.levels_[0].contains({})) {
      throw DataError("n-gram snapshot lacks unigram counts");
    }
    return lm;
  } catch (const json::exception& e) {
    throw DataError(std::string("malformed n-gram snapshot: ") + e.what());
  }
}

}  // namespace greenlist
