// Copyright 2026 The Greenlist Authors
// SPDX-License-Identifier: Apache-2.0

#include "greenlist/coloring.h"

#include <mutex>

#include "greenlist/errors.h"
#include "greenlist/rng.h"

namespace greenlist {

LeftHashRule::LeftHashRule(WatermarkConfig config) : config_(std::move(config)) {
  config_.validate();
  if (config_.scheme.kind != HashKind::kLeftHash) {
    throw ConfigError("LeftHashRule needs a LeftHash seeding scheme");
  }
}

GreenMask LeftHashRule::mask(std::span<const TokenId> window) const {
  return partition_vocab(compute_seed(window, config_.scheme), config_.gamma, config_.vocab_size);
}

BalancedKeyRule::BalancedKeyRule(std::vector<WatermarkKey> keys, std::size_t index,
                                 std::size_t window, std::size_t vocab_size)
    : keys_(std::move(keys)), index_(index), window_(window), vocab_size_(vocab_size) {
  if (keys_.empty() || keys_.size() % 2 != 0) {
    throw ConfigError("balanced key ring needs an even number of keys");
  }
  if (index_ >= keys_.size()) throw ConfigError("key index out of range");
  if (window_ < 1) throw ConfigError("seeding window h must be >= 1");
  if (vocab_size_ < 2) throw ConfigError("vocab_size must be >= 2");
}

GreenMask BalancedKeyRule::mask(std::span<const TokenId> window) const {
  if (window.size() < window_) throw WindowUnderflow("balanced-key window too short");
  return balanced_multikey_masks(keys_, window, 0.5, vocab_size_)[index_];
}

SelfHashRule::SelfHashRule(SeedingScheme scheme, double gamma, std::size_t vocab_size)
    : scheme_(std::move(scheme)), gamma_(gamma), vocab_size_(vocab_size) {
  scheme_.validate();
  if (scheme_.kind != HashKind::kSelfHash) {
    throw ConfigError("SelfHashRule needs a SelfHash seeding scheme");
  }
  if (!(gamma_ > 0.0 && gamma_ < 1.0)) throw ConfigError("gamma must lie in (0, 1)");
}

bool SelfHashRule::is_green(std::span<const TokenId> window, TokenId token) const {
  return self_hash_color(token, window, scheme_, gamma_).green;
}

CachedPartitionRule::CachedPartitionRule(std::shared_ptr<const PartitionRule> inner)
    : inner_(std::move(inner)) {
  if (!inner_) throw ConfigError("CachedPartitionRule needs an inner rule");
}

std::size_t CachedPartitionRule::WindowHash::operator()(
    const std::vector<TokenId>& w) const noexcept {
  std::uint64_t h = 0x51ed270b27f3a5c1ULL;
  for (TokenId t : w) h = splitmix64(h ^ t);
  return static_cast<std::size_t>(h);
}

std::shared_ptr<const GreenMask> CachedPartitionRule::lookup(
    std::span<const TokenId> window) const {
  std::vector<TokenId> key(window.begin(), window.end());
  {
    std::shared_lock lock(mu_);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
  }
  auto computed = std::make_shared<const GreenMask>(inner_->mask(window));
  std::unique_lock lock(mu_);
  auto [it, inserted] = cache_.emplace(std::move(key), std::move(computed));
  return it->second;
}

GreenMask CachedPartitionRule::mask(std::span<const TokenId> window) const {
  return *lookup(window);
}

bool CachedPartitionRule::is_green(std::span<const TokenId> window, TokenId token) const {
  return lookup(window)->is_green(token);
}

std::shared_ptr<const ColoringRule> make_rule(const WatermarkConfig& config) {
  config.validate();
  if (config.scheme.kind == HashKind::kSelfHash) {
    return std::make_shared<SelfHashRule>(config.scheme, config.gamma, config.vocab_size);
  }
  return std::make_shared<LeftHashRule>(config);
}

}  // namespace greenlist
