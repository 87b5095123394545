// Copyright 2026 The Greenlist Authors
// SPDX-License-Identifier: Apache-2.0
//
// Coloring rules bind a seeding scheme to a concrete way of deciding
// whether a token is green at a position. Generators and the detector are
// written against these interfaces so that LeftHash, SelfHash and the
// balanced multi-key construction share one scoring path.

#ifndef GREENLIST_COLORING_H_
#define GREENLIST_COLORING_H_

#include <cstddef>
#include <memory>
#include <shared_mutex>
#include <span>
#include <unordered_map>
#include <vector>

#include "greenlist/types.h"
#include "greenlist/vocab_prf.h"

namespace greenlist {

class ColoringRule {
 public:
  virtual ~ColoringRule() = default;

  // Number of previous tokens the rule reads (h).
  virtual std::size_t window() const = 0;
  virtual double gamma() const = 0;
  virtual std::size_t vocab_size() const = 0;

  // window holds exactly window() tokens, oldest first.
  virtual bool is_green(std::span<const TokenId> window, TokenId token) const = 0;
};

// A rule whose colors come from a whole-vocabulary partition per window.
class PartitionRule : public ColoringRule {
 public:
  virtual GreenMask mask(std::span<const TokenId> window) const = 0;

  bool is_green(std::span<const TokenId> window, TokenId token) const override {
    return mask(window).is_green(token);
  }
};

class LeftHashRule final : public PartitionRule {
 public:
  explicit LeftHashRule(WatermarkConfig config);

  std::size_t window() const override { return config_.scheme.window; }
  double gamma() const override { return config_.gamma; }
  std::size_t vocab_size() const override { return config_.vocab_size; }
  GreenMask mask(std::span<const TokenId> window) const override;

  const WatermarkConfig& config() const { return config_; }

 private:
  WatermarkConfig config_;
};

// Mask of key `index` within a balanced key ring.
class BalancedKeyRule final : public PartitionRule {
 public:
  BalancedKeyRule(std::vector<WatermarkKey> keys, std::size_t index, std::size_t window,
                  std::size_t vocab_size);

  std::size_t window() const override { return window_; }
  double gamma() const override { return 0.5; }
  std::size_t vocab_size() const override { return vocab_size_; }
  GreenMask mask(std::span<const TokenId> window) const override;

 private:
  std::vector<WatermarkKey> keys_;
  std::size_t index_;
  std::size_t window_;
  std::size_t vocab_size_;
};

class SelfHashRule final : public ColoringRule {
 public:
  SelfHashRule(SeedingScheme scheme, double gamma, std::size_t vocab_size);

  std::size_t window() const override { return scheme_.window; }
  double gamma() const override { return gamma_; }
  std::size_t vocab_size() const override { return vocab_size_; }
  bool is_green(std::span<const TokenId> window, TokenId token) const override;

  const SeedingScheme& scheme() const { return scheme_; }

 private:
  SeedingScheme scheme_;
  double gamma_;
  std::size_t vocab_size_;
};

// Memoizes masks of an inner partition rule by window. Safe for concurrent
// use. Worth it when few distinct windows recur, e.g. h = 1 on a small
// vocabulary.
class CachedPartitionRule final : public PartitionRule {
 public:
  explicit CachedPartitionRule(std::shared_ptr<const PartitionRule> inner);

  std::size_t window() const override { return inner_->window(); }
  double gamma() const override { return inner_->gamma(); }
  std::size_t vocab_size() const override { return inner_->vocab_size(); }
  GreenMask mask(std::span<const TokenId> window) const override;
  bool is_green(std::span<const TokenId> window, TokenId token) const override;

 private:
  std::shared_ptr<const GreenMask> lookup(std::span<const TokenId> window) const;

  struct WindowHash {
    std::size_t operator()(const std::vector<TokenId>& w) const noexcept;
  };

  std::shared_ptr<const PartitionRule> inner_;
  mutable std::shared_mutex mu_;
  mutable std::unordered_map<std::vector<TokenId>, std::shared_ptr<const GreenMask>, WindowHash>
      cache_;
};

// LeftHash configs give a LeftHashRule, SelfHash configs a SelfHashRule.
std::shared_ptr<const ColoringRule> make_rule(const WatermarkConfig& config);

}  // namespace greenlist

#endif  // GREENLIST_COLORING_H_
