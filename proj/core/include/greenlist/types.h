// Copyright 2026 The Greenlist Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef GREENLIST_TYPES_H_
#define GREENLIST_TYPES_H_

#include <cstddef>
#include <cstdint>
#include <vector>

namespace greenlist {

using TokenId = std::uint32_t;

// Token id used to left-pad prompts shorter than the seeding window.
inline constexpr TokenId kBosId = 0;

// Natural-log-scale, unnormalized scores; -inf marks an excluded token.
using LogitVector = std::vector<double>;
using ProbVector = std::vector<double>;

enum class Color : std::uint8_t { kGreen, kRed, kSkipped, kUnscorable };

// A prompt plus the tokens generated after it.
struct TokenSequence {
  std::vector<TokenId> prompt;
  std::vector<TokenId> generated;
  std::size_t vocab_size = 0;

  // prompt followed by generated.
  std::vector<TokenId> full() const {
    std::vector<TokenId> out(prompt);
    out.insert(out.end(), generated.begin(), generated.end());
    return out;
  }

  friend bool operator==(const TokenSequence&, const TokenSequence&) = default;
};

}  // namespace greenlist

#endif  // GREENLIST_TYPES_H_
