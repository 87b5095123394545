// Copyright 2026 The Greenlist Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef GREENLIST_LM_SOURCE_H_
#define GREENLIST_LM_SOURCE_H_

#include <cstddef>
#include <span>

#include "greenlist/types.h"

namespace greenlist {

// Anything that maps a token history to next-token logits. Implementations
// must be deterministic in the context and safe for concurrent reads.
class LmSource {
 public:
  virtual ~LmSource() = default;
  virtual std::size_t vocab_size() const = 0;
  virtual LogitVector next_logits(std::span<const TokenId> context) const = 0;
};

}  // namespace greenlist

#endif  // GREENLIST_LM_SOURCE_H_
