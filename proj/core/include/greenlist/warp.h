// Copyright 2026 The Greenlist Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef GREENLIST_WARP_H_
#define GREENLIST_WARP_H_

#include <span>

#include "greenlist/types.h"
#include "greenlist/vocab_prf.h"

namespace greenlist {

// Numerically stable softmax; -inf entries get exactly zero mass. Throws
// SourceError if every entry is -inf or any entry is NaN/+inf.
ProbVector softmax(std::span<const double> logits);

// Red entries become -inf, green entries are untouched.
LogitVector hard_warp(std::span<const double> logits, const GreenMask& mask);

// Adds delta to every green logit and normalizes:
//   p_k = exp(l_k + delta [k green]) / (sum_R exp(l_i) + sum_G exp(l_i + delta)).
// delta = +inf is the hard rule followed by softmax.
ProbVector soft_warp(std::span<const double> logits, const GreenMask& mask, double delta);

// Element-wise division by temp (> 0).
LogitVector apply_temperature(std::span<const double> logits, double temp);

}  // namespace greenlist

#endif  // GREENLIST_WARP_H_
