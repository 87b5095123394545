// Copyright 2026 The Greenlist Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef GREENLIST_TESTS_TEST_SUPPORT_H_
#define GREENLIST_TESTS_TEST_SUPPORT_H_

#include <cmath>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "greenlist/grammar.h"
#include "greenlist/rng.h"
#include "greenlist/vocab_prf.h"

namespace greenlist::testing {

inline const ToyModel& toy_model() {
  static const ToyModel model = build_toy_model({});
  return model;
}

inline WatermarkConfig lefthash(double gamma, double delta, std::size_t vocab,
                                std::size_t h = 1, std::uint64_t salt = 0) {
  WatermarkConfig c;
  c.gamma = gamma;
  c.delta = delta;
  c.vocab_size = vocab;
  c.scheme = SeedingScheme::make_public(HashKind::kLeftHash, h, salt);
  c.validate();
  return c;
}

inline WatermarkKey random_key(SeededRng& rng) {
  std::vector<std::uint8_t> bytes(16);
  for (auto& b : bytes) b = static_cast<std::uint8_t>(rng.below(256));
  return WatermarkKey(bytes);
}

inline std::string fixture_path(const std::string& name) {
  return std::string(GREENLIST_FIXTURE_DIR) + "/" + name;
}

inline std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Binomial standard deviation of a frequency estimated from n draws.
inline double binomial_sd(double p, double n) { return std::sqrt(p * (1.0 - p) / n); }

}  // namespace greenlist::testing

#endif  // GREENLIST_TESTS_TEST_SUPPORT_H_
