// Copyright 2026 The Greenlist Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef GREENLIST_SERIALIZE_H_
#define GREENLIST_SERIALIZE_H_

#include <string>
#include <string_view>

#include "greenlist/analysis.h"
#include "greenlist/detector.h"
#include "greenlist/ngram_lm.h"
#include "greenlist/types.h"
#include "greenlist/vocab_prf.h"
#include "greenlist/vocabulary.h"

namespace greenlist {

// Config JSON:
//   {"gamma": 0.5, "delta": 2.0 | "inf", "vocab_size": 1000,
//    "scheme": {"kind": "lefthash" | "selfhash", "window": 1,
//               "mode": "public", "salt": 0}}
// Private schemes carry "key_hex" instead of "salt". A missing vocab_size
// takes default_vocab_size. Throws ConfigError on malformed or invalid
// input.
std::string config_to_json(const WatermarkConfig& config);
WatermarkConfig config_from_json(std::string_view json, std::size_t default_vocab_size = 0);

// Hex SHA-256 of a canonical rendering of the config together with the PRF
// layout version. Private keys enter only through their own SHA-256.
std::string config_fingerprint(const WatermarkConfig& config);

struct SequenceRecord {
  TokenSequence tokens;
  std::string fingerprint;  // may be empty
};

// One JSONL line (no trailing newline):
//   {"prompt": [...], "generated": [...], "vocab_size": V,
//    "config_fingerprint": "..."}
std::string sequence_to_json(const TokenSequence& tokens, std::string_view fingerprint);
// Throws DataError on malformed input.
SequenceRecord sequence_from_json(std::string_view line);

// {"z", "p", "log_p", "t_counted", "green_count", "gamma", "detected",
//  "colors"} with colors run-length encoded.
std::string report_to_json(const DetectionReport& report);
std::string bounds_to_json(const BoundReport& report);

// A vocabulary and n-gram model in one file.
std::string model_bundle_to_json(const Vocabulary& vocab, const NGramLM& lm);
struct ModelBundle {
  Vocabulary vocab;
  NGramLM lm;
};
ModelBundle model_bundle_from_json(std::string_view json);

}  // namespace greenlist

#endif  // GREENLIST_SERIALIZE_H_
