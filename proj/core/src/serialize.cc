// Copyright 2026 The Greenlist Authors
// SPDX-License-Identifier: Apache-2.0

#include "greenlist/serialize.h"

#include <cmath>
#include <cstdio>
#include <limits>

#include "greenlist/errors.h"
#include "json.hpp"

namespace greenlist {

using nlohmann::json;

namespace {

std::string to_hex(std::span<const std::uint8_t> bytes) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  out.reserve(2 * bytes.size());
  for (std::uint8_t b : bytes) {
    out.push_back(kDigits[b >> 4]);
    out.push_back(kDigits[b & 0xf]);
  }
  return out;
}

json delta_json(double delta) {
  if (std::isinf(delta) && delta > 0) return "inf";
  return delta;
}

json scheme_json(const SeedingScheme& s) {
  json j = {{"kind", s.kind == HashKind::kLeftHash ? "lefthash" : "selfhash"},
            {"window", s.window},
            {"mode", s.mode == KeyMode::kPublic ? "public" : "private"}};
  if (s.mode == KeyMode::kPublic) {
    j["salt"] = s.salt;
  } else {
    j["key_hex"] = s.key.hex();
  }
  return j;
}

json report_json(const DetectionReport& r) {
  json j = {{"z", r.z},
            {"p", r.p_one_sided},
            {"log_p", r.log_p},
            {"t_counted", r.t_counted},
            {"green_count", r.green_count},
            {"gamma", r.gamma},
            {"detected", r.detected},
            {"colors", run_length_colors(r.colors)}};
  return j;
}

json optional_json(const std::optional<double>& v) {
  return v ? json(*v) : json(nullptr);
}

}  // namespace

std::string config_to_json(const WatermarkConfig& config) {
  json j = {{"gamma", config.gamma},
            {"delta", delta_json(config.delta)},
            {"vocab_size", config.vocab_size},
            {"scheme", scheme_json(config.scheme)}};
  return j.dump(2);
}

WatermarkConfig config_from_json(std::string_view text, std::size_t default_vocab_size) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config JSON: ") + e.what());
  }
  WatermarkConfig c;
  try {
    c.gamma = j.at("gamma").get<double>();
    const json& d = j.at("delta");
    if (d.is_string()) {
      if (d.get<std::string>() != "inf") throw ConfigError("delta must be a number or \"inf\"");
      c.delta = std::numeric_limits<double>::infinity();
    } else {
      c.delta = d.get<double>();
    }
    c.vocab_size = j.value("vocab_size", default_vocab_size);
    const json& s = j.at("scheme");
    const std::string kind = s.value("kind", "lefthash");
    HashKind hk;
    if (kind == "lefthash") {
      hk = HashKind::kLeftHash;
    } else if (kind == "selfhash") {
      hk = HashKind::kSelfHash;
    } else {
      throw ConfigError("unknown scheme kind '" + kind + "'");
    }
    const std::size_t window = s.value("window", std::size_t{1});
    const std::string mode = s.value("mode", "public");
    if (mode == "public") {
      c.scheme = SeedingScheme::make_public(hk, window, s.value("salt", std::uint64_t{0}));
    } else if (mode == "private") {
      c.scheme = SeedingScheme::make_private(
          hk, window, WatermarkKey::from_hex(s.at("key_hex").get<std::string>()));
    } else {
      throw ConfigError("unknown key mode '" + mode + "'");
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config JSON: ") + e.what());
  }
  c.validate();
  return c;
}

std::string config_fingerprint(const WatermarkConfig& config) {
  json j = {{"layout_version", kPrfLayoutVersion},
            {"gamma", config.gamma},
            {"delta", delta_json(config.delta)},
            {"vocab_size", config.vocab_size},
            {"kind", config.scheme.kind == HashKind::kLeftHash ? "lefthash" : "selfhash"},
            {"window", config.scheme.window}};
  if (config.scheme.mode == KeyMode::kPublic) {
    j["mode"] = "public";
    j["salt"] = config.scheme.salt;
  } else {
    j["mode"] = "private";
    j["key_sha256"] = to_hex(sha256(config.scheme.key.bytes()));
  }
  const std::string canonical = j.dump();
  const auto digest = sha256(std::span<const std::uint8_t>(
      reinterpret_cast<const std::uint8_t*>(canonical.data()), canonical.size()));
  return to_hex(digest);
}

std::string sequence_to_json(const TokenSequence& tokens, std::string_view fingerprint) {
  json j = {{"prompt", tokens.prompt},
            {"generated", tokens.generated},
            {"vocab_size", tokens.vocab_size},
            {"config_fingerprint", std::string(fingerprint)}};
  return j.dump();
}

SequenceRecord sequence_from_json(std::string_view line) {
  SequenceRecord rec;
  try {
    const json j = json::parse(line);
    rec.tokens.prompt = j.at("prompt").get<std::vector<TokenId>>();
    rec.tokens.generated = j.at("generated").get<std::vector<TokenId>>();
    rec.tokens.vocab_size = j.value("vocab_size", std::size_t{0});
    rec.fingerprint = j.value("config_fingerprint", "");
  } catch (const json::exception& e) {
    throw DataError(std::string("sequence JSON: ") + e.what());
  }
  return rec;
}

std::string report_to_json(const DetectionReport& report) { return report_json(report).dump(); }

std::string bounds_to_json(const BoundReport& b) {
  json j = {{"gamma", b.gamma},
            {"delta", delta_json(b.delta)},
            {"T", b.t},
            {"spike_entropy", b.s_star},
            {"modulus", b.modulus},
            {"coefficient", b.coefficient},
            {"expected_green_lower_bound", b.expected_green_lb},
            {"variance_upper_bound", b.variance_ub},
            {"sigma_upper_bound", b.sigma_ub},
            {"simple_variance_upper_bound", optional_json(b.simple_variance_ub)},
            {"z_threshold", b.z_threshold},
            {"cutoff", b.cutoff},
            {"type2_estimate", b.type2_estimate},
            {"empirical_mean", optional_json(b.empirical_mean)},
            {"type2_empirical", optional_json(b.type2_empirical)},
            {"perplexity_factor", b.perplexity_factor}};
  return j.dump(2);
}

std::string model_bundle_to_json(const Vocabulary& vocab, const NGramLM& lm) {
  json j = {{"format", "greenlist-model"},
            {"version", 1},
            {"words", vocab.words()},
            {"ngram", json::parse(lm.to_json())}};
  return j.dump();
}

ModelBundle model_bundle_from_json(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw DataError(std::string("model bundle: ") + e.what());
  }
  if (j.value("format", "") != "greenlist-model" || j.value("version", 0) != 1) {
    throw DataError("unsupported model bundle format");
  }
  try {
    Vocabulary vocab(j.at("words").get<std::vector<std::string>>());
    NGramLM lm = NGramLM::from_json(j.at("ngram").dump());
    if (lm.vocab_size() != vocab.size()) throw DataError("model and vocabulary sizes differ");
    return ModelBundle{std::move(vocab), std::move(lm)};
  } catch (const json::exception& e) {
    throw DataError(std::string("model bundle: ") + e.what());
  }
}

}  // namespace greenlist
