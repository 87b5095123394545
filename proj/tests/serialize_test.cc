// Copyright 2026 The Greenlist Authors
// SPDX-License-Identifier: Apache-2.0

#include "greenlist/serialize.h"

#include <gtest/gtest.h>

#include <cmath>

#include "greenlist/analysis.h"
#include "greenlist/detector.h"
#include "greenlist/errors.h"
#include "json.hpp"
#include "test_support.h"

namespace greenlist {
namespace {

using nlohmann::json;

WatermarkConfig public_config() {
  return testing::lefthash(0.25, 2.0, 50272, 1, 15485863);
}

WatermarkConfig private_selfhash() {
  WatermarkConfig c;
  c.gamma = 0.5;
  c.delta = std::numeric_limits<double>::infinity();
  c.vocab_size = 1000;
  std::vector<std::uint8_t> key;
  for (int b = 0x10; b < 0x30; ++b) key.push_back(static_cast<std::uint8_t>(b));
  c.scheme = SeedingScheme::make_private(HashKind::kSelfHash, 4, WatermarkKey(key));
  return c;
}

TEST(Config, RoundTrip) {
  for (const auto& c : {public_config(), private_selfhash()}) {
    const WatermarkConfig back = config_from_json(config_to_json(c));
    EXPECT_EQ(back.gamma, c.gamma);
    EXPECT_EQ(back.delta, c.delta);
    EXPECT_EQ(back.vocab_size, c.vocab_size);
    EXPECT_EQ(back.scheme.kind, c.scheme.kind);
    EXPECT_EQ(back.scheme.window, c.scheme.window);
    EXPECT_EQ(back.scheme.mode, c.scheme.mode);
    EXPECT_EQ(back.scheme.key, c.scheme.key);
    EXPECT_EQ(config_fingerprint(back), config_fingerprint(c));
  }
}

TEST(Config, FingerprintMatchesCanonicalJsonDigest) {
  EXPECT_EQ(config_fingerprint(public_config()),
            "ed3ff1ed21c56a3ba9b70de61f1c5889344c3592223138e1106409bc236f6cbd");
  EXPECT_EQ(config_fingerprint(private_selfhash()),
            "52fba123cbf4c4897a73310bbded9d085e12690f948f49e2128bb9653e6f208c");
}

TEST(Config, FingerprintSeparatesConfigs) {
  auto a = public_config();
  auto b = a;
  b.delta = 2.5;
  EXPECT_NE(config_fingerprint(a), config_fingerprint(b));
  b = a;
  b.scheme = SeedingScheme::make_public(HashKind::kLeftHash, 1, 1);
  EXPECT_NE(config_fingerprint(a), config_fingerprint(b));
  // The key never appears in the fingerprint input, only its digest.
  EXPECT_EQ(config_fingerprint(private_selfhash()).size(), 64u);
}

TEST(Config, DefaultsAndErrors) {
  const auto c = config_from_json(R"({"gamma": 0.5, "delta": 2, "scheme": {}})", 300);
  EXPECT_EQ(c.vocab_size, 300u);
  EXPECT_EQ(c.scheme.kind, HashKind::kLeftHash);
  EXPECT_EQ(c.scheme.window, 1u);
  EXPECT_EQ(c.scheme.mode, KeyMode::kPublic);
  EXPECT_THROW(config_from_json("{"), ConfigError);
  EXPECT_THROW(config_from_json(R"({"gamma": 0.5, "delta": 2, "scheme": {}})"), ConfigError);
  EXPECT_THROW(config_from_json(R"({"gamma": 1.5, "delta": 2, "vocab_size": 10, "scheme": {}})"),
               ConfigError);
  EXPECT_THROW(config_from_json(R"({"gamma": 0.5, "delta": "big", "vocab_size": 10, "scheme": {}})"),
               ConfigError);
  EXPECT_THROW(
      config_from_json(R"({"gamma": 0.5, "delta": 1, "vocab_size": 10, "scheme": {"kind": "x"}})"),
      ConfigError);
  EXPECT_THROW(config_from_json(
                   R"({"gamma": 0.5, "delta": 1, "vocab_size": 10, "scheme": {"mode": "private", "key_hex": "00"}})"),
               ConfigError);
}

TEST(Sequence, RoundTrip) {
  TokenSequence s;
  s.prompt = {5, 6};
  s.generated = {7, 8, 9};
  s.vocab_size = 20;
  const std::string line = sequence_to_json(s, "abc");
  EXPECT_EQ(line.find('\n'), std::string::npos);
  const SequenceRecord r = sequence_from_json(line);
  EXPECT_EQ(r.tokens, s);
  EXPECT_EQ(r.fingerprint, "abc");
  EXPECT_THROW(sequence_from_json(R"({"prompt": [1]})"), DataError);
  EXPECT_EQ(sequence_from_json(R"({"prompt": [1], "generated": []})").fingerprint, "");
}

TEST(Report, Fields) {
  const auto cfg = testing::lefthash(0.5, 2.0, 100);
  TokenSequence s;
  s.prompt = {1};
  s.generated = {2, 3, 2, 3};
  s.vocab_size = 100;
  const auto r = score(s, cfg);
  const json j = json::parse(report_to_json(r));
  EXPECT_EQ(j.at("z").get<double>(), r.z);
  EXPECT_EQ(j.at("p").get<double>(), r.p_one_sided);
  EXPECT_EQ(j.at("t_counted").get<std::size_t>(), 4u);
  EXPECT_EQ(j.at("green_count").get<std::size_t>(), r.green_count);
  EXPECT_EQ(j.at("gamma").get<double>(), 0.5);
  EXPECT_EQ(j.at("colors").get<std::string>(), run_length_colors(r.colors));
  EXPECT_TRUE(j.contains("log_p"));
  EXPECT_TRUE(j.contains("detected"));
}

TEST(Report, GoldenFixture) {
  const json doc = json::parse(testing::read_text(testing::fixture_path("report_golden.json")));
  const WatermarkConfig cfg = config_from_json(doc.at("config").dump());
  EXPECT_EQ(config_fingerprint(cfg), doc.at("config_fingerprint").get<std::string>());
  const SequenceRecord rec = sequence_from_json(doc.at("sequence").dump());
  EXPECT_EQ(json::parse(report_to_json(score(rec.tokens, cfg))), doc.at("report"));
  DetectorOptions skip;
  skip.skip_repeated_ngrams = true;
  EXPECT_EQ(json::parse(report_to_json(score(rec.tokens, cfg, skip))),
            doc.at("report_skip_repeated"));
}

TEST(Bounds, JsonCarriesTheChain) {
  const json j = json::parse(bounds_to_json(compute_bounds(0.5, 2.0, 200, 0.807, 4.0, 159.5)));
  EXPECT_NEAR(j.at("expected_green_lower_bound").get<double>(), 142.1606, 1e-4);
  EXPECT_NEAR(j.at("sigma_upper_bound").get<double>(), 6.4119, 1e-4);
  EXPECT_NEAR(j.at("cutoff").get<double>(), 128.2843, 1e-4);
  EXPECT_EQ(j.at("T").get<std::size_t>(), 200u);
  EXPECT_EQ(json::parse(bounds_to_json(compute_bounds(0.25, 2.0, 200, 0.8)))
                .at("simple_variance_upper_bound"),
            nullptr);
}

TEST(ModelBundle, RoundTrip) {
  const auto& m = testing::toy_model();
  const ModelBundle b = model_bundle_from_json(model_bundle_to_json(m.vocab, m.lm));
  EXPECT_EQ(b.vocab, m.vocab);
  EXPECT_EQ(b.lm.to_json(), m.lm.to_json());
  EXPECT_THROW(model_bundle_from_json(R"({"format": "other"})"), DataError);
}

}  // namespace
}  // namespace greenlist
