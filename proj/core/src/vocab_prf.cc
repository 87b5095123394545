// Copyright 2026 The Greenlist Authors
// SPDX-License-Identifier: Apache-2.0

#include "greenlist/vocab_prf.h"

#include <openssl/evp.h>

#include <algorithm>
#include <cmath>
#include <memory>
#include <numeric>

#include "greenlist/errors.h"
#include "greenlist/rng.h"

namespace greenlist {

namespace {

constexpr char kHexDigits[] = "0123456789abcdef";

int hex_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

struct MdCtxDeleter {
  void operator()(EVP_MD_CTX* ctx) const { EVP_MD_CTX_free(ctx); }
};

EVP_MD_CTX* thread_ctx() {
  thread_local std::unique_ptr<EVP_MD_CTX, MdCtxDeleter> ctx(EVP_MD_CTX_new());
  return ctx.get();
}

}  // namespace

WatermarkKey::WatermarkKey(std::vector<std::uint8_t> bytes, std::uint32_t id)
    : bytes_(std::move(bytes)), id_(id) {
  if (bytes_.size() < kMinKeyBytes) {
    throw ConfigError("watermark key must be at least 16 bytes, got " +
                      std::to_string(bytes_.size()));
  }
}

WatermarkKey WatermarkKey::public_salt(std::uint64_t salt) {
  std::vector<std::uint8_t> bytes(16);
  for (int i = 0; i < 8; ++i) bytes[i] = static_cast<std::uint8_t>(salt >> (8 * i));
  constexpr std::string_view kTag = "glwm-pub";
  std::copy(kTag.begin(), kTag.end(), bytes.begin() + 8);
  return WatermarkKey(std::move(bytes), 0);
}

WatermarkKey WatermarkKey::from_hex(std::string_view hex, std::uint32_t id) {
  if (hex.size() % 2 != 0) throw ConfigError("key hex string has odd length");
  std::vector<std::uint8_t> bytes;
  bytes.reserve(hex.size() / 2);
  for (std::size_t i = 0; i < hex.size(); i += 2) {
    const int hi = hex_value(hex[i]);
    const int lo = hex_value(hex[i + 1]);
    if (hi < 0 || lo < 0) throw ConfigError("key hex string has a non-hex digit");
    bytes.push_back(static_cast<std::uint8_t>(hi * 16 + lo));
  }
  return WatermarkKey(std::move(bytes), id);
}

std::string WatermarkKey::hex() const {
  std::string out;
  out.reserve(bytes_.size() * 2);
  for (std::uint8_t b : bytes_) {
    out.push_back(kHexDigits[b >> 4]);
    out.push_back(kHexDigits[b & 0xf]);
  }
  return out;
}

SeedingScheme SeedingScheme::make_public(HashKind kind, std::size_t window, std::uint64_t salt) {
  SeedingScheme s;
  s.kind = kind;
  s.window = window;
  s.mode = KeyMode::kPublic;
  s.salt = salt;
  s.key = WatermarkKey::public_salt(salt);
  s.validate();
  return s;
}

SeedingScheme SeedingScheme::make_private(HashKind kind, std::size_t window, WatermarkKey key) {
  SeedingScheme s;
  s.kind = kind;
  s.window = window;
  s.mode = KeyMode::kPrivate;
  s.key = std::move(key);
  s.validate();
  return s;
}

void SeedingScheme::validate() const {
  if (window < 1) throw ConfigError("seeding window h must be >= 1");
}

bool WatermarkConfig::hard() const { return std::isinf(delta) && delta > 0; }

std::size_t WatermarkConfig::green_size() const { return green_list_size(gamma, vocab_size); }

void WatermarkConfig::validate() const {
  if (!(gamma > 0.0 && gamma < 1.0)) throw ConfigError("gamma must lie in (0, 1)");
  if (std::isnan(delta) || delta < 0.0) throw ConfigError("delta must be >= 0");
  if (vocab_size < 2) throw ConfigError("vocab_size must be >= 2");
  scheme.validate();
  const std::size_t g = green_size();
  if (g < 1) throw ConfigError("gamma * vocab_size must be >= 1 (empty green list)");
  if (hard() && g >= vocab_size) {
    throw ConfigError("hard mode needs a nonempty red list");
  }
}

GreenMask::GreenMask(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {
  green_count_ = static_cast<std::size_t>(std::count_if(
      bits_.begin(), bits_.end(), [](std::uint8_t b) { return b != 0; }));
}

GreenMask GreenMask::complement() const {
  std::vector<std::uint8_t> out(bits_.size());
  std::transform(bits_.begin(), bits_.end(), out.begin(),
                 [](std::uint8_t b) -> std::uint8_t { return b ? 0 : 1; });
  return GreenMask(std::move(out));
}

std::array<std::uint8_t, 32> prf_digest(PrfDomain domain, const WatermarkKey& key,
                                        std::span<const TokenId> tokens) {
  std::vector<std::uint8_t> msg;
  msg.reserve(1 + key.bytes().size() + 4 * tokens.size());
  msg.push_back(static_cast<std::uint8_t>(domain));
  msg.insert(msg.end(), key.bytes().begin(), key.bytes().end());
  for (TokenId t : tokens) {
    for (int i = 0; i < 4; ++i) msg.push_back(static_cast<std::uint8_t>(t >> (8 * i)));
  }
  return sha256(msg);
}

std::array<std::uint8_t, 32> sha256(std::span<const std::uint8_t> bytes) {
  std::array<std::uint8_t, 32> digest{};
  unsigned int len = 0;
  EVP_MD_CTX* ctx = thread_ctx();
  if (ctx == nullptr || EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr) != 1 ||
      EVP_DigestUpdate(ctx, bytes.data(), bytes.size()) != 1 ||
      EVP_DigestFinal_ex(ctx, digest.data(), &len) != 1 || len != digest.size()) {
    throw Error("SHA-256 evaluation failed");
  }
  return digest;
}

std::uint64_t prf64(PrfDomain domain, const WatermarkKey& key, std::span<const TokenId> tokens) {
  const auto digest = prf_digest(domain, key, tokens);
  std::uint64_t seed = 0;
  for (std::size_t i = 24; i < 32; ++i) seed = (seed << 8) | digest[i];
  return seed;
}

std::vector<TokenId> seeding_window(std::span<const TokenId> history, std::size_t h) {
  std::vector<TokenId> window(h, kBosId);
  const std::size_t take = std::min(h, history.size());
  std::copy(history.end() - static_cast<std::ptrdiff_t>(take), history.end(),
            window.end() - static_cast<std::ptrdiff_t>(take));
  return window;
}

std::uint64_t compute_seed(std::span<const TokenId> context, const SeedingScheme& scheme) {
  if (context.size() < scheme.window) {
    throw WindowUnderflow("seeding context has " + std::to_string(context.size()) +
                          " tokens, scheme needs " + std::to_string(scheme.window) +
                          " (left-pad with the BOS id)");
  }
  if (context.size() > scheme.window) {
    throw ConfigError("seeding context longer than the scheme window");
  }
  return prf64(PrfDomain::kLeftHashSeed, scheme.key, context);
}

std::size_t green_list_size(double gamma, std::size_t vocab_size) {
  if (!(gamma > 0.0 && gamma < 1.0)) throw ConfigError("gamma must lie in (0, 1)");
  // The epsilon absorbs representation error such as 0.29 * 100 = 28.999...
  return static_cast<std::size_t>(std::floor(gamma * static_cast<double>(vocab_size) + 1e-9));
}

GreenMask partition_vocab(std::uint64_t seed, double gamma, std::size_t vocab_size) {
  const std::size_t green = green_list_size(gamma, vocab_size);
  if (vocab_size < 2) throw ConfigError("vocab_size must be >= 2");
  std::vector<TokenId> perm(vocab_size);
  std::iota(perm.begin(), perm.end(), TokenId{0});
  SeededRng rng(seed);
  std::vector<std::uint8_t> bits(vocab_size, 0);
  for (std::size_t i = 0; i < green; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(rng.below(vocab_size - i));
    std::swap(perm[i], perm[j]);
    bits[perm[i]] = 1;
  }
  return GreenMask(std::move(bits));
}

SelfHashColor self_hash_color(TokenId candidate, std::span<const TokenId> context,
                              const SeedingScheme& scheme, double gamma) {
  const std::size_t h = scheme.window;
  if (context.size() < h) {
    throw WindowUnderflow("self-hash context shorter than the window");
  }
  if (context.size() > h) throw ConfigError("self-hash context longer than the window");
  if (!(gamma > 0.0 && gamma < 1.0)) throw ConfigError("gamma must lie in (0, 1)");
  SelfHashColor out;
  bool first = true;
  for (std::size_t i = 1; i <= h; ++i) {
    const std::array<TokenId, 2> pair{candidate, context[h - i]};
    const std::uint64_t hi = prf64(PrfDomain::kSelfHash, scheme.key, pair);
    if (first || hi < out.seed) {
      out.seed = hi;
      out.chosen_offset = i;
      first = false;
    }
  }
  SeededRng rng(out.seed);
  out.green = rng.uniform01() < gamma;
  return out;
}

std::vector<GreenMask> balanced_multikey_masks(std::span<const WatermarkKey> keys,
                                               std::span<const TokenId> context, double gamma,
                                               std::size_t vocab_size) {
  const std::size_t k = keys.size();
  if (k == 0 || k % 2 != 0) throw ConfigError("balanced multi-key masks need an even key count");
  if (gamma != 0.5) throw ConfigError("balanced multi-key masks are defined for gamma = 0.5 only");
  std::vector<std::size_t> order(k);
  std::iota(order.begin(), order.end(), std::size_t{0});
  // The pairing input is [k, context...], one token longer than the mask
  // inputs, so the two never collide.
  std::vector<TokenId> pairing_input{static_cast<TokenId>(k)};
  pairing_input.insert(pairing_input.end(), context.begin(), context.end());
  SeededRng pairing(prf64(PrfDomain::kMultiKey, keys.front(), pairing_input));
  for (std::size_t i = k - 1; i > 0; --i) {
    std::swap(order[i], order[static_cast<std::size_t>(pairing.below(i + 1))]);
  }
  std::vector<GreenMask> masks(k);
  for (std::size_t p = 0; p < k; p += 2) {
    const std::size_t a = order[p];
    const std::size_t b = order[p + 1];
    masks[a] = partition_vocab(prf64(PrfDomain::kMultiKey, keys[a], context), gamma, vocab_size);
    masks[b] = masks[a].complement();
  }
  return masks;
}

}  // namespace greenlist
