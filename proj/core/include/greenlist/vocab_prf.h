// Copyright 2026 The Greenlist Authors
// SPDX-License-Identifier: Apache-2.0
//
// Keyed pseudorandom partitioning of the vocabulary into green and red
// lists. Generator and detector both derive every color from the functions
// in this header, so any change here is a change to the watermark itself.
//
// PRF input layout (version kPrfLayoutVersion):
//   SHA-256( domain_tag:u8 || key_bytes || token_ids as little-endian u32 )
// The 64-bit seed is the low 64 bits of the digest read as a big-endian
// integer, i.e. the last eight digest bytes, big-endian.

#ifndef GREENLIST_VOCAB_PRF_H_
#define GREENLIST_VOCAB_PRF_H_

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "greenlist/types.h"

namespace greenlist {

inline constexpr int kPrfLayoutVersion = 1;
inline constexpr std::size_t kMinKeyBytes = 16;

enum class PrfDomain : std::uint8_t {
  kLeftHashSeed = 0x01,
  kSelfHash = 0x02,
  kMultiKey = 0x03,
};

class WatermarkKey {
 public:
  // Throws ConfigError when bytes.size() < kMinKeyBytes.
  explicit WatermarkKey(std::vector<std::uint8_t> bytes, std::uint32_t id = 0);

  // The published key used by public mode: salt as little-endian u64
  // followed by the ASCII bytes "glwm-pub".
  static WatermarkKey public_salt(std::uint64_t salt);
  static WatermarkKey from_hex(std::string_view hex, std::uint32_t id = 0);

  std::span<const std::uint8_t> bytes() const { return bytes_; }
  std::uint32_t id() const { return id_; }
  std::string hex() const;

  friend bool operator==(const WatermarkKey& a, const WatermarkKey& b) {
    return a.bytes_ == b.bytes_;
  }

 private:
  std::vector<std::uint8_t> bytes_;
  std::uint32_t id_;
};

enum class HashKind { kLeftHash, kSelfHash };
enum class KeyMode { kPublic, kPrivate };

struct SeedingScheme {
  HashKind kind = HashKind::kLeftHash;
  std::size_t window = 1;  // h
  KeyMode mode = KeyMode::kPublic;
  std::uint64_t salt = 0;  // only meaningful in public mode
  WatermarkKey key = WatermarkKey::public_salt(0);

  static SeedingScheme make_public(HashKind kind, std::size_t window, std::uint64_t salt = 0);
  static SeedingScheme make_private(HashKind kind, std::size_t window, WatermarkKey key);

  void validate() const;
};

struct WatermarkConfig {
  double gamma = 0.5;
  double delta = 2.0;  // +inf selects the hard red-list rule
  SeedingScheme scheme;
  std::size_t vocab_size = 0;

  bool hard() const;
  std::size_t green_size() const;
  void validate() const;
};

// A per-step green/red partition of the vocabulary.
class GreenMask {
 public:
  GreenMask() = default;
  explicit GreenMask(std::vector<std::uint8_t> bits);

  bool is_green(TokenId id) const { return bits_[id] != 0; }
  std::size_t size() const { return bits_.size(); }
  std::size_t green_count() const { return green_count_; }
  std::span<const std::uint8_t> bits() const { return bits_; }
  GreenMask complement() const;

  friend bool operator==(const GreenMask&, const GreenMask&) = default;

 private:
  std::vector<std::uint8_t> bits_;
  std::size_t green_count_ = 0;
};

// Plain SHA-256, the primitive behind the PRF.
std::array<std::uint8_t, 32> sha256(std::span<const std::uint8_t> bytes);

std::array<std::uint8_t, 32> prf_digest(PrfDomain domain, const WatermarkKey& key,
                                        std::span<const TokenId> tokens);
std::uint64_t prf64(PrfDomain domain, const WatermarkKey& key, std::span<const TokenId> tokens);

// Last h tokens of history, left-padded with kBosId when history is short.
std::vector<TokenId> seeding_window(std::span<const TokenId> history, std::size_t h);

// Seed for the LeftHash partition of the position following `context`.
// context.size() must equal scheme.window; shorter windows throw
// WindowUnderflow.
std::uint64_t compute_seed(std::span<const TokenId> context, const SeedingScheme& scheme);

// floor(gamma * vocab_size); throws ConfigError for gamma outside (0,1).
std::size_t green_list_size(double gamma, std::size_t vocab_size);

// Truncated forward Fisher-Yates over [0, vocab_size) driven by
// SeededRng(seed); the first green_list_size() drawn ids are green.
GreenMask partition_vocab(std::uint64_t seed, double gamma, std::size_t vocab_size);

struct SelfHashColor {
  bool green = false;
  std::size_t chosen_offset = 0;  // i*, in 1..h
  std::uint64_t seed = 0;         // H_{i*}
};

// Colors `candidate` from itself and the context token at offset i*, where
// i* = argmin_i PRF(candidate, context[h - i]) with ties going to the
// smallest offset. context holds the h previous tokens, oldest first.
SelfHashColor self_hash_color(TokenId candidate, std::span<const TokenId> context,
                              const SeedingScheme& scheme, double gamma);

// k masks (k even, gamma 0.5) such that every token is green in exactly k/2.
// Keys are randomly paired per context; each pair shares one partition and
// its complement.
std::vector<GreenMask> balanced_multikey_masks(std::span<const WatermarkKey> keys,
                                               std::span<const TokenId> context, double gamma,
                                               std::size_t vocab_size);

}  // namespace greenlist

#endif  // GREENLIST_VOCAB_PRF_H_
