// Copyright 2026 The Greenlist Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef GREENLIST_NORMALIZE_H_
#define GREENLIST_NORMALIZE_H_

#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace greenlist {

// Canonicalization applied to text before tokenizing it for detection.
// Steps run in order: homoglyph mapping, zero-width removal, whitespace
// collapse.
struct CanonicalizationPolicy {
  std::map<char32_t, char32_t> homoglyphs;
  bool strip_zero_width = true;
  bool collapse_whitespace = true;
  // Collapse runs holding a newline to a space too; when false such runs
  // become a single "\n".
  bool fold_newlines = true;

  // Latin lookalikes from Cyrillic and Greek plus every switch on.
  static CanonicalizationPolicy default_policy();
  // {"homoglyphs": {"U+0430": "U+0061", ...}, "strip_zero_width": true, ...}
  // Characters may also be given literally. Missing fields keep defaults.
  static CanonicalizationPolicy from_json(std::string_view json);
  std::string to_json() const;

  // Throws ConfigError when a target is itself remapped or removed, which
  // would break idempotence.
  void validate() const;
};

// Throws EncodingError on malformed UTF-8 or surrogate code points.
std::u32string decode_utf8(std::string_view text);
std::string encode_utf8(std::u32string_view text);

bool is_zero_width(char32_t c);
bool is_unicode_space(char32_t c);

std::string canonicalize(std::string_view text, const CanonicalizationPolicy& policy);

// Replaces roughly `rate` of the letters that have a lookalike in the
// policy's table with that lookalike. Deterministic in the seed.
std::string homoglyph_corrupt(std::string_view text, const CanonicalizationPolicy& policy,
                              double rate, unsigned long long seed);

}  // namespace greenlist

#endif  // GREENLIST_NORMALIZE_H_
