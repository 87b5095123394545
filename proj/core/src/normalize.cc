// Copyright 2026 The Greenlist Authors
// SPDX-License-Identifier: Apache-2.0

#include "greenlist/normalize.h"

#include <cstdio>
#include <cstdlib>

#include "greenlist/errors.h"
#include "greenlist/rng.h"
#include "json.hpp"

namespace greenlist {

using nlohmann::json;

std::u32string decode_utf8(std::string_view text) {
  std::u32string out;
  out.reserve(text.size());
  std::size_t i = 0;
  while (i < text.size()) {
    const auto b0 = static_cast<unsigned char>(text[i]);
    std::size_t len;
    char32_t cp;
    if (b0 < 0x80) {
      len = 1;
      cp = b0;
    } else if ((b0 & 0xe0) == 0xc0) {
      len = 2;
      cp = b0 & 0x1f;
    } else if ((b0 & 0xf0) == 0xe0) {
      len = 3;
      cp = b0 & 0x0f;
    } else if ((b0 & 0xf8) == 0xf0) {
      len = 4;
      cp = b0 & 0x07;
    } else {
      throw EncodingError("invalid UTF-8 lead byte at offset " + std::to_string(i));
    }
    if (i + len > text.size()) throw EncodingError("truncated UTF-8 sequence");
    for (std::size_t k = 1; k < len; ++k) {
      const auto b = static_cast<unsigned char>(text[i + k]);
      if ((b & 0xc0) != 0x80) throw EncodingError("invalid UTF-8 continuation byte");
      cp = (cp << 6) | (b & 0x3f);
    }
    static constexpr char32_t kMin[] = {0, 0, 0x80, 0x800, 0x10000};
    if (cp < kMin[len]) throw EncodingError("overlong UTF-8 encoding");
    if (cp > 0x10ffff || (cp >= 0xd800 && cp <= 0xdfff)) {
      throw EncodingError("UTF-8 encodes an invalid code point");
    }
    out.push_back(cp);
    i += len;
  }
  return out;
}

std::string encode_utf8(std::u32string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char32_t c : text) {
    if (c > 0x10ffff || (c >= 0xd800 && c <= 0xdfff)) {
      throw EncodingError("cannot encode an invalid code point");
    }
    if (c < 0x80) {
      out.push_back(static_cast<char>(c));
    } else if (c < 0x800) {
      out.push_back(static_cast<char>(0xc0 | (c >> 6)));
      out.push_back(static_cast<char>(0x80 | (c & 0x3f)));
    } else if (c < 0x10000) {
      out.push_back(static_cast<char>(0xe0 | (c >> 12)));
      out.push_back(static_cast<char>(0x80 | ((c >> 6) & 0x3f)));
      out.push_back(static_cast<char>(0x80 | (c & 0x3f)));
    } else {
      out.push_back(static_cast<char>(0xf0 | (c >> 18)));
      out.push_back(static_cast<char>(0x80 | ((c >> 12) & 0x3f)));
      out.push_back(static_cast<char>(0x80 | ((c >> 6) & 0x3f)));
      out.push_back(static_cast<char>(0x80 | (c & 0x3f)));
    }
  }
  return out;
}

bool is_zero_width(char32_t c) {
  return (c >= 0x200b && c <= 0x200d) || c == 0x2060 || c == 0xfeff;
}

bool is_unicode_space(char32_t c) {
  return c == ' ' || (c >= 0x09 && c <= 0x0d) || c == 0x85 || c == 0xa0 || c == 0x1680 ||
         (c >= 0x2000 && c <= 0x200a) || c == 0x2028 || c == 0x2029 || c == 0x202f ||
         c == 0x205f || c == 0x3000;
}

CanonicalizationPolicy CanonicalizationPolicy::default_policy() {
  CanonicalizationPolicy p;
  p.homoglyphs = {
      // Cyrillic lowercase
      {U'а', U'a'}, {U'е', U'e'}, {U'о', U'o'}, {U'р', U'p'},
      {U'с', U'c'}, {U'у', U'y'}, {U'х', U'x'}, {U'ѕ', U's'},
      {U'і', U'i'}, {U'ј', U'j'}, {U'ԁ', U'd'}, {U'һ', U'h'},
      {U'ѡ', U'w'}, {U'ԛ', U'q'},
      // Cyrillic uppercase
      {U'А', U'A'}, {U'В', U'B'}, {U'Е', U'E'}, {U'К', U'K'},
      {U'М', U'M'}, {U'Н', U'H'}, {U'О', U'O'}, {U'Р', U'P'},
      {U'С', U'C'}, {U'Т', U'T'}, {U'Х', U'X'}, {U'Ѕ', U'S'},
      {U'І', U'I'}, {U'Ј', U'J'}, {U'Ү', U'Y'},
      // Greek
      {U'Α', U'A'}, {U'Β', U'B'}, {U'Ε', U'E'}, {U'Ζ', U'Z'},
      {U'Η', U'H'}, {U'Ι', U'I'}, {U'Κ', U'K'}, {U'Μ', U'M'},
      {U'Ν', U'N'}, {U'Ο', U'O'}, {U'Ρ', U'P'}, {U'Τ', U'T'},
      {U'Υ', U'Y'}, {U'Χ', U'X'}, {U'ο', U'o'}, {U'ν', U'v'},
      {U'α', U'a'}, {U'ι', U'i'}, {U'κ', U'k'},
  };
  return p;
}

namespace {

char32_t parse_char(const std::string& s) {
  if (s.size() > 2 && (s[0] == 'U' || s[0] == 'u') && s[1] == '+') {
    char* end = nullptr;
    const unsigned long v = std::strtoul(s.c_str() + 2, &end, 16);
    if (*end != '\0' || v > 0x10ffff) throw ConfigError("bad code point '" + s + "'");
    return static_cast<char32_t>(v);
  }
  const std::u32string d = decode_utf8(s);
  if (d.size() != 1) throw ConfigError("homoglyph entries must be single characters: '" + s + "'");
  return d[0];
}

std::string code_point_name(char32_t c) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "U+%04X", static_cast<unsigned>(c));
  return buf;
}

}  // namespace

CanonicalizationPolicy CanonicalizationPolicy::from_json(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("policy JSON: ") + e.what());
  }
  CanonicalizationPolicy p = default_policy();
  try {
    if (j.contains("homoglyphs")) {
      p.homoglyphs.clear();
      for (const auto& [from, to] : j.at("homoglyphs").items()) {
        p.homoglyphs[parse_char(from)] = parse_char(to.get<std::string>());
      }
    }
    if (j.contains("strip_zero_width")) p.strip_zero_width = j.at("strip_zero_width").get<bool>();
    if (j.contains("collapse_whitespace")) {
      p.collapse_whitespace = j.at("collapse_whitespace").get<bool>();
    }
    if (j.contains("fold_newlines")) p.fold_newlines = j.at("fold_newlines").get<bool>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("policy JSON: ") + e.what());
  }
  p.validate();
  return p;
}

std::string CanonicalizationPolicy::to_json() const {
  json map = json::object();
  for (auto [from, to] : homoglyphs) map[code_point_name(from)] = code_point_name(to);
  json j = {{"homoglyphs", map},
            {"strip_zero_width", strip_zero_width},
            {"collapse_whitespace", collapse_whitespace},
            {"fold_newlines", fold_newlines}};
  return j.dump(2);
}

void CanonicalizationPolicy::validate() const {
  for (auto [from, to] : homoglyphs) {
    if (from == to) continue;
    if (homoglyphs.count(to) != 0 && homoglyphs.at(to) != to) {
      throw ConfigError("homoglyph target " + code_point_name(to) + " is itself remapped");
    }
    if (strip_zero_width && is_zero_width(to)) {
      throw ConfigError("homoglyph target " + code_point_name(to) + " is a zero-width character");
    }
  }
}

std::string canonicalize(std::string_view text, const CanonicalizationPolicy& policy) {
  const std::u32string in = decode_utf8(text);
  std::u32string out;
  out.reserve(in.size());
  bool in_space = false;
  bool run_has_newline = false;
  auto flush_space = [&] {
    if (!in_space) return;
    out.push_back(!policy.fold_newlines && run_has_newline ? U'\n' : U' ');
    in_space = false;
    run_has_newline = false;
  };
  for (char32_t c : in) {
    if (auto it = policy.homoglyphs.find(c); it != policy.homoglyphs.end()) c = it->second;
    if (policy.strip_zero_width && is_zero_width(c)) continue;
    if (policy.collapse_whitespace && is_unicode_space(c)) {
      in_space = true;
      if (c == U'\n' || c == U'\r' || c == 0x2028 || c == 0x2029 || c == 0x85) {
        run_has_newline = true;
      }
      continue;
    }
    flush_space();
    out.push_back(c);
  }
  flush_space();
  return encode_utf8(out);
}

std::string homoglyph_corrupt(std::string_view text, const CanonicalizationPolicy& policy,
                              double rate, unsigned long long seed) {
  std::map<char32_t, std::vector<char32_t>> lookalikes;
  for (auto [from, to] : policy.homoglyphs) {
    if (from != to) lookalikes[to].push_back(from);
  }
  SeededRng rng(seed);
  std::u32string s = decode_utf8(text);
  for (char32_t& c : s) {
    auto it = lookalikes.find(c);
    if (it == lookalikes.end()) continue;
    if (rng.uniform01() < rate) c = it->second[rng.below(it->second.size())];
  }
  return encode_utf8(s);
}

}  // namespace greenlist
