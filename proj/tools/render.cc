// Copyright 2026 The Greenlist Authors
// SPDX-License-Identifier: Apache-2.0

#include <sstream>

#include "cli.h"

namespace greenlist::cli {

namespace {

std::string html_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

std::string token_text(const Vocabulary* vocab, TokenId id) {
  return vocab != nullptr && id < vocab->size() ? vocab->token_string(id) : std::to_string(id);
}

const char* ansi_code(Color c) {
  switch (c) {
    case Color::kGreen: return "\x1b[32m";
    case Color::kRed: return "\x1b[31m";
    case Color::kSkipped: return "\x1b[2m";
    case Color::kUnscorable: return "\x1b[2;3m";
  }
  return "";
}

const char* css_class(Color c) {
  switch (c) {
    case Color::kGreen: return "g";
    case Color::kRed: return "r";
    case Color::kSkipped: return "s";
    case Color::kUnscorable: return "u";
  }
  return "";
}

}  // namespace

std::string render(const TokenSequence& tokens, const DetectionReport& report,
                   const Vocabulary* vocab, RenderMode mode) {
  if (mode == RenderMode::kNone) return {};
  std::ostringstream os;
  if (mode == RenderMode::kHtml) os << "<p>";
  bool first = true;
  auto sep = [&] {
    if (!first) os << ' ';
    first = false;
  };
  for (TokenId id : tokens.prompt) {
    sep();
    const std::string t = token_text(vocab, id);
    os << (mode == RenderMode::kHtml ? html_escape(t) : t);
  }
  if (mode == RenderMode::kHtml) os << " <span class=\"sep\">|</span>";
  for (std::size_t i = 0; i < tokens.generated.size(); ++i) {
    sep();
    const std::string t = token_text(vocab, tokens.generated[i]);
    const Color c = i < report.colors.size() ? report.colors[i] : Color::kUnscorable;
    if (mode == RenderMode::kAnsi) {
      os << ansi_code(c) << t << "\x1b[0m";
    } else {
      os << "<span class=\"" << css_class(c) << "\">" << html_escape(t) << "</span>";
    }
  }
  std::ostringstream summary;
  summary.precision(4);
  summary << "T=" << report.t_counted << " green=" << report.green_count
          << " z=" << report.z << " p=" << report.p_one_sided;
  if (mode == RenderMode::kHtml) {
    os << "</p>\n<p class=\"stats\">" << summary.str() << "</p>\n";
  } else {
    os << "\n  " << summary.str() << '\n';
  }
  return os.str();
}

std::string html_page(const std::vector<std::string>& bodies) {
  std::ostringstream os;
  os << "<!DOCTYPE html>\n<html><head><meta charset=\"utf-8\"><title>greenlist</title>\n"
     << "<style>body{font-family:monospace;max-width:60em}"
     << ".g{background:#c8f7c5}.r{background:#f7c5c5}.s{color:#999}.u{color:#999;"
     << "font-style:italic}.sep{color:#ccc}.stats{color:#555}</style></head><body>\n";
  for (const auto& b : bodies) os << b;
  os << "</body></html>\n";
  return os.str();
}

}  // namespace greenlist::cli
