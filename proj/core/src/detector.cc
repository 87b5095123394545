// Copyright 2026 The Greenlist Authors
// SPDX-License-Identifier: Apache-2.0

#include "greenlist/detector.h"

#include <cmath>
#include <set>

#include "greenlist/errors.h"
#include "greenlist/stats.h"

namespace greenlist {

DetectionReport score(const TokenSequence& tokens, const WatermarkConfig& config,
                      const DetectorOptions& opts) {
  return score(tokens, *make_rule(config), opts);
}

DetectionReport score(const TokenSequence& tokens, const ColoringRule& rule,
                      const DetectorOptions& opts) {
  const std::size_t h = rule.window();
  const std::size_t width = opts.ngram_width == 0 ? h + 1 : opts.ngram_width;
  if (width < 2) throw ConfigError("ngram_width must be >= 2");
  for (TokenId t : tokens.generated) {
    if (t >= rule.vocab_size()) throw DataError("token id outside the vocabulary");
  }

  std::vector<TokenId> history;
  if (opts.use_prompt) history = tokens.prompt;
  const std::size_t offset = history.size();
  history.insert(history.end(), tokens.generated.begin(), tokens.generated.end());

  DetectionReport report;
  report.gamma = rule.gamma();
  report.colors.resize(tokens.generated.size(), Color::kUnscorable);
  std::set<std::vector<TokenId>> seen;
  for (std::size_t t = 0; t < tokens.generated.size(); ++t) {
    const std::size_t pos = offset + t;
    if (!opts.use_prompt && t < h) continue;
    const std::span<const TokenId> before(history.data(), pos);
    const TokenId token = history[pos];
    if (opts.skip_repeated_ngrams) {
      std::vector<TokenId> gram = seeding_window(before, width - 1);
      gram.push_back(token);
      if (!seen.insert(std::move(gram)).second) {
        report.colors[t] = Color::kSkipped;
        continue;
      }
    }
    const bool green = rule.is_green(seeding_window(before, h), token);
    report.colors[t] = green ? Color::kGreen : Color::kRed;
    ++report.t_counted;
    if (green) ++report.green_count;
  }
  if (report.t_counted == 0) throw EmptyScoreError("no scorable tokens in sequence");
  report.z = z_score(report.green_count, report.t_counted, report.gamma);
  report.p_one_sided = p_value(report.z);
  report.log_p = log_normal_upper_tail(report.z);
  report.detected = report.z > opts.z_threshold;
  return report;
}

double p_value(double z) { return normal_upper_tail(z); }

MultiKeyResult multi_key_score(const TokenSequence& tokens, std::span<const WatermarkConfig> configs,
                               double alpha, const DetectorOptions& opts) {
  std::vector<std::shared_ptr<const ColoringRule>> rules;
  rules.reserve(configs.size());
  for (const auto& c : configs) rules.push_back(make_rule(c));
  return multi_key_score(tokens, rules, alpha, opts);
}

MultiKeyResult multi_key_score(const TokenSequence& tokens,
                               std::span<const std::shared_ptr<const ColoringRule>> rules,
                               double alpha, const DetectorOptions& opts) {
  if (rules.empty()) throw ConfigError("multi-key scoring needs at least one key");
  if (!(alpha > 0.0 && alpha < 1.0)) throw ConfigError("alpha must lie in (0, 1)");
  MultiKeyResult out;
  out.corrected_alpha = alpha / static_cast<double>(rules.size());
  for (const auto& rule : rules) {
    out.reports.push_back(score(tokens, *rule, opts));
    if (out.reports.back().p_one_sided <= out.corrected_alpha) out.rejected = true;
  }
  return out;
}

double null_false_positive_rate(std::size_t t, double gamma, FprMode mode, double z_threshold) {
  if (t < 1) throw ConfigError("T must be >= 1");
  if (!(gamma > 0.0 && gamma < 1.0)) throw ConfigError("gamma must lie in (0, 1)");
  if (mode == FprMode::kHardPerfect) return std::pow(gamma, static_cast<double>(t));
  return p_value(z_threshold);
}

double exact_null_false_positive_rate(std::size_t t, double gamma, double z_threshold) {
  if (t < 1) throw ConfigError("T must be >= 1");
  // Smallest green count whose z strictly exceeds the threshold.
  const double tt = static_cast<double>(t);
  const double cutoff = gamma * tt + z_threshold * std::sqrt(tt * gamma * (1.0 - gamma));
  std::size_t c = cutoff < 0.0 ? 0 : static_cast<std::size_t>(std::floor(cutoff));
  while (c <= t && z_score(c, t, gamma) <= z_threshold) ++c;
  return binomial_upper_tail(t, gamma, c);
}

std::string run_length_colors(std::span<const Color> colors) {
  std::string out;
  std::size_t i = 0;
  while (i < colors.size()) {
    std::size_t j = i;
    while (j < colors.size() && colors[j] == colors[i]) ++j;
    switch (colors[i]) {
      case Color::kGreen: out += 'G'; break;
      case Color::kRed: out += 'R'; break;
      case Color::kSkipped: out += 'S'; break;
      case Color::kUnscorable: out += 'U'; break;
    }
    out += std::to_string(j - i);
    i = j;
  }
  return out;
}

}  // namespace greenlist
