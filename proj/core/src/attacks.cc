// Copyright 2026 The Greenlist Authors
// SPDX-License-Identifier: Apache-2.0

#include "greenlist/attacks.h"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "greenlist/errors.h"
#include "greenlist/rng.h"
#include "greenlist/stats.h"
#include "greenlist/vocab_prf.h"
#include "greenlist/warp.h"

namespace greenlist {

void AttackBudget::validate() const {
  if (!(epsilon >= 0.0 && epsilon <= 1.0)) throw ConfigError("epsilon must lie in [0, 1]");
}

std::size_t AttackBudget::edits(std::size_t t) const {
  validate();
  // The small slack keeps e.g. 0.3 * 200 from flooring to 59.
  return static_cast<std::size_t>(std::floor(epsilon * static_cast<double>(t) + 1e-9));
}

std::size_t AttackBudget::iteration_cap(std::size_t t) const {
  return max_iters != 0 ? max_iters : 4 * edits(t) + 16;
}

std::vector<TokenId> replay_edits(std::span<const TokenId> generated, std::span<const Edit> log) {
  std::vector<TokenId> out(generated.begin(), generated.end());
  for (const Edit& e : log) {
    switch (e.kind) {
      case EditKind::kReplace:
        if (e.position >= out.size() || out[e.position] != e.before) {
          throw DataError("edit log does not match the sequence");
        }
        out[e.position] = e.after;
        break;
      case EditKind::kInsert:
        if (e.position > out.size()) throw DataError("insert position out of range");
        out.insert(out.begin() + static_cast<std::ptrdiff_t>(e.position), e.after);
        break;
      case EditKind::kDelete:
        if (e.position >= out.size() || out[e.position] != e.before) {
          throw DataError("edit log does not match the sequence");
        }
        out.erase(out.begin() + static_cast<std::ptrdiff_t>(e.position));
        break;
    }
  }
  return out;
}

NGramOracle::NGramOracle(const NGramLM& lm, std::size_t candidates, std::size_t beam_width,
                         std::vector<TokenId> banned)
    : lm_(lm), candidates_(candidates), beam_width_(beam_width), banned_(std::move(banned)) {
  if (candidates_ == 0 || beam_width_ == 0) {
    throw ConfigError("oracle candidate count and beam width must be >= 1");
  }
  std::sort(banned_.begin(), banned_.end());
}

std::vector<Candidate> NGramOracle::propose(std::span<const TokenId> left,
                                            std::span<const TokenId> right,
                                            std::size_t span_length) const {
  if (span_length == 0) return {};
  const std::size_t ctx_len = lm_.order() > 0 ? lm_.order() - 1 : 0;
  auto tail = [ctx_len](const std::vector<TokenId>& v) {
    const std::size_t n = std::min(ctx_len, v.size());
    return std::vector<TokenId>(v.end() - static_cast<std::ptrdiff_t>(n), v.end());
  };
  std::vector<TokenId> left_tail(
      left.end() - static_cast<std::ptrdiff_t>(std::min(ctx_len, left.size())), left.end());

  std::vector<Candidate> beams{{{}, 0.0}};
  for (std::size_t step = 0; step < span_length; ++step) {
    std::vector<Candidate> next;
    for (const Candidate& b : beams) {
      std::vector<TokenId> ctx = left_tail;
      ctx.insert(ctx.end(), b.span.begin(), b.span.end());
      const LogitVector lp = lm_.next_logits(tail(ctx));
      std::vector<TokenId> ids;
      ids.reserve(lp.size());
      for (TokenId w = 0; w < lp.size(); ++w) {
        if (std::isfinite(lp[w]) && !std::binary_search(banned_.begin(), banned_.end(), w)) {
          ids.push_back(w);
        }
      }
      const std::size_t keep = std::min(beam_width_, ids.size());
      std::partial_sort(ids.begin(), ids.begin() + static_cast<std::ptrdiff_t>(keep), ids.end(),
                        [&lp](TokenId a, TokenId b) { return lp[a] > lp[b] || (lp[a] == lp[b] && a < b); });
      for (std::size_t k = 0; k < keep; ++k) {
        Candidate c = b;
        c.span.push_back(ids[k]);
        c.score += lp[ids[k]];
        next.push_back(std::move(c));
      }
    }
    const std::size_t keep = std::min(beam_width_, next.size());
    std::partial_sort(next.begin(), next.begin() + static_cast<std::ptrdiff_t>(keep), next.end(),
                      [](const Candidate& a, const Candidate& b) { return a.score > b.score; });
    next.resize(keep);
    beams = std::move(next);
  }

  // Right-context fit: the next order-1 tokens after the span.
  const std::size_t look = std::min(ctx_len, right.size());
  for (Candidate& c : beams) {
    std::vector<TokenId> ctx = left_tail;
    ctx.insert(ctx.end(), c.span.begin(), c.span.end());
    for (std::size_t j = 0; j < look; ++j) {
      c.score += lm_.log_prob(tail(ctx), right[j]);
      ctx.push_back(right[j]);
    }
  }
  std::stable_sort(beams.begin(), beams.end(),
                   [](const Candidate& a, const Candidate& b) { return a.score > b.score; });
  if (beams.size() > candidates_) beams.resize(candidates_);
  return beams;
}

AttackResult substitute_attack(const TokenSequence& tokens, const AttackBudget& budget,
                               const ReplacementOracle& oracle, std::uint64_t seed) {
  const std::size_t t = tokens.generated.size();
  const std::size_t target = budget.edits(t);
  const std::size_t cap = budget.iteration_cap(t);
  AttackResult result;
  result.attacked = tokens;
  if (target == 0) return result;

  SeededRng rng(seed);
  std::vector<TokenId>& gen = result.attacked.generated;
  std::vector<std::size_t> open(t);
  for (std::size_t i = 0; i < t; ++i) open[i] = i;
  std::size_t done = 0;
  while (done < target && result.iterations < cap && !open.empty()) {
    ++result.iterations;
    const std::size_t slot = static_cast<std::size_t>(rng.below(open.size()));
    const std::size_t pos = open[slot];
    std::vector<TokenId> left(tokens.prompt);
    left.insert(left.end(), gen.begin(), gen.begin() + static_cast<std::ptrdiff_t>(pos));
    std::span<const TokenId> right(gen.data() + pos + 1, t - pos - 1);
    std::vector<Candidate> cands;
    try {
      cands = oracle.propose(left, right, 1);
    } catch (const std::exception&) {
      ++result.oracle_failures;
      continue;
    }
    const auto best = std::find_if(cands.begin(), cands.end(), [&](const Candidate& c) {
      return c.span.size() == 1 && c.span[0] != gen[pos] && c.span[0] < tokens.vocab_size;
    });
    if (best == cands.end()) {
      ++result.oracle_failures;
      continue;
    }
    result.edits.push_back({EditKind::kReplace, pos, gen[pos], best->span[0]});
    gen[pos] = best->span[0];
    open[slot] = open.back();
    open.pop_back();
    ++done;
  }
  return result;
}

AttackResult insert_attack(const TokenSequence& tokens, const AttackBudget& budget,
                           const LmSource& source, std::uint64_t seed) {
  const std::size_t k = budget.edits(tokens.generated.size());
  AttackResult result;
  result.attacked = tokens;
  SeededRng rng(seed);
  std::vector<TokenId>& gen = result.attacked.generated;
  for (std::size_t n = 0; n < k; ++n) {
    ++result.iterations;
    const std::size_t pos = static_cast<std::size_t>(rng.below(gen.size() + 1));
    std::vector<TokenId> ctx(tokens.prompt);
    ctx.insert(ctx.end(), gen.begin(), gen.begin() + static_cast<std::ptrdiff_t>(pos));
    const ProbVector p = softmax(source.next_logits(ctx));
    double u = rng.uniform01();
    TokenId pick = static_cast<TokenId>(p.size() - 1);
    for (std::size_t w = 0; w < p.size(); ++w) {
      u -= p[w];
      if (u < 0.0) {
        pick = static_cast<TokenId>(w);
        break;
      }
    }
    gen.insert(gen.begin() + static_cast<std::ptrdiff_t>(pos), pick);
    result.edits.push_back({EditKind::kInsert, pos, 0, pick});
  }
  return result;
}

AttackResult delete_attack(const TokenSequence& tokens, const AttackBudget& budget,
                           std::size_t window, std::uint64_t seed) {
  const std::size_t t = tokens.generated.size();
  const std::size_t k = budget.edits(t);
  if (k > t || t - k < window + 1) {
    throw BudgetError("deleting " + std::to_string(k) + " of " + std::to_string(t) +
                      " tokens leaves fewer than h + 1");
  }
  AttackResult result;
  result.attacked = tokens;
  SeededRng rng(seed);
  std::vector<TokenId>& gen = result.attacked.generated;
  for (std::size_t n = 0; n < k; ++n) {
    ++result.iterations;
    const std::size_t pos = static_cast<std::size_t>(rng.below(gen.size()));
    result.edits.push_back({EditKind::kDelete, pos, gen[pos], 0});
    gen.erase(gen.begin() + static_cast<std::ptrdiff_t>(pos));
  }
  return result;
}

double worst_case_flip_z(std::size_t t, std::size_t flips, double gamma, std::size_t h) {
  const std::size_t removed = flips * (1 + h);
  const std::size_t green = removed >= t ? 0 : t - removed;
  return z_score(green, t, gamma);
}

namespace {

std::vector<TokenId> window_at(std::span<const TokenId> prompt, std::span<const TokenId> gen,
                               std::size_t pos, std::size_t h) {
  std::vector<TokenId> hist(prompt.begin(), prompt.end());
  hist.insert(hist.end(), gen.begin(), gen.begin() + static_cast<std::ptrdiff_t>(pos));
  return seeding_window(hist, h);
}

}  // namespace

AttackResult adversarial_flip_attack(const TokenSequence& tokens, const ColoringRule& rule,
                                     std::size_t flips) {
  const std::size_t h = rule.window();
  const std::size_t t = tokens.generated.size();
  if (flips * (h + 1) > t) {
    throw BudgetError("adversarial flips need (h + 1) * flips <= T");
  }
  AttackResult result;
  result.attacked = tokens;
  std::vector<TokenId>& gen = result.attacked.generated;
  for (std::size_t f = 0; f < flips; ++f) {
    const std::size_t pos = f * (h + 1);
    const std::vector<TokenId> own = window_at(tokens.prompt, gen, pos, h);
    const TokenId original = gen[pos];
    bool found = false;
    for (TokenId x = 0; x < rule.vocab_size() && !found; ++x) {
      ++result.iterations;
      if (x == original || rule.is_green(own, x)) continue;
      gen[pos] = x;
      bool all_red = true;
      for (std::size_t j = 1; j <= h && pos + j < t && all_red; ++j) {
        all_red = !rule.is_green(window_at(tokens.prompt, gen, pos + j, h), gen[pos + j]);
      }
      if (all_red) {
        found = true;
        result.edits.push_back({EditKind::kReplace, pos, original, x});
      } else {
        gen[pos] = original;
      }
    }
    if (!found) throw DataError("no replacement turns the whole window red");
  }
  return result;
}

Amplification amplification_factor(const ColoringRule& rule, std::size_t trials,
                                   std::uint64_t seed) {
  if (trials == 0) throw ConfigError("amplification needs at least one trial");
  const std::size_t h = rule.window();
  const std::size_t v = rule.vocab_size();
  SeededRng rng(seed);
  std::vector<TokenId> seq(2 * h + 1);
  double self = 0.0, down = 0.0;
  for (std::size_t trial = 0; trial < trials; ++trial) {
    for (std::size_t i = 0; i < h; ++i) seq[i] = static_cast<TokenId>(rng.below(v));
    for (std::size_t i = h; i <= 2 * h; ++i) {
      std::span<const TokenId> win(seq.data() + i - h, h);
      do {
        seq[i] = static_cast<TokenId>(rng.below(v));
      } while (!rule.is_green(win, seq[i]));
    }
    TokenId flipped;
    do {
      flipped = static_cast<TokenId>(rng.below(v));
    } while (flipped == seq[h]);
    seq[h] = flipped;
    if (!rule.is_green(std::span<const TokenId>(seq.data(), h), seq[h])) self += 1.0;
    for (std::size_t i = h + 1; i <= 2 * h; ++i) {
      if (!rule.is_green(std::span<const TokenId>(seq.data() + i - h, h), seq[i])) down += 1.0;
    }
  }
  Amplification a;
  a.trials = trials;
  a.self = self / static_cast<double>(trials);
  a.downstream = down / static_cast<double>(trials);
  a.total = a.self + a.downstream;
  return a;
}

TokenSequence interleave_strip_attack(const LmSource& lm, std::span<const TokenId> prompt,
                                      const PartitionRule& rule, double delta,
                                      std::size_t max_tokens, TokenId filler, std::uint64_t seed) {
  if (filler >= lm.vocab_size()) throw ConfigError("filler token outside the vocabulary");
  std::vector<TokenId> context(prompt.begin(), prompt.end());
  TokenSequence out;
  out.prompt.assign(prompt.begin(), prompt.end());
  out.vocab_size = lm.vocab_size();
  // Sampled fillers are stripped too; the cap keeps a filler-only model finite.
  for (std::size_t i = 0; out.generated.size() < max_tokens && i < 4 * max_tokens; ++i) {
    DecodeSpec spec;
    spec.strategy = Multinomial{derive_seed(seed, i)};
    spec.max_tokens = 1;
    const TokenSequence step = generate(lm, context, &rule, delta, spec);
    if (step.generated.empty()) break;
    context.push_back(step.generated[0]);
    if (step.generated[0] == filler) continue;
    out.generated.push_back(step.generated[0]);
    context.push_back(filler);
  }
  return out;
}

std::string attack_csv(std::span<const AttackRow> rows) {
  std::ostringstream os;
  os.precision(10);
  os << "seq_id,epsilon,z_before,z_after,edits,runtime_ms\n";
  for (const AttackRow& r : rows) {
    os << r.seq_id << ',' << r.epsilon << ',' << r.z_before << ',' << r.z_after << ','
       << r.edits << ',' << r.runtime_ms << '\n';
  }
  return os.str();
}

}  // namespace greenlist
