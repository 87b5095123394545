// Copyright 2026 The Greenlist Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef GREENLIST_ATTACKS_H_
#define GREENLIST_ATTACKS_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "greenlist/coloring.h"
#include "greenlist/generator.h"
#include "greenlist/lm_source.h"
#include "greenlist/ngram_lm.h"
#include "greenlist/types.h"

namespace greenlist {

struct AttackBudget {
  double epsilon = 0.1;       // fraction of T, in [0, 1]
  std::size_t max_iters = 0;  // 0 selects 4 * edits + 16
  void validate() const;
  std::size_t edits(std::size_t t) const;  // floor(epsilon * T)
  std::size_t iteration_cap(std::size_t t) const;
};

enum class EditKind { kReplace, kInsert, kDelete };

// position indexes the generated tokens as they stood when the edit was
// applied. before is unused for inserts, after for deletes.
struct Edit {
  EditKind kind = EditKind::kReplace;
  std::size_t position = 0;
  TokenId before = 0;
  TokenId after = 0;
  friend bool operator==(const Edit&, const Edit&) = default;
};

struct AttackResult {
  TokenSequence attacked;
  std::vector<Edit> edits;
  std::size_t iterations = 0;
  std::size_t oracle_failures = 0;
};

// Applies an edit log to the generated tokens. Throws DataError when a
// logged `before` token does not match.
std::vector<TokenId> replay_edits(std::span<const TokenId> generated, std::span<const Edit> log);

struct Candidate {
  std::vector<TokenId> span;
  double score = 0.0;  // higher is better
};

// Proposes fillers for a masked span given the text on either side.
class ReplacementOracle {
 public:
  virtual ~ReplacementOracle() = default;
  // Ranked best first; may be empty.
  virtual std::vector<Candidate> propose(std::span<const TokenId> left,
                                         std::span<const TokenId> right,
                                         std::size_t span_length) const = 0;
};

// Beam search over the n-gram model from the left context, then rescoring
// of the surviving beams by how well the right context follows them.
class NGramOracle final : public ReplacementOracle {
 public:
  NGramOracle(const NGramLM& lm, std::size_t candidates = 20, std::size_t beam_width = 50,
              std::vector<TokenId> banned = {0, 1});
  std::vector<Candidate> propose(std::span<const TokenId> left, std::span<const TokenId> right,
                                 std::size_t span_length) const override;

 private:
  const NGramLM& lm_;
  std::size_t candidates_;
  std::size_t beam_width_;
  std::vector<TokenId> banned_;
};

// Masks random not-yet-edited positions one at a time and splices in the
// oracle's best candidate that differs from the original, until
// floor(epsilon * T) replacements succeed or the iteration cap is reached.
// Oracle exceptions and empty proposals count as failed iterations.
AttackResult substitute_attack(const TokenSequence& tokens, const AttackBudget& budget,
                               const ReplacementOracle& oracle, std::uint64_t seed);

// Inserts floor(epsilon * T) tokens sampled from `source` at random
// positions.
AttackResult insert_attack(const TokenSequence& tokens, const AttackBudget& budget,
                           const LmSource& source, std::uint64_t seed);

// Deletes floor(epsilon * T) random tokens. Throws BudgetError when fewer
// than window + 1 tokens would remain.
AttackResult delete_attack(const TokenSequence& tokens, const AttackBudget& budget,
                           std::size_t window, std::uint64_t seed);

// z of a fully green length-T text after `flips` edits that each turn
// 1 + h tokens red, with the green count clamped at zero.
double worst_case_flip_z(std::size_t t, std::size_t flips, double gamma, std::size_t h);

// Knowing the key, replaces tokens at positions 0, h+1, 2(h+1), ... with
// tokens that are red themselves and make the next h tokens red. Throws
// BudgetError when flips * (h + 1) > T and DataError when no such
// replacement exists at some position.
AttackResult adversarial_flip_attack(const TokenSequence& tokens, const ColoringRule& rule,
                                     std::size_t flips);

struct Amplification {
  double self = 0.0;        // mean reds at the edited position
  double downstream = 0.0;  // mean reds among the next h positions
  double total = 0.0;
  std::size_t trials = 0;
};

// Monte Carlo on fully green random sequences: replace the first scored
// token by a different uniform token and count positions that turn red.
Amplification amplification_factor(const ColoringRule& rule, std::size_t trials,
                                   std::uint64_t seed);

// Watermarked decoding with `filler` forced after every sampled token, then
// removal of every filler occurrence, including ones the model sampled on
// its own. Each kept token was colored under a window holding fillers, so
// the stripped text is scored under unrelated windows.
TokenSequence interleave_strip_attack(const LmSource& lm, std::span<const TokenId> prompt,
                                      const PartitionRule& rule, double delta,
                                      std::size_t max_tokens, TokenId filler, std::uint64_t seed);

struct AttackRow {
  std::size_t seq_id = 0;
  double epsilon = 0.0;
  double z_before = 0.0;
  double z_after = 0.0;
  std::size_t edits = 0;
  double runtime_ms = 0.0;
};

std::string attack_csv(std::span<const AttackRow> rows);

}  // namespace greenlist

#endif  // GREENLIST_ATTACKS_H_
