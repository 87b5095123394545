// Copyright 2026 The Greenlist Authors
// SPDX-License-Identifier: Apache-2.0

#include "greenlist/grammar.h"

#include <array>
#include <cmath>
#include <span>
#include <string_view>

#include "greenlist/errors.h"
#include "greenlist/rng.h"

namespace greenlist {

namespace {

constexpr std::array<std::string_view, 10> kDeterminers = {
    "the", "a", "every", "some", "this", "that", "my", "our", "their", "one"};

constexpr std::array<std::string_view, 8> kPronouns = {
    "she", "he", "they", "we", "it", "someone", "everyone", "nobody"};

constexpr std::array<std::string_view, 24> kNames = {
    "Ada",    "Boris", "Celia", "Dmitri", "Elena",  "Farid", "Greta",  "Hugo",
    "Ines",   "Jonas", "Kira",  "Lars",   "Mina",   "Nils",  "Olga",   "Pablo",
    "Quinn",  "Rosa",  "Sven",  "Tara",   "Ulrich", "Vera",  "Walter", "Yara"};

constexpr std::array<std::string_view, 60> kAdjectives = {
    "old",      "young",    "quiet",   "bright",  "heavy",    "small",   "large",   "green",
    "distant",  "ancient",  "modern",  "careful", "strange",  "gentle",  "cold",    "warm",
    "silent",   "busy",     "empty",   "narrow",  "wide",     "golden",  "broken",  "hidden",
    "famous",   "tired",    "clever",  "curious", "patient",  "proud",   "simple",  "rare",
    "sudden",   "quick",    "slow",    "dark",    "pale",     "soft",    "sharp",   "bitter",
    "sweet",    "wooden",   "stone",   "silver",  "northern", "southern", "eastern", "western",
    "local",    "foreign",  "private", "public",  "secret",   "open",    "closed",  "early",
    "late",     "crowded",  "lonely",  "gray"};

constexpr std::array<std::string_view, 100> kNouns = {
    "river",     "city",      "garden",   "window",    "teacher",   "doctor",   "engine",
    "harbor",    "village",   "market",   "bridge",    "forest",    "mountain", "lighthouse",
    "library",   "letter",    "journey",  "station",   "kitchen",   "painter",  "sailor",
    "farmer",    "student",   "soldier",  "merchant",  "island",    "valley",   "castle",
    "tower",     "road",      "train",    "ship",      "horse",     "dog",      "cat",
    "bird",      "tree",      "flower",   "stone",     "cloud",     "storm",    "winter",
    "summer",    "morning",   "evening",  "night",     "bank", "field",   "school",
    "factory",   "museum",    "theater",  "hospital",  "office",    "shop",     "table",
    "chair",     "door",      "lamp",     "book",      "map",       "clock",    "coin",
    "key",       "box",       "bottle",   "song",      "story",     "picture",  "machine",
    "computer",  "question",  "answer",   "problem",   "idea",      "plan",     "friend",
    "stranger",  "child",     "king",     "queen",     "captain",   "musician", "writer",
    "baker",     "driver",    "pilot",    "scientist", "neighbor",  "guest",    "crowd",
    "family",    "council",   "company",  "army",      "festival",  "season",   "letterbox",
    "courtyard", "meadow"};

constexpr std::array<std::string_view, 60> kTransitive = {
    "found",     "carried",   "painted",  "watched",   "opened",    "closed",   "built",
    "visited",   "followed",  "repaired", "described", "remembered", "forgot",  "sold",
    "bought",    "borrowed",  "lifted",   "pushed",    "pulled",    "cleaned",  "measured",
    "studied",   "admired",   "ignored",  "protected", "crossed",   "entered",  "left",
    "noticed",   "heard",     "saw",      "wrote",     "read",      "sang",     "answered",
    "asked",     "greeted",   "helped",   "thanked",   "called",    "invited",  "welcomed",
    "guarded",   "explored",  "mapped",   "counted",   "signed",    "packed",   "delivered",
    "received",  "hid",       "showed",   "taught",    "drew",      "burned",   "planted",
    "harvested", "carved",    "polished", "replaced"};

constexpr std::array<std::string_view, 30> kIntransitive = {
    "slept",    "laughed",  "waited",   "arrived",  "departed", "vanished", "smiled",
    "wandered", "rested",   "shouted",  "listened", "danced",   "worked",   "trembled",
    "returned", "paused",   "whispered", "hesitated", "agreed", "disagreed", "collapsed",
    "recovered", "escaped", "sighed",   "stayed",   "grew",     "shone",    "fell",
    "rose",     "began"};

constexpr std::array<std::string_view, 30> kAdverbs = {
    "slowly",   "quickly",  "quietly",   "loudly",    "carefully", "suddenly", "gently",
    "rarely",   "often",    "again",     "together",  "alone",     "outside",  "inside",
    "early",    "later",    "today",     "yesterday", "happily",   "sadly",    "calmly",
    "bravely",  "eagerly",  "patiently", "secretly",  "openly",    "briefly",  "nearby",
    "anyway",   "finally"};

constexpr std::array<std::string_view, 15> kPrepositions = {
    "near", "behind", "under", "above", "beside", "across", "through", "inside", "beyond",
    "with", "without", "toward", "against", "around", "along"};

constexpr std::array<std::string_view, 10> kModals = {
    "could", "would", "should", "might", "must", "will", "can", "may", "did", "shall"};

constexpr std::array<std::string_view, 24> kBaseVerbs = {
    "find",  "carry", "paint", "watch", "open",  "build",  "visit", "follow",
    "fix",   "sell",  "buy",   "lift",  "clean", "study",  "cross", "enter",
    "hear",  "see",   "write", "read",  "ask",   "help",   "call",  "protect"};

constexpr std::array<std::string_view, 6> kConjunctions = {
    "and", "but", "while", "because", "although", "so"};

constexpr std::array<std::string_view, 12> kOpeners = {
    "Later", "Meanwhile", "Suddenly", "Afterwards", "Still", "Then",
    "Perhaps", "Often", "Today", "Yesterday", "Eventually", "Sometimes"};

class Builder {
 public:
  explicit Builder(std::uint64_t seed) : rng_(seed) {}

  std::string sentence() {
    out_.clear();
    const double u = rng_.uniform01();
    if (u < 0.15) {
      pick(kOpeners);
      emit(",");
      clause();
    } else if (u < 0.30) {
      clause();
      pick(kConjunctions);
      clause();
    } else {
      clause();
    }
    emit(".");
    return out_;
  }

 private:
  // Zipf-like weights 1 / (rank + 2) within a word class.
  template <std::size_t N>
  void pick(const std::array<std::string_view, N>& words) {
    double total = 0.0;
    for (std::size_t i = 0; i < N; ++i) total += 1.0 / static_cast<double>(i + 2);
    double u = rng_.uniform01() * total;
    for (std::size_t i = 0; i < N; ++i) {
      u -= 1.0 / static_cast<double>(i + 2);
      if (u < 0.0) {
        emit(words[i]);
        return;
      }
    }
    emit(words[N - 1]);
  }

  void emit(std::string_view w) {
    if (!out_.empty()) out_ += ' ';
    out_ += w;
  }

  void noun_phrase(int depth) {
    const double u = rng_.uniform01();
    if (u < 0.12) {
      pick(kPronouns);
      return;
    }
    if (u < 0.22) {
      pick(kNames);
      return;
    }
    pick(kDeterminers);
    const double a = rng_.uniform01();
    if (a < 0.45) pick(kAdjectives);
    if (a < 0.12) pick(kAdjectives);
    pick(kNouns);
    if (depth < 1 && rng_.uniform01() < 0.2) {
      pick(kPrepositions);
      noun_phrase(depth + 1);
    }
  }

  void verb_phrase() {
    const double u = rng_.uniform01();
    if (u < 0.45) {
      pick(kTransitive);
      noun_phrase(0);
    } else if (u < 0.65) {
      pick(kIntransitive);
      if (rng_.uniform01() < 0.4) pick(kAdverbs);
    } else if (u < 0.82) {
      pick(kTransitive);
      noun_phrase(1);
      pick(kPrepositions);
      noun_phrase(1);
    } else {
      pick(kModals);
      pick(kBaseVerbs);
      noun_phrase(0);
    }
  }

  void clause() {
    noun_phrase(0);
    verb_phrase();
  }

  SeededRng rng_;
  std::string out_;
};

}  // namespace

std::vector<std::string> grammar_sentences(std::uint64_t seed, std::size_t count) {
  Builder b(seed);
  std::vector<std::string> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(b.sentence());
  return out;
}

std::vector<std::string> grammar_corpus(std::uint64_t seed, std::size_t total_tokens,
                                        std::size_t tokens_per_doc) {
  if (tokens_per_doc == 0) throw ConfigError("tokens_per_doc must be >= 1");
  Builder b(seed);
  std::vector<std::string> docs;
  std::size_t produced = 0;
  while (produced < total_tokens) {
    std::string doc;
    std::size_t doc_tokens = 0;
    while (doc_tokens < tokens_per_doc) {
      const std::string s = b.sentence();
      doc_tokens += split_words(s).size();
      if (!doc.empty()) doc += ' ';
      doc += s;
    }
    produced += doc_tokens;
    docs.push_back(std::move(doc));
  }
  return docs;
}

ToyModel build_toy_model(const ToyModelSpec& spec) {
  std::vector<std::string> docs = grammar_corpus(spec.seed, spec.corpus_tokens);
  Vocabulary vocab = Vocabulary::build(docs);
  std::vector<std::vector<TokenId>> corpus;
  corpus.reserve(docs.size());
  for (const auto& d : docs) corpus.push_back(vocab.encode(d));
  NGramLM lm = NGramLM::train(corpus, vocab.size(), spec.order, spec.smoothing, Vocabulary::kEos);
  return ToyModel{std::move(vocab), std::move(lm), std::move(corpus)};
}

std::vector<std::vector<TokenId>> toy_prompts(const Vocabulary& vocab, std::uint64_t seed,
                                              std::size_t n, std::size_t length) {
  if (length == 0) throw ConfigError("prompt length must be >= 1");
  Builder b(derive_seed(seed, 0x70726f6d7074ULL));
  std::vector<std::vector<TokenId>> prompts;
  prompts.reserve(n);
  while (prompts.size() < n) {
    std::vector<TokenId> ids;
    while (ids.size() < length) {
      const auto more = vocab.encode(b.sentence());
      ids.insert(ids.end(), more.begin(), more.end());
    }
    ids.resize(length);
    prompts.push_back(std::move(ids));
  }
  return prompts;
}

}  // namespace greenlist
