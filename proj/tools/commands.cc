// Copyright 2026 The Greenlist Authors
// SPDX-License-Identifier: Apache-2.0

#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <memory>
#include <sstream>

#include "cli.h"
#include "greenlist/analysis.h"
#include "greenlist/attacks.h"
#include "greenlist/coloring.h"
#include "greenlist/errors.h"
#include "greenlist/experiment.h"
#include "greenlist/generator.h"
#include "greenlist/grammar.h"
#include "greenlist/ngram_lm.h"
#include "greenlist/normalize.h"
#include "greenlist/rng.h"
#include "greenlist/roc.h"
#include "greenlist/serialize.h"
#include "greenlist/warp.h"
#include "json.hpp"

namespace greenlist::cli {

using nlohmann::json;

namespace {

constexpr const char* kToolVersion = "0.1.0";

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot write '" + path + "'");
  out << content;
  if (!out) throw DataError("write to '" + path + "' failed");
}

// Writes to a file, or to stdout when path is empty or "-".
void emit(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
  } else {
    write_file(path, content);
  }
}

std::vector<std::string> read_lines(const std::string& path) {
  std::istringstream in(read_file(path));
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") != std::string::npos) lines.push_back(line);
  }
  return lines;
}

std::string sha256_hex(const std::string& s) {
  const auto d = sha256(std::span<const std::uint8_t>(
      reinterpret_cast<const std::uint8_t*>(s.data()), s.size()));
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  for (std::uint8_t b : d) {
    out.push_back(kDigits[b >> 4]);
    out.push_back(kDigits[b & 0xf]);
  }
  return out;
}

struct ModelOptions {
  std::string model = "toy";
  std::uint64_t model_seed = 1;
};

void add_model_options(CLI::App* cmd, ModelOptions& m) {
  cmd->add_option("--model", m.model, "\"toy\" or a model bundle written by `train`")
      ->capture_default_str();
  cmd->add_option("--model-seed", m.model_seed, "Grammar seed of the toy model")
      ->capture_default_str();
}

ModelBundle load_model(const ModelOptions& m) {
  if (m.model == "toy") {
    ToyModelSpec spec;
    spec.seed = m.model_seed;
    ToyModel toy = build_toy_model(spec);
    return ModelBundle{std::move(toy.vocab), std::move(toy.lm)};
  }
  return model_bundle_from_json(read_file(m.model));
}

json model_json(const ModelOptions& m) {
  json j = {{"model", m.model}};
  if (m.model == "toy") {
    j["model_seed"] = m.model_seed;
  } else {
    j["model_sha256"] = sha256_hex(read_file(m.model));
  }
  return j;
}

std::vector<std::vector<TokenId>> read_prompts(const std::string& path, const Vocabulary& vocab) {
  std::vector<std::vector<TokenId>> prompts;
  for (const std::string& line : read_lines(path)) {
    json j;
    try {
      j = json::parse(line);
    } catch (const json::exception& e) {
      throw DataError(std::string("prompts file: ") + e.what());
    }
    if (j.contains("prompt")) {
      prompts.push_back(j.at("prompt").get<std::vector<TokenId>>());
    } else if (j.contains("text")) {
      prompts.push_back(vocab.encode(j.at("text").get<std::string>()));
    } else {
      throw DataError("prompt lines need a \"prompt\" id list or a \"text\" string");
    }
  }
  if (prompts.empty()) throw DataError("prompts file '" + path + "' is empty");
  return prompts;
}

json argv_json(const CLI::App& app) {
  json args = json::array();
  args.push_back(app.get_name());
  for (const CLI::Option* opt : app.get_options()) {
    if (opt->count() == 0 || opt->get_name() == "--help") continue;
    for (const std::string& r : opt->results()) {
      args.push_back(opt->get_name());
      if (opt->get_expected_min() > 0) args.push_back(r);
    }
  }
  return args;
}

// ---------------------------------------------------------------- train

struct TrainArgs {
  std::string corpus;
  std::size_t grammar_tokens = 100000;
  std::uint64_t seed = 1;
  std::size_t order = 2;
  double smoothing = 0.01;
  std::size_t max_words = 0;
  std::size_t min_count = 1;
  double heldout = 0.1;
  std::string out;
};

// Blank-line separated paragraphs.
std::vector<std::string> split_documents(const std::string& text) {
  std::vector<std::string> docs;
  std::istringstream in(text);
  std::string line, cur;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) {
      if (!cur.empty()) docs.push_back(std::move(cur));
      cur.clear();
    } else {
      if (!cur.empty()) cur += ' ';
      cur += line;
    }
  }
  if (!cur.empty()) docs.push_back(std::move(cur));
  return docs;
}

void run_train(const TrainArgs& a) {
  std::vector<std::string> docs = a.corpus.empty() ? grammar_corpus(a.seed, a.grammar_tokens)
                                                   : split_documents(read_file(a.corpus));
  if (docs.empty()) throw DataError("training corpus is empty");
  if (!(a.heldout >= 0.0 && a.heldout < 1.0)) throw ConfigError("--heldout must lie in [0, 1)");
  const auto n_held = static_cast<std::size_t>(std::floor(a.heldout * docs.size()));
  const std::size_t n_train = docs.size() - n_held;
  if (n_train == 0) throw DataError("no training documents left after the held-out split");
  std::span<const std::string> train_docs(docs.data(), n_train);
  Vocabulary vocab = Vocabulary::build(train_docs, a.max_words, a.min_count);
  std::vector<std::vector<TokenId>> train, held;
  for (std::size_t i = 0; i < docs.size(); ++i) {
    (i < n_train ? train : held).push_back(vocab.encode(docs[i]));
  }
  NGramLM lm = NGramLM::train(train, vocab.size(), a.order, a.smoothing, Vocabulary::kEos);
  write_file(a.out, model_bundle_to_json(vocab, lm));
  std::cerr << "trained order-" << a.order << " model on " << n_train << " documents, vocab "
            << vocab.size();
  if (!held.empty()) std::cerr << ", held-out perplexity " << lm.perplexity(held);
  std::cerr << '\n';
}

// ------------------------------------------------------------- generate

struct GenerateArgs {
  std::string config;
  ModelOptions model;
  std::string prompts;
  std::size_t toy_prompts = 10;
  std::uint64_t prompt_seed = 7;
  std::size_t prompt_length = 8;
  std::size_t max_tokens = 200;
  std::string strategy = "multinomial";
  std::uint64_t seed = 0;
  double temperature = 1.0;
  bool temperature_after_boost = false;
  bool stop_at_eos = false;
  bool no_watermark = false;
  std::size_t threads = 0;
  std::string out;
  std::string manifest;
};

void run_generate(const GenerateArgs& a, const CLI::App& app) {
  const ModelBundle model = load_model(a.model);
  const WatermarkConfig config = config_from_json(read_file(a.config), model.vocab.size());
  if (config.vocab_size != model.vocab.size()) {
    throw ConfigError("config vocab_size " + std::to_string(config.vocab_size) +
                      " does not match the model's " + std::to_string(model.vocab.size()));
  }
  const auto prompts = a.prompts.empty()
                           ? toy_prompts(model.vocab, a.prompt_seed, a.toy_prompts, a.prompt_length)
                           : read_prompts(a.prompts, model.vocab);
  DecodeSpec spec;
  spec.strategy = parse_strategy(a.strategy);
  spec.max_tokens = a.max_tokens;
  spec.temperature = a.temperature;
  spec.temperature_after_boost = a.temperature_after_boost;
  if (a.stop_at_eos) spec.eos_id = Vocabulary::kEos;
  spec.validate();

  std::vector<TokenSequence> seqs;
  if (a.no_watermark) {
    seqs = generate_batch(model.lm, prompts, nullptr, 0.0, spec, a.seed, a.threads);
  } else if (config.scheme.kind == HashKind::kSelfHash) {
    seqs.resize(prompts.size());
    parallel_for(
        prompts.size(),
        [&](std::size_t i) { seqs[i] = generate_self_hash(model.lm, prompts[i], config, spec); },
        a.threads);
  } else {
    const LeftHashRule rule(config);
    seqs = generate_batch(model.lm, prompts, &rule, config.delta, spec, a.seed, a.threads);
  }

  const std::string fp = a.no_watermark ? std::string() : config_fingerprint(config);
  std::string body;
  for (const auto& s : seqs) body += sequence_to_json(s, fp) + "\n";
  write_file(a.out, body);

  json manifest = {{"tool", "greenlist"},
                   {"tool_version", kToolVersion},
                   {"prf_layout_version", kPrfLayoutVersion},
                   {"command", "generate"},
                   {"argv", argv_json(app)},
                   {"config", json::parse(config_to_json(config))},
                   {"config_fingerprint", config_fingerprint(config)},
                   {"watermark", !a.no_watermark},
                   {"seed", a.seed},
                   {"strategy", a.strategy},
                   {"max_tokens", a.max_tokens},
                   {"temperature", a.temperature},
                   {"n_sequences", seqs.size()},
                   {"output", a.out},
                   {"output_sha256", sha256_hex(body)}};
  manifest.update(model_json(a.model));
  if (a.prompts.empty()) {
    manifest["prompts"] = {{"toy", a.toy_prompts},
                           {"prompt_seed", a.prompt_seed},
                           {"prompt_length", a.prompt_length}};
  } else {
    manifest["prompts"] = {{"file", a.prompts}, {"sha256", sha256_hex(read_file(a.prompts))}};
  }
  write_file(a.manifest.empty() ? a.out + ".manifest.json" : a.manifest, manifest.dump(2) + "\n");
}

// --------------------------------------------------------------- detect

struct DetectArgs {
  std::string config;
  ModelOptions model;
  bool model_given = false;
  std::string in;
  std::string text;
  bool skip_repeated = false;
  std::size_t ngram_width = 0;
  bool no_prompt = false;
  double z_threshold = 4.0;
  bool canonicalize = false;
  std::string policy;
  std::string render = "none";
  std::string render_out;
  std::string out;
};

RenderMode parse_render(const std::string& s) {
  if (s == "none") return RenderMode::kNone;
  if (s == "ansi") return RenderMode::kAnsi;
  if (s == "html") return RenderMode::kHtml;
  throw ConfigError("--render must be none, ansi or html");
}

int run_detect(const DetectArgs& a) {
  std::optional<ModelBundle> model;
  if (a.model_given || !a.text.empty()) model = load_model(a.model);
  const RenderMode mode = parse_render(a.render);

  std::vector<SequenceRecord> records;
  if (a.text.empty()) {
    for (const std::string& line : read_lines(a.in)) records.push_back(sequence_from_json(line));
  }
  // Without a model the records supply the vocabulary size.
  std::size_t default_vocab = model ? model->vocab.size() : 0;
  if (default_vocab == 0 && !records.empty()) default_vocab = records.front().tokens.vocab_size;
  const WatermarkConfig config = config_from_json(read_file(a.config), default_vocab);
  const std::string fp = config_fingerprint(config);
  DetectorOptions opts;
  opts.skip_repeated_ngrams = a.skip_repeated;
  opts.ngram_width = a.ngram_width;
  opts.use_prompt = !a.no_prompt;
  opts.z_threshold = a.z_threshold;
  const auto rule = make_rule(config);

  if (!a.text.empty()) {
    std::string text = read_file(a.text);
    if (a.canonicalize) {
      const CanonicalizationPolicy policy =
          a.policy.empty() ? CanonicalizationPolicy::default_policy()
                           : CanonicalizationPolicy::from_json(read_file(a.policy));
      text = canonicalize(text, policy);
    }
    SequenceRecord r;
    r.tokens.generated = model->vocab.encode(text);
    r.tokens.vocab_size = model->vocab.size();
    records.push_back(std::move(r));
  }

  std::string reports;
  std::vector<std::string> rendered;
  bool any_empty = false;
  std::size_t mismatches = 0;
  for (const SequenceRecord& rec : records) {
    if (!rec.fingerprint.empty() && rec.fingerprint != fp) ++mismatches;
    if (rec.tokens.vocab_size != 0 && rec.tokens.vocab_size != config.vocab_size) {
      throw ConfigError("sequence vocab_size differs from the config's");
    }
    try {
      const DetectionReport rep = score(rec.tokens, *rule, opts);
      reports += report_to_json(rep) + "\n";
      rendered.push_back(render(rec.tokens, rep, model ? &model->vocab : nullptr, mode));
    } catch (const EmptyScoreError& e) {
      any_empty = true;
      reports += json({{"error", "empty"}, {"message", e.what()}}).dump() + "\n";
    }
  }
  if (mismatches > 0) {
    std::cerr << "warning: " << mismatches
              << " sequence(s) carry a config fingerprint different from " << fp << '\n';
  }
  emit(a.out, reports);
  if (mode == RenderMode::kHtml) {
    write_file(a.render_out.empty() ? "detect.html" : a.render_out, html_page(rendered));
  } else if (mode == RenderMode::kAnsi) {
    std::string all;
    for (const auto& r : rendered) all += r;
    if (a.render_out.empty()) {
      std::cerr << all;
    } else {
      write_file(a.render_out, all);
    }
  }
  return any_empty ? kExitEmpty : kExitOk;
}

// --------------------------------------------------------------- attack

struct AttackArgs {
  std::string config;
  ModelOptions model;
  std::string in;
  std::string kind = "substitute";
  std::vector<double> epsilons{0.1};
  std::uint64_t seed = 0;
  std::size_t candidates = 20;
  std::size_t beam = 50;
  std::string out;
  std::string csv;
};

void run_attack(const AttackArgs& a) {
  const ModelBundle model = load_model(a.model);
  const WatermarkConfig config = config_from_json(read_file(a.config), model.vocab.size());
  const auto rule = make_rule(config);
  const std::string fp = config_fingerprint(config);
  if (a.kind != "substitute" && a.kind != "insert" && a.kind != "delete") {
    throw ConfigError("--kind must be substitute, insert or delete");
  }
  const NGramOracle oracle(model.lm, a.candidates, a.beam);
  std::vector<SequenceRecord> records;
  for (const std::string& line : read_lines(a.in)) records.push_back(sequence_from_json(line));

  std::vector<AttackRow> rows;
  std::string attacked;
  for (double eps : a.epsilons) {
    const AttackBudget budget{eps, 0};
    budget.validate();
    for (std::size_t i = 0; i < records.size(); ++i) {
      const TokenSequence& seq = records[i].tokens;
      const std::uint64_t seed = derive_seed(a.seed, i);
      const auto t0 = std::chrono::steady_clock::now();
      AttackResult r;
      if (a.kind == "substitute") {
        r = substitute_attack(seq, budget, oracle, seed);
      } else if (a.kind == "insert") {
        r = insert_attack(seq, budget, model.lm, seed);
      } else {
        r = delete_attack(seq, budget, config.scheme.window, seed);
      }
      const double ms =
          std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
      AttackRow row;
      row.seq_id = i;
      row.epsilon = eps;
      row.z_before = score(seq, *rule).z;
      row.z_after = score(r.attacked, *rule).z;
      row.edits = r.edits.size();
      row.runtime_ms = ms;
      rows.push_back(row);
      attacked += sequence_to_json(r.attacked, fp) + "\n";
    }
  }
  if (!a.out.empty()) write_file(a.out, attacked);
  emit(a.csv, attack_csv(rows));
}

// --------------------------------------------------------------- bounds

struct BoundsArgs {
  double gamma = 0.5;
  double delta = 2.0;
  std::size_t t = 200;
  double spike_entropy = std::numeric_limits<double>::quiet_NaN();
  double z = 4.0;
  std::optional<double> empirical_mean;
  std::string measure;
  std::string config;
  ModelOptions model;
  std::string out;
};

void run_bounds(BoundsArgs a) {
  if (!a.measure.empty()) {
    // Measure S* and the green count on a generated run.
    if (a.config.empty()) throw ConfigError("--measure needs --config");
    const ModelBundle model = load_model(a.model);
    const WatermarkConfig config = config_from_json(read_file(a.config), model.vocab.size());
    const auto rule = make_rule(config);
    a.gamma = config.gamma;
    a.delta = config.delta;
    const double modulus = spike_modulus(a.gamma, a.delta);
    double s_sum = 0.0, green_sum = 0.0;
    std::size_t positions = 0, seqs = 0;
    for (const std::string& line : read_lines(a.measure)) {
      TokenSequence s = sequence_from_json(line).tokens;
      if (s.generated.size() > a.t) s.generated.resize(a.t);
      std::vector<TokenId> ctx = s.prompt;
      for (TokenId w : s.generated) {
        s_sum += spike_entropy(model.lm.next_probs(ctx), modulus);
        ++positions;
        ctx.push_back(w);
      }
      green_sum += static_cast<double>(score(s, *rule).green_count);
      ++seqs;
    }
    if (positions == 0) throw DataError("measured run holds no generated tokens");
    a.spike_entropy = s_sum / static_cast<double>(positions);
    a.empirical_mean = green_sum / static_cast<double>(seqs);
  }
  if (std::isnan(a.spike_entropy)) throw ConfigError("--spike-entropy or --measure is required");
  const BoundReport b = compute_bounds(a.gamma, a.delta, a.t, a.spike_entropy, a.z,
                                       a.empirical_mean);
  emit(a.out, bounds_to_json(b) + "\n");
}

// ---------------------------------------------------------------- sweep

struct SweepArgs {
  ModelOptions model;
  SweepGrid grid;
  std::size_t n = 100;
  std::size_t prompt_length = 8;
  std::uint64_t prompt_seed = 7;
  std::size_t threads = 0;
  std::string out;
  std::string roc_out;
};

void run_sweep_cmd(const SweepArgs& a) {
  const ModelBundle model = load_model(a.model);
  for (const auto& s : a.grid.strategies) parse_strategy(s);
  const auto prompts = toy_prompts(model.vocab, a.prompt_seed, a.n, a.prompt_length);
  std::vector<SweepScores> scores;
  const auto rows = run_sweep(model.lm, prompts, a.grid, a.threads, &scores);
  emit(a.out, sweep_csv(rows));
  if (!a.roc_out.empty()) {
    std::ostringstream os;
    os.precision(10);
    os << "gamma,delta,strategy,T,fpr,tpr\n";
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const RocCurve c = roc_curve(scores[i].watermarked, scores[i].plain);
      for (const RocPoint& p : c.points) {
        os << rows[i].gamma << ',' << rows[i].delta << ',' << rows[i].strategy << ','
           << rows[i].t << ',' << p.fpr << ',' << p.tpr << '\n';
      }
    }
    write_file(a.roc_out, os.str());
  }
}

// ------------------------------------------------------------- fixtures

struct FixtureArgs {
  std::string out_dir = ".";
  std::size_t cases = 32;
  std::uint64_t seed = 2026;
};

void run_fixtures(const FixtureArgs& a) {
  SeededRng rng(a.seed);
  json cases = json::array();
  const double deltas[] = {0.0, 0.5, 2.0, 5.0};
  for (std::size_t k = 0; k < a.cases; ++k) {
    WatermarkConfig c;
    c.vocab_size = 8 + static_cast<std::size_t>(rng.below(57));
    c.gamma = k % 2 == 0 ? 0.5 : 0.25;
    c.delta = deltas[k % 4];
    const std::size_t h = 1 + static_cast<std::size_t>(rng.below(3));
    if (k % 3 == 0) {
      std::vector<std::uint8_t> key(16);
      for (auto& b : key) b = static_cast<std::uint8_t>(rng.below(256));
      c.scheme = SeedingScheme::make_private(HashKind::kLeftHash, h, WatermarkKey(key));
    } else {
      c.scheme = SeedingScheme::make_public(HashKind::kLeftHash, h, rng.below(1000));
    }
    c.validate();
    std::vector<TokenId> context(h);
    for (auto& t : context) t = static_cast<TokenId>(rng.below(c.vocab_size));
    std::vector<double> logits(c.vocab_size);
    for (auto& l : logits) l = 6.0 * rng.uniform01() - 3.0;
    const GreenMask mask = LeftHashRule(c).mask(context);
    const ProbVector probs = soft_warp(logits, mask, c.delta);
    std::vector<TokenId> green;
    for (TokenId t = 0; t < c.vocab_size; ++t) {
      if (mask.is_green(t)) green.push_back(t);
    }
    cases.push_back({{"config", json::parse(config_to_json(c))},
                     {"config_fingerprint", config_fingerprint(c)},
                     {"seed", compute_seed(context, c.scheme)},
                     {"context", context},
                     {"logits", logits},
                     {"green", green},
                     {"probs", probs}});
  }
  json doc = {{"format", "greenlist-soft-warp-golden"},
              {"prf_layout_version", kPrfLayoutVersion},
              {"cases", cases}};
  write_file(a.out_dir + "/soft_warp_golden.json", doc.dump(1) + "\n");

  // Detection reports of a fixed short sequence under the first config.
  const WatermarkConfig c0 = config_from_json(cases[0]["config"].dump());
  TokenSequence seq;
  seq.prompt = {1, 2};
  for (TokenId i = 0; i < 24; ++i) seq.generated.push_back((i * 7 + 3) % c0.vocab_size);
  seq.vocab_size = c0.vocab_size;
  json reports = {{"config", json::parse(config_to_json(c0))},
                  {"config_fingerprint", config_fingerprint(c0)},
                  {"sequence", json::parse(sequence_to_json(seq, config_fingerprint(c0)))},
                  {"report", json::parse(report_to_json(score(seq, c0)))}};
  DetectorOptions skip;
  skip.skip_repeated_ngrams = true;
  reports["report_skip_repeated"] = json::parse(report_to_json(score(seq, c0, skip)));
  write_file(a.out_dir + "/report_golden.json", reports.dump(1) + "\n");
}

}  // namespace

void add_train(CLI::App& app) {
  auto a = std::make_shared<TrainArgs>();
  CLI::App* cmd = app.add_subcommand("train", "Train an n-gram model bundle");
  cmd->add_option("--corpus", a->corpus, "UTF-8 text, documents separated by blank lines");
  cmd->add_option("--grammar-tokens", a->grammar_tokens,
                  "Size of the synthetic grammar corpus used when --corpus is absent")
      ->capture_default_str();
  cmd->add_option("--seed", a->seed, "Grammar seed")->capture_default_str();
  cmd->add_option("--order", a->order)->capture_default_str();
  cmd->add_option("--smoothing", a->smoothing)->capture_default_str();
  cmd->add_option("--max-words", a->max_words, "0 keeps every word")->capture_default_str();
  cmd->add_option("--min-count", a->min_count)->capture_default_str();
  cmd->add_option("--heldout", a->heldout, "Fraction of documents held out for perplexity")
      ->capture_default_str();
  cmd->add_option("--out", a->out)->required();
  cmd->callback([a] { run_train(*a); });
}

void add_generate(CLI::App& app) {
  auto a = std::make_shared<GenerateArgs>();
  CLI::App* cmd = app.add_subcommand("generate", "Generate watermarked sequences as JSONL");
  cmd->add_option("--config", a->config, "Watermark config JSON")->required();
  add_model_options(cmd, a->model);
  cmd->add_option("--prompts", a->prompts, "JSONL with {\"prompt\": [ids]} or {\"text\": ...}");
  cmd->add_option("--toy-prompts", a->toy_prompts, "Number of grammar prompts without --prompts")
      ->capture_default_str();
  cmd->add_option("--prompt-seed", a->prompt_seed)->capture_default_str();
  cmd->add_option("--prompt-length", a->prompt_length)->capture_default_str();
  cmd->add_option("--max-tokens", a->max_tokens)->capture_default_str();
  cmd->add_option("--strategy", a->strategy, "multinomial, greedy or beam<width>")
      ->capture_default_str();
  cmd->add_option("--seed", a->seed)->capture_default_str();
  cmd->add_option("--temperature", a->temperature)->capture_default_str();
  cmd->add_flag("--temperature-after-boost", a->temperature_after_boost);
  cmd->add_flag("--stop-at-eos", a->stop_at_eos);
  cmd->add_flag("--no-watermark", a->no_watermark);
  cmd->add_option("--threads", a->threads, "0 uses every core")->capture_default_str();
  cmd->add_option("--out", a->out)->required();
  cmd->add_option("--manifest", a->manifest, "Defaults to <out>.manifest.json");
  cmd->callback([a, cmd] { run_generate(*a, *cmd); });
}

void add_detect(CLI::App& app) {
  auto a = std::make_shared<DetectArgs>();
  CLI::App* cmd = app.add_subcommand("detect", "Score sequences and report z, p and colors");
  cmd->add_option("--config", a->config)->required();
  auto* model_opt = cmd->add_option("--model", a->model.model, "Needed for --text and rendering");
  cmd->add_option("--model-seed", a->model.model_seed)->capture_default_str();
  auto* in = cmd->add_option("--in", a->in, "Sequences JSONL");
  auto* text = cmd->add_option("--text", a->text, "Raw UTF-8 text file");
  in->excludes(text);
  cmd->add_flag("--skip-repeated", a->skip_repeated, "Count each (h+1)-gram once");
  cmd->add_option("--ngram-width", a->ngram_width, "0 selects h+1")->capture_default_str();
  cmd->add_flag("--no-prompt", a->no_prompt, "Ignore the prompt when seeding");
  cmd->add_option("--z-threshold", a->z_threshold)->capture_default_str();
  cmd->add_flag("--canonicalize", a->canonicalize, "Normalize --text input first");
  cmd->add_option("--policy", a->policy, "Canonicalization policy JSON");
  cmd->add_option("--render", a->render, "none, ansi or html")->capture_default_str();
  cmd->add_option("--render-out", a->render_out);
  cmd->add_option("--out", a->out, "Report JSONL (stdout by default)");
  cmd->callback([a, cmd, model_opt] {
    if (a->in.empty() && a->text.empty()) throw ConfigError("detect needs --in or --text");
    a->model_given = model_opt->count() > 0;
    const int code = run_detect(*a);
    if (code != kExitOk) throw CLI::RuntimeError(code);
    (void)cmd;
  });
}

void add_attack(CLI::App& app) {
  auto a = std::make_shared<AttackArgs>();
  CLI::App* cmd = app.add_subcommand("attack", "Edit attacks on generated sequences");
  cmd->add_option("--config", a->config)->required();
  add_model_options(cmd, a->model);
  cmd->add_option("--in", a->in, "Sequences JSONL")->required();
  cmd->add_option("--kind", a->kind, "substitute, insert or delete")->capture_default_str();
  cmd->add_option("--epsilon", a->epsilons, "Budget as a fraction of T; repeatable")
      ->capture_default_str();
  cmd->add_option("--seed", a->seed)->capture_default_str();
  cmd->add_option("--candidates", a->candidates)->capture_default_str();
  cmd->add_option("--beam", a->beam)->capture_default_str();
  cmd->add_option("--out", a->out, "Attacked sequences JSONL");
  cmd->add_option("--csv", a->csv, "Per-sequence results (stdout by default)");
  cmd->callback([a] { run_attack(*a); });
}

void add_bounds(CLI::App& app) {
  auto a = std::make_shared<BoundsArgs>();
  auto emp = std::make_shared<double>(0.0);
  CLI::App* cmd = app.add_subcommand("bounds", "Closed-form detection bounds as JSON");
  cmd->add_option("--gamma", a->gamma)->capture_default_str();
  cmd->add_option("--delta", a->delta)->capture_default_str();
  cmd->add_option("--T", a->t)->capture_default_str();
  cmd->add_option("--spike-entropy", a->spike_entropy, "Average spike entropy S*");
  cmd->add_option("--z", a->z, "Detection threshold")->capture_default_str();
  auto* emp_opt = cmd->add_option("--empirical-mean", *emp, "Measured mean green count");
  cmd->add_option("--measure", a->measure, "Generated JSONL to measure S* and the green count on");
  cmd->add_option("--config", a->config, "Config of the measured run");
  add_model_options(cmd, a->model);
  cmd->add_option("--out", a->out);
  cmd->callback([a, emp, emp_opt] {
    if (emp_opt->count() > 0) a->empirical_mean = *emp;
    run_bounds(*a);
  });
}

void add_sweep(CLI::App& app) {
  auto a = std::make_shared<SweepArgs>();
  CLI::App* cmd = app.add_subcommand("sweep", "Grid of generation runs: z vs T, ROC, error rates");
  add_model_options(cmd, a->model);
  cmd->add_option("--gammas", a->grid.gammas)->delimiter(',')->capture_default_str();
  cmd->add_option("--deltas", a->grid.deltas)->delimiter(',')->capture_default_str();
  cmd->add_option("--strategies", a->grid.strategies)->delimiter(',')->capture_default_str();
  cmd->add_option("--lengths", a->grid.lengths)->delimiter(',')->capture_default_str();
  cmd->add_option("--window", a->grid.window)->capture_default_str();
  cmd->add_option("--salt", a->grid.salt)->capture_default_str();
  cmd->add_option("--seed", a->grid.seed)->capture_default_str();
  cmd->add_option("--z-threshold", a->grid.z_threshold)->capture_default_str();
  cmd->add_option("--n", a->n, "Sequences per cell")->capture_default_str();
  cmd->add_option("--prompt-length", a->prompt_length)->capture_default_str();
  cmd->add_option("--prompt-seed", a->prompt_seed)->capture_default_str();
  cmd->add_option("--threads", a->threads)->capture_default_str();
  cmd->add_option("--out", a->out, "Summary CSV (stdout by default)");
  cmd->add_option("--roc-out", a->roc_out, "ROC points CSV");
  cmd->callback([a] { run_sweep_cmd(*a); });
}

void add_fixtures(CLI::App& app) {
  auto a = std::make_shared<FixtureArgs>();
  CLI::App* cmd = app.add_subcommand(
      "fixtures", "Write golden soft-warp and report fixtures for cross-language parity tests");
  cmd->add_option("--out-dir", a->out_dir)->capture_default_str();
  cmd->add_option("--cases", a->cases)->capture_default_str();
  cmd->add_option("--seed", a->seed)->capture_default_str();
  cmd->callback([a] { run_fixtures(*a); });
}

}  // namespace greenlist::cli
