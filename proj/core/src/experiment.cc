// Copyright 2026 The Greenlist Authors
// SPDX-License-Identifier: Apache-2.0

#include "greenlist/experiment.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <sstream>
#include <thread>

#include "greenlist/errors.h"
#include "greenlist/rng.h"
#include "greenlist/roc.h"
#include "greenlist/vocab_prf.h"

namespace greenlist {

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn,
                  std::size_t threads) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min(threads, n);
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mu;
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (std::size_t w = 0; w < threads; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mu);
          if (!error) error = std::current_exception();
          next = n;
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

std::vector<TokenSequence> generate_batch(const LmSource& lm,
                                          std::span<const std::vector<TokenId>> prompts,
                                          const PartitionRule* rule, double delta,
                                          const DecodeSpec& base, std::uint64_t seed,
                                          std::size_t threads) {
  std::vector<TokenSequence> out(prompts.size());
  parallel_for(
      prompts.size(),
      [&](std::size_t i) {
        DecodeSpec spec = base;
        if (std::holds_alternative<Multinomial>(spec.strategy)) {
          spec.strategy = Multinomial{derive_seed(seed, i)};
        }
        out[i] = generate(lm, prompts[i], rule, delta, spec);
      },
      threads);
  return out;
}

double prefix_z(const TokenSequence& tokens, const ColoringRule& rule, std::size_t t,
                const DetectorOptions& opts) {
  TokenSequence cut = tokens;
  if (cut.generated.size() > t) cut.generated.resize(t);
  return score(cut, rule, opts).z;
}

Strategy parse_strategy(std::string_view name) {
  if (name == "multinomial") return Multinomial{};
  if (name == "greedy") return Greedy{};
  if (name.substr(0, 4) == "beam") {
    const std::string digits(name.substr(4));
    if (!digits.empty() && std::all_of(digits.begin(), digits.end(),
                                       [](char c) { return c >= '0' && c <= '9'; })) {
      Beam b;
      b.width = std::stoul(digits);
      return b;
    }
  }
  throw ConfigError("unknown strategy '" + std::string(name) +
                    "' (multinomial, greedy, beam<width>)");
}

std::string strategy_name(const Strategy& strategy) {
  if (std::holds_alternative<Multinomial>(strategy)) return "multinomial";
  if (std::holds_alternative<Greedy>(strategy)) return "greedy";
  return "beam" + std::to_string(std::get<Beam>(strategy).width);
}

std::vector<SweepRow> run_sweep(const LmSource& lm, std::span<const std::vector<TokenId>> prompts,
                                const SweepGrid& grid, std::size_t threads,
                                std::vector<SweepScores>* scores) {
  if (scores != nullptr) scores->clear();
  if (prompts.empty()) throw DataError("sweep needs at least one prompt");
  if (grid.lengths.empty()) throw ConfigError("sweep needs at least one length");
  const std::size_t t_max = *std::max_element(grid.lengths.begin(), grid.lengths.end());
  std::vector<SweepRow> rows;
  std::uint64_t cell = 0;
  for (double gamma : grid.gammas) {
    for (double delta : grid.deltas) {
      WatermarkConfig config;
      config.gamma = gamma;
      config.delta = delta;
      config.vocab_size = lm.vocab_size();
      config.scheme = SeedingScheme::make_public(HashKind::kLeftHash, grid.window, grid.salt);
      config.validate();
      const LeftHashRule rule(config);
      for (const std::string& sname : grid.strategies) {
        DecodeSpec spec;
        spec.strategy = parse_strategy(sname);
        spec.max_tokens = t_max;
        const std::uint64_t cell_seed = derive_seed(grid.seed, cell++);
        const auto marked = generate_batch(lm, prompts, &rule, delta, spec, cell_seed, threads);
        const auto plain = generate_batch(lm, prompts, nullptr, 0.0, spec,
                                          derive_seed(cell_seed, 0x6e756c6cULL), threads);
        for (std::size_t t : grid.lengths) {
          std::vector<double> zw(prompts.size()), zn(prompts.size());
          parallel_for(
              prompts.size(),
              [&](std::size_t i) {
                zw[i] = prefix_z(marked[i], rule, t);
                zn[i] = prefix_z(plain[i], rule, t);
              },
              threads);
          SweepRow row;
          row.gamma = gamma;
          row.delta = delta;
          row.strategy = sname;
          row.t = t;
          double sum = 0.0, sq = 0.0;
          for (double z : zw) sum += z;
          row.mean_z = sum / static_cast<double>(zw.size());
          for (double z : zw) sq += (z - row.mean_z) * (z - row.mean_z);
          row.std_z = zw.size() > 1 ? std::sqrt(sq / static_cast<double>(zw.size() - 1)) : 0.0;
          row.tpr = rate_above(zw, grid.z_threshold);
          row.fnr = 1.0 - row.tpr;
          row.fpr = rate_above(zn, grid.z_threshold);
          row.tnr = 1.0 - row.fpr;
          row.auc = roc_curve(zw, zn).auc;
          row.auc_se = auc_standard_error(row.auc, zw.size(), zn.size());
          rows.push_back(row);
          if (scores != nullptr) scores->push_back({std::move(zw), std::move(zn)});
        }
      }
    }
  }
  return rows;
}

std::string sweep_csv(std::span<const SweepRow> rows) {
  std::ostringstream os;
  os.precision(10);
  os << "gamma,delta,strategy,T,mean_z,std_z,tpr@z4,fnr@z4,fpr@z4,tnr@z4,auc,auc_se\n";
  for (const SweepRow& r : rows) {
    os << r.gamma << ',' << r.delta << ',' << r.strategy << ',' << r.t << ',' << r.mean_z << ','
       << r.std_z << ',' << r.tpr << ',' << r.fnr << ',' << r.fpr << ',' << r.tnr << ','
       << r.auc << ',' << r.auc_se << '\n';
  }
  return os.str();
}

}  // namespace greenlist
