// Copyright 2026 The Greenlist Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef GREENLIST_TOOLS_CLI_H_
#define GREENLIST_TOOLS_CLI_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "greenlist/detector.h"
#include "greenlist/types.h"
#include "greenlist/vocabulary.h"

namespace greenlist::cli {

// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitData = 3;
inline constexpr int kExitEmpty = 4;

void add_train(CLI::App& app);
void add_generate(CLI::App& app);
void add_detect(CLI::App& app);
void add_attack(CLI::App& app);
void add_bounds(CLI::App& app);
void add_sweep(CLI::App& app);
void add_fixtures(CLI::App& app);

enum class RenderMode { kNone, kAnsi, kHtml };

// Colors each generated token; prompt tokens are printed plain.
std::string render(const TokenSequence& tokens, const DetectionReport& report,
                   const Vocabulary* vocab, RenderMode mode);
std::string html_page(const std::vector<std::string>& bodies);

}  // namespace greenlist::cli

#endif  // GREENLIST_TOOLS_CLI_H_
