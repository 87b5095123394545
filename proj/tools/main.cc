// Copyright 2026 The Greenlist Authors
// SPDX-License-Identifier: Apache-2.0

#include <iostream>

#include "cli.h"
#include "greenlist/errors.h"

int main(int argc, char** argv) {
  using namespace greenlist;
  CLI::App app{"greenlist: green-list watermark generation, detection and analysis"};
  app.require_subcommand(1);
  cli::add_train(app);
  cli::add_generate(app);
  cli::add_detect(app);
  cli::add_attack(app);
  cli::add_bounds(app);
  cli::add_sweep(app);
  cli::add_fixtures(app);
  try {
    app.parse(argc, argv);
  } catch (const CLI::RuntimeError& e) {
    return e.get_exit_code();
  } catch (const CLI::Error& e) {
    const int code = app.exit(e);
    return code == 0 ? cli::kExitOk : cli::kExitConfig;
  } catch (const EmptyScoreError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return cli::kExitEmpty;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return cli::kExitConfig;
  } catch (const RangeError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return cli::kExitConfig;
  } catch (const BudgetError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return cli::kExitConfig;
  } catch (const SizeError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return cli::kExitConfig;
  } catch (const Error& e) {
    // DataError, SourceError, EncodingError, WindowUnderflow and I/O.
    std::cerr << "data error: " << e.what() << '\n';
    return cli::kExitData;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return cli::kExitFailure;
  }
  return cli::kExitOk;
}
