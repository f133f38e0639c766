// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <string>

#include "symfeat/errors.hpp"

namespace symfeat::cli {

int run_detect(CLI::App& app);
int run_synth(CLI::App& app);
int run_eval(CLI::App& app);
int run_filters(CLI::App& app);
int run_bench(CLI::App& app);

void register_detect(CLI::App& app);
void register_synth(CLI::App& app);
void register_eval(CLI::App& app);
void register_filters(CLI::App& app);
void register_bench(CLI::App& app);

inline void ensure_outdir(const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory " + dir);
}

/// Honors the thread-count cap from the environment.
void apply_thread_env();

}  // namespace symfeat::cli
