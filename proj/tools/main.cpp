// SPDX-License-Identifier: Apache-2.0
#include <cstdio>
#include <cstdlib>

#include "cli_common.hpp"
#include "symfeat/version.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace symfeat::cli {

void apply_thread_env() {
#ifdef _OPENMP
  if (const char* env = std::getenv("SYMFEAT_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) omp_set_num_threads(n);
  }
#endif
}

}  // namespace symfeat::cli

int main(int argc, char** argv) {
  CLI::App app{"symfeat: edge, ridge, and blob detection with symmetric "
               "multiscale filter banks"};
  app.set_version_flag("--version", symfeat::kVersion);
  app.require_subcommand(1);

  symfeat::cli::register_detect(app);
  symfeat::cli::register_synth(app);
  symfeat::cli::register_eval(app);
  symfeat::cli::register_filters(app);
  symfeat::cli::register_bench(app);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  } catch (const symfeat::UsageError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  } catch (const symfeat::IoError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const symfeat::NumericError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  }
  return 0;
}
