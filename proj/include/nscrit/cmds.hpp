#pragma once

// Command entry points shared by the CLI binary and the tests. Each returns
// a process exit code:
//   0 run completed (or diagnostics/experiment finished)
//   2 run stopped on the blowup proxy
//   3 run stopped as underresolved
//   1 any error (bad config, bad input files, unknown experiment kind)
// Errors are reported on stderr; nothing is thrown across these boundaries.

#include <string>

namespace nscrit {

int cmd_run(const std::string& config_path, const std::string& outdir);
int cmd_diagnose(const std::string& config_path, const std::string& outdir);
int cmd_experiment(const std::string& kind, const std::string& config_path,
                   const std::string& outdir);

}  // namespace nscrit
