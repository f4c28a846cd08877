#pragma once

#include <string>

#include "mixedp/config.hpp"

namespace mixedp {

// Exit codes shared by the library runner and the CLI wrapper.
inline constexpr int kExitOk = 0;
inline constexpr int kExitVerdictFailed = 1;
inline constexpr int kExitConfigError = 2;
inline constexpr int kExitInadmissibleMu = 3;
inline constexpr int kExitNoConvergence = 4;

// Runs one subcommand and writes results.csv and manifest.json into out_dir.
// Subcommands: hardy, eig1, eig2, fucik, faber-krahn, hks, nodal-check,
// check. Diagnostics go to stderr; returns one of the exit codes above.
int run_subcommand(const std::string& subcommand, RunConfig config, const std::string& out_dir);

}  // namespace mixedp
