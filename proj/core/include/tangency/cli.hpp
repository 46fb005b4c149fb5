#pragma once

#include <ostream>

namespace tangency {

// Exit codes shared by every subcommand.
constexpr int kExitOk = 0;
constexpr int kExitAuditFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitPrecondition = 3;

// Subcommands: generate, analyze, oracle-check, transform, charge,
// pipeline-rt. Normal output goes to `out`, diagnostics to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace tangency
