#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace revmc::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerdictFailed = 1;
inline constexpr int kExitInputError = 2;

/// Runs one command line (without the program name). Reports go to `out`,
/// diagnostics to `err`. Returns 0 on success, 1 when a checked inequality or
/// cross-check fails (or the chain is not variance bounding where that is
/// required), 2 on malformed input.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace revmc::cli
