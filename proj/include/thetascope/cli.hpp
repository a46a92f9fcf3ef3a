// Command-line front end.  Every operation is exposed as a subcommand with
// machine-readable JSON (or CSV) output.
//
// Exit codes: 0 success, 2 certification contract failure, 3 numerical
// inconclusiveness, 64 usage error.
#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace thetascope::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitContractFailure = 2;
inline constexpr int kExitInconclusive = 3;
inline constexpr int kExitUsage = 64;

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace thetascope::cli
