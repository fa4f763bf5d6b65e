#ifndef VOA_CLI_HPP
#define VOA_CLI_HPP

// Command-line front end. Exit codes: 0 success, 1 verification failure,
// 2 usage or data error.

#include <ostream>
#include <string>
#include <vector>

namespace voa {

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerifyFailed = 1;
inline constexpr int kExitUsage = 2;

/// args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// VOA_MAX_WEIGHT, default 12.
int max_weight_from_env();

}  // namespace voa

#endif  // VOA_CLI_HPP
