#ifndef VOA_SUITES_HPP
#define VOA_SUITES_HPP

// Named verification suites shared by `voa verify` and the acceptance run.

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace voa {

struct SuiteResult {
  std::string name;
  std::string title;
  std::size_t passed = 0;
  std::size_t failed = 0;
  /// Instances exercised (randomized suites count each sampled input once).
  std::size_t instances = 0;
  /// First few failure descriptions.
  std::vector<std::string> failures;
  double seconds = 0;

  bool ok() const noexcept { return failed == 0 && passed > 0; }
};

/// In acceptance order.
const std::vector<std::string>& suite_names();
std::string suite_title(std::string_view name);

/// Throws UnknownSymbol for an unknown name.
SuiteResult run_suite(std::string_view name);

nlohmann::json to_json(const SuiteResult& r);

}  // namespace voa

#endif  // VOA_SUITES_HPP
