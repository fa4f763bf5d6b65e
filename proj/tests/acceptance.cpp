// Runs the acceptance criteria in order and prints one PASS/FAIL line each.
// Optional arguments restrict the run to the listed criterion numbers.

#include <cstdlib>
#include <iostream>
#include <set>
#include <string>

#include "voa/suites.hpp"

int main(int argc, char** argv) {
  std::set<std::size_t> only;
  for (int i = 1; i < argc; ++i) only.insert(static_cast<std::size_t>(std::strtoul(argv[i], nullptr, 10)));

  const auto& names = voa::suite_names();
  int failed = 0;
  for (std::size_t c = 1; c <= names.size(); ++c) {
    if (!only.empty() && !only.count(c)) continue;
    const voa::SuiteResult r = voa::run_suite(names[c - 1]);
    std::cout << (r.ok() ? "PASS" : "FAIL") << " criterion " << c << ": " << r.title << " (" << r.passed << "/"
              << r.passed + r.failed << " checks, " << r.instances << " instances, " << r.seconds << " s)\n";
    for (const auto& f : r.failures) std::cout << "  " << f << "\n";
    failed += r.ok() ? 0 : 1;
  }
  return failed == 0 ? 0 : 1;
}
