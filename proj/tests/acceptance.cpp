// Runs every acceptance criterion and prints one PASS/FAIL line each.
// Exit status is 0 only when all pass.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <string_view>

#include "amenable.hpp"

int main(int argc, char** argv)
{
  amenable::SuiteOptions options;
  options.mode = amenable::SuiteMode::full;
  for (int i = 1; i + 1 < argc; i += 2) {
    std::string_view flag = argv[i];
    if (flag == "--suite")
      options.mode = amenable::parse_suite_mode(argv[i + 1]);
    else if (flag == "--seed")
      options.seed = std::strtoull(argv[i + 1], nullptr, 10);
    else if (flag == "--threads")
      amenable::set_scan_threads(static_cast<unsigned>(std::atoi(argv[i + 1])));
  }

  auto last = std::chrono::steady_clock::now();
  auto report = amenable::run_suite(options, [&](const amenable::CriterionResult& r) {
    auto now = std::chrono::steady_clock::now();
    double secs = std::chrono::duration<double>(now - last).count();
    last = now;
    std::printf("%s  criterion %2d  %-24s (%.1f s)\n", r.passed ? "PASS" : "FAIL", r.id, r.name.c_str(), secs);
    if (!r.passed)
      std::printf("      %s\n", r.detail.dump().c_str());
    std::fflush(stdout);
  });
  std::printf("%zu/%zu criteria passed\n", report.results.size() - report.failing().size(), report.results.size());
  return report.passed() ? 0 : 1;
}
