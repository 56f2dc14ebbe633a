#pragma once

// Built-in identity and oracle checks, run by `mvproj selftest`.

#include <cstdint>
#include <string>
#include <vector>

namespace mvproj {

struct SelfTestResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

std::vector<SelfTestResult> run_selftest(std::uint64_t seed);

}  // namespace mvproj
