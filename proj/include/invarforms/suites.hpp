#pragma once

#include "invarforms/feasibility.hpp"
#include "invarforms/report.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace invarforms {

struct SuiteOptions {
  std::uint64_t seed = 42;
  int budget = 10000;
  bool timings = false;  // off: runtime_ms stays 0 so reports are byte-stable
  unsigned threads = 0;  // 0: thread_cap()
};

/// surfaces, nilmanifolds6, solvclasses, nakamura, lefschetz, cohomology.
const std::vector<std::string>& suite_names();

/// Runs a suite ("all" runs every suite in order). Records are computed
/// concurrently and reported in their fixed order. Throws
/// std::invalid_argument for an unknown name.
Report run_suite(const std::string& name, const SuiteOptions& opt = {});

/// Worker cap shared with the library: INVARFORMS_THREADS or the hardware count.
unsigned thread_cap();

nlohmann::json witness_json(const Witness& w);

}  // namespace invarforms
