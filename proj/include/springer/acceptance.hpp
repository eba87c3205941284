#pragma once

#include <cstdint>
#include <ostream>

namespace springer {

struct AcceptanceOptions {
  uint64_t seed = 20240611;
  bool quick = false;  // GL4 at the smaller prime only
  int jobs = 1;
};

/** Runs criteria 1-7, one PASS/FAIL line each. True when all pass. */
bool run_acceptance(std::ostream& out, const AcceptanceOptions& opt);

}  // namespace springer
