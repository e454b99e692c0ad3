#ifndef WITT_SELFCHECK_HPP
#define WITT_SELFCHECK_HPP

#include <string>

namespace witt {

struct SelfcheckResult {
  std::string report;
  bool passed = false;
};

/// Runs every property suite with generators derived from the seed.
/// The report is a pure function of the seed.
SelfcheckResult run_selfcheck(unsigned long long seed);

}  // namespace witt

#endif
