#pragma once

#include <ostream>
#include <string>

namespace gqd {

struct VerifyOptions {
  std::string suite = "all";  // "oracle", "invariants", or "all"
  int samples = 20;
  unsigned seed = 12345;
};

// Runs the oracle-agreement and invariant suites over random model states,
// printing one line per check. Returns true when everything passed.
bool run_verification(const VerifyOptions& opt, std::ostream& os);

}  // namespace gqd
