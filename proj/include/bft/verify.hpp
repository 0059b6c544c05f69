#ifndef BFT_VERIFY_HPP
#define BFT_VERIFY_HPP

// Invariant suites runnable from the command line.

#include <string>
#include <vector>

namespace bft {

struct CheckResult {
  std::string suite;
  std::string name;
  bool passed = false;
  std::string detail;
};

struct VerifyOptions {
  std::string suite = "all";  // oracle | exact | markov | interlacing | all
  unsigned max_n = 0;         // 0 = suite default
  bool quick = false;
  bool inject_failure = false;  // append a check that always fails
};

/// Throws std::invalid_argument for an unknown suite name.
std::vector<CheckResult> run_verify(const VerifyOptions& options);

}  // namespace bft

#endif  // BFT_VERIFY_HPP
