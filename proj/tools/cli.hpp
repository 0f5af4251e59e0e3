#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace bochner::cli {

enum ExitCode : int {
  kOk = 0,
  kInternal = 1,    // numeric failure or unexpected error
  kValidation = 2,  // bad arguments, unreadable or malformed input
  kRejected = 3,    // NotPositiveDefinite, UnboundedMetric, NotHilbertian
};

/// Runs one command line. args[0] is the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace bochner::cli
