#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace afr {

/// Parsed "A3k4" or "family=A rank=3 level=4" context token.
struct ContextSpec {
  char family = 'A';
  int rank = 0;
  int level = 0;
};
ContextSpec parse_context_spec(const std::string& token);

/// Full command-line entry point. Returns the process exit code:
/// 0 success, 1 verification failure, 2 usage error, 3 internal assertion.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace afr
