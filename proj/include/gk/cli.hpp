#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace gk {

// Batch commands:
//   validate PRES
//   normalize PRES -e TERM [--trace OUT]
//   equiv PRES -l TERM -r TERM [--depth N] [--max-states N] [--expand]
//         [--trace OUT]
//   eval PRES --model M -e TERM
//   check-trace PRES --trace T [--model M]
// Exit codes: 0 success / Equivalent / valid; 1 Unknown / invalid;
// 2 malformed input. Output is deterministic for identical inputs.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace gk
