#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace diskpack {

/// Command line entry point, separated from main() so tests can drive it.
/// Exit codes: 0 success (analyze: jammed), 1 bad input, 2 jam failure,
/// 3 analyze: not jammed, 4 analyze: tolerance-ambiguous verdict.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace diskpack
