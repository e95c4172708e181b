// cli.hh -- command-line frontend, testable in-process

#pragma once

#include <iostream>
#include <string>
#include <vector>

namespace tvu {

/// Exit codes: 0 success / positive decision, 2 input error,
/// 3 negative decision, 4 fuzz mismatch.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tvu
