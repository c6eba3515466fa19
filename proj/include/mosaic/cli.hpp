#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "mosaic/error.hpp"

namespace mosaic {

// 2 for input errors, 3 for infeasible instances, 4 for solver failures.
int exit_code_for(ErrorCode code);

// Entry point of the `mosaic` tool; `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mosaic
