#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace oltsp {

// Exit codes: 0 success / bound met, 1 bound violated or infeasible run,
// 2 usage or input error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace oltsp
