#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace wgm::cli {

// Exit codes: 0 success, 2 input or parse error, 3 semantic mismatch
// (incompatible graphs), 4 a clean UNSAT / NOORDER outcome.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace wgm::cli
