#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace adia {

// Exit codes: 0 success, 1 config/usage error, 2 numerical-guard abort,
// 3 criterion mismatch under --assert-match.
int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace adia
