#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace secview::cli {

// Exit codes.
enum Exit : int { Ok = 0, ParseFailure = 2, SemanticFailure = 3, CrossCheckFailure = 4, BoundFailure = 5 };

// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace secview::cli
