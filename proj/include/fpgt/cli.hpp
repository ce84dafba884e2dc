#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fpgt::cli {

// Runs one command. args excludes the program name. Returns 0 on success,
// 1 on domain errors (and failed verifications), 2 on usage errors.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);
int run(int argc, const char* const* argv, std::ostream& out,
        std::ostream& err);

}  // namespace fpgt::cli
