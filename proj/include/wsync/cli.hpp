#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace wsync {

// Full command-line front end, callable in-process for tests. args excludes
// the program name. Returns the process exit status: 0 success, 1 usage or
// parse or cap errors, 2 "not synchronizing".
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace wsync
