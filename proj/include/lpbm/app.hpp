#pragma once

#include <iosfwd>

namespace lpbm {

// Exit status: 0 all applicable checks pass, 1 a check failed, 2 usage,
// configuration or I/O error.
int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace lpbm
