#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace wachlab::cli {

/// Runs one command line (args exclude the program name) and returns the
/// process exit code. `env_prec` is the value of WACHLAB_PREC, if set.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err,
        const char* env_prec);

}  // namespace wachlab::cli
