#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fqlab::cli {

/// Runs one command line, `args` excluding the program name. Exit codes:
/// 0 success, 1 domain error (error name on `err`), 2 usage error.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fqlab::cli
