#pragma once

#include <iosfwd>
#include <span>
#include <string>

namespace rsj::cli {

enum ExitCode : int {
    kSuccess = 0,
    kFailure = 1,             // usage, I/O or parse failure
    kSchemeDegeneracy = 2,    // a matched query term has no finite weight
};

/// Dispatches `index`, `query`, `weights`, `curve` and `verify`. `args`
/// excludes the program name. Output paths of "-" write to `out`.
int run(std::span<const std::string> args, std::ostream& out, std::ostream& err);

}  // namespace rsj::cli
