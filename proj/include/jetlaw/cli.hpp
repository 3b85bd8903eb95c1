#pragma once

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

namespace jetlaw::cli {

using EnvLookup = std::function<const char*(const char*)>;

enum ExitCode : int { kOk = 0, kCheckFailed = 1, kInputError = 2 };

/// Executes one subcommand. `args` excludes the program name. `in` backs
/// "--input -". Environment lookups go through `env` so tests can inject
/// JETLAW_* overrides.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err,
        const EnvLookup& env);

/// Same, reading the process environment.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace jetlaw::cli
