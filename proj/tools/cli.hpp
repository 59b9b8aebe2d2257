#pragma once

#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace mpfock::cli {

enum ExitCode : int { kOk = 0, kUsage = 2, kDomain = 3, kValidation = 4 };

// Environment lookup; the default reads the process environment.
using EnvLookup = std::function<std::optional<std::string>(const std::string&)>;

EnvLookup process_env();

// Runs one command line (args excludes the program name). Normal output goes
// to `out` unless --out names a file; diagnostics go to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
            const EnvLookup& env = process_env());

}  // namespace mpfock::cli
