#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "tollflow/error.hpp"

namespace tollflow::cli {

enum ExitCode : int { Ok = 0, VerificationFailed = 1, InvalidInput = 2, InternalError = 3 };

ExitCode exit_code_for(ErrorKind kind);

// args excludes the program name. Reports go to `out` (or --out), errors
// as JSON to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, char** argv);

}  // namespace tollflow::cli
