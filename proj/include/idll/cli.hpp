// The `idll` command line: one binary with subcommands check, normalize,
// translate, count, prove, model, interp, soundness and corpus.
//
// Exit codes: 0 for an ok verdict, 1 for a negative or undecided verdict,
// 2 for usage and input errors.

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace idll::cli {

// `args` excludes the program name. Files named "-" are read from `in`.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace idll::cli
