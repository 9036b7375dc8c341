#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "loclang/local_sentence.hpp"

namespace loclang::cli {

/// Exit codes shared by every subcommand.
enum ExitCode : int { kOk = 0, kNegative = 1, kError = 2, kInconclusive = 3 };

/// Runs one command line; argv[0] is the program name. Reports go to `out`,
/// usage and library errors to `err`.
int run(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err);

/// Loads a sentence argument: a path, else a file of that name in
/// $LOCLANG_SENTENCE_DIR or the shipped sentence directory, else a shipped
/// example named by the file stem.
LocalSentence resolve_sentence(const std::string& arg);

}  // namespace loclang::cli
