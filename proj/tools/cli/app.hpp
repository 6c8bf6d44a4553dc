#pragma once

#include <ostream>

namespace moviedesc::cli {

/// Parses argv and runs one subcommand. Returns 0 on success, 1 for usage
/// errors and 2 for data errors; messages go to `err`.
int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

} // namespace moviedesc::cli
