#pragma once

#include <stdexcept>
#include <string>

namespace moviedesc {

/// Raised for invalid input data or violated preconditions. The message names
/// the failing record or parameter so the CLI can report it verbatim.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

} // namespace moviedesc
