#pragma once

#include <stdexcept>
#include <string>

namespace lzmem {

// Exit-code classes of the command-line tool map onto these.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Bad arguments or flag combinations (exit code 1).
class UsageError : public Error {
  public:
    using Error::Error;
};

/// Unreadable input, malformed files, index version mismatch (exit code 2).
class FormatError : public Error {
  public:
    using Error::Error;
};

/// An index or engine invariant was violated (exit code 3).
class InvariantError : public Error {
  public:
    using Error::Error;
};

}  // namespace lzmem
