#pragma once

#include <stdexcept>
#include <string>

namespace dominet {

// Malformed input document. Line and column are 1-based; column 0 means
// the error applies to the whole line.
class ParseError : public std::runtime_error {
public:
  ParseError(int line, int column, const std::string& message)
      : std::runtime_error("line " + std::to_string(line) + ", column " +
                           std::to_string(column) + ": " + message),
        line_(line),
        column_(column) {}

  int line() const { return line_; }
  int column() const { return column_; }

private:
  int line_;
  int column_;
};

// Operation refused because the state space or search space exceeds the
// exhaustive-enumeration limit.
class SizeLimitError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// A set that was required to be dominant is not.
class NotDominantError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Landscape reports passed together do not describe linked systems.
class MismatchedSystemsError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// History reconstruction requested a time slice beyond the recurrence
// length. Impossible for a dominant set; indicates an internal bug.
class DepthExceededError : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

// A proved bound failed on concrete data; indicates an internal bug.
class BoundViolationError : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

}  // namespace dominet
