#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace kbsm {

/// Malformed text input (diagram files, polynomial or element syntax).
class ParseError : public std::runtime_error {
public:
  ParseError(const std::string& what, std::size_t line = 0, std::size_t column = 0)
      : std::runtime_error(format(what, line, column)), line_(line), column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

private:
  static std::string format(const std::string& what, std::size_t line, std::size_t column) {
    if (line == 0) return what;
    return "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what;
  }

  std::size_t line_;
  std::size_t column_;
};

/// An event whose position is incompatible with the current strand count.
class WidthError : public std::invalid_argument {
public:
  WidthError(const std::string& what, std::size_t event_index)
      : std::invalid_argument("event " + std::to_string(event_index) + ": " + what),
        event_index_(event_index) {}

  std::size_t event_index() const noexcept { return event_index_; }

private:
  std::size_t event_index_;
};

/// A well-formed request the algorithms cannot carry out.
class ComputationError : public std::runtime_error {
public:
  enum class Kind { NonUnitLeading, NonDecreasing, Inconsistent, TooLarge };

  ComputationError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}

  Kind kind() const noexcept { return kind_; }

private:
  Kind kind_;
};

}  // namespace kbsm
