#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace goeval {

/// Violated precondition or out-of-range argument.
class DomainError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Malformed SGF input. Carries the byte offset where parsing failed.
class ParseError : public std::runtime_error {
public:
  ParseError(const std::string& msg, std::size_t offset)
    : std::runtime_error(msg + " (at byte " + std::to_string(offset) + ")"), offset_(offset) {}

  std::size_t offset() const noexcept { return offset_; }

private:
  std::size_t offset_;
};

/// Unreadable or malformed auxiliary file (manifest, matrix, model, config).
class InputError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

} // namespace goeval
