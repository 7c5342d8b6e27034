#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace scbench {

/// Input violates an operation's domain (bad index, negative count, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A matrix or label file failed to parse. Carries the 1-based line number.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& path, std::size_t line, const std::string& what)
      : std::runtime_error(path + ":" + std::to_string(line) + ": " + what),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// File could not be opened, read or written.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace scbench
