#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace netstrength {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class EmptyGraphError : public Error {
 public:
  EmptyGraphError() : Error("graph has no nodes") {}
};

/// A component size has no weight under the active extension policy.
class WeightRangeError : public Error {
 public:
  WeightRangeError(std::size_t size, std::size_t available)
      : Error("component size " + std::to_string(size) +
              " exceeds weight vector length " + std::to_string(available) +
              " (enable clamp-to-last to extend)"),
        size_(size),
        available_(available) {}

  std::size_t size() const noexcept { return size_; }
  std::size_t available() const noexcept { return available_; }

 private:
  std::size_t size_;
  std::size_t available_;
};

/// Exhaustive search refused because the instance exceeds the configured budget.
class InstanceTooLarge : public Error {
 public:
  using Error::Error;
};

/// Malformed input file; carries the 1-based line number when known.
class ParseError : public Error {
 public:
  ParseError(const std::string& source, std::size_t line, const std::string& what)
      : Error(source + ":" + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// An ILP assignment breaks a constraint; `family()` names the violated group.
class ConstraintViolation : public Error {
 public:
  ConstraintViolation(std::string family, const std::string& detail)
      : Error("constraint family '" + family + "' violated: " + detail),
        family_(std::move(family)) {}

  const std::string& family() const noexcept { return family_; }

 private:
  std::string family_;
};

}  // namespace netstrength
