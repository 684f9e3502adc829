#pragma once

#include <stdexcept>
#include <string>

namespace ergolab {

/// Bad arguments: failed preconditions, dimension mismatches, out-of-range sizes.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// No projection rule is known for the requested (factor, system) pair.
class ProjectionUnavailable : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An observable literal could not be parsed.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : std::runtime_error(what + " at offset " + std::to_string(position)), position_(position) {}
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

/// Exact coefficient arithmetic exceeded its term or frequency budget.
class ExactArithmeticOverflow : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

}  // namespace ergolab
