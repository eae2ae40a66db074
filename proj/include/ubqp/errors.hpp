#pragma once

#include <stdexcept>
#include <string>

namespace ubqp {

// Problem size outside what an operation accepts (n = 0, or above an
// enumeration budget).
class size_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Vector/matrix lengths that do not agree with the instance size.
class dimension_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Operation called on an instance or argument that violates its precondition.
class precondition_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class parse_error : public std::runtime_error {
 public:
  parse_error(std::string field, const std::string& what)
      : std::runtime_error("instance parse error in '" + field + "': " + what),
        field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

}  // namespace ubqp
