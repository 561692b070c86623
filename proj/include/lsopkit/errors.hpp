#pragma once

#include <stdexcept>
#include <string>

namespace lsopkit {

enum class ErrorKind {
  Dimension,
  Degeneracy,
  Admissibility,
  Structure,
  Evaluation,
  IncompleteTable,
  Gauge,
  Hypothesis,
  Numerical,
  Representation,
  Refused,
  Format,
};

const char* to_string(ErrorKind kind) noexcept;

/// Every failure raised by the library carries a kind so callers can branch
/// without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace lsopkit
