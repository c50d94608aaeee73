#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace surreal {

/// Resource limits threaded through every lazy computation.
///
/// `max_terms` bounds how many stream elements an operation may force,
/// `prec` is the coefficient precision in bits used for sign decisions on
/// refinable reals, and `depth` caps hereditary recursion on exponents.
struct Budget {
  std::size_t max_terms = 12;
  unsigned prec = 64;
  unsigned depth = 16;

  [[nodiscard]] Budget deeper() const {
    Budget b = *this;
    b.depth = depth > 0 ? depth - 1 : 0;
    return b;
  }
  [[nodiscard]] bool valid() const { return max_terms >= 1 && prec >= 1 && depth >= 1; }
};

enum class ErrorKind {
  Indeterminate,
  BudgetExhausted,
  FragmentExhausted,
  DomainError,
  DivisionByZero,
  NonPositive,
  ZeroOrIndeterminateLeading,
  Syntax,
};

[[nodiscard]] const char* to_string(ErrorKind k);

/// All kernel failures. `kind` lets callers distinguish an honest
/// "could not decide within budget" from a genuine domain violation.
class KernelError : public std::runtime_error {
 public:
  KernelError(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace surreal
