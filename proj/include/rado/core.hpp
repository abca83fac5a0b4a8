#pragma once

#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace rado {

using Int = std::int64_t;

struct ValidationError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct OverflowError : std::overflow_error {
  using std::overflow_error::overflow_error;
};

// Search gave up before reaching a verdict (node or time cap).
struct InconclusiveError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// The largest n allowed by the caller was reached without an UNSAT verdict.
struct CapExceededError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A self-check failed; indicates a bug, never an input problem.
struct InternalError : std::logic_error {
  using std::logic_error::logic_error;
};

inline Int checked_add(Int x, Int y) {
  Int r;
  if (__builtin_add_overflow(x, y, &r))
    throw OverflowError("integer overflow in addition");
  return r;
}

inline Int checked_mul(Int x, Int y) {
  Int r;
  if (__builtin_mul_overflow(x, y, &r))
    throw OverflowError("integer overflow in multiplication");
  return r;
}

/// The equation a1*x1 + ... + am*xm = x0, given by its coefficient list.
struct EquationSpec {
  std::vector<Int> coeffs;

  EquationSpec() = default;
  EquationSpec(std::initializer_list<Int> cs) : coeffs(cs) {}
  explicit EquationSpec(std::vector<Int> cs) : coeffs(std::move(cs)) {}

  Int m() const { return static_cast<Int>(coeffs.size()); }

  void validate() const {
    if (coeffs.size() < 2)
      throw ValidationError("equation needs at least two coefficients, got " +
                            std::to_string(coeffs.size()));
    for (Int c : coeffs)
      if (c < 1)
        throw ValidationError("coefficients must be positive, got " +
                              std::to_string(c));
  }

  std::string to_string() const {
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
      if (i) os << ',';
      os << coeffs[i];
    }
    os << ')';
    return os.str();
  }

  bool operator==(const EquationSpec&) const = default;
};

/// Derived quantities the closed form depends on: a = min coefficient,
/// b = coefficient sum minus a, v = a + b.
struct CanonicalForm {
  Int a = 0;
  Int b = 0;
  Int v = 0;
  Int m = 0;

  bool operator==(const CanonicalForm&) const = default;
};

inline CanonicalForm canonicalize(const EquationSpec& spec) {
  spec.validate();
  Int a = spec.coeffs.front();
  Int sum = 0;
  for (Int c : spec.coeffs) {
    if (c < a) a = c;
    sum = checked_add(sum, c);
  }
  return CanonicalForm{a, sum - a, sum, spec.m()};
}

}  // namespace rado
