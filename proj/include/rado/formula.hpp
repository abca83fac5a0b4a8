#pragma once

#include <optional>
#include <string>
#include <utility>

#include "rado/core.hpp"

namespace rado {

/// A computed Rado number together with the canonical form it came from.
struct RadoValue {
  Int value = 0;
  CanonicalForm canonical;
};

/// Closed form R = a*(a+b)^2 + b. Also evaluated as a*v^2 + v - a; the two
/// routes must agree. Holds for every valid coefficient list; divisibility
/// conditions on (a, b) such as a | b(b-1) play no role in the final value.
inline RadoValue rado_number(const EquationSpec& spec) {
  const CanonicalForm cf = canonicalize(spec);
  const Int av2 = checked_mul(cf.a, checked_mul(cf.v, cf.v));
  const Int value = checked_add(av2, cf.b);
  const Int alt = checked_add(av2, cf.v - cf.a);
  if (value != alt)
    throw InternalError("a(a+b)^2+b and av^2+v-a disagree");
  return RadoValue{value, cf};
}

struct SpecialCase {
  std::string name;  // "BB", "Abbott" or "JS"
  Int value = 0;
};

/// Historical special-case formulas, used as independent cross-checks:
/// all coefficients 1 -> m^2+m-1; all equal to a -> a^3m^2+am-a;
/// minimum coefficient 1 -> b^2+3b+1 with b = sum-1.
inline std::optional<SpecialCase> special_case_value(const EquationSpec& spec) {
  const CanonicalForm cf = canonicalize(spec);
  const Int m = cf.m;
  bool all_one = true;
  bool all_equal = true;
  for (Int c : spec.coeffs) {
    all_one = all_one && c == 1;
    all_equal = all_equal && c == spec.coeffs.front();
  }
  if (all_one)
    return SpecialCase{"BB", checked_add(checked_mul(m, m), m - 1)};
  if (all_equal) {
    const Int a = cf.a;
    const Int a3m2 = checked_mul(checked_mul(a, checked_mul(a, a)), checked_mul(m, m));
    return SpecialCase{"Abbott", checked_add(a3m2, checked_mul(a, m) - a)};
  }
  if (cf.a == 1) {
    const Int b = cf.v - 1;
    return SpecialCase{"JS", checked_add(checked_mul(b, b), checked_add(checked_mul(3, b), 1))};
  }
  return std::nullopt;
}

/// Lower and upper bounds of the sandwich R(a,b) >= R(a1..am) >= a(a+b)^2+b.
/// The closed form collapses them; the equality is asserted here.
inline std::pair<Int, Int> sandwich_bounds(const EquationSpec& spec) {
  const RadoValue full = rado_number(spec);
  const RadoValue reduced = rado_number(EquationSpec{{full.canonical.a, full.canonical.b}});
  if (full.value != reduced.value)
    throw InternalError("sandwich bounds failed to collapse");
  return {full.value, reduced.value};
}

}  // namespace rado
