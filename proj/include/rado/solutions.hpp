#pragma once

#include <algorithm>
#include <optional>
#include <set>
#include <sstream>
#include <vector>

#include "rado/coloring.hpp"
#include "rado/core.hpp"

namespace rado {

/// One solution (x1,...,xm) -> x0 of the equation inside [1,n].
struct SolutionTuple {
  std::vector<Int> xs;
  Int x0 = 0;

  std::string to_string() const {
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < xs.size(); ++i) {
      if (i) os << ',';
      os << xs[i];
    }
    os << ")->" << x0;
    return os.str();
  }

  bool operator==(const SolutionTuple&) const = default;
};

/// Not-all-equal constraints: the distinct values of each solution tuple.
/// Members are sorted, sets are deduplicated and listed lexicographically.
struct ConstraintSet {
  Int n = 0;
  std::vector<std::vector<Int>> constraints;
};

namespace detail {

// Visits every tuple (x1,...,xm) with all xi in [1,n] and x0 = sum ai*xi <= n,
// in lexicographic order over (x1,...,xm). fn(xs, x0) returns false to stop.
// Partial sums are pruned against the minimal completion, so the cost is
// proportional to the number of solutions.
template <typename Fn>
bool for_each_solution(const EquationSpec& spec, Int n, Fn&& fn) {
  spec.validate();
  if (n < 1) throw ValidationError("domain bound n must be >= 1");
  const auto& coeff = spec.coeffs;
  const int m = static_cast<int>(coeff.size());

  // suffix_min[i] = minimal value of sum_{j>=i} coeff[j]*xj (all xj = 1),
  // capped at n: anything at or above the cap prunes the same way
  std::vector<Int> suffix_min(static_cast<std::size_t>(m) + 1, 0);
  bool nothing_fits = false;
  for (int i = m - 1; i >= 0; --i) {
    Int s;
    if (__builtin_add_overflow(suffix_min[i + 1], coeff[i], &s) || s > n) {
      suffix_min[i] = n;
      nothing_fits = true;
    } else {
      suffix_min[i] = s;
    }
  }
  if (nothing_fits) return true;

  std::vector<Int> xs(static_cast<std::size_t>(m), 1);
  auto rec = [&](auto&& self, int i, Int partial) -> bool {
    if (i == m) return fn(xs, partial);
    Int t = partial;
    for (Int x = 1;; ++x) {
      if (__builtin_add_overflow(t, coeff[i], &t)) break;
      // t = partial + coeff[i]*x; the remaining minimal completion must fit
      if (t > n - suffix_min[i + 1]) break;
      xs[static_cast<std::size_t>(i)] = x;
      if (!self(self, i + 1, t)) return false;
    }
    return true;
  };
  return rec(rec, 0, 0);
}

}  // namespace detail

/// All distinct-value sets of solutions inside [1,n].
inline ConstraintSet enumerate_solutions(const EquationSpec& spec, Int n) {
  std::set<std::vector<Int>> sets;
  detail::for_each_solution(spec, n, [&](const std::vector<Int>& xs, Int x0) {
    std::vector<Int> values(xs);
    values.push_back(x0);
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
    if (values.size() < 2)
      throw InternalError("size-1 constraint set; sum of coefficients >= 2 forbids this");
    sets.insert(std::move(values));
    return true;
  });
  ConstraintSet out;
  out.n = n;
  out.constraints.assign(sets.begin(), sets.end());
  return out;
}

/// First (lexicographically least over x1..xm) monochromatic solution, if any.
inline std::optional<SolutionTuple> find_monochromatic(const Coloring& coloring,
                                                       const EquationSpec& spec) {
  std::optional<SolutionTuple> found;
  detail::for_each_solution(spec, coloring.n(), [&](const std::vector<Int>& xs, Int x0) {
    const int c = coloring.color(x0);
    for (Int x : xs)
      if (coloring.color(x) != c) return true;
    found = SolutionTuple{xs, x0};
    return false;
  });
  return found;
}

}  // namespace rado
