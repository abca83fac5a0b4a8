#pragma once

#include <optional>
#include <utility>

#include "rado/coloring.hpp"
#include "rado/core.hpp"
#include "rado/formula.hpp"
#include "rado/solutions.hpp"
#include "rado/solver.hpp"

namespace rado {

/// The extremal coloring of [1, R-1] as intervals: color 0 on [1, v-1] and
/// [v^2, R-1], color 1 on [v, v^2-1]. The three blocks partition [1, R-1].
struct IntervalColoring {
  Int n = 0;  // R - 1
  Int v = 0;

  std::pair<Int, Int> zero_low() const { return {1, v - 1}; }
  std::pair<Int, Int> one_block() const { return {v, v * v - 1}; }
  std::pair<Int, Int> zero_high() const { return {v * v, n}; }

  Coloring to_coloring() const {
    Coloring out(n, 0);
    for (Int i = v; i <= v * v - 1; ++i) out.set(i, 1);
    return out;
  }
};

inline IntervalColoring interval_witness(const CanonicalForm& cf) {
  const RadoValue r = rado_number(EquationSpec{{cf.a, cf.b}});
  return IntervalColoring{r.value - 1, cf.v};
}

/// The lower-bound witness: a monochromatic-free coloring of [1, R-1].
/// Always re-validated with the exhaustive checker before being returned.
inline Coloring extremal_coloring(const EquationSpec& spec) {
  const RadoValue r = rado_number(spec);
  const IntervalColoring shape = interval_witness(r.canonical);
  Coloring coloring = shape.to_coloring();
  if (auto mono = find_monochromatic(coloring, spec))
    throw InternalError("extremal coloring admits a monochromatic solution at " +
                        mono->to_string());
  return coloring;
}

enum class CertStatus { Confirmed, WitnessOnly, Inconclusive };

/// Two-sided certificate for R: the witness coloring of [1, R-1] proves the
/// lower bound; an UNSAT search verdict at n = R, when requested and within
/// caps, proves the upper bound.
struct Certificate {
  EquationSpec spec;
  RadoValue rado;
  Int witness_n = 0;       // R - 1
  bool witness_valid = false;
  CertStatus status = CertStatus::WitnessOnly;
  std::optional<SearchResult> search_at_rado;  // present iff search was attempted
};

inline Certificate certify_pair(const EquationSpec& spec, bool via_search,
                                const SolverOptions& opt = {}) {
  Certificate cert;
  cert.spec = spec;
  cert.rado = rado_number(spec);
  cert.witness_n = cert.rado.value - 1;
  Coloring witness = extremal_coloring(spec);  // throws if invalid
  cert.witness_valid = true;
  if (!via_search) {
    cert.status = CertStatus::WitnessOnly;
    return cert;
  }
  SearchResult r = exists_valid_coloring(spec, cert.rado.value, opt);
  switch (r.verdict) {
    case Verdict::Unsat:
      cert.status = CertStatus::Confirmed;
      break;
    case Verdict::Inconclusive:
      cert.status = CertStatus::Inconclusive;  // lower bound only
      break;
    case Verdict::Sat:
      throw InternalError("search found a valid coloring of [1,R]; this contradicts "
                          "the closed form and indicates a solver bug");
  }
  cert.search_at_rado = std::move(r);
  return cert;
}

}  // namespace rado
