#pragma once

#include <istream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "rado/coloring.hpp"
#include "rado/core.hpp"
#include "rado/solutions.hpp"

namespace rado {

/// CNF over variables 1..n, variable i true <=> color(i) = 1. Each constraint
/// set S contributes the clause {+i : i in S} and the clause {-i : i in S}.
struct CnfDocument {
  Int num_vars = 0;
  std::vector<std::vector<Int>> clauses;
  std::vector<Int> coeffs;  // provenance, echoed into the DIMACS comments
};

/// Satisfiable iff [1,n] admits a monochromatic-free coloring. With the
/// symmetry unit the models are exactly the valid colorings with color(1)=0;
/// without it, all valid colorings.
inline CnfDocument encode(const EquationSpec& spec, Int n, bool symmetry_unit = true) {
  const ConstraintSet cs = enumerate_solutions(spec, n);
  CnfDocument doc;
  doc.num_vars = n;
  doc.coeffs = spec.coeffs;
  doc.clauses.reserve(2 * cs.constraints.size() + 1);
  for (const auto& members : cs.constraints) {
    std::vector<Int> pos(members);
    std::vector<Int> neg;
    neg.reserve(members.size());
    for (Int v : members) neg.push_back(-v);
    doc.clauses.push_back(std::move(pos));
    doc.clauses.push_back(std::move(neg));
  }
  if (symmetry_unit) doc.clauses.push_back({-1});
  return doc;
}

/// DIMACS text: ASCII, LF line endings, space-separated literals, each clause
/// zero-terminated, provenance in leading comment lines.
inline std::string to_dimacs(const CnfDocument& doc) {
  std::ostringstream os;
  os << "c rado coeffs";
  for (Int c : doc.coeffs) os << ' ' << c;
  os << '\n';
  os << "c rado n " << doc.num_vars << '\n';
  os << "p cnf " << doc.num_vars << ' ' << doc.clauses.size() << '\n';
  for (const auto& clause : doc.clauses) {
    for (Int lit : clause) os << lit << ' ';
    os << "0\n";
  }
  return os.str();
}

/// Extracts the literal list from solver output: "v" lines in the DIMACS
/// convention, or a bare whitespace-separated list. "c"/"s" lines are
/// ignored; a 0 terminates the model.
inline std::vector<Int> parse_model(std::istream& in) {
  std::vector<Int> literals;
  std::string line;
  bool done = false;
  while (!done && std::getline(in, line)) {
    std::istringstream ls(line);
    std::string tok;
    if (!(ls >> tok)) continue;  // blank line
    if (tok == "c" || tok == "s") continue;
    if (tok != "v") {
      ls.clear();
      ls.seekg(0);
    }
    while (ls >> tok) {
      std::size_t used = 0;
      Int lit = 0;
      try {
        lit = std::stoll(tok, &used);
      } catch (const std::exception&) {
        throw ValidationError("model contains a non-integer token: " + tok);
      }
      if (used != tok.size())
        throw ValidationError("model contains a non-integer token: " + tok);
      if (lit == 0) {
        done = true;
        break;
      }
      literals.push_back(lit);
    }
  }
  return literals;
}

inline std::vector<Int> parse_model(const std::string& text) {
  std::istringstream in(text);
  return parse_model(in);
}

struct ModelCheck {
  bool accepted = false;
  std::optional<Coloring> coloring;       // the decoded coloring
  std::optional<SolutionTuple> violation; // present iff rejected
};

/// Decodes a total model into a coloring and accepts iff the checker finds no
/// monochromatic solution. Missing, duplicate, or out-of-range variables are
/// malformed and throw.
inline ModelCheck verify_model(const std::vector<Int>& literals, const EquationSpec& spec,
                               Int n) {
  spec.validate();
  if (n < 1) throw ValidationError("domain bound n must be >= 1");
  std::vector<signed char> value(static_cast<std::size_t>(n) + 1, -1);
  for (Int lit : literals) {
    const Int var = lit < 0 ? -lit : lit;
    if (var < 1 || var > n)
      throw ValidationError("model literal " + std::to_string(lit) +
                            " is outside the variable range [1," + std::to_string(n) + "]");
    if (value[static_cast<std::size_t>(var)] >= 0)
      throw ValidationError("model assigns variable " + std::to_string(var) + " twice");
    value[static_cast<std::size_t>(var)] = lit > 0 ? 1 : 0;
  }
  for (Int v = 1; v <= n; ++v)
    if (value[static_cast<std::size_t>(v)] < 0)
      throw ValidationError("model is missing variable " + std::to_string(v));

  ModelCheck out;
  Coloring coloring(n, 0);
  for (Int v = 1; v <= n; ++v) coloring.set(v, value[static_cast<std::size_t>(v)]);
  out.violation = find_monochromatic(coloring, spec);
  out.accepted = !out.violation.has_value();
  out.coloring = std::move(coloring);
  return out;
}

}  // namespace rado
