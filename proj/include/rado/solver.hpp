#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <limits>
#include <optional>
#include <thread>
#include <utility>
#include <vector>

#include "rado/coloring.hpp"
#include "rado/core.hpp"
#include "rado/solutions.hpp"

namespace rado {

enum class Verdict { Sat, Unsat, Inconclusive };

enum class Propagation { UnitOnly, UnitAndChain };

struct SolverOptions {
  Propagation propagation = Propagation::UnitAndChain;
  std::uint64_t node_cap = 100'000'000;
  double time_cap_seconds = 600.0;
  bool break_symmetry = true;  // pin color(1) = 0
  unsigned threads = 1;        // > 1 enables the prefix-splitting driver
  Int split_prefix = 0;        // highest integer fixed by the driver; 0 = auto
};

struct SearchStats {
  std::uint64_t nodes = 0;
  std::uint64_t propagations = 0;
  std::uint64_t chain_firings = 0;
  double seconds = 0.0;
  bool hit_node_cap = false;
  bool hit_time_cap = false;
};

struct SearchResult {
  Verdict verdict = Verdict::Inconclusive;
  std::optional<Coloring> witness;  // present iff verdict == Sat
  SearchStats stats;
};

/// Search state: partial assignment over [1,n] plus the trail that built it.
class PartialColoring {
 public:
  explicit PartialColoring(Int n) : n_(n), colors_(static_cast<std::size_t>(n) + 1, -1) {
    if (n < 1) throw ValidationError("partial coloring domain must be [1,n] with n >= 1");
  }

  Int n() const { return n_; }
  bool assigned(Int i) const { return colors_[static_cast<std::size_t>(i)] >= 0; }
  int color(Int i) const { return colors_[static_cast<std::size_t>(i)]; }

  void assign(Int i, int c) {
    colors_[static_cast<std::size_t>(i)] = static_cast<signed char>(c);
    trail_.push_back(i);
  }

  const std::vector<Int>& trail() const { return trail_; }
  std::size_t trail_size() const { return trail_.size(); }

  Int pop_last() {
    Int v = trail_.back();
    trail_.pop_back();
    colors_[static_cast<std::size_t>(v)] = -1;
    return v;
  }

  void unwind_to(std::size_t mark) {
    while (trail_.size() > mark) pop_last();
  }

  Coloring to_total(int fill = 0) const {
    Coloring out(n_, fill);
    for (Int v : trail_) out.set(v, color(v));
    return out;
  }

 private:
  Int n_;
  std::vector<signed char> colors_;  // -1 = unassigned
  std::vector<Int> trail_;
};

/// An instantiation of the coloring-forcing rule for kx+ly=z: u and u+l have
/// opposite colors, delta = color(u), and bound = floor((n - k*u)/l) limits
/// how far the rule reaches.
struct FlipChainParams {
  Int k = 0;
  Int l = 0;
  Int u = 0;
  int delta = 0;
  Int bound = 0;
};

/// Smallest u in [1,n-l] whose color differs from u+l, or nothing. The rule
/// needs l < n.
inline std::optional<FlipChainParams> find_flip_chain(const PartialColoring& state, Int k,
                                                      Int l) {
  const Int n = state.n();
  if (l >= n) return std::nullopt;
  for (Int u = 1; u + l <= n; ++u) {
    if (!state.assigned(u) || !state.assigned(u + l)) continue;
    const int du = state.color(u);
    if (du == state.color(u + l)) continue;
    Int ku;
    Int bound;
    if (__builtin_mul_overflow(k, u, &ku)) {
      bound = std::numeric_limits<Int>::min() / 2;  // k*u >> n; nothing is in reach
    } else {
      const Int diff = n - ku;
      bound = diff / l;
      if (diff % l != 0 && diff < 0) --bound;  // floor, not truncation
    }
    return FlipChainParams{k, l, u, du, bound};
  }
  return std::nullopt;
}

struct FlipChainForcings {
  std::vector<std::pair<Int, int>> forced;  // (value, color), new assignments only
  std::optional<Int> conflict_at;           // value forced against its current color
};

/// Forcings implied by the rule under params p, from the current assignments:
/// (i) color(w) = delta and w <= bound forces the whole chain w, w-k, w-2k, ...
///     down to 1 to delta;
/// (ii) color(w) = 1-delta forces w+k, w+2k, ... up to bound to 1-delta.
/// Skipped entirely unless the canonical form has m = 2.
inline FlipChainForcings propagate_flip_chain(const PartialColoring& state,
                                              const CanonicalForm& canonical,
                                              const FlipChainParams& p) {
  FlipChainForcings out;
  if (canonical.m != 2) return out;
  const Int n = state.n();
  std::vector<signed char> pending(static_cast<std::size_t>(n) + 1, -1);
  auto force = [&](Int value, int color) -> bool {
    if (state.assigned(value)) {
      if (state.color(value) != color) {
        out.conflict_at = value;
        return false;
      }
      return true;
    }
    signed char& slot = pending[static_cast<std::size_t>(value)];
    if (slot >= 0) {
      if (slot != color) {
        out.conflict_at = value;
        return false;
      }
      return true;
    }
    slot = static_cast<signed char>(color);
    out.forced.emplace_back(value, color);
    return true;
  };

  const Int wmax = std::min(p.bound, n);
  for (Int w = 1; w <= wmax; ++w) {
    if (!state.assigned(w) || state.color(w) != p.delta) continue;
    for (Int t = w - p.k; t >= 1; t -= p.k)
      if (!force(t, p.delta)) return out;
  }
  for (Int w = 1; w <= n; ++w) {
    if (!state.assigned(w) || state.color(w) != 1 - p.delta) continue;
    for (Int t = w + p.k; t <= p.bound; t += p.k)
      if (!force(t, 1 - p.delta)) return out;
  }
  return out;
}

enum class PropagateOutcome { Fixpoint, Conflict };

namespace detail {

// Propagation engine over not-all-equal constraints. Per-constraint counts of
// members assigned to each color make the all-but-one check O(1); occurrence
// lists keep propagation local to the constraints an assignment touches.
class NaeEngine {
 public:
  NaeEngine(const ConstraintSet& cs, bool chain_rule, const CanonicalForm& canonical)
      : state_(cs.n), canonical_(canonical), chain_rule_(chain_rule && canonical.m == 2) {
    occ_.resize(static_cast<std::size_t>(cs.n) + 1);
    cons_.reserve(cs.constraints.size());
    for (const auto& members : cs.constraints) {
      const auto idx = static_cast<std::uint32_t>(cons_.size());
      cons_.push_back(Cons{members, {0, 0}});
      for (Int v : members) occ_[static_cast<std::size_t>(v)].push_back(idx);
    }
    if (chain_rule_) {
      roles_.emplace_back(canonical.a, canonical.b);
      if (canonical.a != canonical.b) roles_.emplace_back(canonical.b, canonical.a);
    }
  }

  const PartialColoring& state() const { return state_; }
  std::uint64_t propagations() const { return propagations_; }
  std::uint64_t chain_firings() const { return chain_; }

  std::vector<Int> occurring_vars() const {
    std::vector<Int> vars;
    for (Int v = 1; v <= state_.n(); ++v)
      if (!occ_[static_cast<std::size_t>(v)].empty()) vars.push_back(v);
    return vars;
  }

  std::size_t mark() const { return state_.trail_size(); }

  void undo_to(std::size_t mark) {
    while (state_.trail_size() > mark) {
      const Int v = state_.trail().back();
      const int c = state_.color(v);
      for (std::uint32_t ci : occ_[static_cast<std::size_t>(v)]) --cons_[ci].cnt[c];
      state_.pop_last();
    }
  }

  // Assigns var and runs unit propagation to fixpoint. False on conflict.
  bool assign(Int var, int color) {
    queue_.clear();
    queue_.emplace_back(var, color);
    std::size_t head = 0;
    while (head < queue_.size()) {
      const auto [v, c] = queue_[head++];
      if (state_.assigned(v)) {
        if (state_.color(v) != c) return false;
        continue;
      }
      state_.assign(v, c);
      for (std::uint32_t ci : occ_[static_cast<std::size_t>(v)]) {
        Cons& con = cons_[ci];
        const Int size = static_cast<Int>(con.members.size());
        ++con.cnt[c];
        if (con.cnt[c] == size) return false;  // fully monochromatic
        if (con.cnt[c] == size - 1 && con.cnt[1 - c] == 0) {
          for (Int member : con.members) {
            if (!state_.assigned(member)) {
              ++propagations_;
              queue_.emplace_back(member, 1 - c);
              break;
            }
          }
        }
      }
    }
    return true;
  }

  // Rule fixpoint, interleaving unit propagation. False on conflict. At a
  // unit fixpoint every single-step consequence of the rule is already
  // implied by two all-but-one constraints whose solution values are in
  // range, so firings here are rare.
  bool propagate_chain() {
    if (!chain_rule_) return true;
    bool fired = true;
    while (fired) {
      fired = false;
      for (const auto& [k, l] : roles_) {
        const auto params = find_flip_chain(state_, k, l);
        if (!params) continue;
        const auto forcings = propagate_flip_chain(state_, canonical_, *params);
        if (forcings.conflict_at) return false;
        for (const auto& [value, color] : forcings.forced) {
          ++chain_;
          if (!assign(value, color)) return false;
          fired = true;
        }
      }
    }
    return true;
  }

  bool step(Int var, int color) { return assign(var, color) && propagate_chain(); }

 private:
  struct Cons {
    std::vector<Int> members;
    Int cnt[2];
  };

  std::vector<Cons> cons_;
  std::vector<std::vector<std::uint32_t>> occ_;
  PartialColoring state_;
  CanonicalForm canonical_;
  bool chain_rule_;
  std::vector<std::pair<Int, Int>> roles_;
  std::vector<std::pair<Int, int>> queue_;
  std::uint64_t propagations_ = 0;
  std::uint64_t chain_ = 0;
};

struct SearchLimits {
  std::atomic<std::uint64_t>* nodes = nullptr;
  std::uint64_t node_cap = 0;
  std::chrono::steady_clock::time_point deadline;
  std::atomic<bool>* stop = nullptr;  // set when another worker already decided SAT
};

// Depth-first search over the occurring variables, lowest first, color 0
// first. Assumes any prefix assignments are already in the engine.
inline Verdict run_search(NaeEngine& engine, const std::vector<Int>& occurring,
                          const SearchLimits& lim, SearchStats& stats, bool root_conflict) {
  struct Decision {
    Int var;
    std::size_t mark;
    bool tried_second;
  };
  std::vector<Decision> decisions;
  bool conflict = root_conflict;
  std::uint64_t local_nodes = 0;

  auto count_node = [&]() -> bool {  // false when a cap fires
    ++local_nodes;
    const std::uint64_t total = 1 + lim.nodes->fetch_add(1, std::memory_order_relaxed);
    if (total >= lim.node_cap) {
      stats.hit_node_cap = true;
      return false;
    }
    if ((local_nodes & 1023) == 0) {
      if (std::chrono::steady_clock::now() >= lim.deadline) {
        stats.hit_time_cap = true;
        return false;
      }
      if (lim.stop && lim.stop->load(std::memory_order_relaxed)) return false;
    }
    return true;
  };

  while (true) {
    if (conflict) {
      while (!decisions.empty() && decisions.back().tried_second) {
        engine.undo_to(decisions.back().mark);
        decisions.pop_back();
      }
      if (decisions.empty()) return Verdict::Unsat;
      Decision& d = decisions.back();
      engine.undo_to(d.mark);
      d.tried_second = true;
      if (!count_node()) return Verdict::Inconclusive;
      conflict = !engine.step(d.var, 1);
    } else {
      Int var = 0;
      for (Int v : occurring) {
        if (!engine.state().assigned(v)) {
          var = v;
          break;
        }
      }
      if (var == 0) return Verdict::Sat;
      decisions.push_back(Decision{var, engine.mark(), false});
      if (!count_node()) return Verdict::Inconclusive;
      conflict = !engine.step(var, 0);
    }
  }
}

}  // namespace detail

/// Single round of unit propagation to fixpoint over the given constraints.
/// On a conflict the input state is left untouched.
inline PropagateOutcome propagate_unit(PartialColoring& state, const ConstraintSet& cs) {
  if (state.n() != cs.n)
    throw ValidationError("state and constraint set cover different domains");
  detail::NaeEngine engine(cs, false, CanonicalForm{});
  for (Int v : state.trail())
    if (!engine.assign(v, state.color(v))) return PropagateOutcome::Conflict;
  for (Int v : engine.state().trail())
    if (!state.assigned(v)) state.assign(v, engine.state().color(v));
  return PropagateOutcome::Fixpoint;
}

/// Decides whether [1,n] admits a 2-coloring free of monochromatic solutions.
/// SAT comes with a witness that has been re-checked against the ground-truth
/// checker; resource caps yield Verdict::Inconclusive, never Unsat.
inline SearchResult exists_valid_coloring(const EquationSpec& spec, Int n,
                                          const SolverOptions& opt = {}) {
  spec.validate();
  if (n < 1) throw ValidationError("domain bound n must be >= 1");
  const auto t0 = std::chrono::steady_clock::now();
  const CanonicalForm canonical = canonicalize(spec);
  const ConstraintSet cs = enumerate_solutions(spec, n);
  const bool chain = opt.propagation == Propagation::UnitAndChain;

  const auto deadline =
      t0 + std::chrono::duration_cast<std::chrono::steady_clock::duration>(
               std::chrono::duration<double>(opt.time_cap_seconds));

  SearchResult result;
  std::atomic<std::uint64_t> nodes{0};

  auto finish = [&](Verdict verdict, std::optional<Coloring> witness, SearchStats stats) {
    stats.nodes = nodes.load();
    stats.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    result.verdict = verdict;
    result.witness = std::move(witness);
    result.stats = stats;
    if (result.witness) {
      if (auto mono = find_monochromatic(*result.witness, spec))
        throw InternalError("SAT witness fails the checker at " + mono->to_string());
    }
    return result;
  };

  if (opt.threads <= 1) {
    detail::NaeEngine engine(cs, chain, canonical);
    const std::vector<Int> occurring = engine.occurring_vars();
    bool root_conflict = false;
    if (opt.break_symmetry) root_conflict = !engine.step(1, 0);
    SearchStats stats;
    detail::SearchLimits lim{&nodes, opt.node_cap, deadline, nullptr};
    const Verdict verdict = detail::run_search(engine, occurring, lim, stats, root_conflict);
    stats.propagations = engine.propagations();
    stats.chain_firings = engine.chain_firings();
    std::optional<Coloring> witness;
    if (verdict == Verdict::Sat) witness = engine.state().to_total(0);
    return finish(verdict, std::move(witness), stats);
  }

  // Prefix-splitting driver: fix the colors of the first prefix integers and
  // search the resulting disjoint subproblems independently. The merged
  // verdict (SAT iff any branch is SAT) matches the single-threaded one.
  Int prefix = opt.split_prefix;
  if (prefix <= 0) {
    prefix = 1;
    while ((std::uint64_t{1} << prefix) < 4u * opt.threads) ++prefix;
    ++prefix;
  }
  const Int lo = opt.break_symmetry ? 2 : 1;
  prefix = std::min<Int>(prefix, n);
  prefix = std::min<Int>(prefix, lo + 19);  // at most ~1M subproblems
  const Int free_bits = std::max<Int>(prefix - lo + 1, 0);
  const std::uint64_t subproblems = std::uint64_t{1} << free_bits;

  struct SubOutcome {
    Verdict verdict = Verdict::Inconclusive;
    std::optional<Coloring> witness;
    SearchStats stats;
    bool ran = false;
  };
  std::vector<SubOutcome> outcomes(subproblems);
  std::atomic<bool> stop{false};
  std::vector<std::thread> workers;
  const unsigned nthreads = opt.threads;

  for (unsigned tid = 0; tid < nthreads; ++tid) {
    workers.emplace_back([&, tid]() {
      for (std::uint64_t s = tid; s < subproblems; s += nthreads) {
        if (stop.load(std::memory_order_relaxed)) break;
        detail::NaeEngine engine(cs, chain, canonical);
        bool root_conflict = false;
        if (opt.break_symmetry && !engine.step(1, 0)) root_conflict = true;
        for (Int v = lo; v <= prefix && !root_conflict; ++v) {
          const int c = static_cast<int>((s >> (v - lo)) & 1u);
          root_conflict = !engine.step(v, c);
        }
        SubOutcome& out = outcomes[s];
        out.ran = true;
        detail::SearchLimits lim{&nodes, opt.node_cap, deadline, &stop};
        out.verdict = detail::run_search(engine, engine.occurring_vars(), lim, out.stats,
                                         root_conflict);
        out.stats.propagations = engine.propagations();
        out.stats.chain_firings = engine.chain_firings();
        if (out.verdict == Verdict::Sat) {
          out.witness = engine.state().to_total(0);
          stop.store(true, std::memory_order_relaxed);
        }
      }
    });
  }
  for (auto& w : workers) w.join();

  SearchStats stats;
  bool all_unsat = true;
  for (std::uint64_t s = 0; s < subproblems; ++s) {
    const SubOutcome& out = outcomes[s];
    stats.propagations += out.stats.propagations;
    stats.chain_firings += out.stats.chain_firings;
    stats.hit_node_cap = stats.hit_node_cap || out.stats.hit_node_cap;
    stats.hit_time_cap = stats.hit_time_cap || out.stats.hit_time_cap;
    if (!out.ran || out.verdict != Verdict::Unsat) all_unsat = false;
    if (out.verdict == Verdict::Sat)
      return finish(Verdict::Sat, out.witness, stats);
  }
  return finish(all_unsat ? Verdict::Unsat : Verdict::Inconclusive, std::nullopt, stats);
}

/// Least n whose search verdict is UNSAT, scanning upward from `start`.
/// UNSAT is upward-closed in n, so the first UNSAT is the Rado number when
/// the scan starts at or below it.
inline Int minimal_rado_by_search(const EquationSpec& spec, Int cap,
                                  const SolverOptions& opt = {}, Int start = 1) {
  spec.validate();
  if (cap < 1) throw ValidationError("cap must be >= 1");
  for (Int n = std::max<Int>(start, 1); n <= cap; ++n) {
    const SearchResult r = exists_valid_coloring(spec, n, opt);
    if (r.verdict == Verdict::Unsat) return n;
    if (r.verdict == Verdict::Inconclusive)
      throw InconclusiveError("search hit its resource cap at n=" + std::to_string(n));
  }
  throw CapExceededError("every n up to " + std::to_string(cap) + " is still colorable");
}

}  // namespace rado
