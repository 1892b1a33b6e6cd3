#ifndef NELBRI_FINDER_HPP
#define NELBRI_FINDER_HPP

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "nelbri/algebra.hpp"

namespace nelbri {

struct SearchLimits {
  long max_solutions = 0;  // 0 = unlimited
  long node_budget = 100'000'000;
  double time_budget_seconds = 300.0;
  bool iso_dedup = true;
  bool symmetry_breaking = true;  // fix constants to element 0 + least-number heuristic
  int workers = 1;
};

struct SearchStats {
  long nodes = 0;
  long propagations = 0;
  double seconds = 0.0;
  bool budget_exhausted = false;
};

/// Equations must already be expanded over the base signature.
/// Each must-fail equation needs >= 1 falsifying assignment (witnesses are
/// searched alongside the tables and re-verified on every emitted model).
struct SearchProblem {
  Signature signature;
  int size = 1;
  std::vector<Equation> must_hold;
  std::vector<Equation> must_fail;
};

struct SearchResult {
  std::vector<FiniteAlgebra> models;
  SearchStats stats;
};

/// Depth-first search over open table cells with ground-instance watching and
/// unit propagation. Every returned model is re-verified by the brute-force
/// identity checker. With iso_dedup, models are canonical representatives
/// sorted by canonical form; exhaustion of a budget sets
/// stats.budget_exhausted (distinct from "no models").
SearchResult enumerate_models(const SearchProblem& p, const SearchLimits& limits = {});

struct CounterexampleResult {
  std::optional<FiniteAlgebra> model;  // found at size_reached
  int size_reached = 0;                // last size searched (or attempted)
  bool budget_exhausted = false;       // search at size_reached was cut short
  SearchStats stats;                   // aggregated over all sizes tried
};

/// Ascends n = 1..max_n looking for a model of `hold` falsifying every
/// equation of `fail`; stops at the first size with a model, or at the first
/// size whose search blows a budget.
CounterexampleResult find_counterexample(const std::vector<Equation>& hold,
                                         const std::vector<Equation>& fail,
                                         const Signature& sig, int max_n,
                                         const SearchLimits& limits = {});

/// Lexicographically least relabeling of the size, tables, and constant
/// interpretations over all carrier permutations (n <= 8); constants are
/// relabelled along with the tables, so isomorphic algebras share it.
FiniteAlgebra canonical_form(const FiniteAlgebra& a);

/// Equation-set file: one equation per line, `#` comments, optional `<id>:`
/// prefix, `!` prefix marks must-fail.
struct EquationSetEntry {
  std::string id;  // may be empty
  Equation surface;
  bool must_fail = false;
};

struct EquationSet {
  std::vector<EquationSetEntry> entries;
};

EquationSet parse_equation_set(std::istream& in, const Signature& sig);
EquationSet load_equation_set(const std::string& path, const Signature& sig);

}  // namespace nelbri

#endif
