#ifndef NELBRI_EQUIVALENCE_HPP
#define NELBRI_EQUIVALENCE_HPP

#include <stdexcept>
#include <string>
#include <vector>

#include "nelbri/algebra.hpp"
#include "nelbri/catalog.hpp"

namespace nelbri {

/// Thrown when a translation input fails its axiom precondition.
class PreconditionFailure : public std::runtime_error {
 public:
  PreconditionFailure(std::string axiom_id, IdentityVerdict verdict, const std::string& what)
      : std::runtime_error(what), axiom_id_(std::move(axiom_id)), verdict_(std::move(verdict)) {}
  const std::string& axiom_id() const { return axiom_id_; }
  const IdentityVerdict& verdict() const { return verdict_; }

 private:
  std::string axiom_id_;
  IdentityVerdict verdict_;
};

/// Cell-by-cell comparison of one operation (or constant, arity 0) table.
struct TableComparison {
  std::string op;
  bool equal = false;
  std::vector<int> first_diff_cell;  // argument tuple, empty for constants
  int lhs_value = -1;
  int rhs_value = -1;
};

struct TranslationReport {
  FiniteAlgebra input;
  FiniteAlgebra output;            // round-trip result (or one-way result)
  CheckReport output_check;        // axiom verdicts on the translated algebra
  std::vector<TableComparison> comparisons;
  bool tables_identical = false;
};

/// Theorem 3 direction: meet copied, x ->> y computed as (x -> y) ^ (~y -> ~x),
/// constant 0 = value of ~1. Throws PreconditionFailure unless the input
/// satisfies N1..N8 (or check_precondition is false).
FiniteAlgebra nelson_to_brignole(const FiniteAlgebra& a, bool check_precondition = true);

/// Theorem 4 direction: meet copied, ~ / v / -> / 1 computed from the
/// strong-implication definitions. Precondition B1..B10.
FiniteAlgebra brignole_to_nelson(const FiniteAlgebra& a, bool check_precondition = true);

/// Theorem 5: translate there and back, then compare every table cell-for-cell
/// against the original. The Nelson round trip additionally compares the weak
/// implication recomputed as x ->> (x ->> y) on the intermediate algebra
/// against the original -> table (entry "-> (recomputed)").
TranslationReport roundtrip_nelson(const FiniteAlgebra& a, bool check_precondition = true);
TranslationReport roundtrip_brignole(const FiniteAlgebra& a, bool check_precondition = true);

/// Compares tables and constants shared by the two algebras' signatures.
std::vector<TableComparison> compare_tables(const FiniteAlgebra& a, const FiniteAlgebra& b);

}  // namespace nelbri

#endif
