#ifndef NELBRI_ALGEBRA_HPP
#define NELBRI_ALGEBRA_HPP

#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "nelbri/catalog.hpp"
#include "nelbri/term.hpp"

namespace nelbri {

/// Variable valuation into the carrier {0..n-1}.
using Assignment = std::map<std::string, int>;

/// Finite algebra: carrier {0..n-1}, one flat row-major table per operation,
/// one element per constant. Fixture files may name elements; names map to
/// indices in declaration order.
struct FiniteAlgebra {
  std::string name;
  int size = 0;
  Signature signature;
  std::vector<std::string> element_names;  // size() == size
  std::map<std::string, std::vector<int>> tables;
  std::map<std::string, int> constant_values;

  int table_at(const std::string& op, std::span<const int> args) const;
  const std::string& element_name(int e) const { return element_names[e]; }
  int element_index(const std::string& name) const;  // throws if unknown
};

/// Validates sizes, ranges, and coverage of the signature. Throws
/// std::runtime_error with a description of the first defect.
void validate_algebra(const FiniteAlgebra& a);

/// Algebra file format (bit-exact, owned here):
///   algebra <name>
///   size <n>
///   elements <e0> ... <e{n-1}>
///   op <opname> <arity>
///   <n^arity entries, row-major, one row of n entries per line for arity 2>
///   const <name> <element>
FiniteAlgebra parse_algebra(std::istream& in);
FiniteAlgebra parse_algebra_text(const std::string& text);
FiniteAlgebra load_algebra(const std::string& path);
std::string format_algebra(const FiniteAlgebra& a);

/// Bottom-up table lookup; throws on a variable missing from v.
int eval_term(const FiniteAlgebra& a, const Term& t, const Assignment& v);

struct IdentityVerdict {
  bool holds = false;
  Assignment witness;  // lexicographically first falsifier when !holds
  int lhs_value = -1;
  int rhs_value = -1;
};

/// Brute-force check over all n^|vars| assignments, variables in alphabetical
/// order, values in lexicographic order.
IdentityVerdict check_identity(const FiniteAlgebra& a, const Equation& e);

struct CheckReport {
  std::vector<std::pair<std::string, IdentityVerdict>> entries;
  bool all_hold() const;
  std::vector<std::string> failing_ids() const;
};

/// Per-axiom verdicts, in input order. Equations are expanded over the
/// algebra's signature before checking.
CheckReport check_axiom_set(const FiniteAlgebra& a, std::span<const NamedEquation> axioms,
                            const DefinitionTable& defs);

/// Carrier bijection commuting with all tables and fixing constants, or
/// nullopt. Exhaustive over permutations (n <= 8). Throws on signature or
/// size mismatch only when sizes differ but signatures match; a size mismatch
/// simply yields nullopt.
std::optional<std::vector<int>> find_isomorphism(const FiniteAlgebra& a,
                                                 const FiniteAlgebra& b);

/// Relabels a's carrier by permutation p (new index = p[old index]).
FiniteAlgebra relabel(const FiniteAlgebra& a, const std::vector<int>& p);

}  // namespace nelbri

#endif
