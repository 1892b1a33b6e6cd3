#ifndef NELBRI_TERM_HPP
#define NELBRI_TERM_HPP

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace nelbri {

/// Operation/constant vocabulary. Operation names are unique, arities >= 1,
/// constants disjoint from operation names.
struct Signature {
  std::vector<std::pair<std::string, int>> operations;
  std::vector<std::string> constants;

  bool has_operation(const std::string& name) const;
  bool has_constant(const std::string& name) const;
  int arity_of(const std::string& name) const;  // throws if unknown

  /// <^, v, ->, ~, 1>
  static const Signature& nelson();
  /// <^, ->>, 0>
  static const Signature& brignole();
};

enum class TermKind { Variable, Constant, Application };

/// Immutable first-order term: variable, constant, or operation application.
class Term {
 public:
  static Term variable(std::string name);
  static Term constant(std::string name);
  static Term apply(std::string op, std::vector<Term> args);

  TermKind kind() const { return kind_; }
  const std::string& head() const { return head_; }
  const std::vector<Term>& args() const { return args_; }
  bool is_variable() const { return kind_ == TermKind::Variable; }

  bool operator==(const Term& other) const;
  bool operator!=(const Term& other) const { return !(*this == other); }

  int node_count() const;
  std::set<std::string> variables() const;
  void collect_variables(std::set<std::string>& out) const;

 private:
  Term(TermKind k, std::string h, std::vector<Term> a)
      : kind_(k), head_(std::move(h)), args_(std::move(a)) {}
  TermKind kind_;
  std::string head_;
  std::vector<Term> args_;
};

struct Equation {
  Term lhs;
  Term rhs;
  Equation swapped() const { return {rhs, lhs}; }
};

/// Path of child indices from the root; empty = root.
using Position = std::vector<int>;

/// Finite map variable -> term; application is simultaneous.
using Substitution = std::map<std::string, Term>;

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& msg, std::size_t offset)
      : std::runtime_error(msg + " (at offset " + std::to_string(offset) + ")"),
        offset_(offset) {}
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

/// ASCII grammar: `=` loosest, then right-associative `->>`/`->`, then `v`,
/// then `^`, then prefix `~`/`!`; parentheses override. Identifiers that are
/// not declared constants are variables.
Term parse_term(std::string_view text, const Signature& sig);
Equation parse_equation(std::string_view text, const Signature& sig);

std::string format_term(const Term& t);
std::string format_equation(const Equation& e);

Term apply_substitution(const Term& t, const Substitution& s);
Equation apply_substitution(const Equation& e, const Substitution& s);

/// Extends `binding` so that pattern instantiated with it equals subject.
bool match_extend(const Term& pattern, const Term& subject, Substitution& binding);
/// One-way matching: the unique s with apply_substitution(pattern, s) == subject.
std::optional<Substitution> match_pattern(const Term& pattern, const Term& subject);

/// All positions of t in pre-order (root first).
std::vector<Position> positions(const Term& t);
const Term& subterm_at(const Term& t, const Position& p);  // throws std::out_of_range
Term replace_at(const Term& t, const Position& p, Term replacement);

/// True iff e2 is e1 under a variable bijection (sides not swapped).
bool alpha_equal(const Equation& e1, const Equation& e2);

/// Non-recursive definition of a symbol: constants have arity 0 and no params.
struct Definition {
  std::string symbol;
  std::vector<std::string> params;
  Term body;
  int arity() const { return static_cast<int>(params.size()); }
};

struct DefinitionTable {
  std::vector<Definition> defs;
  const Definition* find(const std::string& symbol) const;
};

/// Eliminates all defined symbols, innermost first; every remaining head must
/// belong to `base`. Throws std::runtime_error on a symbol with no definition.
Term expand_definitions(const Term& t, const DefinitionTable& defs, const Signature& base);
Equation expand_definitions(const Equation& e, const DefinitionTable& defs,
                            const Signature& base);

/// Base signature plus the defined symbols of `defs` (for parsing surface forms).
Signature extend_signature(const Signature& base, const DefinitionTable& defs);

}  // namespace nelbri

#endif
