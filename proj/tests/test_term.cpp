#include <doctest.h>

#include <random>
#include <set>
#include <string>
#include <vector>

#include "nelbri/catalog.hpp"
#include "nelbri/term.hpp"

using namespace nelbri;

namespace {

// Independent random term generator over the Brignole base signature.
Term random_term(std::mt19937& rng, int depth) {
  std::uniform_int_distribution<int> kind(0, depth <= 0 ? 1 : 3);
  switch (kind(rng)) {
    case 0: {
      std::uniform_int_distribution<int> v(0, 2);
      return Term::variable(std::string(1, static_cast<char>('x' + v(rng))));
    }
    case 1:
      return Term::constant("0");
    case 2:
      return Term::apply("^", {random_term(rng, depth - 1), random_term(rng, depth - 1)});
    default:
      return Term::apply("->>", {random_term(rng, depth - 1), random_term(rng, depth - 1)});
  }
}

// Naive recursive substitution used as an oracle for apply_substitution.
Term subst_oracle(const Term& t, const Substitution& s) {
  if (t.is_variable()) {
    auto it = s.find(t.head());
    return it == s.end() ? t : it->second;
  }
  if (t.kind() == TermKind::Constant) return t;
  std::vector<Term> args;
  for (const Term& a : t.args()) args.push_back(subst_oracle(a, s));
  return Term::apply(t.head(), std::move(args));
}

int count_nodes(const Term& t) {
  int n = 1;
  for (const Term& a : t.args()) n += count_nodes(a);
  return n;
}

}  // namespace

TEST_CASE("parsing respects precedence and associativity") {
  const Signature& sig = Signature::brignole();
  // ^ binds tighter than ->>.
  CHECK(parse_term("x ^ y ->> z", sig) == parse_term("(x ^ y) ->> z", sig));
  // ->> is right-associative.
  CHECK(parse_term("x ->> y ->> z", sig) == parse_term("x ->> (y ->> z)", sig));
  CHECK(parse_term("x ->> y ->> z", sig) != parse_term("(x ->> y) ->> z", sig));
  // ^ groups left-to-right but either grouping parses.
  CHECK(format_term(parse_term("x ^ (y ^ z)", sig)) == "x ^ (y ^ z)");

  const Signature& nsig = Signature::nelson();
  // v between ^ and ->.
  CHECK(parse_term("x ^ y v z -> w", nsig) ==
        parse_term("((x ^ y) v z) -> w", nsig));
  // unary ~ binds tightest.
  CHECK(parse_term("~x ^ y", nsig) == parse_term("(~x) ^ y", nsig));
  CHECK(parse_term("~~x", nsig) == Term::apply("~", {Term::apply("~", {Term::variable("x")})}));
  // declared constants parse as constants, other identifiers as variables.
  Term one = parse_term("1", nsig);
  CHECK(one.kind() == TermKind::Constant);
  CHECK(parse_term("q", nsig).is_variable());
}

TEST_CASE("parse errors carry offsets") {
  const Signature& sig = Signature::brignole();
  CHECK_THROWS_AS(parse_term("x ^", sig), ParseError);
  CHECK_THROWS_AS(parse_term("(x ^ y", sig), ParseError);
  CHECK_THROWS_AS(parse_term("x ^ y)", sig), ParseError);
  CHECK_THROWS_AS(parse_term("", sig), ParseError);
  CHECK_THROWS_AS(parse_equation("x ^ y", sig), ParseError);  // no '='
  CHECK_THROWS_AS(parse_equation("x = y = z", sig), ParseError);
  CHECK_THROWS_AS(parse_term("~x", sig), ParseError);  // ~ not in base Brignole
}

TEST_CASE("format/parse roundtrip on random terms") {
  const Signature& sig = Signature::brignole();
  std::mt19937 rng(20240817);
  for (int i = 0; i < 200; ++i) {
    Term t = random_term(rng, 4);
    CHECK(parse_term(format_term(t), sig) == t);
  }
}

TEST_CASE("apply_substitution agrees with a naive oracle and is simultaneous") {
  const Signature& sig = Signature::brignole();
  std::mt19937 rng(7);
  for (int i = 0; i < 100; ++i) {
    Term t = random_term(rng, 3);
    Substitution s{{"x", random_term(rng, 2)}, {"y", random_term(rng, 2)}};
    CHECK(apply_substitution(t, s) == subst_oracle(t, s));
  }
  // Simultaneous, not sequential: x -> y, y -> x swaps.
  Term t = parse_term("x ^ y", sig);
  Substitution swap{{"x", Term::variable("y")}, {"y", Term::variable("x")}};
  CHECK(apply_substitution(t, swap) == parse_term("y ^ x", sig));
}

TEST_CASE("match_pattern recovers a substitution it can replay") {
  const Signature& sig = Signature::brignole();
  std::mt19937 rng(99);
  for (int i = 0; i < 100; ++i) {
    Term pattern = random_term(rng, 3);
    Substitution s{{"x", random_term(rng, 2)},
                   {"y", random_term(rng, 2)},
                   {"z", random_term(rng, 2)}};
    Term subject = apply_substitution(pattern, s);
    auto found = match_pattern(pattern, subject);
    REQUIRE(found.has_value());
    CHECK(apply_substitution(pattern, *found) == subject);
  }
  // Non-linear pattern must see equal subjects.
  Term p = parse_term("x ^ x", sig);
  CHECK(match_pattern(p, parse_term("y ^ y", sig)).has_value());
  CHECK_FALSE(match_pattern(p, parse_term("y ^ z", sig)).has_value());
  CHECK_FALSE(match_pattern(parse_term("x ^ y", sig), parse_term("x ->> y", sig)).has_value());
}

TEST_CASE("positions enumerate every node exactly once, pre-order") {
  const Signature& sig = extended_signature(Setting::Brignole);
  // lhs of B3: x ^ ~(x ^ ~y) — 3 vars + 2 meets + 2 negations = 7 nodes.
  Term t = parse_term("x ^ ~(x ^ ~y)", sig);
  std::vector<Position> ps = positions(t);
  CHECK(static_cast<int>(ps.size()) == count_nodes(t));
  CHECK(ps.size() == 7);
  CHECK(ps.front().empty());  // root first
  std::set<std::string> seen;
  for (const Position& p : ps) {
    std::string key;
    for (int i : p) key += static_cast<char>('0' + i);
    CHECK(seen.insert(key).second);
    CHECK_NOTHROW(subterm_at(t, p));
  }
  CHECK_THROWS_AS(subterm_at(t, Position{5}), std::out_of_range);
}

TEST_CASE("replace_at of the original subterm is the identity") {
  std::mt19937 rng(3);
  for (int i = 0; i < 100; ++i) {
    Term t = random_term(rng, 4);
    for (const Position& p : positions(t)) {
      CHECK(replace_at(t, p, subterm_at(t, p)) == t);
    }
  }
  const Signature& sig = Signature::brignole();
  Term t = parse_term("x ^ (y ->> z)", sig);
  CHECK(replace_at(t, {1, 0}, Term::constant("0")) == parse_term("x ^ (0 ->> z)", sig));
}

TEST_CASE("alpha_equal is an equivalence respecting structure") {
  const Signature& sig = Signature::brignole();
  auto eq = [&](const char* s) { return parse_equation(s, sig); };
  CHECK(alpha_equal(eq("x ^ y = y"), eq("a ^ b = b")));
  CHECK(alpha_equal(eq("x ^ y = y"), eq("x ^ y = y")));
  // Not a bijection: two variables to one.
  CHECK_FALSE(alpha_equal(eq("x ^ y = y"), eq("x ^ x = x")));
  CHECK_FALSE(alpha_equal(eq("x ^ x = x"), eq("x ^ y = y")));
  // Sides are not swapped.
  CHECK_FALSE(alpha_equal(eq("x ^ y = y"), eq("y = x ^ y")));
  // Symmetry on a nontrivial pair.
  CHECK(alpha_equal(eq("x ->> (y ->> x) = x"), eq("s ->> (t ->> s) = s")));
}

TEST_CASE("definition expansion: examples and idempotence") {
  const DefinitionTable& bdefs = definitions(Setting::Brignole);
  const Signature& bbase = Signature::brignole();
  const Signature& bext = extended_signature(Setting::Brignole);

  CHECK(expand_definitions(parse_term("~x", bext), bdefs, bbase) ==
        parse_term("x ->> 0", bbase));
  CHECK(expand_definitions(parse_term("1", bext), bdefs, bbase) ==
        parse_term("0 ->> 0", bbase));
  CHECK(expand_definitions(parse_term("x -> y", bext), bdefs, bbase) ==
        parse_term("x ->> (x ->> y)", bbase));
  // Nested defined symbols expand innermost-first: ~~x.
  CHECK(expand_definitions(parse_term("~~x", bext), bdefs, bbase) ==
        parse_term("(x ->> 0) ->> 0", bbase));
  // Expansion over the base signature is idempotent.
  Term expanded = expand_definitions(parse_term("x v ~y", bext), bdefs, bbase);
  CHECK(expand_definitions(expanded, bdefs, bbase) == expanded);

  const DefinitionTable& ndefs = definitions(Setting::Nelson);
  const Signature& nbase = Signature::nelson();
  const Signature& next = extended_signature(Setting::Nelson);
  CHECK(expand_definitions(parse_term("x ->> y", next), ndefs, nbase) ==
        parse_term("(x -> y) ^ (~y -> ~x)", nbase));
  CHECK(expand_definitions(parse_term("0", next), ndefs, nbase) ==
        parse_term("~1", nbase));
  CHECK(expand_definitions(parse_term("!x", next), ndefs, nbase) ==
        parse_term("x -> ~1", nbase));
}

TEST_CASE("extend_signature exposes defined symbols for parsing") {
  const Signature& bext = extended_signature(Setting::Brignole);
  CHECK(bext.has_operation("~"));
  CHECK(bext.has_operation("v"));
  CHECK(bext.has_operation("->"));
  CHECK(bext.has_constant("1"));
  CHECK(bext.arity_of("v") == 2);
  CHECK_FALSE(Signature::brignole().has_operation("~"));
}
