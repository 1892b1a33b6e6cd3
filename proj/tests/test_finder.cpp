#include <doctest.h>

#include <algorithm>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "nelbri/finder.hpp"

using namespace nelbri;

namespace {

std::vector<Equation> expanded_brignole() {
  std::vector<Equation> out;
  for (const NamedEquation& ax : brignole_axioms()) out.push_back(ax.expanded);
  return out;
}

std::vector<Equation> expanded_brignole_except(const std::string& skip) {
  std::vector<Equation> out;
  for (const NamedEquation& ax : brignole_axioms())
    if (ax.id != skip) out.push_back(ax.expanded);
  return out;
}

SearchProblem brignole_problem(int n) {
  return SearchProblem{Signature::brignole(), n, expanded_brignole(), {}};
}

std::string table_key(const FiniteAlgebra& a) {
  std::ostringstream out;
  for (const auto& [op, table] : a.tables) {
    out << op << ':';
    for (int v : table) out << v << ',';
  }
  for (const auto& [name, v] : a.constant_values) out << name << '=' << v << ';';
  return out.str();
}

std::set<std::string> key_set(const std::vector<FiniteAlgebra>& models) {
  std::set<std::string> out;
  for (const FiniteAlgebra& m : models) out.insert(table_key(m));
  return out;
}

// Independent generate-and-test oracle: odometer over every cell of every
// table plus every constant value.
std::vector<FiniteAlgebra> all_models_brute_force(const SearchProblem& p) {
  FiniteAlgebra a;
  a.name = "bf";
  a.size = p.size;
  a.signature = p.signature;
  for (int i = 0; i < p.size; ++i) a.element_names.push_back(std::to_string(i));
  std::vector<std::vector<int>*> cells;
  for (const auto& [op, arity] : p.signature.operations) {
    std::size_t n_cells = 1;
    for (int i = 0; i < arity; ++i) n_cells *= static_cast<std::size_t>(p.size);
    a.tables.emplace(op, std::vector<int>(n_cells, 0));
  }
  std::vector<int> consts(p.signature.constants.size(), 0);
  std::vector<int*> slots;
  for (auto& [op, table] : a.tables)
    for (int& cell : table) slots.push_back(&cell);
  for (int& c : consts) slots.push_back(&c);

  std::vector<FiniteAlgebra> out;
  while (true) {
    for (std::size_t i = 0; i < consts.size(); ++i)
      a.constant_values[p.signature.constants[i]] = consts[i];
    bool ok = true;
    for (const Equation& e : p.must_hold)
      if (!check_identity(a, e).holds) { ok = false; break; }
    if (ok)
      for (const Equation& e : p.must_fail)
        if (check_identity(a, e).holds) { ok = false; break; }
    if (ok) out.push_back(a);
    // advance the odometer
    std::size_t i = 0;
    for (; i < slots.size(); ++i) {
      if (++*slots[i] < p.size) break;
      *slots[i] = 0;
    }
    if (i == slots.size()) break;
  }
  return out;
}

}  // namespace

TEST_CASE("exactly one Brignole algebra of size 1") {
  SearchResult r = enumerate_models(brignole_problem(1));
  REQUIRE(r.models.size() == 1);
  CHECK(r.models[0].table_at("^", std::vector<int>{0, 0}) == 0);
  CHECK(r.models[0].table_at("->>", std::vector<int>{0, 0}) == 0);
  CHECK_FALSE(r.stats.budget_exhausted);
}

TEST_CASE("size-2 enumeration contains the two-element chain") {
  SearchResult r = enumerate_models(brignole_problem(2));
  CHECK_FALSE(r.models.empty());
  FiniteAlgebra chain;
  chain.name = "chain2";
  chain.size = 2;
  chain.signature = Signature::brignole();
  chain.element_names = {"0", "1"};
  chain.tables["^"] = {0, 0, 0, 1};
  chain.tables["->>"] = {1, 1, 0, 1};
  chain.constant_values["0"] = 0;
  bool found = false;
  for (const FiniteAlgebra& m : r.models)
    if (find_isomorphism(m, chain).has_value()) found = true;
  CHECK(found);
  // Every emitted model really satisfies all ten axioms.
  for (const FiniteAlgebra& m : r.models)
    for (const Equation& e : expanded_brignole()) CHECK(check_identity(m, e).holds);
}

TEST_CASE("search agrees with generate-and-test at small sizes") {
  SearchLimits raw;
  raw.iso_dedup = false;
  raw.symmetry_breaking = false;
  for (int n = 1; n <= 2; ++n) {
    SearchProblem p = brignole_problem(n);
    CHECK(key_set(enumerate_models(p, raw).models) ==
          key_set(all_models_brute_force(p)));
    // Also with a must-fail constraint.
    SearchProblem q{Signature::brignole(), n, expanded_brignole_except("B1"),
                    {find_catalog("B1")->expanded}};
    CHECK(key_set(enumerate_models(q, raw).models) ==
          key_set(all_models_brute_force(q)));
  }
}

TEST_CASE("result is invariant under axiom reordering and worker count") {
  SearchProblem p = brignole_problem(3);
  SearchResult base = enumerate_models(p);
  SearchProblem shuffled = p;
  std::reverse(shuffled.must_hold.begin(), shuffled.must_hold.end());
  CHECK(key_set(enumerate_models(shuffled).models) == key_set(base.models));
  SearchLimits two;
  two.workers = 2;
  CHECK(key_set(enumerate_models(p, two).models) == key_set(base.models));
}

TEST_CASE("find_counterexample rediscovers the minimal B1 model") {
  CounterexampleResult r = find_counterexample(
      expanded_brignole_except("B1"), {find_catalog("B1")->expanded},
      Signature::brignole(), 4);
  REQUIRE(r.model.has_value());
  CHECK(r.size_reached == 3);
  CHECK_FALSE(r.budget_exhausted);
  CHECK_FALSE(check_identity(*r.model, find_catalog("B1")->expanded).holds);
  for (const Equation& e : expanded_brignole_except("B1"))
    CHECK(check_identity(*r.model, e).holds);
}

TEST_CASE("no model is distinct from budget exhaustion") {
  // x = y has no model with two elements: search the full size honestly.
  Equation collapse = parse_equation("x = y", Signature::brignole());
  SearchProblem p{Signature::brignole(), 2, {collapse}, {}};
  SearchResult r = enumerate_models(p);
  CHECK(r.models.empty());
  CHECK_FALSE(r.stats.budget_exhausted);

  SearchLimits tiny;
  tiny.node_budget = 1;
  SearchResult cut = enumerate_models(brignole_problem(3), tiny);
  CHECK(cut.stats.budget_exhausted);

  CounterexampleResult c = find_counterexample(
      expanded_brignole_except("B1"), {find_catalog("B1")->expanded},
      Signature::brignole(), 4, tiny);
  CHECK_FALSE(c.model.has_value());
  CHECK(c.budget_exhausted);
}

TEST_CASE("canonical_form is idempotent and relabelling-invariant") {
  FiniteAlgebra a = load_algebra(std::string(FIXTURE_DIR) + "/b3_fail.alg");
  FiniteAlgebra canon = canonical_form(a);
  CHECK(table_key(canonical_form(canon)) == table_key(canon));
  // Constant-preserving relabellings do not change the canonical form.
  FiniteAlgebra b = relabel(a, {0, 2, 3, 1});
  CHECK(table_key(canonical_form(b)) == table_key(canon));
  FiniteAlgebra c = relabel(a, {0, 3, 1, 2});
  CHECK(table_key(canonical_form(c)) == table_key(canon));
}

TEST_CASE("iso-dedup collapses isomorphic copies") {
  SearchLimits raw;
  raw.iso_dedup = false;
  raw.symmetry_breaking = false;
  SearchProblem p = brignole_problem(2);
  SearchResult all = enumerate_models(p, raw);
  SearchResult dedup = enumerate_models(p);
  CHECK(dedup.models.size() <= all.models.size());
  // Every raw model is isomorphic to some representative.
  for (const FiniteAlgebra& m : all.models) {
    bool matched = false;
    for (const FiniteAlgebra& rep : dedup.models)
      if (find_isomorphism(m, rep).has_value()) matched = true;
    CHECK(matched);
  }
  // Representatives are pairwise non-isomorphic.
  for (std::size_t i = 0; i < dedup.models.size(); ++i)
    for (std::size_t j = i + 1; j < dedup.models.size(); ++j)
      CHECK_FALSE(find_isomorphism(dedup.models[i], dedup.models[j]).has_value());
}

TEST_CASE("equation-set files: ids, comments, must-fail markers") {
  std::istringstream in(
      "# leading comment\n"
      "B1: (x ->> x) ->> y = y\n"
      "\n"
      "! x ^ y = y ^ x   # trailing comment\n"
      "extra: x ^ x = x\n");
  EquationSet set = parse_equation_set(in, Signature::brignole());
  REQUIRE(set.entries.size() == 3);
  CHECK(set.entries[0].id == "B1");
  CHECK_FALSE(set.entries[0].must_fail);
  CHECK(set.entries[1].id.empty());
  CHECK(set.entries[1].must_fail);
  CHECK(format_equation(set.entries[1].surface) == "x ^ y = y ^ x");
  CHECK(set.entries[2].id == "extra");
  CHECK_THROWS(load_equation_set(std::string(FIXTURE_DIR) + "/missing.eqs",
                                 Signature::brignole()));
}
