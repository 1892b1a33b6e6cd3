#include <doctest.h>

#include <string>
#include <vector>

#include "nelbri/equivalence.hpp"

using namespace nelbri;

namespace {

const std::string kFixtures = FIXTURE_DIR;

// Two-element Boolean algebra in the Nelson signature.
FiniteAlgebra boolean_nelson() {
  FiniteAlgebra a;
  a.name = "bool2";
  a.size = 2;
  a.signature = Signature::nelson();
  a.element_names = {"0", "1"};
  a.tables["^"] = {0, 0, 0, 1};
  a.tables["v"] = {0, 1, 1, 1};
  a.tables["->"] = {1, 1, 0, 1};
  a.tables["~"] = {1, 0};
  a.constant_values["1"] = 1;
  validate_algebra(a);
  return a;
}

FiniteAlgebra singleton() { return load_algebra(kFixtures + "/singleton.alg"); }

}  // namespace

TEST_CASE("nelson_to_brignole on the Boolean algebra") {
  FiniteAlgebra n = boolean_nelson();
  FiniteAlgebra b = nelson_to_brignole(n);
  CHECK(b.size == 2);
  CHECK(b.signature.has_operation("->>"));
  CHECK(b.constant_values.at("0") == 0);  // value of ~1
  // Meet is copied verbatim.
  CHECK(b.tables.at("^") == n.tables.at("^"));
  // Boolean implication is its own contrapositive, so ->> equals ->.
  CHECK(b.tables.at("->>") == n.tables.at("->"));
  // The result is a Brignole algebra.
  CheckReport report = check_axiom_set(b, brignole_axioms(), definitions(Setting::Brignole));
  CHECK(report.all_hold());
}

TEST_CASE("brignole_to_nelson reconstructs the derived operations") {
  FiniteAlgebra b = nelson_to_brignole(boolean_nelson());
  FiniteAlgebra n = brignole_to_nelson(b);
  CHECK(n.signature.has_operation("v"));
  CHECK(n.tables.at("^") == b.tables.at("^"));
  // 1 is the value of 0 ->> 0.
  CHECK(n.constant_values.at("1") ==
        eval_term(b, parse_term("0 ->> 0", Signature::brignole()), {}));
  // ~x = x ->> 0, computed cell by cell.
  for (int x = 0; x < b.size; ++x)
    CHECK(n.tables.at("~")[x] ==
          b.table_at("->>", std::vector<int>{x, b.constant_values.at("0")}));
  CHECK(check_axiom_set(n, nelson_axioms(), definitions(Setting::Nelson)).all_hold());
}

TEST_CASE("translations refuse inputs violating their preconditions") {
  FiniteAlgebra bad = load_algebra(kFixtures + "/b1_fail.alg");
  try {
    brignole_to_nelson(bad);
    FAIL("expected PreconditionFailure");
  } catch (const PreconditionFailure& e) {
    CHECK(e.axiom_id() == "B1");
    CHECK_FALSE(e.verdict().holds);
    // The recorded witness is the published one: x = a, y = 0.
    CHECK(e.verdict().witness ==
          Assignment{{"x", bad.element_index("a")}, {"y", bad.element_index("0")}});
  }
  // Bypassing the check still yields an algebra over the right signature.
  FiniteAlgebra forced = brignole_to_nelson(bad, false);
  CHECK(forced.size == bad.size);
  CHECK(forced.signature.has_operation("->"));

  // A Nelson-signature algebra that is not a Nelson algebra is refused too.
  FiniteAlgebra n = boolean_nelson();
  n.tables["~"] = {0, 1};  // identity is not an involution respecting N4
  CHECK_THROWS_AS(nelson_to_brignole(n), PreconditionFailure);
}

TEST_CASE("round trips restore every table cell") {
  TranslationReport nr = roundtrip_nelson(boolean_nelson());
  CHECK(nr.tables_identical);
  CHECK(nr.output_check.all_hold());
  bool saw_recomputed = false;
  for (const TableComparison& c : nr.comparisons) {
    CHECK(c.equal);
    if (c.op == "-> (recomputed)") saw_recomputed = true;
  }
  CHECK(saw_recomputed);

  TranslationReport br = roundtrip_brignole(nelson_to_brignole(boolean_nelson()));
  CHECK(br.tables_identical);
  CHECK(br.output_check.all_hold());
  for (const TableComparison& c : br.comparisons) CHECK(c.equal);
}

TEST_CASE("singleton round trips in both signatures") {
  FiniteAlgebra s = singleton();
  TranslationReport br = roundtrip_brignole(s);
  CHECK(br.tables_identical);
  FiniteAlgebra n = brignole_to_nelson(s);
  TranslationReport nr = roundtrip_nelson(n);
  CHECK(nr.tables_identical);
}

TEST_CASE("compare_tables pinpoints the first differing cell") {
  FiniteAlgebra a = nelson_to_brignole(boolean_nelson());
  FiniteAlgebra b = a;
  b.tables["^"][3] = 0;  // 1 ^ 1 changed
  std::vector<TableComparison> cmp = compare_tables(a, b);
  bool found = false;
  for (const TableComparison& c : cmp) {
    if (c.op == "^") {
      CHECK_FALSE(c.equal);
      CHECK(c.first_diff_cell == std::vector<int>{1, 1});
      CHECK(c.lhs_value == 1);
      CHECK(c.rhs_value == 0);
      found = true;
    } else {
      CHECK(c.equal);
    }
  }
  CHECK(found);
}
