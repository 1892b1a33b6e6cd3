#include "nelbri/equivalence.hpp"

#include <sstream>

namespace nelbri {

namespace {

void require_axioms(const FiniteAlgebra& a, Setting s) {
  const auto& axioms = s == Setting::Nelson ? nelson_axioms() : brignole_axioms();
  CheckReport report = check_axiom_set(a, axioms, definitions(s));
  for (const auto& [id, verdict] : report.entries) {
    if (verdict.holds) continue;
    std::ostringstream msg;
    msg << "algebra " << (a.name.empty() ? "unnamed" : a.name) << " fails axiom " << id
        << " at";
    for (const auto& [var, val] : verdict.witness)
      msg << ' ' << var << '=' << a.element_name(val);
    msg << " (lhs=" << a.element_name(verdict.lhs_value)
        << ", rhs=" << a.element_name(verdict.rhs_value) << ")";
    throw PreconditionFailure(id, verdict, msg.str());
  }
}

/// Fills a binary table by evaluating `t` (over the source algebra, with
/// definitions already expanded) at every (x, y).
std::vector<int> binary_table_from_term(const FiniteAlgebra& src, const Term& t) {
  std::vector<int> table(static_cast<std::size_t>(src.size) * src.size);
  Assignment v;
  for (int x = 0; x < src.size; ++x)
    for (int y = 0; y < src.size; ++y) {
      v["x"] = x;
      v["y"] = y;
      table[static_cast<std::size_t>(x) * src.size + y] = eval_term(src, t, v);
    }
  return table;
}

std::vector<int> unary_table_from_term(const FiniteAlgebra& src, const Term& t) {
  std::vector<int> table(src.size);
  Assignment v;
  for (int x = 0; x < src.size; ++x) {
    v["x"] = x;
    table[x] = eval_term(src, t, v);
  }
  return table;
}

Equation defining_equation(Setting s, const std::string& text) {
  // Parses a surface term over the extended signature and expands it to the
  // base signature of `s`.
  Term t = parse_term(text, extended_signature(s));
  Term expanded = expand_definitions(t, definitions(s), base_signature(s));
  return Equation{t, expanded};
}

}  // namespace

FiniteAlgebra nelson_to_brignole(const FiniteAlgebra& a, bool check_precondition) {
  if (check_precondition) require_axioms(a, Setting::Nelson);
  FiniteAlgebra out;
  out.name = a.name.empty() ? "n2b" : a.name + "_n2b";
  out.size = a.size;
  out.signature = Signature::brignole();
  out.element_names = a.element_names;
  out.tables["^"] = a.tables.at("^");
  Term strong = defining_equation(Setting::Nelson, "x ->> y").rhs;  // (x->y)^(~y->~x)
  out.tables["->>"] = binary_table_from_term(a, strong);
  Term zero = defining_equation(Setting::Nelson, "0").rhs;  // ~1
  out.constant_values["0"] = eval_term(a, zero, {});
  validate_algebra(out);
  return out;
}

FiniteAlgebra brignole_to_nelson(const FiniteAlgebra& a, bool check_precondition) {
  if (check_precondition) require_axioms(a, Setting::Brignole);
  FiniteAlgebra out;
  out.name = a.name.empty() ? "b2n" : a.name + "_b2n";
  out.size = a.size;
  out.signature = Signature::nelson();
  out.element_names = a.element_names;
  out.tables["^"] = a.tables.at("^");
  out.tables["v"] = binary_table_from_term(a, defining_equation(Setting::Brignole, "x v y").rhs);
  out.tables["->"] =
      binary_table_from_term(a, defining_equation(Setting::Brignole, "x -> y").rhs);
  out.tables["~"] = unary_table_from_term(a, defining_equation(Setting::Brignole, "~x").rhs);
  out.constant_values["1"] =
      eval_term(a, defining_equation(Setting::Brignole, "1").rhs, {});
  validate_algebra(out);
  return out;
}

std::vector<TableComparison> compare_tables(const FiniteAlgebra& a, const FiniteAlgebra& b) {
  std::vector<TableComparison> out;
  for (const auto& [op, arity] : a.signature.operations) {
    TableComparison cmp;
    cmp.op = op;
    cmp.equal = true;
    auto it = b.tables.find(op);
    if (it == b.tables.end()) {
      cmp.equal = false;
      out.push_back(std::move(cmp));
      continue;
    }
    const std::vector<int>& ta = a.tables.at(op);
    const std::vector<int>& tb = it->second;
    for (long idx = 0; idx < static_cast<long>(ta.size()); ++idx) {
      if (ta[idx] == tb[idx]) continue;
      cmp.equal = false;
      long rem = idx;
      cmp.first_diff_cell.assign(arity, 0);
      for (int k = arity - 1; k >= 0; --k) {
        cmp.first_diff_cell[k] = static_cast<int>(rem % a.size);
        rem /= a.size;
      }
      cmp.lhs_value = ta[idx];
      cmp.rhs_value = tb[idx];
      break;
    }
    out.push_back(std::move(cmp));
  }
  for (const std::string& c : a.signature.constants) {
    TableComparison cmp;
    cmp.op = "const " + c;
    auto it = b.constant_values.find(c);
    cmp.equal = it != b.constant_values.end() && it->second == a.constant_values.at(c);
    if (!cmp.equal) {
      cmp.lhs_value = a.constant_values.at(c);
      cmp.rhs_value = it == b.constant_values.end() ? -1 : it->second;
    }
    out.push_back(std::move(cmp));
  }
  return out;
}

TranslationReport roundtrip_nelson(const FiniteAlgebra& a, bool check_precondition) {
  TranslationReport r;
  r.input = a;
  FiniteAlgebra mid = nelson_to_brignole(a, check_precondition);
  r.output = brignole_to_nelson(mid, /*check_precondition=*/false);
  r.output_check = check_axiom_set(r.output, nelson_axioms(), definitions(Setting::Nelson));
  r.comparisons = compare_tables(a, r.output);
  // Lemma 1(h): the weak implication is recoverable as x ->> (x ->> y) on the
  // intermediate Brignole algebra.
  Term weak = parse_term("x ->> (x ->> y)", Signature::brignole());
  TableComparison cmp;
  cmp.op = "-> (recomputed)";
  cmp.equal = true;
  std::vector<int> recomputed = binary_table_from_term(mid, weak);
  const std::vector<int>& orig = a.tables.at("->");
  for (long idx = 0; idx < static_cast<long>(orig.size()); ++idx) {
    if (orig[idx] == recomputed[idx]) continue;
    cmp.equal = false;
    cmp.first_diff_cell = {static_cast<int>(idx / a.size), static_cast<int>(idx % a.size)};
    cmp.lhs_value = orig[idx];
    cmp.rhs_value = recomputed[idx];
    break;
  }
  r.comparisons.push_back(std::move(cmp));
  r.tables_identical = true;
  for (const TableComparison& c : r.comparisons)
    if (!c.equal) r.tables_identical = false;
  return r;
}

TranslationReport roundtrip_brignole(const FiniteAlgebra& a, bool check_precondition) {
  TranslationReport r;
  r.input = a;
  FiniteAlgebra mid = brignole_to_nelson(a, check_precondition);
  r.output = nelson_to_brignole(mid, /*check_precondition=*/false);
  r.output_check =
      check_axiom_set(r.output, brignole_axioms(), definitions(Setting::Brignole));
  r.comparisons = compare_tables(a, r.output);
  r.tables_identical = true;
  for (const TableComparison& c : r.comparisons)
    if (!c.equal) r.tables_identical = false;
  return r;
}

}  // namespace nelbri
