#include "nelbri/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

namespace nelbri {

namespace {

long table_size(int n, int arity) {
  long s = 1;
  for (int i = 0; i < arity; ++i) s *= n;
  return s;
}

}  // namespace

int FiniteAlgebra::table_at(const std::string& op, std::span<const int> args) const {
  auto it = tables.find(op);
  if (it == tables.end()) throw std::runtime_error("no table for operation '" + op + "'");
  long idx = 0;
  for (int a : args) idx = idx * size + a;
  return it->second[idx];
}

int FiniteAlgebra::element_index(const std::string& name) const {
  auto it = std::find(element_names.begin(), element_names.end(), name);
  if (it == element_names.end())
    throw std::runtime_error("unknown element '" + name + "' in algebra " + this->name);
  return static_cast<int>(it - element_names.begin());
}

void validate_algebra(const FiniteAlgebra& a) {
  if (a.size < 1) throw std::runtime_error("algebra size must be positive");
  if (static_cast<int>(a.element_names.size()) != a.size)
    throw std::runtime_error("element name count does not match size");
  for (const auto& [op, arity] : a.signature.operations) {
    auto it = a.tables.find(op);
    if (it == a.tables.end())
      throw std::runtime_error("missing table for operation '" + op + "'");
    if (static_cast<long>(it->second.size()) != table_size(a.size, arity))
      throw std::runtime_error("wrong entry count for operation '" + op + "'");
    for (int entry : it->second)
      if (entry < 0 || entry >= a.size)
        throw std::runtime_error("out-of-range entry in table of '" + op + "'");
  }
  for (const std::string& c : a.signature.constants) {
    auto it = a.constant_values.find(c);
    if (it == a.constant_values.end())
      throw std::runtime_error("constant '" + c + "' is not assigned");
    if (it->second < 0 || it->second >= a.size)
      throw std::runtime_error("constant '" + c + "' assigned out of range");
  }
}

FiniteAlgebra parse_algebra(std::istream& in) {
  FiniteAlgebra a;
  std::string line;
  int lineno = 0;
  auto fail = [&](const std::string& msg) {
    throw std::runtime_error("algebra file line " + std::to_string(lineno) + ": " + msg);
  };
  std::vector<std::pair<std::string, std::vector<std::string>>> raw_tables;
  std::vector<std::pair<std::string, std::string>> raw_consts;
  std::string pending_op;
  int pending_arity = 0;
  long pending_needed = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string word;
    if (!(ls >> word)) continue;
    if (word == "algebra") {
      ls >> a.name;
    } else if (word == "size") {
      if (!(ls >> a.size) || a.size < 1) fail("bad size");
    } else if (word == "elements") {
      std::string e;
      while (ls >> e) a.element_names.push_back(e);
    } else if (word == "op") {
      std::string op;
      int arity = 0;
      if (!(ls >> op >> arity) || arity < 1) fail("bad op header");
      pending_op = op;
      pending_arity = arity;
      pending_needed = table_size(a.size, arity);
      a.signature.operations.emplace_back(op, arity);
      raw_tables.emplace_back(op, std::vector<std::string>{});
    } else if (word == "const") {
      std::string cname, val;
      if (!(ls >> cname >> val)) fail("bad const line");
      a.signature.constants.push_back(cname);
      raw_consts.emplace_back(cname, val);
    } else {
      if (pending_op.empty()) fail("table row outside an op block");
      auto& entries = raw_tables.back().second;
      entries.push_back(word);
      std::string e;
      while (ls >> e) entries.push_back(e);
      if (static_cast<long>(entries.size()) > pending_needed)
        fail("too many entries for op '" + pending_op + "'");
    }
  }
  if (a.element_names.empty())
    for (int i = 0; i < a.size; ++i) a.element_names.push_back(std::to_string(i));
  auto elem = [&](const std::string& s) {
    auto it = std::find(a.element_names.begin(), a.element_names.end(), s);
    if (it == a.element_names.end())
      throw std::runtime_error("algebra file: unknown element '" + s + "'");
    return static_cast<int>(it - a.element_names.begin());
  };
  for (auto& [op, entries] : raw_tables) {
    std::vector<int> table;
    table.reserve(entries.size());
    for (const std::string& s : entries) table.push_back(elem(s));
    a.tables.emplace(op, std::move(table));
  }
  for (auto& [cname, val] : raw_consts) a.constant_values.emplace(cname, elem(val));
  validate_algebra(a);
  return a;
}

FiniteAlgebra parse_algebra_text(const std::string& text) {
  std::istringstream in(text);
  return parse_algebra(in);
}

FiniteAlgebra load_algebra(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open algebra file: " + path);
  return parse_algebra(in);
}

std::string format_algebra(const FiniteAlgebra& a) {
  std::ostringstream out;
  out << "algebra " << (a.name.empty() ? "unnamed" : a.name) << "\n";
  out << "size " << a.size << "\n";
  out << "elements";
  for (const std::string& e : a.element_names) out << ' ' << e;
  out << "\n";
  for (const auto& [op, arity] : a.signature.operations) {
    out << "op " << op << ' ' << arity << "\n";
    const std::vector<int>& table = a.tables.at(op);
    long rows = arity >= 2 ? table_size(a.size, arity - 1) : 1;
    long cols = static_cast<long>(table.size()) / rows;
    for (long r = 0; r < rows; ++r) {
      for (long c = 0; c < cols; ++c)
        out << (c ? " " : "") << a.element_names[table[r * cols + c]];
      out << "\n";
    }
  }
  for (const std::string& c : a.signature.constants)
    out << "const " << c << ' ' << a.element_names[a.constant_values.at(c)] << "\n";
  return out.str();
}

int eval_term(const FiniteAlgebra& a, const Term& t, const Assignment& v) {
  switch (t.kind()) {
    case TermKind::Variable: {
      auto it = v.find(t.head());
      if (it == v.end()) throw std::runtime_error("unassigned variable: " + t.head());
      return it->second;
    }
    case TermKind::Constant: {
      auto it = a.constant_values.find(t.head());
      if (it == a.constant_values.end())
        throw std::runtime_error("constant '" + t.head() + "' not interpreted");
      return it->second;
    }
    case TermKind::Application: {
      std::vector<int> args;
      args.reserve(t.args().size());
      for (const Term& sub : t.args()) args.push_back(eval_term(a, sub, v));
      return a.table_at(t.head(), args);
    }
  }
  throw std::logic_error("unreachable");
}

IdentityVerdict check_identity(const FiniteAlgebra& a, const Equation& e) {
  std::set<std::string> varset = e.lhs.variables();
  e.rhs.collect_variables(varset);
  std::vector<std::string> vars(varset.begin(), varset.end());  // alphabetical
  std::vector<int> vals(vars.size(), 0);
  Assignment v;
  while (true) {
    for (std::size_t i = 0; i < vars.size(); ++i) v[vars[i]] = vals[i];
    int l = eval_term(a, e.lhs, v);
    int r = eval_term(a, e.rhs, v);
    if (l != r) return IdentityVerdict{false, v, l, r};
    // odometer, rightmost fastest: lexicographic over (vals[0], vals[1], ...)
    int i = static_cast<int>(vals.size()) - 1;
    while (i >= 0 && vals[i] == a.size - 1) vals[i--] = 0;
    if (i < 0) break;
    ++vals[i];
  }
  return IdentityVerdict{true, {}, -1, -1};
}

bool CheckReport::all_hold() const {
  return std::all_of(entries.begin(), entries.end(),
                     [](const auto& e) { return e.second.holds; });
}

std::vector<std::string> CheckReport::failing_ids() const {
  std::vector<std::string> out;
  for (const auto& [id, verdict] : entries)
    if (!verdict.holds) out.push_back(id);
  return out;
}

CheckReport check_axiom_set(const FiniteAlgebra& a, std::span<const NamedEquation> axioms,
                            const DefinitionTable& defs) {
  CheckReport report;
  for (const NamedEquation& ax : axioms) {
    Equation expanded = expand_definitions(ax.surface, defs, a.signature);
    report.entries.emplace_back(ax.id, check_identity(a, expanded));
  }
  return report;
}

FiniteAlgebra relabel(const FiniteAlgebra& a, const std::vector<int>& p) {
  FiniteAlgebra out = a;
  for (int i = 0; i < a.size; ++i) out.element_names[p[i]] = a.element_names[i];
  for (const auto& [op, arity] : a.signature.operations) {
    const std::vector<int>& src = a.tables.at(op);
    std::vector<int>& dst = out.tables.at(op);
    std::vector<int> args(arity, 0), pargs(arity, 0);
    for (long idx = 0; idx < static_cast<long>(src.size()); ++idx) {
      long rem = idx;
      for (int k = arity - 1; k >= 0; --k) {
        args[k] = static_cast<int>(rem % a.size);
        rem /= a.size;
      }
      for (int k = 0; k < arity; ++k) pargs[k] = p[args[k]];
      long pidx = 0;
      for (int k = 0; k < arity; ++k) pidx = pidx * a.size + pargs[k];
      dst[pidx] = p[src[idx]];
    }
  }
  for (auto& [c, val] : out.constant_values) val = p[a.constant_values.at(c)];
  return out;
}

std::optional<std::vector<int>> find_isomorphism(const FiniteAlgebra& a,
                                                 const FiniteAlgebra& b) {
  if (a.signature.operations != b.signature.operations ||
      a.signature.constants != b.signature.constants)
    throw std::runtime_error("find_isomorphism: signature mismatch");
  if (a.size != b.size) return std::nullopt;
  int n = a.size;
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  do {
    bool ok = true;
    for (const std::string& c : a.signature.constants)
      if (p[a.constant_values.at(c)] != b.constant_values.at(c)) {
        ok = false;
        break;
      }
    if (!ok) continue;
    for (const auto& [op, arity] : a.signature.operations) {
      const std::vector<int>& ta = a.tables.at(op);
      const std::vector<int>& tb = b.tables.at(op);
      std::vector<int> args(arity, 0);
      for (long idx = 0; ok && idx < static_cast<long>(ta.size()); ++idx) {
        long rem = idx;
        for (int k = arity - 1; k >= 0; --k) {
          args[k] = static_cast<int>(rem % n);
          rem /= n;
        }
        long pidx = 0;
        for (int k = 0; k < arity; ++k) pidx = pidx * n + p[args[k]];
        if (tb[pidx] != p[ta[idx]]) ok = false;
      }
      if (!ok) break;
    }
    if (ok) return p;
  } while (std::next_permutation(p.begin(), p.end()));
  return std::nullopt;
}

}  // namespace nelbri
