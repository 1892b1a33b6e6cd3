#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "nelbri/algebra.hpp"
#include "nelbri/catalog.hpp"
#include "nelbri/equivalence.hpp"
#include "nelbri/finder.hpp"
#include "nelbri/proof.hpp"
#include "nelbri/term.hpp"

#include "embedded_fixtures.hpp"

namespace {

using nlohmann::json;
using namespace nelbri;

// Exit-code contract: 0 success/holds, 1 checked-and-false, 2 input error,
// 3 resource exhaustion.
constexpr int kOk = 0;
constexpr int kFalse = 1;
constexpr int kInputError = 2;
constexpr int kExhausted = 3;

Setting setting_of(const Signature& sig) {
  return sig.has_operation("->>") ? Setting::Brignole : Setting::Nelson;
}

const std::vector<NamedEquation>& axiom_set(const std::string& name) {
  if (name == "nelson") return nelson_axioms();
  if (name == "brignole") return brignole_axioms();
  if (name == "reduced") return reduced_brignole_axioms();
  throw std::runtime_error("unknown axiom set '" + name + "' (nelson|brignole|reduced)");
}

json witness_json(const FiniteAlgebra& a, const IdentityVerdict& v) {
  json w = json::object();
  for (const auto& [var, val] : v.witness) w[var] = a.element_name(val);
  return w;
}

void print_check_entry(const FiniteAlgebra& a, const std::string& id,
                       const IdentityVerdict& v) {
  if (v.holds) {
    std::cout << "  " << id << ": holds\n";
    return;
  }
  std::cout << "  " << id << ": FAILS at";
  for (const auto& [var, val] : v.witness)
    std::cout << ' ' << var << '=' << a.element_name(val);
  std::cout << " (lhs=" << a.element_name(v.lhs_value)
            << ", rhs=" << a.element_name(v.rhs_value) << ")\n";
}

int cmd_check(const std::string& algebra_path, const std::string& axioms_name,
              const std::string& eqs_path, bool emit_json) {
  FiniteAlgebra a = load_algebra(algebra_path);
  Setting setting = setting_of(a.signature);
  CheckReport report;
  if (!eqs_path.empty()) {
    EquationSet set = load_equation_set(eqs_path, extended_signature(setting));
    int anon = 0;
    for (const EquationSetEntry& e : set.entries) {
      Equation expanded = expand_definitions(e.surface, definitions(setting), a.signature);
      std::string id = e.id.empty() ? "eq" + std::to_string(++anon) : e.id;
      report.entries.emplace_back(id, check_identity(a, expanded));
    }
  } else {
    report = check_axiom_set(a, axiom_set(axioms_name), definitions(setting));
  }
  if (emit_json) {
    json doc{{"command", "check"},
             {"algebra", a.name},
             {"size", a.size},
             {"all_hold", report.all_hold()},
             {"results", json::array()}};
    for (const auto& [id, v] : report.entries) {
      json entry{{"id", id}, {"holds", v.holds}};
      if (!v.holds) {
        entry["witness"] = witness_json(a, v);
        entry["lhs"] = a.element_name(v.lhs_value);
        entry["rhs"] = a.element_name(v.rhs_value);
      }
      doc["results"].push_back(std::move(entry));
    }
    std::cout << doc.dump(2) << "\n";
  } else {
    std::cout << "algebra " << a.name << " (size " << a.size << ")\n";
    for (const auto& [id, v] : report.entries) print_check_entry(a, id, v);
    std::cout << (report.all_hold() ? "all hold\n" : "some equations fail\n");
  }
  return report.all_hold() ? kOk : kFalse;
}

struct FindArgs {
  std::string eqs_path;
  std::string signature_name = "brignole";
  int size = 0;      // exact size (0 = use max_size ascent)
  int max_size = 0;  // ascend 1..max_size
  std::vector<std::string> fail_ids;
  bool all = false;
  std::string out_dir;
  SearchLimits limits;
  bool emit_json = false;
};

int cmd_find(const FindArgs& args) {
  Setting setting = args.signature_name == "nelson" ? Setting::Nelson : Setting::Brignole;
  const Signature& base = base_signature(setting);
  EquationSet set = load_equation_set(args.eqs_path, extended_signature(setting));
  std::vector<Equation> hold, fail;
  for (const EquationSetEntry& e : set.entries) {
    bool must_fail = e.must_fail ||
                     std::find(args.fail_ids.begin(), args.fail_ids.end(), e.id) !=
                         args.fail_ids.end();
    Equation expanded = expand_definitions(e.surface, definitions(setting), base);
    (must_fail ? fail : hold).push_back(expanded);
  }
  for (const std::string& id : args.fail_ids) {
    bool in_file = false;
    for (const EquationSetEntry& e : set.entries)
      if (e.id == id) in_file = true;
    if (in_file) continue;
    // Not a file entry: try the catalog, then a raw equation.
    if (const NamedEquation* ne = find_catalog(id)) {
      fail.push_back(expand_definitions(ne->surface, definitions(setting), base));
    } else {
      fail.push_back(expand_definitions(parse_equation(id, extended_signature(setting)),
                                        definitions(setting), base));
    }
  }

  SearchResult found;
  int found_size = 0;
  bool exhausted = false;
  if (args.size > 0) {
    SearchProblem p{base, args.size, hold, fail};
    SearchLimits lim = args.limits;
    if (!args.all && lim.max_solutions == 0) lim.max_solutions = 1;
    found = enumerate_models(p, lim);
    found_size = args.size;
    exhausted = found.stats.budget_exhausted;
  } else {
    int max_n = args.max_size > 0 ? args.max_size : 4;
    for (int n = 1; n <= max_n && found.models.empty() && !exhausted; ++n) {
      SearchProblem p{base, n, hold, fail};
      SearchLimits lim = args.limits;
      if (!args.all && lim.max_solutions == 0) lim.max_solutions = 1;
      SearchResult r = enumerate_models(p, lim);
      found.stats.nodes += r.stats.nodes;
      found.stats.propagations += r.stats.propagations;
      found.stats.seconds += r.stats.seconds;
      if (!r.models.empty()) {
        found.models = std::move(r.models);
        found_size = n;
      } else if (r.stats.budget_exhausted) {
        exhausted = true;
        found_size = n;
      }
    }
  }

  json doc{{"command", "find"},
           {"models", json::array()},
           {"nodes", found.stats.nodes},
           {"propagations", found.stats.propagations},
           {"seconds", found.stats.seconds},
           {"budget_exhausted", exhausted}};
  std::vector<std::string> written;
  int counter = 0;
  for (FiniteAlgebra& m : found.models) {
    m.name = "model" + std::to_string(++counter) + "_n" + std::to_string(m.size);
    if (!args.out_dir.empty()) {
      std::filesystem::create_directories(args.out_dir);
      std::string path = args.out_dir + "/" + m.name + ".alg";
      std::ofstream out(path);
      out << format_algebra(m);
      written.push_back(path);
    }
    doc["models"].push_back(format_algebra(m));
  }
  if (args.emit_json) {
    doc["written"] = written;
    std::cout << doc.dump(2) << "\n";
  } else {
    if (found.models.empty()) {
      std::cout << (exhausted ? "budget exhausted before a decision\n"
                              : "no models at the searched sizes\n");
    } else {
      std::cout << found.models.size() << " model(s) at size " << found_size << "\n";
      for (const FiniteAlgebra& m : found.models) std::cout << format_algebra(m) << "\n";
      for (const std::string& p : written) std::cout << "wrote " << p << "\n";
    }
    std::cout << "nodes=" << found.stats.nodes << " seconds=" << found.stats.seconds
              << "\n";
  }
  if (exhausted && found.models.empty()) return kExhausted;
  return found.models.empty() ? kFalse : kOk;
}

json comparisons_json(const std::vector<TableComparison>& comparisons) {
  json arr = json::array();
  for (const TableComparison& c : comparisons) {
    json entry{{"op", c.op}, {"equal", c.equal}};
    if (!c.equal) {
      entry["cell"] = c.first_diff_cell;
      entry["lhs"] = c.lhs_value;
      entry["rhs"] = c.rhs_value;
    }
    arr.push_back(std::move(entry));
  }
  return arr;
}

int cmd_translate(const std::string& algebra_path, const std::string& direction,
                  const std::string& out_path, bool force, bool emit_json) {
  FiniteAlgebra a = load_algebra(algebra_path);
  try {
    if (direction == "n2b" || direction == "b2n") {
      FiniteAlgebra out = direction == "n2b" ? nelson_to_brignole(a, !force)
                                             : brignole_to_nelson(a, !force);
      if (!out_path.empty()) {
        std::ofstream f(out_path);
        f << format_algebra(out);
      }
      if (emit_json) {
        json doc{{"command", "translate"},
                 {"direction", direction},
                 {"output", format_algebra(out)}};
        std::cout << doc.dump(2) << "\n";
      } else {
        std::cout << format_algebra(out);
      }
      return kOk;
    }
    if (direction == "roundtrip") {
      bool nelson = setting_of(a.signature) == Setting::Nelson;
      TranslationReport r =
          nelson ? roundtrip_nelson(a, !force) : roundtrip_brignole(a, !force);
      if (emit_json) {
        json doc{{"command", "translate"},
                 {"direction", "roundtrip"},
                 {"setting", nelson ? "nelson" : "brignole"},
                 {"tables_identical", r.tables_identical},
                 {"output_axioms_hold", r.output_check.all_hold()},
                 {"comparisons", comparisons_json(r.comparisons)}};
        std::cout << doc.dump(2) << "\n";
      } else {
        std::cout << "roundtrip (" << (nelson ? "nelson" : "brignole") << "): tables "
                  << (r.tables_identical ? "identical" : "DIFFER") << "\n";
        for (const TableComparison& c : r.comparisons) {
          std::cout << "  " << c.op << ": " << (c.equal ? "equal" : "differs");
          if (!c.equal && !c.first_diff_cell.empty()) {
            std::cout << " first at (";
            for (std::size_t i = 0; i < c.first_diff_cell.size(); ++i)
              std::cout << (i ? "," : "") << c.first_diff_cell[i];
            std::cout << "): " << c.lhs_value << " vs " << c.rhs_value;
          }
          std::cout << "\n";
        }
      }
      return r.tables_identical ? kOk : kFalse;
    }
    throw std::runtime_error("unknown direction '" + direction + "' (n2b|b2n|roundtrip)");
  } catch (const PreconditionFailure& e) {
    if (emit_json) {
      json doc{{"command", "translate"},
               {"refused", true},
               {"failing_axiom", e.axiom_id()},
               {"message", e.what()}};
      std::cout << doc.dump(2) << "\n";
    } else {
      std::cout << "refused: " << e.what() << "\n";
    }
    return kFalse;
  }
}

int cmd_verify_proof(const std::string& proof_path, int depth, bool continue_on_error,
                     bool emit_json) {
  ProofScript script = load_proof(proof_path);
  VerifyOptions opts;
  opts.depth = depth;
  opts.continue_on_error = continue_on_error;
  ProofReport report = verify_proof(script, opts);
  if (emit_json) {
    json doc{{"command", "verify-proof"},
             {"proof", script.name},
             {"verified", report.verified},
             {"lines", json::array()}};
    if (!report.verified) doc["failure"] = report.failure;
    for (const LineResult& r : report.lines) {
      json entry{{"index", r.index}, {"ok", r.ok}};
      if (!r.message.empty()) entry["message"] = r.message;
      if (!r.near_miss_citations.empty())
        entry["near_miss_citations"] = r.near_miss_citations;
      doc["lines"].push_back(std::move(entry));
    }
    std::cout << doc.dump(2) << "\n";
  } else {
    int checked = 0;
    for (const LineResult& r : report.lines)
      if (r.ok) ++checked;
    std::cout << "proof " << script.name << ": " << checked << "/" << script.lines.size()
              << " lines verified\n";
    for (const LineResult& r : report.lines)
      if (!r.ok) std::cout << "  line " << r.index << ": " << r.message << "\n";
    std::cout << (report.verified ? "VERIFIED\n" : "NOT VERIFIED: " + report.failure + "\n");
  }
  return report.verified ? kOk : kFalse;
}

void catalog_entry_print(const NamedEquation& e, bool emit_json, json* arr) {
  if (emit_json) {
    json entry{{"id", e.id},
               {"target", e.target == Setting::Nelson ? "nelson" : "brignole"},
               {"surface", format_equation(e.surface)},
               {"expanded", format_equation(e.expanded)},
               {"source", e.source},
               {"aliases", e.aliases}};
    arr->push_back(std::move(entry));
  } else {
    std::cout << "  " << e.id << ": " << format_equation(e.surface);
    if (!e.aliases.empty()) {
      std::cout << "  (aliases:";
      for (const std::string& a : e.aliases) std::cout << ' ' << a;
      std::cout << ")";
    }
    std::cout << "\n";
  }
}

int cmd_catalog(const std::string& id, bool emit_json) {
  if (!id.empty()) {
    const NamedEquation* e = find_catalog(id);
    if (!e) throw std::runtime_error("unknown catalog id '" + id + "'");
    json arr = json::array();
    catalog_entry_print(*e, emit_json, &arr);
    if (emit_json)
      std::cout << json{{"command", "catalog"}, {"entries", arr}}.dump(2) << "\n";
    return kOk;
  }
  json arr = json::array();
  if (!emit_json) std::cout << "Nelson axioms:\n";
  for (const NamedEquation& e : nelson_axioms()) catalog_entry_print(e, emit_json, &arr);
  if (!emit_json) std::cout << "Brignole axioms:\n";
  for (const NamedEquation& e : brignole_axioms()) catalog_entry_print(e, emit_json, &arr);
  if (!emit_json) std::cout << "Lemmas:\n";
  for (const NamedEquation& e : lemma_catalog()) catalog_entry_print(e, emit_json, &arr);
  if (emit_json)
    std::cout << json{{"command", "catalog"}, {"entries", arr}}.dump(2) << "\n";
  return kOk;
}

int cmd_fixtures(const std::string& out_dir, bool list_only) {
  if (list_only) {
    for (const auto& [name, text] : kEmbeddedFixtures) std::cout << name << "\n";
    return kOk;
  }
  std::filesystem::create_directories(out_dir);
  for (const auto& [name, text] : kEmbeddedFixtures) {
    std::ofstream out(out_dir + "/" + std::string(name));
    out << text;
    std::cout << "wrote " << out_dir << "/" << name << "\n";
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Workbench for the equational theories of Nelson and Brignole algebras"};
  app.require_subcommand(1);
  bool emit_json = false;
  app.add_flag("--json", emit_json, "emit a machine-readable JSON report");

  // check
  auto* check = app.add_subcommand("check", "check an axiom/equation set on an algebra");
  std::string check_algebra, check_axioms = "brignole", check_eqs;
  check->add_option("algebra", check_algebra, "algebra file")->required();
  check->add_option("--axioms", check_axioms, "nelson|brignole|reduced");
  check->add_option("--eqs", check_eqs, "equation-set file instead of a named axiom set");

  // find
  auto* find = app.add_subcommand("find", "search for finite models / counterexamples");
  FindArgs fa;
  find->add_option("equations", fa.eqs_path, "equation-set file")->required();
  find->add_option("--signature", fa.signature_name, "nelson|brignole (default brignole)");
  find->add_option("--size", fa.size, "search exactly this size");
  find->add_option("--max-size", fa.max_size, "ascend sizes 1..N (default 4)");
  find->add_option("--fail", fa.fail_ids,
                   "entry id / catalog id / equation that must fail (repeatable)");
  find->add_flag("--all", fa.all, "enumerate all models instead of stopping at one");
  find->add_option("--out", fa.out_dir, "directory for found algebra files");
  find->add_option("--max-solutions", fa.limits.max_solutions, "solution cap (0 = all)");
  find->add_option("--node-budget", fa.limits.node_budget, "search node budget");
  find->add_option("--time-budget", fa.limits.time_budget_seconds, "seconds per size");
  find->add_flag("--iso-dedup,!--no-iso-dedup", fa.limits.iso_dedup,
                 "deduplicate models up to isomorphism (default on)");
  find->add_flag("!--no-symmetry", fa.limits.symmetry_breaking,
                 "disable constant fixing + least-number heuristic");
  find->add_option("--workers", fa.limits.workers, "worker threads");

  // translate
  auto* translate = app.add_subcommand("translate", "run the term-equivalence translations");
  std::string tr_algebra, tr_direction = "roundtrip", tr_out;
  bool tr_force = false;
  translate->add_option("algebra", tr_algebra, "algebra file")->required();
  translate->add_option("--direction", tr_direction, "n2b|b2n|roundtrip");
  translate->add_option("--out", tr_out, "write the translated algebra here");
  translate->add_flag("--force", tr_force, "skip the axiom precondition check");

  // verify-proof
  auto* verify = app.add_subcommand("verify-proof", "check an equational proof script");
  std::string pf_path;
  int pf_depth = 2;
  bool pf_continue = false;
  verify->add_option("proof", pf_path, "proof-script file")->required();
  verify->add_option("--depth", pf_depth, "max rewrite hops per step (default 2)");
  verify->add_flag("--continue-on-error", pf_continue, "report all failing lines");

  // catalog
  auto* catalog = app.add_subcommand("catalog", "dump the axiom/lemma catalog");
  std::string cat_id;
  catalog->add_option("--id", cat_id, "print a single entry");

  // fixtures
  auto* fixtures = app.add_subcommand("fixtures", "write the bundled fixture files");
  std::string fx_out = "fixtures";
  bool fx_list = false;
  fixtures->add_option("--out", fx_out, "output directory (default ./fixtures)");
  fixtures->add_flag("--list", fx_list, "list fixture names only");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (*check) return cmd_check(check_algebra, check_axioms, check_eqs, emit_json);
    if (*find) {
      fa.emit_json = emit_json;
      return cmd_find(fa);
    }
    if (*translate)
      return cmd_translate(tr_algebra, tr_direction, tr_out, tr_force, emit_json);
    if (*verify) return cmd_verify_proof(pf_path, pf_depth, pf_continue, emit_json);
    if (*catalog) return cmd_catalog(cat_id, emit_json);
    if (*fixtures) return cmd_fixtures(fx_out, fx_list);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}
