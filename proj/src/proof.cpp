#include "nelbri/proof.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

namespace nelbri {

namespace {

const Signature& script_signature() { return extended_signature(Setting::Brignole); }

std::string trim(const std::string& s) {
  auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return "";
  auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

/// claim == subst(eq) or subst(eq.swapped()); one shared binding per try.
std::optional<std::pair<Substitution, bool>> instance_of(const Equation& claim,
                                                         const Equation& eq) {
  for (bool swapped : {false, true}) {
    Equation e = swapped ? eq.swapped() : eq;
    Substitution binding;
    if (match_extend(e.lhs, claim.lhs, binding) && match_extend(e.rhs, claim.rhs, binding))
      return std::make_pair(binding, swapped);
  }
  return std::nullopt;
}

struct Node {
  Equation eq;
  int parent;
  int depth;
  int source_line;  // 0 = reflexivity start
  std::optional<RewriteHop> hop;
};

constexpr std::size_t kMaxNodes = 200000;

// --- syntactic unification modulo commutativity of ^ ---------------------

Term walk(Term t, const Substitution& s) {
  while (t.is_variable()) {
    auto it = s.find(t.head());
    if (it == s.end()) break;
    t = it->second;
  }
  return t;
}

bool occurs(const std::string& var, const Term& t, const Substitution& s) {
  Term r = walk(t, s);
  if (r.is_variable()) return r.head() == var;
  for (const Term& sub : r.args())
    if (occurs(var, sub, s)) return true;
  return false;
}

/// Appends to `out` every unifier of a0 and b0 extending seed. At ^ nodes
/// both child pairings are explored, so a pattern can match a meet in either
/// argument order (distinct unifiers are all reported).
void unify_all(const Term& a0, const Term& b0, const Substitution& seed,
               std::vector<Substitution>& out) {
  Term a = walk(a0, seed), b = walk(b0, seed);
  if (a.is_variable() && b.is_variable() && a.head() == b.head()) {
    out.push_back(seed);
    return;
  }
  if (a.is_variable()) {
    if (occurs(a.head(), b, seed)) return;
    Substitution s = seed;
    s.emplace(a.head(), b);
    out.push_back(std::move(s));
    return;
  }
  if (b.is_variable()) {
    if (occurs(b.head(), a, seed)) return;
    Substitution s = seed;
    s.emplace(b.head(), a);
    out.push_back(std::move(s));
    return;
  }
  if (a.kind() != b.kind() || a.head() != b.head() ||
      a.args().size() != b.args().size())
    return;
  auto unify_pairwise = [&](bool crossed) {
    std::vector<Substitution> partial{seed};
    for (std::size_t i = 0; i < a.args().size() && !partial.empty(); ++i) {
      std::size_t j = crossed ? a.args().size() - 1 - i : i;
      std::vector<Substitution> next;
      for (const Substitution& s : partial)
        unify_all(a.args()[i], b.args()[j], s, next);
      partial = std::move(next);
    }
    out.insert(out.end(), std::make_move_iterator(partial.begin()),
               std::make_move_iterator(partial.end()));
  };
  unify_pairwise(false);
  if (a.head() == "^" && a.args().size() == 2) unify_pairwise(true);
}

/// Resolves a triangular unifier into an idempotent substitution.
Substitution resolve(const Substitution& s) {
  Substitution out = s;
  for (std::size_t round = 0; round <= s.size(); ++round) {
    bool changed = false;
    for (auto& [var, term] : out) {
      Term next = apply_substitution(term, out);
      if (next != term) {
        term = std::move(next);
        changed = true;
      }
    }
    if (!changed) break;
  }
  return out;
}

Equation rename_vars(const Equation& e, const std::string& prefix) {
  Substitution s;
  std::set<std::string> vars = e.lhs.variables();
  e.rhs.collect_variables(vars);
  for (const std::string& v : vars) s.emplace(v, Term::variable(prefix + v));
  return apply_substitution(e, s);
}

/// Exhaustive <=depth-hop rewrite search. Sources: the cited equations plus
/// reflexivity over each claim side. Rules: the cited equations in both
/// orientations, applied at any position on either side via unification modulo
/// commutativity of ^ (so working-equation variables may be instantiated);
/// rule variables unbound by the unifier are instantiated with fresh variables.
/// Acceptance at every node: the claim is a substitution instance (up to side
/// swap) of the derived equation.
std::optional<StepCertificate> search_rewrite(const Equation& claim,
                                              const std::vector<std::pair<int, Equation>>& cited,
                                              int depth) {
  std::vector<Node> nodes;
  std::set<std::string> seen;
  int fresh_counter = 0;

  auto accept = [&](int node_idx) -> std::optional<StepCertificate> {
    auto inst = instance_of(claim, nodes[node_idx].eq);
    if (!inst) return std::nullopt;
    std::vector<RewriteHop> hops;
    int root = node_idx;
    for (int i = node_idx; nodes[i].parent >= 0; i = nodes[i].parent) {
      hops.push_back(*nodes[i].hop);
      root = nodes[i].parent;
    }
    std::reverse(hops.begin(), hops.end());
    return StepCertificate{StepCertificate::Kind::Rewrite,
                           "",
                           nodes[root].source_line,
                           nodes[root].eq,
                           std::move(hops),
                           inst->second,
                           std::move(inst->first)};
  };

  auto add = [&](Equation eq, int parent, int depth_now, int source_line,
                 std::optional<RewriteHop> hop) -> int {
    std::string key = format_equation(eq);
    if (!seen.insert(key).second) return -1;
    nodes.push_back({std::move(eq), parent, depth_now, source_line, std::move(hop)});
    return static_cast<int>(nodes.size()) - 1;
  };

  for (const auto& [line_no, eq] : cited) add(eq, -1, 0, line_no, std::nullopt);
  add(Equation{claim.lhs, claim.lhs}, -1, 0, 0, std::nullopt);
  add(Equation{claim.rhs, claim.rhs}, -1, 0, 0, std::nullopt);
  for (std::size_t i = 0; i < nodes.size(); ++i)
    if (auto cert = accept(static_cast<int>(i))) return cert;

  struct Rule {
    int line;
    bool reversed;
    Equation eq;  // variables standardized apart with an r. prefix
  };
  std::vector<Rule> rules;
  for (const auto& [line_no, eq] : cited) {
    Equation std_apart = rename_vars(eq, "r.");
    rules.push_back({line_no, false, std_apart});
    rules.push_back({line_no, true, std_apart.swapped()});
  }

  for (std::size_t i = 0; i < nodes.size() && nodes.size() < kMaxNodes; ++i) {
    if (nodes[i].depth >= depth) continue;
    for (const Rule& rule : rules)
      for (int side = 0; side < 2; ++side) {
        // nodes may reallocate while we append; copy the working equation.
        Equation work = nodes[i].eq;
        const Term& subject = side == 0 ? work.lhs : work.rhs;
        for (const Position& pos : positions(subject)) {
          std::vector<Substitution> unifiers;
          unify_all(rule.eq.lhs, subterm_at(subject, pos), {}, unifiers);
          for (const Substitution& u : unifiers) {
            Substitution sigma = resolve(u);
            // Rule variables occurring only on the right get fresh names;
            // shared variables must stay identical on both sides of the
            // instantiated rule or it would no longer be a rule instance.
            Substitution with_fresh = sigma;
            std::set<std::string> lhs_vars = rule.eq.lhs.variables();
            for (const std::string& v : rule.eq.rhs.variables())
              if (!with_fresh.count(v) && !lhs_vars.count(v))
                with_fresh.emplace(v, Term::variable("#w" + std::to_string(++fresh_counter)));
            Equation instantiated = apply_substitution(work, sigma);
            const Term& new_subject = side == 0 ? instantiated.lhs : instantiated.rhs;
            // Equals sigma(rule lhs) up to ^-commutativity; the stored rule
            // keeps the subject's argument arrangement so replay is exact.
            Term inst_lhs = subterm_at(new_subject, pos);
            Term inst_rhs = apply_substitution(rule.eq.rhs, with_fresh);
            Term replaced = replace_at(new_subject, pos, inst_rhs);
            Equation next = side == 0 ? Equation{replaced, instantiated.rhs}
                                      : Equation{instantiated.lhs, replaced};
            Substitution pre;
            std::set<std::string> work_vars = work.lhs.variables();
            work.rhs.collect_variables(work_vars);
            for (const std::string& v : work_vars)
              if (auto it = sigma.find(v); it != sigma.end()) pre.emplace(v, it->second);
            RewriteHop hop{rule.line,      rule.reversed, {inst_lhs, inst_rhs},
                           std::move(pre), side,          pos,
                           next};
            int idx = add(std::move(next), static_cast<int>(i), nodes[i].depth + 1,
                          nodes[i].source_line, std::move(hop));
            if (idx < 0) continue;
            if (auto cert = accept(idx)) return cert;
            if (nodes.size() >= kMaxNodes) break;
          }
        }
      }
  }
  return std::nullopt;
}

Equation definition_equation(const Definition& def) {
  if (def.params.empty()) return {Term::constant(def.symbol), def.body};
  std::vector<Term> args;
  for (const std::string& p : def.params) args.push_back(Term::variable(p));
  return {Term::apply(def.symbol, std::move(args)), def.body};
}

}  // namespace

const LemmaEntry* LemmaStore::find(const std::string& id) const {
  for (const LemmaEntry& e : entries)
    if (e.id == id) return &e;
  return nullptr;
}

LemmaStore LemmaStore::appendix_defaults() {
  const Signature& sig = script_signature();
  auto eq = [&](const char* text) { return parse_equation(text, sig); };
  const char* checked = "model-checked only (holds in every small model of the reduced set)";
  LemmaStore store;
  store.entries.push_back({"L4.l", {eq("x ->> x = y ->> y"), eq("x ->> x = 1")}, checked});
  store.entries.push_back({"L5.f", {eq("x ^ y = y ^ x")}, checked});
  store.entries.push_back({"L5.g", {eq("x ^ x = x")}, checked});
  store.entries.push_back({"L5.h", {eq("0 ^ (0 ->> 0) = 0")}, checked});
  store.entries.push_back(
      {"L5.h.1",
       {eq("x ->> 0 = x ->> (0 ^ (x ->> 0))")},
       std::string(checked) +
           "; the source derivation's justification for this step is ambiguous, so the "
           "claim is admitted as a store entry rather than re-derived"});
  return store;
}

ProofScript parse_proof(std::istream& in) {
  const Signature& sig = script_signature();
  ProofScript script;
  std::string line;
  int lineno = 0;
  auto fail = [&](const std::string& msg) {
    throw std::runtime_error("proof file line " + std::to_string(lineno) + ": " + msg);
  };
  while (std::getline(in, line)) {
    ++lineno;
    std::string text = trim(line);
    if (text.empty() || text[0] == '#') continue;
    if (text.rfind("proof ", 0) == 0) {
      script.name = trim(text.substr(6));
      continue;
    }
    if (text.rfind("goal ", 0) == 0) {
      script.goal = parse_equation(text.substr(5), sig);
      continue;
    }
    auto colon = text.find(':');
    if (colon == std::string::npos) fail("expected '<idx>: <equation> ; <just>'");
    int idx = 0;
    try {
      idx = std::stoi(text.substr(0, colon));
    } catch (const std::exception&) {
      fail("bad line index");
    }
    if (idx != static_cast<int>(script.lines.size()) + 1)
      fail("line indices must be consecutive from 1");
    auto semi = text.find(';', colon);
    if (semi == std::string::npos) fail("missing ';' before justification");
    Equation claim = [&] {
      try {
        return parse_equation(text.substr(colon + 1, semi - colon - 1), sig);
      } catch (const ParseError& e) {
        fail(e.what());
        throw;  // unreachable
      }
    }();
    std::istringstream just(text.substr(semi + 1));
    std::string kind_word;
    just >> kind_word;
    ProofLine::Just kind;
    std::string ref;
    std::vector<int> cited;
    if (kind_word == "axiom" || kind_word == "def" || kind_word == "lemma") {
      kind = kind_word == "axiom" ? ProofLine::Just::Axiom
             : kind_word == "def" ? ProofLine::Just::Def
                                  : ProofLine::Just::Lemma;
      if (!(just >> ref)) fail("missing reference after '" + kind_word + "'");
    } else if (kind_word == "by") {
      kind = ProofLine::Just::Rewrite;
      int c;
      while (just >> c) cited.push_back(c);
      if (cited.empty() || cited.size() > 2) fail("'by' takes 1 or 2 line numbers");
      for (int c2 : cited)
        if (c2 < 1 || c2 >= idx) fail("citation " + std::to_string(c2) + " not an earlier line");
    } else {
      fail("unknown justification '" + kind_word + "'");
    }
    script.lines.push_back({idx, std::move(claim), kind, std::move(ref), std::move(cited)});
  }
  return script;
}

ProofScript parse_proof_text(const std::string& text) {
  std::istringstream in(text);
  return parse_proof(in);
}

ProofScript load_proof(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open proof file: " + path);
  return parse_proof(in);
}

bool replay_certificate(const StepCertificate& c, const Equation& claim) {
  Equation cur = c.start;
  for (const RewriteHop& h : c.hops) {
    try {
      Equation pre = apply_substitution(cur, h.pre_subst);
      const Term& side = h.side == 0 ? pre.lhs : pre.rhs;
      if (subterm_at(side, h.pos) != h.rule.lhs) return false;
      Term replaced = replace_at(side, h.pos, h.rule.rhs);
      Equation next =
          h.side == 0 ? Equation{replaced, pre.rhs} : Equation{pre.lhs, replaced};
      if (next.lhs != h.result.lhs || next.rhs != h.result.rhs) return false;
      cur = next;
    } catch (const std::out_of_range&) {
      return false;
    }
  }
  Equation derived = c.swapped ? cur.swapped() : cur;
  Equation instantiated = apply_substitution(derived, c.final_subst);
  return instantiated.lhs == claim.lhs && instantiated.rhs == claim.rhs;
}

LineResult verify_step(const std::vector<Equation>& verified, const ProofLine& line,
                       const VerifyOptions& opts) {
  LineResult result;
  result.index = line.index;
  switch (line.kind) {
    case ProofLine::Just::Axiom: {
      const NamedEquation* ax = find_catalog(line.ref);
      if (!ax) {
        result.message = "unknown axiom id '" + line.ref + "'";
        return result;
      }
      for (const Equation* cand : {&ax->surface, &ax->expanded})
        if (auto inst = instance_of(line.claim, *cand)) {
          result.ok = true;
          result.certificate = StepCertificate{StepCertificate::Kind::Instance,
                                               line.ref,
                                               -1,
                                               *cand,
                                               {},
                                               inst->second,
                                               std::move(inst->first)};
          return result;
        }
      result.message = "claim is not an instance of axiom " + line.ref;
      return result;
    }
    case ProofLine::Just::Def: {
      const Definition* def = definitions(Setting::Brignole).find(line.ref);
      if (!def) {
        result.message = "unknown defined symbol '" + line.ref + "'";
        return result;
      }
      Equation deq = definition_equation(*def);
      if (auto inst = instance_of(line.claim, deq)) {
        result.ok = true;
        result.certificate = StepCertificate{StepCertificate::Kind::Definition,
                                             line.ref,
                                             -1,
                                             deq,
                                             {},
                                             inst->second,
                                             std::move(inst->first)};
      } else {
        result.message = "claim is not the defining equation of '" + line.ref + "'";
      }
      return result;
    }
    case ProofLine::Just::Lemma: {
      const LemmaEntry* lemma = opts.lemmas.find(line.ref);
      if (!lemma) {
        result.message = "unknown lemma id '" + line.ref + "'";
        return result;
      }
      for (const Equation& cand : lemma->equations)
        if (auto inst = instance_of(line.claim, cand)) {
          result.ok = true;
          result.message = "lemma " + line.ref + ": " + lemma->trust;
          result.certificate = StepCertificate{StepCertificate::Kind::Lemma,
                                               line.ref,
                                               -1,
                                               cand,
                                               {},
                                               inst->second,
                                               std::move(inst->first)};
          return result;
        }
      result.message = "claim does not match any stored form of lemma " + line.ref;
      return result;
    }
    case ProofLine::Just::Rewrite: {
      auto gather = [&](const std::vector<int>& citations)
          -> std::optional<std::vector<std::pair<int, Equation>>> {
        std::vector<std::pair<int, Equation>> out;
        for (int c : citations) {
          if (c < 1 || c > static_cast<int>(verified.size())) return std::nullopt;
          out.emplace_back(c, verified[c - 1]);
        }
        return out;
      };
      auto cited = gather(line.cited);
      if (!cited) {
        result.message = "citation out of range";
        return result;
      }
      if (auto cert = search_rewrite(line.claim, *cited, opts.depth)) {
        result.ok = true;
        result.certificate = std::move(cert);
        return result;
      }
      std::ostringstream msg;
      msg << "no derivation within " << opts.depth << " rewrite hops from lines";
      for (int c : line.cited) msg << ' ' << c;
      // Off-by-one probing: report nearby citation tuples that DO derive the
      // claim. Informational only.
      std::vector<std::vector<int>> alternates;
      auto try_alt = [&](std::vector<int> alt) {
        if (alt == line.cited || alternates.size() >= 5) return;
        std::sort(alt.begin(), alt.end());
        if (std::find(alternates.begin(), alternates.end(), alt) != alternates.end())
          return;
        if (auto alt_cited = gather(alt))
          if (alt_cited && search_rewrite(line.claim, *alt_cited, opts.depth))
            alternates.push_back(std::move(alt));
      };
      int limit = static_cast<int>(std::min<std::size_t>(verified.size(),
                                                         line.index - 1));
      if (!opts.probe_near_misses) limit = 0;
      if (line.cited.size() == 1) {
        for (int d = -3; d <= 3; ++d) {
          int i = line.cited[0] + d;
          if (i >= 1 && i <= limit) try_alt({i});
        }
      } else {
        for (int d1 = -3; d1 <= 3; ++d1)
          for (int d2 = -3; d2 <= 3; ++d2) {
            int i = line.cited[0] + d1, j = line.cited[1] + d2;
            if (i >= 1 && i <= limit && j >= 1 && j <= limit) try_alt({i, j});
          }
      }
      if (!alternates.empty()) {
        msg << "; nearby citations that do derive it:";
        for (const auto& alt : alternates) {
          msg << " (";
          for (std::size_t k = 0; k < alt.size(); ++k) msg << (k ? " " : "") << alt[k];
          msg << ")";
        }
      }
      result.message = msg.str();
      result.near_miss_citations = std::move(alternates);
      return result;
    }
  }
  result.message = "unreachable";
  return result;
}

ProofReport verify_proof(const ProofScript& script, const VerifyOptions& opts) {
  ProofReport report;
  if (!script.goal) {
    report.failure = "script has no goal";
    return report;
  }
  std::vector<Equation> verified;
  bool all_ok = true;
  for (const ProofLine& line : script.lines) {
    LineResult r = verify_step(verified, line, opts);
    bool ok = r.ok;
    report.lines.push_back(std::move(r));
    if (!ok) {
      all_ok = false;
      if (!opts.continue_on_error) {
        report.failure = "line " + std::to_string(line.index) + ": " +
                         report.lines.back().message;
        return report;
      }
    }
    verified.push_back(line.claim);
  }
  bool goal_met;
  if (script.lines.empty()) {
    goal_met = script.goal->lhs == script.goal->rhs;
  } else {
    const Equation& last = script.lines.back().claim;
    goal_met = alpha_equal(*script.goal, last) ||
               alpha_equal(*script.goal, last.swapped());
  }
  if (!goal_met && report.failure.empty())
    report.failure = "final line does not establish the goal";
  if (!all_ok && report.failure.empty()) report.failure = "some lines failed";
  report.verified = all_ok && goal_met;
  return report;
}

}  // namespace nelbri
