#ifndef NELBRI_PROOF_HPP
#define NELBRI_PROOF_HPP

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "nelbri/catalog.hpp"
#include "nelbri/term.hpp"

namespace nelbri {

struct ProofLine {
  int index;
  Equation claim;  // over the extended Brignole signature
  enum class Just { Axiom, Def, Lemma, Rewrite } kind;
  std::string ref;         // axiom id / defined symbol / lemma id
  std::vector<int> cited;  // rewrite citations (1 or 2, all < index)
};

struct ProofScript {
  std::string name;
  std::optional<Equation> goal;
  std::vector<ProofLine> lines;
};

/// Proof-script format (owned, bit-exact):
///   proof <name>
///   goal <equation>
///   <idx>: <equation> ; <just>
/// where <just> is `axiom <id>` | `def <symbol>` | `lemma <id>` |
/// `by <i>` | `by <i> <j>`.
ProofScript parse_proof(std::istream& in);
ProofScript parse_proof_text(const std::string& text);
ProofScript load_proof(const std::string& path);

/// Lemma-store entries are admitted facts; `trust` records how each entry is
/// validated (all bundled entries are model-checked on small algebras rather
/// than derived here).
struct LemmaEntry {
  std::string id;
  std::vector<Equation> equations;
  std::string trust;
};

struct LemmaStore {
  std::vector<LemmaEntry> entries;
  const LemmaEntry* find(const std::string& id) const;
  /// The entries the bundled appendix script cites: L4.l, L5.f, L5.g, L5.h,
  /// L5.h.1 (the last covers the script line whose original justification is
  /// ambiguous; see its trust note).
  static LemmaStore appendix_defaults();
};

/// One replayable rewrite application. Rules are applied by syntactic
/// unification modulo commutativity of ^ (the source derivation instantiates
/// proof variables and commutes meets silently; commutativity is the
/// model-checked store lemma L5.f). The certificate stores the fully
/// instantiated rule, so replay needs only substitution and replacement.
struct RewriteHop {
  int rule_line;        // cited line the rule instantiates
  bool reversed;        // rule applied right-to-left
  Equation rule;        // instantiated: rule.lhs equals the rewritten subterm
  Substitution pre_subst;  // applied to the whole working equation first
  int side;             // 0 = lhs, 1 = rhs of the working equation
  Position pos;
  Equation result;      // working equation after this hop
};

struct StepCertificate {
  enum class Kind { Instance, Lemma, Definition, Rewrite } kind;
  std::string ref;      // axiom/lemma id or symbol (Instance/Lemma/Definition)
  int source_line;      // cited start line; 0 = reflexivity over a claim side
  Equation start;       // equation the derivation starts from
  std::vector<RewriteHop> hops;
  bool swapped;             // claim matches the swapped derived equation
  Substitution final_subst; // claim == subst(derived, possibly swapped)
};

/// Mechanically replays a certificate with apply_substitution / replace_at
/// only and checks it reproduces the claim exactly.
bool replay_certificate(const StepCertificate& cert, const Equation& claim);

struct LineResult {
  int index = 0;
  bool ok = false;
  std::string message;  // failure diagnostics or trust note
  std::optional<StepCertificate> certificate;
  // Nearby citation pairs that DO derive a failed claim (off-by-one probing);
  // informational only, never auto-accepted.
  std::vector<std::vector<int>> near_miss_citations;
};

struct ProofReport {
  bool verified = false;  // every line ok and final claim meets the goal
  std::vector<LineResult> lines;
  std::string failure;  // summary when !verified
};

struct VerifyOptions {
  int depth = 2;  // max rewrite hops per step
  bool continue_on_error = false;
  bool probe_near_misses = true;  // costs ~50 extra searches per failing line
  LemmaStore lemmas = LemmaStore::appendix_defaults();
};

/// Verifies a single line against already-verified lines (1-based index into
/// `verified`, which holds the claims of lines 1..index-1 in order).
LineResult verify_step(const std::vector<Equation>& verified, const ProofLine& line,
                       const VerifyOptions& opts);

ProofReport verify_proof(const ProofScript& script, const VerifyOptions& opts = {});

}  // namespace nelbri

#endif
