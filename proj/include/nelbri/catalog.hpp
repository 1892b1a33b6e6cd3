#ifndef NELBRI_CATALOG_HPP
#define NELBRI_CATALOG_HPP

#include <string>
#include <vector>

#include "nelbri/term.hpp"

namespace nelbri {

enum class Setting { Nelson, Brignole };

const Signature& base_signature(Setting s);

/// Defined symbols over each base signature:
///   Nelson:   ->>, 0, !
///   Brignole: ~, v, ->, 1
const DefinitionTable& definitions(Setting s);

/// Base signature extended with the defined symbols (what catalog surface
/// forms and fixture files are parsed against).
const Signature& extended_signature(Setting s);

/// A catalogued identity. `surface` may use defined symbols; `expanded` is
/// over the base signature. Order-form lemma items (a <= b) are stored as
/// meet-absorption identities (a ^ b = a).
struct NamedEquation {
  std::string id;
  Equation surface;
  Equation expanded;
  Setting target;
  std::string source;
  std::vector<std::string> aliases;
};

const std::vector<NamedEquation>& nelson_axioms();            // N1..N8
const std::vector<NamedEquation>& brignole_axioms();          // B1..B10
const std::vector<NamedEquation>& reduced_brignole_axioms();  // B1, B3..B7, B9, B10

/// Every equational lemma item (L1.*, L2.*, L4.*, L5.*). Multi-identity items
/// carry numeric suffixes (e.g. L4.a1..a3); restated items live once under
/// their first id, with the restatement recorded as an alias.
const std::vector<NamedEquation>& lemma_catalog();

/// Lookup across axioms and lemmas, alias-aware. Returns nullptr if unknown.
const NamedEquation* find_catalog(const std::string& id);

/// The independence theorem names these five axioms...
const std::vector<std::string>& independence_theorem_ids();
/// ...while the per-model subsections cover these five. Both lists are kept;
/// which axiom each bundled model actually violates is decided empirically.
const std::vector<std::string>& independence_section_ids();

}  // namespace nelbri

#endif
