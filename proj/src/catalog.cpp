#include "nelbri/catalog.hpp"

#include <stdexcept>

namespace nelbri {

const Signature& base_signature(Setting s) {
  return s == Setting::Nelson ? Signature::nelson() : Signature::brignole();
}

const DefinitionTable& definitions(Setting s) {
  auto build = [](Setting setting) {
    const Signature& ext = setting == Setting::Nelson
                               ? Signature{{{"^", 2}, {"v", 2}, {"->", 2}, {"~", 1},
                                            {"->>", 2}, {"!", 1}},
                                           {"1", "0"}}
                               : Signature{{{"^", 2}, {"->>", 2}, {"v", 2}, {"->", 2},
                                            {"~", 1}},
                                           {"0", "1"}};
    auto def = [&](std::string sym, std::vector<std::string> params, const char* body) {
      return Definition{std::move(sym), std::move(params), parse_term(body, ext)};
    };
    DefinitionTable t;
    if (setting == Setting::Nelson) {
      t.defs.push_back(def("->>", {"x", "y"}, "(x -> y) ^ (~y -> ~x)"));
      t.defs.push_back(def("0", {}, "~1"));
      t.defs.push_back(def("!", {"x"}, "x -> ~1"));
    } else {
      t.defs.push_back(def("~", {"x"}, "x ->> 0"));
      t.defs.push_back(def("v", {"x", "y"}, "((x ->> 0) ^ (y ->> 0)) ->> 0"));
      t.defs.push_back(def("->", {"x", "y"}, "x ->> (x ->> y)"));
      t.defs.push_back(def("1", {}, "0 ->> 0"));
    }
    return t;
  };
  static const DefinitionTable nelson = build(Setting::Nelson);
  static const DefinitionTable brignole = build(Setting::Brignole);
  return s == Setting::Nelson ? nelson : brignole;
}

const Signature& extended_signature(Setting s) {
  static const Signature nelson =
      extend_signature(Signature::nelson(), definitions(Setting::Nelson));
  static const Signature brignole =
      extend_signature(Signature::brignole(), definitions(Setting::Brignole));
  return s == Setting::Nelson ? nelson : brignole;
}

namespace {

NamedEquation make(std::string id, Setting target, const char* text, std::string source,
                   std::vector<std::string> aliases = {}) {
  Equation surface = parse_equation(text, extended_signature(target));
  Equation expanded =
      expand_definitions(surface, definitions(target), base_signature(target));
  return NamedEquation{std::move(id), std::move(surface), std::move(expanded), target,
                       std::move(source), std::move(aliases)};
}

std::vector<NamedEquation> build_nelson_axioms() {
  Setting N = Setting::Nelson;
  return {
      make("N1", N, "x ^ (x v y) = x", "Def. 1 (N1)"),
      make("N2", N, "x ^ (y v z) = (z ^ x) v (y ^ x)", "Def. 1 (N2)"),
      make("N3", N, "~~x = x", "Def. 1 (N3)"),
      make("N4", N, "~(x ^ y) = ~x v ~y", "Def. 1 (N4)"),
      make("N5", N, "x ^ ~x = (x ^ ~x) ^ (y v ~y)", "Def. 1 (N5)"),
      make("N6", N, "x -> x = 1", "Def. 1 (N6)"),
      make("N7", N, "x ^ (x -> y) = x ^ (~x v y)", "Def. 1 (N7)"),
      make("N8", N, "(x ^ y) -> z = x -> (y -> z)", "Def. 1 (N8)"),
  };
}

std::vector<NamedEquation> build_brignole_axioms() {
  Setting B = Setting::Brignole;
  return {
      make("B1", B, "(x ->> x) ->> y = y", "Brignole def. (B1)"),
      make("B2", B, "(x ->> y) ^ y = y", "Brignole def. (B2)"),
      make("B3", B, "x ^ ~(x ^ ~y) = x ^ (x ->> y)", "Brignole def. (B3)"),
      make("B4", B, "x ->> (y ^ z) = (x ->> y) ^ (x ->> z)", "Brignole def. (B4)"),
      make("B5", B, "x ->> y = ~y ->> ~x", "Brignole def. (B5)"),
      make("B6", B, "x ->> (x ->> (y ->> (y ->> z))) = (x ^ y) ->> ((x ^ y) ->> z)",
           "Brignole def. (B6)"),
      make("B7", B, "~(~x ^ y) ->> (x ->> y) = x ->> y", "Brignole def. (B7)"),
      make("B8", B, "x ^ (x v y) = x", "Brignole def. (B8)"),
      make("B9", B, "x ^ (y v z) = (z ^ x) v (y ^ x)", "Brignole def. (B9)"),
      make("B10", B, "(x ^ ~x) ^ (y v ~y) = x ^ ~x", "Brignole def. (B10)"),
  };
}

std::vector<NamedEquation> build_lemmas() {
  Setting N = Setting::Nelson;
  Setting B = Setting::Brignole;
  std::vector<NamedEquation> out = {
      // Lemma 1: properties of Nelson algebras. Order items a <= b are stored
      // as a ^ b = a.
      make("L1.a", N, "x -> (y ^ z) = (x -> y) ^ (x -> z)", "Lemma 1(a)"),
      make("L1.b", N, "1 -> x = x", "Lemma 1(b)"),
      make("L1.c", N, "~x ^ !x = ~x", "Lemma 1(c), order form"),
      make("L1.d", N, "(x -> x) ^ (~x -> ~x) = 1", "Lemma 1(d)"),
      make("L1.e", N, "~y ^ (y -> z) = ~y", "Lemma 1(e), order form"),
      make("L1.f", N, "y ^ (x -> y) = y", "Lemma 1(f), order form"),
      make("L1.g", N, "(x v y) -> z = (x -> z) ^ (y -> z)", "Lemma 1(g)"),
      make("L1.h", N, "x -> y = x ->> (x ->> y)", "Lemma 1(h)"),
      make("L1.i", N, "x -> (x -> y) = x -> y", "Lemma 1(i)"),
      // Lemma 2: identities of the Brignole-definable operations in a Nelson
      // algebra. The subscripted operations are written via their defining
      // terms (x ->> 0 etc.).
      make("L2.a", N, "x ->> 0 = ~x", "Lemma 2(a)"),
      make("L2.b", N, "((x ->> 0) ^ (y ->> 0)) ->> 0 = x v y", "Lemma 2(b)"),
      make("L2.c1", N, "x ^ (((x ->> 0) ^ (y ->> 0)) ->> 0) = x", "Lemma 2(c), first"),
      make("L2.c2", N,
           "x ^ (((y ->> 0) ^ (z ->> 0)) ->> 0) = (((z ^ x) ->> 0) ^ ((y ^ x) ->> 0)) ->> 0",
           "Lemma 2(c), second"),
      make("L2.c3", N,
           "(x ^ (x ->> 0)) ^ (((y ->> 0) ^ ((y ->> 0) ->> 0)) ->> 0) = x ^ (x ->> 0)",
           "Lemma 2(c), third"),
      make("L2.d", N, "x ->> x = 1", "Lemma 2(d)"),
      make("L2.e", N, "x = x ^ (~x -> y)", "Lemma 2(e)"),
      make("L2.f", N, "1 ->> x = x", "Lemma 2(f)"),
      make("L2.g", N, "(x ->> x) ->> y = y", "Lemma 2(g)"),
      make("L2.h", N, "(x ->> y) ^ y = y", "Lemma 2(h)"),
      make("L2.i", N, "x ^ ~(x ^ ~y) = x ^ (x ->> y)", "Lemma 2(i)"),
      make("L2.j", N, "x ->> (y ^ z) = (x ->> y) ^ (x ->> z)", "Lemma 2(j)"),
      make("L2.k", N, "x ->> y = (y ->> 0) ->> (x ->> 0)", "Lemma 2(k)"),
      make("L2.l", N, "x ->> (x ->> (y ->> (y ->> z))) = (x ^ y) ->> ((x ^ y) ->> z)",
           "Lemma 2(l)"),
      make("L2.m", N, "~(~x ^ y) ->> (x ->> y) = x ->> y", "Lemma 2(m)"),
      // Lemma 4: properties of Brignole algebras.
      make("L4.a1", B, "x ^ (x v y) = x", "Lemma 4(a), first"),
      make("L4.a2", B, "x ^ (y v z) = (z ^ x) v (y ^ x)", "Lemma 4(a), second"),
      make("L4.a3", B, "(x ^ ~x) ^ (y v ~y) = x ^ ~x", "Lemma 4(a), third"),
      make("L4.b", B, "~1 = 0", "Lemma 4(b)", {"L5.a"}),
      make("L4.c", B, "1 = 1 ->> 1", "Lemma 4(c)"),
      make("L4.d", B, "1 ->> x = x", "Lemma 4(d)"),
      make("L4.e", B, "~~x = x", "Lemma 4(e)", {"L5.b"}),
      make("L4.f", B, "~(x v y) = ~x ^ ~y", "Lemma 4(f)", {"L5.l1"}),
      make("L4.g", B, "~(x ^ y) = ~x v ~y", "Lemma 4(g)", {"L5.l2"}),
      make("L4.h", B, "x ^ (x -> y) = x ^ (~x v y)", "Lemma 4(h)"),
      make("L4.i", B, "x v 1 = 1", "Lemma 4(i)", {"L5.n"}),
      make("L4.j", B, "x ->> 1 = 1", "Lemma 4(j)"),
      make("L4.k", B, "(x ^ y) -> z = x -> (y -> z)", "Lemma 4(k)"),
      make("L4.l1", B, "x ->> x = 1", "Lemma 4(l), first", {"L5.c1"}),
      make("L4.l2", B, "x ->> x = y ->> y", "Lemma 4(l), second", {"L5.c2"}),
      make("L4.m", B, "x -> x = 1", "Lemma 4(m)"),
      // Lemma 5: properties already derivable without B2 and B8. Items (a),
      // (b), (c) and (l) restate Lemma 4 items and live there as aliases.
      make("L5.d", B, "x = (x ->> 0) ->> (x ^ 0)", "Lemma 5(d)"),
      make("L5.e", B, "0 ^ 0 = 0", "Lemma 5(e)"),
      make("L5.f", B, "x ^ y = y ^ x", "Lemma 5(f)"),
      make("L5.g", B, "x ^ x = x", "Lemma 5(g)"),
      make("L5.h", B, "0 ^ 1 = 0", "Lemma 5(h)"),
      make("L5.i", B, "x ^ 0 = 0", "Lemma 5(i), Appendix"),
      make("L5.j", B, "x v x = x", "Lemma 5(j)"),
      make("L5.k", B, "x v y = y v x", "Lemma 5(k)"),
      make("L5.m", B, "x ^ (y v z) = (x ^ y) v (x ^ z)", "Lemma 5(m)"),
  };
  return out;
}

}  // namespace

const std::vector<NamedEquation>& nelson_axioms() {
  static const std::vector<NamedEquation> axioms = build_nelson_axioms();
  return axioms;
}

const std::vector<NamedEquation>& brignole_axioms() {
  static const std::vector<NamedEquation> axioms = build_brignole_axioms();
  return axioms;
}

const std::vector<NamedEquation>& reduced_brignole_axioms() {
  static const std::vector<NamedEquation> axioms = [] {
    std::vector<NamedEquation> out;
    for (const NamedEquation& ax : brignole_axioms())
      if (ax.id != "B2" && ax.id != "B8") out.push_back(ax);
    return out;
  }();
  return axioms;
}

const std::vector<NamedEquation>& lemma_catalog() {
  static const std::vector<NamedEquation> lemmas = build_lemmas();
  return lemmas;
}

const NamedEquation* find_catalog(const std::string& id) {
  auto scan = [&](const std::vector<NamedEquation>& set) -> const NamedEquation* {
    for (const NamedEquation& e : set) {
      if (e.id == id) return &e;
      for (const std::string& alias : e.aliases)
        if (alias == id) return &e;
    }
    return nullptr;
  };
  if (const NamedEquation* e = scan(nelson_axioms())) return e;
  if (const NamedEquation* e = scan(brignole_axioms())) return e;
  return scan(lemma_catalog());
}

const std::vector<std::string>& independence_theorem_ids() {
  static const std::vector<std::string> ids = {"B1", "B3", "B5", "B7", "B9"};
  return ids;
}

const std::vector<std::string>& independence_section_ids() {
  static const std::vector<std::string> ids = {"B1", "B3", "B5", "B6", "B9"};
  return ids;
}

}  // namespace nelbri
