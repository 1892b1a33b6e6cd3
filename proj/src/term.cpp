#include "nelbri/term.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace nelbri {

bool Signature::has_operation(const std::string& name) const {
  return std::any_of(operations.begin(), operations.end(),
                     [&](const auto& op) { return op.first == name; });
}

bool Signature::has_constant(const std::string& name) const {
  return std::find(constants.begin(), constants.end(), name) != constants.end();
}

int Signature::arity_of(const std::string& name) const {
  for (const auto& [op, arity] : operations)
    if (op == name) return arity;
  throw std::runtime_error("unknown operation: " + name);
}

const Signature& Signature::nelson() {
  static const Signature sig{{{"^", 2}, {"v", 2}, {"->", 2}, {"~", 1}}, {"1"}};
  return sig;
}

const Signature& Signature::brignole() {
  static const Signature sig{{{"^", 2}, {"->>", 2}}, {"0"}};
  return sig;
}

Term Term::variable(std::string name) {
  return Term(TermKind::Variable, std::move(name), {});
}

Term Term::constant(std::string name) {
  return Term(TermKind::Constant, std::move(name), {});
}

Term Term::apply(std::string op, std::vector<Term> args) {
  return Term(TermKind::Application, std::move(op), std::move(args));
}

bool Term::operator==(const Term& other) const {
  return kind_ == other.kind_ && head_ == other.head_ && args_ == other.args_;
}

int Term::node_count() const {
  int n = 1;
  for (const Term& a : args_) n += a.node_count();
  return n;
}

void Term::collect_variables(std::set<std::string>& out) const {
  if (kind_ == TermKind::Variable) out.insert(head_);
  for (const Term& a : args_) a.collect_variables(out);
}

std::set<std::string> Term::variables() const {
  std::set<std::string> out;
  collect_variables(out);
  return out;
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

enum class Tok { LParen, RParen, Equals, Arrow, StrongArrow, Meet, Join, Tilde, Bang, Ident, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t offset;
};

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < text.size()) {
    char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    std::size_t start = i;
    if (c == '(') {
      out.push_back({Tok::LParen, "(", start});
      ++i;
    } else if (c == ')') {
      out.push_back({Tok::RParen, ")", start});
      ++i;
    } else if (c == '=') {
      out.push_back({Tok::Equals, "=", start});
      ++i;
    } else if (c == '^') {
      out.push_back({Tok::Meet, "^", start});
      ++i;
    } else if (c == '~') {
      out.push_back({Tok::Tilde, "~", start});
      ++i;
    } else if (c == '!') {
      out.push_back({Tok::Bang, "!", start});
      ++i;
    } else if (c == '-') {
      if (text.substr(i, 3) == "->>") {
        out.push_back({Tok::StrongArrow, "->>", start});
        i += 3;
      } else if (text.substr(i, 2) == "->") {
        out.push_back({Tok::Arrow, "->", start});
        i += 2;
      } else {
        throw ParseError("unexpected character '-'", start);
      }
    } else if (std::isalnum(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_'))
        ++j;
      std::string word(text.substr(i, j - i));
      if (word == "v")
        out.push_back({Tok::Join, "v", start});
      else
        out.push_back({Tok::Ident, word, start});
      i = j;
    } else {
      throw ParseError(std::string("unexpected character '") + c + "'", start);
    }
  }
  out.push_back({Tok::End, "", text.size()});
  return out;
}

class Parser {
 public:
  Parser(std::vector<Token> toks, const Signature& sig)
      : toks_(std::move(toks)), sig_(sig) {}

  Term parse_full_term() {
    Term t = parse_implication();
    expect(Tok::End, "end of input");
    return t;
  }

  Equation parse_full_equation() {
    Term lhs = parse_implication();
    if (peek().kind != Tok::Equals)
      throw ParseError("expected '='", peek().offset);
    advance();
    Term rhs = parse_implication();
    expect(Tok::End, "end of input");
    return {std::move(lhs), std::move(rhs)};
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  const Token& advance() { return toks_[pos_++]; }

  void expect(Tok k, const char* what) {
    if (peek().kind != k)
      throw ParseError(std::string("expected ") + what, peek().offset);
    advance();
  }

  Term make_op(const std::string& name, std::vector<Term> args, std::size_t offset) {
    if (!sig_.has_operation(name))
      throw ParseError("operation '" + name + "' not in signature", offset);
    return Term::apply(name, std::move(args));
  }

  Term parse_implication() {
    Term lhs = parse_join();
    Tok k = peek().kind;
    if (k == Tok::StrongArrow || k == Tok::Arrow) {
      const Token op = advance();
      Term rhs = parse_implication();  // right-associative
      return make_op(op.text, {std::move(lhs), std::move(rhs)}, op.offset);
    }
    return lhs;
  }

  Term parse_join() {
    Term t = parse_meet();
    while (peek().kind == Tok::Join) {
      const Token op = advance();
      Term rhs = parse_meet();
      t = make_op("v", {std::move(t), std::move(rhs)}, op.offset);
    }
    return t;
  }

  Term parse_meet() {
    Term t = parse_unary();
    while (peek().kind == Tok::Meet) {
      const Token op = advance();
      Term rhs = parse_unary();
      t = make_op("^", {std::move(t), std::move(rhs)}, op.offset);
    }
    return t;
  }

  Term parse_unary() {
    Tok k = peek().kind;
    if (k == Tok::Tilde || k == Tok::Bang) {
      const Token op = advance();
      Term arg = parse_unary();
      return make_op(op.text, {std::move(arg)}, op.offset);
    }
    return parse_atom();
  }

  Term parse_atom() {
    const Token& t = peek();
    if (t.kind == Tok::LParen) {
      advance();
      Term inner = parse_implication();
      expect(Tok::RParen, "')'");
      return inner;
    }
    if (t.kind == Tok::Ident) {
      advance();
      if (sig_.has_constant(t.text)) return Term::constant(t.text);
      if (sig_.has_operation(t.text))
        throw ParseError("operation '" + t.text + "' used without arguments", t.offset);
      // "0"/"1" outside the signature are almost certainly a signature mix-up.
      if (t.text == "0" || t.text == "1")
        throw ParseError("constant '" + t.text + "' not in signature", t.offset);
      return Term::variable(t.text);
    }
    throw ParseError("expected a term", t.offset);
  }

  std::vector<Token> toks_;
  const Signature& sig_;
  std::size_t pos_ = 0;
};

}  // namespace

Term parse_term(std::string_view text, const Signature& sig) {
  return Parser(tokenize(text), sig).parse_full_term();
}

Equation parse_equation(std::string_view text, const Signature& sig) {
  return Parser(tokenize(text), sig).parse_full_equation();
}

// ---------------------------------------------------------------------------
// Printing

namespace {

// Higher binds tighter.
int precedence_of(const Term& t) {
  if (t.kind() != TermKind::Application) return 100;
  const std::string& h = t.head();
  if (h == "~" || h == "!") return 4;
  if (h == "^") return 3;
  if (h == "v") return 2;
  return 1;  // -> and ->>
}

// `min_prec` is the loosest precedence printable here without parentheses.
void format_into(const Term& t, std::ostringstream& out, int min_prec) {
  int prec = precedence_of(t);
  if (t.kind() != TermKind::Application) {
    out << t.head();
    return;
  }
  const std::string& h = t.head();
  bool need_parens = prec < min_prec;
  if (need_parens) out << '(';
  if (h == "~" || h == "!") {
    out << h;
    format_into(t.args()[0], out, prec);
  } else if (h == "^" || h == "v") {
    // left-associative: right operand at equal level needs parens
    format_into(t.args()[0], out, prec);
    out << ' ' << h << ' ';
    format_into(t.args()[1], out, prec + 1);
  } else {
    // arrows are right-associative
    format_into(t.args()[0], out, prec + 1);
    out << ' ' << h << ' ';
    format_into(t.args()[1], out, prec);
  }
  if (need_parens) out << ')';
}

}  // namespace

std::string format_term(const Term& t) {
  std::ostringstream out;
  format_into(t, out, 0);
  return out.str();
}

std::string format_equation(const Equation& e) {
  return format_term(e.lhs) + " = " + format_term(e.rhs);
}

// ---------------------------------------------------------------------------
// Substitution, matching, positions

Term apply_substitution(const Term& t, const Substitution& s) {
  switch (t.kind()) {
    case TermKind::Variable: {
      auto it = s.find(t.head());
      return it == s.end() ? t : it->second;
    }
    case TermKind::Constant:
      return t;
    case TermKind::Application: {
      std::vector<Term> args;
      args.reserve(t.args().size());
      for (const Term& a : t.args()) args.push_back(apply_substitution(a, s));
      return Term::apply(t.head(), std::move(args));
    }
  }
  throw std::logic_error("unreachable");
}

Equation apply_substitution(const Equation& e, const Substitution& s) {
  return {apply_substitution(e.lhs, s), apply_substitution(e.rhs, s)};
}

bool match_extend(const Term& pattern, const Term& subject, Substitution& binding) {
  if (pattern.kind() == TermKind::Variable) {
    auto [it, inserted] = binding.emplace(pattern.head(), subject);
    return inserted || it->second == subject;
  }
  if (pattern.kind() != subject.kind() || pattern.head() != subject.head())
    return false;
  for (std::size_t i = 0; i < pattern.args().size(); ++i)
    if (!match_extend(pattern.args()[i], subject.args()[i], binding)) return false;
  return true;
}

std::optional<Substitution> match_pattern(const Term& pattern, const Term& subject) {
  Substitution s;
  if (match_extend(pattern, subject, s)) return s;
  return std::nullopt;
}

namespace {
void collect_positions(const Term& t, Position& cur, std::vector<Position>& out) {
  out.push_back(cur);
  for (int i = 0; i < static_cast<int>(t.args().size()); ++i) {
    cur.push_back(i);
    collect_positions(t.args()[i], cur, out);
    cur.pop_back();
  }
}
}  // namespace

std::vector<Position> positions(const Term& t) {
  std::vector<Position> out;
  Position cur;
  collect_positions(t, cur, out);
  return out;
}

const Term& subterm_at(const Term& t, const Position& p) {
  const Term* cur = &t;
  for (int i : p) {
    if (i < 0 || i >= static_cast<int>(cur->args().size()))
      throw std::out_of_range("invalid position");
    cur = &cur->args()[i];
  }
  return *cur;
}

Term replace_at(const Term& t, const Position& p, Term replacement) {
  if (p.empty()) return replacement;
  int i = p.front();
  if (i < 0 || i >= static_cast<int>(t.args().size()))
    throw std::out_of_range("invalid position");
  std::vector<Term> args = t.args();
  args[i] = replace_at(args[i], Position(p.begin() + 1, p.end()), std::move(replacement));
  return Term::apply(t.head(), std::move(args));
}

// ---------------------------------------------------------------------------
// Alpha equivalence

namespace {
bool alpha_extend(const Term& a, const Term& b, std::map<std::string, std::string>& fwd,
                  std::map<std::string, std::string>& bwd) {
  if (a.kind() != b.kind()) return false;
  if (a.kind() == TermKind::Variable) {
    auto [itf, insf] = fwd.emplace(a.head(), b.head());
    auto [itb, insb] = bwd.emplace(b.head(), a.head());
    return (insf || itf->second == b.head()) && (insb || itb->second == a.head());
  }
  if (a.head() != b.head() || a.args().size() != b.args().size()) return false;
  for (std::size_t i = 0; i < a.args().size(); ++i)
    if (!alpha_extend(a.args()[i], b.args()[i], fwd, bwd)) return false;
  return true;
}
}  // namespace

bool alpha_equal(const Equation& e1, const Equation& e2) {
  std::map<std::string, std::string> fwd, bwd;
  return alpha_extend(e1.lhs, e2.lhs, fwd, bwd) && alpha_extend(e1.rhs, e2.rhs, fwd, bwd);
}

// ---------------------------------------------------------------------------
// Definition expansion

const Definition* DefinitionTable::find(const std::string& symbol) const {
  for (const Definition& d : defs)
    if (d.symbol == symbol) return &d;
  return nullptr;
}

Term expand_definitions(const Term& t, const DefinitionTable& defs, const Signature& base) {
  switch (t.kind()) {
    case TermKind::Variable:
      return t;
    case TermKind::Constant: {
      if (base.has_constant(t.head())) return t;
      const Definition* d = defs.find(t.head());
      if (d == nullptr)
        throw std::runtime_error("no definition for constant '" + t.head() + "'");
      return expand_definitions(d->body, defs, base);
    }
    case TermKind::Application: {
      std::vector<Term> args;
      args.reserve(t.args().size());
      for (const Term& a : t.args()) args.push_back(expand_definitions(a, defs, base));
      if (base.has_operation(t.head())) return Term::apply(t.head(), std::move(args));
      const Definition* d = defs.find(t.head());
      if (d == nullptr)
        throw std::runtime_error("no definition for operation '" + t.head() + "'");
      Substitution s;
      for (std::size_t i = 0; i < d->params.size(); ++i) s.emplace(d->params[i], args[i]);
      return expand_definitions(apply_substitution(d->body, s), defs, base);
    }
  }
  throw std::logic_error("unreachable");
}

Equation expand_definitions(const Equation& e, const DefinitionTable& defs,
                            const Signature& base) {
  return {expand_definitions(e.lhs, defs, base), expand_definitions(e.rhs, defs, base)};
}

Signature extend_signature(const Signature& base, const DefinitionTable& defs) {
  Signature out = base;
  for (const Definition& d : defs.defs) {
    if (d.arity() == 0)
      out.constants.push_back(d.symbol);
    else
      out.operations.emplace_back(d.symbol, d.arity());
  }
  return out;
}

}  // namespace nelbri
