#ifndef SKETCHFORGE_PARSER_HPP
#define SKETCHFORGE_PARSER_HPP

// Text syntax:
//
//   spec Sgp extends Mgm {
//     type G
//     pure term unt : 1 -> G
//     term prd : G * G -> G
//     param type A
//     param const a : A
//     eq assoc : prd(x, prd(y, z)) == prd(prd(x, y), z) where x y z : G
//     eq law : s . z == z
//   }
//   morphism phi : Oper -> Mon { type X => G * G; term f => prd; }
//   nat t : j_t_A => j_A { A => a; X => id[X]; }
//
// `*` is right associative, `g . f` is classical composition. Equations with
// a `where` clause (or with applications `f(x, y)`) are written with
// variables; they are desugared into point-free terms over the product of
// the variables, taken in order of first occurrence.

#include <cctype>
#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "error.hpp"
#include "morphism.hpp"
#include "spec.hpp"
#include "syntax.hpp"

namespace sketchforge {

struct Document {
  std::vector<Spec> specs;
  std::vector<Morphism> morphisms;
  std::vector<NatTrans> nats;

  const Spec* find_spec(const std::string& n) const {
    for (const auto& s : specs)
      if (s.name == n) return &s;
    return nullptr;
  }
  const Spec& spec(const std::string& n) const {
    if (const Spec* s = find_spec(n)) return *s;
    throw Error(ErrorKind::unknown_symbol, "no spec named " + n);
  }
  const Morphism* find_morphism(const std::string& n) const {
    for (const auto& m : morphisms)
      if (m.name == n) return &m;
    return nullptr;
  }
  const Morphism& morphism(const std::string& n) const {
    if (const Morphism* m = find_morphism(n)) return *m;
    throw Error(ErrorKind::unknown_symbol, "no morphism named " + n);
  }
  const NatTrans& nat(const std::string& n) const {
    for (const auto& t : nats)
      if (t.name == n) return t;
    throw Error(ErrorKind::unknown_symbol, "no nat named " + n);
  }
};

namespace detail {

struct Token {
  enum Kind { ident, one, punct, end } kind;
  std::string text;
  int line = 0;
  int col = 0;
};

inline bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
inline bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'' || c == '#';
}

inline std::vector<Token> lex(std::string_view src) {
  std::vector<Token> out;
  int line = 1, col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  while (i < src.size()) {
    char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (c == '/' && i + 1 < src.size() && src[i + 1] == '/') {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    Token t{Token::punct, {}, line, col};
    if (ident_start(c)) {
      std::size_t j = i;
      while (j < src.size() && ident_char(src[j])) ++j;
      t.kind = Token::ident;
      t.text = std::string(src.substr(i, j - i));
      advance(j - i);
    } else if (c == '1' && (i + 1 >= src.size() || !ident_char(src[i + 1]))) {
      t.kind = Token::one;
      t.text = "1";
      advance(1);
    } else {
      static const char* two[] = {"->", "=>", "=="};
      bool matched = false;
      for (const char* p : two)
        if (src.substr(i, 2) == p) {
          t.text = p;
          advance(2);
          matched = true;
          break;
        }
      if (!matched) {
        if (std::string_view("{}()[],:;.*").find(c) == std::string_view::npos)
          throw Error(ErrorKind::parse, std::to_string(line) + ":" + std::to_string(col) + ": unexpected character '" +
                                            std::string(1, c) + "'");
        t.text = std::string(1, c);
        advance(1);
      }
    }
    out.push_back(std::move(t));
  }
  out.push_back({Token::end, "<end of input>", line, col});
  return out;
}

/// Expression tree before names are resolved against a spec.
struct Raw {
  enum Kind { ident, id, bang, p1, p2, pair, comp, apply } kind;
  std::string name;
  Type a, b;
  std::vector<Raw> args;  // comp: after, before; pair: fst, snd; apply: head, arguments...
  int line = 0, col = 0;
};

struct VarDecl {
  std::string name;
  Type type;
};

inline bool is_keyword(const std::string& s) {
  static const char* kws[] = {"spec", "extends", "type", "pure", "term", "param", "const", "eq", "where",
                              "morphism", "nat", "id", "p1", "p2", "bang", "pair"};
  for (const char* k : kws)
    if (s == k) return true;
  return false;
}

class Parser {
 public:
  explicit Parser(std::string_view src) : toks_(lex(src)) {}

  bool at_end() const { return peek().kind == Token::end; }
  const Token& peek(std::size_t k = 0) const { return toks_[std::min(pos_ + k, toks_.size() - 1)]; }
  bool is(const char* text) const { return peek().kind != Token::end && peek().text == text; }

  [[noreturn]] void fail(const std::string& msg) const {
    const Token& t = peek();
    throw Error(ErrorKind::parse, std::to_string(t.line) + ":" + std::to_string(t.col) + ": " + msg + " (at '" +
                                      t.text + "')");
  }

  Token next() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }

  void expect(const char* text) {
    if (!is(text)) fail(std::string("expected '") + text + "'");
    next();
  }

  bool accept(const char* text) {
    if (!is(text)) return false;
    next();
    return true;
  }

  std::string name() {
    if (peek().kind != Token::ident || is_keyword(peek().text)) fail("expected a name");
    return next().text;
  }

  Type type() {
    Type left = type_factor();
    if (accept("*")) return Type::prod(left, type());
    return left;
  }

  Type type_factor() {
    if (peek().kind == Token::one) {
      next();
      return Type::unit();
    }
    if (accept("(")) {
      Type t = type();
      expect(")");
      return t;
    }
    return Type::base(name());
  }

  Raw expr() {
    Raw left = postfix();
    if (is(".")) {
      Raw r{Raw::comp, {}, {}, {}, {}, left.line, left.col};
      next();
      r.args.push_back(std::move(left));
      r.args.push_back(expr());
      return r;
    }
    return left;
  }

  Raw postfix() {
    Raw head = primary();
    while (is("(") && head.kind != Raw::pair) {
      Raw r{Raw::apply, {}, {}, {}, {}, head.line, head.col};
      r.args.push_back(std::move(head));
      next();
      if (!is(")")) {
        r.args.push_back(expr());
        while (accept(",")) r.args.push_back(expr());
      }
      expect(")");
      head = std::move(r);
    }
    return head;
  }

  Raw primary() {
    const Token& t = peek();
    Raw r{Raw::ident, {}, {}, {}, {}, t.line, t.col};
    if (accept("(")) {
      Raw inner = expr();
      expect(")");
      return inner;
    }
    if (t.kind != Token::ident) fail("expected an expression");
    if (accept("id")) {
      r.kind = Raw::id;
      expect("[");
      r.a = type();
      expect("]");
    } else if (accept("bang")) {
      r.kind = Raw::bang;
      expect("[");
      r.a = type();
      expect("]");
    } else if (is("p1") || is("p2")) {
      r.kind = next().text == "p1" ? Raw::p1 : Raw::p2;
      expect("[");
      r.a = type();
      expect(",");
      r.b = type();
      expect("]");
    } else if (accept("pair")) {
      r.kind = Raw::pair;
      expect("(");
      r.args.push_back(expr());
      expect(",");
      r.args.push_back(expr());
      expect(")");
    } else {
      r.name = name();
    }
    return r;
  }

  std::vector<VarDecl> where_clause() {
    std::vector<VarDecl> out;
    if (!accept("where")) return out;
    do {
      std::vector<std::string> names;
      names.push_back(name());
      while (!is(":")) names.push_back(name());
      expect(":");
      Type t = type();
      for (auto& n : names) out.push_back({n, t});
    } while (accept(","));
    return out;
  }

 private:
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

[[noreturn]] inline void fail_at(ErrorKind k, const Raw& r, const std::string& msg) {
  throw Error(k, std::to_string(r.line) + ":" + std::to_string(r.col) + ": " + msg);
}

inline Term resolve_pointfree(const Spec& s, const Raw& r) {
  switch (r.kind) {
    case Raw::ident:
      if (!s.find_term(r.name)) fail_at(ErrorKind::unknown_symbol, r, "unknown term " + r.name);
      return Term::atom(r.name);
    case Raw::id: require_declared(s, r.a); return Term::id(r.a);
    case Raw::bang: require_declared(s, r.a); return Term::bang(r.a);
    case Raw::p1:
    case Raw::p2:
      require_declared(s, r.a);
      require_declared(s, r.b);
      return r.kind == Raw::p1 ? Term::proj1(r.a, r.b) : Term::proj2(r.a, r.b);
    case Raw::pair: return Term::pair(resolve_pointfree(s, r.args[0]), resolve_pointfree(s, r.args[1]));
    case Raw::comp: return Term::comp(resolve_pointfree(s, r.args[0]), resolve_pointfree(s, r.args[1]));
    case Raw::apply: fail_at(ErrorKind::unknown_variable, r, "application outside of a variable context");
  }
  fail_at(ErrorKind::parse, r, "bad expression");
}

inline bool has_apply(const Raw& r) {
  if (r.kind == Raw::apply) return true;
  for (const auto& a : r.args)
    if (has_apply(a)) return true;
  return false;
}

inline void var_occurrences(const Raw& r, const std::vector<VarDecl>& vars, std::vector<std::string>& out) {
  if (r.kind == Raw::ident) {
    for (const auto& v : vars)
      if (v.name == r.name) {
        if (std::find(out.begin(), out.end(), r.name) == out.end()) out.push_back(r.name);
        return;
      }
    return;
  }
  for (const auto& a : r.args) var_occurrences(a, vars, out);
}

inline std::size_t leaf_count(const Type& t) { return t.is_prod() ? leaf_count(t.left()) + leaf_count(t.right()) : 1; }

/// Variables in scope for a sugared equation: their product type and the
/// projection selecting each of them.
struct VarContext {
  Type product = Type::unit();
  std::map<std::string, Term> projections;
};

inline VarContext make_context(const std::vector<VarDecl>& ordered) {
  VarContext ctx;
  if (ordered.empty()) return ctx;
  // Left-nested product ((v1 * v2) * v3) ...
  std::vector<Type> prefix{ordered[0].type};
  for (std::size_t k = 1; k < ordered.size(); ++k) prefix.push_back(Type::prod(prefix.back(), ordered[k].type));
  ctx.product = prefix.back();
  std::size_t n = ordered.size();
  for (std::size_t k = 0; k < n; ++k) {
    // Walk down from the outermost product: p1 steps until variable k's level, then p2.
    Term acc;
    bool have = false;
    for (std::size_t level = n - 1; level >= 1; --level) {
      bool hit = level == k;
      Term step = hit ? Term::proj2(prefix[level - 1], ordered[level].type)
                      : Term::proj1(prefix[level - 1], ordered[level].type);
      acc = have ? Term::comp(step, acc) : step;
      have = true;
      if (hit) break;
    }
    ctx.projections[ordered[k].name] = have ? acc : Term::id(ordered[0].type);
  }
  return ctx;
}

inline Term constant_at(const Term& c, const Type& V) { return V.is_unit() ? c : Term::comp(c, Term::bang(V)); }

inline Term resolve_value(const Spec& s, const Raw& r, const VarContext& ctx);

inline Term tuple_by_shape(const Type& d, const std::vector<Term>& args, std::size_t& next) {
  if (d.is_prod()) {
    Term l = tuple_by_shape(d.left(), args, next);
    Term r = tuple_by_shape(d.right(), args, next);
    return Term::pair(l, r);
  }
  return args[next++];
}

inline Term resolve_apply(const Spec& s, const Raw& r, const VarContext& ctx) {
  const Raw& head_raw = r.args[0];
  if (head_raw.kind == Raw::ident && ctx.projections.count(head_raw.name))
    fail_at(ErrorKind::arity_mismatch, head_raw, "variable " + head_raw.name + " applied to arguments");
  Term head = resolve_pointfree(s, head_raw);
  Type dom = infer(s, head).dom;
  std::vector<Term> args;
  for (std::size_t k = 1; k < r.args.size(); ++k) args.push_back(resolve_value(s, r.args[k], ctx));
  if (args.empty()) {
    if (!dom.is_unit()) fail_at(ErrorKind::arity_mismatch, r, "missing arguments for " + to_string(head));
    return constant_at(head, ctx.product);
  }
  Term tuple;
  if (args.size() == 1) {
    tuple = args[0];
  } else if (args.size() == leaf_count(dom)) {
    std::size_t next = 0;
    tuple = tuple_by_shape(dom, args, next);
  } else if (args.size() == 2 && dom.is_prod()) {
    tuple = Term::pair(args[0], args[1]);
  } else {
    fail_at(ErrorKind::arity_mismatch, r,
            to_string(head) + " expects " + std::to_string(leaf_count(dom)) + " arguments, got " +
                std::to_string(args.size()));
  }
  return Term::comp(head, tuple);
}

inline Term resolve_value(const Spec& s, const Raw& r, const VarContext& ctx) {
  switch (r.kind) {
    case Raw::ident: {
      auto it = ctx.projections.find(r.name);
      if (it != ctx.projections.end()) return it->second;
      const TermDecl* d = s.find_term(r.name);
      if (!d) fail_at(ErrorKind::unknown_variable, r, "unknown variable " + r.name);
      if (!d->dom.is_unit()) fail_at(ErrorKind::arity_mismatch, r, r.name + " used without arguments");
      return constant_at(Term::atom(r.name), ctx.product);
    }
    case Raw::apply: return resolve_apply(s, r, ctx);
    case Raw::pair: return Term::pair(resolve_value(s, r.args[0], ctx), resolve_value(s, r.args[1], ctx));
    case Raw::comp: return Term::comp(resolve_pointfree(s, r.args[0]), resolve_value(s, r.args[1], ctx));
    default: fail_at(ErrorKind::arity_mismatch, r, "morphism used as a value");
  }
}

inline std::pair<Term, Term> desugar(const Spec& s, const Raw& lhs, const Raw& rhs, const std::vector<VarDecl>& vars,
                                     bool sugared) {
  if (!sugared) return {resolve_pointfree(s, lhs), resolve_pointfree(s, rhs)};
  for (const auto& v : vars) require_declared(s, v.type);
  std::vector<std::string> order;
  var_occurrences(lhs, vars, order);
  var_occurrences(rhs, vars, order);
  std::vector<VarDecl> ordered;
  for (const auto& n : order)
    for (const auto& v : vars)
      if (v.name == n) {
        ordered.push_back(v);
        break;
      }
  VarContext ctx = make_context(ordered);
  return {resolve_value(s, lhs, ctx), resolve_value(s, rhs, ctx)};
}

inline Equation parse_equation_body(Parser& p, const Spec& s, std::string name) {
  Raw lhs = p.expr();
  p.expect("==");
  Raw rhs = p.expr();
  auto vars = p.where_clause();
  bool sugared = !vars.empty() || has_apply(lhs) || has_apply(rhs);
  auto [l, r] = desugar(s, lhs, rhs, vars, sugared);
  return {std::move(name), l, r};
}

inline Spec parse_spec(Parser& p, const Document& doc) {
  p.expect("spec");
  Spec s;
  s.name = p.name();
  if (p.accept("extends")) {
    std::string base = p.name();
    const Spec* b = doc.find_spec(base);
    if (!b) p.fail("unknown spec " + base);
    std::string keep = s.name;
    s = *b;
    s.name = keep;
  }
  p.expect("{");
  while (!p.accept("}")) {
    if (p.accept("type")) {
      std::string t = p.name();
      if (s.has_type(t)) p.fail("duplicate type " + t);
      s.types.push_back(t);
    } else if (p.accept("param")) {
      if (p.accept("type")) {
        std::string t = p.name();
        if (s.has_type(t)) p.fail("duplicate type " + t);
        s.types.push_back(t);
        s.param_type = t;
      } else {
        p.expect("const");
        std::string c = p.name();
        p.expect(":");
        Type cod = p.type();
        require_declared(s, cod);
        if (s.find_term(c)) p.fail("duplicate term " + c);
        s.terms.push_back({c, Type::unit(), cod, false});
        s.param_const = c;
      }
    } else if (p.is("pure") || p.is("term")) {
      bool pure = p.accept("pure");
      p.expect("term");
      std::string f = p.name();
      p.expect(":");
      Type dom = p.type();
      p.expect("->");
      Type cod = p.type();
      require_declared(s, dom);
      require_declared(s, cod);
      if (s.find_term(f)) p.fail("duplicate term " + f);
      s.terms.push_back({f, dom, cod, pure});
    } else if (p.accept("eq")) {
      std::string n = p.name();
      p.expect(":");
      if (s.find_equation(n)) p.fail("duplicate equation " + n);
      s.equations.push_back(parse_equation_body(p, s, n));
    } else {
      p.fail("expected a declaration");
    }
    p.accept(";");
  }
  require_valid(s);
  return s;
}

inline Morphism parse_morphism(Parser& p, const Document& doc) {
  p.expect("morphism");
  Morphism m;
  m.name = p.name();
  p.expect(":");
  std::string src = p.name();
  p.expect("->");
  std::string dst = p.name();
  m.src = doc.spec(src);
  m.dst = doc.spec(dst);
  p.expect("{");
  while (!p.accept("}")) {
    if (p.accept("type")) {
      std::string x = p.name();
      p.expect("=>");
      Type t = p.type();
      require_declared(m.dst, t);
      m.type_map[x] = t;
    } else {
      p.expect("term");
      std::string f = p.name();
      p.expect("=>");
      m.term_map[f] = resolve_pointfree(m.dst, p.expr());
    }
    p.accept(";");
  }
  require_typed(m);
  return m;
}

inline NatTrans parse_nat(Parser& p, const Document& doc) {
  p.expect("nat");
  NatTrans n;
  n.name = p.name();
  p.expect(":");
  n.from = doc.morphism(p.name());
  p.expect("=>");
  n.to = doc.morphism(p.name());
  p.expect("{");
  while (!p.accept("}")) {
    std::string x = p.name();
    p.expect("=>");
    n.components[x] = resolve_pointfree(n.from.dst, p.expr());
    p.accept(";");
  }
  auto diags = check_typing(n);
  if (!diags.empty()) throw Error(ErrorKind::ill_typed, n.name + ": " + diags.front().location + ": " + diags.front().reason);
  return n;
}

}  // namespace detail

inline Document parse_document(std::string_view text) {
  detail::Parser p(text);
  Document doc;
  while (!p.at_end()) {
    if (p.is("spec")) {
      Spec s = detail::parse_spec(p, doc);
      if (doc.find_spec(s.name)) throw Error(ErrorKind::parse, "duplicate spec " + s.name);
      doc.specs.push_back(std::move(s));
    } else if (p.is("morphism")) {
      doc.morphisms.push_back(detail::parse_morphism(p, doc));
    } else if (p.is("nat")) {
      doc.nats.push_back(detail::parse_nat(p, doc));
    } else {
      p.fail("expected 'spec', 'morphism' or 'nat'");
    }
  }
  return doc;
}

inline Type parse_type(const Spec& s, std::string_view text) {
  detail::Parser p(text);
  Type t = p.type();
  if (!p.at_end()) p.fail("trailing input");
  require_declared(s, t);
  return t;
}

/// Parses a point-free term, or a closed sugared term such as `dif(unt)`.
inline Term parse_term(const Spec& s, std::string_view text) {
  detail::Parser p(text);
  detail::Raw r = p.expr();
  if (!p.at_end()) p.fail("trailing input");
  if (detail::has_apply(r)) return detail::resolve_value(s, r, detail::VarContext{});
  return detail::resolve_pointfree(s, r);
}

/// Parses `lhs == rhs [where ...]` with the same conventions as equations.
inline std::pair<Term, Term> parse_goal(const Spec& s, std::string_view text) {
  detail::Parser p(text);
  Equation q = detail::parse_equation_body(p, s, "goal");
  if (!p.at_end()) p.fail("trailing input");
  return {q.lhs, q.rhs};
}

// ---------------------------------------------------------------------------
// canonical printer

inline std::string format(const Spec& s) {
  std::ostringstream os;
  os << "spec " << s.name << " {\n";
  for (const auto& t : s.types) os << "  " << (s.param_type == t ? "param type " : "type ") << t << "\n";
  for (const auto& d : s.terms) {
    if (s.param_const == d.name && d.dom.is_unit()) {
      os << "  param const " << d.name << " : " << d.cod << "\n";
      continue;
    }
    os << "  " << (d.pure ? "pure term " : "term ") << d.name << " : " << d.dom << " -> " << d.cod << "\n";
  }
  for (const auto& q : s.equations) os << "  eq " << q.name << " : " << q.lhs << " == " << q.rhs << "\n";
  os << "}\n";
  return os.str();
}

inline std::string format(const Morphism& m) {
  std::ostringstream os;
  os << "morphism " << m.name << " : " << m.src.name << " -> " << m.dst.name << " {\n";
  for (const auto& t : m.src.types)
    if (auto it = m.type_map.find(t); it != m.type_map.end()) os << "  type " << t << " => " << it->second << ";\n";
  for (const auto& d : m.src.terms)
    if (auto it = m.term_map.find(d.name); it != m.term_map.end())
      os << "  term " << d.name << " => " << it->second << ";\n";
  os << "}\n";
  return os.str();
}

inline std::string format(const NatTrans& n) {
  std::ostringstream os;
  os << "nat " << n.name << " : " << n.from.name << " => " << n.to.name << " {\n";
  for (const auto& t : n.from.src.types)
    if (auto it = n.components.find(t); it != n.components.end()) os << "  " << t << " => " << it->second << ";\n";
  os << "}\n";
  return os.str();
}

inline std::string format(const Document& d) {
  std::string out;
  auto sep = [&] {
    if (!out.empty()) out += "\n";
  };
  for (const auto& s : d.specs) sep(), out += format(s);
  for (const auto& m : d.morphisms) sep(), out += format(m);
  for (const auto& n : d.nats) sep(), out += format(n);
  return out;
}

}  // namespace sketchforge

#endif  // SKETCHFORGE_PARSER_HPP
