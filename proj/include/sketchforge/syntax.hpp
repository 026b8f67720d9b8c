#ifndef SKETCHFORGE_SYNTAX_HPP
#define SKETCHFORGE_SYNTAX_HPP

// Type and term expressions of a finitely presented theory with chosen
// products. Both are immutable trees with shared structure, so copies are
// cheap and values can be handed across threads freely.

#include <algorithm>
#include <cassert>
#include <compare>
#include <memory>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace sketchforge {

class Type {
 public:
  enum class Kind { unit, base, prod };

  Type() : Type(unit()) {}

  static Type unit() {
    static const Type u{std::make_shared<const Node>(Node{Kind::unit, {}, nullptr, nullptr})};
    return u;
  }
  static Type base(std::string name) {
    return Type{std::make_shared<const Node>(Node{Kind::base, std::move(name), nullptr, nullptr})};
  }
  static Type prod(Type left, Type right) {
    return Type{std::make_shared<const Node>(
        Node{Kind::prod, {}, std::move(left.node_), std::move(right.node_)})};
  }

  Kind kind() const { return node_->kind; }
  bool is_unit() const { return kind() == Kind::unit; }
  bool is_base() const { return kind() == Kind::base; }
  bool is_prod() const { return kind() == Kind::prod; }

  const std::string& name() const { return node_->name; }
  Type left() const { return Type{node_->left}; }
  Type right() const { return Type{node_->right}; }

  friend bool operator==(const Type& a, const Type& b) { return compare(a.node_.get(), b.node_.get()) == 0; }
  friend std::strong_ordering operator<=>(const Type& a, const Type& b) {
    return compare(a.node_.get(), b.node_.get()) <=> 0;
  }

 private:
  struct Node {
    Kind kind;
    std::string name;
    std::shared_ptr<const Node> left;
    std::shared_ptr<const Node> right;
  };

  explicit Type(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  static int compare(const Node* a, const Node* b) {
    if (a == b) return 0;
    if (a->kind != b->kind) return a->kind < b->kind ? -1 : 1;
    switch (a->kind) {
      case Kind::unit: return 0;
      case Kind::base: return a->name.compare(b->name) < 0 ? -1 : (a->name == b->name ? 0 : 1);
      case Kind::prod: {
        int c = compare(a->left.get(), b->left.get());
        return c != 0 ? c : compare(a->right.get(), b->right.get());
      }
    }
    return 0;
  }

  std::shared_ptr<const Node> node_;
};

/// True when the type is built from the unit type only; such a type has
/// exactly one inhabitant in every model.
inline bool is_unit_like(const Type& t) {
  switch (t.kind()) {
    case Type::Kind::unit: return true;
    case Type::Kind::base: return false;
    case Type::Kind::prod: return is_unit_like(t.left()) && is_unit_like(t.right());
  }
  return false;
}

inline void collect_base_names(const Type& t, std::vector<std::string>& out) {
  switch (t.kind()) {
    case Type::Kind::unit: return;
    case Type::Kind::base:
      for (const auto& n : out)
        if (n == t.name()) return;
      out.push_back(t.name());
      return;
    case Type::Kind::prod:
      collect_base_names(t.left(), out);
      collect_base_names(t.right(), out);
      return;
  }
}

class Term {
 public:
  enum class Kind { atom, id, comp, pair, proj1, proj2, bang };

  /// `id[1]`; only a placeholder for containers and late initialization.
  Term() : Term(id(Type::unit())) {}

  static Term atom(std::string name) { return make(Kind::atom, std::move(name), {}, {}, nullptr, nullptr); }
  static Term id(Type at) { return make(Kind::id, {}, std::move(at), {}, nullptr, nullptr); }
  /// `after . before`: applies `before` first.
  static Term comp(Term after, Term before) {
    return make(Kind::comp, {}, {}, {}, std::move(after.node_), std::move(before.node_));
  }
  static Term pair(Term fst, Term snd) {
    return make(Kind::pair, {}, {}, {}, std::move(fst.node_), std::move(snd.node_));
  }
  static Term proj1(Type l, Type r) { return make(Kind::proj1, {}, std::move(l), std::move(r), nullptr, nullptr); }
  static Term proj2(Type l, Type r) { return make(Kind::proj2, {}, std::move(l), std::move(r), nullptr, nullptr); }
  static Term bang(Type from) { return make(Kind::bang, {}, std::move(from), {}, nullptr, nullptr); }

  Kind kind() const { return node_->kind; }
  bool is(Kind k) const { return kind() == k; }

  const std::string& name() const { return node_->name; }
  /// Type argument: the object of `id`, the source of `bang`, the left factor of a projection.
  const Type& type_a() const { return node_->a; }
  /// Right factor of a projection.
  const Type& type_b() const { return node_->b; }
  /// Left child: `after` of a composite, first component of a pair.
  Term left() const { return Term{node_->l}; }
  /// Right child: `before` of a composite, second component of a pair.
  Term right() const { return Term{node_->r}; }

  friend bool operator==(const Term& a, const Term& b) { return compare(a.node_.get(), b.node_.get()) == 0; }
  friend std::strong_ordering operator<=>(const Term& a, const Term& b) {
    return compare(a.node_.get(), b.node_.get()) <=> 0;
  }

 private:
  struct Node {
    Kind kind;
    std::string name;
    Type a;
    Type b;
    std::shared_ptr<const Node> l;
    std::shared_ptr<const Node> r;
  };

  explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  using Ptr = std::shared_ptr<const Node>;

  static Term make(Kind k, std::string name, Type a, Type b, Ptr l, Ptr r) {
    return Term{std::make_shared<const Node>(
        Node{k, std::move(name), std::move(a), std::move(b), std::move(l), std::move(r)})};
  }

  static int compare(const Node* a, const Node* b) {
    if (a == b) return 0;
    if (a->kind != b->kind) return a->kind < b->kind ? -1 : 1;
    if (int c = a->name.compare(b->name); c != 0) return c < 0 ? -1 : 1;
    if (auto c = a->a <=> b->a; c != 0) return c < 0 ? -1 : 1;
    if (auto c = a->b <=> b->b; c != 0) return c < 0 ? -1 : 1;
    if (a->l || b->l) {
      if (!a->l) return -1;
      if (!b->l) return 1;
      if (int c = compare(a->l.get(), b->l.get()); c != 0) return c;
    }
    if (a->r || b->r) {
      if (!a->r) return -1;
      if (!b->r) return 1;
      if (int c = compare(a->r.get(), b->r.get()); c != 0) return c;
    }
    return 0;
  }

  std::shared_ptr<const Node> node_;
};

// ---------------------------------------------------------------------------
// printing (canonical DSL form)

inline void print(std::ostream& os, const Type& t) {
  switch (t.kind()) {
    case Type::Kind::unit: os << '1'; return;
    case Type::Kind::base: os << t.name(); return;
    case Type::Kind::prod:
      if (t.left().is_prod()) {
        os << '(';
        print(os, t.left());
        os << ')';
      } else {
        print(os, t.left());
      }
      os << " * ";
      print(os, t.right());
      return;
  }
}

inline std::string to_string(const Type& t) {
  std::ostringstream os;
  print(os, t);
  return os.str();
}

inline void print(std::ostream& os, const Term& e) {
  switch (e.kind()) {
    case Term::Kind::atom: os << e.name(); return;
    case Term::Kind::id: os << "id["; print(os, e.type_a()); os << ']'; return;
    case Term::Kind::bang: os << "bang["; print(os, e.type_a()); os << ']'; return;
    case Term::Kind::proj1:
    case Term::Kind::proj2:
      os << (e.is(Term::Kind::proj1) ? "p1[" : "p2[");
      print(os, e.type_a());
      os << ", ";
      print(os, e.type_b());
      os << ']';
      return;
    case Term::Kind::pair:
      os << "pair(";
      print(os, e.left());
      os << ", ";
      print(os, e.right());
      os << ')';
      return;
    case Term::Kind::comp:
      if (e.left().is(Term::Kind::comp)) {
        os << '(';
        print(os, e.left());
        os << ')';
      } else {
        print(os, e.left());
      }
      os << " . ";
      print(os, e.right());
      return;
  }
}

inline std::string to_string(const Term& e) {
  std::ostringstream os;
  print(os, e);
  return os.str();
}

inline std::ostream& operator<<(std::ostream& os, const Type& t) { print(os, t); return os; }
inline std::ostream& operator<<(std::ostream& os, const Term& e) { print(os, e); return os; }

// ---------------------------------------------------------------------------
// structural helpers

/// Splits right-nested composites into factors, outermost first.
inline std::vector<Term> flatten(const Term& e) {
  std::vector<Term> out;
  Term cur = e;
  while (cur.is(Term::Kind::comp)) {
    std::vector<Term> left = flatten(cur.left());
    out.insert(out.end(), left.begin(), left.end());
    cur = cur.right();
  }
  out.push_back(cur);
  return out;
}

/// Rebuilds a right-nested composite from a non-empty factor list.
inline Term chain(const std::vector<Term>& factors, std::size_t from = 0, std::size_t to = std::size_t(-1)) {
  if (to > factors.size()) to = factors.size();
  assert(from < to);
  Term acc = factors[to - 1];
  for (std::size_t i = to - 1; i > from; --i) acc = Term::comp(factors[i - 1], acc);
  return acc;
}

inline std::size_t node_count(const Term& e) {
  switch (e.kind()) {
    case Term::Kind::comp:
    case Term::Kind::pair: return 1 + node_count(e.left()) + node_count(e.right());
    default: return 1;
  }
}

/// Nesting depth of tuple structure; sequences of composites do not add depth.
inline std::size_t pair_depth(const Term& e) {
  switch (e.kind()) {
    case Term::Kind::pair: return 1 + std::max(pair_depth(e.left()), pair_depth(e.right()));
    case Term::Kind::comp: return std::max(pair_depth(e.left()), pair_depth(e.right()));
    default: return 1;
  }
}

inline void collect_atoms(const Term& e, std::vector<std::string>& out) {
  switch (e.kind()) {
    case Term::Kind::atom:
      for (const auto& n : out)
        if (n == e.name()) return;
      out.push_back(e.name());
      return;
    case Term::Kind::comp:
    case Term::Kind::pair:
      collect_atoms(e.left(), out);
      collect_atoms(e.right(), out);
      return;
    default: return;
  }
}

}  // namespace sketchforge

#endif  // SKETCHFORGE_SYNTAX_HPP
