#ifndef SKETCHFORGE_MODELS_HPP
#define SKETCHFORGE_MODELS_HPP

// Finite set-valued models. Values of a type are integers in [0, size):
// the unit type has the single value 0, a base type indexes its carrier, and
// a product value is l * size(R) + r.

#include <algorithm>
#include <functional>
#include <limits>
#include <map>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "error.hpp"
#include "morphism.hpp"
#include "spec.hpp"
#include "syntax.hpp"

namespace sketchforge {

struct Table {
  Type dom;
  Type cod;
  std::vector<int> values;

  friend bool operator==(const Table&, const Table&) = default;
};

struct FinModel {
  std::map<std::string, std::vector<std::string>> carriers;
  std::map<std::string, Table> tables;

  friend bool operator==(const FinModel&, const FinModel&) = default;
};

inline std::size_t carrier_size(const FinModel& m, const Type& t) {
  switch (t.kind()) {
    case Type::Kind::unit: return 1;
    case Type::Kind::base: {
      auto it = m.carriers.find(t.name());
      if (it == m.carriers.end()) throw Error(ErrorKind::invalid_model, "no carrier for " + t.name());
      return it->second.size();
    }
    case Type::Kind::prod: return carrier_size(m, t.left()) * carrier_size(m, t.right());
  }
  return 0;
}

inline std::string label(const FinModel& m, const Type& t, std::size_t v) {
  switch (t.kind()) {
    case Type::Kind::unit: return "*";
    case Type::Kind::base: return m.carriers.at(t.name()).at(v);
    case Type::Kind::prod: {
      std::size_t r = carrier_size(m, t.right());
      return "(" + label(m, t.left(), v / r) + "," + label(m, t.right(), v % r) + ")";
    }
  }
  return "?";
}

inline std::vector<std::string> labels(const FinModel& m, const Type& t) {
  std::vector<std::string> out;
  std::size_t n = carrier_size(m, t);
  for (std::size_t v = 0; v < n; ++v) out.push_back(label(m, t, v));
  return out;
}

inline int value_of(const FinModel& m, const Type& t, const std::string& lbl) {
  std::size_t n = carrier_size(m, t);
  for (std::size_t v = 0; v < n; ++v)
    if (label(m, t, v) == lbl) return static_cast<int>(v);
  throw Error(ErrorKind::value_out_of_carrier, "'" + lbl + "' is not in " + to_string(t));
}

/// A term compiled against the carrier sizes and tables of one model. The
/// tables are referenced, not copied: refilling them in place is allowed.
class CompiledTerm {
 public:
  CompiledTerm() = default;
  CompiledTerm(const FinModel& m, const Term& e) { root_ = compile(m, e); }

  int operator()(int x) const { return run(root_, x); }
  std::size_t dom_size() const { return dom_size_; }

 private:
  struct Node {
    Term::Kind kind;
    const std::vector<int>* table = nullptr;
    int rsize = 1;  // size of the right factor for projections and pairs
    int l = -1, r = -1;
  };

  std::pair<Type, Type> sig(const FinModel& m, const Term& e) const {
    switch (e.kind()) {
      case Term::Kind::atom: {
        auto it = m.tables.find(e.name());
        if (it == m.tables.end()) throw Error(ErrorKind::invalid_model, "no table for " + e.name());
        return {it->second.dom, it->second.cod};
      }
      case Term::Kind::id: return {e.type_a(), e.type_a()};
      case Term::Kind::bang: return {e.type_a(), Type::unit()};
      case Term::Kind::proj1: return {Type::prod(e.type_a(), e.type_b()), e.type_a()};
      case Term::Kind::proj2: return {Type::prod(e.type_a(), e.type_b()), e.type_b()};
      case Term::Kind::comp: return {sig(m, e.right()).first, sig(m, e.left()).second};
      case Term::Kind::pair: {
        auto a = sig(m, e.left()), b = sig(m, e.right());
        return {a.first, Type::prod(a.second, b.second)};
      }
    }
    return {};
  }

  int compile(const FinModel& m, const Term& e) {
    if (nodes_.empty()) dom_size_ = carrier_size(m, sig(m, e).first);
    Node n{e.kind()};
    switch (e.kind()) {
      case Term::Kind::atom: n.table = &m.tables.at(e.name()).values; break;
      case Term::Kind::proj1:
      case Term::Kind::proj2: n.rsize = static_cast<int>(carrier_size(m, e.type_b())); break;
      case Term::Kind::pair:
        n.rsize = static_cast<int>(carrier_size(m, sig(m, e.right()).second));
        [[fallthrough]];
      case Term::Kind::comp: {
        nodes_.push_back(n);
        int self = static_cast<int>(nodes_.size()) - 1;
        int l = compile(m, e.left());
        int r = compile(m, e.right());
        nodes_[self].l = l;
        nodes_[self].r = r;
        return self;
      }
      default: break;
    }
    nodes_.push_back(n);
    return static_cast<int>(nodes_.size()) - 1;
  }

  int run(int i, int x) const {
    const Node& n = nodes_[i];
    switch (n.kind) {
      case Term::Kind::atom: return (*n.table)[x];
      case Term::Kind::id: return x;
      case Term::Kind::bang: return 0;
      case Term::Kind::proj1: return x / n.rsize;
      case Term::Kind::proj2: return x % n.rsize;
      case Term::Kind::comp: return run(n.l, run(n.r, x));
      case Term::Kind::pair: return run(n.l, x) * n.rsize + run(n.r, x);
    }
    return 0;
  }

  std::vector<Node> nodes_;
  int root_ = -1;
  std::size_t dom_size_ = 0;
};

inline int eval(const FinModel& m, const Term& e, int arg) {
  CompiledTerm c(m, e);
  if (arg < 0 || static_cast<std::size_t>(arg) >= c.dom_size())
    throw Error(ErrorKind::value_out_of_carrier, std::to_string(arg) + " for " + to_string(e));
  return c(arg);
}

/// Label-level evaluation; `dom`/`cod` must be the term's type in the model's spec.
inline std::string eval(const Spec& s, const FinModel& m, const Term& e, const std::string& arg) {
  Signature sig = infer(s, e);
  return label(m, sig.cod, eval(m, e, value_of(m, sig.dom, arg)));
}

struct Violation {
  std::string what;     // equation name, or term/type name for shape problems
  std::string witness;  // argument label
  std::string lhs;
  std::string rhs;

  friend bool operator==(const Violation&, const Violation&) = default;
};

/// Shape problems: missing carriers/tables, wrong sizes, values out of range.
inline std::vector<Violation> check_shape(const Spec& s, const FinModel& m) {
  std::vector<Violation> out;
  for (const auto& t : s.types)
    if (!m.carriers.count(t)) out.push_back({t, "", "missing carrier", ""});
  if (!out.empty()) return out;
  for (const auto& d : s.terms) {
    auto it = m.tables.find(d.name);
    if (it == m.tables.end()) {
      out.push_back({d.name, "", "missing table", ""});
      continue;
    }
    const Table& t = it->second;
    if (!(t.dom == d.dom) || !(t.cod == d.cod)) {
      out.push_back({d.name, "", "table has the wrong type", ""});
      continue;
    }
    std::size_t n = carrier_size(m, d.dom), c = carrier_size(m, d.cod);
    if (t.values.size() != n) {
      out.push_back({d.name, "", "table has " + std::to_string(t.values.size()) + " entries", std::to_string(n)});
      continue;
    }
    for (std::size_t x = 0; x < n; ++x)
      if (t.values[x] < 0 || static_cast<std::size_t>(t.values[x]) >= c) {
        out.push_back({d.name, label(m, d.dom, x), "value out of carrier", ""});
        break;
      }
  }
  return out;
}

inline std::vector<Violation> check_model(const Spec& s, const FinModel& m) {
  std::vector<Violation> out = check_shape(s, m);
  if (!out.empty()) return out;
  for (const auto& q : s.equations) {
    Signature sig = infer(s, q.lhs);
    CompiledTerm l(m, q.lhs), r(m, q.rhs);
    std::size_t n = carrier_size(m, sig.dom);
    for (std::size_t x = 0; x < n; ++x) {
      int a = l(static_cast<int>(x)), b = r(static_cast<int>(x));
      if (a != b) {
        out.push_back({q.name, label(m, sig.dom, x), label(m, sig.cod, a), label(m, sig.cod, b)});
        break;
      }
    }
  }
  return out;
}

inline bool satisfies(const Spec& s, const FinModel& m) { return check_model(s, m).empty(); }

/// Pointwise equality of two parallel terms in one model.
inline bool agree(const FinModel& m, const Term& a, const Term& b) {
  CompiledTerm ca(m, a), cb(m, b);
  for (std::size_t x = 0; x < ca.dom_size(); ++x)
    if (ca(static_cast<int>(x)) != cb(static_cast<int>(x))) return false;
  return true;
}

inline std::vector<std::string> generated_labels(std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(std::to_string(i));
  return out;
}

// ---------------------------------------------------------------------------
// enumeration

/// Enumerates all models of `s` whose carriers and tables extend `fixed`.
/// Types without a fixed carrier get generated carriers of the size given in
/// `sizes`. Tables not fixed range over all functions, in lexicographic order
/// of their value sequences, terms in declaration order. The visitor returns
/// false to stop early. Returns the number of models visited.
class ModelEnumerator {
 public:
  ModelEnumerator(const Spec& s, const FinModel& fixed, const std::map<std::string, std::size_t>& sizes) : spec_(s) {
    model_.carriers = fixed.carriers;
    for (const auto& t : s.types) {
      if (model_.carriers.count(t)) continue;
      auto it = sizes.find(t);
      if (it == sizes.end()) throw Error(ErrorKind::usage, "no size given for type " + t);
      model_.carriers[t] = generated_labels(it->second);
    }
    for (const auto& d : s.terms) {
      auto it = fixed.tables.find(d.name);
      if (it != fixed.tables.end()) {
        model_.tables[d.name] = it->second;
        continue;
      }
      model_.tables[d.name] = Table{d.dom, d.cod, std::vector<int>(carrier_size(model_, d.dom), 0)};
      free_.push_back(d.name);
    }
    // Free tables start at zero, which may lie outside an empty carrier.
    for (const auto& v : check_shape(s, model_))
      if (std::find(free_.begin(), free_.end(), v.what) == free_.end())
        throw Error(ErrorKind::invalid_model, v.what + ": " + v.lhs);
    // Schedule each equation right after the last free term it mentions.
    checks_.assign(free_.size() + 1, {});
    for (const auto& q : s.equations) {
      std::vector<std::string> atoms;
      collect_atoms(q.lhs, atoms);
      collect_atoms(q.rhs, atoms);
      std::size_t at = 0;
      for (const auto& a : atoms) {
        auto pos = std::find(free_.begin(), free_.end(), a);
        if (pos != free_.end()) at = std::max<std::size_t>(at, pos - free_.begin() + 1);
      }
      Signature sig = infer(s, q.lhs);
      checks_[at].push_back({CompiledTerm(model_, q.lhs), CompiledTerm(model_, q.rhs), carrier_size(model_, sig.dom)});
    }
  }

  std::size_t run(const std::function<bool(const FinModel&)>& visit, std::size_t first_value_lo = 0,
                  std::size_t first_value_hi = std::numeric_limits<std::size_t>::max()) {
    visit_ = &visit;
    count_ = 0;
    stop_ = false;
    lo_ = first_value_lo;
    hi_ = first_value_hi;
    if (holds(0)) dfs(0);
    return count_;
  }

  const std::vector<std::string>& free_terms() const { return free_; }
  const FinModel& current() const { return model_; }

 private:
  struct Check {
    CompiledTerm lhs, rhs;
    std::size_t n;
  };

  bool holds(std::size_t level) const {
    for (const auto& c : checks_[level])
      for (std::size_t x = 0; x < c.n; ++x)
        if (c.lhs(static_cast<int>(x)) != c.rhs(static_cast<int>(x))) return false;
    return true;
  }

  void dfs(std::size_t k) {
    if (stop_) return;
    if (k == free_.size()) {
      ++count_;
      if (!(*visit_)(model_)) stop_ = true;
      return;
    }
    Table& t = model_.tables[free_[k]];
    std::size_t n = t.values.size();
    int c = static_cast<int>(carrier_size(model_, t.cod));
    if (n > 0 && c == 0) return;
    std::fill(t.values.begin(), t.values.end(), 0);
    if (k == 0 && n > 0) {
      // Optional split on the first entry of the first free table, for parallel runs.
      if (lo_ >= static_cast<std::size_t>(c)) return;
      t.values[0] = static_cast<int>(lo_);
    }
    while (true) {
      if (holds(k + 1)) dfs(k + 1);
      if (stop_ || n == 0) return;
      // Odometer: the last entry moves fastest; a carry out of entry 0 ends the table.
      std::size_t i = n;
      bool wrapped = true;
      while (i > 0) {
        --i;
        if (++t.values[i] < c) {
          wrapped = false;
          break;
        }
        t.values[i] = 0;
      }
      if (wrapped) return;
      if (k == 0 && static_cast<std::size_t>(t.values[0]) >= hi_) return;
    }
  }

  const Spec& spec_;
  FinModel model_;
  std::vector<std::string> free_;
  std::vector<std::vector<Check>> checks_;
  const std::function<bool(const FinModel&)>* visit_ = nullptr;
  std::size_t count_ = 0;
  bool stop_ = false;
  std::size_t lo_ = 0, hi_ = 0;
};

inline std::size_t enumerate_models(const Spec& s, const FinModel& fixed, const std::map<std::string, std::size_t>& sizes,
                                    const std::function<bool(const FinModel&)>& visit) {
  ModelEnumerator e(s, fixed, sizes);
  return e.run(visit);
}

inline std::vector<FinModel> all_models(const Spec& s, const FinModel& fixed,
                                        const std::map<std::string, std::size_t>& sizes, unsigned jobs = 1) {
  std::vector<FinModel> out;
  ModelEnumerator probe(s, fixed, sizes);
  const auto& free = probe.free_terms();
  std::size_t branches = 0;
  if (!free.empty()) {
    const Table& t = probe.current().tables.at(free[0]);
    if (!t.values.empty()) branches = carrier_size(probe.current(), t.cod);
  }
  if (jobs <= 1 || branches < 2) {
    probe.run([&](const FinModel& m) {
      out.push_back(m);
      return true;
    });
    return out;
  }
  // Split on the first entry of the first free table; concatenating the
  // per-branch results keeps the sequential order.
  std::vector<std::vector<FinModel>> parts(branches);
  std::vector<std::thread> pool;
  std::size_t next = 0;
  std::mutex mu;
  for (unsigned w = 0; w < jobs; ++w)
    pool.emplace_back([&] {
      while (true) {
        std::size_t b;
        {
          std::lock_guard<std::mutex> lock(mu);
          if (next >= branches) return;
          b = next++;
        }
        ModelEnumerator e(s, fixed, sizes);
        e.run(
            [&](const FinModel& m) {
              parts[b].push_back(m);
              return true;
            },
            b, b + 1);
      }
    });
  for (auto& t : pool) t.join();
  for (auto& p : parts) out.insert(out.end(), p.begin(), p.end());
  return out;
}

inline std::size_t count_models(const Spec& s, const FinModel& fixed, const std::map<std::string, std::size_t>& sizes) {
  return enumerate_models(s, fixed, sizes, [](const FinModel&) { return true; });
}

/// A fixed part holding only carriers.
inline FinModel carriers_only(const std::map<std::string, std::size_t>& sizes) {
  FinModel m;
  for (const auto& [t, n] : sizes) m.carriers[t] = generated_labels(n);
  return m;
}

// ---------------------------------------------------------------------------
// restriction along morphisms

/// Model of `phi.src` obtained from a model of `phi.dst`.
inline FinModel restrict(const FinModel& m, const Morphism& phi) {
  FinModel out;
  for (const auto& t : phi.src.types) out.carriers[t] = labels(m, phi.type_map.at(t));
  for (const auto& d : phi.src.terms) {
    Term img = phi.term_map.at(d.name);
    CompiledTerm c(m, img);
    Table t{d.dom, d.cod, {}};
    for (std::size_t x = 0; x < c.dom_size(); ++x) t.values.push_back(c(static_cast<int>(x)));
    out.tables[d.name] = std::move(t);
  }
  return out;
}

/// Carriers and tables of `m` restricted to the symbols of `sub`.
inline FinModel reduct(const FinModel& m, const Spec& sub) {
  FinModel out;
  for (const auto& t : sub.types) out.carriers[t] = m.carriers.at(t);
  for (const auto& d : sub.terms) out.tables[d.name] = m.tables.at(d.name);
  return out;
}

}  // namespace sketchforge

#endif  // SKETCHFORGE_MODELS_HPP
