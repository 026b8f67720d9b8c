#ifndef SKETCHFORGE_DEDUCTION_HPP
#define SKETCHFORGE_DEDUCTION_HPP

// Entailment between parallel terms of a presentation.
//
// Both sides are normalized, then a bounded bidirectional search rewrites
// them with the equations of the spec, used in both directions, at every
// position of the normal form. A rewrite instantiates an equation l == r over
// the variable product D with a substitution s : W -> D, so it replaces an
// occurrence of nf(l . s) with nf(r . s): this covers the substitution and
// replacement rules, and pairing congruence via positions inside pairs.
// When the search gives up, small finite models are enumerated looking for a
// countermodel.

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <deque>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"
#include "models.hpp"
#include "morphism.hpp"
#include "normalize.hpp"
#include "spec.hpp"
#include "syntax.hpp"

namespace sketchforge {

struct Budget {
  std::size_t max_depth = 6;       // bound on pair nesting of explored terms (beyond the goal's own)
  std::size_t max_iters = 8;       // rounds of the bidirectional search
  std::size_t max_model_size = 3;  // largest carrier tried by the countermodel search
  std::size_t max_terms = 20000;
  std::size_t max_models = 500000;
  bool countermodels = true;
};

/// Reads "depth,iters,model" (any prefix) from SKETCHFORGE_BUDGET.
inline Budget budget_from_env(Budget b = {}) {
  const char* env = std::getenv("SKETCHFORGE_BUDGET");
  if (!env) return b;
  std::string s(env);
  std::size_t* fields[] = {&b.max_depth, &b.max_iters, &b.max_model_size};
  std::size_t start = 0;
  for (std::size_t* f : fields) {
    if (start > s.size()) break;
    std::size_t end = s.find(',', start);
    std::string part = s.substr(start, end == std::string::npos ? std::string::npos : end - start);
    if (!part.empty()) *f = static_cast<std::size_t>(std::stoul(part));
    if (end == std::string::npos) break;
    start = end + 1;
  }
  return b;
}

struct ProofStep {
  Term from;
  Term to;
  std::string equation;
  bool reversed = false;  // used right-to-left
};

enum class Status { proven, refuted, unknown };

inline const char* to_string(Status s) {
  switch (s) {
    case Status::proven: return "proven";
    case Status::refuted: return "refuted";
    case Status::unknown: return "unknown";
  }
  return "?";
}

struct Verdict {
  Status status = Status::unknown;
  std::vector<ProofStep> trace;         // proven
  std::optional<FinModel> countermodel;  // refuted
  std::string reason;                    // unknown
  std::size_t explored = 0;
};

/// Union-find over the terms met during one query; classes only merge.
class CongruenceState {
 public:
  struct Edge {
    int parent = -1;
    std::string equation;
    bool reversed = false;
  };

  int add(const Term& t) {
    auto [it, fresh] = index_.try_emplace(t, static_cast<int>(universe_.size()));
    if (fresh) {
      universe_.push_back(t);
      uf_.push_back(it->second);
      edges_.push_back({});
    }
    return it->second;
  }

  std::optional<int> lookup(const Term& t) const {
    auto it = index_.find(t);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  int find(int x) {
    while (uf_[x] != x) {
      uf_[x] = uf_[uf_[x]];
      x = uf_[x];
    }
    return x;
  }

  void merge(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) uf_[std::max(a, b)] = std::min(a, b);
  }

  bool same(int a, int b) { return find(a) == find(b); }
  std::size_t size() const { return universe_.size(); }
  const Term& term(int i) const { return universe_[i]; }
  const std::vector<Term>& universe() const { return universe_; }
  Edge& edge(int i) { return edges_[i]; }
  const Edge& edge(int i) const { return edges_[i]; }

  std::size_t class_count() {
    std::set<int> roots;
    for (std::size_t i = 0; i < uf_.size(); ++i) roots.insert(find(static_cast<int>(i)));
    return roots.size();
  }

 private:
  std::vector<Term> universe_;
  std::map<Term, int> index_;
  std::vector<int> uf_;
  std::vector<Edge> edges_;
};

class Prover {
 public:
  explicit Prover(const Spec& s, Budget b = {}) : spec_(s), budget_(b), nz_(s) {
    for (const auto& q : s.equations) {
      Signature sig = infer(s, q.lhs);
      Term l = nz_.norm(q.lhs), r = nz_.norm(q.rhs);
      if (l == r) continue;
      rules_.push_back({q.name, false, l, r, sig.dom});
      rules_.push_back({q.name, true, r, l, sig.dom});
    }
    for (auto& r : rules_) r.variable_only = var_path(r.pattern).has_value();
  }

  const Normalizer& normalizer() const { return nz_; }
  const Budget& budget() const { return budget_; }

  Verdict entails(const Term& lhs, const Term& rhs) {
    Signature a = infer(spec_, lhs), b = infer(spec_, rhs);
    if (!(a == b))
      throw Error(ErrorKind::non_parallel_goal, to_string(lhs) + " : " + to_string(a.dom) + " -> " + to_string(a.cod) +
                                                    " vs " + to_string(rhs) + " : " + to_string(b.dom) + " -> " +
                                                    to_string(b.cod));
    Verdict v = search(nz_.norm(lhs), nz_.norm(rhs));
    if (v.status == Status::proven || !budget_.countermodels) return v;
    if (auto m = countermodel(lhs, rhs)) {
      v.status = Status::refuted;
      v.countermodel = std::move(m);
    }
    return v;
  }

  /// A model of at most budget().max_model_size per carrier separating the
  /// two terms, without running the rewrite search.
  std::optional<FinModel> separating_model(const Term& lhs, const Term& rhs) const { return countermodel(lhs, rhs); }

  /// All one-step rewrites of a normal term (exposed for tests).
  template <typename Fn>
  void rewrites(const Term& t, std::size_t pool_dom_limit, Fn&& emit) {
    (void)pool_dom_limit;
    std::vector<Position> pos;
    positions(t, {}, pos);
    for (const auto& p : pos) {
      for (const auto& rule : rules_) {
        if (p.empty && !rule.variable_only) continue;
        apply_rule(rule, p, emit);
      }
    }
  }

  void set_pool(const std::vector<Term>& seeds) {
    pool_.clear();
    for (const auto& s : seeds) collect_pool(s);
  }

 private:
  using Path = std::vector<int>;
  using Bindings = std::map<Path, Term>;

  struct Rule {
    std::string name;
    bool reversed;
    Term pattern;
    Term replacement;
    Type D;
    bool variable_only = false;
  };

  struct Frame {
    enum Kind { prefix, pair_left, pair_right } kind;
    std::vector<Term> factors;  // prefix
    Term other;                 // the untouched pair component
  };

  struct Position {
    Term sub;
    std::vector<Frame> frames;
    bool empty = false;  // the identity between a sequence and its argument
  };

  // ---- positions -----------------------------------------------------------

  void positions(const Term& t, const std::vector<Frame>& frames, std::vector<Position>& out) const {
    if (t.is(Term::Kind::id)) {
      out.push_back({t, frames, true});
      return;
    }
    std::vector<Term> fs = flatten(t);
    std::size_t k = fs.size();
    for (std::size_t i = 0; i < k; ++i) {
      std::vector<Frame> ctx = frames;
      if (i > 0) ctx.push_back({Frame::prefix, std::vector<Term>(fs.begin(), fs.begin() + i), {}});
      out.push_back({chain(fs, i), std::move(ctx), false});
    }
    const Term& last = fs.back();
    if (last.is(Term::Kind::pair)) {
      std::vector<Frame> ctx = frames;
      if (k > 1) ctx.push_back({Frame::prefix, std::vector<Term>(fs.begin(), fs.end() - 1), {}});
      auto left = ctx, right = ctx;
      left.push_back({Frame::pair_left, {}, last.right()});
      right.push_back({Frame::pair_right, {}, last.left()});
      positions(last.left(), left, out);
      positions(last.right(), right, out);
    } else if (!last.is(Term::Kind::bang)) {
      std::vector<Frame> ctx = frames;
      ctx.push_back({Frame::prefix, fs, {}});
      out.push_back({Term::id(nz_.dom(t)), std::move(ctx), true});
    }
  }

  Term rebuild(const std::vector<Frame>& frames, Term t) const {
    for (std::size_t i = frames.size(); i > 0; --i) {
      const Frame& f = frames[i - 1];
      switch (f.kind) {
        case Frame::prefix: t = nz_.compose(chain(f.factors), t); break;
        case Frame::pair_left: t = nz_.pair(t, f.other); break;
        case Frame::pair_right: t = nz_.pair(f.other, t); break;
      }
    }
    return t;
  }

  // ---- matching ------------------------------------------------------------

  static std::optional<Path> proj_chain(const std::vector<Term>& fs, std::size_t from) {
    Path p;
    for (std::size_t i = fs.size(); i > from; --i) {
      const Term& f = fs[i - 1];
      if (f.is(Term::Kind::proj1))
        p.push_back(1);
      else if (f.is(Term::Kind::proj2))
        p.push_back(2);
      else
        return std::nullopt;
    }
    return p;
  }

  static std::optional<Path> var_path(const Term& P) {
    if (P.is(Term::Kind::id)) return Path{};
    return proj_chain(flatten(P), 0);
  }

  static Type at_path(Type t, const Path& p) {
    for (int c : p) t = c == 1 ? t.left() : t.right();
    return t;
  }

  bool bind(Bindings& b, const Path& p, const Term& t) const {
    auto [it, fresh] = b.try_emplace(p, t);
    return fresh || it->second == t;
  }

  bool match(const Term& P, const Term& T, Bindings& b) const {
    Type pc = nz_.cod(P);
    if (is_unit_like(pc)) return nz_.cod(T) == pc;
    if (auto vp = var_path(P)) return bind(b, *vp, T);
    std::vector<Term> pf = flatten(P);
    std::size_t k = pf.size();
    const Term& last = pf.back();
    enum { chain_tail, pair_tail, bang_tail } tail = chain_tail;
    std::size_t fixed = k;
    Path path;
    if (last.is(Term::Kind::pair)) {
      tail = pair_tail;
      fixed = k - 1;
    } else if (last.is(Term::Kind::bang)) {
      tail = bang_tail;
      fixed = k - 1;
    } else {
      std::size_t j = k;
      while (j > 0 && (pf[j - 1].is(Term::Kind::proj1) || pf[j - 1].is(Term::Kind::proj2))) --j;
      fixed = j;
      path = *proj_chain(pf, j);
    }
    std::vector<Term> tf;
    if (!T.is(Term::Kind::id)) tf = flatten(T);
    if (tf.size() < fixed) return false;
    for (std::size_t i = 0; i < fixed; ++i)
      if (!(tf[i] == pf[i])) return false;
    Term rest = tf.size() > fixed ? chain(tf, fixed) : Term::id(nz_.dom(T));
    switch (tail) {
      case bang_tail: return nz_.cod(rest).is_unit();
      case chain_tail: return bind(b, path, rest);
      case pair_tail: {
        if (rest.is(Term::Kind::pair)) return match(last.left(), rest.left(), b) && match(last.right(), rest.right(), b);
        Type rc = nz_.cod(rest);
        Type want = nz_.cod(last);
        if (!(rc == want) || !rc.is_prod()) return false;
        Term ra = nz_.compose(Term::proj1(rc.left(), rc.right()), rest);
        Term rb = nz_.compose(Term::proj2(rc.left(), rc.right()), rest);
        return match(last.left(), ra, b) && match(last.right(), rb, b);
      }
    }
    return false;
  }

  // ---- substitutions -------------------------------------------------------

  struct Slot {
    Path path;
    Type type;
  };

  std::optional<Term> build(const Type& W, const Type& t, const Path& p, const Bindings& b,
                            const std::map<Path, Term>& fill, std::vector<Slot>* slots) const {
    if (auto it = b.find(p); it != b.end()) return it->second;
    if (auto it = fill.find(p); it != fill.end()) return it->second;
    if (is_unit_like(t)) return Normalizer::canon(W, t);
    bool below = false;
    for (const auto& [q, _] : b)
      if (q.size() > p.size() && std::equal(p.begin(), p.end(), q.begin())) below = true;
    if (below && t.is_prod()) {
      Path pl = p, pr = p;
      pl.push_back(1);
      pr.push_back(2);
      auto l = build(W, t.left(), pl, b, fill, slots);
      auto r = build(W, t.right(), pr, b, fill, slots);
      if (!l || !r) return std::nullopt;
      return nz_.pair(*l, *r);
    }
    if (slots) slots->push_back({p, t});
    return std::nullopt;
  }

  std::vector<Term> candidates(const Type& W, const Type& t) const {
    std::vector<Term> out;
    if (W == t) out.push_back(Term::id(W));
    auto it = pool_.find({W, t});
    if (it != pool_.end())
      for (const auto& c : it->second) {
        if (out.size() >= 6) break;
        if (std::find(out.begin(), out.end(), c) == out.end()) out.push_back(c);
      }
    return out;
  }

  template <typename Fn>
  void apply_rule(const Rule& rule, const Position& p, Fn& emit) {
    if (!(nz_.cod(p.sub) == nz_.cod(rule.pattern))) return;
    Bindings b;
    if (!match(rule.pattern, p.sub, b)) return;
    Type W = nz_.dom(p.sub);
    for (const auto& [path, t] : b)
      if (!(nz_.dom(t) == W) || !(nz_.cod(t) == at_path(rule.D, path))) return;
    std::vector<Slot> slots;
    build(W, rule.D, {}, b, {}, &slots);
    // Choices for variables the occurrence does not determine.
    std::vector<std::vector<Term>> choice;
    for (const auto& s : slots) {
      choice.push_back(candidates(W, s.type));
      if (choice.back().empty()) return;
    }
    std::vector<std::size_t> idx(slots.size(), 0);
    std::size_t combos = 0;
    while (true) {
      std::map<Path, Term> fill;
      for (std::size_t i = 0; i < slots.size(); ++i) fill[slots[i].path] = choice[i][idx[i]];
      if (auto sigma = build(W, rule.D, {}, b, fill, nullptr)) {
        if (nz_.compose(rule.pattern, *sigma) == p.sub) {
          Term replaced = rebuild(p.frames, nz_.compose(rule.replacement, *sigma));
          emit(replaced, rule);
        }
      }
      if (++combos >= 16) return;
      std::size_t i = 0;
      for (; i < idx.size(); ++i) {
        if (++idx[i] < choice[i].size()) break;
        idx[i] = 0;
      }
      if (i == idx.size()) return;
    }
  }

  void collect_pool(const Term& t) {
    std::vector<Position> pos;
    positions(t, {}, pos);
    for (const auto& p : pos) {
      if (p.empty) continue;
      auto& bucket = pool_[{nz_.dom(p.sub), nz_.cod(p.sub)}];
      if (std::find(bucket.begin(), bucket.end(), p.sub) == bucket.end()) bucket.push_back(p.sub);
    }
  }

  // ---- search --------------------------------------------------------------

  std::vector<ProofStep> path_to_root(const CongruenceState& st, int node) const {
    std::vector<ProofStep> out;
    while (st.edge(node).parent >= 0) {
      const auto& e = st.edge(node);
      out.push_back({st.term(e.parent), st.term(node), e.equation, e.reversed});
      node = e.parent;
    }
    std::reverse(out.begin(), out.end());
    return out;
  }

  Verdict search(const Term& L, const Term& R) {
    Verdict v;
    if (L == R) {
      v.status = Status::proven;
      return v;
    }
    set_pool({L, R});
    std::size_t limit = std::max({budget_.max_depth, pair_depth(L), pair_depth(R)});
    CongruenceState st;
    int l = st.add(L), r = st.add(R);
    std::vector<int> side{0, 1};
    std::vector<int> frontier[2] = {{l}, {r}};
    for (std::size_t iter = 0; iter < budget_.max_iters; ++iter) {
      int s = frontier[0].size() <= frontier[1].size() ? 0 : 1;
      if (frontier[s].empty()) s = 1 - s;
      if (frontier[s].empty()) break;
      for (int round = 0; round < 2; ++round, s = 1 - s) {
        std::vector<int> next;
        for (int node : frontier[s]) {
          Term t = st.term(node);
          std::optional<std::pair<int, int>> meet;
          rewrites(t, 0, [&](const Term& u, const Rule& rule) {
            if (meet || st.size() >= budget_.max_terms) return;
            if (pair_depth(u) > limit) return;
            if (auto seen = st.lookup(u)) {
              if (side[*seen] != s) meet = {node, *seen};
              return;
            }
            int id = st.add(u);
            side.push_back(s);
            st.edge(id) = {node, rule.name, rule.reversed};
            st.merge(id, node);
            next.push_back(id);
          });
          if (meet) {
            auto [from, to] = *meet;
            // `from` is on side s and rewrites to `to` on the other side.
            std::vector<ProofStep> a = path_to_root(st, from), b = path_to_root(st, to);
            // Recover the equation used for the meeting step.
            ProofStep link{st.term(from), st.term(to), "", false};
            rewrites(st.term(from), 0, [&](const Term& u, const Rule& rule) {
              if (link.equation.empty() && u == st.term(to)) {
                link.equation = rule.name;
                link.reversed = rule.reversed;
              }
            });
            std::vector<ProofStep> steps = a;
            steps.push_back(link);
            for (auto it = b.rbegin(); it != b.rend(); ++it) steps.push_back({it->to, it->from, it->equation, !it->reversed});
            if (s == 1) {
              // Orient the trace from the goal's left side to its right side.
              std::reverse(steps.begin(), steps.end());
              for (auto& p : steps) {
                std::swap(p.from, p.to);
                p.reversed = !p.reversed;
              }
            }
            st.merge(from, to);
            v.status = Status::proven;
            v.trace = std::move(steps);
            v.explored = st.size();
            return v;
          }
          if (st.size() >= budget_.max_terms) break;
        }
        frontier[s] = std::move(next);
      }
      if (st.size() >= budget_.max_terms) {
        v.reason = "term budget exhausted";
        break;
      }
    }
    if (v.reason.empty()) v.reason = "search budget exhausted";
    v.explored = st.size();
    return v;
  }

  // ---- countermodels -------------------------------------------------------

  std::optional<FinModel> countermodel(const Term& lhs, const Term& rhs) const {
    std::size_t n = spec_.types.size();
    std::size_t cap = budget_.max_model_size;
    std::vector<std::vector<std::size_t>> assignments;
    std::vector<std::size_t> cur(n, 0);
    // All size vectors in [0, cap]^n, ordered by total size.
    std::function<void(std::size_t)> gen = [&](std::size_t i) {
      if (i == n) {
        assignments.push_back(cur);
        return;
      }
      for (std::size_t k = 0; k <= cap; ++k) {
        cur[i] = k;
        gen(i + 1);
      }
    };
    gen(0);
    std::stable_sort(assignments.begin(), assignments.end(), [](const auto& a, const auto& b) {
      std::size_t sa = 0, sb = 0;
      for (auto x : a) sa += x;
      for (auto x : b) sb += x;
      return sa < sb;
    });
    std::size_t seen = 0;
    std::optional<FinModel> found;
    for (const auto& a : assignments) {
      std::map<std::string, std::size_t> sizes;
      for (std::size_t i = 0; i < n; ++i) sizes[spec_.types[i]] = a[i];
      // No function from a nonempty set into an empty one.
      FinModel shape = carriers_only(sizes);
      bool empty = false;
      for (const auto& d : spec_.terms)
        empty = empty || (carrier_size(shape, d.dom) > 0 && carrier_size(shape, d.cod) == 0);
      if (empty) continue;
      ModelEnumerator e(spec_, FinModel{}, sizes);
      CompiledTerm cl, cr;
      bool compiled = false;
      e.run([&](const FinModel& m) {
        if (!compiled) {
          cl = CompiledTerm(e.current(), lhs);
          cr = CompiledTerm(e.current(), rhs);
          compiled = true;
        }
        for (std::size_t x = 0; x < cl.dom_size(); ++x)
          if (cl(static_cast<int>(x)) != cr(static_cast<int>(x))) {
            found = m;
            return false;
          }
        return ++seen < budget_.max_models;
      });
      if (found || seen >= budget_.max_models) break;
    }
    return found;
  }

  Spec spec_;
  Budget budget_;
  Normalizer nz_;
  std::vector<Rule> rules_;
  std::map<std::pair<Type, Type>, std::vector<Term>> pool_;
};

inline Verdict entails(const Spec& s, const Term& lhs, const Term& rhs, const Budget& b = {}) {
  Prover p(s, b);
  return p.entails(lhs, rhs);
}

// ---------------------------------------------------------------------------
// proof obligations

struct Obligation {
  std::string what;
  Term lhs;
  Term rhs;
  Verdict verdict;
};

struct CheckReport {
  Status status = Status::proven;
  std::vector<Obligation> obligations;
  std::string note;
};

inline Status combine(Status a, Status b) {
  if (a == Status::refuted || b == Status::refuted) return Status::refuted;
  if (a == Status::unknown || b == Status::unknown) return Status::unknown;
  return Status::proven;
}

inline void discharge(Prover& p, CheckReport& r, std::string what, const Term& l, const Term& rhs) {
  Verdict v = p.entails(l, rhs);
  r.status = combine(r.status, v.status);
  r.obligations.push_back({std::move(what), l, rhs, std::move(v)});
}

/// Every equation of the source must be entailed, after translation, in the target.
inline CheckReport check_morphism(const Morphism& m, const Budget& b = {}) {
  require_typed(m);
  CheckReport r;
  Prover p(m.dst, b);
  for (const auto& q : m.src.equations) discharge(p, r, "eq " + q.name, apply(m, q.lhs), apply(m, q.rhs));
  return r;
}

inline CheckReport check_nat(const NatTrans& n, const Budget& b = {}) {
  auto diags = check_typing(n);
  if (!diags.empty()) throw Error(ErrorKind::ill_typed, n.name + ": " + diags.front().location + ": " + diags.front().reason);
  CheckReport r;
  Prover p(n.from.dst, b);
  for (const auto& d : n.from.src.terms) {
    auto [l, rhs] = naturality_square(n, d);
    discharge(p, r, "naturality at " + d.name, l, rhs);
  }
  return r;
}

/// Two morphisms with common endpoints agree on generators, up to entailment in the target.
inline CheckReport check_equal_on_generators(const Morphism& a, const Morphism& b, const Budget& bud = {}) {
  CheckReport r;
  if (!(a.src == b.src) || !(a.dst == b.dst)) throw Error(ErrorKind::spec_mismatch, a.name + " vs " + b.name);
  for (const auto& t : a.src.types)
    if (!(a.type_map.at(t) == b.type_map.at(t))) {
      r.status = Status::refuted;
      r.note = "type " + t + " is sent to " + to_string(a.type_map.at(t)) + " and " + to_string(b.type_map.at(t));
      return r;
    }
  Prover p(a.dst, bud);
  for (const auto& d : a.src.terms) discharge(p, r, "term " + d.name, a.term_map.at(d.name), b.term_map.at(d.name));
  return r;
}

// ---------------------------------------------------------------------------
// equivalent presentations

namespace detail {

/// Images for the generators of `from` inside `to`: shared symbols go to
/// themselves, the others are read off defining equations of `from`
/// (equations with a bare symbol on one side).
inline std::optional<Morphism> generator_map(const Spec& from, const Spec& to, std::string& why) {
  Morphism m{from.name + "_to_" + to.name, from, to, {}, {}};
  for (const auto& t : from.types) m.type_map[t] = Type::base(t);
  Normalizer nz(from);
  std::vector<std::string> pending;
  for (const auto& d : from.terms) {
    const TermDecl* e = to.find_term(d.name);
    if (e && e->dom == d.dom && e->cod == d.cod)
      m.term_map[d.name] = Term::atom(d.name);
    else
      pending.push_back(d.name);
  }
  bool progress = true;
  while (!pending.empty() && progress) {
    progress = false;
    for (auto it = pending.begin(); it != pending.end();) {
      std::optional<Term> def;
      for (const auto& q : from.equations) {
        Term l = nz.norm(q.lhs), r = nz.norm(q.rhs);
        for (int flip = 0; flip < 2 && !def; ++flip) {
          const Term& a = flip ? r : l;
          const Term& other = flip ? l : r;
          if (!a.is(Term::Kind::atom) || a.name() != *it) continue;
          std::vector<std::string> atoms;
          collect_atoms(other, atoms);
          bool ok = std::all_of(atoms.begin(), atoms.end(), [&](const std::string& s) { return m.term_map.count(s) > 0; });
          if (ok) def = apply(m, other);
        }
        if (def) break;
      }
      if (def) {
        m.term_map[*it] = *def;
        it = pending.erase(it);
        progress = true;
      } else {
        ++it;
      }
    }
  }
  if (!pending.empty()) {
    why = "no image for " + pending.front() + " in " + to.name;
    return std::nullopt;
  }
  return m;
}

}  // namespace detail

/// Checks that `f: S1 -> S2` and `g: S2 -> S1` are morphisms whose round
/// trips are identities on generators. A refuted obligation only shows that
/// these particular maps fail, so it is reported as unknown.
inline CheckReport equivalent_via(const Morphism& f, const Morphism& g, const Budget& b = {}) {
  CheckReport r;
  for (const Morphism* m : {&f, &g}) {
    auto typing = check_typing(*m);
    if (!typing.empty()) {
      r.status = Status::unknown;
      r.note = m->name + ": " + typing.front().reason;
      return r;
    }
    CheckReport c = check_morphism(*m, b);
    r.status = combine(r.status, c.status);
    for (auto& o : c.obligations) r.obligations.push_back({m->name + ": " + o.what, o.lhs, o.rhs, o.verdict});
  }
  Morphism gf = compose(g, f), fg = compose(f, g);
  for (const Morphism* m : {&gf, &fg}) {
    Prover p(m->src, b);
    for (const auto& t : m->src.types)
      if (!(m->type_map.at(t) == Type::base(t))) {
        r.status = Status::unknown;
        r.note = m->name + " moves type " + t;
      }
    for (const auto& d : m->src.terms)
      discharge(p, r, m->name + ": round trip at " + d.name, m->term_map.at(d.name), Term::atom(d.name));
  }
  if (r.status == Status::refuted) r.status = Status::unknown;
  return r;
}

inline CheckReport equivalent_specs(const Spec& s1, const Spec& s2, const Budget& b = {}) {
  std::set<std::string> t1(s1.types.begin(), s1.types.end()), t2(s2.types.begin(), s2.types.end());
  if (t1 != t2) throw Error(ErrorKind::renaming_mismatch, s1.name + " and " + s2.name + " declare different types");
  std::string why;
  auto f = detail::generator_map(s1, s2, why);
  auto g = f ? detail::generator_map(s2, s1, why) : std::nullopt;
  if (!f || !g) {
    CheckReport r;
    r.status = Status::unknown;
    r.note = why;
    return r;
  }
  return equivalent_via(*f, *g, b);
}

}  // namespace sketchforge

#endif  // SKETCHFORGE_DEDUCTION_HPP
