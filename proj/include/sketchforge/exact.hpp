#ifndef SKETCHFORGE_EXACT_HPP
#define SKETCHFORGE_EXACT_HPP

// Models of parameterized presentations: adding the argument a, the terminal
// model of T_A over a model M_0 of the pure part (whose parameters are the
// models of T over M_0), the morphism into it, and parameter passing.

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "error.hpp"
#include "models.hpp"
#include "morphism.hpp"
#include "parampass.hpp"
#include "parameterize.hpp"
#include "spec.hpp"

namespace sketchforge {

struct ModelMorphism {
  FinModel from;
  FinModel to;
  std::map<std::string, Table> components;  // base type -> function table
};

namespace detail {

/// Component at a type, extended to products componentwise and to 1 as identity.
inline int component_at(const ModelMorphism& h, const Type& t, int v) {
  switch (t.kind()) {
    case Type::Kind::unit: return v;
    case Type::Kind::base: return h.components.at(t.name()).values.at(v);
    case Type::Kind::prod: {
      int r = static_cast<int>(carrier_size(h.from, t.right()));
      int rt = static_cast<int>(carrier_size(h.to, t.right()));
      return component_at(h, t.left(), v / r) * rt + component_at(h, t.right(), v % r);
    }
  }
  return v;
}

inline Table identity_table(const FinModel& m, const std::string& t) {
  Table out{Type::base(t), Type::base(t), {}};
  for (std::size_t v = 0; v < m.carriers.at(t).size(); ++v) out.values.push_back(static_cast<int>(v));
  return out;
}

}  // namespace detail

/// Every naturality square of `s`'s terms that fails, with a witness.
inline std::vector<Violation> check_model_morphism(const Spec& s, const ModelMorphism& h) {
  std::vector<Violation> out;
  for (const auto& t : s.types) {
    auto it = h.components.find(t);
    if (it == h.components.end()) {
      out.push_back({"missing component", t, ""});
      continue;
    }
    std::size_t n = h.from.carriers.at(t).size(), c = h.to.carriers.at(t).size();
    bool ok = it->second.values.size() == n;
    for (int v : it->second.values) ok = ok && v >= 0 && static_cast<std::size_t>(v) < c;
    if (!ok) out.push_back({"bad component", t, ""});
  }
  if (!out.empty()) return out;
  for (const auto& d : s.terms) {
    const Table& f = h.from.tables.at(d.name);
    const Table& g = h.to.tables.at(d.name);
    for (std::size_t x = 0; x < f.values.size(); ++x) {
      int lhs = detail::component_at(h, d.cod, f.values[x]);
      int rhs = g.values.at(detail::component_at(h, d.dom, static_cast<int>(x)));
      if (lhs != rhs) {
        out.push_back({"naturality at " + d.name, label(h.from, d.dom, x), ""});
        break;
      }
    }
  }
  return out;
}

/// The model of T_a over M_A which sends a to alpha.
inline FinModel extend_with_argument(const Spec& p, const FinModel& m_A, const std::string& alpha) {
  if (!is_param_const_spec(p)) throw Error(ErrorKind::spec_mismatch, p.name + " has no parameter");
  const Type A = Type::base(*p.param_type);
  FinModel out = m_A;
  out.tables[*p.param_const] = Table{Type::unit(), A, {value_of(m_A, A, alpha)}};
  auto v = check_model(p, out);
  if (!v.empty()) throw Error(ErrorKind::invalid_model, v.front().what + " at " + v.front().lhs);
  return out;
}

/// The models of d over m0, in enumeration order.
inline std::vector<FinModel> models_over(const Spec& d, const FinModel& m0, unsigned jobs = 1) {
  Spec p0 = pure_part(d);
  auto v = check_model(p0, m0);
  if (!v.empty()) throw Error(ErrorKind::invalid_model, "not a model of " + p0.name + ": " + v.front().what);
  return all_models(d, m0, {}, jobs);
}

inline std::string parameter_label(std::size_t k) { return "m" + std::to_string(k); }

struct TerminalModel {
  Expansion x;
  FinModel model;                 // of T_A
  std::vector<FinModel> params;   // params[k] is the model labelled m<k>
};

/// The terminal model of T_A over m0: A is the set of models of d over m0 and
/// f'(mu, x) = mu(f)(x).
inline TerminalModel terminal_model(const Spec& d, const FinModel& m0, unsigned jobs = 1) {
  TerminalModel t;
  t.x = expand(d);
  t.params = models_over(d, m0, jobs);
  FinModel& m = t.model;
  m.carriers = m0.carriers;
  for (std::size_t k = 0; k < t.params.size(); ++k) m.carriers[t.x.param].push_back(parameter_label(k));
  m.carriers[t.x.param];
  for (const auto& f : d.terms) {
    if (f.pure) {
      m.tables[f.name] = m0.tables.at(f.name);
      continue;
    }
    const std::string& fp = t.x.prime.at(f.name);
    Table tab{Type::prod(Type::base(t.x.param), f.dom), f.cod, {}};
    for (const auto& mu : t.params) {
      const auto& vals = mu.tables.at(f.name).values;
      tab.values.insert(tab.values.end(), vals.begin(), vals.end());
    }
    m.tables[fp] = std::move(tab);
  }
  auto v = check_model(t.x.expanded, m);
  if (!v.empty()) throw Error(ErrorKind::invalid_model, "terminal model fails " + v.front().what);
  return t;
}

/// Whether a model of T_A restricts to m0 on the pure part.
inline bool is_over(const Expansion& x, const FinModel& n, const FinModel& m0) {
  for (const auto& t : x.source.types)
    if (!n.carriers.count(t) || !m0.carriers.count(t) || n.carriers.at(t) != m0.carriers.at(t)) return false;
  for (const auto& f : x.source.terms)
    if (f.pure && !(n.tables.at(f.name).values == m0.tables.at(f.name).values)) return false;
  return true;
}

/// The model of d induced by a parameter nu of a model n of T_A:
/// mu(f)(x) = n(f')(nu, x), pure terms as in n.
inline FinModel induced_model(const Expansion& x, const FinModel& n, int nu) {
  FinModel mu;
  for (const auto& t : x.source.types) mu.carriers[t] = n.carriers.at(t);
  for (const auto& f : x.source.terms) {
    if (f.pure) {
      mu.tables[f.name] = n.tables.at(f.name);
      continue;
    }
    const auto& vals = n.tables.at(x.prime.at(f.name)).values;
    std::size_t w = carrier_size(n, f.dom);
    Table tab{f.dom, f.cod, {}};
    tab.values.assign(vals.begin() + nu * w, vals.begin() + (nu + 1) * w);
    mu.tables[f.name] = std::move(tab);
  }
  return mu;
}

/// The morphism n -> terminal over m0: nu goes to the model it induces.
inline ModelMorphism unique_to_terminal(const TerminalModel& t, const FinModel& n, const FinModel& m0) {
  auto v = check_model(t.x.expanded, n);
  if (!v.empty()) throw Error(ErrorKind::invalid_model, "not a model of " + t.x.expanded.name + ": " + v.front().what);
  if (!is_over(t.x, n, m0)) throw Error(ErrorKind::not_over_m0, "the model does not restrict to the given pure model");
  ModelMorphism h{n, t.model, {}};
  for (const auto& ty : t.x.source.types) h.components[ty] = detail::identity_table(n, ty);
  const std::string& A = t.x.param;
  Table c{Type::base(A), Type::base(A), {}};
  for (std::size_t nu = 0; nu < n.carriers.at(A).size(); ++nu) {
    FinModel mu = induced_model(t.x, n, static_cast<int>(nu));
    auto it = std::find(t.params.begin(), t.params.end(), mu);
    if (it == t.params.end()) throw Error(ErrorKind::invalid_model, "parameter " + n.carriers.at(A)[nu] + " induces no model");
    c.values.push_back(static_cast<int>(it - t.params.begin()));
  }
  h.components[A] = std::move(c);
  auto bad = check_model_morphism(t.x.expanded, h);
  if (!bad.empty()) throw Error(ErrorKind::invalid_model, "induced morphism fails " + bad.front().what);
  return h;
}

/// Counts the model morphisms n -> terminal which are identities on the types
/// of d: exhaustive over A-components, pruned point by point (the naturality
/// squares at each f' only involve one parameter at a time).
inline std::size_t count_morphisms_over(const TerminalModel& t, const FinModel& n, std::vector<Table>* found = nullptr) {
  const std::string& A = t.x.param;
  std::size_t na = n.carriers.at(A).size(), ta = t.model.carriers.at(A).size();
  ModelMorphism h{n, t.model, {}};
  for (const auto& ty : t.x.source.types) h.components[ty] = detail::identity_table(n, ty);
  h.components[A] = Table{Type::base(A), Type::base(A), std::vector<int>(na, 0)};
  // Feasible images of each point.
  std::vector<std::vector<int>> feasible(na);
  for (std::size_t nu = 0; nu < na; ++nu)
    for (std::size_t mu = 0; mu < ta; ++mu) {
      bool ok = true;
      for (const auto& f : t.x.source.terms) {
        if (f.pure) continue;
        const auto& lhs = n.tables.at(t.x.prime.at(f.name)).values;
        const auto& rhs = t.model.tables.at(t.x.prime.at(f.name)).values;
        std::size_t w = carrier_size(n, f.dom);
        for (std::size_t x = 0; x < w && ok; ++x) ok = lhs[nu * w + x] == rhs[mu * w + x];
      }
      if (ok) feasible[nu].push_back(static_cast<int>(mu));
    }
  std::size_t count = 0;
  auto& comp = h.components[A].values;
  auto rec = [&](auto&& self, std::size_t k) -> void {
    if (k == na) {
      if (check_model_morphism(t.x.expanded, h).empty()) {
        ++count;
        if (found) found->push_back(h.components[A]);
      }
      return;
    }
    for (int mu : feasible[k]) {
      comp[k] = mu;
      self(self, k + 1);
    }
  };
  rec(rec, 0);
  return count;
}

struct PassedParameter {
  FinModel model;    // of d
  ModelMorphism m;   // restrict(model, t_A) -> m_A
};

/// Parameter passing: M(f) = M_A(f')(alpha, -), computed as the restriction of
/// the extension by alpha along j and cross-checked against the direct formula.
inline PassedParameter pass_parameter(const Spec& d, const FinModel& m_A, const std::string& alpha) {
  Passing p = lax_cocone(d);
  const Type A = Type::base(p.x.param);
  int av = value_of(m_A, A, alpha);
  FinModel ext = extend_with_argument(p.w.spec, m_A, alpha);
  PassedParameter out;
  out.model = restrict(ext, p.j);
  FinModel direct = induced_model(p.x, m_A, av);
  if (!(direct == out.model)) throw Error(ErrorKind::invalid_model, "restriction along j disagrees with M_A(f')(alpha, -)");
  auto v = check_model(d, out.model);
  if (!v.empty()) throw Error(ErrorKind::invalid_model, "passed model fails " + v.front().what);
  FinModel r = restrict(out.model, p.t_A);
  out.m = ModelMorphism{r, m_A, {}};
  for (const auto& ty : d.types) out.m.components[ty] = detail::identity_table(m_A, ty);
  out.m.components[p.x.param] = Table{A, A, {av}};
  auto bad = check_model_morphism(p.x.expanded, out.m);
  if (!bad.empty()) throw Error(ErrorKind::invalid_model, "m fails " + bad.front().what);
  return out;
}

}  // namespace sketchforge

#endif  // SKETCHFORGE_EXACT_HPP
