#ifndef SKETCHFORGE_CLI_HPP
#define SKETCHFORGE_CLI_HPP

// Command-line front end. Exit codes: 0 ok/proven, 1 refuted or violations,
// 2 unknown, 3 usage or input errors.

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "colimit.hpp"
#include "deduction.hpp"
#include "exact.hpp"
#include "json_io.hpp"
#include "metasketch.hpp"
#include "models.hpp"
#include "parameterize.hpp"
#include "parampass.hpp"
#include "parser.hpp"

namespace sketchforge {

namespace cli {

enum Exit { ok = 0, refuted = 1, unknown = 2, usage = 3 };

inline int exit_for(Status s) {
  switch (s) {
    case Status::proven: return ok;
    case Status::refuted: return refuted;
    case Status::unknown: return unknown;
  }
  return unknown;
}

inline Document load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::usage, "cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_document(ss.str());
}

/// "X=2,Y=3"
inline std::map<std::string, std::size_t> parse_sizes(const std::string& text) {
  std::map<std::string, std::size_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    auto eq = item.find('=');
    if (eq == std::string::npos) throw Error(ErrorKind::usage, "size '" + item + "' is not of the form T=n");
    try {
      out[item.substr(0, eq)] = static_cast<std::size_t>(std::stoul(item.substr(eq + 1)));
    } catch (const std::exception&) {
      throw Error(ErrorKind::usage, "size '" + item + "' is not of the form T=n");
    }
  }
  return out;
}

inline std::string report_text(const CheckReport& r) {
  std::string out;
  for (const auto& o : r.obligations)
    out += "  " + std::string(to_string(o.verdict.status)) + "  " + o.what + "\n";
  return out;
}

inline json report_json(const CheckReport& r) {
  json j;
  j["status"] = to_string(r.status);
  j["obligations"] = json::array();
  for (const auto& o : r.obligations)
    j["obligations"].push_back({{"what", o.what}, {"lhs", to_string(o.lhs)}, {"rhs", to_string(o.rhs)}, {"status", to_string(o.verdict.status)}});
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

inline void print_model(std::ostream& out, const FinModel& m) {
  for (const auto& [t, c] : m.carriers) {
    out << "  " << t << " = {";
    for (std::size_t i = 0; i < c.size(); ++i) out << (i ? ", " : "") << c[i];
    out << "}\n";
  }
  for (const auto& [f, tab] : m.tables) {
    out << "  " << f << ":";
    for (std::size_t x = 0; x < tab.values.size(); ++x)
      out << " " << label(m, tab.dom, x) << "->" << label(m, tab.cod, tab.values[x]);
    out << "\n";
  }
}

struct Options {
  std::string file, spec, goal, fix, pure_model, size, param_name = "A", a_name = "a", f, g, realization;
  std::optional<std::size_t> max_depth, max_iters, max_model;
  unsigned jobs = 1;
  unsigned seed = 0;
  bool json = false, trace = false, emit_tA = false;
};

inline Budget budget_of(const Options& o) {
  Budget b = budget_from_env();
  if (o.max_depth) b.max_depth = *o.max_depth;
  if (o.max_iters) b.max_iters = *o.max_iters;
  if (o.max_model) b.max_model_size = *o.max_model;
  return b;
}

inline FinModel pure_model_of(const Options& o, const Spec& d) {
  Spec p0 = pure_part(d);
  FinModel m0;
  if (!o.pure_model.empty()) m0 = model_from_json(p0, read_json_file(o.pure_model));
  if (!o.size.empty()) {
    for (const auto& [t, n] : parse_sizes(o.size)) {
      if (!d.has_type(t)) throw Error(ErrorKind::unknown_symbol, "no type " + t + " in " + d.name);
      if (!m0.carriers.count(t)) m0.carriers[t] = generated_labels(n);
    }
  }
  for (const auto& t : d.types)
    if (!m0.carriers.count(t)) throw Error(ErrorKind::usage, "no carrier for " + t + " (use --size or --pure-model)");
  if (!p0.terms.empty()) {
    // Pure terms without tables range over their models: only allowed when unique.
    bool missing = false;
    for (const auto& t : p0.terms) missing = missing || !m0.tables.count(t.name);
    if (missing) {
      auto ms = all_models(p0, m0, {}, o.jobs);
      if (ms.size() != 1)
        throw Error(ErrorKind::usage, std::to_string(ms.size()) + " models of the pure part; fix one with --pure-model");
      m0 = ms.front();
    }
  }
  return m0;
}

// ---------------------------------------------------------------------------
// commands

inline int cmd_check(const Options& o, std::ostream& out) {
  Document d = load(o.file);
  Budget b = budget_of(o);
  Status all = Status::proven;
  json j = json::array();
  for (const auto& s : d.specs) {
    if (!o.spec.empty() && s.name != o.spec) continue;
    auto v = validate(s);
    Status st = v.empty() ? Status::proven : Status::refuted;
    all = combine(all, st);
    if (o.json) j.push_back({{"spec", s.name}, {"status", v.empty() ? "ok" : "invalid"}});
    else out << "spec " << s.name << ": " << (v.empty() ? "ok" : "invalid") << "\n";
    for (const auto& x : v) out << "  " << x.location << ": " << x.reason << "\n";
  }
  auto item = [&](const std::string& kind, const std::string& name, const CheckReport& r) {
    all = combine(all, r.status);
    if (o.json) {
      json e = report_json(r);
      e[kind] = name;
      j.push_back(e);
    } else {
      out << kind << " " << name << ": " << to_string(r.status) << "\n" << report_text(r);
    }
  };
  if (o.spec.empty()) {
    for (const auto& m : d.morphisms) item("morphism", m.name, check_morphism(m, b));
    for (const auto& n : d.nats) item("transformation", n.name, check_nat(n, b));
  }
  if (o.json) out << j.dump(2) << "\n";
  return exit_for(all);
}

inline int cmd_entail(const Options& o, std::ostream& out) {
  Document d = load(o.file);
  const Spec& s = d.spec(o.spec);
  if (o.goal.empty()) throw Error(ErrorKind::usage, "entail needs --goal");
  auto g = parse_goal(s, o.goal);
  Prover p(s, budget_of(o));
  Verdict v = p.entails(g.first, g.second);
  if (o.json) {
    json j{{"status", to_string(v.status)}, {"lhs", to_string(g.first)}, {"rhs", to_string(g.second)}, {"explored", v.explored}};
    if (o.trace && v.status == Status::proven) {
      j["trace"] = json::array();
      for (const auto& st : v.trace)
        j["trace"].push_back({{"from", to_string(st.from)}, {"to", to_string(st.to)}, {"by", st.equation}, {"reversed", st.reversed}});
    }
    if (v.countermodel) j["countermodel"] = to_json(*v.countermodel);
    if (!v.reason.empty()) j["reason"] = v.reason;
    out << j.dump(2) << "\n";
    return exit_for(v.status);
  }
  out << to_string(v.status) << "\n";
  if (o.trace && v.status == Status::proven) {
    out << "  " << to_string(g.first) << "\n";
    for (const auto& st : v.trace)
      out << "  = " << to_string(st.to) << "    by " << st.equation << (st.reversed ? " (reversed)" : "") << "\n";
  }
  if (v.countermodel) {
    out << "countermodel:\n";
    print_model(out, *v.countermodel);
  }
  if (v.status == Status::unknown && !v.reason.empty()) out << "reason: " << v.reason << "\n";
  return exit_for(v.status);
}

inline int cmd_expand(const Options& o, std::ostream& out, std::ostream& err) {
  Document d = load(o.file);
  Expansion x = expand(d.spec(o.spec), o.param_name);
  for (const auto& w : x.warnings) err << "warning: " << w << "\n";
  out << format(x.expanded);
  if (o.emit_tA) out << "\n" << format(collapse_A(x));
  return ok;
}

inline int cmd_add_param(const Options& o, std::ostream& out) {
  Document d = load(o.file);
  const Spec& s = d.spec(o.spec);
  Spec p = is_param_spec(s) ? s : expand(s, o.param_name).expanded;
  WithParameter w = add_parameter(p, o.a_name);
  out << format(w.spec) << "\n" << format(w.j_A);
  return ok;
}

inline int cmd_passing(const Options& o, std::ostream& out) {
  Document d = load(o.file);
  Passing p = lax_cocone(d.spec(o.spec), o.param_name, o.a_name);
  CheckReport r = check_lax_cocone(p, budget_of(o));
  if (o.json) {
    json j{{"T_a", format(p.w.spec)}, {"j", format(p.j)}, {"j_A", format(p.w.j_A)}, {"t", format(p.cocone.cell)}};
    j["check"] = report_json(r);
    out << j.dump(2) << "\n";
    return exit_for(r.status);
  }
  out << format(p.w.spec) << "\n"
      << format(p.j) << "\n"
      << format(p.w.j_A) << "\n"
      << format(p.cocone.cell) << "\n"
      << "// lax cocone: " << to_string(r.status) << "\n";
  return exit_for(r.status);
}

inline int cmd_pushout(const Options& o, std::ostream& out) {
  Document d = load(o.file);
  Pushout po = pushout(d.morphism(o.f), d.morphism(o.g), o.spec);
  out << format(po.spec) << "\n" << format(po.in1) << "\n" << format(po.in2);
  return ok;
}

inline int cmd_decompose(const Options& o, std::ostream& out) {
  Document doc = load(o.file);
  const Spec& s = doc.spec(o.spec);
  Diagram d = decompose(s);
  out << "nodes: " << d.nodes.size() << "\n";
  for (auto k : {Elementary::type, Elementary::term, Elementary::selid, Elementary::comp, Elementary::prod2,
                 Elementary::tuple2, Elementary::prod0, Elementary::tuple0, Elementary::equa})
    if (d.count(k)) out << "  " << to_string(k) << ": " << d.count(k) << "\n";
  out << "edges: " << d.edges.size() << "\n";
  for (const auto& n : d.nodes) out << "  " << n.id << "  " << n.label << "\n";
  Glued g = glue(d, s.name + "_glued");
  CheckReport r = equivalent_specs(g.spec, s, budget_of(o));
  out << "glue: " << to_string(r.status) << "\n";
  return exit_for(r.status);
}

inline int cmd_models(const Options& o, std::ostream& out) {
  Document doc = load(o.file);
  const Spec& s = doc.spec(o.spec);
  FinModel fixed;
  if (!o.fix.empty()) fixed = model_from_json(s, read_json_file(o.fix));
  auto sizes = parse_sizes(o.size);
  std::vector<FinModel> ms = all_models(s, fixed, sizes, o.jobs);
  if (o.json) {
    json j{{"count", ms.size()}, {"models", json::array()}};
    for (const auto& m : ms) j["models"].push_back(to_json(m));
    out << j.dump(2) << "\n";
    return ok;
  }
  out << "models: " << ms.size() << "\n";
  for (std::size_t k = 0; k < ms.size(); ++k) {
    out << "#" << k << "\n";
    print_model(out, ms[k]);
  }
  return ok;
}

inline int cmd_exact_param(const Options& o, std::ostream& out) {
  Document doc = load(o.file);
  const Spec& d = doc.spec(o.spec);
  FinModel m0 = pure_model_of(o, d);
  TerminalModel t = terminal_model(d, m0, o.jobs);
  std::size_t count = models_over(d, m0, o.jobs).size();
  std::size_t na = t.model.carriers.at(t.x.param).size();
  // alpha |-> pass_parameter(alpha) must hit each enumerated model once.
  std::vector<int> hit(count, 0);
  bool bijective = true;
  std::vector<std::pair<std::string, FinModel>> rows;
  for (std::size_t k = 0; k < na; ++k) {
    PassedParameter pp = pass_parameter(d, t.model, parameter_label(k));
    auto it = std::find(t.params.begin(), t.params.end(), pp.model);
    if (it == t.params.end()) {
      bijective = false;
      continue;
    }
    ++hit[it - t.params.begin()];
    rows.push_back({parameter_label(k), pp.model});
  }
  for (int h : hit) bijective = bijective && h == 1;
  bijective = bijective && na == count;
  if (o.json) {
    json j{{"carrier_A", na}, {"models", count}, {"bijection", bijective}, {"table", json::object()}};
    for (const auto& [a, m] : rows) j["table"][a] = to_json(m)["tables"];
    out << j.dump(2) << "\n";
    return bijective ? ok : refuted;
  }
  out << "|" << t.x.param << "| = " << na << "\n";
  out << "models over M_0 = " << count << "\n";
  for (const auto& [a, m] : rows) {
    out << a << " ->";
    for (const auto& [f, tab] : m.tables) {
      bool pure = false;
      for (const auto& td : d.terms) pure = pure || (td.name == f && td.pure);
      if (pure) continue;
      out << " " << f << " {";
      for (std::size_t x = 0; x < tab.values.size(); ++x)
        out << (x ? ", " : "") << label(m, tab.dom, x) << "->" << label(m, tab.cod, tab.values[x]);
      out << "}";
    }
    out << "\n";
  }
  out << "bijection: " << (bijective ? "verified" : "FAILED") << "\n";
  return bijective ? ok : refuted;
}

inline int cmd_terminal(const Options& o, std::ostream& out) {
  Document doc = load(o.file);
  const Spec& d = doc.spec(o.spec);
  FinModel m0 = pure_model_of(o, d);
  TerminalModel t = terminal_model(d, m0, o.jobs);
  if (o.json) {
    out << to_json(t.model).dump(2) << "\n";
    return ok;
  }
  out << "terminal model of " << t.x.expanded.name << " over M_0:\n";
  print_model(out, t.model);
  return ok;
}

inline int cmd_realize(const Options& o, std::ostream& out) {
  Document doc = load(o.file);
  auto k = builtin_sketches();
  Realization r = spec_to_realization(doc.spec(o.spec), k->eqS);
  auto v = check_realization(r);
  if (o.json) {
    out << to_json(r).dump(2) << "\n";
    return v.empty() ? ok : refuted;
  }
  for (const auto& p : k->eqS.points) {
    const auto& set = r.sets.at(p);
    out << p << " (" << set.size() << "): {";
    for (std::size_t i = 0; i < set.size(); ++i) out << (i ? ", " : "") << set[i];
    out << "}\n";
  }
  for (const auto& a : k->eqS.arrows) {
    const auto& f = r.fns.at(a.name);
    if (f.empty()) continue;
    out << a.name << " : " << a.src << " -> " << a.dst << "\n";
    for (std::size_t x = 0; x < f.size(); ++x) out << "  " << r.sets.at(a.src)[x] << " |-> " << r.sets.at(a.dst)[f[x]] << "\n";
  }
  out << "realization: " << (v.empty() ? "ok" : "violations") << "\n";
  for (const auto& x : v) out << "  " << x.kind << " " << x.where << " " << x.detail << "\n";
  return v.empty() ? ok : refuted;
}

inline int cmd_check_realization(const Options& o, std::ostream& out) {
  auto k = builtin_sketches();
  json j = read_json_file(o.realization);
  std::string name = j.value("sketch", std::string("E_eqS"));
  const LimitSketch* sk = nullptr;
  for (const LimitSketch* c : {&k->gr, &k->grco, &k->spec, &k->eqS})
    if (c->name == name) sk = c;
  if (!sk) throw Error(ErrorKind::unknown_symbol, "no sketch named " + name);
  Realization r = realization_from_json(*sk, j);
  auto v = check_realization(r);
  if (o.json) {
    json a = json::array();
    for (const auto& x : v) a.push_back({{"kind", x.kind}, {"where", x.where}, {"detail", x.detail}});
    out << json{{"sketch", name}, {"ok", v.empty()}, {"violations", a}}.dump(2) << "\n";
  } else {
    out << name << ": " << (v.empty() ? "ok" : "violations") << "\n";
    for (const auto& x : v) out << "  " << x.kind << " " << x.where << (x.detail.empty() ? "" : " (" + x.detail + ")") << "\n";
  }
  return v.empty() ? ok : refuted;
}

}  // namespace cli

/// Runs one command; see the exit code contract above.
inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  using namespace cli;
  CLI::App app{"Verification of decorated equational specifications", "sketchforge"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_option("--max-depth", o.max_depth, "bound on pair nesting in the prover search");
  app.add_option("--max-iters", o.max_iters, "rounds of the prover search");
  app.add_option("--max-model", o.max_model, "largest carrier tried for countermodels");
  app.add_option("--jobs", o.jobs, "threads for model enumeration");
  app.add_option("--seed", o.seed, "accepted for reproducibility; all searches are deterministic");
  app.add_flag("--json", o.json, "machine-readable output");

  auto with_file = [&](CLI::App* c, bool spec) {
    c->add_option("file", o.file, "specification file")->required();
    if (spec) c->add_option("spec", o.spec, "specification name")->required();
    return c;
  };
  auto* check = app.add_subcommand("check", "validate every declaration of a file");
  check->add_option("file", o.file)->required();
  check->add_option("spec", o.spec, "only this specification");
  auto* entail = with_file(app.add_subcommand("entail", "decide an equation"), true);
  entail->add_option("--goal", o.goal, "\"lhs == rhs [where x : X]\"")->required();
  entail->add_flag("--trace", o.trace, "print the proof");
  auto* expandc = with_file(app.add_subcommand("expand", "add a type of parameters"), true);
  expandc->add_option("--param-name", o.param_name);
  expandc->add_flag("--emit-tA", o.emit_tA, "also print the collapse morphism t_A");
  auto* addp = with_file(app.add_subcommand("add-param", "add a parameter a : A"), true);
  addp->add_option("--param-name", o.param_name);
  addp->add_option("--arg-name", o.a_name);
  auto* passing = with_file(app.add_subcommand("passing", "parameter passing lax cocone"), true);
  passing->add_option("--param-name", o.param_name);
  passing->add_option("--arg-name", o.a_name);
  auto* po = app.add_subcommand("pushout", "pushout of two morphisms with a common source");
  po->add_option("file", o.file)->required();
  po->add_option("f", o.f)->required();
  po->add_option("g", o.g)->required();
  po->add_option("--name", o.spec);
  auto* dec = with_file(app.add_subcommand("decompose", "diagram of elementary parts, glued back"), true);
  auto* models = with_file(app.add_subcommand("models", "enumerate finite models"), true);
  models->add_option("--size", o.size, "T=n,...");
  models->add_option("--fix", o.fix, "model file with fixed carriers and tables");
  auto* exact = with_file(app.add_subcommand("exact-param", "terminal parameterized model and bijection"), true);
  exact->add_option("--pure-model", o.pure_model);
  exact->add_option("--size", o.size);
  auto* term = with_file(app.add_subcommand("terminal", "terminal model of the expansion"), true);
  term->add_option("--pure-model", o.pure_model);
  term->add_option("--size", o.size);
  auto* realize = with_file(app.add_subcommand("realize", "realization of the specification sketch"), true);
  auto* checkr = app.add_subcommand("check-realization", "check a realization file");
  checkr->add_option("realization", o.realization)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return usage;
  }
  try {
    if (*check) return cmd_check(o, out);
    if (*entail) return cmd_entail(o, out);
    if (*expandc) return cmd_expand(o, out, err);
    if (*addp) return cmd_add_param(o, out);
    if (*passing) return cmd_passing(o, out);
    if (*po) return cmd_pushout(o, out);
    if (*dec) return cmd_decompose(o, out);
    if (*models) return cmd_models(o, out);
    if (*exact) return cmd_exact_param(o, out);
    if (*term) return cmd_terminal(o, out);
    if (*realize) return cmd_realize(o, out);
    if (*checkr) return cmd_check_realization(o, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return usage;
  }
  return usage;
}

}  // namespace sketchforge

#endif  // SKETCHFORGE_CLI_HPP
