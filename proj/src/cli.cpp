#include "causal/cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "causal/axioms.hpp"
#include "causal/identify.hpp"
#include "causal/model_file.hpp"
#include "causal/query.hpp"
#include "causal/represent.hpp"

namespace causal::cli {

using json = nlohmann::ordered_json;

namespace {

struct Options {
  std::string model_path;
  std::string query;
  std::string sets;
  std::size_t depth = IdentifyOptions{}.depth_limit;
  double tol = kDefaultTol;
  std::string format = "text";
  std::optional<std::uint64_t> seed;
  bool no_size_cap = false;
  bool check = false;
  bool trace = false;
};

/// Raised for bad input that should exit with kUsage.
struct InputError {
  std::string message;
  std::optional<SourcePos> pos;
  std::vector<std::string> expected;
  std::string file;
};

class Reporter {
 public:
  Reporter(std::string command, const Options& o, std::ostream& out) : o_(o), out_(out) {
    doc_["command"] = std::move(command);
  }

  bool json_mode() const { return o_.format == "json"; }
  json& doc() { return doc_; }
  void line(const std::string& s) { text_ += s + "\n"; }

  int finish(int code) {
    doc_["status"] = code == kOk ? (passed_ ? "pass" : "ok") : code == kCheckFailed ? "fail" : "error";
    doc_["exit_code"] = code;
    if (json_mode()) {
      json ordered;
      ordered["command"] = doc_["command"];
      ordered["status"] = doc_["status"];
      ordered["exit_code"] = code;
      for (auto it = doc_.begin(); it != doc_.end(); ++it)
        if (!ordered.contains(it.key())) ordered[it.key()] = it.value();
      out_ << ordered.dump(2) << "\n";
    } else {
      out_ << text_;
    }
    return code;
  }

  void mark_verdict() { passed_ = true; }

 private:
  const Options& o_;
  std::ostream& out_;
  json doc_;
  std::string text_;
  bool passed_ = false;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError{"cannot open model file '" + path + "'", std::nullopt, {}, path};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

LoadedModel load(const Options& o) {
  if (o.model_path.empty()) throw InputError{"--model is required"};
  std::string text = read_file(o.model_path);
  try {
    return load_model_text(text, o.seed);
  } catch (const ParseError& e) {
    throw InputError{e.message(), e.pos(), e.expected(), o.model_path};
  } catch (const std::invalid_argument& e) {
    throw InputError{e.what(), std::nullopt, {}, o.model_path};
  }
}

const BeliefFamily& require_family(const LoadedModel& m) {
  if (!m.family)
    throw InputError{"the model has no belief family: give strictly positive CPTs, belief blocks, or --seed"};
  return *m.family;
}

AxiomOptions axiom_options(const Options& o) {
  AxiomOptions a;
  a.tol = o.tol;
  if (o.no_size_cap) a.max_variables = kMaxVariables;
  return a;
}

json names_json(const VariableSpace& space, VarSet s) {
  json arr = json::array();
  for (Var v : s) arr.push_back(space.name(v));
  return arr;
}

json edges_json(const Dag& g) {
  json arr = json::array();
  for (auto [t, h] : g.edges()) arr.push_back({{"tail", g.name(t)}, {"head", g.name(h)}});
  return arr;
}

std::string edges_text(const Dag& g) {
  std::string out;
  for (auto [t, h] : g.edges()) out += (out.empty() ? "" : ", ") + g.name(t) + " -> " + g.name(h);
  return out.empty() ? "(no edges)" : out;
}

json number_or_null(std::optional<double> x) {
  if (!x || !std::isfinite(*x)) return nullptr;
  return *x;
}

json witness_json(const Witness& w) {
  json fields = json::object();
  for (const auto& [k, v] : w.fields) fields[k] = v;
  return {{"summary", w.summary}, {"fields", fields}, {"lhs", number_or_null(w.lhs)}, {"rhs", number_or_null(w.rhs)}};
}

json report_json(const AxiomReport& r) {
  json v = json::array();
  for (const auto& w : r.violations) v.push_back(witness_json(w));
  return {{"axiom", r.axiom},
          {"pass", r.pass},
          {"violation_count", r.violation_count},
          {"violations", v},
          {"notes", r.notes}};
}

void report_text(Reporter& rep, const AxiomReport& r) {
  std::string head = r.axiom + ": " + (r.pass ? "pass" : "FAIL");
  if (!r.pass) head += " (" + std::to_string(r.violation_count) + " violation" + (r.violation_count == 1 ? "" : "s") + ")";
  rep.line(head);
  for (const auto& n : r.notes) rep.line("  note: " + n);
  for (const auto& w : r.violations) {
    std::string s = "  - " + w.summary;
    if (w.lhs && w.rhs) {
      char buf[80];
      std::snprintf(buf, sizeof buf, " [lhs=%.9g rhs=%.9g]", *w.lhs, *w.rhs);
      s += buf;
    }
    rep.line(s);
  }
  if (r.violation_count > r.violations.size())
    rep.line("  ... " + std::to_string(r.violation_count - r.violations.size()) + " more");
}

VarSet parse_set(const LoadedModel& m, const std::string& text) {
  VarSet out;
  std::string item;
  std::istringstream ss(text);
  while (std::getline(ss, item, ',')) {
    auto b = item.find_first_not_of(" \t");
    auto e = item.find_last_not_of(" \t");
    if (b == std::string::npos) continue;
    item = item.substr(b, e - b + 1);
    if (!m.space->contains(item)) throw InputError{"--sets: unknown variable '" + item + "'"};
    Var v = m.space->index_of(item);
    if (out.contains(v)) throw InputError{"--sets: variable '" + item + "' listed twice"};
    out.insert(v);
  }
  return out;
}

int cmd_validate(const Options& o, Reporter& rep) {
  LoadedModel m = load(o);
  const VariableSpace& space = *m.space;
  json vars = json::array();
  for (Var v = 0; v < space.size(); ++v)
    vars.push_back({{"name", space.name(v)}, {"cardinality", space.card(v)}, {"labels", m.labels[v]}});
  rep.doc()["model"] = {{"name", m.file.name},
                        {"variables", vars},
                        {"edges", edges_json(m.graph)},
                        {"has_cpts", m.markov.has_value()},
                        {"has_family", m.family.has_value()}};
  rep.line("model " + m.file.name + ": " + std::to_string(space.size()) + " variables, " +
           std::to_string(m.graph.edge_count()) + " edges");
  rep.line(std::string("cpts: ") + (m.markov ? "yes" : "no") + ", belief family: " + (m.family ? "yes" : "no"));
  rep.line("valid");
  return kOk;
}

int cmd_dsep(const Options& o, Reporter& rep) {
  LoadedModel m = load(o);
  std::vector<std::string> parts;
  std::string part;
  std::istringstream ss(o.sets);
  while (std::getline(ss, part, ';')) parts.push_back(part);
  if (o.sets.empty() || parts.size() < 2 || parts.size() > 3)
    throw InputError{"--sets must look like \"I;J;K\" (K may be empty)"};
  VarSet I = parse_set(m, parts[0]), J = parse_set(m, parts[1]);
  VarSet K = parts.size() == 3 ? parse_set(m, parts[2]) : VarSet{};
  if (I.empty() || J.empty()) throw InputError{"--sets: I and J must be nonempty"};
  if (I.intersects(J) || I.intersects(K) || J.intersects(K)) throw InputError{"--sets: I, J and K must be disjoint"};
  bool sep = d_separates(m.graph, K, I, J);
  bool blk = blocks(m.graph, I, J, K);
  const VariableSpace& space = *m.space;
  rep.doc()["sets"] = {{"I", names_json(space, I)}, {"J", names_json(space, J)}, {"K", names_json(space, K)}};
  rep.doc()["d_separated"] = sep;
  rep.doc()["blocks"] = blk;
  rep.line(std::string("d-separated: ") + (sep ? "true" : "false"));
  if (sep != blk) {
    rep.line("internal error: path-blocking and d-separation disagree");
    return kCheckFailed;
  }
  return kOk;
}

int cmd_axioms(const Options& o, Reporter& rep) {
  LoadedModel m = load(o);
  const BeliefFamily& fam = require_family(m);
  AxiomOptions ao = axiom_options(o);
  std::vector<AxiomReport> reports;
  try {
    reports.push_back(check_assumption1(fam, ao));
    auto rest = check_axioms(fam, true, ao);
    reports.insert(reports.end(), rest.begin(), rest.end());
  } catch (const SizeCapError& e) {
    throw InputError{std::string(e.what()) + "; pass --no-size-cap to override"};
  }
  bool all = true;
  json arr = json::array();
  for (const auto& r : reports) {
    all = all && r.pass;
    arr.push_back(report_json(r));
    report_text(rep, r);
  }
  rep.doc()["reports"] = arr;
  try {
    rep.doc()["causal_graph"] = {{"edges", edges_json(causal_graph(fam, ao.tol))}};
  } catch (const CycleError&) {
    rep.doc()["causal_graph"] = nullptr;
  }
  rep.line(all ? "all checks pass" : "some checks FAIL");
  if (all) rep.mark_verdict();
  return all ? kOk : kCheckFailed;
}

int cmd_discover(const Options& o, Reporter& rep) {
  LoadedModel m = load(o);
  const BeliefFamily& fam = require_family(m);
  const VariableSpace& space = fam.space();
  auto ca = causal_relation(fam, o.tol);
  json causes = json::object();
  for (Var i = 0; i < space.size(); ++i) {
    causes[space.name(i)] = names_json(space, ca[i]);
    rep.line("Ca(" + space.name(i) + ") = " + space.format(ca[i]));
  }
  rep.doc()["causes"] = causes;
  try {
    Dag g = causal_graph(fam, o.tol);
    json ica = json::object();
    for (Var i = 0; i < space.size(); ++i) {
      ica[space.name(i)] = names_json(space, g.ancestors(i));
      rep.line("ICa(" + space.name(i) + ") = " + space.format(g.ancestors(i)));
    }
    rep.doc()["indirect_causes"] = ica;
    rep.doc()["causal_graph"] = {{"edges", edges_json(g)}};
    rep.line("causal graph: " + edges_text(g));
    return kOk;
  } catch (const CycleError& e) {
    json cyc = json::array();
    for (Var v : e.cycle()) cyc.push_back(space.name(v));
    rep.doc()["causal_graph"] = nullptr;
    rep.doc()["cycle"] = cyc;
    rep.line(e.what());
    return kCheckFailed;
  }
}

int cmd_represent(const Options& o, Reporter& rep) {
  LoadedModel m = load(o);
  const BeliefFamily& fam = require_family(m);
  AxiomOptions ao = axiom_options(o);
  RepresentationVerdict v;
  AxiomReport a1;
  Theorem1Verdict t1;
  Theorem2Verdict t2;
  try {
    v = represents_family(m.graph, fam, o.tol);
    a1 = check_assumption1(fam, ao);
    t1 = theorem1_verdict(fam, ao);
    t2 = theorem2_verdict(fam, ao);
  } catch (const SizeCapError& e) {
    throw InputError{std::string(e.what()) + "; pass --no-size-cap to override"};
  }
  json failures = json::array();
  for (const auto& f : v.failures) failures.push_back({{"clause", f.clause}, {"witness", witness_json(f.witness)}});
  rep.doc()["graph"] = {{"edges", edges_json(m.graph)}};
  rep.doc()["represents"] = v.represents;
  rep.doc()["failures"] = failures;
  rep.doc()["assumption1"] = report_json(a1);
  rep.doc()["theorem1"] = {{"axioms_pass", t1.axioms_pass},
                           {"represents", t1.represents},
                           {"agree", t1.agree},
                           {"causal_graph", t1.dag ? json{{"edges", edges_json(*t1.dag)}} : json(nullptr)}};
  rep.doc()["theorem2"] = {{"axioms_pass", t2.axioms_pass},
                           {"markov_match", t2.markov_match},
                           {"agree", t2.agree},
                           {"max_deviation", t2.max_deviation}};
  rep.line("graph: " + edges_text(m.graph));
  rep.line(std::string("represents family: ") + (v.represents ? "true" : "false"));
  const std::size_t shown = std::min<std::size_t>(v.failures.size(), 20);
  for (std::size_t k = 0; k < shown; ++k) rep.line("  - " + v.failures[k].clause + ": " + v.failures[k].witness.summary);
  if (v.failures.size() > shown) rep.line("  ... " + std::to_string(v.failures.size() - shown) + " more");
  // Both theorems presuppose Assumption 1; without it their verdicts say nothing.
  report_text(rep, a1);
  rep.line("causal graph: " + (t1.dag ? edges_text(*t1.dag) : std::string("(cyclic)")));
  rep.line(std::string("theorem 1: axioms 2-4 ") + (t1.axioms_pass ? "pass" : "fail") + ", representation " +
           (t1.represents ? "holds" : "fails") + ", agree: " + (t1.agree ? "yes" : "NO"));
  rep.line(std::string("theorem 2: axioms 2-4,6 ") + (t2.axioms_pass ? "pass" : "fail") + ", markov round trip " +
           (t2.markov_match ? "matches" : "differs") + ", agree: " + (t2.agree ? "yes" : "NO"));
  if (!t1.agree || !t2.agree) rep.line("WARNING: axiom verdicts disagree with representation verdicts");
  bool ok = v.represents && a1.pass && t1.agree && t2.agree;
  if (ok) rep.mark_verdict();
  return ok ? kOk : kCheckFailed;
}

QueryExpr load_query(const Options& o, const LoadedModel& m) {
  if (o.query.empty()) throw InputError{"--query is required"};
  try {
    QueryExpr q = parse_query(o.query, m);
    q.validate(*m.space);
    return q;
  } catch (const ParseError& e) {
    throw InputError{"query: " + e.message(), e.pos(), e.expected(), "<query>"};
  } catch (const std::invalid_argument& e) {
    throw InputError{e.what(), std::nullopt, {}, "<query>"};
  }
}

std::string query_text(const QueryExpr& q, const LoadedModel& m) {
  return format_expression(Expression{VarSet{}, {{q.target, q.observed, q.intervened}}},
                           PrintContext{m.space.get(), q.values, &m.labels});
}

int cmd_identify(const Options& o, Reporter& rep) {
  LoadedModel m = load(o);
  QueryExpr q = load_query(o, m);
  IdentifyOptions io;
  io.depth_limit = o.depth;
  IdentifyResult r = identify(m.graph, q, io);
  PrintContext ctx{m.space.get(), q.values, &m.labels};
  rep.doc()["query"] = query_text(q, m);
  rep.doc()["identified"] = r.formula.has_value();
  rep.doc()["formula"] = r.formula ? json(format_expression(*r.formula, ctx)) : json(nullptr);
  rep.doc()["trace"] = r.trace;
  rep.doc()["depth"] = r.depth;
  rep.doc()["states"] = r.states;
  rep.doc()["budget_exhausted"] = r.budget_exhausted;
  if (!r.formula) {
    rep.line("not identified within budget (depth " + std::to_string(o.depth) + ", " + std::to_string(r.states) +
             " states)");
    return kCheckFailed;
  }
  rep.line(format_expression(*r.formula, ctx));
  if (o.trace)
    for (const auto& s : r.trace) rep.line("  by " + s);
  if (!o.check) return kOk;
  if (!m.markov) throw InputError{"--check needs CPTs in the model or --seed"};
  JointTable joint = joint_from_markov(*m.markov);
  json cases = json::array();
  double worst = 0.0;
  for (const Assignment& free : enumerate_outcomes(*m.space, q.free_variables())) {
    QueryExpr bound = q;
    bound.values = q.values.merged(free);
    double lhs, rhs;
    try {
      lhs = evaluate(*r.formula, joint, bound.values);
      rhs = do_probability(*m.markov, bound);
    } catch (const ZeroProbabilityError&) {
      continue;
    }
    worst = std::max(worst, std::abs(lhs - rhs));
    std::string label = query_text(bound, m);
    cases.push_back({{"query", label}, {"formula", lhs}, {"do_probability", rhs}});
    char buf[160];
    std::snprintf(buf, sizeof buf, "  check %s: formula %.12g, do-probability %.12g", label.c_str(), lhs, rhs);
    rep.line(buf);
  }
  bool consistent = worst <= o.tol;
  rep.doc()["check"] = {{"consistent", consistent}, {"max_abs_diff", worst}, {"cases", cases}};
  rep.line(std::string("check: ") + (consistent ? "consistent" : "INCONSISTENT"));
  return consistent ? kOk : kCheckFailed;
}

int cmd_eval(const Options& o, Reporter& rep) {
  LoadedModel m = load(o);
  QueryExpr q = load_query(o, m);
  if (!m.markov) throw InputError{"eval needs CPTs in the model or --seed"};
  json results = json::array();
  rep.doc()["query"] = query_text(q, m);
  for (const Assignment& free : enumerate_outcomes(*m.space, q.free_variables())) {
    QueryExpr bound = q;
    bound.values = q.values.merged(free);
    std::string label = query_text(bound, m);
    try {
      double p = do_probability(*m.markov, bound);
      results.push_back({{"query", label}, {"probability", p}});
      char buf[40];
      std::snprintf(buf, sizeof buf, "%.12g", p);
      rep.line(label + " = " + buf);
    } catch (const ZeroProbabilityError& e) {
      results.push_back({{"query", label}, {"probability", nullptr}});
      rep.line(label + " = undefined (" + e.what() + ")");
    }
  }
  rep.doc()["results"] = results;
  return kOk;
}

int cmd_export_dot(const Options& o, Reporter& rep) {
  LoadedModel m = load(o);
  std::string dot = to_dot(m.graph);
  rep.doc()["dot"] = dot;
  rep.line(dot);
  return kOk;
}

void report_error(Reporter& rep, std::ostream& err, const InputError& e) {
  std::string where = e.file;
  if (e.pos) where += (where.empty() ? "" : ":") + std::to_string(e.pos->line) + ":" + std::to_string(e.pos->col);
  std::string msg = e.message;
  if (!e.expected.empty()) {
    msg += " (expected ";
    for (std::size_t k = 0; k < e.expected.size(); ++k) msg += (k ? " or " : "") + e.expected[k];
    msg += ")";
  }
  err << "error: " << (where.empty() ? "" : where + ": ") << msg << "\n";
  json j = {{"message", e.message}};
  if (!e.file.empty()) j["file"] = e.file;
  if (e.pos) {
    j["line"] = e.pos->line;
    j["column"] = e.pos->col;
  }
  j["expected"] = e.expected;
  rep.doc()["error"] = j;
}

}  // namespace

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Discrete causal calculus: axioms, representation, d-separation and identification", "causalc"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  struct Spec {
    const char* name;
    const char* help;
    int (*fn)(const Options&, Reporter&);
    bool query, sets, depth, cap;
  };
  const Spec specs[] = {
      {"validate", "Parse and load a model file", cmd_validate, false, false, false, false},
      {"dsep", "Test d-separation of I and J given K (--sets \"I;J;K\")", cmd_dsep, false, true, false, false},
      {"axioms", "Check Assumption 1 and Axioms 2, 3, 4 and 6 on the belief family", cmd_axioms, false, false, false, true},
      {"discover", "Derive causal sets and the causal graph from the belief family", cmd_discover, false, false, false,
       false},
      {"represent", "Check that the declared graph represents the belief family", cmd_represent, false, false, false,
       true},
      {"identify", "Rewrite a do-query into observational terms", cmd_identify, true, false, true, false},
      {"eval", "Evaluate a do-query numerically", cmd_eval, true, false, false, false},
      {"export-dot", "Print the declared graph in Graphviz syntax", cmd_export_dot, false, false, false, false},
  };
  std::map<CLI::App*, const Spec*> by_app;
  for (const Spec& s : specs) {
    CLI::App* sub = app.add_subcommand(s.name, s.help);
    sub->add_option("--model", o.model_path, "Model file (.cm)")->required();
    sub->add_option("--format", o.format, "Report format")->check(CLI::IsMember({"text", "json"}));
    sub->add_option("--tol", o.tol, "Numeric tolerance")->check(CLI::PositiveNumber);
    sub->add_option("--seed", o.seed, "Seed for random CPTs when the model has none");
    if (s.query) sub->add_option("--query", o.query, "Query such as \"P(L=1|do(E=1))\"")->required();
    if (s.sets) sub->add_option("--sets", o.sets, "Node sets \"I;J;K\"")->required();
    if (s.depth) {
      sub->add_option("--depth", o.depth, "Rewrite depth limit")->check(CLI::NonNegativeNumber);
      sub->add_flag("--check", o.check, "Compare the formula with the do-probability numerically");
      sub->add_flag("--trace", o.trace, "Print the applied rewrites");
    }
    if (s.cap) sub->add_flag("--no-size-cap", o.no_size_cap, "Allow more than 6 variables");
    by_app[sub] = &s;
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    std::ostringstream so, se;
    int code = app.exit(e, so, se);
    out << so.str();
    err << se.str();
    return code == 0 ? kOk : kUsage;
  }

  const Spec* spec = nullptr;
  std::string name;
  for (CLI::App* sub : app.get_subcommands()) {
    spec = by_app.at(sub);
    name = sub->get_name();
  }
  Reporter rep(name, o, out);
  try {
    return rep.finish(spec->fn(o, rep));
  } catch (const InputError& e) {
    report_error(rep, err, e);
    return rep.finish(kUsage);
  } catch (const ParseError& e) {
    report_error(rep, err, InputError{e.message(), e.pos(), e.expected(), o.model_path});
    return rep.finish(kUsage);
  } catch (const std::exception& e) {
    report_error(rep, err, InputError{e.what()});
    return rep.finish(kUsage);
  }
}

}  // namespace causal::cli
