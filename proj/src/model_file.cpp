#include "causal/model_file.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>

#include "lexer.hpp"

namespace causal {

using detail::Cursor;
using detail::Tok;

namespace {

std::string format_what(SourcePos pos, const std::string& message, const std::vector<std::string>& expected) {
  std::string out = std::to_string(pos.line) + ":" + std::to_string(pos.col) + ": " + message;
  if (!expected.empty()) {
    out += " (expected ";
    for (std::size_t k = 0; k < expected.size(); ++k) out += (k ? " or " : "") + expected[k];
    out += ")";
  }
  return out;
}

Bindings parse_bindings(Cursor& cur) {
  Bindings out;
  if (cur.peek().kind != Tok::name) return out;
  while (true) {
    const auto& name = cur.expect_name("variable name");
    cur.expect_punct("=");
    const auto& value = cur.peek();
    if (value.kind != Tok::name && value.kind != Tok::number)
      cur.fail("unexpected " + detail::describe(value), {"value"});
    out.emplace_back(name.text, cur.next().text);
    if (!cur.at_punct(",")) break;
    cur.next();
  }
  return out;
}

void parse_statements(Cursor& cur, ModelFile& m) {
  cur.expect_keyword("model");
  m.name = cur.expect_name("model name").text;
  while (!cur.at_end()) {
    if (cur.at_name("var")) {
      VarDecl d;
      d.pos = cur.next().pos;
      d.name = cur.expect_name("variable name").text;
      cur.expect_punct(":");
      d.card = cur.expect_int();
      if (cur.at_name("labels")) {
        cur.next();
        d.labels.push_back(cur.expect_name("label").text);
        while (cur.peek().kind == Tok::name && !cur.at_name("var") && !cur.at_name("edge") &&
               !cur.at_name("cpt") && !cur.at_name("belief") && !cur.at_name("generate"))
          d.labels.push_back(cur.next().text);
      }
      m.vars.push_back(std::move(d));
    } else if (cur.at_name("edge")) {
      EdgeDecl e;
      e.pos = cur.next().pos;
      e.tail = cur.expect_name("variable name").text;
      cur.expect_punct("->");
      e.head = cur.expect_name("variable name").text;
      m.edges.push_back(std::move(e));
    } else if (cur.at_name("cpt")) {
      CptDecl c;
      c.pos = cur.next().pos;
      c.node = cur.expect_name("variable name").text;
      if (cur.at_punct("|")) {
        cur.next();
        c.parents.push_back(cur.expect_name("parent name").text);
        while (cur.peek().kind == Tok::name) c.parents.push_back(cur.next().text);
      }
      cur.expect_punct("{");
      do {
        CptRow r;
        r.pos = cur.peek().pos;
        r.parents = parse_bindings(cur);
        cur.expect_punct(":");
        r.probs.push_back(cur.expect_number());
        while (cur.peek().kind == Tok::number) r.probs.push_back(cur.expect_number());
        c.rows.push_back(std::move(r));
      } while (!cur.at_punct("}") && (cur.peek().kind == Tok::name || cur.at_punct(":")));
      cur.expect_punct("}");
      m.cpts.push_back(std::move(c));
    } else if (cur.at_name("belief")) {
      BeliefDecl b;
      b.pos = cur.next().pos;
      cur.expect_keyword("do");
      cur.expect_punct("(");
      b.policy = parse_bindings(cur);
      cur.expect_punct(")");
      cur.expect_punct("{");
      do {
        BeliefCell cell;
        cell.pos = cur.peek().pos;
        cell.outcome = parse_bindings(cur);
        cur.expect_punct(":");
        cell.mass = cur.expect_number();
        b.cells.push_back(std::move(cell));
      } while (!cur.at_punct("}") && (cur.peek().kind == Tok::name || cur.at_punct(":")));
      cur.expect_punct("}");
      m.beliefs.push_back(std::move(b));
    } else if (cur.at_name("generate")) {
      cur.next();
      cur.expect_punct(":");
      cur.expect_keyword("markov");
      m.generate_markov = true;
    } else {
      cur.fail("unexpected " + detail::describe(cur.peek()),
               {"'var'", "'edge'", "'cpt'", "'belief'", "'generate'", "end of input"});
    }
  }
}

struct Resolver {
  const ModelFile& m;
  std::map<std::string, std::size_t> index;

  explicit Resolver(const ModelFile& file) : m(file) {
    for (std::size_t v = 0; v < m.vars.size(); ++v) index[m.vars[v].name] = v;
  }

  std::size_t var(const std::string& name, SourcePos pos) const {
    auto it = index.find(name);
    if (it == index.end()) throw ParseError(pos, "unknown variable '" + name + "'");
    return it->second;
  }

  std::size_t value(std::size_t v, const std::string& token, SourcePos pos) const {
    const VarDecl& d = m.vars[v];
    auto it = std::find(d.labels.begin(), d.labels.end(), token);
    if (it != d.labels.end()) return static_cast<std::size_t>(it - d.labels.begin());
    if (!token.empty() && token.find_first_not_of("0123456789") == std::string::npos && token.size() < 10) {
      std::size_t k = std::stoul(token);
      if (k < d.card) return k;
    }
    throw ParseError(pos, "invalid value '" + token + "' for variable '" + d.name + "'");
  }

  Assignment assignment(const Bindings& b, SourcePos pos) const {
    Assignment a;
    for (const auto& [name, token] : b) {
      std::size_t v = var(name, pos);
      if (a.binds(v)) throw ParseError(pos, "variable '" + name + "' bound twice");
      a.set(v, value(v, token, pos));
    }
    return a;
  }
};

void check_semantics(const ModelFile& m) {
  Resolver r(m);
  std::set<std::string> names;
  for (const auto& d : m.vars) {
    if (!names.insert(d.name).second) throw ParseError(d.pos, "duplicate variable '" + d.name + "'");
    if (d.card < 2) throw ParseError(d.pos, "variable '" + d.name + "' needs at least 2 values");
    if (!d.labels.empty() && d.labels.size() != d.card)
      throw ParseError(d.pos, "variable '" + d.name + "' has " + std::to_string(d.labels.size()) +
                                  " labels for " + std::to_string(d.card) + " values");
    std::set<std::string> labels(d.labels.begin(), d.labels.end());
    if (labels.size() != d.labels.size()) throw ParseError(d.pos, "duplicate label for '" + d.name + "'");
  }
  if (m.vars.size() > kMaxVariables) throw ParseError(m.vars.back().pos, "too many variables");
  std::map<std::size_t, std::set<std::size_t>> parents;
  for (const auto& e : m.edges) {
    std::size_t t = r.var(e.tail, e.pos), h = r.var(e.head, e.pos);
    if (t == h) throw ParseError(e.pos, "self-loop on '" + e.tail + "'");
    if (!parents[h].insert(t).second) throw ParseError(e.pos, "duplicate edge " + e.tail + " -> " + e.head);
  }
  std::set<std::size_t> seen_cpt;
  for (const auto& c : m.cpts) {
    std::size_t i = r.var(c.node, c.pos);
    if (!seen_cpt.insert(i).second) throw ParseError(c.pos, "second CPT for '" + c.node + "'");
    std::set<std::size_t> pa;
    for (const auto& p : c.parents)
      if (!pa.insert(r.var(p, c.pos)).second) throw ParseError(c.pos, "parent '" + p + "' listed twice");
    if (pa != parents[i])
      throw ParseError(c.pos, "CPT parents of '" + c.node + "' do not match the declared edges");
    std::size_t nrows = 1;
    for (std::size_t p : pa) nrows *= m.vars[p].card;
    std::set<std::vector<std::size_t>> rows_seen;
    for (const auto& row : c.rows) {
      Assignment a = r.assignment(row.parents, row.pos);
      std::vector<std::size_t> key;
      for (std::size_t p : pa) {
        if (!a.binds(p)) throw ParseError(row.pos, "row does not bind parent '" + m.vars[p].name + "'");
        key.push_back(a.get(p));
      }
      if (a.domain().size() != pa.size()) throw ParseError(row.pos, "row binds a variable that is not a parent");
      if (!rows_seen.insert(key).second) throw ParseError(row.pos, "duplicate row in CPT of '" + c.node + "'");
      if (row.probs.size() != m.vars[i].card)
        throw ParseError(row.pos, "row has " + std::to_string(row.probs.size()) + " entries but '" + c.node +
                                      "' has " + std::to_string(m.vars[i].card) + " values");
      double sum = 0.0;
      for (double p : row.probs) {
        if (p < 0.0) throw ParseError(row.pos, "negative probability in row");
        sum += p;
      }
      if (std::abs(sum - 1.0) > 1e-9) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.12g", sum);
        throw ParseError(row.pos, "row of CPT '" + c.node + "' sums to " + buf + ", not 1");
      }
    }
    if (rows_seen.size() != nrows)
      throw ParseError(c.pos, "CPT of '" + c.node + "' has " + std::to_string(rows_seen.size()) + " rows, expected " +
                                  std::to_string(nrows));
  }
  std::set<std::vector<std::size_t>> policies;
  for (const auto& b : m.beliefs) {
    Assignment p = r.assignment(b.policy, b.pos);
    std::vector<std::size_t> key(m.vars.size(), 0);
    for (Var v : p.domain()) key[v] = p.get(v) + 1;
    if (!policies.insert(key).second) throw ParseError(b.pos, "duplicate belief block for this policy");
    std::size_t ncells = 1;
    for (std::size_t v = 0; v < m.vars.size(); ++v)
      if (!p.binds(v)) ncells *= m.vars[v].card;
    std::set<std::vector<std::size_t>> cells;
    double sum = 0.0;
    for (const auto& cell : b.cells) {
      Assignment a = r.assignment(cell.outcome, cell.pos);
      std::vector<std::size_t> ck;
      for (std::size_t v = 0; v < m.vars.size(); ++v) {
        if (p.binds(v)) {
          if (a.binds(v)) throw ParseError(cell.pos, "cell binds intervened variable '" + m.vars[v].name + "'");
          continue;
        }
        if (!a.binds(v)) throw ParseError(cell.pos, "cell does not bind '" + m.vars[v].name + "'");
        ck.push_back(a.get(v));
      }
      if (!cells.insert(ck).second) throw ParseError(cell.pos, "duplicate cell");
      if (cell.mass < 0.0) throw ParseError(cell.pos, "negative probability");
      sum += cell.mass;
    }
    if (cells.size() != ncells)
      throw ParseError(b.pos, "belief block has " + std::to_string(cells.size()) + " cells, expected " +
                                  std::to_string(ncells));
    if (std::abs(sum - 1.0) > 1e-9) throw ParseError(b.pos, "belief block masses do not sum to 1");
  }
}

std::string num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  std::string s = buf;
  // Prefer the shortest text that reads back to the same double.
  for (int prec = 1; prec < 17; ++prec) {
    std::snprintf(buf, sizeof buf, "%.*g", prec, x);
    if (std::strtod(buf, nullptr) == x) return buf;
  }
  return s;
}

std::string bindings_text(const Bindings& b) {
  std::string out;
  for (const auto& [n, v] : b) out += (out.empty() ? "" : ",") + n + "=" + v;
  return out;
}

}  // namespace

ParseError::ParseError(SourcePos pos, std::string message, std::vector<std::string> expected)
    : std::runtime_error(format_what(pos, message, expected)),
      pos_(pos),
      message_(std::move(message)),
      expected_(std::move(expected)) {}

ModelFile parse_model(std::string_view text) {
  Cursor cur(detail::tokenize(text));
  ModelFile m;
  parse_statements(cur, m);
  if (m.vars.empty()) throw ParseError({1, 1}, "model declares no variables", {"'var'"});
  check_semantics(m);
  return m;
}

bool same_content(const ModelFile& a, const ModelFile& b) {
  if (a.name != b.name || a.generate_markov != b.generate_markov) return false;
  if (a.vars.size() != b.vars.size() || a.edges.size() != b.edges.size() || a.cpts.size() != b.cpts.size() ||
      a.beliefs.size() != b.beliefs.size())
    return false;
  for (std::size_t k = 0; k < a.vars.size(); ++k)
    if (a.vars[k].name != b.vars[k].name || a.vars[k].card != b.vars[k].card || a.vars[k].labels != b.vars[k].labels)
      return false;
  for (std::size_t k = 0; k < a.edges.size(); ++k)
    if (a.edges[k].tail != b.edges[k].tail || a.edges[k].head != b.edges[k].head) return false;
  for (std::size_t k = 0; k < a.cpts.size(); ++k) {
    const auto &x = a.cpts[k], &y = b.cpts[k];
    if (x.node != y.node || x.parents != y.parents || x.rows.size() != y.rows.size()) return false;
    for (std::size_t r = 0; r < x.rows.size(); ++r)
      if (x.rows[r].parents != y.rows[r].parents || x.rows[r].probs != y.rows[r].probs) return false;
  }
  for (std::size_t k = 0; k < a.beliefs.size(); ++k) {
    const auto &x = a.beliefs[k], &y = b.beliefs[k];
    if (x.policy != y.policy || x.cells.size() != y.cells.size()) return false;
    for (std::size_t c = 0; c < x.cells.size(); ++c)
      if (x.cells[c].outcome != y.cells[c].outcome || x.cells[c].mass != y.cells[c].mass) return false;
  }
  return true;
}

std::string print_model(const ModelFile& m) {
  std::string out = "model " + m.name + "\n";
  for (const auto& d : m.vars) {
    out += "var " + d.name + " : " + std::to_string(d.card);
    if (!d.labels.empty()) {
      out += " labels";
      for (const auto& l : d.labels) out += " " + l;
    }
    out += "\n";
  }
  for (const auto& e : m.edges) out += "edge " + e.tail + " -> " + e.head + "\n";
  for (const auto& c : m.cpts) {
    out += "cpt " + c.node;
    if (!c.parents.empty()) {
      out += " |";
      for (const auto& p : c.parents) out += " " + p;
    }
    out += " {\n";
    for (const auto& r : c.rows) {
      out += "  " + bindings_text(r.parents) + (r.parents.empty() ? ":" : " :");
      for (double p : r.probs) out += " " + num(p);
      out += "\n";
    }
    out += "}\n";
  }
  for (const auto& b : m.beliefs) {
    out += "belief do(" + bindings_text(b.policy) + ") {\n";
    for (const auto& c : b.cells)
      out += "  " + bindings_text(c.outcome) + (c.outcome.empty() ? ": " : " : ") + num(c.mass) + "\n";
    out += "}\n";
  }
  if (m.generate_markov) out += "generate: markov\n";
  return out;
}

std::size_t LoadedModel::value_index(Var v, std::string_view token) const {
  const auto& l = labels.at(v);
  auto it = std::find(l.begin(), l.end(), token);
  if (it != l.end()) return static_cast<std::size_t>(it - l.begin());
  std::string t(token);
  if (!t.empty() && t.size() < 10 && t.find_first_not_of("0123456789") == std::string::npos) {
    std::size_t k = std::stoul(t);
    if (k < space->card(v)) return k;
  }
  throw std::invalid_argument("invalid value '" + t + "' for variable '" + space->name(v) + "'");
}

std::string LoadedModel::value_label(Var v, std::size_t value) const {
  const auto& l = labels.at(v);
  return value < l.size() ? l[value] : std::to_string(value);
}

LoadedModel load_model(const ModelFile& file, std::optional<std::uint64_t> seed) {
  check_semantics(file);
  Resolver r(file);
  LoadedModel out;
  out.file = file;
  std::vector<std::string> names;
  std::vector<std::size_t> cards;
  for (const auto& d : file.vars) {
    names.push_back(d.name);
    cards.push_back(d.card);
    out.labels.push_back(d.labels);
  }
  out.space = std::make_shared<const VariableSpace>(names, cards);
  out.graph = Dag(names);
  for (const auto& e : file.edges) {
    try {
      out.graph.add_edge(r.var(e.tail, e.pos), r.var(e.head, e.pos));
    } catch (const CycleError& err) {
      throw ParseError(e.pos, err.what());
    }
  }

  if (!file.cpts.empty()) {
    std::vector<Cpt> cpts(names.size());
    std::vector<bool> have(names.size(), false);
    for (const auto& c : file.cpts) {
      Var i = r.var(c.node, c.pos);
      have[i] = true;
      Cpt& cpt = cpts[i];
      cpt.node = i;
      cpt.parents = out.graph.parents(i);
      OutcomeGrid rows(*out.space, cpt.parents);
      cpt.rows.assign(rows.size() * cards[i], 0.0);
      for (const auto& row : c.rows) {
        std::size_t at = rows.index(r.assignment(row.parents, row.pos));
        std::copy(row.probs.begin(), row.probs.end(), cpt.rows.begin() + static_cast<std::ptrdiff_t>(at * cards[i]));
      }
    }
    for (Var v = 0; v < names.size(); ++v)
      if (!have[v]) throw ParseError(file.cpts.front().pos, "no CPT for variable '" + names[v] + "'");
    out.markov = MarkovModel(out.space, out.graph, std::move(cpts));
  } else if (seed) {
    out.markov = random_markov(out.space, out.graph, *seed);
  }

  if (!file.beliefs.empty()) {
    std::vector<std::optional<JointTable>> tables(policy_count(*out.space));
    for (const auto& b : file.beliefs) {
      Assignment p = r.assignment(b.policy, b.pos);
      VarSet dom = out.space->all() - p.domain();
      OutcomeGrid g(*out.space, dom);
      std::vector<double> mass(g.size(), 0.0);
      for (const auto& cell : b.cells) mass[g.index(r.assignment(cell.outcome, cell.pos))] = cell.mass;
      tables[policy_code(*out.space, p)] = JointTable::normalized(out.space, dom, std::move(mass));
    }
    std::optional<BeliefFamily> generated;
    for (std::size_t code = 0; code < tables.size(); ++code) {
      if (tables[code]) continue;
      if (!file.generate_markov)
        throw ParseError(file.beliefs.front().pos, "belief blocks do not cover do(" +
                                                       policy_at(*out.space, code).format(*out.space) +
                                                       "); add 'generate: markov' to fill the rest");
      if (!out.markov) throw ParseError(file.beliefs.front().pos, "'generate: markov' needs CPTs or --seed");
      tables[code] = truncated_factorization(*out.markov, policy_at(*out.space, code));
    }
    std::vector<JointTable> all;
    for (auto& t : tables) all.push_back(std::move(*t));
    out.family = BeliefFamily(out.space, std::move(all));
  } else if (out.markov && out.markov->strictly_positive()) {
    out.family = family_from_markov(*out.markov);
  }
  return out;
}

LoadedModel load_model_text(std::string_view text, std::optional<std::uint64_t> seed) {
  return load_model(parse_model(text), seed);
}

}  // namespace causal
