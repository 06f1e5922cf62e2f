#include "causal/identify.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <tuple>
#include <unordered_set>

namespace causal {

bool Expression::do_free() const {
  return std::all_of(factors.begin(), factors.end(), [](const ProbTerm& t) { return t.intervened.empty(); });
}

VarSet Expression::variables() const {
  VarSet out = summed;
  for (const auto& t : factors) out |= t.target | t.given | t.intervened;
  return out;
}

namespace {

std::vector<std::size_t> topo_rank(const Dag& g) {
  std::vector<std::size_t> rank(g.universe_size(), 0);
  auto order = g.topological_order();
  for (std::size_t k = 0; k < order.size(); ++k) rank[order[k]] = k;
  return rank;
}

void canonicalize_with(Expression& e, const std::vector<std::size_t>& rank) {
  auto key = [&](const ProbTerm& t) {
    std::size_t r = 0;
    for (Var v : t.target) r = std::max(r, rank[v]);
    return r;
  };
  std::sort(e.factors.begin(), e.factors.end(), [&](const ProbTerm& a, const ProbTerm& b) {
    std::size_t ra = key(a), rb = key(b);
    if (ra != rb) return ra > rb;
    return a < b;
  });
}

std::string lower(std::string s) {
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

std::string symbol(Var v, const PrintContext& ctx) {
  const std::string& name = ctx.space->name(v);
  if (ctx.values.binds(v)) {
    std::size_t value = ctx.values.get(v);
    if (ctx.labels && v < ctx.labels->size() && value < (*ctx.labels)[v].size())
      return name + "=" + (*ctx.labels)[v][value];
    return name + "=" + std::to_string(value);
  }
  std::string low = lower(name);
  return low == name ? name : name + "=" + low;
}

std::string join(VarSet s, const PrintContext& ctx) {
  std::string out;
  for (Var v : s) {
    if (!out.empty()) out += ",";
    out += symbol(v, ctx);
  }
  return out;
}

std::string format_term(const ProbTerm& t, const PrintContext& ctx) {
  std::string out = "P(" + join(t.target, ctx);
  std::string cond = join(t.given, ctx);
  if (!t.intervened.empty()) cond += (cond.empty() ? "" : ",") + std::string("do(") + join(t.intervened, ctx) + ")";
  if (!cond.empty()) out += "|" + cond;
  return out + ")";
}

std::string state_key(const Expression& e) {
  std::string key;
  auto put = [&](VarSet s) {
    VarSet::Mask m = s.mask();
    key.append(reinterpret_cast<const char*>(&m), sizeof m);
  };
  put(e.summed);
  for (const auto& t : e.factors) {
    put(t.target);
    put(t.given);
    put(t.intervened);
  }
  return key;
}

// Leaves that are not of the form P(v | Pa(v)).
std::size_t non_parent_leaves(const Expression& e, const Dag& g) {
  std::size_t n = 0;
  for (const auto& t : e.factors)
    if (t.target.size() != 1 || !t.intervened.empty() || t.given != g.parents(t.target.lowest())) ++n;
  return n;
}

class Search {
 public:
  Search(const Dag& g, const QueryExpr& q) : g_(g), query_vars_(q.target | q.observed | q.intervened) {}

  struct Successor {
    Expression e;
    std::string move;
  };

  std::vector<Successor> expand(const Expression& e, const PrintContext& ctx) {
    std::vector<Successor> out;
    const VarSet used = e.variables() | query_vars_;
    for (std::size_t f = 0; f < e.factors.size(); ++f) {
      const ProbTerm t = e.factors[f];
      auto replace = [&](std::vector<ProbTerm> with, VarSet summed, std::string move) {
        Expression n = e;
        n.factors.erase(n.factors.begin() + static_cast<std::ptrdiff_t>(f));
        n.factors.insert(n.factors.end(), with.begin(), with.end());
        n.summed = summed;
        out.push_back({std::move(n), std::move(move) + " in " + format_term(t, ctx)});
      };
      if (!t.intervened.empty()) {
        for_each_subset(t.intervened, [&](VarSet Z) {
          if (Z.empty()) return;
          const VarSet rest = t.intervened - Z;
          if (rule(2, t.target, rest, Z, t.given))
            replace({{t.target, t.given, rest}}, e.summed, "rule 2 deletes do(" + join(Z, ctx) + ")");
          if (rule(1, t.target, rest, Z, t.given))
            replace({{t.target, t.given | Z, rest}}, e.summed, "rule 1 exchanges do(" + join(Z, ctx) + ")");
        });
      }
      for_each_subset(t.given, [&](VarSet Z) {
        if (Z.empty()) return;
        if (rule(1, t.target, t.intervened, Z, t.given - Z))
          replace({{t.target, t.given - Z, t.intervened | Z}}, e.summed,
                  "rule 1 turns " + join(Z, ctx) + " into do(" + join(Z, ctx) + ")");
      });
      if (t.target.size() >= 2) {
        for_each_subset(t.target, [&](VarSet A) {
          if (A.empty() || A == t.target) return;
          const VarSet B = t.target - A;
          replace({{A, t.given | B, t.intervened}, {B, t.given, t.intervened}}, e.summed,
                  "chain rule splits " + join(A, ctx) + " from " + join(B, ctx));
        });
      }
      const VarSet mentioned = t.target | t.given | t.intervened;
      for (Var w : g_.ancestors_of(mentioned) - used)
        replace({{t.target.with(w), t.given, t.intervened}}, e.summed.with(w),
                "total probability over " + lower(g_.name(w)));
      for (Var w : e.summed & t.target) {
        bool elsewhere = false;
        for (std::size_t o = 0; o < e.factors.size(); ++o) {
          const ProbTerm& u = e.factors[o];
          if (o != f && (u.target | u.given | u.intervened).contains(w)) elsewhere = true;
        }
        if (elsewhere) continue;
        std::vector<ProbTerm> with;
        if (t.target.size() > 1) with.push_back({t.target.without(w), t.given, t.intervened});
        replace(with, e.summed.without(w), "sums out " + lower(g_.name(w)));
      }
    }
    for (std::size_t a = 0; a < e.factors.size(); ++a) {
      for (std::size_t b = 0; b < e.factors.size(); ++b) {
        if (a == b) continue;
        const ProbTerm& ta = e.factors[a];
        const ProbTerm& tb = e.factors[b];
        if (ta.intervened != tb.intervened || ta.target.intersects(tb.target)) continue;
        if (tb.given.intersects(tb.target) || ta.given != (tb.target | tb.given)) continue;
        Expression n = e;
        ProbTerm merged{ta.target | tb.target, tb.given, ta.intervened};
        n.factors.erase(n.factors.begin() + static_cast<std::ptrdiff_t>(std::max(a, b)));
        n.factors.erase(n.factors.begin() + static_cast<std::ptrdiff_t>(std::min(a, b)));
        n.factors.push_back(merged);
        out.push_back({std::move(n), "chain rule merges " + format_term(ta, ctx) + " * " + format_term(tb, ctx)});
      }
    }
    return out;
  }

 private:
  bool rule(int which, VarSet I0, VarSet I1, VarSet I2, VarSet I3) {
    auto key = std::make_tuple(which, I0.mask(), I1.mask(), I2.mask(), I3.mask());
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    bool ok = which == 1 ? rule1_applies(g_, I0, I1, I2, I3) : rule2_applies(g_, I0, I1, I2, I3);
    memo_.emplace(key, ok);
    return ok;
  }

  const Dag& g_;
  VarSet query_vars_;
  std::map<std::tuple<int, VarSet::Mask, VarSet::Mask, VarSet::Mask, VarSet::Mask>, bool> memo_;
};

}  // namespace

void canonicalize(Expression& e, const Dag& g) { canonicalize_with(e, topo_rank(g)); }

Expression normal_form(Expression e, const Dag& g) {
  canonicalize(e, g);
  return e;
}

std::string format_expression(const Expression& e, const PrintContext& ctx) {
  std::string body;
  for (const auto& t : e.factors) {
    if (!body.empty()) body += " * ";
    body += format_term(t, ctx);
  }
  if (body.empty()) body = "1";
  if (e.summed.empty()) return body;
  std::string idx;
  for (Var v : e.summed) {
    if (!idx.empty()) idx += ",";
    idx += lower(ctx.space->name(v));
  }
  return "sum_" + idx + "[ " + body + " ]";
}

IdentifyResult identify(const Dag& g, const QueryExpr& q, const IdentifyOptions& opts) {
  if (q.target.empty()) throw std::invalid_argument("identify: empty target");
  if (q.target.intersects(q.observed) || q.target.intersects(q.intervened) || q.observed.intersects(q.intervened))
    throw std::invalid_argument("identify: target, observed and intervened variables must be disjoint");
  if (!(q.target | q.observed | q.intervened).subset_of(g.nodes()))
    throw std::invalid_argument("identify: query mentions a variable outside the graph");

  // Trace text uses bare names; the caller re-renders the final formula.
  VariableSpace names(g.names(), std::vector<std::size_t>(g.universe_size(), 2));
  PrintContext ctx{&names, q.values.restrict(q.target | q.observed | q.intervened), nullptr};

  const auto rank = topo_rank(g);
  Expression start{VarSet{}, {{q.target, q.observed, q.intervened}}};
  canonicalize_with(start, rank);
  IdentifyResult result;
  result.states = 1;
  if (start.do_free()) {
    result.formula = start;
    return result;
  }

  struct Node {
    Expression e;
    std::size_t parent;
    std::string move;
    std::size_t depth;
  };
  std::vector<Node> nodes{{start, 0, "", 0}};
  std::unordered_set<std::string> seen{state_key(start)};
  std::vector<std::size_t> frontier{0};
  Search search(g, q);

  struct Best {
    std::size_t score, depth, factors;
    std::string text;
    std::size_t node;
  };
  std::optional<Best> best;

  for (std::size_t depth = 1; depth <= opts.depth_limit && !frontier.empty(); ++depth) {
    std::vector<std::size_t> next;
    for (std::size_t idx : frontier) {
      auto succ = search.expand(nodes[idx].e, ctx);
      for (auto& s : succ) {
        canonicalize_with(s.e, rank);
        if (!seen.insert(state_key(s.e)).second) continue;
        nodes.push_back({std::move(s.e), idx, std::move(s.move), depth});
        const std::size_t id = nodes.size() - 1;
        const Expression& e = nodes[id].e;
        if (e.do_free()) {
          Best cand{non_parent_leaves(e, g), depth, e.factors.size(), format_expression(e, ctx), id};
          if (!best || std::tie(cand.score, cand.depth, cand.factors, cand.text) <
                           std::tie(best->score, best->depth, best->factors, best->text))
            best = cand;
        } else {
          next.push_back(id);
        }
        if (nodes.size() >= opts.state_budget) {
          result.budget_exhausted = true;
          break;
        }
      }
      if (result.budget_exhausted) break;
    }
    if (result.budget_exhausted || (best && best->score == 0)) break;
    frontier = std::move(next);
  }
  result.states = nodes.size();
  if (!best) return result;
  result.formula = nodes[best->node].e;
  result.depth = nodes[best->node].depth;
  for (std::size_t id = best->node; id != 0; id = nodes[id].parent) result.trace.push_back(nodes[id].move);
  std::reverse(result.trace.begin(), result.trace.end());
  return result;
}

double evaluate(const Expression& e, const JointTable& joint, const Assignment& values) {
  if (!e.do_free()) throw std::invalid_argument("evaluate: expression still contains do()");
  const VarSet needed = e.variables() - e.summed;
  if (!needed.subset_of(values.domain()))
    throw std::invalid_argument("evaluate: unbound variable " + joint.space().format(needed - values.domain()));
  double total = 0.0;
  for (const Assignment& s : enumerate_outcomes(joint.space(), e.summed)) {
    Assignment x = values.restrict(needed).merged(s);
    double prod = 1.0;
    for (const auto& t : e.factors) {
      prod *= joint.conditional_probability(x.restrict(t.target), x.restrict(t.given));
      if (prod == 0.0) break;
    }
    total += prod;
  }
  return total;
}

}  // namespace causal
