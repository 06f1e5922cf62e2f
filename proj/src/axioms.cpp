#include "causal/axioms.hpp"

#include <cmath>
#include <string>

namespace causal {

namespace {

void require_cap(const BeliefFamily& fam, const AxiomOptions& opts) {
  if (fam.space().size() > opts.max_variables)
    throw SizeCapError("axiom checks are capped at " + std::to_string(opts.max_variables) +
                       " variables (model has " + std::to_string(fam.space().size()) + ")");
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

}  // namespace

void AxiomReport::add(Witness w, std::size_t max_witnesses) {
  pass = false;
  ++violation_count;
  if (violations.size() < max_witnesses) violations.push_back(std::move(w));
}

double intervention_ci_deviation(const BeliefFamily& fam, Var i, VarSet J, VarSet K, VarSet H) {
  const VarSet I = VarSet::single(i);
  if (I.intersects(J | K | H) || J.intersects(K | H) || K.intersects(H))
    throw std::invalid_argument("intervention independence: sets must be pairwise disjoint");
  double dev = 0.0;
  for (const Assignment& xh : enumerate_outcomes(fam.space(), H))
    dev = std::max(dev, ci_deviation(fam.table(xh), I, J, K));
  return dev;
}

bool check_intervention_ci(const BeliefFamily& fam, Var i, VarSet J, VarSet K, VarSet H, double tol) {
  return intervention_ci_deviation(fam, i, J, K, H) <= tol;
}

AxiomReport check_axiom2(const BeliefFamily& fam, const AxiomOptions& opts) {
  require_cap(fam, opts);
  const VariableSpace& space = fam.space();
  AxiomReport r{"axiom2"};
  r.notes.push_back("checked as acyclicity of the causes relation");
  auto ca = causal_relation(fam, opts.tol);
  auto cycle = find_shortest_cycle(space.all(), ca);
  if (!cycle.empty()) {
    std::string text;
    for (Var v : cycle) text += space.name(v) + " -> ";
    text += space.name(cycle.front());
    VarSet members;
    for (Var v : cycle) members.insert(v);
    r.add({"every member of " + space.format(members) + " has a cause inside the set: " + text,
           {{"cycle", text}}, std::nullopt, std::nullopt},
          opts.max_witnesses);
  }
  return r;
}

AxiomReport check_axiom3(const BeliefFamily& fam, const Dag& g, const AxiomOptions& opts) {
  require_cap(fam, opts);
  const VariableSpace& space = fam.space();
  AxiomReport r{"axiom3"};
  r.notes.push_back("dependence means deviation > " + fmt(opts.dependence_threshold));
  for (Var i : space.all()) {
    const VarSet ca = g.parents(i);
    for_each_subset(ca, [&](VarSet J) {
      for_each_subset(space.all().without(i) - J, [&](VarSet H) {
        const VarSet rest = ca - (J | H);
        if (rest.empty()) return;
        double dev = intervention_ci_deviation(fam, i, rest, J, H);
        if (dev > opts.dependence_threshold) return;
        r.add({space.name(i) + " is independent of " + space.format(rest) + " given " + space.format(J) +
                   " under do(" + space.format(H) + ")",
               {{"i", space.name(i)}, {"J", space.format(J)}, {"H", space.format(H)},
                {"dependent_set", space.format(rest)}, {"deviation", fmt(dev)}},
               dev, opts.dependence_threshold},
              opts.max_witnesses);
      });
    });
  }
  return r;
}

AxiomReport check_axiom4(const BeliefFamily& fam, const Dag& g, const AxiomOptions& opts) {
  require_cap(fam, opts);
  const VariableSpace& space = fam.space();
  AxiomReport r{"axiom4"};
  r.notes.push_back("J excludes descendants of i and j in the K-truncated graph");
  for (Var i : space.all()) {
    for (Var j : space.all()) {
      if (j <= i || g.has_edge(i, j) || g.has_edge(j, i)) continue;
      const VarSet others = space.all() - VarSet{i, j};
      for_each_subset(others, [&](VarSet K) {
        Dag gk = truncate_remove(g, K);
        VarSet desc = gk.descendants_of(VarSet{i, j});
        for_each_subset(others - K - desc, [&](VarSet J) {
          VarSet cond = (g.parents(i) | g.parents(j) | J) - K;
          double dev = intervention_ci_deviation(fam, i, VarSet::single(j), cond, K);
          if (dev <= opts.tol) return;
          r.add({space.name(i) + " and " + space.name(j) + " are dependent given " + space.format(cond) +
                     " under do(" + space.format(K) + ")",
                 {{"i", space.name(i)}, {"j", space.name(j)}, {"K", space.format(K)},
                  {"J", space.format(J)}, {"given", space.format(cond)}, {"deviation", fmt(dev)}},
                 dev, opts.tol},
                opts.max_witnesses);
        });
      });
    }
  }
  return r;
}

AxiomReport check_axiom6(const BeliefFamily& fam, const Dag& g, const AxiomOptions& opts) {
  require_cap(fam, opts);
  const VariableSpace& space = fam.space();
  AxiomReport r{"axiom6"};
  const JointTable& mu = fam.observational();
  for (Var i : space.all()) {
    const VarSet ca = g.parents(i);
    const VarSet fam_vars = ca.with(i);
    OutcomeGrid cells(space, fam_vars);
    auto lhs = local_conditional(mu, i, ca);
    for_each_subset(space.all().without(i), [&](VarSet J) {
      if (J.empty()) return;
      const VarSet rest = ca - J;
      OutcomeGrid rcells(space, rest.with(i));
      for (const Assignment& xj : enumerate_outcomes(space, J)) {
        auto rhs = local_conditional(fam.table(xj), i, rest);
        for (std::size_t c = 0; c < cells.size(); ++c) {
          Assignment x = cells.at(c);
          if (!x.consistent_with(xj)) continue;
          double a = lhs[c], b = rhs[rcells.index(x)];
          if (std::abs(a - b) <= opts.tol) continue;
          r.add({"mu(" + space.name(i) + " | causes) differs under do(" + xj.format(space) + ")",
                 {{"i", space.name(i)}, {"J", space.format(J)}, {"do", xj.format(space)},
                  {"cell", x.format(space)}},
                 a, b},
                opts.max_witnesses);
        }
      }
    });
  }
  return r;
}

AxiomReport check_assumption1(const BeliefFamily& fam, const AxiomOptions& opts) {
  require_cap(fam, opts);
  const VariableSpace& space = fam.space();
  AxiomReport r{"assumption1"};
  r.notes.push_back("item i (expected-utility beliefs) holds by construction");
  r.notes.push_back("item iv (one utility for every policy) holds by construction");
  for (std::size_t code = 0; code < fam.policy_count(); ++code) {
    const JointTable& t = fam.table_at(code);
    OutcomeGrid g = t.grid();
    for (std::size_t c = 0; c < t.size(); ++c) {
      if (t.mass()[c] > 0.0) continue;
      Assignment p = fam.policy_at(code);
      r.add({"null state under do(" + p.format(space) + ")",
             {{"item", "iii"}, {"do", p.format(space)}, {"cell", g.at(c).format(space)}},
             t.mass()[c], std::nullopt},
            opts.max_witnesses);
    }
  }
  for (const auto& v : complete_state_space_check(fam, opts.tol)) {
    r.add({"complete state space fails for " + space.name(v.i) + " and its cause " + space.name(v.j),
           {{"item", "ii"}, {"i", space.name(v.i)}, {"j", space.name(v.j)}, {"x", v.x.format(space)}},
           v.lhs, v.rhs},
          opts.max_witnesses);
  }
  return r;
}

std::vector<AxiomReport> check_axioms(const BeliefFamily& fam, bool with_axiom6, const AxiomOptions& opts) {
  std::vector<AxiomReport> out;
  out.push_back(check_axiom2(fam, opts));
  if (!out.back().pass) {
    for (const char* name : {"axiom3", "axiom4", "axiom6"}) {
      if (std::string(name) == "axiom6" && !with_axiom6) continue;
      AxiomReport skipped{name, false};
      skipped.notes.push_back("not evaluated: the causes relation is cyclic");
      out.push_back(skipped);
    }
    return out;
  }
  Dag g = causal_graph(fam, opts.tol);
  out.push_back(check_axiom3(fam, g, opts));
  out.push_back(check_axiom4(fam, g, opts));
  if (with_axiom6) out.push_back(check_axiom6(fam, g, opts));
  return out;
}

}  // namespace causal
