#include "causal/represent.hpp"

#include <cmath>

#include "causal/markov.hpp"

namespace causal {

namespace {

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

std::string format_parents(const VariableSpace& space, const std::vector<VarSet>& pa, VarSet nodes) {
  std::string out;
  for (Var v : nodes) {
    if (!out.empty()) out += " ";
    out += space.name(v) + "<-" + space.format(pa[v]);
  }
  return out;
}

}  // namespace

void RepresentationVerdict::fail(std::string clause, Witness w) {
  represents = false;
  failures.push_back({std::move(clause), std::move(w)});
}

RepresentationVerdict represents_distribution(const Dag& g, const JointTable& t, double tol) {
  if (g.nodes() != t.domain()) throw std::invalid_argument("represents: graph nodes differ from table domain");
  if (g.names() != t.space().names()) throw std::invalid_argument("represents: graph and table use different variables");
  const VariableSpace& space = t.space();
  RepresentationVerdict v;
  auto pa = g.parent_sets();
  double residual = chain_factorization_residual(t, pa);
  if (residual > tol) {
    v.fail("factorization", {"the parent factorization does not reproduce the table",
                             {{"residual", fmt(residual)}}, residual, tol});
    return v;
  }
  // A smaller parent family factorizes iff some single parent can be dropped
  // with the rest still factorizing, so one-parent reductions are enough.
  for (Var i : g.nodes()) {
    for (Var p : pa[i]) {
      auto smaller = pa;
      smaller[i].erase(p);
      double r = chain_factorization_residual(t, smaller);
      if (r > tol) continue;
      v.fail("minimality", {"dropping " + space.name(p) + " -> " + space.name(i) + " still factorizes",
                            {{"edge", space.name(p) + " -> " + space.name(i)},
                             {"parents", format_parents(space, smaller, g.nodes())},
                             {"residual", fmt(r)}},
                            r, tol});
      if (!v.minimality_witness) v.minimality_witness = smaller;
    }
  }
  return v;
}

RepresentationVerdict represents_family(const Dag& g, const BeliefFamily& fam, double tol) {
  const VariableSpace& space = fam.space();
  if (g.names() != space.names() || g.nodes() != space.all())
    throw std::invalid_argument("represents: graph nodes differ from the family's variables");
  RepresentationVerdict v;
  v.notes.push_back("T = N is skipped: the fully intervened table is empty");
  for_each_subset(space.all(), [&](VarSet T) {
    if (T == space.all()) return;
    Dag gt = truncate_remove(g, T);
    for (const Assignment& xt : enumerate_outcomes(space, T)) {
      auto sub = represents_distribution(gt, fam.table(xt), tol);
      for (auto& f : sub.failures) {
        f.witness.summary = "do(" + xt.format(space) + "): " + f.witness.summary;
        f.witness.fields.insert(f.witness.fields.begin(), {"do", xt.format(space)});
        v.fail("truncation/" + f.clause, std::move(f.witness));
      }
    }
  });
  for (auto [i, j] : g.edges()) {
    const VarSet pair_rest = space.all() - VarSet{i, j};
    for (const Assignment& x : enumerate_outcomes(space, space.all())) {
      const JointTable& pair = fam.table(x.restrict(pair_rest));
      const JointTable& single = fam.table(x.restrict(space.all().without(j)));
      Assignment xi, xj;
      xi.set(i, x.get(i));
      xj.set(j, x.get(j));
      double den = pair.probability(xi);
      double lhs = den > 0.0 ? pair.probability(xi.merged(xj)) / den : 0.0;
      double rhs = single.probability(xj);
      if (std::abs(lhs - rhs) <= tol) continue;
      v.fail("orientation", {"edge " + space.name(i) + " -> " + space.name(j) +
                                 ": observing the tail differs from intervening on it",
                             {{"edge", space.name(i) + " -> " + space.name(j)}, {"x", x.format(space)}},
                             lhs, rhs});
    }
  }
  return v;
}

Theorem1Verdict theorem1_verdict(const BeliefFamily& fam, const AxiomOptions& opts) {
  Theorem1Verdict out;
  out.reports = check_axioms(fam, false, opts);
  out.axioms_pass = true;
  for (const auto& r : out.reports) out.axioms_pass = out.axioms_pass && r.pass;
  try {
    out.dag = causal_graph(fam, opts.tol);
    out.represents = represents_family(*out.dag, fam, opts.tol).represents;
  } catch (const CycleError&) {
    out.represents = false;
  }
  out.agree = out.axioms_pass == out.represents;
  return out;
}

Theorem2Verdict theorem2_verdict(const BeliefFamily& fam, const AxiomOptions& opts) {
  Theorem2Verdict out;
  out.reports = check_axioms(fam, true, opts);
  out.axioms_pass = true;
  for (const auto& r : out.reports) out.axioms_pass = out.axioms_pass && r.pass;
  try {
    Dag g = causal_graph(fam, opts.tol);
    MarkovModel m = markov_from_family(fam, g);
    if (m.strictly_positive()) {
      BeliefFamily back = family_from_markov(m);
      for (std::size_t code = 0; code < fam.policy_count(); ++code)
        out.max_deviation = std::max(out.max_deviation, max_abs_diff(back.table_at(code), fam.table_at(code)));
      out.markov_match = out.max_deviation <= opts.tol;
    }
  } catch (const CycleError&) {
    out.markov_match = false;
  }
  out.agree = out.axioms_pass == out.markov_match;
  return out;
}

}  // namespace causal
