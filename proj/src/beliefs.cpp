#include "causal/beliefs.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace causal {

std::size_t policy_count(const VariableSpace& space) {
  std::size_t n = 1;
  for (std::size_t c : space.cardinalities()) n *= c + 1;
  return n;
}

std::size_t policy_code(const VariableSpace& space, const Assignment& p) {
  std::size_t code = 0;
  for (Var v = 0; v < space.size(); ++v) {
    code *= space.card(v) + 1;
    if (p.binds(v)) code += p.get(v) + 1;
  }
  return code;
}

Assignment policy_at(const VariableSpace& space, std::size_t code) {
  Assignment p;
  for (Var v = space.size(); v-- > 0;) {
    std::size_t base = space.card(v) + 1;
    std::size_t digit = code % base;
    code /= base;
    if (digit > 0) p.set(v, digit - 1);
  }
  return p;
}

BeliefFamily::BeliefFamily(SpacePtr space, std::vector<JointTable> tables)
    : space_(std::move(space)), tables_(std::move(tables)) {
  if (!space_) throw std::invalid_argument("belief family: null space");
  if (tables_.size() != causal::policy_count(*space_))
    throw std::invalid_argument("belief family: expected " +
                                std::to_string(causal::policy_count(*space_)) + " tables, got " +
                                std::to_string(tables_.size()));
  for (std::size_t code = 0; code < tables_.size(); ++code) {
    Assignment p = policy_at(code);
    if (tables_[code].domain() != space_->all() - p.domain())
      throw std::invalid_argument("belief family: table for do(" + p.format(*space_) +
                                  ") has the wrong domain");
    if (*tables_[code].space_ptr() != *space_)
      throw std::invalid_argument("belief family: table over a different space");
  }
}

BeliefFamily BeliefFamily::from_function(SpacePtr space,
                                         const std::function<JointTable(const Assignment&)>& table_for) {
  std::vector<JointTable> tables;
  std::size_t n = causal::policy_count(*space);
  tables.reserve(n);
  for (std::size_t code = 0; code < n; ++code) tables.push_back(table_for(causal::policy_at(*space, code)));
  return BeliefFamily(std::move(space), std::move(tables));
}

std::size_t BeliefFamily::policy_code(const Assignment& p) const {
  p.validate(*space_);
  return causal::policy_code(*space_, p);
}

Assignment BeliefFamily::policy_at(std::size_t code) const { return causal::policy_at(*space_, code); }

const JointTable& BeliefFamily::table(const Assignment& p) const { return tables_[policy_code(p)]; }

BeliefFamily BeliefFamily::with_table(const Assignment& p, JointTable t) const {
  auto tables = tables_;
  tables[policy_code(p)] = std::move(t);
  return BeliefFamily(space_, std::move(tables));
}

namespace {

void check_monotone(const Utility& u, std::vector<double> points) {
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  for (std::size_t k = 1; k < points.size(); ++k)
    if (!(u(points[k - 1]) < u(points[k])))
      throw std::invalid_argument("utility is not strictly increasing between " +
                                  std::to_string(points[k - 1]) + " and " + std::to_string(points[k]));
}

double eu_unchecked(const BeliefFamily& fam, const Policy& p, const Act& f, const Utility& u) {
  const VariableSpace& space = fam.space();
  if (f.domain.intersects(p.intervened()))
    throw std::invalid_argument("act depends on intervened variable(s) " +
                                space.format(f.domain & p.intervened()));
  const JointTable& t = fam.table(p);
  JointTable m = t.marginal(f.domain);
  if (f.payoffs.size() != m.size()) throw std::invalid_argument("act has the wrong number of payoffs");
  double eu = 0.0;
  for (std::size_t k = 0; k < m.size(); ++k) eu += u(f.payoffs[k]) * m.mass()[k];
  return eu;
}

}  // namespace

double expected_utility(const BeliefFamily& fam, const Policy& p, const Act& f, const Utility& u) {
  check_monotone(u, f.payoffs);
  return eu_unchecked(fam, p, f, u);
}

Preference prefers(const BeliefFamily& fam, const Policy& p, const Act& f, const Act& g,
                   const Utility& u) {
  std::vector<double> points = f.payoffs;
  points.insert(points.end(), g.payoffs.begin(), g.payoffs.end());
  check_monotone(u, points);
  double a = eu_unchecked(fam, p, f, u);
  double b = eu_unchecked(fam, p, g, u);
  if (std::abs(a - b) <= 1e-12) return Preference::indifferent;
  return a > b ? Preference::first : Preference::second;
}

bool k_independent(const BeliefFamily& fam, Var i, Var j, VarSet K, double tol) {
  const VariableSpace& space = fam.space();
  if (i == j) throw std::invalid_argument("k-independence: i and j must differ");
  if (i >= space.size() || j >= space.size() || !K.subset_of(space.all()))
    throw std::invalid_argument("k-independence: unknown variable");
  if (K.contains(i) || K.contains(j))
    throw std::invalid_argument("k-independence: K must not contain i or j");
  const VarSet target = VarSet::single(i);
  for (const Assignment& xk : enumerate_outcomes(space, K)) {
    JointTable base = fam.table(xk).marginal(target);
    for (std::size_t v = 0; v < space.card(j); ++v) {
      Assignment p = xk;
      p.set(j, v);
      if (max_abs_diff(fam.table(p).marginal(target), base) > tol) return false;
    }
  }
  return true;
}

bool causes(const BeliefFamily& fam, Var j, Var i, double tol) {
  if (i == j) throw std::invalid_argument("causes: a variable is not compared with itself");
  VarSet rest = fam.space().all() - VarSet{i, j};
  return !k_independent(fam, i, j, rest, tol);
}

std::vector<VarSet> causal_relation(const BeliefFamily& fam, double tol) {
  const std::size_t n = fam.space().size();
  std::vector<VarSet> ca(n);
  for (Var i = 0; i < n; ++i)
    for (Var j = 0; j < n; ++j)
      if (i != j && causes(fam, j, i, tol)) ca[i].insert(j);
  return ca;
}

Dag causal_graph(const BeliefFamily& fam, double tol) {
  const VariableSpace& space = fam.space();
  auto ca = causal_relation(fam, tol);
  auto cycle = find_shortest_cycle(space.all(), ca);
  if (!cycle.empty()) {
    std::string text;
    for (Var v : cycle) text += space.name(v) + " -> ";
    text += space.name(cycle.front());
    throw CycleError("Axiom 2 violated: the causes relation has the cycle " + text, cycle);
  }
  std::vector<Edge> edges;
  for (Var i = 0; i < space.size(); ++i)
    for (Var j : ca[i]) edges.emplace_back(j, i);
  return Dag(space.names(), edges);
}

VarSet indirect_causes(const BeliefFamily& fam, Var i, double tol) {
  return causal_graph(fam, tol).ancestors(i);
}

std::vector<CompletenessViolation> complete_state_space_check(const BeliefFamily& fam, double tol) {
  const VariableSpace& space = fam.space();
  std::vector<CompletenessViolation> out;
  auto ca = causal_relation(fam, tol);
  for (Var i = 0; i < space.size(); ++i) {
    for (Var j : ca[i]) {
      VarSet rest = space.all() - VarSet{i, j};
      for (const Assignment& x : enumerate_outcomes(space, space.all())) {
        const JointTable& pair = fam.table(x.restrict(rest));
        const JointTable& single = fam.table(x.restrict(space.all().without(i)));
        Assignment xi, xj;
        xi.set(i, x.get(i));
        xj.set(j, x.get(j));
        double den = pair.probability(xj);
        if (!(den > 0.0)) continue;  // reported by the full-support check
        double lhs = pair.probability(xi.merged(xj)) / den;
        double rhs = single.probability(xi);
        if (std::abs(lhs - rhs) > tol) out.push_back({i, j, x, lhs, rhs});
      }
    }
  }
  return out;
}

}  // namespace causal
