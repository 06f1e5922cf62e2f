#include "causal/dist.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace causal {

namespace {

void require_subset(const VariableSpace& space, VarSet sub, VarSet domain, const char* what) {
  if (sub.subset_of(domain)) return;
  Var bad = (sub - domain).lowest();
  std::string name = bad < space.size() ? space.name(bad) : "#" + std::to_string(bad);
  throw std::invalid_argument(std::string(what) + ": variable '" + name + "' not in table domain");
}

// Map each cell of `from` to its cell in `to` (to.domain ⊆ from.domain).
std::vector<std::size_t> projection(const OutcomeGrid& from, const OutcomeGrid& to) {
  std::vector<std::size_t> out(from.size());
  for (std::size_t k = 0; k < from.size(); ++k) {
    std::size_t j = 0;
    for (Var v : to.domain()) j += ((k / from.stride(v)) % from.card(v)) * to.stride(v);
    out[k] = j;
  }
  return out;
}

}  // namespace

JointTable::JointTable(SpacePtr space, VarSet domain, std::vector<double> mass)
    : space_(std::move(space)), domain_(domain), mass_(std::move(mass)) {
  if (!space_) throw std::invalid_argument("joint table: null space");
  if (!domain_.subset_of(space_->all()))
    throw std::invalid_argument("joint table: domain not in space");
  if (mass_.size() != space_->outcome_count(domain_))
    throw std::invalid_argument("joint table: expected " +
                                std::to_string(space_->outcome_count(domain_)) + " cells, got " +
                                std::to_string(mass_.size()));
  double total = 0.0;
  for (double m : mass_) {
    if (!(m >= 0.0)) throw std::invalid_argument("joint table: negative or NaN mass");
    total += m;
  }
  if (std::abs(total - 1.0) > 1e-12)
    throw std::invalid_argument("joint table: masses sum to " + std::to_string(total));
}

JointTable JointTable::normalized(SpacePtr space, VarSet domain, std::vector<double> weights) {
  double total = std::accumulate(weights.begin(), weights.end(), 0.0);
  if (!(total > 0.0)) throw std::invalid_argument("joint table: weights sum to zero");
  for (double& w : weights) w /= total;
  return JointTable(std::move(space), domain, std::move(weights));
}

JointTable JointTable::uniform(SpacePtr space, VarSet domain) {
  std::size_t n = space->outcome_count(domain);
  return JointTable(std::move(space), domain, std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

double JointTable::at(const Assignment& outcome) const { return mass_[grid().index(outcome)]; }

double JointTable::probability(const Assignment& event) const {
  require_subset(*space_, event.domain(), domain_, "probability");
  OutcomeGrid g = grid();
  double p = 0.0;
  for (std::size_t k = 0; k < g.size(); ++k) {
    bool match = true;
    for (Var v : event.domain())
      if ((k / g.stride(v)) % g.card(v) != event.get(v)) {
        match = false;
        break;
      }
    if (match) p += mass_[k];
  }
  return p;
}

bool JointTable::full_support() const {
  return std::all_of(mass_.begin(), mass_.end(), [](double m) { return m > 0.0; });
}

JointTable JointTable::marginal(VarSet subset) const {
  require_subset(*space_, subset, domain_, "marginal");
  OutcomeGrid from = grid();
  OutcomeGrid to(*space_, subset);
  std::vector<double> out(to.size(), 0.0);
  auto proj = projection(from, to);
  for (std::size_t k = 0; k < from.size(); ++k) out[proj[k]] += mass_[k];
  return normalized(space_, subset, std::move(out));
}

JointTable JointTable::conditional(VarSet target, const Assignment& given) const {
  require_subset(*space_, target | given.domain(), domain_, "conditional");
  if (target.intersects(given.domain()))
    throw std::invalid_argument("conditional: target and conditioning set overlap");
  OutcomeGrid from = grid();
  OutcomeGrid to(*space_, target);
  auto proj = projection(from, to);
  std::vector<double> out(to.size(), 0.0);
  double total = 0.0;
  for (std::size_t k = 0; k < from.size(); ++k) {
    bool match = true;
    for (Var v : given.domain())
      if ((k / from.stride(v)) % from.card(v) != given.get(v)) {
        match = false;
        break;
      }
    if (!match) continue;
    out[proj[k]] += mass_[k];
    total += mass_[k];
  }
  if (!(total > 0.0))
    throw ZeroProbabilityError("conditioning event " + given.format(*space_) + " has zero probability");
  for (double& m : out) m /= total;
  return normalized(space_, target, std::move(out));
}

double JointTable::conditional_probability(const Assignment& target, const Assignment& given) const {
  double den = probability(given);
  if (!(den > 0.0))
    throw ZeroProbabilityError("conditioning event " + given.format(*space_) + " has zero probability");
  return probability(target.merged(given)) / den;
}

double max_abs_diff(const JointTable& a, const JointTable& b) {
  if (a.domain() != b.domain()) throw std::invalid_argument("max_abs_diff: domains differ");
  double d = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) d = std::max(d, std::abs(a.mass()[k] - b.mass()[k]));
  return d;
}

double ci_deviation(const JointTable& t, VarSet I, VarSet J, VarSet K) {
  if (I.intersects(J) || I.intersects(K) || J.intersects(K))
    throw std::invalid_argument("conditional independence: sets must be disjoint");
  require_subset(t.space(), I | J | K, t.domain(), "conditional independence");
  if (I.empty() || J.empty()) return 0.0;
  const VariableSpace& space = t.space();
  JointTable m = t.marginal(I | J | K);
  OutcomeGrid g = m.grid();
  OutcomeGrid gk(space, K), gik(space, I | K), gjk(space, J | K);
  auto pk_map = projection(g, gk), pik_map = projection(g, gik), pjk_map = projection(g, gjk);
  std::vector<double> pk(gk.size(), 0.0), pik(gik.size(), 0.0), pjk(gjk.size(), 0.0);
  for (std::size_t c = 0; c < g.size(); ++c) {
    pk[pk_map[c]] += m.mass()[c];
    pik[pik_map[c]] += m.mass()[c];
    pjk[pjk_map[c]] += m.mass()[c];
  }
  double dev = 0.0;
  for (std::size_t c = 0; c < g.size(); ++c) {
    double den = pjk[pjk_map[c]];
    if (!(den > 0.0)) continue;
    double lhs = m.mass()[c] / den;
    double rhs = pik[pik_map[c]] / pk[pk_map[c]];
    dev = std::max(dev, std::abs(lhs - rhs));
  }
  return dev;
}

bool cond_independent(const JointTable& t, VarSet I, VarSet J, VarSet K, double tol) {
  return ci_deviation(t, I, J, K) <= tol;
}

std::vector<double> local_conditional(const JointTable& t, Var i, VarSet pa) {
  const VariableSpace& space = t.space();
  VarSet fam = pa.with(i);
  OutcomeGrid g = t.grid();
  OutcomeGrid gf(space, fam), gp(space, pa);
  auto fmap = projection(g, gf), pmap = projection(g, gp);
  std::vector<double> pf(gf.size(), 0.0), pp(gp.size(), 0.0);
  for (std::size_t c = 0; c < g.size(); ++c) {
    pf[fmap[c]] += t.mass()[c];
    pp[pmap[c]] += t.mass()[c];
  }
  auto fp = projection(gf, gp);
  for (std::size_t c = 0; c < gf.size(); ++c) pf[c] = pp[fp[c]] > 0.0 ? pf[c] / pp[fp[c]] : 0.0;
  return pf;
}

double chain_factorization_residual(const JointTable& t, const std::vector<VarSet>& parents) {
  const VariableSpace& space = t.space();
  OutcomeGrid g = t.grid();
  std::vector<double> product(g.size(), 1.0);
  for (Var i : t.domain()) {
    VarSet pa = i < parents.size() ? parents[i] : VarSet{};
    if (pa.contains(i)) throw std::invalid_argument("factorization: variable is its own parent");
    require_subset(space, pa, t.domain(), "factorization");
    auto factor = local_conditional(t, i, pa);
    auto fmap = projection(g, OutcomeGrid(space, pa.with(i)));
    for (std::size_t c = 0; c < g.size(); ++c) product[c] *= factor[fmap[c]];
  }
  double r = 0.0;
  for (std::size_t c = 0; c < g.size(); ++c) r = std::max(r, std::abs(t.mass()[c] - product[c]));
  return r;
}

}  // namespace causal
