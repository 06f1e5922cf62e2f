#include "causal/markov.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace causal {

namespace {

std::size_t row_index(const VariableSpace& space, VarSet parents, const Assignment& x) {
  return OutcomeGrid(space, parents).index(x);
}

void require_disjoint4(VarSet a, VarSet b, VarSet c, VarSet d, const char* what) {
  VarSet seen;
  for (VarSet s : {a, b, c, d}) {
    if (seen.intersects(s)) throw std::invalid_argument(std::string(what) + ": sets must be pairwise disjoint");
    seen |= s;
  }
}

}  // namespace

MarkovModel::MarkovModel(SpacePtr space, Dag graph, std::vector<Cpt> cpts)
    : space_(std::move(space)), graph_(std::move(graph)), cpts_(std::move(cpts)) {
  if (!space_) throw std::invalid_argument("markov model: null space");
  if (graph_.names() != space_->names())
    throw std::invalid_argument("markov model: graph and space name different variables");
  cpts_.resize(space_->size());
  for (Var i : graph_.nodes()) {
    Cpt& c = cpts_[i];
    const std::string& name = space_->name(i);
    if (c.node != i) throw std::invalid_argument("markov model: CPT for '" + name + "' is misplaced");
    if (c.parents != graph_.parents(i))
      throw std::invalid_argument("markov model: CPT parents of '" + name + "' do not match the graph");
    const std::size_t k = space_->card(i);
    const std::size_t nrows = space_->outcome_count(c.parents);
    if (c.rows.size() != nrows * k)
      throw std::invalid_argument("markov model: CPT of '" + name + "' has " +
                                  std::to_string(c.rows.size()) + " entries, expected " +
                                  std::to_string(nrows * k));
    for (std::size_t r = 0; r < nrows; ++r) {
      double sum = 0.0;
      for (std::size_t v = 0; v < k; ++v) {
        double p = c.rows[r * k + v];
        if (!(p >= 0.0)) throw std::invalid_argument("markov model: negative entry in CPT of '" + name + "'");
        sum += p;
      }
      if (std::abs(sum - 1.0) > 1e-9)
        throw std::invalid_argument("markov model: row " + std::to_string(r) + " of CPT '" + name +
                                    "' sums to " + std::to_string(sum));
      for (std::size_t v = 0; v < k; ++v) c.rows[r * k + v] /= sum;
    }
  }
}

const double* MarkovModel::row(Var i, const Assignment& x) const {
  const Cpt& c = cpts_.at(i);
  return c.rows.data() + row_index(*space_, c.parents, x) * space_->card(i);
}

double MarkovModel::prob(Var i, const Assignment& x) const { return row(i, x)[x.get(i)]; }

bool MarkovModel::strictly_positive() const {
  for (Var i : graph_.nodes())
    for (double p : cpts_[i].rows)
      if (!(p > 0.0)) return false;
  return true;
}

std::vector<double> MarkovModel::noise_intervals(Var i, const Assignment& x) const {
  const double* r = row(i, x);
  std::vector<double> ends(space_->card(i));
  double c = 0.0;
  for (std::size_t v = 0; v < ends.size(); ++v) ends[v] = c += r[v];
  ends.back() = 1.0;
  return ends;
}

std::size_t h_eval(const MarkovModel& m, Var i, const Assignment& parents, double eps) {
  if (!(eps >= 0.0 && eps < 1.0)) throw std::invalid_argument("h_eval: noise must lie in [0,1)");
  if (parents.domain() != m.graph().parents(i))
    throw std::invalid_argument("h_eval: assignment must bind exactly the parents of '" +
                                m.space().name(i) + "'");
  auto ends = m.noise_intervals(i, parents);
  for (std::size_t v = 0; v < ends.size(); ++v)
    if (eps < ends[v]) return v;
  return ends.size() - 1;
}

Assignment sample_markov(const MarkovModel& m, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  Assignment x;
  for (Var i : m.graph().topological_order())
    x.set(i, h_eval(m, i, x.restrict(m.graph().parents(i)), unif(rng)));
  return x;
}

JointTable joint_from_markov(const MarkovModel& m) {
  const VarSet domain = m.graph().nodes();
  OutcomeGrid g(m.space(), domain);
  std::vector<double> mass(g.size(), 1.0);
  for (std::size_t k = 0; k < g.size(); ++k) {
    Assignment x = g.at(k);
    for (Var i : domain) mass[k] *= m.prob(i, x);
  }
  return JointTable::normalized(m.space_ptr(), domain, std::move(mass));
}

MarkovModel intervene(const MarkovModel& m, const Assignment& interventions) {
  const VariableSpace& space = m.space();
  interventions.validate(space);
  const VarSet J = interventions.domain();
  Dag g = truncate_remove(m.graph(), J);
  std::vector<Cpt> cpts(space.size());
  for (Var i : g.nodes()) {
    const Cpt& old = m.cpt(i);
    Cpt& c = cpts[i];
    c.node = i;
    c.parents = old.parents - J;
    OutcomeGrid rows(space, c.parents);
    const std::size_t k = space.card(i);
    c.rows.resize(rows.size() * k);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      const double* src = m.row(i, rows.at(r).merged(interventions));
      std::copy(src, src + k, c.rows.begin() + static_cast<std::ptrdiff_t>(r * k));
    }
  }
  return MarkovModel(m.space_ptr(), std::move(g), std::move(cpts));
}

JointTable truncated_factorization(const MarkovModel& m, const Assignment& interventions) {
  interventions.validate(m.space());
  const VarSet domain = m.graph().nodes() - interventions.domain();
  OutcomeGrid g(m.space(), domain);
  std::vector<double> mass(g.size(), 1.0);
  for (std::size_t k = 0; k < g.size(); ++k) {
    Assignment x = g.at(k).merged(interventions);
    for (Var i : domain) mass[k] *= m.prob(i, x);
  }
  return JointTable::normalized(m.space_ptr(), domain, std::move(mass));
}

JointTable do_distribution(const MarkovModel& m, const Assignment& interventions) {
  return joint_from_markov(intervene(m, interventions));
}

void QueryExpr::validate(const VariableSpace& space) const {
  if (target.intersects(observed) || target.intersects(intervened) || observed.intersects(intervened))
    throw std::invalid_argument("query: target, observed and intervened variables must be disjoint");
  if (target.empty()) throw std::invalid_argument("query: empty target");
  if (!(target | observed | intervened).subset_of(space.all()))
    throw std::invalid_argument("query: unknown variable");
  if (!values.domain().subset_of(target | observed | intervened))
    throw std::invalid_argument("query: value bound for a variable outside the query");
  values.validate(space);
}

std::string QueryExpr::format(const VariableSpace& space) const {
  auto part = [&](VarSet s) {
    std::string out;
    for (Var v : s) {
      if (!out.empty()) out += ",";
      out += space.name(v);
      if (values.binds(v)) out += "=" + std::to_string(values.get(v));
    }
    return out;
  };
  std::string out = "P(" + part(target);
  std::string cond = part(observed);
  if (!intervened.empty()) cond += (cond.empty() ? "" : ",") + std::string("do(") + part(intervened) + ")";
  if (!cond.empty()) out += "|" + cond;
  return out + ")";
}

double do_probability(const MarkovModel& m, const QueryExpr& q) {
  q.validate(m.space());
  if (!q.fully_bound()) throw std::invalid_argument("do_probability: query has unbound variables");
  JointTable post = do_distribution(m, q.values.restrict(q.intervened));
  Assignment obs = q.values.restrict(q.observed);
  return post.conditional_probability(q.values.restrict(q.target), obs);
}

BeliefFamily family_from_markov(const MarkovModel& m) {
  if (m.graph().nodes() != m.space().all())
    throw std::invalid_argument("family_from_markov: model must cover every variable");
  if (!m.strictly_positive())
    throw std::invalid_argument("family_from_markov: CPTs must be strictly positive");
  return BeliefFamily::from_function(m.space_ptr(), [&](const Assignment& p) { return truncated_factorization(m, p); });
}

MarkovModel markov_from_family(const BeliefFamily& fam, const Dag& g) {
  const JointTable& mu = fam.observational();
  std::vector<Cpt> cpts(fam.space().size());
  const VariableSpace& space = fam.space();
  for (Var i : g.nodes()) {
    const VarSet pa = g.parents(i);
    // local_conditional is laid out over the grid of pa u {i}; CPT rows want
    // the value of i as the fastest digit.
    auto cond = local_conditional(mu, i, pa);
    OutcomeGrid family(space, pa.with(i)), rows(space, pa);
    Cpt c{i, pa, std::vector<double>(cond.size())};
    for (std::size_t r = 0; r < rows.size(); ++r) {
      Assignment x = rows.at(r);
      for (std::size_t v = 0; v < space.card(i); ++v) c.rows[r * space.card(i) + v] = cond[family.index(x.set(i, v))];
    }
    cpts[i] = std::move(c);
  }
  return MarkovModel(fam.space_ptr(), g, std::move(cpts));
}

namespace {

bool parents_all_matter(const VariableSpace& space, const Cpt& c, double min_effect) {
  const std::size_t k = space.card(c.node);
  OutcomeGrid rows(space, c.parents);
  for (Var p : c.parents) {
    double best = 0.0;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      Assignment a = rows.at(r);
      if (a.get(p) != 0) continue;
      for (std::size_t v = 1; v < space.card(p); ++v) {
        Assignment b = a;
        b.set(p, v);
        std::size_t r2 = rows.index(b);
        for (std::size_t x = 0; x < k; ++x)
          best = std::max(best, std::abs(c.rows[r * k + x] - c.rows[r2 * k + x]));
      }
    }
    if (best < min_effect) return false;
  }
  return true;
}

}  // namespace

MarkovModel random_markov(JointTable::SpacePtr space, const Dag& g, std::uint64_t seed,
                          const RandomCptOptions& opts) {
  std::mt19937_64 rng(seed);
  std::exponential_distribution<double> expo(1.0);
  std::vector<Cpt> cpts(space->size());
  for (Var i : g.nodes()) {
    const std::size_t k = space->card(i);
    const double floor = std::min(opts.min_entry, 0.5 / static_cast<double>(k));
    Cpt c{i, g.parents(i), {}};
    const std::size_t nrows = space->outcome_count(c.parents);
    for (int attempt = 0;; ++attempt) {
      c.rows.assign(nrows * k, 0.0);
      for (std::size_t r = 0; r < nrows; ++r) {
        double total = 0.0;
        for (std::size_t v = 0; v < k; ++v) total += c.rows[r * k + v] = expo(rng);
        for (std::size_t v = 0; v < k; ++v)
          c.rows[r * k + v] = floor + (1.0 - floor * static_cast<double>(k)) * c.rows[r * k + v] / total;
      }
      if (parents_all_matter(*space, c, opts.min_parent_effect)) break;
      if (attempt > 10000) throw std::runtime_error("random_markov: could not draw a generic CPT");
    }
    cpts[i] = std::move(c);
  }
  return MarkovModel(std::move(space), g, std::move(cpts));
}

bool rule1_applies(const Dag& g, VarSet I0, VarSet I1, VarSet I2, VarSet I3) {
  require_disjoint4(I0, I1, I2, I3, "rule 1");
  if (I0.empty() || I2.empty()) throw std::invalid_argument("rule 1: I0 and I2 must be nonempty");
  return blocks(truncate_in_out(g, I1, I2), I0, I2, I1 | I3);
}

bool rule2_applies(const Dag& g, VarSet I0, VarSet I1, VarSet I2, VarSet I3) {
  require_disjoint4(I0, I1, I2, I3, "rule 2");
  if (I0.empty() || I2.empty()) throw std::invalid_argument("rule 2: I0 and I2 must be nonempty");
  return blocks(truncate_in_cond(g, I1, I2, I3), I0, I2, I1 | I3);
}

}  // namespace causal
