#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "causal/beliefs.hpp"
#include "causal/dist.hpp"
#include "causal/graph.hpp"

namespace causal {

/// mu(x_i | x_Pa(i)). Rows follow the OutcomeGrid order of the parents; each
/// row holds card(i) probabilities.
struct Cpt {
  Var node = 0;
  VarSet parents;
  std::vector<double> rows;
};

/// Structural model x_i = h_i(x_Pa(i), eps_i) with independent uniform noise.
/// h_i is interval coded: within each parent row, value v owns the half-open
/// interval [c_{v-1}, c_v) of cumulative row sums.
class MarkovModel {
 public:
  using SpacePtr = JointTable::SpacePtr;

  MarkovModel() = default;
  /// `cpts` is indexed by variable; entries for nodes outside graph.nodes()
  /// are ignored. Rows must sum to 1 within 1e-9 and are renormalized.
  MarkovModel(SpacePtr space, Dag graph, std::vector<Cpt> cpts);

  const VariableSpace& space() const { return *space_; }
  const SpacePtr& space_ptr() const { return space_; }
  const Dag& graph() const { return graph_; }
  const Cpt& cpt(Var i) const { return cpts_.at(i); }
  const std::vector<Cpt>& cpts() const { return cpts_; }

  /// The CPT row for the parent values found in `x` (extra bindings ignored).
  const double* row(Var i, const Assignment& x) const;
  double prob(Var i, const Assignment& x) const;
  bool strictly_positive() const;
  /// Upper ends c_v of the noise intervals of the row selected by `x`.
  std::vector<double> noise_intervals(Var i, const Assignment& x) const;

 private:
  SpacePtr space_;
  Dag graph_;
  std::vector<Cpt> cpts_;
};

/// Value of X_i whose noise interval contains eps; `parents` binds exactly Pa(i).
std::size_t h_eval(const MarkovModel& m, Var i, const Assignment& parents, double eps);
/// Forward sample using h_eval in topological order.
Assignment sample_markov(const MarkovModel& m, std::mt19937_64& rng);

/// Product of CPT rows over the model's active nodes.
JointTable joint_from_markov(const MarkovModel& m);

/// Removes the equations of intervened variables and substitutes their values
/// into their children's rows. The result lives on the truncated graph.
MarkovModel intervene(const MarkovModel& m, const Assignment& interventions);
/// Direct product of the non-intervened rows with intervened parents fixed.
JointTable truncated_factorization(const MarkovModel& m, const Assignment& interventions);
/// mu(. | do(interventions)) over the non-intervened variables.
JointTable do_distribution(const MarkovModel& m, const Assignment& interventions);

/// P(target | observed, do(intervened)). Variables in the three sets may be
/// left unbound (free) for symbolic use; numeric evaluation binds them all.
struct QueryExpr {
  VarSet target;
  VarSet observed;
  VarSet intervened;
  Assignment values;

  void validate(const VariableSpace& space) const;
  bool fully_bound() const { return (target | observed | intervened).subset_of(values.domain()); }
  VarSet free_variables() const { return (target | observed | intervened) - values.domain(); }
  std::string format(const VariableSpace& space) const;
};

double do_probability(const MarkovModel& m, const QueryExpr& q);

/// mu_p = mu(. | do(p)) for every policy p. Requires strictly positive CPTs.
BeliefFamily family_from_markov(const MarkovModel& m);
/// Graph g with CPTs read off the observational table of `fam`.
MarkovModel markov_from_family(const BeliefFamily& fam, const Dag& g);

struct RandomCptOptions {
  double min_entry = 0.05;
  /// Each parent must move some row by at least this much (max abs diff).
  double min_parent_effect = 0.05;
};

/// Strictly positive random CPTs on g, deterministic in the seed. Draws where
/// a parent has no effect are resampled.
MarkovModel random_markov(JointTable::SpacePtr space, const Dag& g, std::uint64_t seed,
                          const RandomCptOptions& opts = {});

/// I1 u I3 blocks I0 from I2 in G with arrows into I1 and out of I2 removed.
bool rule1_applies(const Dag& g, VarSet I0, VarSet I1, VarSet I2, VarSet I3);
/// I1 u I3 blocks I0 from I2 in G with arrows into I1 and into I2(I3) removed.
bool rule2_applies(const Dag& g, VarSet I0, VarSet I1, VarSet I2, VarSet I3);

}  // namespace causal
