#pragma once

#include <functional>
#include <vector>

#include "causal/dist.hpp"
#include "causal/graph.hpp"

namespace causal {

/// One intervention belief per policy. Policies are indexed in mixed radix
/// with base |X_i|+1 per variable; digit 0 means "not intervened" and digit
/// v+1 means "set to v".
class BeliefFamily {
 public:
  using SpacePtr = JointTable::SpacePtr;

  BeliefFamily() = default;
  /// `tables[code]` must have domain N(policy_at(code)).
  BeliefFamily(SpacePtr space, std::vector<JointTable> tables);
  static BeliefFamily from_function(SpacePtr space,
                                    const std::function<JointTable(const Assignment&)>& table_for);

  const VariableSpace& space() const { return *space_; }
  const SpacePtr& space_ptr() const { return space_; }
  std::size_t policy_count() const { return tables_.size(); }
  std::size_t policy_code(const Assignment& interventions) const;
  Assignment policy_at(std::size_t code) const;

  const JointTable& table(const Assignment& interventions) const;
  const JointTable& table(const Policy& p) const { return table(p.interventions); }
  const JointTable& table_at(std::size_t code) const { return tables_.at(code); }
  const JointTable& observational() const { return tables_.front(); }

  BeliefFamily with_table(const Assignment& interventions, JointTable t) const;

 private:
  SpacePtr space_;
  std::vector<JointTable> tables_;
};

std::size_t policy_count(const VariableSpace& space);
std::size_t policy_code(const VariableSpace& space, const Assignment& interventions);
Assignment policy_at(const VariableSpace& space, std::size_t code);

/// Strictly increasing utility over money; identity by default.
struct Utility {
  std::function<double(double)> fn = [](double x) { return x; };
  double operator()(double x) const { return fn(x); }
};

/// Sum of u(f) under the belief of policy `p`; f is extended cylindrically.
/// Throws if f mentions an intervened variable, or if u is not strictly
/// increasing on the payoffs involved.
double expected_utility(const BeliefFamily& fam, const Policy& p, const Act& f,
                        const Utility& u = {});

enum class Preference { first, second, indifferent };

Preference prefers(const BeliefFamily& fam, const Policy& p, const Act& f, const Act& g,
                   const Utility& u = {});

// Preference statements below are evaluated as equalities of belief tables.
// Under monotone expected utility with full support, "f > g under policy p iff
// f > g under policy q" for all acts on X_i is the same as the two beliefs
// having equal marginals on X_i.

/// i is K-independent of j: the marginal of i is the same under do(x_j, x_K)
/// and do(x_K), for every x_j and x_K.
bool k_independent(const BeliefFamily& fam, Var i, Var j, VarSet K, double tol = kDefaultTol);
/// j causes i: i is not (N \ {i,j})-independent of j.
bool causes(const BeliefFamily& fam, Var j, Var i, double tol = kDefaultTol);
/// Ca(i) for every i, without requiring acyclicity.
std::vector<VarSet> causal_relation(const BeliefFamily& fam, double tol = kDefaultTol);
/// Graph with j -> i iff j causes i. Throws CycleError if the relation is cyclic.
Dag causal_graph(const BeliefFamily& fam, double tol = kDefaultTol);
VarSet indirect_causes(const BeliefFamily& fam, Var i, double tol = kDefaultTol);

struct CompletenessViolation {
  Var i;
  Var j;
  Assignment x;  // full outcome
  double lhs;    // mu_{x_{-ij}}(x_i | x_j)
  double rhs;    // mu_{x_{-i}}(x_i)
};

/// Pairs j in Ca(i) where intervening on everything but i, j and observing
/// x_j differs from intervening on everything but i.
std::vector<CompletenessViolation> complete_state_space_check(const BeliefFamily& fam,
                                                              double tol = kDefaultTol);

}  // namespace causal
