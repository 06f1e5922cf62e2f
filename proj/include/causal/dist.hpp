#pragma once

#include <memory>
#include <stdexcept>
#include <vector>

#include "causal/space.hpp"

namespace causal {

class ZeroProbabilityError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

inline constexpr double kDefaultTol = 1e-9;

/// Probability table over the outcomes of `domain`, in OutcomeGrid order.
class JointTable {
 public:
  using SpacePtr = std::shared_ptr<const VariableSpace>;

  JointTable() = default;
  /// Masses must be non-negative and sum to 1 within 1e-12.
  JointTable(SpacePtr space, VarSet domain, std::vector<double> mass);
  /// Scales the masses to sum to 1 first.
  static JointTable normalized(SpacePtr space, VarSet domain, std::vector<double> weights);
  static JointTable uniform(SpacePtr space, VarSet domain);

  const SpacePtr& space_ptr() const { return space_; }
  const VariableSpace& space() const { return *space_; }
  VarSet domain() const { return domain_; }
  const std::vector<double>& mass() const { return mass_; }
  OutcomeGrid grid() const { return OutcomeGrid(*space_, domain_); }
  std::size_t size() const { return mass_.size(); }

  /// Mass of a full outcome of the domain.
  double at(const Assignment& outcome) const;
  /// Total mass of the cylinder event fixed by `event` (any sub-assignment).
  double probability(const Assignment& event) const;
  bool full_support() const;

  JointTable marginal(VarSet subset) const;
  /// Table over `target` given the event; throws ZeroProbabilityError when
  /// the event has zero mass.
  JointTable conditional(VarSet target, const Assignment& given) const;
  /// P(target | given) for partial assignments.
  double conditional_probability(const Assignment& target, const Assignment& given) const;

 private:
  SpacePtr space_;
  VarSet domain_;
  std::vector<double> mass_{1.0};
};

/// Max cell-wise |a - b|; throws if domains differ.
double max_abs_diff(const JointTable& a, const JointTable& b);

/// max |P(x_I | x_J, x_K) - P(x_I | x_K)| over cells with P(x_J, x_K) > 0.
double ci_deviation(const JointTable& t, VarSet I, VarSet J, VarSet K);
bool cond_independent(const JointTable& t, VarSet I, VarSet J, VarSet K, double tol = kDefaultTol);

/// max over outcomes of |mu(x) - prod_i mu(x_i | x_{Pa(i)})|. `parents` is
/// indexed by variable; entries for variables outside the domain are ignored.
double chain_factorization_residual(const JointTable& t, const std::vector<VarSet>& parents);

/// Per-variable factor table mu(x_i | x_{Pa}) laid out over the grid of
/// {i} u Pa. Rows with zero parent mass are filled with 0.
std::vector<double> local_conditional(const JointTable& t, Var i, VarSet pa);

}  // namespace causal
