#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "causal/beliefs.hpp"

namespace causal {

struct Witness {
  std::string summary;
  std::vector<std::pair<std::string, std::string>> fields;
  std::optional<double> lhs;
  std::optional<double> rhs;
};

struct AxiomReport {
  std::string axiom;
  bool pass = true;
  std::vector<Witness> violations;  // first `max_witnesses` only
  std::size_t violation_count = 0;
  std::vector<std::string> notes;

  void add(Witness w, std::size_t max_witnesses);
};

struct AxiomOptions {
  double tol = kDefaultTol;
  /// Axiom 3 counts a conditional dependence only above this deviation.
  double dependence_threshold = 1e-6;
  std::size_t max_variables = 6;
  std::size_t max_witnesses = 20;
};

class SizeCapError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// max over x_H of the conditional-independence deviation of {i} and J given
/// K under mu_{x_H}.
double intervention_ci_deviation(const BeliefFamily& fam, Var i, VarSet J, VarSet K, VarSet H);
/// i _|_H J | K: the independence holds under every mu_{x_H}.
bool check_intervention_ci(const BeliefFamily& fam, Var i, VarSet J, VarSet K, VarSet H,
                           double tol = kDefaultTol);

/// Acyclicity of the causes relation. Every nonempty set having a member with
/// no causes inside the set is the same statement as having no directed cycle.
AxiomReport check_axiom2(const BeliefFamily& fam, const AxiomOptions& opts = {});
/// Every cause stays relevant: i is dependent on Ca(i)\(J u H) given J under
/// every mu_{x_H}.
AxiomReport check_axiom3(const BeliefFamily& fam, const Dag& g, const AxiomOptions& opts = {});
/// Non-adjacent i, j are independent given (Ca(i) u Ca(j) u J)\K under every
/// mu_{x_K}. J ranges over sets without descendants of i or j in G_K.
AxiomReport check_axiom4(const BeliefFamily& fam, const Dag& g, const AxiomOptions& opts = {});
/// mu(x_i | x_Ca(i)) = mu_{x_J}(x_i | x_{Ca(i)\J}) for every J not containing i.
AxiomReport check_axiom6(const BeliefFamily& fam, const Dag& g, const AxiomOptions& opts = {});
/// Full support and the complete-state-space identity.
AxiomReport check_assumption1(const BeliefFamily& fam, const AxiomOptions& opts = {});

/// Axioms 2, 3, 4 (and 6 when `with_axiom6`). Axioms 3 onward are skipped when
/// Axiom 2 fails since they need the causal graph.
std::vector<AxiomReport> check_axioms(const BeliefFamily& fam, bool with_axiom6,
                                      const AxiomOptions& opts = {});

}  // namespace causal
