#pragma once

#include <optional>
#include <string>
#include <vector>

#include "causal/axioms.hpp"
#include "causal/graph.hpp"

namespace causal {

struct RepresentationFailure {
  std::string clause;  // "factorization", "minimality", "truncation", "orientation"
  Witness witness;
};

struct RepresentationVerdict {
  bool represents = true;
  std::vector<RepresentationFailure> failures;
  /// Parent sets of a smaller family that also factorizes, if one was found.
  std::optional<std::vector<VarSet>> minimality_witness;
  std::vector<std::string> notes;

  void fail(std::string clause, Witness w);
};

/// g's nodes must equal t's domain. Checks the parent factorization and that
/// no strictly smaller parent family also factorizes.
RepresentationVerdict represents_distribution(const Dag& g, const JointTable& t,
                                              double tol = kDefaultTol);

/// Every node-deleted subgraph G_T represents mu_{x_T}, and every edge (i,j)
/// satisfies mu_{x_{-ij}}(x_j | x_i) = mu_{x_{-j}}(x_j).
RepresentationVerdict represents_family(const Dag& g, const BeliefFamily& fam,
                                        double tol = kDefaultTol);

struct Theorem1Verdict {
  bool axioms_pass = false;
  std::optional<Dag> dag;
  bool represents = false;
  bool agree = false;
  std::vector<AxiomReport> reports;
};

Theorem1Verdict theorem1_verdict(const BeliefFamily& fam, const AxiomOptions& opts = {});

struct Theorem2Verdict {
  bool axioms_pass = false;
  bool markov_match = false;
  bool agree = false;
  double max_deviation = 0.0;  // round-trip, when the causal graph exists
  std::vector<AxiomReport> reports;
};

/// Axioms 2-4 and 6 against the round trip fam -> Markov model on
/// causal_graph(fam) -> family_from_markov.
Theorem2Verdict theorem2_verdict(const BeliefFamily& fam, const AxiomOptions& opts = {});

}  // namespace causal
