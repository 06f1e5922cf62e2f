#pragma once

#include <optional>
#include <string>
#include <vector>

#include "causal/graph.hpp"
#include "causal/markov.hpp"

namespace causal {

/// P(target | given, do(intervened)). Each variable has one symbol throughout
/// an expression: its query value, a free symbol, or a summation index.
struct ProbTerm {
  VarSet target;
  VarSet given;
  VarSet intervened;

  friend bool operator==(const ProbTerm&, const ProbTerm&) = default;
  friend auto operator<=>(const ProbTerm&, const ProbTerm&) = default;
};

/// sum over `summed` of the product of `factors`; an empty product is 1.
struct Expression {
  VarSet summed;
  std::vector<ProbTerm> factors;

  bool do_free() const;
  VarSet variables() const;
  friend bool operator==(const Expression&, const Expression&) = default;
};

/// Sorts factors by descending topological rank of their targets (ties by
/// masks), the normal form used for comparison and printing.
void canonicalize(Expression& e, const Dag& g);
Expression normal_form(Expression e, const Dag& g);

struct PrintContext {
  const VariableSpace* space = nullptr;
  Assignment values;                              // bound query values
  const std::vector<std::vector<std::string>>* labels = nullptr;  // optional per-variable labels
};

/// Canonical ASCII text, e.g. `sum_a[ P(L=1|A=a) * P(A=a|E=1) ]`. Bound
/// variables print as NAME=value, others as NAME=lowercase or just the name
/// when it is already lowercase.
std::string format_expression(const Expression& e, const PrintContext& ctx);

struct IdentifyOptions {
  std::size_t depth_limit = 12;
  std::size_t state_budget = 200000;
};

struct IdentifyResult {
  std::optional<Expression> formula;
  std::vector<std::string> trace;  // one entry per applied rewrite
  std::size_t depth = 0;
  std::size_t states = 0;
  bool budget_exhausted = false;
};

/// Breadth-first rewrite search using Rule 1 (both directions), Rule 2, chain
/// split/merge and total probability. Keeps searching past the first do-free
/// expression until a level yields one whose leaves are all P(v | Pa(v)); the
/// best do-free expression found wins. A miss only means "not identified
/// within budget".
IdentifyResult identify(const Dag& g, const QueryExpr& q, const IdentifyOptions& opts = {});

/// Value of a do-free expression on an observational table. `values` binds
/// every non-summed variable of the expression.
double evaluate(const Expression& e, const JointTable& joint, const Assignment& values);

}  // namespace causal
