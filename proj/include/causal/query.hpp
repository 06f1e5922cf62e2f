#pragma once

#include <string_view>

#include "causal/markov.hpp"
#include "causal/model_file.hpp"

namespace causal {

/// query := "P(" bindings ("|" cond ("," cond)*)? ")"
/// cond  := binding | "do(" bindings ")"
/// binding := NAME ("=" value)?   -- an omitted value leaves a free symbol
/// Names match exactly, or case-insensitively when that is unambiguous.
/// Throws ParseError (line 1) with the column of the problem.
QueryExpr parse_query(std::string_view text, const LoadedModel& model);

}  // namespace causal
