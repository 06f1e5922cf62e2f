#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "causal/varset.hpp"

namespace causal {

/// Ordered list of named finite variables. Index order is the canonical order.
class VariableSpace {
 public:
  VariableSpace() = default;
  VariableSpace(std::vector<std::string> names, std::vector<std::size_t> cardinalities);

  std::size_t size() const { return names_.size(); }
  VarSet all() const { return VarSet::first(names_.size()); }
  const std::string& name(Var v) const { return names_.at(v); }
  std::size_t card(Var v) const { return cards_.at(v); }
  const std::vector<std::string>& names() const { return names_; }
  const std::vector<std::size_t>& cardinalities() const { return cards_; }

  /// Throws std::invalid_argument naming the variable if it is unknown.
  Var index_of(std::string_view name) const;
  bool contains(std::string_view name) const;
  VarSet set_of(const std::vector<std::string>& names) const;
  std::string format(VarSet s) const;  // "{A,E}"

  /// Number of joint outcomes of `s`.
  std::size_t outcome_count(VarSet s) const;

  friend bool operator==(const VariableSpace&, const VariableSpace&) = default;

 private:
  std::vector<std::string> names_;
  std::vector<std::size_t> cards_;
};

/// Partial map from variables to value indices. Values of unbound variables
/// are ignored by comparisons.
class Assignment {
 public:
  using Value = std::uint16_t;

  Assignment() = default;

  VarSet domain() const { return domain_; }
  bool binds(Var v) const { return domain_.contains(v); }
  bool empty() const { return domain_.empty(); }
  std::size_t get(Var v) const;
  Assignment& set(Var v, std::size_t value);
  Assignment& unset(Var v);

  Assignment restrict(VarSet s) const;
  /// Union of bindings; `other` wins where both bind.
  Assignment merged(const Assignment& other) const;
  /// True iff both bind the same value on every shared variable.
  bool consistent_with(const Assignment& other) const;

  /// Throws std::invalid_argument if a variable or value is out of range.
  void validate(const VariableSpace& space) const;
  std::string format(const VariableSpace& space) const;  // "A=0,E=1"

  friend bool operator==(const Assignment& a, const Assignment& b);
  friend bool operator<(const Assignment& a, const Assignment& b);

 private:
  VarSet domain_;
  std::array<Value, kMaxVariables> values_{};
};

/// A policy intervenes on its bound variables; absence means "not intervened".
struct Policy {
  Assignment interventions;

  VarSet intervened() const { return interventions.domain(); }
  VarSet unintervened(const VariableSpace& space) const { return space.all() - intervened(); }
};

/// Mixed-radix indexing of the outcomes of a variable subset. The lowest
/// variable index is the most significant digit.
class OutcomeGrid {
 public:
  OutcomeGrid() = default;
  OutcomeGrid(const VariableSpace& space, VarSet domain);

  VarSet domain() const { return domain_; }
  std::size_t size() const { return size_; }
  /// `a` must bind every variable of the domain; extra bindings are ignored.
  std::size_t index(const Assignment& a) const;
  Assignment at(std::size_t index) const;
  std::size_t stride(Var v) const { return strides_[v]; }
  std::size_t card(Var v) const { return cards_[v]; }

 private:
  VarSet domain_;
  std::size_t size_ = 1;
  std::array<std::size_t, kMaxVariables> strides_{};
  std::array<std::size_t, kMaxVariables> cards_{};
};

/// Money-valued act over the outcomes of `domain`, in OutcomeGrid order.
struct Act {
  VarSet domain;
  std::vector<double> payoffs;

  double payoff(const VariableSpace& space, const Assignment& outcome) const;
};

std::vector<Assignment> enumerate_outcomes(const VariableSpace& space, VarSet subset);
std::vector<Assignment> enumerate_outcomes(const VariableSpace& space,
                                           const std::vector<std::string>& subset);

/// Act paying 1 on members of `event` and 0 elsewhere. Every member must bind
/// exactly `domain`.
Act indicator_act(const VariableSpace& space, VarSet domain, const std::vector<Assignment>& event);
Act constant_act(const VariableSpace& space, VarSet domain, double value);

}  // namespace causal
