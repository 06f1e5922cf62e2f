#include "causal/space.hpp"

#include <algorithm>
#include <unordered_set>

namespace causal {

VariableSpace::VariableSpace(std::vector<std::string> names, std::vector<std::size_t> cardinalities)
    : names_(std::move(names)), cards_(std::move(cardinalities)) {
  if (names_.size() != cards_.size())
    throw std::invalid_argument("variable space: names and cardinalities differ in length");
  if (names_.size() > kMaxVariables)
    throw std::invalid_argument("variable space: at most " + std::to_string(kMaxVariables) +
                                " variables are supported");
  std::unordered_set<std::string> seen;
  for (std::size_t v = 0; v < names_.size(); ++v) {
    if (names_[v].empty()) throw std::invalid_argument("variable space: empty variable name");
    if (!seen.insert(names_[v]).second)
      throw std::invalid_argument("variable space: duplicate variable '" + names_[v] + "'");
    if (cards_[v] < 2)
      throw std::invalid_argument("variable space: variable '" + names_[v] +
                                  "' must have at least 2 values");
    if (cards_[v] > 0xFFFF)
      throw std::invalid_argument("variable space: variable '" + names_[v] + "' has too many values");
  }
}

Var VariableSpace::index_of(std::string_view name) const {
  auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end())
    throw std::invalid_argument("unknown variable '" + std::string(name) + "'");
  return static_cast<Var>(it - names_.begin());
}

bool VariableSpace::contains(std::string_view name) const {
  return std::find(names_.begin(), names_.end(), name) != names_.end();
}

VarSet VariableSpace::set_of(const std::vector<std::string>& names) const {
  VarSet s;
  for (const auto& n : names) s.insert(index_of(n));
  return s;
}

std::string VariableSpace::format(VarSet s) const {
  std::string out = "{";
  bool first = true;
  for (Var v : s) {
    if (!first) out += ",";
    first = false;
    out += v < names_.size() ? names_[v] : "#" + std::to_string(v);
  }
  return out + "}";
}

std::size_t VariableSpace::outcome_count(VarSet s) const {
  std::size_t n = 1;
  for (Var v : s) n *= card(v);
  return n;
}

std::size_t Assignment::get(Var v) const {
  if (!binds(v)) throw std::out_of_range("assignment does not bind variable #" + std::to_string(v));
  return values_[v];
}

Assignment& Assignment::set(Var v, std::size_t value) {
  if (v >= kMaxVariables) throw std::out_of_range("variable index out of range");
  domain_.insert(v);
  values_[v] = static_cast<Value>(value);
  return *this;
}

Assignment& Assignment::unset(Var v) {
  domain_.erase(v);
  values_[v] = 0;
  return *this;
}

Assignment Assignment::restrict(VarSet s) const {
  Assignment out;
  for (Var v : domain_ & s) out.set(v, values_[v]);
  return out;
}

Assignment Assignment::merged(const Assignment& other) const {
  Assignment out = *this;
  for (Var v : other.domain_) out.set(v, other.values_[v]);
  return out;
}

bool Assignment::consistent_with(const Assignment& other) const {
  for (Var v : domain_ & other.domain_)
    if (values_[v] != other.values_[v]) return false;
  return true;
}

void Assignment::validate(const VariableSpace& space) const {
  for (Var v : domain_) {
    if (v >= space.size())
      throw std::invalid_argument("assignment binds unknown variable #" + std::to_string(v));
    if (values_[v] >= space.card(v))
      throw std::invalid_argument("value " + std::to_string(values_[v]) + " out of range for '" +
                                  space.name(v) + "'");
  }
}

std::string Assignment::format(const VariableSpace& space) const {
  std::string out;
  for (Var v : domain_) {
    if (!out.empty()) out += ",";
    out += space.name(v) + "=" + std::to_string(values_[v]);
  }
  return out;
}

bool operator==(const Assignment& a, const Assignment& b) {
  if (a.domain_ != b.domain_) return false;
  for (Var v : a.domain_)
    if (a.values_[v] != b.values_[v]) return false;
  return true;
}

bool operator<(const Assignment& a, const Assignment& b) {
  if (a.domain_ != b.domain_) return a.domain_ < b.domain_;
  for (Var v : a.domain_)
    if (a.values_[v] != b.values_[v]) return a.values_[v] < b.values_[v];
  return false;
}

OutcomeGrid::OutcomeGrid(const VariableSpace& space, VarSet domain) : domain_(domain) {
  if (!domain.subset_of(space.all()))
    throw std::invalid_argument("outcome grid: domain is not a subset of the space");
  std::size_t stride = 1;
  for (Var v = kMaxVariables; v-- > 0;) {
    if (!domain.contains(v)) continue;
    strides_[v] = stride;
    cards_[v] = space.card(v);
    stride *= cards_[v];
  }
  size_ = stride;
}

std::size_t OutcomeGrid::index(const Assignment& a) const {
  std::size_t idx = 0;
  for (Var v : domain_) idx += a.get(v) * strides_[v];
  return idx;
}

Assignment OutcomeGrid::at(std::size_t index) const {
  Assignment a;
  for (Var v : domain_) a.set(v, (index / strides_[v]) % cards_[v]);
  return a;
}

double Act::payoff(const VariableSpace& space, const Assignment& outcome) const {
  return payoffs.at(OutcomeGrid(space, domain).index(outcome));
}

std::vector<Assignment> enumerate_outcomes(const VariableSpace& space, VarSet subset) {
  OutcomeGrid grid(space, subset);
  std::vector<Assignment> out;
  out.reserve(grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k) out.push_back(grid.at(k));
  return out;
}

std::vector<Assignment> enumerate_outcomes(const VariableSpace& space,
                                           const std::vector<std::string>& subset) {
  return enumerate_outcomes(space, space.set_of(subset));
}

Act indicator_act(const VariableSpace& space, VarSet domain, const std::vector<Assignment>& event) {
  OutcomeGrid grid(space, domain);
  Act act{domain, std::vector<double>(grid.size(), 0.0)};
  for (const auto& a : event) {
    if (a.domain() != domain)
      throw std::invalid_argument("indicator act: event members bind different variables");
    a.validate(space);
    act.payoffs[grid.index(a)] = 1.0;
  }
  return act;
}

Act constant_act(const VariableSpace& space, VarSet domain, double value) {
  return Act{domain, std::vector<double>(space.outcome_count(domain), value)};
}

}  // namespace causal
