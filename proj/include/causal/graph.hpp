#pragma once

#include <array>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "causal/varset.hpp"

namespace causal {

class CycleError : public std::invalid_argument {
 public:
  CycleError(const std::string& what, std::vector<Var> cycle)
      : std::invalid_argument(what), cycle_(std::move(cycle)) {}
  /// Nodes of a directed cycle, in edge order (last -> first closes it).
  const std::vector<Var>& cycle() const { return cycle_; }

 private:
  std::vector<Var> cycle_;
};

using Edge = std::pair<Var, Var>;  // tail -> head

/// Directed acyclic graph over a fixed universe of named indices. Truncation
/// keeps the universe and shrinks the active node set, so indices always line
/// up with the variable space.
class Dag {
 public:
  Dag() = default;
  explicit Dag(std::vector<std::string> names);
  /// Throws CycleError on a directed cycle and std::invalid_argument on a
  /// self-loop or unknown node.
  Dag(std::vector<std::string> names, const std::vector<Edge>& edges);

  const std::vector<std::string>& names() const { return names_; }
  const std::string& name(Var v) const { return names_.at(v); }
  Var index_of(std::string_view name) const;
  VarSet nodes() const { return nodes_; }
  std::size_t universe_size() const { return names_.size(); }

  void add_edge(Var tail, Var head);
  void remove_edge(Var tail, Var head);
  bool has_edge(Var tail, Var head) const;
  std::vector<Edge> edges() const;
  std::size_t edge_count() const;

  VarSet parents(Var v) const;
  VarSet children(Var v) const;
  /// Strict descendants / ancestors.
  VarSet descendants(Var v) const;
  VarSet ancestors(Var v) const;
  /// Nodes with a directed path into some member of `s` (members excluded
  /// unless they are ancestors of other members).
  VarSet ancestors_of(VarSet s) const;
  VarSet descendants_of(VarSet s) const;
  VarSet nondescendants(Var v) const;
  std::vector<Var> topological_order() const;
  std::vector<VarSet> parent_sets() const;

  friend bool operator==(const Dag& a, const Dag& b);

 private:
  friend Dag truncate_remove(const Dag&, VarSet);
  void require_node(Var v) const;

  std::vector<std::string> names_;
  VarSet nodes_;
  std::array<VarSet, kMaxVariables> parents_{};
};

/// Shortest directed cycle in the digraph given by parent masks, or empty.
std::vector<Var> find_shortest_cycle(VarSet nodes, const std::vector<VarSet>& parents);

Dag truncate_remove(const Dag& g, VarSet W);
Dag truncate_in(const Dag& g, VarSet I);
Dag truncate_out(const Dag& g, VarSet J);
Dag truncate_in_out(const Dag& g, VarSet I, VarSet J);
/// Deletes arrows into I and into J(K), the J-nodes that are not ancestors of
/// any K-node in truncate_in(g, I).
Dag truncate_in_cond(const Dag& g, VarSet I, VarSet J, VarSet K);

/// True iff K blocks every undirected path from an I-node to a J-node: some
/// collider on the path has neither itself nor a descendant in K, or some
/// non-collider lies in K.
bool blocks(const Dag& g, VarSet I, VarSet J, VarSet K);
/// Same criterion with the collider clause phrased as w not in K and
/// K within ND(w).
bool d_separates(const Dag& g, VarSet K, VarSet I, VarSet J);

std::string to_dot(const Dag& g);

/// All DAGs on the given names, in increasing edge-mask order.
std::vector<Dag> enumerate_dags(const std::vector<std::string>& names);

}  // namespace causal
