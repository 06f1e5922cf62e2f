#include "causal/graph.hpp"

#include <algorithm>
#include <deque>
#include <functional>

namespace causal {

namespace {

void require_disjoint(std::initializer_list<VarSet> sets, const char* what) {
  VarSet seen;
  for (VarSet s : sets) {
    if (seen.intersects(s)) throw std::invalid_argument(std::string(what) + ": sets must be disjoint");
    seen |= s;
  }
}

}  // namespace

Dag::Dag(std::vector<std::string> names) : names_(std::move(names)) {
  if (names_.size() > kMaxVariables) throw std::invalid_argument("graph: too many nodes");
  nodes_ = VarSet::first(names_.size());
}

Dag::Dag(std::vector<std::string> names, const std::vector<Edge>& edges) : Dag(std::move(names)) {
  for (auto [t, h] : edges) {
    require_node(t);
    require_node(h);
    if (t == h) throw std::invalid_argument("graph: self-loop on '" + names_[t] + "'");
    parents_[h].insert(t);
  }
  std::vector<VarSet> pa(parents_.begin(), parents_.begin() + static_cast<std::ptrdiff_t>(names_.size()));
  auto cycle = find_shortest_cycle(nodes_, pa);
  if (!cycle.empty()) {
    std::string text;
    for (Var v : cycle) text += names_[v] + " -> ";
    text += names_[cycle.front()];
    throw CycleError("graph: directed cycle " + text, cycle);
  }
}

Var Dag::index_of(std::string_view name) const {
  auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) throw std::invalid_argument("unknown node '" + std::string(name) + "'");
  return static_cast<Var>(it - names_.begin());
}

void Dag::require_node(Var v) const {
  if (!nodes_.contains(v)) throw std::invalid_argument("unknown node #" + std::to_string(v));
}

void Dag::add_edge(Var tail, Var head) {
  require_node(tail);
  require_node(head);
  if (tail == head) throw std::invalid_argument("graph: self-loop on '" + names_[tail] + "'");
  if (tail == head || descendants(head).contains(tail))
    throw CycleError("graph: edge " + names_[tail] + " -> " + names_[head] + " closes a cycle",
                     {tail, head});
  parents_[head].insert(tail);
}

void Dag::remove_edge(Var tail, Var head) {
  require_node(head);
  parents_[head].erase(tail);
}

bool Dag::has_edge(Var tail, Var head) const {
  return nodes_.contains(head) && parents_[head].contains(tail);
}

std::vector<Edge> Dag::edges() const {
  std::vector<Edge> out;
  for (Var h : nodes_)
    for (Var t : parents_[h]) out.emplace_back(t, h);
  std::sort(out.begin(), out.end());
  return out;
}

std::size_t Dag::edge_count() const {
  std::size_t n = 0;
  for (Var h : nodes_) n += parents_[h].size();
  return n;
}

VarSet Dag::parents(Var v) const {
  require_node(v);
  return parents_[v];
}

VarSet Dag::children(Var v) const {
  require_node(v);
  VarSet out;
  for (Var h : nodes_)
    if (parents_[h].contains(v)) out.insert(h);
  return out;
}

VarSet Dag::descendants_of(VarSet s) const {
  VarSet out;
  VarSet frontier = s;
  while (!frontier.empty()) {
    VarSet next;
    for (Var h : nodes_ - out)
      if (parents_[h].intersects(frontier)) next.insert(h);
    next -= out;
    out |= next;
    frontier = next;
  }
  return out;
}

VarSet Dag::ancestors_of(VarSet s) const {
  VarSet out;
  VarSet frontier = s;
  while (!frontier.empty()) {
    VarSet next;
    for (Var v : frontier) next |= parents_[v];
    next -= out;
    out |= next;
    frontier = next;
  }
  return out;
}

VarSet Dag::descendants(Var v) const {
  require_node(v);
  return descendants_of(VarSet::single(v));
}

VarSet Dag::ancestors(Var v) const {
  require_node(v);
  return ancestors_of(VarSet::single(v));
}

VarSet Dag::nondescendants(Var v) const {
  return nodes_ - descendants(v) - VarSet::single(v);
}

std::vector<Var> Dag::topological_order() const {
  std::vector<Var> order;
  VarSet placed;
  while (placed != nodes_) {
    bool progress = false;
    for (Var v : nodes_ - placed) {
      if (parents_[v].subset_of(placed)) {
        order.push_back(v);
        placed.insert(v);
        progress = true;
      }
    }
    if (!progress) throw std::logic_error("graph: cycle in supposedly acyclic graph");
  }
  return order;
}

std::vector<VarSet> Dag::parent_sets() const {
  std::vector<VarSet> out(names_.size());
  for (Var v : nodes_) out[v] = parents_[v];
  return out;
}

bool operator==(const Dag& a, const Dag& b) {
  if (a.names_ != b.names_ || a.nodes_ != b.nodes_) return false;
  for (Var v : a.nodes_)
    if (a.parents_[v] != b.parents_[v]) return false;
  return true;
}

std::vector<Var> find_shortest_cycle(VarSet nodes, const std::vector<VarSet>& parents) {
  std::vector<Var> best;
  for (Var start : nodes) {
    // BFS along edges tail -> head from start until start is reached again.
    std::array<Var, kMaxVariables> prev{};
    VarSet seen = VarSet::single(start);
    std::deque<Var> queue{start};
    bool found = false;
    Var last = start;
    while (!queue.empty() && !found) {
      Var u = queue.front();
      queue.pop_front();
      for (Var h : nodes) {
        if (!parents[h].contains(u)) continue;
        if (h == start) {
          found = true;
          last = u;
          break;
        }
        if (seen.contains(h)) continue;
        seen.insert(h);
        prev[h] = u;
        queue.push_back(h);
      }
    }
    if (!found) continue;
    std::vector<Var> cycle;
    for (Var v = last; v != start; v = prev[v]) cycle.push_back(v);
    cycle.push_back(start);
    std::reverse(cycle.begin(), cycle.end());
    if (best.empty() || cycle.size() < best.size()) best = cycle;
  }
  return best;
}

Dag truncate_remove(const Dag& g, VarSet W) {
  Dag out = g;
  out.nodes_ = g.nodes_ - W;
  for (Var v = 0; v < kMaxVariables; ++v) {
    if (out.nodes_.contains(v))
      out.parents_[v] = g.parents_[v] - W;
    else
      out.parents_[v] = VarSet{};
  }
  return out;
}

Dag truncate_in(const Dag& g, VarSet I) {
  Dag out = g;
  for (Var v : I & g.nodes())
    for (Var p : g.parents(v)) out.remove_edge(p, v);
  return out;
}

Dag truncate_out(const Dag& g, VarSet J) {
  Dag out = g;
  for (auto [t, h] : g.edges())
    if (J.contains(t)) out.remove_edge(t, h);
  return out;
}

Dag truncate_in_out(const Dag& g, VarSet I, VarSet J) {
  require_disjoint({I, J}, "truncation");
  return truncate_out(truncate_in(g, I), J);
}

Dag truncate_in_cond(const Dag& g, VarSet I, VarSet J, VarSet K) {
  require_disjoint({I, J, K}, "truncation");
  Dag gi = truncate_in(g, I);
  VarSet anc_k = gi.ancestors_of(K & gi.nodes());
  VarSet jk = J - anc_k;
  return truncate_in(gi, jk);
}

namespace {

// Calls visit(path) for every simple undirected path from an I-node to a
// J-node; stops early when visit returns false.
bool for_each_path(const Dag& g, VarSet I, VarSet J, const std::function<bool(const std::vector<Var>&)>& visit) {
  std::array<VarSet, kMaxVariables> adj{};
  for (auto [t, h] : g.edges()) {
    adj[t].insert(h);
    adj[h].insert(t);
  }
  std::vector<Var> path;
  VarSet on_path;
  std::function<bool(Var)> dfs = [&](Var u) -> bool {
    if (J.contains(u)) return visit(path);
    for (Var w : adj[u] - on_path) {
      path.push_back(w);
      on_path.insert(w);
      bool go_on = dfs(w);
      path.pop_back();
      on_path.erase(w);
      if (!go_on) return false;
    }
    return true;
  };
  for (Var s : I & g.nodes()) {
    path = {s};
    on_path = VarSet::single(s);
    if (!dfs(s)) return false;
  }
  return true;
}

bool is_collider(const Dag& g, Var prev, Var q, Var next) {
  return g.has_edge(prev, q) && g.has_edge(next, q);
}

}  // namespace

bool blocks(const Dag& g, VarSet I, VarSet J, VarSet K) {
  require_disjoint({I, J, K}, "blocks");
  return for_each_path(g, I, J, [&](const std::vector<Var>& path) {
    for (std::size_t k = 1; k + 1 < path.size(); ++k) {
      Var q = path[k];
      if (is_collider(g, path[k - 1], q, path[k + 1])) {
        if (!K.contains(q) && !g.descendants(q).intersects(K)) return true;
      } else if (K.contains(q)) {
        return true;
      }
    }
    return false;
  });
}

bool d_separates(const Dag& g, VarSet K, VarSet I, VarSet J) {
  require_disjoint({I, J, K}, "d-separation");
  return for_each_path(g, I, J, [&](const std::vector<Var>& path) {
    for (std::size_t k = 1; k + 1 < path.size(); ++k) {
      Var w = path[k];
      bool collider = is_collider(g, path[k - 1], w, path[k + 1]);
      if (collider && !K.contains(w) && K.subset_of(g.nondescendants(w))) return true;
      if (!collider && K.contains(w)) return true;
    }
    return false;
  });
}

std::string to_dot(const Dag& g) {
  std::string out = "digraph {";
  bool any = false;
  for (Var v : g.nodes()) {
    if (!g.parents(v).empty() || !g.children(v).empty()) continue;
    out += " " + g.name(v) + ";";
    any = true;
  }
  for (auto [t, h] : g.edges()) {
    out += " " + g.name(t) + " -> " + g.name(h) + ";";
    any = true;
  }
  return out + (any ? " }" : "}");
}

std::vector<Dag> enumerate_dags(const std::vector<std::string>& names) {
  const std::size_t n = names.size();
  std::vector<Edge> slots;
  for (Var t = 0; t < n; ++t)
    for (Var h = 0; h < n; ++h)
      if (t != h) slots.emplace_back(t, h);
  if (slots.size() > 30) throw std::invalid_argument("enumerate_dags: too many nodes");
  std::vector<Dag> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << slots.size()); ++mask) {
    std::vector<VarSet> pa(n);
    for (std::size_t s = 0; s < slots.size(); ++s)
      if (mask >> s & 1) pa[slots[s].second].insert(slots[s].first);
    if (!find_shortest_cycle(VarSet::first(n), pa).empty()) continue;
    std::vector<Edge> edges;
    for (std::size_t s = 0; s < slots.size(); ++s)
      if (mask >> s & 1) edges.push_back(slots[s]);
    out.emplace_back(names, edges);
  }
  return out;
}

}  // namespace causal
