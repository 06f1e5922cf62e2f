#include <doctest.h>

#include "causal/dist.hpp"
#include "causal/graph.hpp"
#include "causal/markov.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace causal;

namespace {

std::vector<Edge> named_edges(const Dag& g, const std::vector<std::pair<std::string, std::string>>& e) {
  std::vector<Edge> out;
  for (const auto& [a, b] : e) out.emplace_back(g.index_of(a), g.index_of(b));
  std::sort(out.begin(), out.end());
  return out;
}

template <class Fn>
void for_each_disjoint_triple(VarSet all, Fn&& fn) {
  for_each_subset(all, [&](VarSet I) {
    if (I.empty()) return;
    for_each_subset(all - I, [&](VarSet J) {
      if (J.empty()) return;
      for_each_subset(all - I - J, [&](VarSet K) { fn(I, J, K); });
    });
  });
}

}  // namespace

TEST_CASE("construction rejects cycles and self-loops") {
  CHECK_THROWS_AS(Dag({"a", "b"}, {{0, 1}, {1, 0}}), CycleError);
  CHECK_THROWS_AS(Dag({"a"}, {{0, 0}}), std::invalid_argument);
  CHECK_THROWS_AS(Dag({"a"}, {{0, 3}}), std::invalid_argument);
  try {
    Dag({"a", "b", "c"}, {{0, 1}, {1, 2}, {2, 0}});
    FAIL("expected cycle");
  } catch (const CycleError& e) {
    CHECK(e.cycle().size() == 3);
  }
  Dag g({"a", "b"}, {{0, 1}});
  CHECK_THROWS_AS(g.add_edge(1, 0), CycleError);
  CHECK(g.edge_count() == 1);
}

TEST_CASE("closures") {
  Dag empty({"a", "b", "c"});
  for (Var v : empty.nodes()) {
    CHECK(empty.parents(v).empty());
    CHECK(empty.nondescendants(v) == empty.nodes().without(v));
  }
  Dag g = fx::eight_node();
  CHECK(g.parents(g.index_of("i")) == fx::vars(g, {"w", "j"}));
  CHECK(g.descendants(g.index_of("i")) == fx::vars(g, {"k", "z"}));
  CHECK(g.ancestors(g.index_of("i")) == fx::vars(g, {"a", "w", "j"}));
  CHECK(g.nondescendants(g.index_of("i")) == fx::vars(g, {"a", "b", "w", "j"}));
  CHECK_THROWS(g.parents(20));
  CHECK_THROWS(g.index_of("nope"));
}

TEST_CASE("topological order respects every edge") {
  for (const Dag& g : enumerate_dags({"a", "b", "c", "d"})) {
    auto order = g.topological_order();
    std::vector<std::size_t> pos(4);
    for (std::size_t k = 0; k < order.size(); ++k) pos[order[k]] = k;
    for (auto [t, h] : g.edges()) CHECK(pos[t] < pos[h]);
  }
}

TEST_CASE("dag counts") {
  CHECK(enumerate_dags({"a", "b"}).size() == 3);
  CHECK(enumerate_dags({"a", "b", "c"}).size() == 25);
  CHECK(enumerate_dags({"a", "b", "c", "d"}).size() == 543);
}

TEST_CASE("truncate_remove") {
  Dag g = fx::blake();
  CHECK(truncate_remove(g, VarSet{}) == g);
  Dag t = truncate_remove(g, fx::vars(g, {"E"}));
  CHECK(t.edges() == named_edges(g, {{"A", "L"}}));
  CHECK_FALSE(t.nodes().contains(g.index_of("E")));
  Dag none = truncate_remove(g, g.nodes());
  CHECK(none.nodes().empty());
  CHECK(none.edges().empty());
}

TEST_CASE("truncations of the four-node collider graph") {
  Dag g = fx::collider4();
  VarSet I = fx::vars(g, {"I"}), J = fx::vars(g, {"J0", "J1"}), K = fx::vars(g, {"K"});
  CHECK(truncate_in(g, I).edges() == named_edges(g, {{"J1", "K"}, {"K", "J0"}}));
  CHECK(truncate_in_out(g, I, J).edges() == named_edges(g, {{"K", "J0"}}));
  CHECK(truncate_in_cond(g, I, J, K).edges() == named_edges(g, {{"J1", "K"}}));
  CHECK_THROWS(truncate_in_out(g, I, I));
  CHECK_THROWS(truncate_in_cond(g, I, J, J));
  CHECK(truncate_out(g, fx::vars(g, {"K"})).edges() ==
        named_edges(g, {{"J0", "I"}, {"J1", "I"}, {"J1", "K"}}));
}

TEST_CASE("truncations stay acyclic and only delete edges") {
  for (const Dag& g : enumerate_dags({"a", "b", "c"})) {
    for_each_subset(g.nodes(), [&](VarSet I) {
      for_each_subset(g.nodes() - I, [&](VarSet J) {
        Dag t = truncate_in_out(g, I, J);
        CHECK(t.topological_order().size() == 3);
        for (auto e : t.edges()) CHECK(g.has_edge(e.first, e.second));
      });
    });
  }
}

TEST_CASE("blocking examples") {
  Dag g = fx::collider4();
  CHECK(blocks(g, fx::vars(g, {"J1"}), fx::vars(g, {"J0"}), fx::vars(g, {"K"})));
  CHECK_FALSE(blocks(g, fx::vars(g, {"J1"}), fx::vars(g, {"J0"}), fx::vars(g, {"K", "I"})));
  Dag loose({"a", "b", "c"}, {{0, 1}});
  for_each_subset(VarSet{1}, [&](VarSet K) { CHECK(blocks(loose, VarSet{0}, VarSet{2}, K)); });
  CHECK_THROWS(blocks(g, VarSet{0}, VarSet{0}, VarSet{}));
}

TEST_CASE("opening the four-node collider shows up numerically") {
  Dag g = fx::collider4();
  JointTable t = joint_from_markov(fx::random_model(g, 4));
  VarSet J1 = fx::vars(g, {"J1"}), J0 = fx::vars(g, {"J0"});
  CHECK(cond_independent(t, J1, J0, fx::vars(g, {"K"})));
  CHECK_FALSE(cond_independent(t, J1, J0, fx::vars(g, {"K", "I"})));
}

TEST_CASE("d-separation examples") {
  Dag g = fx::eight_node();
  CHECK(d_separates(g, fx::vars(g, {"w", "j"}), fx::vars(g, {"i"}), fx::vars(g, {"a", "b"})));
  CHECK_FALSE(d_separates(g, VarSet{}, fx::vars(g, {"i"}), fx::vars(g, {"a"})));
  CHECK_FALSE(d_separates(g, VarSet{}, fx::vars(g, {"i"}), fx::vars(g, {"k"})));
  CHECK_THROWS(d_separates(g, fx::vars(g, {"i"}), fx::vars(g, {"i"}), fx::vars(g, {"a"})));
}

TEST_CASE("blocks, d_separates and the moralization oracle agree on all 4-node dags") {
  std::size_t checked = 0;
  for (const Dag& g : enumerate_dags({"a", "b", "c", "d"})) {
    for_each_disjoint_triple(g.nodes(), [&](VarSet I, VarSet J, VarSet K) {
      bool b = blocks(g, I, J, K);
      REQUIRE(b == d_separates(g, K, I, J));
      REQUIRE(b == oracle::dsep_moral(g, I, J, K));
      ++checked;
    });
  }
  CHECK(checked > 0);
}

TEST_CASE("d-separation implies conditional independence on 3-node dags") {
  for (const Dag& g : enumerate_dags({"a", "b", "c"})) {
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
      JointTable t = joint_from_markov(fx::random_model(g, seed));
      for_each_disjoint_triple(g.nodes(), [&](VarSet I, VarSet J, VarSet K) {
        if (d_separates(g, K, I, J)) CHECK(cond_independent(t, I, J, K));
      });
    }
  }
}

TEST_CASE("parents screen off nondescendants in every truncated graph G_K") {
  // The K nodes are deleted first; parents and nondescendants are taken in G_K.
  for (const Dag& g : enumerate_dags({"a", "b", "c", "d"})) {
    for (Var i : g.nodes()) {
      for_each_subset(g.nodes().without(i), [&](VarSet K) {
        Dag h = truncate_remove(g, K);
        VarSet pa = h.parents(i);
        VarSet rest = h.nondescendants(i) - pa;
        if (rest.empty()) return;
        CHECK(d_separates(h, pa, VarSet::single(i), rest));
      });
    }
  }
}

TEST_CASE("no proper subset of the parents screens off the nondescendants") {
  for (const Dag& g : enumerate_dags({"a", "b", "c", "d"})) {
    JointTable t = joint_from_markov(fx::random_model(g, 17));
    for (Var i : g.nodes()) {
      VarSet pa = g.parents(i);
      VarSet nd = g.nondescendants(i);
      for_each_subset(pa, [&](VarSet T) {
        if (T == pa) return;
        CHECK_FALSE(d_separates(g, T, VarSet::single(i), nd - T));
        CHECK_FALSE(cond_independent(t, VarSet::single(i), nd - T, T));
      });
    }
  }
}

TEST_CASE("dot export") {
  CHECK(to_dot(Dag()) == "digraph {}");
  Dag g({"a", "b", "c"}, {{0, 1}});
  std::string dot = to_dot(g);
  CHECK(dot.find("a -> b;") != std::string::npos);
  CHECK(dot.find("c;") != std::string::npos);
  CHECK(dot.rfind("digraph {", 0) == 0);
}
