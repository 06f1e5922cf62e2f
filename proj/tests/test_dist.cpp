#include <doctest.h>

#include <random>

#include "causal/dist.hpp"
#include "causal/markov.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace causal;

namespace {

JointTable ae_table() {
  auto s = fx::binary_space({"A", "E"});
  return JointTable(s, s->all(), {0.1, 0.2, 0.3, 0.4});
}

JointTable random_table(JointTable::SpacePtr s, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.05, 1.0);
  std::vector<double> w(s->outcome_count(s->all()));
  for (double& x : w) x = u(rng);
  return JointTable::normalized(s, s->all(), w);
}

}  // namespace

TEST_CASE("table invariants") {
  auto s = fx::binary_space({"A"});
  CHECK_THROWS(JointTable(s, s->all(), {0.5, 0.4}));
  CHECK_THROWS(JointTable(s, s->all(), {1.5, -0.5}));
  CHECK_THROWS(JointTable(s, s->all(), {1.0}));
  JointTable t(s, s->all(), {0.0, 1.0});
  CHECK_FALSE(t.full_support());
}

TEST_CASE("marginal") {
  JointTable t = ae_table();
  CHECK(max_abs_diff(t.marginal(t.domain()), t) == 0.0);
  JointTable a = t.marginal(VarSet{0});
  CHECK(a.mass()[0] == doctest::Approx(0.3).epsilon(1e-12));
  CHECK(a.mass()[1] == doctest::Approx(0.7).epsilon(1e-12));
  auto s = t.space_ptr();
  JointTable u = JointTable::uniform(s, s->all());
  CHECK(u.marginal(VarSet{1}).mass() == std::vector<double>{0.5, 0.5});
  CHECK_THROWS(a.marginal(VarSet{1}));
}

TEST_CASE("marginal tower property") {
  auto s = fx::make_space({"A", "B", "C", "D"}, {2, 3, 2, 2});
  JointTable t = random_table(s, 7);
  for_each_subset(s->all(), [&](VarSet mid) {
    for_each_subset(mid, [&](VarSet low) {
      CHECK(max_abs_diff(t.marginal(mid).marginal(low), t.marginal(low)) <= 1e-12);
    });
  });
}

TEST_CASE("conditional") {
  JointTable t = ae_table();
  CHECK(max_abs_diff(t.conditional(VarSet{1}, Assignment{}), t.marginal(VarSet{1})) <= 1e-15);
  Assignment a1;
  a1.set(0, 1);
  CHECK(t.conditional(VarSet{1}, a1).mass()[1] == doctest::Approx(0.4 / 0.7).epsilon(1e-12));

  auto s = fx::binary_space({"a", "b"});
  JointTable prod(s, s->all(), {0.3 * 0.6, 0.3 * 0.4, 0.7 * 0.6, 0.7 * 0.4});
  for (std::size_t v = 0; v < 2; ++v) {
    Assignment x;
    x.set(0, v);
    CHECK(max_abs_diff(prod.conditional(VarSet{1}, x), prod.marginal(VarSet{1})) <= 1e-12);
  }
}

TEST_CASE("conditioning on a zero-probability event throws") {
  auto s = fx::binary_space({"A", "E"});
  JointTable t(s, s->all(), {0.5, 0.5, 0.0, 0.0});
  Assignment a1;
  a1.set(0, 1);
  CHECK_THROWS_AS(t.conditional(VarSet{1}, a1), ZeroProbabilityError);
  CHECK_THROWS_AS(t.conditional_probability(Assignment{}.set(1, 0), a1), ZeroProbabilityError);
}

TEST_CASE("conditional independence on product and chain tables") {
  auto s = fx::binary_space({"A", "E", "L"});
  Dag none(s->names());
  JointTable prod = joint_from_markov(random_markov(s, none, 3));
  for_each_subset(s->all(), [&](VarSet I) {
    for_each_subset(s->all() - I, [&](VarSet J) {
      for_each_subset(s->all() - I - J, [&](VarSet K) { CHECK(cond_independent(prod, I, J, K)); });
    });
  });

  JointTable chain = joint_from_markov(fx::random_model(fx::chain(), 11));
  CHECK(cond_independent(chain, VarSet{2}, VarSet{0}, VarSet{1}));
  CHECK_FALSE(cond_independent(chain, VarSet{2}, VarSet{0}, VarSet{}));
  CHECK_THROWS(cond_independent(chain, VarSet{2}, VarSet{2}, VarSet{}));
}

TEST_CASE("ci deviation is symmetric and matches the brute-force oracle") {
  auto s = fx::make_space({"A", "B", "C", "D"}, {2, 3, 2, 2});
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    JointTable t = random_table(s, seed);
    auto b = oracle::brute_from_table(t);
    for_each_subset(s->all(), [&](VarSet I) {
      for_each_subset(s->all() - I, [&](VarSet J) {
        for_each_subset(s->all() - I - J, [&](VarSet K) {
          CHECK(cond_independent(t, I, J, K) == cond_independent(t, J, I, K));
          CHECK(std::abs(ci_deviation(t, I, J, K) - oracle::brute_ci_deviation(b, I, J, K)) <= 1e-12);
        });
      });
    });
  }
}

TEST_CASE("chain factorization residual") {
  auto s = fx::make_space({"A", "B", "C"}, {2, 3, 2});
  JointTable t = random_table(s, 5);
  CHECK(chain_factorization_residual(t, {VarSet{}, VarSet{0}, VarSet{0, 1}}) <= 1e-15);

  Dag none(s->names());
  JointTable prod = joint_from_markov(random_markov(s, none, 9));
  CHECK(chain_factorization_residual(prod, {VarSet{}, VarSet{}, VarSet{}}) <= 1e-15);

  JointTable chain = joint_from_markov(fx::random_model(fx::chain(), 2));
  CHECK(chain_factorization_residual(chain, {VarSet{}, VarSet{0}, VarSet{1}}) <= 1e-15);
  CHECK(chain_factorization_residual(chain, {VarSet{}, VarSet{0}, VarSet{0}}) > 1e-6);
}

TEST_CASE("independence matches the factorization residual on full-support tables") {
  // I _|_ J | K for singletons with K the remaining variable: the three-node
  // factorization mu(K) mu(I|K) mu(J|K) holds exactly when the CI holds.
  auto s = fx::binary_space({"A", "B", "C"});
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    JointTable t = seed % 2 ? random_table(s, seed) : joint_from_markov(fx::random_model(fx::chain(), seed));
    bool ci = cond_independent(t, VarSet{0}, VarSet{2}, VarSet{1});
    double r = chain_factorization_residual(t, {VarSet{1}, VarSet{}, VarSet{1}});
    CHECK(ci == (r <= kDefaultTol));
  }
}
