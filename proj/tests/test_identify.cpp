#include <doctest.h>

#include "causal/identify.hpp"
#include "causal/markov.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace causal;

namespace {

QueryExpr symbolic(const Dag& g, std::vector<std::string> target, std::vector<std::string> observed,
                   std::vector<std::string> intervened) {
  return QueryExpr{fx::vars(g, target), fx::vars(g, observed), fx::vars(g, intervened), {}};
}

ProbTerm term(const Dag& g, std::vector<std::string> target, std::vector<std::string> given) {
  return ProbTerm{fx::vars(g, target), fx::vars(g, given), {}};
}

/// Largest gap between the formula and the do-probability over all values of
/// the query variables, computed on an independent brute-force joint.
double soundness_gap(const MarkovModel& m, const QueryExpr& q, const Expression& f) {
  JointTable joint = joint_from_markov(m);
  double worst = 0.0;
  VarSet vars = q.target | q.observed | q.intervened;
  for (const Assignment& x : enumerate_outcomes(m.space(), vars)) {
    auto brute = oracle::brute_joint(m, x.restrict(q.intervened));
    double given = brute.prob(x.restrict(q.observed));
    if (given <= 0.0) continue;
    double want = brute.prob(x.restrict(q.target | q.observed)) / given;
    worst = std::max(worst, std::abs(evaluate(f, joint, x) - want));
  }
  return worst;
}

}  // namespace

TEST_CASE("direct effect in the three-node complete graph") {
  Dag g = fx::blake();
  IdentifyResult r = identify(g, symbolic(g, {"L"}, {}, {"A", "E"}));
  REQUIRE(r.formula);
  CHECK(normal_form(*r.formula, g) == normal_form(Expression{{}, {term(g, {"L"}, {"A", "E"})}}, g));
  CHECK(r.depth == 1);
  CHECK(r.trace.size() == 1);
}

TEST_CASE("indirect effect through a mediator") {
  Dag g = fx::charlie();
  IdentifyResult r = identify(g, symbolic(g, {"L"}, {}, {"E"}));
  REQUIRE(r.formula);
  Expression want{fx::vars(g, {"A"}), {term(g, {"L"}, {"A"}), term(g, {"A"}, {"E"})}};
  CHECK(normal_form(*r.formula, g) == normal_form(want, g));
  auto space = fx::binary_space(g.names());
  PrintContext ctx{space.get(), {}, nullptr};
  CHECK(format_expression(*r.formula, ctx) == "sum_a[ P(L=l|A=a) * P(A=a|E=e) ]");
  CHECK_FALSE(r.trace.empty());
}

TEST_CASE("queries without do come back unchanged at depth zero") {
  Dag g = fx::charlie();
  QueryExpr q = symbolic(g, {"L"}, {"A"}, {});
  IdentifyResult r = identify(g, q);
  REQUIRE(r.formula);
  CHECK(r.depth == 0);
  CHECK(r.trace.empty());
  CHECK(*r.formula == Expression{{}, {ProbTerm{q.target, q.observed, {}}}});
}

TEST_CASE("a miss is reported as a budget statement") {
  Dag g = fx::charlie();
  IdentifyOptions none;
  none.depth_limit = 0;
  IdentifyResult r = identify(g, symbolic(g, {"L"}, {}, {"E"}), none);
  CHECK_FALSE(r.formula);
  CHECK_FALSE(r.budget_exhausted);
  IdentifyOptions few;
  few.state_budget = 2;
  IdentifyResult s = identify(g, symbolic(g, {"L"}, {}, {"E"}), few);
  CHECK(s.budget_exhausted);
  CHECK(s.states <= 2);

  // One step already reaches a do-free but less refined formula.
  IdentifyOptions shallow;
  shallow.depth_limit = 1;
  IdentifyResult t = identify(g, symbolic(g, {"L"}, {}, {"E"}), shallow);
  REQUIRE(t.formula);
  CHECK(normal_form(*t.formula, g) == normal_form(Expression{{}, {term(g, {"L"}, {"E"})}}, g));
}

TEST_CASE("malformed queries") {
  Dag g = fx::charlie();
  CHECK_THROWS(identify(g, symbolic(g, {}, {}, {"E"})));
  CHECK_THROWS(identify(g, symbolic(g, {"L"}, {}, {"L"})));
  CHECK_THROWS(identify(g, QueryExpr{VarSet{7}, {}, VarSet{0}, {}}));
}

TEST_CASE("results are deterministic") {
  Dag g = fx::eight_node();
  QueryExpr q = symbolic(g, {"k"}, {}, {"j"});
  IdentifyResult a = identify(g, q), b = identify(g, q);
  REQUIRE(a.formula);
  CHECK(*a.formula == *b.formula);
  CHECK(a.trace == b.trace);
}

TEST_CASE("printing") {
  auto s = fx::make_space({"A", "b", "C"}, {2, 3, 2});
  Dag g(s->names(), {{0, 1}, {1, 2}});
  PrintContext ctx{s.get(), Assignment{}.set(0, 1), nullptr};
  CHECK(format_expression(Expression{}, ctx) == "1");
  Expression e{VarSet{1, 2}, {ProbTerm{VarSet{2}, VarSet{0, 1}, {}}, ProbTerm{VarSet{1}, {}, VarSet{0}}}};
  CHECK(format_expression(e, ctx) == "sum_b,c[ P(C=c|A=1,b) * P(b|do(A=1)) ]");
  std::vector<std::vector<std::string>> labels{{}, {"lo", "mid", "hi"}, {}};
  PrintContext lab{s.get(), Assignment{}.set(1, 2), &labels};
  CHECK(format_expression(Expression{{}, {ProbTerm{VarSet{1}, {}, {}}}}, lab) == "P(b=hi)");
}

TEST_CASE("evaluation") {
  MarkovModel m = fx::random_model(fx::chain(), 3);
  const Dag& g = m.graph();
  JointTable joint = joint_from_markov(m);
  Assignment x;
  x.set(g.index_of("L"), 1).set(g.index_of("A"), 0);
  Expression marginal{fx::vars(g, {"E"}), {term(g, {"L"}, {"E"}), term(g, {"E"}, {"A"})}};
  CHECK(evaluate(marginal, joint, x) ==
        doctest::Approx(joint.conditional_probability(x.restrict(fx::vars(g, {"L"})), x.restrict(fx::vars(g, {"A"}))))
            .epsilon(1e-12));
  CHECK(evaluate(Expression{}, joint, {}) == 1.0);
  CHECK_THROWS(evaluate(Expression{{}, {ProbTerm{fx::vars(g, {"L"}), {}, fx::vars(g, {"A"})}}}, joint, x));
  CHECK_THROWS(evaluate(marginal, joint, Assignment{}));
}

TEST_CASE("identified formulas agree with do-probabilities on 100 random models") {
  struct Case {
    Dag g;
    std::vector<std::string> target, observed, intervened;
  };
  std::vector<Case> cases = {
      {fx::blake(), {"L"}, {}, {"A", "E"}},
      {fx::blake(), {"L"}, {}, {"E"}},
      {fx::charlie(), {"L"}, {}, {"E"}},
      {fx::charlie(), {"A"}, {}, {"E"}},
      {fx::ternary_chain(), {"C"}, {}, {"A"}},
      {fx::ternary_chain(), {"C"}, {}, {"A", "B"}},
      {fx::fork_ael(), {"L"}, {}, {"E"}},
      {fx::five_node(), {"k"}, {}, {"i"}},
      {fx::five_node(), {"j"}, {"b"}, {"c"}},
      {fx::eight_node(), {"i"}, {}, {"j"}},
      {fx::collider4(), {"I"}, {}, {"K"}},
  };
  for (const Case& c : cases) {
    QueryExpr q = symbolic(c.g, c.target, c.observed, c.intervened);
    IdentifyResult r = identify(c.g, q);
    REQUIRE_MESSAGE(r.formula, q.format(*fx::binary_space(c.g.names())));
    CHECK(r.formula->do_free());
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      double gap = soundness_gap(fx::random_model(c.g, seed), q, *r.formula);
      REQUIRE(gap <= 1e-9);
    }
  }
}
