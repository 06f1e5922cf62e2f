#include "fixtures.hpp"

#include <fstream>
#include <random>
#include <sstream>

namespace fx {

SpacePtr binary_space(const std::vector<std::string>& names) {
  return make_space(names, std::vector<std::size_t>(names.size(), 2));
}

SpacePtr make_space(const std::vector<std::string>& names, const std::vector<std::size_t>& cards) {
  return std::make_shared<const causal::VariableSpace>(names, cards);
}

Dag make_dag(const std::vector<std::string>& names, const std::vector<std::string>& edges) {
  Dag g(names);
  for (const auto& e : edges) {
    auto arrow = e.find("->");
    g.add_edge(g.index_of(e.substr(0, arrow)), g.index_of(e.substr(arrow + 2)));
  }
  return g;
}

Dag blake() { return make_dag({"A", "E", "L"}, {"A->E", "A->L", "E->L"}); }
Dag charlie() { return make_dag({"E", "A", "L"}, {"E->A", "A->L"}); }
Dag chain() { return make_dag({"A", "E", "L"}, {"A->E", "E->L"}); }
Dag fork_ael() { return make_dag({"A", "E", "L"}, {"A->E", "A->L"}); }
Dag chain_eal() { return make_dag({"A", "E", "L"}, {"E->A", "A->L"}); }
Dag five_node() {
  return make_dag({"b", "i", "c", "j", "k"}, {"b->i", "i->c", "c->j", "b->j", "c->k", "j->k"});
}
Dag eight_node() {
  return make_dag({"a", "w", "b", "j", "i", "k", "z"},
                  {"a->b", "a->j", "w->b", "w->i", "j->i", "i->k", "k->z"});
}
Dag ternary_chain() { return make_dag({"A", "B", "C"}, {"A->B", "B->C"}); }
Dag collider4() { return make_dag({"I", "J0", "J1", "K"}, {"J1->K", "K->J0", "J0->I", "J1->I"}); }

VarSet vars(const Dag& g, const std::vector<std::string>& names) {
  VarSet s;
  for (const auto& n : names) s.insert(g.index_of(n));
  return s;
}

MarkovModel random_model(const Dag& g, std::uint64_t seed) {
  return causal::random_markov(binary_space(g.names()), g, seed);
}

BeliefFamily random_family(const Dag& g, std::uint64_t seed) {
  return causal::family_from_markov(random_model(g, seed));
}

BeliefFamily product_family(SpacePtr space, std::uint64_t seed) {
  Dag empty(space->names());
  return causal::family_from_markov(causal::random_markov(space, empty, seed));
}

BeliefFamily perturb_observational(const BeliefFamily& fam, std::uint64_t seed, double strength) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> factor(1.0 - strength, 1.0 + strength);
  std::vector<double> mass = fam.observational().mass();
  for (double& m : mass) m *= factor(rng);
  return fam.with_table(causal::Assignment{},
                        JointTable::normalized(fam.space_ptr(), fam.space().all(), std::move(mass)));
}

BeliefFamily mismatched_family(const MarkovModel& interventional, const MarkovModel& observational) {
  BeliefFamily fam = causal::family_from_markov(interventional);
  return fam.with_table(causal::Assignment{}, causal::joint_from_markov(observational));
}

JointTable table(SpacePtr space, VarSet domain, std::vector<double> mass) {
  return JointTable(std::move(space), domain, std::move(mass));
}

std::string source_path(const std::string& relative) { return std::string(CAUSAL_SOURCE_DIR) + "/" + relative; }

std::string read_text(const std::string& relative) {
  std::ifstream in(source_path(relative));
  if (!in) throw std::runtime_error("cannot open " + relative);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

causal::LoadedModel load_fixture(const std::string& name) {
  return causal::load_model_text(read_text("models/" + name + ".cm"));
}

}  // namespace fx
