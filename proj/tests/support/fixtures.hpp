#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "causal/beliefs.hpp"
#include "causal/markov.hpp"
#include "causal/model_file.hpp"

namespace fx {

using causal::BeliefFamily;
using causal::Dag;
using causal::JointTable;
using causal::MarkovModel;
using causal::VarSet;
using SpacePtr = JointTable::SpacePtr;

SpacePtr binary_space(const std::vector<std::string>& names);
SpacePtr make_space(const std::vector<std::string>& names, const std::vector<std::size_t>& cards);

/// Edges written as "A->E".
Dag make_dag(const std::vector<std::string>& names, const std::vector<std::string>& edges);

Dag blake();    // A->E, A->L, E->L
Dag charlie();  // E->A, A->L
Dag chain();    // A->E->L
Dag fork_ael();  // A->E, A->L
Dag chain_eal();   // E->A, A->L
Dag five_node();     // b->i, i->c, c->j, b->j, c->k, j->k
Dag eight_node();     // a->b, a->j, w->b, w->i, j->i, i->k, k->z
Dag ternary_chain();     // A->B->C
Dag collider4();    // J1->K, K->J0, J0->I, J1->I

VarSet vars(const Dag& g, const std::vector<std::string>& names);

MarkovModel random_model(const Dag& g, std::uint64_t seed);
BeliefFamily random_family(const Dag& g, std::uint64_t seed);

/// Product family: every variable independent of everything, under every
/// policy, with the given marginals.
BeliefFamily product_family(SpacePtr space, std::uint64_t seed);

/// Multiplies every cell of the observational table by a random factor in
/// [1-strength, 1+strength] and renormalizes; other tables are untouched.
BeliefFamily perturb_observational(const BeliefFamily& fam, std::uint64_t seed, double strength = 0.5);

/// Observational table from `observational`, every intervened table from `interventional`.
BeliefFamily mismatched_family(const MarkovModel& interventional, const MarkovModel& observational);

/// Table literal over all variables of `space`.
JointTable table(SpacePtr space, VarSet domain, std::vector<double> mass);

std::string source_path(const std::string& relative);
std::string read_text(const std::string& relative);
causal::LoadedModel load_fixture(const std::string& name);

}  // namespace fx
