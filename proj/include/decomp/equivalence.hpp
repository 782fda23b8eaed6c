#pragma once

#include <optional>
#include <set>
#include <utility>

#include "decomp/automaton.hpp"

namespace decomp {

using StatePair = std::pair<StateId, StateId>;
using Relation = std::set<StatePair>;

/// Witness that the second automaton simulates the first: contains the
/// initial pair and is closed under matching the first automaton's moves.
struct SimulationRelation {
    Relation pairs;
};

/// Two-way closed relation containing the initial pair; it and its inverse
/// are both simulation relations.
struct BisimulationWitness {
    Relation relation;
};

/// Greatest simulation of a1 by a2 containing the initial pair, if any.
/// Labels are compared by name; a move on an event absent from the other
/// alphabet still demands a matching move.
std::optional<SimulationRelation> simulates(const Automaton& a1, const Automaton& a2);

/// Greatest bisimulation containing the initial pair, if any.
std::optional<BisimulationWitness> bisimilar(const Automaton& a1, const Automaton& a2);

/// Event sequence witnessing that a2 does not simulate a1 (each step is a
/// move along the refutation chain of the simulation fixpoint); nullopt when
/// the simulation exists.
std::optional<Word> simulation_refusal(const Automaton& a1, const Automaton& a2);

/// As simulation_refusal, for bisimilarity.
std::optional<Word> bisimulation_refusal(const Automaton& a1, const Automaton& a2);

/// Greatest two-way closed relation on a's states containing (x1, x2),
/// restricted to the pairs reachable from (x1, x2); nullopt when no such
/// relation exists. This is the coinductive continuation-equivalence check:
/// every move of one component must be matched by the other with the
/// successor pair again related.
std::optional<Relation> continuation_equivalent(const Automaton& a, const StateId& x1,
                                                const StateId& x2);

/// Greatest two-way closed relation on a's own state space; (x, y) is a
/// member exactly when continuation_equivalent(a, x, y) is present.
Relation self_bisimulation(const Automaton& a);

}  // namespace decomp
