#pragma once

#include <optional>
#include <vector>

#include "decomp/algebra.hpp"
#include "decomp/automaton.hpp"
#include "decomp/equivalence.hpp"

namespace decomp {

/// Behavior model of one agent, over that agent's alphabet.
struct AgentPlant {
    size_t agent = 0;
    Automaton automaton;
};

/// Local controller for one agent, over that agent's alphabet.
struct LocalController {
    size_t agent = 0;
    Automaton automaton;
};

enum class TeamMode { bisimulation, simulation };

/// Single-state automaton with a self-loop on every event; neutral element
/// of parallel composition.
Automaton universal_automaton(const std::set<Event>& events);

/// Plant that allows everything in the agent's alphabet.
AgentPlant universal_plant(const EventDistribution& dist, size_t agent);

/// Controller i is the natural projection of the task onto agent i.
std::vector<LocalController> synthesize_controllers(const Automaton& task,
                                                    const EventDistribution& dist);

/// Parallel composition of a controller with its plant. Throws when the
/// agent indices differ.
Automaton closed_loop(const LocalController& controller, const AgentPlant& plant);

struct TeamVerdict {
    bool satisfied = false;
    /// Simulation or bisimulation relation between the composed closed loops
    /// and the task, present on success.
    std::optional<Relation> relation;
    /// Distinguishing behavior, present on failure.
    std::optional<Word> counterexample;
};

/// Composes all closed loops and compares against the global task: mutual
/// (bisimulation mode) or one-sided, team simulated by task (simulation
/// mode). Requires one plant and one controller per agent, in agent order.
TeamVerdict verify_team(const Automaton& task, const EventDistribution& dist,
                        const std::vector<AgentPlant>& plants,
                        const std::vector<LocalController>& controllers, TeamMode mode);

}  // namespace decomp
