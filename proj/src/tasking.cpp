#include "decomp/tasking.hpp"

#include <stdexcept>

namespace decomp {

Automaton universal_automaton(const std::set<Event>& events) {
    std::set<Transition> loops;
    for (const Event& e : events) {
        loops.insert({"u", e, "u"});
    }
    return Automaton({"u"}, "u", events, std::move(loops));
}

AgentPlant universal_plant(const EventDistribution& dist, size_t agent) {
    return AgentPlant{agent, universal_automaton(dist.alphabet_of(agent))};
}

std::vector<LocalController> synthesize_controllers(const Automaton& task,
                                                    const EventDistribution& dist) {
    if (!task.deterministic()) {
        throw std::invalid_argument("controller synthesis requires a deterministic task");
    }
    std::vector<LocalController> controllers;
    for (size_t agent = 1; agent <= dist.agent_count(); ++agent) {
        controllers.push_back({agent, project_automaton(task, dist.alphabet_of(agent))});
    }
    return controllers;
}

Automaton closed_loop(const LocalController& controller, const AgentPlant& plant) {
    if (controller.agent != plant.agent) {
        throw std::invalid_argument("controller and plant belong to different agents");
    }
    return compose(controller.automaton, plant.automaton);
}

TeamVerdict verify_team(const Automaton& task, const EventDistribution& dist,
                        const std::vector<AgentPlant>& plants,
                        const std::vector<LocalController>& controllers, TeamMode mode) {
    if (plants.size() != dist.agent_count() || controllers.size() != dist.agent_count()) {
        throw std::invalid_argument("need exactly one plant and one controller per agent");
    }
    std::vector<Automaton> loops;
    for (size_t i = 0; i < controllers.size(); ++i) {
        loops.push_back(closed_loop(controllers[i], plants[i]));
    }
    Automaton team = compose_all(loops);

    TeamVerdict verdict;
    if (mode == TeamMode::bisimulation) {
        if (auto witness = bisimilar(team, task)) {
            verdict.satisfied = true;
            verdict.relation = std::move(witness->relation);
        } else {
            verdict.counterexample = bisimulation_refusal(team, task);
        }
    } else {
        if (auto witness = simulates(team, task)) {
            verdict.satisfied = true;
            verdict.relation = std::move(witness->pairs);
        } else {
            verdict.counterexample = simulation_refusal(team, task);
        }
    }
    return verdict;
}

}  // namespace decomp
