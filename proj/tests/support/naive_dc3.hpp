#pragma once

#include "decomp/algebra.hpp"
#include "decomp/automaton.hpp"
#include "decomp/decomposability.hpp"
#include "decomp/equivalence.hpp"

namespace decomp::test {

/// Literal DC3 decision: enumerate all bounded path pairs, filter on sharing
/// a leading event in some pairwise projection, build the two-branch
/// automaton, and ask the simulation question directly. Only usable on small
/// inputs; serves as the independent reference for the production check.
inline bool naive_dc3(const Automaton& a, const EventDistribution& dist, int bound = 1) {
    for (const StateId& root : a.states()) {
        auto paths = enumerate_paths(a, root, bound);
        Automaton target = a.rooted(root);
        for (size_t x = 0; x < paths.size(); ++x) {
            for (size_t y = x + 1; y < paths.size(); ++y) {
                const Word ws = paths[x].word();
                const Word wt = paths[y].word();
                bool filtered = false;
                for (size_t i = 1; i <= dist.agent_count() && !filtered; ++i) {
                    for (size_t j = i + 1; j <= dist.agent_count() && !filtered; ++j) {
                        const auto shared = dist.shared(i, j);
                        Word ps = project_string(ws, shared);
                        Word pt = project_string(wt, shared);
                        filtered = !ps.empty() && !pt.empty() && ps.front() == pt.front();
                    }
                }
                if (!filtered) {
                    continue;
                }
                std::set<StateId> states{"r"};
                std::set<Transition> transitions;
                StateId prev = "r";
                for (size_t k = 0; k < ws.size(); ++k) {
                    StateId next = "x" + std::to_string(k + 1);
                    states.insert(next);
                    transitions.insert({prev, ws[k], next});
                    prev = next;
                }
                prev = "r";
                for (size_t k = 0; k < wt.size(); ++k) {
                    StateId next = "y" + std::to_string(k + 1);
                    states.insert(next);
                    transitions.insert({prev, wt[k], next});
                    prev = next;
                }
                Automaton branches(states, "r", a.alphabet(), transitions);
                std::vector<Automaton> projections;
                for (size_t agent = 1; agent <= dist.agent_count(); ++agent) {
                    projections.push_back(project_automaton(branches, dist.alphabet_of(agent)));
                }
                if (!simulates(compose_all(projections), target)) {
                    return false;
                }
            }
        }
    }
    return true;
}

}  // namespace decomp::test
