#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "decomp/algebra.hpp"
#include "decomp/automaton.hpp"
#include "decomp/equivalence.hpp"

namespace decomp {

enum class Condition { DC1, DC2, DC3, DC4 };

std::string to_string(Condition c);

/// Two events enabled at q without a common owner and without both orders
/// being defined.
struct Dc1Witness {
    StateId state;
    Event e1, e2;

    auto operator<=>(const Dc1Witness&) const = default;
};

/// A successive pair without a common owner whose two orders are not
/// interchangeable; `suffix` distinguishes the continuations (empty when one
/// order is missing outright).
struct Dc2Witness {
    StateId state;
    Event e1, e2;
    Word suffix;

    auto operator<=>(const Dc2Witness&) const = default;
};

/// Two branches from `state` that synchronize on `shared` between agents
/// agent_i and agent_j, whose projected recombination admits `offending`,
/// a string the automaton rejects from `state`.
struct Dc3Witness {
    StateId state;
    Word branch_a, branch_b;
    size_t agent_i = 0, agent_j = 0;
    Event shared;
    Word offending;

    auto operator<=>(const Dc3Witness&) const = default;
};

/// Nondeterministic pair in a local projection with inequivalent
/// continuations; `suffix`, when computable, is enabled from exactly one of
/// the two successors.
struct Dc4Witness {
    size_t agent = 0;
    StateId local_state;
    Event event;
    StateId succ_a, succ_b;
    std::optional<Word> suffix;

    auto operator<=>(const Dc4Witness&) const = default;
};

using Witness = std::variant<Dc1Witness, Dc2Witness, Dc3Witness, Dc4Witness>;

struct ConditionVerdict {
    Condition condition;
    bool holds = false;
    std::vector<Witness> witnesses;
};

struct DecomposabilityReport {
    ConditionVerdict dc1, dc2, dc3, dc4;
    bool overall = false;
    std::vector<Automaton> projections;  // one per agent, in agent order
    std::optional<Automaton> composed;
    std::optional<bool> oracle_agrees;
    int bound = 1;

    const ConditionVerdict& verdict(Condition c) const;
};

/// Proposal to widen some agents' alphabets by one event; `verified` is set
/// by diagnose after re-checking the amended distribution.
struct RepairSuggestion {
    Event event;
    std::set<size_t> add_to_agents;
    Condition rationale = Condition::DC1;
    bool verified = false;

    auto operator<=>(const RepairSuggestion&) const = default;
};

/// DC1: every pair of events enabled at a common state is either owned
/// jointly by some agent or executable in both orders.
ConditionVerdict check_dc1(const Automaton& a, const EventDistribution& dist);

/// DC2: for successive pairs without a common owner, both orders must be
/// defined and lead to continuation-equivalent states.
ConditionVerdict check_dc2(const Automaton& a, const EventDistribution& dist);

/// DC3: for every pair of distinct bounded paths from a common state whose
/// pairwise-shared projections begin with the same event, the composition of
/// the projected branch pair must be simulated by the automaton rooted at
/// that state.
ConditionVerdict check_dc3(const Automaton& a, const EventDistribution& dist, int bound = 1);

/// DC4: inside each local projection, distinct successors of one
/// (state, event) pair must be continuation equivalent.
ConditionVerdict check_dc4(const Automaton& a, const EventDistribution& dist);

/// Runs all four conditions (never short-circuits), builds the projections
/// and their composition, and optionally cross-checks the defining property
/// directly. The conditions characterize the defining property exactly as
/// long as every projection generates precisely the projected language;
/// quotient overapproximation (a merge that revives an earlier state's
/// moves) can make them diverge in either direction, which `with_oracle`
/// detects.
DecomposabilityReport check_decomposable(const Automaton& a, const EventDistribution& dist,
                                         int bound = 1, bool with_oracle = false);

/// The defining property, decided head-on: the composition of the natural
/// projections is bisimilar to the automaton.
bool direct_oracle(const Automaton& a, const EventDistribution& dist);

/// Repair proposals for a failing report: joint ownership for DC1/DC2 pairs,
/// sharing of leading branch events for DC3/DC4. The amended distribution is
/// re-checked and suggestions are marked verified when it passes.
std::vector<RepairSuggestion> diagnose(const Automaton& a, const EventDistribution& dist,
                                       const DecomposabilityReport& report);

/// Distribution with every suggestion applied.
EventDistribution apply_suggestions(const EventDistribution& dist,
                                    const std::vector<RepairSuggestion>& suggestions);

}  // namespace decomp
