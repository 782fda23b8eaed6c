#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

namespace decomp {

using Event = std::string;
using StateId = std::string;
using Word = std::vector<Event>;

/// One labeled transition, ordered lexicographically by (src, event, dst).
struct Transition {
    StateId src;
    Event event;
    StateId dst;

    auto operator<=>(const Transition&) const = default;
};

/// Finite automaton over named states and events.
///
/// Instances are immutable and normalized to the part reachable from the
/// initial state at construction time. Every state counts as accepting, so
/// the generated language is prefix closed. The transition relation may be
/// nondeterministic; deterministic() reports whether it is a partial
/// function.
class Automaton {
public:
    /// Throws std::invalid_argument when the state set is empty, the initial
    /// state is missing, or a transition uses an undeclared state or event.
    Automaton(std::set<StateId> states, StateId initial, std::set<Event> alphabet,
              std::set<Transition> transitions);

    const std::set<StateId>& states() const { return states_; }
    const StateId& initial() const { return initial_; }
    const std::set<Event>& alphabet() const { return alphabet_; }
    const std::set<Transition>& transitions() const { return transitions_; }

    bool deterministic() const { return deterministic_; }
    bool has_state(const StateId& q) const { return states_.count(q) != 0; }

    /// Successors of q under e. Events without outgoing transitions (alien
    /// events included) yield the empty set; unknown states throw.
    std::set<StateId> step(const StateId& q, const Event& e) const;

    /// States reachable from q by exactly the word s; {q} for the empty word.
    std::set<StateId> run(const StateId& q, const Word& s) const;

    /// Membership of s in the generated language (from the initial state).
    bool accepts(const Word& s) const;

    /// Copy of this automaton re-rooted at q, restricted to the part
    /// reachable from q.
    Automaton rooted(const StateId& q) const;

    /// Outgoing transitions of q grouped by event.
    const std::map<Event, std::set<StateId>>& out(const StateId& q) const;

    bool operator==(const Automaton& other) const;

private:
    std::set<StateId> states_;
    StateId initial_;
    std::set<Event> alphabet_;
    std::set<Transition> transitions_;
    std::map<StateId, std::map<Event, std::set<StateId>>> out_;
    bool deterministic_ = true;
};

/// Ac(A): restriction to the states reachable from the initial state.
/// Construction already normalizes, so this is idempotent.
Automaton accessible(const Automaton& a);

/// A walk through an automaton, stored as the transitions taken.
struct Path {
    StateId start;
    std::vector<Transition> steps;

    Word word() const;
};

/// All paths starting at `from` that use each transition at most `bound`
/// times, including the empty path. With bound 1 these are the
/// transition-simple paths. The result is finite and sorted by word.
/// Throws std::invalid_argument for unknown states or bound < 1.
std::vector<Path> enumerate_paths(const Automaton& a, const StateId& from, int bound = 1);

}  // namespace decomp
