#pragma once

#include <optional>
#include <set>
#include <vector>

#include "decomp/automaton.hpp"

namespace decomp {

/// Assignment of the global alphabet to n agents. Agents are numbered
/// 1..n everywhere in the public interface; alphabets may overlap, shared
/// events synchronize under composition.
class EventDistribution {
public:
    /// Requires at least one agent and a nonempty alphabet per agent.
    explicit EventDistribution(std::vector<std::set<Event>> agent_alphabets);

    size_t agent_count() const { return agent_alphabets_.size(); }
    const std::set<Event>& alphabet_of(size_t agent) const;
    std::set<Event> union_alphabet() const;

    /// Agents whose alphabet contains e.
    std::set<size_t> loc(const Event& e) const;

    /// True when some single agent owns both events.
    bool jointly_owned(const Event& a, const Event& b) const;

    /// E_i ∩ E_j.
    std::set<Event> shared(size_t i, size_t j) const;

    bool operator==(const EventDistribution&) const = default;

private:
    std::vector<std::set<Event>> agent_alphabets_;
};

/// Partition of an automaton's states into the classes of the minimal
/// equivalence closed under transitions labeled outside the retained set.
struct Quotient {
    std::map<StateId, StateId> class_of;
    std::map<StateId, std::set<StateId>> classes;
};

/// Subsequence of s consisting of the events in `retained`.
Word project_string(const Word& s, const std::set<Event>& retained);

/// Classes of the minimal equivalence relation merging source and target of
/// every transition whose label lies outside `retained`.
/// Requires retained ⊆ a.alphabet().
Quotient quotient_classes(const Automaton& a, const std::set<Event>& retained);

/// Natural projection: quotient states, transitions on retained events drawn
/// between classes of related representatives, restricted to the accessible
/// part. The result may be nondeterministic even for deterministic input and
/// is deliberately not determinized.
Automaton project_automaton(const Automaton& a, const std::set<Event>& retained);

/// Parallel composition: synchronizes on shared events, interleaves private
/// ones. Product states are minted as "(left,right)" ids; only the
/// accessible part is built.
Automaton compose(const Automaton& a, const Automaton& b);

/// Left fold of compose over a nonempty list.
Automaton compose_all(const std::vector<Automaton>& list);

/// {ε, e1, e1e2, ..., s}.
std::set<Word> prefix_closure(const Word& s);

/// Prefix-closed language of the parallel composition of the two path
/// automata for s (over e1) and t (over e2). Requires s ⊆ e1 and t ⊆ e2.
std::set<Word> interleave(const Word& s, const Word& t, const std::set<Event>& e1,
                          const std::set<Event>& e2);

/// All words generated by an automaton whose transition graph is acyclic.
/// Throws std::invalid_argument when a cycle is reachable.
std::set<Word> finite_language(const Automaton& a);

}  // namespace decomp
