#include "decomp/equivalence.hpp"

#include <deque>
#include <map>
#include <stdexcept>
#include <vector>

namespace decomp {

namespace {

// Indexed copy of an automaton for the fixpoint computations.
struct Indexed {
    std::vector<StateId> states;
    std::map<StateId, int> index;
    // moves[state][k] = (event id, targets)
    std::vector<std::vector<std::pair<int, std::vector<int>>>> moves;
};

Indexed build_index(const Automaton& a, std::map<Event, int>& event_ids) {
    Indexed out;
    for (const StateId& q : a.states()) {
        out.index.emplace(q, static_cast<int>(out.states.size()));
        out.states.push_back(q);
    }
    out.moves.resize(out.states.size());
    for (size_t i = 0; i < out.states.size(); ++i) {
        for (const auto& [e, targets] : a.out(out.states[i])) {
            auto [it, _] = event_ids.try_emplace(e, static_cast<int>(event_ids.size()));
            std::vector<int> t;
            for (const StateId& q : targets) {
                t.push_back(out.index.at(q));
            }
            out.moves[i].push_back({it->second, std::move(t)});
        }
    }
    return out;
}

struct Kill {
    int event = -1;
    int next = -1;  // flattened successor pair, -1 when no matching move existed
};

struct Fixpoint {
    Indexed left, right;
    std::vector<Event> event_names;
    std::vector<char> alive;            // flattened |left| x |right|
    std::vector<Kill> kills;            // valid where !alive
    int cols = 0;

    int flat(int p, int q) const { return p * cols + q; }
};

// Greatest simulation (or bisimulation when two_way) relation between the
// state spaces, by iterated removal of pairs with an unmatched move.
Fixpoint greatest_relation(const Automaton& a1, const Automaton& a2, bool two_way) {
    Fixpoint fp;
    std::map<Event, int> event_ids;
    fp.left = build_index(a1, event_ids);
    fp.right = build_index(a2, event_ids);
    fp.event_names.resize(event_ids.size());
    for (const auto& [e, id] : event_ids) {
        fp.event_names[id] = e;
    }
    const int n1 = static_cast<int>(fp.left.states.size());
    const int n2 = static_cast<int>(fp.right.states.size());
    fp.cols = n2;
    fp.alive.assign(static_cast<size_t>(n1) * n2, 1);
    fp.kills.resize(fp.alive.size());

    // One direction of the closure condition: every move of `from` must be
    // matched by a move of `other` landing in an alive pair.
    auto matched = [&](const Indexed& from_side, const Indexed& other_side, int from,
                       int other, bool left_move, Kill& kill) {
        for (const auto& [event, targets] : from_side.moves[from]) {
            const std::vector<int>* partners = nullptr;
            for (const auto& [oe, ot] : other_side.moves[other]) {
                if (oe == event) {
                    partners = &ot;
                    break;
                }
            }
            for (int t : targets) {
                bool ok = false;
                if (partners) {
                    for (int p : *partners) {
                        if (fp.alive[left_move ? fp.flat(t, p) : fp.flat(p, t)]) {
                            ok = true;
                            break;
                        }
                    }
                }
                if (!ok) {
                    kill.event = event;
                    kill.next = partners ? (left_move ? fp.flat(t, partners->front())
                                                      : fp.flat(partners->front(), t))
                                         : -1;
                    return false;
                }
            }
        }
        return true;
    };

    bool changed = true;
    while (changed) {
        changed = false;
        for (int p = 0; p < n1; ++p) {
            for (int q = 0; q < n2; ++q) {
                const int cell = fp.flat(p, q);
                if (!fp.alive[cell]) {
                    continue;
                }
                Kill kill;
                if (!matched(fp.left, fp.right, p, q, true, kill) ||
                    (two_way && !matched(fp.right, fp.left, q, p, false, kill))) {
                    fp.alive[cell] = 0;
                    fp.kills[cell] = kill;
                    changed = true;
                }
            }
        }
    }
    return fp;
}

Relation alive_pairs(const Fixpoint& fp) {
    Relation out;
    for (size_t p = 0; p < fp.left.states.size(); ++p) {
        for (size_t q = 0; q < fp.right.states.size(); ++q) {
            if (fp.alive[fp.flat(static_cast<int>(p), static_cast<int>(q))]) {
                out.insert({fp.left.states[p], fp.right.states[q]});
            }
        }
    }
    return out;
}

// Replays the refutation chain recorded for a dead pair into an event
// sequence ending at an unmatched move.
Word refusal_word(const Fixpoint& fp, int cell) {
    Word w;
    while (cell >= 0 && !fp.alive[cell]) {
        const Kill& kill = fp.kills[cell];
        if (kill.event < 0) {
            break;
        }
        w.push_back(fp.event_names[kill.event]);
        cell = kill.next;
    }
    return w;
}

int initial_cell(const Fixpoint& fp, const Automaton& a1, const Automaton& a2) {
    return fp.flat(fp.left.index.at(a1.initial()), fp.right.index.at(a2.initial()));
}

}  // namespace

std::optional<SimulationRelation> simulates(const Automaton& a1, const Automaton& a2) {
    Fixpoint fp = greatest_relation(a1, a2, false);
    if (!fp.alive[initial_cell(fp, a1, a2)]) {
        return std::nullopt;
    }
    return SimulationRelation{alive_pairs(fp)};
}

std::optional<BisimulationWitness> bisimilar(const Automaton& a1, const Automaton& a2) {
    Fixpoint fp = greatest_relation(a1, a2, true);
    if (!fp.alive[initial_cell(fp, a1, a2)]) {
        return std::nullopt;
    }
    return BisimulationWitness{alive_pairs(fp)};
}

std::optional<Word> simulation_refusal(const Automaton& a1, const Automaton& a2) {
    Fixpoint fp = greatest_relation(a1, a2, false);
    const int cell = initial_cell(fp, a1, a2);
    if (fp.alive[cell]) {
        return std::nullopt;
    }
    return refusal_word(fp, cell);
}

std::optional<Word> bisimulation_refusal(const Automaton& a1, const Automaton& a2) {
    Fixpoint fp = greatest_relation(a1, a2, true);
    const int cell = initial_cell(fp, a1, a2);
    if (fp.alive[cell]) {
        return std::nullopt;
    }
    return refusal_word(fp, cell);
}

Relation self_bisimulation(const Automaton& a) {
    return alive_pairs(greatest_relation(a, a, true));
}

std::optional<Relation> continuation_equivalent(const Automaton& a, const StateId& x1,
                                                const StateId& x2) {
    if (!a.has_state(x1) || !a.has_state(x2)) {
        throw std::invalid_argument("continuation_equivalent: unknown state");
    }
    Fixpoint fp = greatest_relation(a, a, true);
    const int i1 = fp.left.index.at(x1);
    const int i2 = fp.right.index.at(x2);
    if (!fp.alive[fp.flat(i1, i2)]) {
        return std::nullopt;
    }
    // Restrict to the pairs reachable from (x1, x2) through matched moves.
    Relation reachable{{x1, x2}};
    std::set<std::pair<int, int>> seen{{i1, i2}};
    std::deque<std::pair<int, int>> queue{{i1, i2}};
    while (!queue.empty()) {
        auto [p, q] = queue.front();
        queue.pop_front();
        for (const auto& [event, p_targets] : fp.left.moves[p]) {
            for (const auto& [oe, q_targets] : fp.right.moves[q]) {
                if (oe != event) {
                    continue;
                }
                for (int pt : p_targets) {
                    for (int qt : q_targets) {
                        if (fp.alive[fp.flat(pt, qt)] && seen.insert({pt, qt}).second) {
                            reachable.insert({fp.left.states[pt], fp.right.states[qt]});
                            queue.push_back({pt, qt});
                        }
                    }
                }
            }
        }
    }
    return reachable;
}

}  // namespace decomp
