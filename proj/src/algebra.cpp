#include "decomp/algebra.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <stdexcept>

namespace decomp {

EventDistribution::EventDistribution(std::vector<std::set<Event>> agent_alphabets)
    : agent_alphabets_(std::move(agent_alphabets)) {
    if (agent_alphabets_.empty()) {
        throw std::invalid_argument("event distribution needs at least one agent");
    }
    for (size_t i = 0; i < agent_alphabets_.size(); ++i) {
        if (agent_alphabets_[i].empty()) {
            throw std::invalid_argument("agent " + std::to_string(i + 1) + " has an empty alphabet");
        }
    }
}

const std::set<Event>& EventDistribution::alphabet_of(size_t agent) const {
    if (agent < 1 || agent > agent_alphabets_.size()) {
        throw std::invalid_argument("no agent " + std::to_string(agent));
    }
    return agent_alphabets_[agent - 1];
}

std::set<Event> EventDistribution::union_alphabet() const {
    std::set<Event> all;
    for (const auto& alpha : agent_alphabets_) {
        all.insert(alpha.begin(), alpha.end());
    }
    return all;
}

std::set<size_t> EventDistribution::loc(const Event& e) const {
    std::set<size_t> owners;
    for (size_t i = 0; i < agent_alphabets_.size(); ++i) {
        if (agent_alphabets_[i].count(e) != 0) {
            owners.insert(i + 1);
        }
    }
    return owners;
}

bool EventDistribution::jointly_owned(const Event& a, const Event& b) const {
    for (const auto& alpha : agent_alphabets_) {
        if (alpha.count(a) != 0 && alpha.count(b) != 0) {
            return true;
        }
    }
    return false;
}

std::set<Event> EventDistribution::shared(size_t i, size_t j) const {
    const auto& a = alphabet_of(i);
    const auto& b = alphabet_of(j);
    std::set<Event> common;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                          std::inserter(common, common.begin()));
    return common;
}

Word project_string(const Word& s, const std::set<Event>& retained) {
    Word out;
    for (const Event& e : s) {
        if (retained.count(e) != 0) {
            out.push_back(e);
        }
    }
    return out;
}

namespace {

struct UnionFind {
    std::map<StateId, StateId> parent;

    StateId find(const StateId& x) {
        auto it = parent.find(x);
        if (it == parent.end()) {
            parent.emplace(x, x);
            return x;
        }
        if (it->second == x) {
            return x;
        }
        StateId root = find(it->second);
        parent[x] = root;
        return root;
    }

    void merge(const StateId& a, const StateId& b) {
        StateId ra = find(a);
        StateId rb = find(b);
        if (ra != rb) {
            parent[std::max(ra, rb)] = std::min(ra, rb);
        }
    }
};

StateId class_id(const std::set<StateId>& members) {
    if (members.size() == 1) {
        return *members.begin();
    }
    std::string id = "{";
    if (members.size() <= 3) {
        for (auto it = members.begin(); it != members.end(); ++it) {
            if (it != members.begin()) {
                id += ",";
            }
            id += *it;
        }
    } else {
        id += *members.begin() + ",..+" + std::to_string(members.size() - 1);
    }
    return id + "}";
}

}  // namespace

Quotient quotient_classes(const Automaton& a, const std::set<Event>& retained) {
    for (const Event& e : retained) {
        if (a.alphabet().count(e) == 0) {
            throw std::invalid_argument("event '" + e + "' is not in the alphabet");
        }
    }
    UnionFind uf;
    for (const StateId& q : a.states()) {
        uf.find(q);
    }
    for (const Transition& t : a.transitions()) {
        if (retained.count(t.event) == 0) {
            uf.merge(t.src, t.dst);
        }
    }
    std::map<StateId, std::set<StateId>> by_root;
    for (const StateId& q : a.states()) {
        by_root[uf.find(q)].insert(q);
    }
    Quotient quotient;
    for (const auto& [root, members] : by_root) {
        StateId id = class_id(members);
        quotient.classes[id] = members;
        for (const StateId& q : members) {
            quotient.class_of[q] = id;
        }
    }
    return quotient;
}

Automaton project_automaton(const Automaton& a, const std::set<Event>& retained) {
    Quotient quotient = quotient_classes(a, retained);
    std::set<StateId> states;
    for (const auto& [id, members] : quotient.classes) {
        states.insert(id);
    }
    std::set<Transition> transitions;
    for (const Transition& t : a.transitions()) {
        if (retained.count(t.event) != 0) {
            transitions.insert({quotient.class_of.at(t.src), t.event, quotient.class_of.at(t.dst)});
        }
    }
    return Automaton(std::move(states), quotient.class_of.at(a.initial()), retained,
                     std::move(transitions));
}

namespace {

StateId product_id(const StateId& left, const StateId& right) {
    return "(" + left + "," + right + ")";
}

}  // namespace

Automaton compose(const Automaton& a, const Automaton& b) {
    std::set<Event> alphabet = a.alphabet();
    alphabet.insert(b.alphabet().begin(), b.alphabet().end());

    std::set<Event> shared;
    std::set_intersection(a.alphabet().begin(), a.alphabet().end(), b.alphabet().begin(),
                          b.alphabet().end(), std::inserter(shared, shared.begin()));

    using Pair = std::pair<StateId, StateId>;
    const Pair start{a.initial(), b.initial()};
    std::set<Pair> seen{start};
    std::deque<Pair> queue{start};
    std::set<StateId> states{product_id(start.first, start.second)};
    std::set<Transition> transitions;

    auto push = [&](const Pair& from, const Event& e, const Pair& to) {
        states.insert(product_id(to.first, to.second));
        transitions.insert({product_id(from.first, from.second), e, product_id(to.first, to.second)});
        if (seen.insert(to).second) {
            queue.push_back(to);
        }
    };

    while (!queue.empty()) {
        Pair current = queue.front();
        queue.pop_front();
        const auto& left_moves = a.out(current.first);
        const auto& right_moves = b.out(current.second);
        for (const auto& [e, left_targets] : left_moves) {
            if (shared.count(e) != 0) {
                auto it = right_moves.find(e);
                if (it == right_moves.end()) {
                    continue;
                }
                for (const StateId& lt : left_targets) {
                    for (const StateId& rt : it->second) {
                        push(current, e, {lt, rt});
                    }
                }
            } else {
                for (const StateId& lt : left_targets) {
                    push(current, e, {lt, current.second});
                }
            }
        }
        for (const auto& [e, right_targets] : right_moves) {
            if (shared.count(e) != 0) {
                continue;  // handled above
            }
            for (const StateId& rt : right_targets) {
                push(current, e, {current.first, rt});
            }
        }
    }
    return Automaton(std::move(states), product_id(start.first, start.second), std::move(alphabet),
                     std::move(transitions));
}

Automaton compose_all(const std::vector<Automaton>& list) {
    if (list.empty()) {
        throw std::invalid_argument("compose_all needs at least one automaton");
    }
    Automaton result = list.front();
    for (size_t i = 1; i < list.size(); ++i) {
        result = compose(result, list[i]);
    }
    return result;
}

std::set<Word> prefix_closure(const Word& s) {
    std::set<Word> out;
    Word prefix;
    out.insert(prefix);
    for (const Event& e : s) {
        prefix.push_back(e);
        out.insert(prefix);
    }
    return out;
}

namespace {

Automaton path_automaton(const Word& s, const std::set<Event>& alphabet, const std::string& stem) {
    for (const Event& e : s) {
        if (alphabet.count(e) == 0) {
            throw std::invalid_argument("string event '" + e + "' is outside its alphabet");
        }
    }
    std::set<StateId> states;
    std::set<Transition> transitions;
    for (size_t i = 0; i <= s.size(); ++i) {
        states.insert(stem + std::to_string(i));
    }
    for (size_t i = 0; i < s.size(); ++i) {
        transitions.insert({stem + std::to_string(i), s[i], stem + std::to_string(i + 1)});
    }
    return Automaton(std::move(states), stem + "0", alphabet, std::move(transitions));
}

}  // namespace

std::set<Word> interleave(const Word& s, const Word& t, const std::set<Event>& e1,
                          const std::set<Event>& e2) {
    Automaton composed = compose(path_automaton(s, e1, "l"), path_automaton(t, e2, "r"));
    return finite_language(composed);
}

std::set<Word> finite_language(const Automaton& a) {
    std::set<Word> out;
    Word current;
    std::set<StateId> on_stack;
    std::function<void(const StateId&)> walk = [&](const StateId& q) {
        if (!on_stack.insert(q).second) {
            throw std::invalid_argument("automaton has a reachable cycle; language is infinite");
        }
        out.insert(current);
        for (const auto& [e, targets] : a.out(q)) {
            for (const StateId& target : targets) {
                current.push_back(e);
                walk(target);
                current.pop_back();
            }
        }
        on_stack.erase(q);
    };
    walk(a.initial());
    return out;
}

}  // namespace decomp
