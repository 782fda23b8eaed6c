#include "decomp/automaton.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>

namespace decomp {

namespace {

const std::map<Event, std::set<StateId>> kNoMoves{};

}  // namespace

Automaton::Automaton(std::set<StateId> states, StateId initial, std::set<Event> alphabet,
                     std::set<Transition> transitions)
    : initial_(std::move(initial)), alphabet_(std::move(alphabet)) {
    if (states.empty()) {
        throw std::invalid_argument("automaton needs at least one state");
    }
    if (states.count(initial_) == 0) {
        throw std::invalid_argument("initial state '" + initial_ + "' is not a declared state");
    }
    for (const Transition& t : transitions) {
        if (states.count(t.src) == 0) {
            throw std::invalid_argument("transition source '" + t.src + "' is not a declared state");
        }
        if (states.count(t.dst) == 0) {
            throw std::invalid_argument("transition target '" + t.dst + "' is not a declared state");
        }
        if (alphabet_.count(t.event) == 0) {
            throw std::invalid_argument("transition label '" + t.event + "' is not a declared event");
        }
    }

    // Normalize to the accessible part.
    std::map<StateId, std::vector<const Transition*>> by_src;
    for (const Transition& t : transitions) {
        by_src[t.src].push_back(&t);
    }
    std::set<StateId> reached{initial_};
    std::deque<StateId> queue{initial_};
    while (!queue.empty()) {
        StateId q = queue.front();
        queue.pop_front();
        auto it = by_src.find(q);
        if (it == by_src.end()) {
            continue;
        }
        for (const Transition* t : it->second) {
            if (reached.insert(t->dst).second) {
                queue.push_back(t->dst);
            }
        }
    }
    states_ = std::move(reached);
    for (const Transition& t : transitions) {
        if (states_.count(t.src) != 0) {
            transitions_.insert(t);
        }
    }
    for (const Transition& t : transitions_) {
        auto& succ = out_[t.src][t.event];
        succ.insert(t.dst);
        if (succ.size() > 1) {
            deterministic_ = false;
        }
    }
}

std::set<StateId> Automaton::step(const StateId& q, const Event& e) const {
    auto& moves = out(q);
    auto it = moves.find(e);
    return it == moves.end() ? std::set<StateId>{} : it->second;
}

std::set<StateId> Automaton::run(const StateId& q, const Word& s) const {
    std::set<StateId> current{q};
    if (!has_state(q)) {
        throw std::invalid_argument("unknown state '" + q + "'");
    }
    for (const Event& e : s) {
        std::set<StateId> next;
        for (const StateId& p : current) {
            const auto succ = step(p, e);
            next.insert(succ.begin(), succ.end());
        }
        if (next.empty()) {
            return next;
        }
        current = std::move(next);
    }
    return current;
}

bool Automaton::accepts(const Word& s) const {
    return !run(initial_, s).empty();
}

Automaton Automaton::rooted(const StateId& q) const {
    if (!has_state(q)) {
        throw std::invalid_argument("unknown state '" + q + "'");
    }
    return Automaton(states_, q, alphabet_, transitions_);
}

const std::map<Event, std::set<StateId>>& Automaton::out(const StateId& q) const {
    if (!has_state(q)) {
        throw std::invalid_argument("unknown state '" + q + "'");
    }
    auto it = out_.find(q);
    return it == out_.end() ? kNoMoves : it->second;
}

bool Automaton::operator==(const Automaton& other) const {
    return states_ == other.states_ && initial_ == other.initial_ &&
           alphabet_ == other.alphabet_ && transitions_ == other.transitions_;
}

Automaton accessible(const Automaton& a) {
    return Automaton(a.states(), a.initial(), a.alphabet(), a.transitions());
}

Word Path::word() const {
    Word w;
    w.reserve(steps.size());
    for (const Transition& t : steps) {
        w.push_back(t.event);
    }
    return w;
}

namespace {

void paths_dfs(const Automaton& a, const StateId& q, int bound, Path& current,
               std::map<Transition, int>& used, std::vector<Path>& out) {
    out.push_back(current);
    for (const auto& [event, targets] : a.out(q)) {
        for (const StateId& target : targets) {
            Transition t{q, event, target};
            int& uses = used[t];
            if (uses >= bound) {
                continue;
            }
            ++uses;
            current.steps.push_back(t);
            paths_dfs(a, target, bound, current, used, out);
            current.steps.pop_back();
            --uses;
        }
    }
}

}  // namespace

std::vector<Path> enumerate_paths(const Automaton& a, const StateId& from, int bound) {
    if (bound < 1) {
        throw std::invalid_argument("path bound must be at least 1");
    }
    if (!a.has_state(from)) {
        throw std::invalid_argument("unknown state '" + from + "'");
    }
    std::vector<Path> out;
    Path current{from, {}};
    std::map<Transition, int> used;
    paths_dfs(a, from, bound, current, used, out);
    std::sort(out.begin(), out.end(),
              [](const Path& x, const Path& y) { return x.word() < y.word(); });
    return out;
}

}  // namespace decomp
