#include "decomp/decomposability.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <stdexcept>

namespace decomp {

std::string to_string(Condition c) {
    switch (c) {
        case Condition::DC1: return "DC1";
        case Condition::DC2: return "DC2";
        case Condition::DC3: return "DC3";
        case Condition::DC4: return "DC4";
    }
    return "?";
}

const ConditionVerdict& DecomposabilityReport::verdict(Condition c) const {
    switch (c) {
        case Condition::DC1: return dc1;
        case Condition::DC2: return dc2;
        case Condition::DC3: return dc3;
        case Condition::DC4: return dc4;
    }
    return dc1;
}

namespace {

void require_inputs(const Automaton& a, const EventDistribution& dist) {
    if (!a.deterministic()) {
        throw std::invalid_argument("condition checks require a deterministic automaton");
    }
    if (dist.union_alphabet() != a.alphabet()) {
        throw std::invalid_argument("agent alphabets must cover exactly the automaton alphabet");
    }
}

// Shortest word enabled from exactly one of the two state sets; breadth-first
// over subset pairs, events in sorted order. nullopt when none is found
// within the node cap (possible only for language-equal state pairs).
std::optional<Word> state_language_difference(const Automaton& a, const std::set<StateId>& from1,
                                              const std::set<StateId>& from2,
                                              size_t node_cap = 20000) {
    using SetPair = std::pair<std::set<StateId>, std::set<StateId>>;
    std::set<SetPair> seen;
    std::deque<std::pair<SetPair, Word>> queue;
    queue.push_back({{from1, from2}, {}});
    seen.insert(queue.front().first);
    while (!queue.empty() && seen.size() < node_cap) {
        auto [pair, word] = queue.front();
        queue.pop_front();
        std::set<Event> candidates;
        for (const StateId& q : pair.first) {
            for (const auto& [e, _] : a.out(q)) {
                candidates.insert(e);
            }
        }
        for (const StateId& q : pair.second) {
            for (const auto& [e, _] : a.out(q)) {
                candidates.insert(e);
            }
        }
        for (const Event& e : candidates) {
            SetPair next;
            for (const StateId& q : pair.first) {
                const auto succ = a.step(q, e);
                next.first.insert(succ.begin(), succ.end());
            }
            for (const StateId& q : pair.second) {
                const auto succ = a.step(q, e);
                next.second.insert(succ.begin(), succ.end());
            }
            Word extended = word;
            extended.push_back(e);
            if (next.first.empty() != next.second.empty()) {
                return extended;
            }
            if (!next.first.empty() && seen.insert(next).second) {
                queue.push_back({next, extended});
            }
        }
    }
    return std::nullopt;
}

}  // namespace

ConditionVerdict check_dc1(const Automaton& a, const EventDistribution& dist) {
    require_inputs(a, dist);
    ConditionVerdict v{Condition::DC1, true, {}};
    for (const StateId& q : a.states()) {
        std::vector<Event> enabled;
        for (const auto& [e, _] : a.out(q)) {
            enabled.push_back(e);
        }
        for (size_t x = 0; x < enabled.size(); ++x) {
            for (size_t y = x + 1; y < enabled.size(); ++y) {
                const Event& e1 = enabled[x];
                const Event& e2 = enabled[y];
                if (dist.jointly_owned(e1, e2)) {
                    continue;
                }
                if (a.run(q, {e1, e2}).empty() || a.run(q, {e2, e1}).empty()) {
                    v.witnesses.push_back(Dc1Witness{q, e1, e2});
                }
            }
        }
    }
    v.holds = v.witnesses.empty();
    return v;
}

ConditionVerdict check_dc2(const Automaton& a, const EventDistribution& dist) {
    require_inputs(a, dist);
    ConditionVerdict v{Condition::DC2, true, {}};
    std::optional<Relation> equivalent;  // self-bisimulation, computed on demand
    for (const StateId& q : a.states()) {
        std::set<std::pair<Event, Event>> pairs;
        for (const auto& [e1, targets] : a.out(q)) {
            for (const StateId& mid : targets) {
                for (const auto& [e2, _] : a.out(mid)) {
                    if (e1 != e2) {
                        pairs.insert(std::minmax(e1, e2));
                    }
                }
            }
        }
        for (const auto& [e1, e2] : pairs) {
            if (dist.jointly_owned(e1, e2)) {
                continue;
            }
            const auto d12 = a.run(q, {e1, e2});
            const auto d21 = a.run(q, {e2, e1});
            if (d12.empty() || d21.empty()) {
                v.witnesses.push_back(Dc2Witness{q, e1, e2, {}});
                continue;
            }
            if (*d12.begin() == *d21.begin()) {
                continue;
            }
            if (!equivalent) {
                equivalent = self_bisimulation(a);
            }
            if (equivalent->count({*d12.begin(), *d21.begin()}) == 0) {
                auto suffix = state_language_difference(a, d12, d21);
                v.witnesses.push_back(Dc2Witness{q, e1, e2, suffix.value_or(Word{})});
            }
        }
    }
    v.holds = v.witnesses.empty();
    return v;
}


// ---------------------------------------------------------------------------
// DC3.
//
// A path pair obliges the composition of the projected two-branch automaton
// to be simulated by the automaton rooted at the common source. Both the
// filter and the composed language depend on the paths only through their
// per-agent views (projections), so path pairs are deduplicated by view
// tuple, componentwise-comparable tuple pairs collapse into their
// componentwise maximum, and obligations below an already-passed one are
// skipped. The rooted automaton is deterministic, so each simulation
// obligation is decided as language inclusion, walked directly over
// per-agent view trackers. Everything runs on integer ids: states and
// events through TaskIndex, views through a trie of event sequences.
// ---------------------------------------------------------------------------

namespace {

// Indexed form of the (deterministic) automaton and the event ownership map.
struct TaskIndex {
    std::vector<StateId> states;
    std::map<StateId, int> state_index;
    std::vector<Event> event_names;  // sorted, so ids follow event order
    std::map<Event, int> event_index;
    std::vector<std::vector<int>> next;       // next[state][event], -1 when undefined
    std::vector<std::vector<size_t>> owners;  // owners[event] = 0-based agents
};

TaskIndex build_task_index(const Automaton& a, const EventDistribution& dist) {
    TaskIndex ti;
    for (const StateId& q : a.states()) {
        ti.state_index.emplace(q, static_cast<int>(ti.states.size()));
        ti.states.push_back(q);
    }
    for (const Event& e : a.alphabet()) {
        ti.event_index.emplace(e, static_cast<int>(ti.event_names.size()));
        ti.event_names.push_back(e);
    }
    ti.next.assign(ti.states.size(), std::vector<int>(ti.event_names.size(), -1));
    for (const Transition& t : a.transitions()) {
        ti.next[ti.state_index.at(t.src)][ti.event_index.at(t.event)] =
            ti.state_index.at(t.dst);
    }
    ti.owners.resize(ti.event_names.size());
    for (size_t e = 0; e < ti.event_names.size(); ++e) {
        for (size_t agent = 1; agent <= dist.agent_count(); ++agent) {
            if (dist.alphabet_of(agent).count(ti.event_names[e]) != 0) {
                ti.owners[e].push_back(agent - 1);
            }
        }
    }
    return ti;
}

Word ids_to_word(const TaskIndex& ti, const std::vector<int>& ids) {
    Word w;
    w.reserve(ids.size());
    for (int id : ids) {
        w.push_back(ti.event_names[id]);
    }
    return w;
}

struct AgentPairInfo {
    size_t i = 0, j = 0;        // 1-based agents
    std::vector<char> shared;   // by event id
};

// Interned event sequences; a view is a node, extension adds one event.
struct ViewTrie {
    std::vector<int> parent{-1};
    std::vector<int> depth{0};
    std::vector<int> event{-1};
    std::map<std::pair<int, int>, int> child;

    int extend(int node, int e) {
        auto [it, fresh] = child.try_emplace({node, e}, static_cast<int>(parent.size()));
        if (fresh) {
            parent.push_back(node);
            depth.push_back(depth[node] + 1);
            event.push_back(e);
        }
        return it->second;
    }

    std::vector<int> events_of(int node) const {
        std::vector<int> out(depth[node]);
        for (int i = static_cast<int>(out.size()) - 1; i >= 0; --i) {
            out[i] = event[node];
            node = parent[node];
        }
        return out;
    }
};

using TupleKey = std::vector<int>;  // one trie node per agent

struct TupleEntry {
    std::vector<std::vector<int>> views;         // per agent, event ids
    std::vector<std::vector<int>> realizations;  // up to two path words, event ids
    std::vector<int> lead;                       // per agent pair, event id or -1
    size_t total_len = 0;
};

bool id_word_prefix(const std::vector<int>& a, const std::vector<int>& b) {
    return a.size() <= b.size() && std::equal(a.begin(), a.end(), b.begin());
}

// x componentwise below the componentwise maximum of the (componentwise
// comparable) pair (a, b).
bool below_merged(const std::vector<std::vector<int>>& x,
                  const std::vector<std::vector<int>>& a,
                  const std::vector<std::vector<int>>& b) {
    for (size_t k = 0; k < x.size(); ++k) {
        if (!id_word_prefix(x[k], a[k]) && !id_word_prefix(x[k], b[k])) {
            return false;
        }
    }
    return true;
}

// (state, views)-memoized path search; exact on acyclic automata, finitized
// by the per-transition reuse bound on cyclic ones.
struct ViewScan {
    const TaskIndex& ti;
    int bound;
    ViewTrie trie;
    struct Node {
        int state;
        TupleKey key;
        size_t len;
        std::vector<std::pair<int, int>> succs;  // (child node id, event id)
        std::vector<std::vector<int>> words;     // up to two realizations
    };
    std::vector<Node> nodes;
    std::map<std::pair<int, TupleKey>, int> ids;
    std::vector<int> used;  // per (state, event); a transition is one cell

    int visit(int state, const TupleKey& key, size_t len) {
        auto map_key = std::make_pair(state, key);
        auto it = ids.find(map_key);
        if (it != ids.end()) {
            return it->second;
        }
        const int id = static_cast<int>(nodes.size());
        ids.emplace(std::move(map_key), id);
        nodes.push_back({state, key, len, {}, {}});
        const size_t width = ti.event_names.size();
        for (size_t e = 0; e < width; ++e) {
            const int target = ti.next[state][e];
            if (target < 0) {
                continue;
            }
            int& uses = used[state * width + e];
            if (uses >= bound) {
                continue;
            }
            ++uses;
            TupleKey child = key;
            for (size_t k : ti.owners[e]) {
                child[k] = trie.extend(child[k], static_cast<int>(e));
            }
            const int cid = visit(target, child, len + 1);
            --uses;
            nodes[id].succs.push_back({cid, static_cast<int>(e)});
        }
        return id;
    }
};

std::map<TupleKey, TupleEntry> collect_view_tuples(const TaskIndex& ti, int root,
                                                   size_t agent_count, int bound,
                                                   const std::vector<AgentPairInfo>& agent_pairs) {
    ViewScan scan{ti,
                  bound,
                  {},
                  {},
                  {},
                  std::vector<int>(ti.states.size() * ti.event_names.size(), 0)};
    scan.visit(root, TupleKey(agent_count, 0), 0);

    // Realization words per node, capped at two, in path-length order.
    std::vector<int> order(scan.nodes.size());
    for (size_t i = 0; i < order.size(); ++i) {
        order[i] = static_cast<int>(i);
    }
    std::sort(order.begin(), order.end(),
              [&](int x, int y) { return scan.nodes[x].len < scan.nodes[y].len; });
    scan.nodes[0].words.push_back({});
    for (int id : order) {
        for (const auto& [cid, e] : scan.nodes[id].succs) {
            auto& child_words = scan.nodes[cid].words;
            for (const auto& w : scan.nodes[id].words) {
                if (child_words.size() >= 2) {
                    break;
                }
                std::vector<int> extended = w;
                extended.push_back(e);
                child_words.push_back(std::move(extended));
            }
        }
    }

    std::map<TupleKey, TupleEntry> tuples;
    for (const auto& node : scan.nodes) {
        auto [it, fresh] = tuples.try_emplace(node.key);
        TupleEntry& entry = it->second;
        if (fresh) {
            for (int view_node : node.key) {
                entry.views.push_back(scan.trie.events_of(view_node));
                entry.total_len += entry.views.back().size();
            }
            for (const auto& ap : agent_pairs) {
                int lead = -1;
                for (int e : entry.views[ap.i - 1]) {
                    if (ap.shared[e]) {
                        lead = e;
                        break;
                    }
                }
                entry.lead.push_back(lead);
            }
        }
        for (const auto& w : node.words) {
            if (entry.realizations.size() < 2) {
                entry.realizations.push_back(w);
            }
        }
    }
    return tuples;
}

// First agent pair on which both tuples project to a nonempty word with the
// same leading shared event; -1 when none.
int pair_filter(const TupleEntry& a, const TupleEntry& b) {
    for (size_t k = 0; k < a.lead.size(); ++k) {
        if (a.lead[k] >= 0 && a.lead[k] == b.lead[k]) {
            return static_cast<int>(k);
        }
    }
    return -1;
}

// The composed projected two-branch system is walked directly: each agent
// tracks its position along the two projected views (-1 once a view can no
// longer match), an event fires when every owner can advance on one of its
// views, and the walk is deterministic. Its language is exactly the
// synchronized product of the per-agent view prefixes, so inclusion in the
// deterministic rooted automaton decides the simulation obligation. Returns
// the shortest missing string, extended greedily to a maximal one; nullopt
// when included.
std::optional<std::vector<int>> obligation_excess(
    const TaskIndex& ti, int root, const std::vector<std::vector<int>>& views_a,
    const std::vector<std::vector<int>>& views_b) {
    const size_t n = views_a.size();
    using Key = std::vector<int>;  // 2n tracker positions + target state
    Key start(2 * n + 1, 0);
    start[2 * n] = root;
    std::map<Key, std::pair<Key, int>> parent;  // child -> (parent, event id)
    parent.emplace(start, std::make_pair(Key{}, -1));
    std::deque<Key> queue{start};

    auto advance = [&](const Key& from, size_t event, Key& to) {
        to = from;
        for (size_t k : ti.owners[event]) {
            const int pu = from[2 * k];
            const int pv = from[2 * k + 1];
            const bool u_ok = pu >= 0 && pu < static_cast<int>(views_a[k].size()) &&
                              views_a[k][pu] == static_cast<int>(event);
            const bool v_ok = pv >= 0 && pv < static_cast<int>(views_b[k].size()) &&
                              views_b[k][pv] == static_cast<int>(event);
            if (!u_ok && !v_ok) {
                return false;
            }
            to[2 * k] = u_ok ? pu + 1 : -1;
            to[2 * k + 1] = v_ok ? pv + 1 : -1;
        }
        return true;
    };

    std::optional<std::pair<Key, int>> violation;
    while (!queue.empty() && !violation) {
        Key cur = queue.front();
        queue.pop_front();
        for (size_t e = 0; e < ti.event_names.size() && !violation; ++e) {
            Key next;
            if (!advance(cur, e, next)) {
                continue;
            }
            const int target = ti.next[cur[2 * n]][e];
            if (target < 0) {
                violation = {cur, static_cast<int>(e)};
                break;
            }
            next[2 * n] = target;
            if (parent.emplace(next, std::make_pair(cur, static_cast<int>(e))).second) {
                queue.push_back(next);
            }
        }
    }
    if (!violation) {
        return std::nullopt;
    }
    std::vector<int> ids{violation->second};
    for (Key node = violation->first; parent.at(node).second >= 0;
         node = parent.at(node).first) {
        ids.push_back(parent.at(node).second);
    }
    std::reverse(ids.begin(), ids.end());

    // Greedy maximal extension inside the composed language; the target is
    // already dead, only the trackers constrain from here.
    Key cur = start;
    for (int id : ids) {
        Key next;
        advance(cur, static_cast<size_t>(id), next);
        next[2 * n] = 0;
        cur = next;
    }
    while (true) {
        bool extended = false;
        for (size_t e = 0; e < ti.event_names.size(); ++e) {
            Key next;
            if (advance(cur, e, next)) {
                ids.push_back(static_cast<int>(e));
                next[2 * n] = 0;
                cur = next;
                extended = true;
                break;
            }
        }
        if (!extended) {
            break;
        }
    }
    return ids;
}

struct Provenance {
    const TupleEntry* a = nullptr;
    const TupleEntry* b = nullptr;
    size_t realization_b = 0;  // 1 for the two-realizations-of-one-tuple case
    int pair_index = 0;
};

}  // namespace

ConditionVerdict check_dc3(const Automaton& a, const EventDistribution& dist, int bound) {
    require_inputs(a, dist);
    if (bound < 1) {
        throw std::invalid_argument("path bound must be at least 1");
    }
    ConditionVerdict v{Condition::DC3, true, {}};
    if (dist.agent_count() < 2) {
        return v;
    }

    const TaskIndex ti = build_task_index(a, dist);
    std::vector<AgentPairInfo> agent_pairs;
    for (size_t i = 1; i <= dist.agent_count(); ++i) {
        for (size_t j = i + 1; j <= dist.agent_count(); ++j) {
            AgentPairInfo ap{i, j, std::vector<char>(ti.event_names.size(), 0)};
            for (size_t e = 0; e < ti.event_names.size(); ++e) {
                ap.shared[e] = dist.alphabet_of(i).count(ti.event_names[e]) != 0 &&
                               dist.alphabet_of(j).count(ti.event_names[e]) != 0;
            }
            agent_pairs.push_back(std::move(ap));
        }
    }

    std::set<Dc3Witness> witnesses;
    for (int root = 0; root < static_cast<int>(ti.states.size()); ++root) {
        auto tuples = collect_view_tuples(ti, root, dist.agent_count(), bound, agent_pairs);
        std::vector<std::pair<const TupleKey*, const TupleEntry*>> leaded;
        for (const auto& [key, entry] : tuples) {
            for (int lead : entry.lead) {
                if (lead >= 0) {
                    leaded.push_back({&key, &entry});
                    break;
                }
            }
        }

        std::map<TupleKey, Provenance> singles;
        std::vector<Provenance> pairs;
        for (size_t x = 0; x < leaded.size(); ++x) {
            const TupleKey& kx = *leaded[x].first;
            const TupleEntry& tx = *leaded[x].second;
            if (tx.realizations.size() >= 2) {
                const int k = pair_filter(tx, tx);
                if (k >= 0) {
                    singles.try_emplace(kx, Provenance{&tx, &tx, 1, k});
                }
            }
            for (size_t y = x + 1; y < leaded.size(); ++y) {
                const TupleKey& ky = *leaded[y].first;
                const TupleEntry& ty = *leaded[y].second;
                const int k = pair_filter(tx, ty);
                if (k < 0) {
                    continue;
                }
                Provenance prov{&tx, &ty, 0, k};
                TupleKey merged(kx.size());
                bool comparable = true;
                for (size_t c = 0; c < kx.size() && comparable; ++c) {
                    if (id_word_prefix(tx.views[c], ty.views[c])) {
                        merged[c] = ky[c];
                    } else if (id_word_prefix(ty.views[c], tx.views[c])) {
                        merged[c] = kx[c];
                    } else {
                        comparable = false;
                    }
                }
                if (comparable) {
                    singles.try_emplace(std::move(merged), prov);
                } else {
                    pairs.push_back(prov);
                }
            }
        }
        if (singles.empty() && pairs.empty()) {
            continue;
        }

        // Each root reports at most one witness: later failing obligations at
        // the same root restate the same synchronization defect.
        bool root_violated = false;
        auto evaluate = [&](const Provenance& prov) {
            const auto excess =
                obligation_excess(ti, root, prov.a->views, prov.b->views);
            if (excess) {
                const AgentPairInfo& ap = agent_pairs[prov.pair_index];
                const auto& ra = prov.a->realizations[0];
                const auto& rb = prov.b->realizations[prov.realization_b];
                witnesses.insert(Dc3Witness{
                    ti.states[root], ids_to_word(ti, ra), ids_to_word(ti, rb), ap.i, ap.j,
                    prov.a->lead[prov.pair_index] >= 0
                        ? ti.event_names[prov.a->lead[prov.pair_index]]
                        : Event{},
                    ids_to_word(ti, *excess)});
                root_violated = true;
                return false;
            }
            return true;
        };
        auto below = [&](const Provenance& x, const Provenance& dominator) {
            return below_merged(x.a->views, dominator.a->views, dominator.b->views) &&
                   below_merged(x.b->views, dominator.a->views, dominator.b->views);
        };

        // Maximal single obligations first; on failure the subsumed ones are
        // re-checked individually since failure does not propagate downward.
        std::vector<const Provenance*> maximal, subsumed;
        for (const auto& [key, prov] : singles) {
            bool is_max = true;
            for (const auto& [other_key, other] : singles) {
                if (&other != &prov && below(prov, other) && !below(other, prov)) {
                    is_max = false;
                    break;
                }
            }
            (is_max ? maximal : subsumed).push_back(&prov);
        }
        std::vector<const Provenance*> passed;
        for (const Provenance* prov : maximal) {
            if (evaluate(*prov)) {
                passed.push_back(prov);
            }
            if (root_violated) {
                break;
            }
        }
        for (const Provenance* prov : subsumed) {
            if (root_violated) {
                break;
            }
            bool covered = false;
            for (const Provenance* ok : passed) {
                if (below(*prov, *ok)) {
                    covered = true;
                    break;
                }
            }
            if (!covered && evaluate(*prov)) {
                passed.push_back(prov);
            }
        }

        // Incomparable pairs, largest first so passed ones cover the rest.
        std::sort(pairs.begin(), pairs.end(), [](const Provenance& l, const Provenance& r) {
            return l.a->total_len + l.b->total_len > r.a->total_len + r.b->total_len;
        });
        for (const Provenance& prov : pairs) {
            if (root_violated) {
                break;
            }
            bool covered = false;
            for (const Provenance* ok : passed) {
                if (below(prov, *ok)) {
                    covered = true;
                    break;
                }
            }
            if (!covered && evaluate(prov)) {
                passed.push_back(&prov);
            }
        }
    }

    v.witnesses.assign(witnesses.begin(), witnesses.end());
    v.holds = v.witnesses.empty();
    return v;
}


ConditionVerdict check_dc4(const Automaton& a, const EventDistribution& dist) {
    require_inputs(a, dist);
    ConditionVerdict v{Condition::DC4, true, {}};
    for (size_t agent = 1; agent <= dist.agent_count(); ++agent) {
        Automaton projection = project_automaton(a, dist.alphabet_of(agent));
        std::optional<Relation> equivalent;
        for (const StateId& x : projection.states()) {
            for (const auto& [e, targets] : projection.out(x)) {
                if (targets.size() < 2) {
                    continue;
                }
                for (auto first = targets.begin(); first != targets.end(); ++first) {
                    for (auto second = std::next(first); second != targets.end(); ++second) {
                        if (!equivalent) {
                            equivalent = self_bisimulation(projection);
                        }
                        if (equivalent->count({*first, *second}) == 0) {
                            auto suffix =
                                state_language_difference(projection, {*first}, {*second});
                            v.witnesses.push_back(
                                Dc4Witness{agent, x, e, *first, *second, suffix});
                        }
                    }
                }
            }
        }
    }
    v.holds = v.witnesses.empty();
    return v;
}

DecomposabilityReport check_decomposable(const Automaton& a, const EventDistribution& dist,
                                         int bound, bool with_oracle) {
    require_inputs(a, dist);
    DecomposabilityReport report;
    report.bound = bound;
    report.dc1 = check_dc1(a, dist);
    report.dc2 = check_dc2(a, dist);
    report.dc3 = check_dc3(a, dist, bound);
    report.dc4 = check_dc4(a, dist);
    report.overall =
        report.dc1.holds && report.dc2.holds && report.dc3.holds && report.dc4.holds;
    for (size_t agent = 1; agent <= dist.agent_count(); ++agent) {
        report.projections.push_back(project_automaton(a, dist.alphabet_of(agent)));
    }
    report.composed = compose_all(report.projections);
    if (with_oracle) {
        const bool oracle = bisimilar(a, *report.composed).has_value();
        report.oracle_agrees = (oracle == report.overall);
    }
    return report;
}

bool direct_oracle(const Automaton& a, const EventDistribution& dist) {
    require_inputs(a, dist);
    std::vector<Automaton> projections;
    for (size_t agent = 1; agent <= dist.agent_count(); ++agent) {
        projections.push_back(project_automaton(a, dist.alphabet_of(agent)));
    }
    return bisimilar(a, compose_all(projections)).has_value();
}

namespace {

// Owner of the anchor event with the smallest alphabet (largest agent number
// on ties) receives the other event of the pair.
std::optional<RepairSuggestion> pair_suggestion(const EventDistribution& dist, const Event& e1,
                                                const Event& e2, Condition rationale) {
    const Event& anchor = std::max(e1, e2);
    const Event& missing = std::min(e1, e2);
    std::optional<size_t> best;
    for (size_t agent : dist.loc(anchor)) {
        if (dist.alphabet_of(agent).count(missing) != 0) {
            continue;
        }
        if (!best || dist.alphabet_of(agent).size() < dist.alphabet_of(*best).size() ||
            (dist.alphabet_of(agent).size() == dist.alphabet_of(*best).size() && agent > *best)) {
            best = agent;
        }
    }
    if (!best) {
        return std::nullopt;
    }
    return RepairSuggestion{missing, {*best}, rationale, false};
}

// Labels on the erased-transition path between the two sources of the
// nondeterministic moves inside the merged class.
std::set<Event> merge_path_labels(const Automaton& a, const std::set<Event>& retained,
                                  const Quotient& quotient, const StateId& cls,
                                  const Event& event, const StateId& succ_a,
                                  const StateId& succ_b) {
    const auto& members = quotient.classes.at(cls);
    const auto& targets_a = quotient.classes.at(succ_a);
    const auto& targets_b = quotient.classes.at(succ_b);
    auto source_of = [&](const std::set<StateId>& targets) -> std::optional<StateId> {
        for (const StateId& m : members) {
            for (const StateId& t : a.step(m, event)) {
                if (targets.count(t) != 0) {
                    return m;
                }
            }
        }
        return std::nullopt;
    };
    auto pa = source_of(targets_a);
    auto pb = source_of(targets_b);
    if (!pa || !pb || *pa == *pb) {
        return {};
    }
    // Undirected search over erased transitions within the class.
    std::map<StateId, std::pair<StateId, Event>> parent;
    std::deque<StateId> queue{*pa};
    parent[*pa] = {*pa, ""};
    while (!queue.empty()) {
        StateId cur = queue.front();
        queue.pop_front();
        if (cur == *pb) {
            break;
        }
        for (const Transition& t : a.transitions()) {
            if (retained.count(t.event) != 0) {
                continue;
            }
            StateId next;
            if (t.src == cur && members.count(t.dst) != 0) {
                next = t.dst;
            } else if (t.dst == cur && members.count(t.src) != 0) {
                next = t.src;
            } else {
                continue;
            }
            if (parent.emplace(next, std::make_pair(cur, t.event)).second) {
                queue.push_back(next);
            }
        }
    }
    std::set<Event> labels;
    if (parent.count(*pb) == 0) {
        return labels;
    }
    for (StateId cur = *pb; cur != *pa; cur = parent.at(cur).first) {
        labels.insert(parent.at(cur).second);
    }
    return labels;
}

}  // namespace

EventDistribution apply_suggestions(const EventDistribution& dist,
                                    const std::vector<RepairSuggestion>& suggestions) {
    std::vector<std::set<Event>> alphabets;
    for (size_t agent = 1; agent <= dist.agent_count(); ++agent) {
        alphabets.push_back(dist.alphabet_of(agent));
    }
    for (const RepairSuggestion& s : suggestions) {
        for (size_t agent : s.add_to_agents) {
            alphabets.at(agent - 1).insert(s.event);
        }
    }
    return EventDistribution(std::move(alphabets));
}

std::vector<RepairSuggestion> diagnose(const Automaton& a, const EventDistribution& dist,
                                       const DecomposabilityReport& report) {
    if (report.overall) {
        throw std::invalid_argument("diagnose expects a failing report");
    }
    std::map<std::pair<Event, std::set<size_t>>, RepairSuggestion> unique;
    auto add = [&](std::optional<RepairSuggestion> s) {
        if (s && !s->add_to_agents.empty()) {
            unique.try_emplace({s->event, s->add_to_agents}, *s);
        }
    };
    auto drain = [&] {
        std::vector<RepairSuggestion> out;
        for (auto& [key, s] : unique) {
            out.push_back(s);
        }
        if (!out.empty()) {
            EventDistribution amended = apply_suggestions(dist, out);
            bool fixed = check_decomposable(a, amended, report.bound).overall;
            for (RepairSuggestion& s : out) {
                s.verified = fixed;
            }
        }
        return out;
    };

    // Joint-ownership repairs for decision violations come first; sharing the
    // leading branch events is attempted only when they do not suffice.
    for (const Witness& w : report.dc1.witnesses) {
        const auto& dc1 = std::get<Dc1Witness>(w);
        add(pair_suggestion(dist, dc1.e1, dc1.e2, Condition::DC1));
    }
    for (const Witness& w : report.dc2.witnesses) {
        const auto& dc2 = std::get<Dc2Witness>(w);
        add(pair_suggestion(dist, dc2.e1, dc2.e2, Condition::DC2));
    }
    if (!unique.empty()) {
        std::vector<RepairSuggestion> first_tier = drain();
        if (!first_tier.empty() && first_tier.front().verified) {
            return first_tier;
        }
    }

    for (const Witness& w : report.dc3.witnesses) {
        const auto& dc3 = std::get<Dc3Witness>(w);
        for (const Word* branch : {&dc3.branch_a, &dc3.branch_b}) {
            if (branch->empty()) {
                continue;
            }
            const Event& lead = branch->front();
            std::set<size_t> missing;
            for (size_t agent : {dc3.agent_i, dc3.agent_j}) {
                if (dist.alphabet_of(agent).count(lead) == 0) {
                    missing.insert(agent);
                }
            }
            if (!missing.empty()) {
                add(RepairSuggestion{lead, missing, Condition::DC3, false});
            }
        }
    }
    for (const Witness& w : report.dc4.witnesses) {
        const auto& dc4 = std::get<Dc4Witness>(w);
        const auto& retained = dist.alphabet_of(dc4.agent);
        Quotient quotient = quotient_classes(a, retained);
        for (const Event& label :
             merge_path_labels(a, retained, quotient, dc4.local_state, dc4.event, dc4.succ_a,
                               dc4.succ_b)) {
            add(RepairSuggestion{label, {dc4.agent}, Condition::DC4, false});
        }
    }
    return drain();
}

}  // namespace decomp
