#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "decomp/decomposability.hpp"
#include "decomp/tasking.hpp"
#include "support/builders.hpp"
#include "support/helpers.hpp"
#include "support/naive_dc3.hpp"
#include "support/oracles.hpp"
#include "support/random_models.hpp"

using namespace decomp;
using test::brute_force_interleave;
using test::deterministic_language_equal;
using test::random_acyclic_deterministic;
using test::random_distribution;
using test::split_state;

namespace {

// Sub-automaton induced by dropping a random subset of transitions.
Automaton prune_transitions(const Automaton& a, std::mt19937& rng) {
    std::uniform_int_distribution<int> coin(0, 3);
    std::set<Transition> kept;
    for (const Transition& t : a.transitions()) {
        if (coin(rng) != 0) {
            kept.insert(t);
        }
    }
    return Automaton(a.states(), a.initial(), a.alphabet(), kept);
}

}  // namespace

namespace {

// The quotient construction can generate strictly more than the projected
// language (erased-event merges act symmetrically); the four conditions
// characterize decomposability exactly on instances where every projection
// is language-exact, and every divergence from the direct check lives on an
// inexact instance.
bool projections_language_exact(const Automaton& a, const EventDistribution& dist) {
    auto language = finite_language(a);
    for (size_t agent = 1; agent <= dist.agent_count(); ++agent) {
        const auto& alpha = dist.alphabet_of(agent);
        std::set<Word> projected;
        for (const Word& w : language) {
            projected.insert(project_string(w, alpha));
        }
        try {
            if (finite_language(project_automaton(a, alpha)) != projected) {
                return false;
            }
        } catch (const std::invalid_argument&) {
            return false;  // the projection gained a cycle: strictly larger
        }
    }
    return true;
}

}  // namespace

TEST_CASE("condition verdict matches the direct check on language-exact instances") {
    std::mt19937 rng(20250810);
    int exact_seen = 0;
    int divergent = 0;
    for (int i = 0; i < 400; ++i) {
        Automaton a = random_acyclic_deterministic(rng);
        EventDistribution dist = random_distribution(rng, a.alphabet());
        auto report = check_decomposable(a, dist);
        const bool direct = direct_oracle(a, dist);
        const bool exact = projections_language_exact(a, dist);
        exact_seen += exact;
        if (exact) {
            CHECK_MESSAGE(report.overall == direct, "divergence on exact instance ", i);
        } else if (report.overall != direct) {
            ++divergent;
            if (!report.overall) {
                // the conservative direction always rejects through DC4 alone
                CHECK_MESSAGE((report.dc1.holds && report.dc2.holds &&
                               report.dc3.holds && !report.dc4.holds),
                              "unexpected conservative shape on instance ", i);
            }
        }
    }
    CHECK(exact_seen > 100);
    CHECK(divergent < 25);
}

TEST_CASE("an all-conditions-pass verdict can exceed the defining property") {
    // Frozen instance: the d-edge merges s0 with s4 for agents 1 and 3, the
    // retained a-edge between them becomes a class self-loop, and the
    // composition accepts "a b" although the task rejects it. All four
    // conditions hold, so the direct check is the only way to notice.
    Automaton a({"s0", "s1", "s2", "s3", "s4", "s5", "s6"}, "s0", {"a", "b", "c", "d"},
                {{"s0", "a", "s4"},
                 {"s0", "b", "s1"},
                 {"s0", "c", "s2"},
                 {"s0", "d", "s4"},
                 {"s1", "c", "s3"},
                 {"s2", "c", "s3"},
                 {"s4", "c", "s5"},
                 {"s5", "c", "s6"}});
    EventDistribution dist({{"a", "b", "c"}, {"a", "d"}, {"b", "c", "d"}});
    auto report = check_decomposable(a, dist);
    CHECK(report.dc1.holds);
    CHECK(report.dc2.holds);
    CHECK(report.dc3.holds);
    CHECK(report.dc4.holds);
    CHECK(report.overall);
    CHECK(!direct_oracle(a, dist));
    CHECK(!projections_language_exact(a, dist));
    Automaton p1 = project_automaton(a, dist.alphabet_of(1));
    CHECK(p1.accepts(test::word("a b")));   // quotient overapproximation
    CHECK(!a.accepts(test::word("a b")));
    REQUIRE(report.composed);
    CHECK(report.composed->accepts(test::word("a b")));
}

TEST_CASE("production dc3 agrees with the literal path-pair enumeration") {
    std::mt19937 rng(77);
    for (int i = 0; i < 120; ++i) {
        Automaton a = random_acyclic_deterministic(rng, 6, 4);
        EventDistribution dist = random_distribution(rng, a.alphabet());
        CHECK_MESSAGE(check_dc3(a, dist).holds == test::naive_dc3(a, dist), "instance ",
                      i);
    }
}

TEST_CASE("a task is always simulated by the composition of its projections") {
    std::mt19937 rng(4242);
    for (int i = 0; i < 150; ++i) {
        Automaton a = random_acyclic_deterministic(rng);
        EventDistribution dist = random_distribution(rng, a.alphabet());
        std::vector<Automaton> projections;
        for (size_t agent = 1; agent <= dist.agent_count(); ++agent) {
            projections.push_back(project_automaton(a, dist.alphabet_of(agent)));
        }
        CHECK(simulates(a, compose_all(projections)));
    }
}

TEST_CASE("composition is commutative and associative up to bisimulation") {
    std::mt19937 rng(99);
    for (int i = 0; i < 40; ++i) {
        Automaton a = random_acyclic_deterministic(rng, 5, 4);
        Automaton b = random_acyclic_deterministic(rng, 5, 4);
        Automaton c = random_acyclic_deterministic(rng, 5, 4);
        CHECK(bisimilar(compose(a, b), compose(b, a)));
        CHECK(bisimilar(compose(compose(a, b), c), compose(a, compose(b, c))));
    }
}

TEST_CASE("composition preserves simulation and bisimulation") {
    std::mt19937 rng(1234);
    for (int i = 0; i < 60; ++i) {
        Automaton a2 = random_acyclic_deterministic(rng, 6, 4);
        Automaton a4 = random_acyclic_deterministic(rng, 6, 4);
        Automaton a1 = prune_transitions(a2, rng);
        Automaton a3 = prune_transitions(a4, rng);
        REQUIRE(simulates(a1, a2));
        REQUIRE(simulates(a3, a4));
        CHECK(simulates(compose(a1, a3), compose(a2, a4)));

        Automaton b1 = split_state(a2, rng);
        Automaton b3 = split_state(a4, rng);
        REQUIRE(bisimilar(a2, b1));
        REQUIRE(bisimilar(a4, b3));
        CHECK(bisimilar(compose(a2, a4), compose(b1, b3)));
    }
}

TEST_CASE("bisimilarity is an equivalence") {
    std::mt19937 rng(5150);
    for (int i = 0; i < 60; ++i) {
        Automaton a = random_acyclic_deterministic(rng, 6, 4);
        Automaton b = split_state(a, rng);
        Automaton c = split_state(b, rng);
        CHECK(bisimilar(a, a));                                             // reflexive
        CHECK(bisimilar(a, b).has_value() == bisimilar(b, a).has_value());  // symmetric
        REQUIRE(bisimilar(a, b));
        REQUIRE(bisimilar(b, c));
        CHECK(bisimilar(a, c));  // transitive across the split chain
    }
}

TEST_CASE("continuation equivalence matches language equality on deterministic states") {
    std::mt19937 rng(31337);
    for (int i = 0; i < 40; ++i) {
        Automaton a = random_acyclic_deterministic(rng, 6, 4);
        for (const StateId& x : a.states()) {
            for (const StateId& y : a.states()) {
                CHECK(continuation_equivalent(a, x, y).has_value() ==
                      deterministic_language_equal(a, x, a, y));
            }
        }
    }
}

TEST_CASE("interleave matches the brute-force merge on random pairs") {
    std::mt19937 rng(8080);
    std::vector<Event> pool{"a", "b", "c", "d", "e"};
    std::uniform_int_distribution<size_t> len(0, 6);
    std::uniform_int_distribution<int> coin(0, 1);
    for (int i = 0; i < 150; ++i) {
        std::set<Event> e1, e2;
        for (const Event& e : pool) {
            if (coin(rng) == 1) {
                e1.insert(e);
            }
            if (coin(rng) == 1) {
                e2.insert(e);
            }
        }
        if (e1.empty() || e2.empty()) {
            continue;
        }
        auto make_word = [&](const std::set<Event>& alphabet) {
            std::vector<Event> from(alphabet.begin(), alphabet.end());
            std::uniform_int_distribution<size_t> pick_from(0, from.size() - 1);
            Word w;
            for (size_t k = len(rng); k > 0; --k) {
                w.push_back(from[pick_from(rng)]);
            }
            return w;
        };
        Word s = make_word(e1);
        Word t = make_word(e2);
        CHECK(interleave(s, t, e1, e2) == brute_force_interleave(s, t, e1, e2));
    }
}

TEST_CASE("bounded path enumeration replays on random inputs") {
    std::mt19937 rng(2024);
    for (int i = 0; i < 50; ++i) {
        Automaton a = random_acyclic_deterministic(rng, 6, 4);
        for (const Path& p : enumerate_paths(a, a.initial(), 1)) {
            CHECK(!a.run(p.start, p.word()).empty());
        }
    }
}

// The one-sided guarantee: whenever the composed projections are simulated
// by the task, sub-behavior controllers composed with universal plants stay
// simulated by it too.
TEST_CASE("one-sided team guarantee on random instances") {
    std::mt19937 rng(90210);
    std::uniform_int_distribution<int> coin(0, 3);
    int applicable = 0;
    for (int i = 0; i < 300 && applicable < 40; ++i) {
        Automaton a = random_acyclic_deterministic(rng, 6, 4);
        EventDistribution dist = random_distribution(rng, a.alphabet());
        std::vector<Automaton> projections;
        for (size_t agent = 1; agent <= dist.agent_count(); ++agent) {
            projections.push_back(project_automaton(a, dist.alphabet_of(agent)));
        }
        if (!simulates(compose_all(projections), a)) {
            continue;
        }
        ++applicable;
        auto controllers = synthesize_controllers(a, dist);
        for (auto& c : controllers) {
            std::set<Transition> kept;
            for (const Transition& t : c.automaton.transitions()) {
                if (coin(rng) != 0) {
                    kept.insert(t);
                }
            }
            Automaton pruned(c.automaton.states(), c.automaton.initial(),
                             c.automaton.alphabet(), kept);
            REQUIRE(simulates(pruned, c.automaton));
            c.automaton = pruned;
        }
        std::vector<AgentPlant> plants;
        for (size_t agent = 1; agent <= dist.agent_count(); ++agent) {
            plants.push_back(universal_plant(dist, agent));
        }
        CHECK(verify_team(a, dist, plants, controllers, TeamMode::simulation).satisfied);
    }
    CHECK(applicable > 0);
}

TEST_CASE("cooperative tasking holds on random decomposable instances") {
    std::mt19937 rng(60001);
    int decomposable_seen = 0;
    for (int i = 0; i < 300 && decomposable_seen < 40; ++i) {
        Automaton a = random_acyclic_deterministic(rng, 6, 4);
        EventDistribution dist = random_distribution(rng, a.alphabet());
        if (!direct_oracle(a, dist)) {
            continue;
        }
        ++decomposable_seen;
        auto controllers = synthesize_controllers(a, dist);
        std::vector<AgentPlant> plants;
        for (size_t agent = 1; agent <= dist.agent_count(); ++agent) {
            plants.push_back(universal_plant(dist, agent));
        }
        CHECK(verify_team(a, dist, plants, controllers, TeamMode::bisimulation).satisfied);
    }
    CHECK(decomposable_seen > 0);
}
