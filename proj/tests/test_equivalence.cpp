#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "decomp/algebra.hpp"
#include "decomp/equivalence.hpp"
#include "support/builders.hpp"
#include "support/helpers.hpp"
#include "support/oracles.hpp"

using namespace decomp;
using test::chain_automaton;
using test::deterministic_language_equal;
using test::events;
using test::fixture;
using test::word;

namespace {

std::vector<Automaton> fixture_projections(const ModelDocument& doc) {
    std::vector<Automaton> out;
    for (size_t i = 1; i <= doc.distribution.agent_count(); ++i) {
        out.push_back(project_automaton(doc.automaton, doc.distribution.alphabet_of(i)));
    }
    return out;
}

}  // namespace

TEST_CASE("simulates") {
    auto e1 = fixture("example1.aut");

    SUBCASE("every automaton simulates itself") {
        auto relation = simulates(e1.automaton, e1.automaton);
        REQUIRE(relation);
        for (const StateId& q : e1.automaton.states()) {
            CHECK(relation->pairs.count({q, q}) == 1);
        }
    }
    SUBCASE("the composed projections always simulate the task") {
        CHECK(simulates(e1.automaton, compose_all(fixture_projections(e1))));
    }
    SUBCASE("an indecomposable task does not simulate back") {
        auto r5 = fixture("remark5.aut");
        Automaton composed = compose_all(fixture_projections(r5));
        CHECK(!simulates(composed, r5.automaton));
        auto refusal = simulation_refusal(composed, r5.automaton);
        REQUIRE(refusal);
        CHECK(!r5.automaton.accepts(*refusal));
    }
}

TEST_CASE("bisimilar") {
    auto e1 = fixture("example1.aut");

    SUBCASE("reflexive") {
        CHECK(bisimilar(e1.automaton, e1.automaton));
    }
    SUBCASE("task bisimilar to its composed projections when decomposable") {
        CHECK(bisimilar(e1.automaton, compose_all(fixture_projections(e1))));
    }
    SUBCASE("dc4 counterexample is not bisimilar to its composition") {
        auto a4 = fixture("a4.aut");
        CHECK(!bisimilar(a4.automaton, compose_all(fixture_projections(a4))));
    }
    SUBCASE("witness relation is closed in both directions") {
        Automaton chain = chain_automaton(word("a b"));
        Automaton copy = chain_automaton(word("a b"), {}, "t");
        auto witness = bisimilar(chain, copy);
        REQUIRE(witness);
        for (const auto& [p, q] : witness->relation) {
            for (const auto& [e, targets] : chain.out(p)) {
                for (const StateId& t : targets) {
                    bool matched = false;
                    for (const StateId& u : copy.step(q, e)) {
                        matched = matched || witness->relation.count({t, u}) != 0;
                    }
                    CHECK(matched);
                }
            }
        }
    }
}

TEST_CASE("bisimilarity implies mutual simulation") {
    auto doc = fixture("example1.aut");
    Automaton composed = compose_all(fixture_projections(doc));
    REQUIRE(bisimilar(doc.automaton, composed));
    CHECK(simulates(doc.automaton, composed));
    CHECK(simulates(composed, doc.automaton));
}

TEST_CASE("deterministic automata: bisimilarity coincides with language equality") {
    auto e1 = fixture("example1.aut").automaton;
    auto a3 = fixture("a3.aut").automaton;
    Automaton p1 = project_automaton(e1, events("a c d e1 e5"));
    REQUIRE(p1.deterministic());
    Automaton expected = test::branch_automaton({word("a c e5 d"), word("e1 a c e5 d")},
                                                events("a c d e1 e5"));
    CHECK(bisimilar(p1, expected).has_value() ==
          deterministic_language_equal(p1, p1.initial(), expected, expected.initial()));
    CHECK(bisimilar(p1, expected));
    CHECK(bisimilar(e1, a3).has_value() ==
          deterministic_language_equal(e1, e1.initial(), a3, a3.initial()));
    CHECK(!bisimilar(e1, a3));
}

TEST_CASE("continuation_equivalent") {
    auto a2 = fixture("a2.aut").automaton;

    SUBCASE("diagonal pairs are always equivalent") {
        auto relation = continuation_equivalent(a2, "q1", "q1");
        REQUIRE(relation);
        CHECK(relation->count({"q1", "q1"}) == 1);
    }
    SUBCASE("the two orders of e1 e2 lead to inequivalent states") {
        StateId d12 = *a2.run("q0", word("e1 e2")).begin();
        StateId d21 = *a2.run("q0", word("e2 e1")).begin();
        CHECK(!continuation_equivalent(a2, d12, d21));
    }
    SUBCASE("nondeterministic successor chain breaks on the extra e3") {
        auto a4 = fixture("a4.aut").automaton;
        Automaton p2 = project_automaton(a4, events("a b e2 e3"));
        // ends of the two a-branches: u3 has nothing left, v4 still offers e3
        CHECK(!continuation_equivalent(p2, "u3", "v4"));
        CHECK(continuation_equivalent(p2, "u2", "v3").has_value() == false);
        CHECK(continuation_equivalent(p2, "u3", "v5"));
    }
    SUBCASE("agrees with the language oracle on deterministic states") {
        auto e1 = fixture("example1.aut").automaton;
        for (const StateId& x : e1.states()) {
            for (const StateId& y : e1.states()) {
                CHECK(continuation_equivalent(e1, x, y).has_value() ==
                      deterministic_language_equal(e1, x, e1, y));
            }
        }
    }
    CHECK_THROWS_AS(continuation_equivalent(a2, "nope", "q0"), std::invalid_argument);
}

TEST_CASE("self_bisimulation matches continuation_equivalent") {
    auto a4 = fixture("a4.aut").automaton;
    Automaton p2 = project_automaton(a4, events("a b e2 e3"));
    Relation alive = self_bisimulation(p2);
    for (const StateId& x : p2.states()) {
        for (const StateId& y : p2.states()) {
            CHECK((alive.count({x, y}) != 0) ==
                  continuation_equivalent(p2, x, y).has_value());
        }
    }
}
