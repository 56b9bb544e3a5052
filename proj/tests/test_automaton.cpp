#include <doctest.h>

#include <set>
#include <tuple>

#include "psc/automaton.hpp"
#include "psc/parser.hpp"
#include "test_util.hpp"

using namespace psc;

namespace {

Automaton automaton_of(const std::string& relative) {
    ParseResult r = parse_protocol(test_util::read_repo_file(relative));
    REQUIRE(r.ok());
    return build_automaton(*r.decl);
}

// (source, endpoint, target, auto?) in the automaton's canonical order.
using EdgeTuple = std::tuple<StateId, std::string, StateId, bool>;

std::vector<EdgeTuple> edges_of(const Automaton& a) {
    std::vector<EdgeTuple> out;
    for (const Transition& t : a.transitions) {
        out.emplace_back(t.source, t.label.endpoint, t.target,
                         t.label.kind == EdgeKind::AutoInterrupt);
    }
    return out;
}

void check_invariants(const Automaton& a) {
    // Determinism: a state never has two outgoing edges with one endpoint.
    std::set<std::pair<StateId, std::string>> seen;
    for (const Transition& t : a.transitions) {
        CHECK(seen.emplace(t.source, t.label.endpoint).second);
        CHECK(t.label.kind == (t.label.role.is_contract() ? EdgeKind::AutoInterrupt
                                                          : EdgeKind::UserCall));
    }
    // Reachability from the initial state.
    std::set<StateId> reached = {a.initial};
    bool grew = true;
    while (grew) {
        grew = false;
        for (const Transition& t : a.transitions) {
            if (reached.count(t.source) && !reached.count(t.target)) {
                reached.insert(t.target);
                grew = true;
            }
        }
    }
    CHECK(reached.size() == a.state_count);
    // Terminals are sinks.
    for (const Transition& t : a.transitions) {
        CHECK(!a.is_terminal(t.source));
    }
}

}  // namespace

TEST_CASE("GuessingGame translates to the three-state machine") {
    Automaton a = automaton_of("protocols/guessing_game.psc");
    CHECK(a.state_count == 3);
    CHECK(a.initial == 1);
    CHECK(a.terminals == std::set<StateId>{3});
    std::vector<EdgeTuple> expected = {
        {1, "lock", 2, false},
        {2, "closeGame", 3, true},
        {2, "guess", 2, false},
    };
    CHECK(edges_of(a) == expected);
}

TEST_CASE("RecGuessingGame translates to the five-state machine") {
    Automaton a = automaton_of("protocols/rec_guessing_game.psc");
    CHECK(a.state_count == 5);
    CHECK(a.terminals == std::set<StateId>{5});
    std::vector<EdgeTuple> expected = {
        {1, "lock", 2, false},
        {2, "cancelGame", 4, false},
        {2, "proceedWithGame", 3, false},
        {3, "guess", 2, false},
        {4, "closeGame", 5, false},
    };
    CHECK(edges_of(a) == expected);
}

TEST_CASE("StraightLineGuessingGame is a chain") {
    Automaton a = automaton_of("protocols/straight_line_guessing_game.psc");
    CHECK(a.state_count == 4);
    CHECK(a.terminals == std::set<StateId>{4});
    std::vector<EdgeTuple> expected = {
        {1, "lock", 2, false},
        {2, "guess", 3, false},
        {3, "closeGame", 4, false},
    };
    CHECK(edges_of(a) == expected);
}

TEST_CASE("ChoiceGuessingGame branches merge into one post-choice state") {
    Automaton a = automaton_of("protocols/choice_guessing_game.psc");
    CHECK(a.state_count == 5);
    CHECK(a.terminals == std::set<StateId>{5});
    std::vector<EdgeTuple> expected = {
        {1, "lock", 2, false},
        {2, "cancelGame", 4, false},
        {2, "proceedWithGame", 3, false},
        {3, "guess", 4, false},
        {4, "closeGame", 5, false},
    };
    CHECK(edges_of(a) == expected);
}

TEST_CASE("PingPongRec loops forever with no terminal state") {
    Automaton a = automaton_of("protocols/ping_pong_rec.psc");
    CHECK(a.state_count == 3);
    CHECK(a.terminals.empty());
    std::vector<EdgeTuple> expected = {
        {1, "init", 2, false},
        {2, "ping", 3, false},
        {3, "pong", 2, false},
    };
    CHECK(edges_of(a) == expected);
}

TEST_CASE("Crowdfunding wires contribute back to the choice state") {
    Automaton a = automaton_of("protocols/crowdfunding.psc");
    CHECK(a.state_count == 4);
    CHECK(a.terminals == std::set<StateId>{4});
    std::vector<EdgeTuple> expected = {
        {1, "init", 2, false},
        {2, "closeCrowdfund", 4, false},
        {2, "continue", 3, false},
        {3, "contribute", 2, false},
    };
    CHECK(edges_of(a) == expected);
}

TEST_CASE("Auction matches the do-interrupt shape") {
    Automaton a = automaton_of("protocols/auction.psc");
    CHECK(a.state_count == 3);
    CHECK(a.terminals == std::set<StateId>{3});
    std::vector<EdgeTuple> expected = {
        {1, "beginAuction", 2, false},
        {2, "bid", 2, false},
        {2, "endAuction", 3, true},
    };
    CHECK(edges_of(a) == expected);
}

TEST_CASE("an empty protocol yields a single terminal state") {
    ParseResult r = parse_protocol("protocol Empty (role A) { }");
    REQUIRE(r.ok());
    Automaton a = build_automaton(*r.decl);
    CHECK(a.state_count == 1);
    CHECK(a.initial == 1);
    CHECK(a.terminals == std::set<StateId>{1});
    CHECK(a.transitions.empty());
}

TEST_CASE("interrupt edges leave every node of the do body") {
    ParseResult r = parse_protocol(
        "protocol TwoStep (role A) {"
        "  do { first () from A; second () from A; }"
        "  interrupt { stop () from Contract; }"
        "}");
    REQUIRE(r.ok());
    Automaton a = build_automaton(*r.decl);
    // Body nodes 1..3 (entry, after first, after second), post node 4.
    CHECK(a.state_count == 4);
    std::size_t auto_edges = 0;
    for (const Transition& t : a.transitions) {
        if (t.label.kind == EdgeKind::AutoInterrupt) {
            CHECK(t.label.endpoint == "stop");
            CHECK(t.target == 4);
            ++auto_edges;
        }
    }
    CHECK(auto_edges == 3);
    CHECK(a.terminals == std::set<StateId>{4});
}

TEST_CASE("enabled lists outgoing labels sorted by endpoint") {
    Automaton gg = automaton_of("protocols/guessing_game.psc");
    std::vector<EdgeLabel> at2 = enabled(gg, 2);
    REQUIRE(at2.size() == 2);
    CHECK(at2[0].endpoint == "closeGame");
    CHECK(at2[0].kind == EdgeKind::AutoInterrupt);
    CHECK(at2[1].endpoint == "guess");
    CHECK(at2[1].role.name == "Player");
    CHECK(enabled(gg, 3).empty());
    CHECK_THROWS_AS(enabled(gg, 9), std::invalid_argument);
    CHECK_THROWS_AS(enabled(gg, 0), std::invalid_argument);

    Automaton rec = automaton_of("protocols/rec_guessing_game.psc");
    std::vector<EdgeLabel> choices = enabled(rec, 2);
    REQUIRE(choices.size() == 2);
    CHECK(choices[0].endpoint == "cancelGame");
    CHECK(choices[1].endpoint == "proceedWithGame");
}

TEST_CASE("building twice yields identical automata") {
    for (const std::string& file : test_util::protocol_files()) {
        ParseResult r = parse_protocol(test_util::read_repo_file(file));
        REQUIRE(r.ok());
        CHECK(build_automaton(*r.decl) == build_automaton(*r.decl));
    }
}

TEST_CASE("all shipped protocols satisfy the automaton invariants") {
    for (const std::string& file : test_util::protocol_files()) {
        CAPTURE(file);
        check_invariants(automaton_of(file));
    }
}

TEST_CASE("build_automaton rejects protocols that do not validate") {
    ParseResult r = parse_protocol("protocol P (role A) { f () from B; }");
    REQUIRE(r.ok());
    CHECK_THROWS_AS(build_automaton(*r.decl), std::invalid_argument);
}

TEST_CASE("DOT output shows the guess self-loop and dashed interrupt") {
    Automaton gg = automaton_of("protocols/guessing_game.psc");
    std::string dot = to_dot(gg);
    CHECK(dot.find("2 -> 2 [label=\"guess\"]") != std::string::npos);
    CHECK(dot.find("2 -> 3 [label=\"closeGame\", style=dashed]") != std::string::npos);
    CHECK(dot.find("3 [label=\"3\", shape=doublecircle]") != std::string::npos);
}

TEST_CASE("DOT output for a single-state automaton") {
    ParseResult r = parse_protocol("protocol Empty (role A) { }");
    REQUIRE(r.ok());
    std::string dot = to_dot(build_automaton(*r.decl));
    CHECK(dot.find("doublecircle") != std::string::npos);
    CHECK(dot.find("->") == std::string::npos);
}

TEST_CASE("DOT output for PingPongRec wires the loop") {
    std::string dot = to_dot(automaton_of("protocols/ping_pong_rec.psc"));
    CHECK(dot.find("1 -> 2 [label=\"init\"]") != std::string::npos);
    CHECK(dot.find("2 -> 3 [label=\"ping\"]") != std::string::npos);
    CHECK(dot.find("3 -> 2 [label=\"pong\"]") != std::string::npos);
}

TEST_CASE("the automaton dump is stable and lossless in shape") {
    Automaton gg = automaton_of("protocols/guessing_game.psc");
    std::string dump = dump_automaton(gg);
    CHECK(dump.find("automaton GuessingGame\n") == 0);
    CHECK(dump.find("states 3\n") != std::string::npos);
    CHECK(dump.find("terminals 3\n") != std::string::npos);
    CHECK(dump.find("edge 1 2 lock user Owner String,Value\n") != std::string::npos);
    CHECK(dump.find("edge 2 3 closeGame auto Contract -\n") != std::string::npos);
}
