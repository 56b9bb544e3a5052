#include <doctest.h>

#include "psc/scenario.hpp"
#include "test_util.hpp"

using namespace psc;

TEST_CASE("the shipped guessing-game scenario loads") {
    ScenarioLoadResult r =
        load_scenario(test_util::read_repo_file("scenarios/guessing_game_double_lock.json"));
    REQUIRE(r.ok());
    const Scenario& s = *r.scenario;
    CHECK(s.initial_balances.at("wallet1") == 10);
    CHECK(s.initial_balances.at("wallet2") == 10);
    CHECK(s.roles.at("wallet1") == "Owner");
    CHECK(s.mode == SimMode::Guarded);
    REQUIRE(s.actions.size() == 7);

    const auto& first_lock = std::get<CallAction>(s.actions[1]);
    CHECK(first_lock.wallet == "wallet1");
    CHECK(first_lock.endpoint == "lock");
    REQUIRE(first_lock.args.size() == 2);
    CHECK(std::get<std::string>(first_lock.args[0]) == "Pink Floyd");
    CHECK(std::get<std::int64_t>(first_lock.args[1]) == 3);

    const auto& second_lock = std::get<CallAction>(s.actions[3]);
    CHECK(std::get<std::string>(second_lock.args[0]) == "Led Zeppelin");
    CHECK(std::get<std::int64_t>(second_lock.args[1]) == 4);

    CHECK(std::get<WaitAction>(s.actions[0]).slots == 1);
}

TEST_CASE("an empty scenario is valid") {
    ScenarioLoadResult r = load_scenario(R"({"initial_balances":{},"roles":{},"actions":[]})");
    REQUIRE(r.ok());
    CHECK(r.scenario->initial_balances.empty());
    CHECK(r.scenario->actions.empty());
    CHECK(r.scenario->mode == SimMode::Guarded);
}

TEST_CASE("a call wallet must appear in initial_balances") {
    ScenarioLoadResult r = load_scenario(R"({
        "initial_balances": {"w1": 5},
        "roles": {},
        "actions": [{"type": "call", "wallet": "w9", "tag": "f", "args": []}]
    })");
    REQUIRE(!r.ok());
    REQUIRE(r.diagnostics.size() == 1);
    CHECK(r.diagnostics[0].code == "scenario-unknown-wallet");
    CHECK(r.diagnostics[0].message.find("w9") != std::string::npos);
}

TEST_CASE("malformed JSON is a positioned diagnostic, not a crash") {
    ScenarioLoadResult r = load_scenario("{\n  \"initial_balances\": {,}\n}");
    REQUIRE(!r.ok());
    CHECK(r.diagnostics[0].code == "scenario-json");
    CHECK(r.diagnostics[0].span.line == 2);
}

TEST_CASE("unknown keys are rejected") {
    ScenarioLoadResult top = load_scenario(
        R"({"initial_balances":{},"roles":{},"actions":[],"protocol":"X"})");
    REQUIRE(!top.ok());
    CHECK(top.diagnostics[0].code == "scenario-unknown-key");

    ScenarioLoadResult nested = load_scenario(R"({
        "initial_balances": {"w": 1},
        "roles": {},
        "actions": [{"type": "wait", "slots": 1, "note": "?"}]
    })");
    REQUIRE(!nested.ok());
    CHECK(nested.diagnostics[0].code == "scenario-unknown-key");
}

TEST_CASE("wrong literal types are rejected with their JSON path") {
    ScenarioLoadResult r = load_scenario(R"({
        "initial_balances": {"w": "ten"},
        "roles": {},
        "actions": [{"type": "call", "wallet": "w", "tag": "f", "args": [true]}]
    })");
    REQUIRE(!r.ok());
    REQUIRE(r.diagnostics.size() == 2);
    std::string all = r.diagnostics[0].message + " | " + r.diagnostics[1].message;
    CHECK(all.find("/initial_balances/w") != std::string::npos);
    CHECK(all.find("/actions/0/args/0") != std::string::npos);
}

TEST_CASE("negative balances and bad waits are rejected") {
    ScenarioLoadResult negative = load_scenario(
        R"({"initial_balances":{"w":-1},"roles":{},"actions":[]})");
    REQUIRE(!negative.ok());
    CHECK(negative.diagnostics[0].message.find("negative") != std::string::npos);

    ScenarioLoadResult zero_wait = load_scenario(
        R"({"initial_balances":{},"roles":{},"actions":[{"type":"wait","slots":0}]})");
    REQUIRE(!zero_wait.ok());
    CHECK(zero_wait.diagnostics[0].message.find("positive") != std::string::npos);
}

TEST_CASE("missing required keys are each reported") {
    ScenarioLoadResult r = load_scenario(R"({"mode":"guarded"})");
    REQUIRE(!r.ok());
    CHECK(r.diagnostics.size() == 3);
}

TEST_CASE("load is total on hostile inputs") {
    for (const char* text : {"", "null", "[]", "42", "\"x\"", "{", "{}"}) {
        CAPTURE(text);
        ScenarioLoadResult r = load_scenario(text);
        CHECK(!r.ok());
        CHECK(!r.diagnostics.empty());
    }
}

TEST_CASE("serialize then load reproduces the scenario") {
    for (const char* file :
         {"scenarios/guessing_game_double_lock.json", "scenarios/auction_three_bids.json",
          "scenarios/crowdfunding_two_donors.json"}) {
        CAPTURE(file);
        ScenarioLoadResult first = load_scenario(test_util::read_repo_file(file));
        REQUIRE(first.ok());
        ScenarioLoadResult second = load_scenario(serialize_scenario(*first.scenario));
        REQUIRE(second.ok());
        CHECK(*first.scenario == *second.scenario);
    }
}
