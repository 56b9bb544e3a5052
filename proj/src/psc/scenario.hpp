#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "psc/source_span.hpp"

namespace psc {

enum class SimMode { Guarded, Unguarded };

// Literal argument as written in a scenario file; coerced against the
// endpoint's parameter types before execution.
using ScenarioLiteral = std::variant<std::string, std::int64_t>;

struct CallAction {
    std::string wallet;
    std::string endpoint;
    std::vector<ScenarioLiteral> args;

    friend bool operator==(const CallAction&, const CallAction&) = default;
};

struct WaitAction {
    std::uint64_t slots = 1;

    friend bool operator==(const WaitAction&, const WaitAction&) = default;
};

using Action = std::variant<CallAction, WaitAction>;

// A complete simulation input: who holds what, who plays which role, and the
// ordered endpoint calls and slot waits to replay.
struct Scenario {
    std::map<std::string, std::int64_t> initial_balances;
    std::map<std::string, std::string> roles;
    SimMode mode = SimMode::Guarded;
    std::vector<Action> actions;

    friend bool operator==(const Scenario&, const Scenario&) = default;
};

struct ScenarioLoadResult {
    std::optional<Scenario> scenario;
    std::vector<Diagnostic> diagnostics;

    bool ok() const { return scenario.has_value(); }
};

// Parses the JSON scenario format (docs/scenario-schema.md). Never throws:
// malformed input comes back as diagnostics. Parse errors carry line/column;
// schema errors name the offending JSON path in the message.
ScenarioLoadResult load_scenario(const std::string& json_text);

// Canonical JSON rendering; load_scenario(serialize_scenario(s)) == s.
std::string serialize_scenario(const Scenario& s);

}  // namespace psc
