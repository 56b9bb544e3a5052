#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "psc/automaton.hpp"
#include "psc/logic.hpp"
#include "psc/scenario.hpp"

namespace psc {

enum class EventKind { CallAccepted, CallRejected, TriggerFired, Transfer, Message };

struct SimEvent {
    std::uint64_t slot = 0;
    EventKind kind = EventKind::Message;
    std::string wallet;    // empty when the contract itself acts
    std::string endpoint;  // set for call/trigger events
    std::string detail;
};

struct ArmedTrigger {
    TriggerSpec spec;
    std::string endpoint;  // the interrupt endpoint to execute on fire
};

// A full ledger snapshot. Operations take a snapshot and return a new one,
// so runs can be forked and replayed freely; a single snapshot chain is
// single-threaded by contract.
struct LedgerState {
    std::uint64_t slot = 0;
    std::map<std::string, Lovelace> balances;
    Lovelace pot = 0;
    StateId machine_state = 1;
    StateContents contents;
    std::vector<ArmedTrigger> armed;
    SimMode mode = SimMode::Guarded;
    std::vector<StateContents> outputs;  // unguarded mode: every stored lock
    std::vector<SimEvent> log;
    std::map<std::string, RoleName> role_of;
    std::optional<std::string> owner_wallet;

    Lovelace balance_total() const;
    bool has_accepted(const std::string& endpoint) const;
    std::size_t count_events(EventKind kind) const;
};

// Immutable bundle the simulator operates against.
struct Simulation {
    const ProtocolDecl& decl;
    const Automaton& automaton;
    const HandlerTable& handlers;
};

// Fresh ledger at slot 0: machine at the initial state, default contents,
// empty pot, nothing armed. Throws std::invalid_argument when a declared
// role has no wallet, a role is unknown, a wallet is unknown, or a balance
// is negative.
LedgerState init_simulation(const Simulation& sim,
                            const std::map<std::string, Lovelace>& initial_balances,
                            const std::map<std::string, RoleName>& roles, SimMode mode);

// Dispatches one endpoint call. In guarded mode the automaton and the edge
// role gate the call; the handler then either rejects (state unchanged, one
// CallRejected event) or advances the machine, moving the funds delta
// between the caller and the pot and arming the interaction's triggers. In
// unguarded mode there is no gating: deposits pile up as contract outputs
// and a spend must validate against every stored output. Args must already
// match the endpoint signature; anything else throws std::invalid_argument.
LedgerState submit_call(const Simulation& sim, LedgerState st, const std::string& caller,
                        const std::string& endpoint, const std::vector<FieldValue>& args);

// Advances one slot at a time, evaluating armed triggers after each step:
// funds predicates first, then slot marks; the first trigger that holds
// executes its interrupt endpoint as the contract, pays any released funds
// to the owner wallet, and disarms everything.
LedgerState advance_slot(const Simulation& sim, LedgerState st, std::uint64_t n);

// Playground-style rendering: `=== Slot k ===` headers for every slot
// reached, `wallet: message` entries beneath. Byte-stable for identical
// histories.
std::string render_log(const LedgerState& st);

struct RunScenarioResult {
    std::optional<LedgerState> final_state;
    std::string log_text;
    std::vector<Diagnostic> diagnostics;

    bool ok() const { return final_state.has_value(); }
};

// Validates the scenario against the protocol (wallets, roles, endpoints,
// argument arity and types), then replays it action by action. Validation
// failures are reported as diagnostics before anything executes.
RunScenarioResult run_scenario(const ProtocolDecl& decl, const HandlerTable& handlers,
                               const Scenario& scenario,
                               std::optional<SimMode> mode_override = std::nullopt);

}  // namespace psc
