#include "psc/simulator.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace psc {

namespace {

std::string render_arg(const FieldValue& v) {
    if (const auto* s = std::get_if<StrValue>(&v)) return "\"" + s->value + "\"";
    if (const auto* h = std::get_if<HashedValue>(&v)) return "#" + h->digest.substr(0, 8);
    if (const auto* k = std::get_if<KeyValue>(&v)) return k->wallet;
    if (const auto* f = std::get_if<FundsValue>(&v)) return std::to_string(f->lovelace);
    return std::get<TokenValue>(v).token;
}

std::string render_call(const std::string& endpoint, const std::vector<FieldValue>& args) {
    std::string out = "EndpointCall " + endpoint + "(";
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (i > 0) out += ", ";
        out += render_arg(args[i]);
    }
    out += ")";
    return out;
}

void log_event(LedgerState& st, EventKind kind, std::string wallet, std::string endpoint,
               std::string detail) {
    st.log.push_back(SimEvent{st.slot, kind, std::move(wallet), std::move(endpoint),
                              std::move(detail)});
}

void log_notes(LedgerState& st, const std::string& wallet, const std::vector<std::string>& notes) {
    for (const std::string& note : notes) {
        log_event(st, EventKind::Message, wallet, "", note);
    }
}

LedgerState reject(LedgerState st, const std::string& caller, const std::string& endpoint,
                   std::string reason) {
    log_event(st, EventKind::CallRejected, caller, endpoint, std::move(reason));
    return st;
}

// Finds the declaration site of an endpoint, for trigger arming.
const Interaction* find_interaction(const ProtocolDecl& decl, const std::string& endpoint) {
    for (const Interaction* inter : collect_interactions(decl)) {
        if (inter->endpoint == endpoint) return inter;
    }
    return nullptr;
}

struct ArmOutcome {
    std::vector<ArmedTrigger> armed;
    std::optional<std::string> failure;
};

// Evaluates the interaction's trigger declarations. A conditional trigger
// carries its slot in the protocol text; a bare one asks the pack's hook.
ArmOutcome arm_triggers(const Simulation& sim, const LedgerState& st, const Interaction& inter,
                        const std::vector<FieldValue>& args) {
    ArmOutcome out;
    for (const TriggerDecl& decl : inter.triggers) {
        TriggerSpec spec;
        if (decl.slot_equals) {
            spec = SlotAt{static_cast<std::uint64_t>(*decl.slot_equals)};
        } else {
            std::string hook_name = trigger_hook_name(inter.endpoint, decl.kind);
            auto hook = sim.handlers.trigger_hooks.find(hook_name);
            if (hook == sim.handlers.trigger_hooks.end()) {
                out.failure = "No trigger hook " + hook_name + " is registered";
                return out;
            }
            spec = hook->second(args);
            bool kind_ok = (decl.kind == TriggerKind::Funds)
                               ? std::holds_alternative<FundsPredicate>(spec)
                               : std::holds_alternative<SlotAt>(spec);
            if (!kind_ok) {
                out.failure = "Trigger hook " + hook_name + " returned the wrong trigger kind";
                return out;
            }
        }
        if (const auto* at = std::get_if<SlotAt>(&spec)) {
            if (at->slot < st.slot) {
                out.failure = "Slot trigger for " + decl.target + " lies in the past (slot " +
                              std::to_string(at->slot) + ", current " +
                              std::to_string(st.slot) + ")";
                return out;
            }
        }
        out.armed.push_back(ArmedTrigger{std::move(spec), decl.target});
    }
    return out;
}

LedgerState submit_guarded(const Simulation& sim, LedgerState st, const std::string& caller,
                           const std::string& endpoint, const std::vector<FieldValue>& args) {
    const Transition* edge = find_transition(sim.automaton, st.machine_state, endpoint);
    if (!edge) {
        if (st.has_accepted(endpoint)) {
            return reject(std::move(st), caller, endpoint,
                          "Previous " + endpoint + " detected. This " + endpoint +
                              " produces no effect");
        }
        return reject(std::move(st), caller, endpoint,
                      "Endpoint " + endpoint + " is not available in state #" +
                          std::to_string(st.machine_state));
    }
    if (edge->label.kind == EdgeKind::AutoInterrupt) {
        return reject(std::move(st), caller, endpoint,
                      endpoint + " is executed automatically by the contract and cannot be "
                                 "called directly");
    }
    auto role = st.role_of.find(caller);
    if (role == st.role_of.end() || !(role->second == edge->label.role)) {
        std::string held = role == st.role_of.end() ? "no role" : "role " + role->second.name;
        return reject(std::move(st), caller, endpoint,
                      "Role mismatch: " + endpoint + " is reserved for " +
                          edge->label.role.name + ", " + caller + " has " + held);
    }

    std::vector<std::string> notes;
    auto handler = sim.handlers.handlers.find(endpoint);
    HandlerResult result =
        handler != sim.handlers.handlers.end()
            ? handler->second(args, CallContext{st.contents, caller, &notes})
            : HandlerResult::new_state(st.contents);  // unlisted endpoints route state through
    if (!result.ok()) {
        return reject(std::move(st), caller, endpoint, result.message());
    }
    const StateContents& next = result.contents();
    if (!contents_match_signature(next, sim.decl)) {
        return reject(std::move(st), caller, endpoint,
                      "Handler for " + endpoint + " returned ill-typed state contents");
    }
    if (next.funds() < 0) {
        return reject(std::move(st), caller, endpoint,
                      "Handler for " + endpoint + " returned negative funds");
    }
    Lovelace delta = next.funds() - st.contents.funds();
    if (delta > 0 && st.balances.at(caller) < delta) {
        return reject(std::move(st), caller, endpoint,
                      "Insufficient funds: " + caller + " holds " +
                          std::to_string(st.balances.at(caller)) + " Lovelace, needs " +
                          std::to_string(delta));
    }

    ArmOutcome arms;
    const Interaction* site = find_interaction(sim.decl, endpoint);
    if (site && !site->triggers.empty()) {
        arms = arm_triggers(sim, st, *site, args);
        if (arms.failure) {
            return reject(std::move(st), caller, endpoint, *arms.failure);
        }
    }

    // Commit.
    log_notes(st, caller, notes);
    if (delta > 0) {
        st.balances[caller] -= delta;
        st.pot += delta;
        log_event(st, EventKind::Transfer, caller, endpoint,
                  "Transfer " + std::to_string(delta) + " Lovelace to the contract");
    } else if (delta < 0) {
        st.pot += delta;
        st.balances[caller] -= delta;
        log_event(st, EventKind::Transfer, caller, endpoint,
                  "Contract pays " + std::to_string(-delta) + " Lovelace");
    }
    st.contents = next;
    st.machine_state = edge->target;
    for (ArmedTrigger& t : arms.armed) st.armed.push_back(std::move(t));
    log_event(st, EventKind::CallAccepted, caller, endpoint,
              "Successful transaction to state #" + std::to_string(st.machine_state) + " " +
                  render_contents(st.contents));
    return st;
}

LedgerState submit_unguarded(const Simulation& sim, LedgerState st, const std::string& caller,
                             const std::string& endpoint, const std::vector<FieldValue>& args) {
    auto handler_it = sim.handlers.handlers.find(endpoint);
    Handler handler = handler_it != sim.handlers.handlers.end()
                          ? handler_it->second
                          : Handler([](const std::vector<FieldValue>&, const CallContext& ctx) {
                                return HandlerResult::new_state(ctx.current);
                            });

    // Run against blank contents first: a result that stores a positive
    // value is a deposit, creating one more contract output. Anything else
    // is a spend attempt, which must validate against every stored output.
    StateContents blank = default_contents(sim.decl);
    std::vector<std::string> deposit_notes;
    HandlerResult fresh = handler(args, CallContext{blank, caller, &deposit_notes});
    if (fresh.ok() && contents_match_signature(fresh.contents(), sim.decl) &&
        fresh.contents().funds() > 0) {
        Lovelace amount = fresh.contents().funds();
        if (st.balances.at(caller) < amount) {
            return reject(std::move(st), caller, endpoint,
                          "Insufficient funds: " + caller + " holds " +
                              std::to_string(st.balances.at(caller)) + " Lovelace, needs " +
                              std::to_string(amount));
        }
        log_notes(st, caller, deposit_notes);
        st.balances[caller] -= amount;
        st.pot += amount;
        st.outputs.push_back(fresh.contents());
        log_event(st, EventKind::Transfer, caller, endpoint,
                  "Transfer " + std::to_string(amount) + " Lovelace to the contract");
        log_event(st, EventKind::CallAccepted, caller, endpoint,
                  "Transaction stored output " + std::to_string(st.outputs.size()) + ": " +
                      render_contents(fresh.contents()));
        return st;
    }

    if (st.outputs.empty()) {
        return reject(std::move(st), caller, endpoint,
                      "Validation failed: the contract holds no outputs to spend");
    }
    std::vector<StateContents> next_outputs;
    std::vector<std::string> spend_notes;
    Lovelace released = 0;
    for (std::size_t i = 0; i < st.outputs.size(); ++i) {
        std::vector<std::string> notes;
        HandlerResult r = handler(args, CallContext{st.outputs[i], caller, &notes});
        if (!r.ok()) {
            return reject(std::move(st), caller, endpoint,
                          "Validation failed against stored output " + std::to_string(i + 1) +
                              " of " + std::to_string(st.outputs.size()) + ": " + r.message());
        }
        if (!contents_match_signature(r.contents(), sim.decl) || r.contents().funds() < 0 ||
            r.contents().funds() > st.outputs[i].funds()) {
            return reject(std::move(st), caller, endpoint,
                          "Validation failed: handler result for output " +
                              std::to_string(i + 1) + " is not a spend");
        }
        released += st.outputs[i].funds() - r.contents().funds();
        next_outputs.push_back(r.contents());
        if (i == 0) spend_notes = std::move(notes);
    }
    log_notes(st, caller, spend_notes);
    st.outputs = std::move(next_outputs);
    if (released > 0) {
        st.pot -= released;
        st.balances[caller] += released;
        log_event(st, EventKind::Transfer, caller, endpoint,
                  "Contract pays " + std::to_string(released) + " Lovelace");
    }
    log_event(st, EventKind::CallAccepted, caller, endpoint,
              "Transaction validated against " + std::to_string(st.outputs.size()) +
                  " stored output(s)");
    return st;
}

// Executes a fired trigger's interrupt endpoint as the contract. Callers
// guarantee the automatic edge exists at the current state.
LedgerState fire_trigger(const Simulation& sim, LedgerState st, std::size_t armed_index,
                         const std::string& why) {
    std::string endpoint = st.armed[armed_index].endpoint;
    st.armed.clear();

    const Transition* edge = find_transition(sim.automaton, st.machine_state, endpoint);
    if (!edge || edge->label.kind != EdgeKind::AutoInterrupt) {
        throw std::logic_error("trigger fired for " + endpoint +
                               " but no automatic edge leaves state #" +
                               std::to_string(st.machine_state));
    }
    std::string owner = st.owner_wallet.value_or("");
    log_event(st, EventKind::TriggerFired, owner, endpoint, why);

    std::vector<std::string> notes;
    auto handler = sim.handlers.handlers.find(endpoint);
    HandlerResult result =
        handler != sim.handlers.handlers.end()
            ? handler->second({}, CallContext{st.contents, "", &notes})
            : HandlerResult::new_state(st.contents);
    if (!result.ok()) {
        log_event(st, EventKind::Message, owner, endpoint,
                  "Trigger handler for " + endpoint + " failed: " + result.message());
        return st;
    }
    const StateContents& next = result.contents();
    if (!contents_match_signature(next, sim.decl) || next.funds() < 0 ||
        next.funds() > st.contents.funds()) {
        log_event(st, EventKind::Message, owner, endpoint,
                  "Trigger handler for " + endpoint + " returned an invalid state; ignored");
        return st;
    }
    Lovelace released = st.contents.funds() - next.funds();
    log_notes(st, owner, notes);
    if (released > 0) {
        if (owner.empty()) {
            throw std::logic_error("trigger released funds but no owner wallet exists");
        }
        st.pot -= released;
        st.balances[owner] += released;
        log_event(st, EventKind::Transfer, owner, endpoint,
                  "Contract pays " + std::to_string(released) + " Lovelace");
    }
    st.contents = next;
    st.machine_state = edge->target;
    log_event(st, EventKind::Message, owner, endpoint,
              "Successful transaction to state #" + std::to_string(st.machine_state) + " " +
                  render_contents(st.contents));
    return st;
}

}  // namespace

Lovelace LedgerState::balance_total() const {
    Lovelace total = 0;
    for (const auto& [wallet, amount] : balances) {
        (void)wallet;
        total += amount;
    }
    return total;
}

bool LedgerState::has_accepted(const std::string& endpoint) const {
    for (const SimEvent& e : log) {
        if (e.kind == EventKind::CallAccepted && e.endpoint == endpoint) return true;
    }
    return false;
}

std::size_t LedgerState::count_events(EventKind kind) const {
    std::size_t n = 0;
    for (const SimEvent& e : log) {
        if (e.kind == kind) ++n;
    }
    return n;
}

LedgerState init_simulation(const Simulation& sim,
                            const std::map<std::string, Lovelace>& initial_balances,
                            const std::map<std::string, RoleName>& roles, SimMode mode) {
    for (const auto& [wallet, amount] : initial_balances) {
        if (amount < 0) {
            throw std::invalid_argument("wallet " + wallet + " starts with a negative balance");
        }
    }
    for (const auto& [wallet, role] : roles) {
        if (initial_balances.count(wallet) == 0) {
            throw std::invalid_argument("wallet " + wallet + " has a role but no balance entry");
        }
        if (std::find(sim.decl.roles.begin(), sim.decl.roles.end(), role) ==
            sim.decl.roles.end()) {
            throw std::invalid_argument("role " + role.name + " is not declared by protocol " +
                                        sim.decl.name);
        }
    }
    for (const RoleName& role : sim.decl.roles) {
        bool assigned = false;
        for (const auto& [wallet, r] : roles) {
            (void)wallet;
            if (r == role) {
                assigned = true;
                break;
            }
        }
        if (!assigned) {
            throw std::invalid_argument("role " + role.name + " is not assigned to any wallet");
        }
    }

    LedgerState st;
    st.slot = 0;
    st.balances = initial_balances;
    st.machine_state = sim.automaton.initial;
    st.contents = default_contents(sim.decl);
    st.mode = mode;
    st.role_of = roles;
    if (!sim.decl.roles.empty()) {
        // Deterministic owner: the first wallet (by name) holding the first
        // declared role. Trigger-released funds are paid out to it.
        const RoleName& first_role = sim.decl.roles.front();
        for (const auto& [wallet, role] : roles) {
            if (role == first_role) {
                st.owner_wallet = wallet;
                break;
            }
        }
    }
    return st;
}

LedgerState submit_call(const Simulation& sim, LedgerState st, const std::string& caller,
                        const std::string& endpoint, const std::vector<FieldValue>& args) {
    if (st.balances.count(caller) == 0) {
        throw std::invalid_argument("unknown wallet " + caller);
    }
    const EndpointInfo* info = nullptr;
    std::vector<EndpointInfo> endpoints = collect_endpoints(sim.decl);
    for (const EndpointInfo& e : endpoints) {
        if (e.endpoint == endpoint) {
            info = &e;
            break;
        }
    }
    if (!info) {
        throw std::invalid_argument("unknown endpoint " + endpoint);
    }
    if (args.size() != info->params.size()) {
        throw std::invalid_argument("endpoint " + endpoint + " takes " +
                                    std::to_string(info->params.size()) + " argument(s), got " +
                                    std::to_string(args.size()));
    }
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (!value_matches_type(args[i], info->params[i])) {
            throw std::invalid_argument("argument " + std::to_string(i + 1) + " of " + endpoint +
                                        " does not match its declared type " +
                                        to_keyword(info->params[i]));
        }
    }

    log_event(st, EventKind::Message, caller, endpoint, render_call(endpoint, args));
    if (st.mode == SimMode::Guarded) {
        return submit_guarded(sim, std::move(st), caller, endpoint, args);
    }
    return submit_unguarded(sim, std::move(st), caller, endpoint, args);
}

LedgerState advance_slot(const Simulation& sim, LedgerState st, std::uint64_t n) {
    if (n < 1) throw std::invalid_argument("advance_slot needs n >= 1");
    for (std::uint64_t step = 0; step < n; ++step) {
        ++st.slot;
        if (st.mode != SimMode::Guarded || st.armed.empty()) continue;

        // A trigger is live only while its interrupt edge leaves the current
        // state, i.e. while the machine sits inside the do region.
        auto live = [&](const ArmedTrigger& t) {
            const Transition* edge = find_transition(sim.automaton, st.machine_state, t.endpoint);
            return edge != nullptr && edge->label.kind == EdgeKind::AutoInterrupt;
        };

        std::optional<std::size_t> hit;
        std::string why;
        for (std::size_t i = 0; i < st.armed.size() && !hit; ++i) {
            const auto* predicate = std::get_if<FundsPredicate>(&st.armed[i].spec);
            if (predicate && predicate->holds(st.pot) && live(st.armed[i])) {
                hit = i;
                why = "Funds trigger fired: " + st.armed[i].endpoint;
            }
        }
        for (std::size_t i = 0; i < st.armed.size() && !hit; ++i) {
            const auto* at = std::get_if<SlotAt>(&st.armed[i].spec);
            if (at && at->slot == st.slot && live(st.armed[i])) {
                hit = i;
                why = "Slot trigger fired at slot " + std::to_string(st.slot) + ": " +
                      st.armed[i].endpoint;
            }
        }
        if (hit) {
            st = fire_trigger(sim, std::move(st), *hit, why);
        }
    }
    return st;
}

std::string render_log(const LedgerState& st) {
    std::ostringstream out;
    std::size_t next = 0;
    for (std::uint64_t slot = 0; slot <= st.slot; ++slot) {
        out << "=== Slot " << slot << " ===\n";
        while (next < st.log.size() && st.log[next].slot == slot) {
            const SimEvent& e = st.log[next];
            out << (e.wallet.empty() ? std::string("contract") : e.wallet) << ": " << e.detail
                << "\n";
            ++next;
        }
    }
    return out.str();
}

namespace {

std::optional<FieldValue> coerce_literal(const ScenarioLiteral& lit, BaseType type) {
    if (const auto* text = std::get_if<std::string>(&lit)) {
        switch (type) {
            case BaseType::String: return FieldValue{StrValue{*text}};
            case BaseType::HashedString: return FieldValue{HashedValue{*text}};
            case BaseType::PubKeyHash: return FieldValue{KeyValue{*text}};
            case BaseType::Token: return FieldValue{TokenValue{*text}};
            case BaseType::Value: return std::nullopt;
        }
        return std::nullopt;
    }
    std::int64_t number = std::get<std::int64_t>(lit);
    if (type == BaseType::Value) return FieldValue{FundsValue{number}};
    return std::nullopt;
}

}  // namespace

RunScenarioResult run_scenario(const ProtocolDecl& decl, const HandlerTable& handlers,
                               const Scenario& scenario, std::optional<SimMode> mode_override) {
    RunScenarioResult result;
    std::vector<Diagnostic> problems = validate(decl);
    if (!problems.empty()) {
        result.diagnostics = std::move(problems);
        return result;
    }
    Automaton automaton = build_automaton(decl);

    auto error = [&result](std::string code, std::string message) {
        result.diagnostics.push_back(Diagnostic{std::move(code), std::move(message), {}});
    };

    // Static checks first, so a bad scenario never half-executes.
    std::vector<EndpointInfo> endpoints = collect_endpoints(decl);
    std::map<std::string, RoleName> roles;
    for (const auto& [wallet, role] : scenario.roles) {
        roles.emplace(wallet, RoleName{role});
        if (std::find(decl.roles.begin(), decl.roles.end(), RoleName{role}) ==
            decl.roles.end()) {
            error("scenario-unknown-role",
                  "wallet " + wallet + " is assigned role " + role +
                      ", which protocol " + decl.name + " does not declare");
        }
    }
    for (const RoleName& role : decl.roles) {
        bool assigned = false;
        for (const auto& [wallet, r] : scenario.roles) {
            (void)wallet;
            if (r == role.name) assigned = true;
        }
        if (!assigned) {
            error("scenario-unassigned-role",
                  "role " + role.name + " of protocol " + decl.name +
                      " is not assigned to any wallet");
        }
    }

    std::vector<std::vector<FieldValue>> coerced_args(scenario.actions.size());
    for (std::size_t i = 0; i < scenario.actions.size(); ++i) {
        const auto* call = std::get_if<CallAction>(&scenario.actions[i]);
        if (!call) continue;
        std::string where = "/actions/" + std::to_string(i);
        const EndpointInfo* info = nullptr;
        for (const EndpointInfo& e : endpoints) {
            if (e.endpoint == call->endpoint) info = &e;
        }
        if (!info) {
            error("scenario-unknown-endpoint",
                  where + ": protocol " + decl.name + " has no endpoint '" + call->endpoint +
                      "'");
            continue;
        }
        if (call->args.size() != info->params.size()) {
            error("scenario-bad-arity",
                  where + ": " + call->endpoint + " takes " +
                      std::to_string(info->params.size()) + " argument(s), got " +
                      std::to_string(call->args.size()));
            continue;
        }
        for (std::size_t j = 0; j < call->args.size(); ++j) {
            std::optional<FieldValue> value = coerce_literal(call->args[j], info->params[j]);
            if (!value) {
                error("scenario-bad-arg-type",
                      where + "/args/" + std::to_string(j) + ": expected a " +
                          to_keyword(info->params[j]) + " literal");
                continue;
            }
            coerced_args[i].push_back(std::move(*value));
        }
    }
    if (!result.diagnostics.empty()) return result;

    SimMode mode = mode_override.value_or(scenario.mode);
    Simulation sim{decl, automaton, handlers};
    LedgerState st;
    try {
        st = init_simulation(sim, scenario.initial_balances, roles, mode);
        for (std::size_t i = 0; i < scenario.actions.size(); ++i) {
            if (const auto* wait = std::get_if<WaitAction>(&scenario.actions[i])) {
                st = advance_slot(sim, std::move(st), wait->slots);
            } else {
                const auto& call = std::get<CallAction>(scenario.actions[i]);
                st = submit_call(sim, std::move(st), call.wallet, call.endpoint,
                                 coerced_args[i]);
            }
        }
    } catch (const std::exception& e) {
        error("scenario-execution", e.what());
        return result;
    }
    result.log_text = render_log(st);
    result.final_state = std::move(st);
    return result;
}

}  // namespace psc
