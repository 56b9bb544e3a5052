#include "psc.h"

#include <cstring>
#include <exception>
#include <new>
#include <stdexcept>
#include <string>
#include <vector>

#include "psc/automaton.hpp"
#include "psc/codegen.hpp"
#include "psc/parser.hpp"
#include "psc/simulator.hpp"

struct psc_diagnostics {
    std::vector<psc::Diagnostic> items;
    std::string origin;
};

struct psc_protocol {
    psc::ProtocolDecl decl;
    psc::Automaton automaton;
};

struct psc_scenario {
    psc::Scenario scenario;
    std::string origin;
};

struct psc_sim_result {
    std::string log;
    std::uint64_t final_slot = 0;
    std::int64_t pot = 0;
    std::vector<std::pair<std::string, std::int64_t>> balances;  // name order
};

namespace {

char* dup_string(const std::string& text) {
    char* out = static_cast<char*>(::operator new(text.size() + 1, std::nothrow));
    if (!out) return nullptr;
    std::memcpy(out, text.c_str(), text.size() + 1);
    return out;
}

psc_diagnostics* make_diagnostics(std::vector<psc::Diagnostic> items, const char* origin) {
    auto* out = new (std::nothrow) psc_diagnostics;
    if (!out) return nullptr;
    out->items = std::move(items);
    out->origin = origin ? origin : "<input>";
    return out;
}

}  // namespace

extern "C" {

const char* psc_version(void) { return "0.1.0"; }

void psc_string_free(char* text) { ::operator delete(text); }

size_t psc_diagnostics_count(const psc_diagnostics* diags) {
    return diags ? diags->items.size() : 0;
}

char* psc_diagnostics_render(const psc_diagnostics* diags, size_t index) {
    if (!diags || index >= diags->items.size()) return nullptr;
    return dup_string(psc::render_diagnostic(diags->items[index], diags->origin));
}

void psc_diagnostics_free(psc_diagnostics* diags) { delete diags; }

psc_status psc_protocol_parse(const char* source, const char* origin,
                              psc_protocol** out_protocol, psc_diagnostics** out_diags) {
    if (out_diags) *out_diags = nullptr;
    if (!source || !out_protocol) return PSC_ERR_INVALID_ARGUMENT;
    *out_protocol = nullptr;
    try {
        psc::ParseResult parsed = psc::parse_protocol(source);
        std::vector<psc::Diagnostic> problems = std::move(parsed.diagnostics);
        if (parsed.decl) {
            std::vector<psc::Diagnostic> invalid = psc::validate(*parsed.decl);
            problems.insert(problems.end(), invalid.begin(), invalid.end());
        }
        if (!problems.empty()) {
            if (out_diags) *out_diags = make_diagnostics(std::move(problems), origin);
            return PSC_ERR_DIAGNOSTICS;
        }
        auto* handle = new psc_protocol;
        handle->decl = std::move(*parsed.decl);
        handle->automaton = psc::build_automaton(handle->decl);
        *out_protocol = handle;
        return PSC_OK;
    } catch (const std::exception&) {
        return PSC_ERR_INTERNAL;
    }
}

void psc_protocol_free(psc_protocol* protocol) { delete protocol; }

const char* psc_protocol_name(const psc_protocol* protocol) {
    return protocol ? protocol->decl.name.c_str() : nullptr;
}

uint32_t psc_protocol_state_count(const psc_protocol* protocol) {
    return protocol ? protocol->automaton.state_count : 0;
}

char* psc_protocol_dot(const psc_protocol* protocol) {
    if (!protocol) return nullptr;
    return dup_string(psc::to_dot(protocol->automaton));
}

char* psc_protocol_automaton_dump(const psc_protocol* protocol) {
    if (!protocol) return nullptr;
    return dup_string(psc::dump_automaton(protocol->automaton));
}

char* psc_protocol_manifest(const psc_protocol* protocol) {
    if (!protocol) return nullptr;
    return dup_string(psc::emit_manifest(protocol->decl, protocol->automaton));
}

char* psc_protocol_stubs(const psc_protocol* protocol) {
    if (!protocol) return nullptr;
    return dup_string(psc::emit_stubs(protocol->decl));
}

psc_status psc_scenario_parse(const char* json_text, const char* origin,
                              psc_scenario** out_scenario, psc_diagnostics** out_diags) {
    if (out_diags) *out_diags = nullptr;
    if (!json_text || !out_scenario) return PSC_ERR_INVALID_ARGUMENT;
    *out_scenario = nullptr;
    try {
        psc::ScenarioLoadResult loaded = psc::load_scenario(json_text);
        if (!loaded.ok()) {
            if (out_diags) *out_diags = make_diagnostics(std::move(loaded.diagnostics), origin);
            return PSC_ERR_DIAGNOSTICS;
        }
        *out_scenario =
            new psc_scenario{std::move(*loaded.scenario), origin ? origin : "<scenario>"};
        return PSC_OK;
    } catch (const std::exception&) {
        return PSC_ERR_INTERNAL;
    }
}

void psc_scenario_free(psc_scenario* scenario) { delete scenario; }

psc_status psc_simulate(const psc_protocol* protocol, const psc_scenario* scenario,
                        const char* pack, const char* mode_override,
                        psc_sim_result** out_result, psc_diagnostics** out_diags) {
    if (out_diags) *out_diags = nullptr;
    if (!protocol || !scenario || !out_result) return PSC_ERR_INVALID_ARGUMENT;
    *out_result = nullptr;

    std::optional<psc::SimMode> mode;
    if (mode_override) {
        std::string text = mode_override;
        if (text == "guarded") {
            mode = psc::SimMode::Guarded;
        } else if (text == "unguarded") {
            mode = psc::SimMode::Unguarded;
        } else {
            return PSC_ERR_INVALID_ARGUMENT;
        }
    }
    try {
        psc::HandlerTable handlers;
        if (pack) handlers = psc::register_pack(pack);
        psc::RunScenarioResult run =
            psc::run_scenario(protocol->decl, handlers, scenario->scenario, mode);
        if (!run.ok()) {
            if (out_diags) {
                *out_diags =
                    make_diagnostics(std::move(run.diagnostics), scenario->origin.c_str());
            }
            return PSC_ERR_DIAGNOSTICS;
        }
        auto* result = new psc_sim_result;
        result->log = std::move(run.log_text);
        result->final_slot = run.final_state->slot;
        result->pot = run.final_state->pot;
        for (const auto& [wallet, amount] : run.final_state->balances) {
            result->balances.emplace_back(wallet, amount);
        }
        *out_result = result;
        return PSC_OK;
    } catch (const std::invalid_argument&) {
        return PSC_ERR_UNKNOWN_PACK;
    } catch (const std::exception&) {
        return PSC_ERR_INTERNAL;
    }
}

void psc_sim_result_free(psc_sim_result* result) { delete result; }

const char* psc_sim_result_log(const psc_sim_result* result) {
    return result ? result->log.c_str() : nullptr;
}

uint64_t psc_sim_result_final_slot(const psc_sim_result* result) {
    return result ? result->final_slot : 0;
}

int64_t psc_sim_result_pot(const psc_sim_result* result) {
    return result ? result->pot : 0;
}

size_t psc_sim_result_wallet_count(const psc_sim_result* result) {
    return result ? result->balances.size() : 0;
}

const char* psc_sim_result_wallet_name(const psc_sim_result* result, size_t index) {
    if (!result || index >= result->balances.size()) return nullptr;
    return result->balances[index].first.c_str();
}

int64_t psc_sim_result_wallet_balance(const psc_sim_result* result, size_t index) {
    if (!result || index >= result->balances.size()) return 0;
    return result->balances[index].second;
}

}  // extern "C"
