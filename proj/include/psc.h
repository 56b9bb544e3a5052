/*
 * psc: protocol compiler and ledger simulator, C API.
 *
 * The library parses protocol descriptions, derives the finite state machine
 * that guards endpoint calls, emits handler stubs and a contract manifest,
 * and replays scenario files against a slot-based ledger simulation.
 *
 * Every object handed out is an opaque handle owned by the caller; release
 * it with the matching *_free function. Functions returning psc_status never
 * throw or abort: PSC_OK means the out-parameters are set, anything else
 * means they are NULL except where noted. Strings returned through
 * psc_..._text accessors stay valid until their owning handle is freed.
 */

#ifndef PSC_H
#define PSC_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(PSC_BUILD_SHARED)
#    define PSC_API __declspec(dllexport)
#  else
#    define PSC_API __declspec(dllimport)
#  endif
#else
#  define PSC_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum psc_status {
    PSC_OK = 0,
    /* The input was processed but is invalid; details in the diagnostics
     * handle returned alongside. */
    PSC_ERR_DIAGNOSTICS = 1,
    /* A NULL handle, NULL out-parameter or otherwise unusable argument. */
    PSC_ERR_INVALID_ARGUMENT = 2,
    /* An unknown logic pack name. */
    PSC_ERR_UNKNOWN_PACK = 3,
    /* An internal failure (out of memory, unexpected state). */
    PSC_ERR_INTERNAL = 4
} psc_status;

typedef struct psc_protocol psc_protocol;     /* parsed + validated protocol */
typedef struct psc_diagnostics psc_diagnostics;
typedef struct psc_scenario psc_scenario;
typedef struct psc_sim_result psc_sim_result;

PSC_API const char* psc_version(void);

/* Frees a string returned by a psc_* function documented to transfer
 * ownership. NULL is fine. */
PSC_API void psc_string_free(char* text);

/* -- diagnostics ---------------------------------------------------------- */

PSC_API size_t psc_diagnostics_count(const psc_diagnostics* diags);
/* Renders entry `index` as "file:line:col: code: message" using the origin
 * name given at parse time. Returns NULL if index is out of range. Caller
 * frees with psc_string_free. */
PSC_API char* psc_diagnostics_render(const psc_diagnostics* diags, size_t index);
PSC_API void psc_diagnostics_free(psc_diagnostics* diags);

/* -- protocol compilation -------------------------------------------------- */

/* Tokenizes, parses and validates `source`, then builds the automaton.
 * `origin` names the source (file path) for diagnostic rendering; NULL means
 * "<input>". On PSC_OK *out_protocol is set; on PSC_ERR_DIAGNOSTICS
 * *out_diags is set when out_diags is non-NULL. */
PSC_API psc_status psc_protocol_parse(const char* source, const char* origin,
                                      psc_protocol** out_protocol,
                                      psc_diagnostics** out_diags);
PSC_API void psc_protocol_free(psc_protocol* protocol);

PSC_API const char* psc_protocol_name(const psc_protocol* protocol);
PSC_API uint32_t psc_protocol_state_count(const psc_protocol* protocol);

/* Graphviz text for the protocol's automaton. Caller frees. */
PSC_API char* psc_protocol_dot(const psc_protocol* protocol);
/* Line-oriented automaton dump (docs/formats.md). Caller frees. */
PSC_API char* psc_protocol_automaton_dump(const psc_protocol* protocol);
/* Contract manifest text (docs/formats.md). Caller frees. */
PSC_API char* psc_protocol_manifest(const psc_protocol* protocol);
/* Business-logic stub source (docs/formats.md). Caller frees. */
PSC_API char* psc_protocol_stubs(const psc_protocol* protocol);

/* -- scenarios and simulation ---------------------------------------------- */

PSC_API psc_status psc_scenario_parse(const char* json_text, const char* origin,
                                      psc_scenario** out_scenario,
                                      psc_diagnostics** out_diags);
PSC_API void psc_scenario_free(psc_scenario* scenario);

/* Replays `scenario` against `protocol`. `pack` picks the built-in business
 * logic (guessing_game, ping_pong, crowdfunding, auction); NULL runs every
 * endpoint as a pure state pass-through. `mode_override` is "guarded",
 * "unguarded" or NULL to keep the scenario's own mode. Scenario/protocol
 * mismatches come back as PSC_ERR_DIAGNOSTICS. */
PSC_API psc_status psc_simulate(const psc_protocol* protocol, const psc_scenario* scenario,
                                const char* pack, const char* mode_override,
                                psc_sim_result** out_result, psc_diagnostics** out_diags);
PSC_API void psc_sim_result_free(psc_sim_result* result);

/* The full simulation log ("=== Slot k ===" headers, "wallet: message"
 * entries). Owned by the result handle. */
PSC_API const char* psc_sim_result_log(const psc_sim_result* result);
PSC_API uint64_t psc_sim_result_final_slot(const psc_sim_result* result);
PSC_API int64_t psc_sim_result_pot(const psc_sim_result* result);
PSC_API size_t psc_sim_result_wallet_count(const psc_sim_result* result);
/* Wallets are indexed in name order. Returns NULL / 0 out of range. */
PSC_API const char* psc_sim_result_wallet_name(const psc_sim_result* result, size_t index);
PSC_API int64_t psc_sim_result_wallet_balance(const psc_sim_result* result, size_t index);

#ifdef __cplusplus
}
#endif

#endif /* PSC_H */
