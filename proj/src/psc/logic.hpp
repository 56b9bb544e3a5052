#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "psc/ast.hpp"

namespace psc {

using Lovelace = std::int64_t;

// -- values stored in the machine state --------------------------------------

struct StrValue {
    std::string value;
    friend bool operator==(const StrValue&, const StrValue&) = default;
};
struct HashedValue {
    std::string digest;
    friend bool operator==(const HashedValue&, const HashedValue&) = default;
};
struct KeyValue {
    std::string wallet;
    friend bool operator==(const KeyValue&, const KeyValue&) = default;
};
struct FundsValue {
    Lovelace lovelace = 0;
    friend bool operator==(const FundsValue&, const FundsValue&) = default;
};
struct TokenValue {
    std::string token;
    friend bool operator==(const TokenValue&, const TokenValue&) = default;
};

using FieldValue = std::variant<StrValue, HashedValue, KeyValue, FundsValue, TokenValue>;

FieldValue default_value(BaseType type);
bool value_matches_type(const FieldValue& v, BaseType type);
std::string render_value(const FieldValue& v);

// The tuple a contract stores: the declared fields followed by the implicit
// funds field, which tracks the value held by the contract.
struct StateContents {
    std::vector<FieldValue> values;

    Lovelace funds() const;
    void set_funds(Lovelace amount);

    friend bool operator==(const StateContents&, const StateContents&) = default;
};

StateContents default_contents(const ProtocolDecl& decl);
bool contents_match_signature(const StateContents& c, const ProtocolDecl& decl);
std::string render_contents(const StateContents& c);

// -- handler contract ---------------------------------------------------------

// A business-logic handler yields either the contents for the next state or
// an error; on error no transition is performed.
class HandlerResult {
  public:
    static HandlerResult new_state(StateContents contents) {
        return HandlerResult(std::move(contents));
    }
    static HandlerResult error(std::string message) { return HandlerResult(Err{std::move(message)}); }

    bool ok() const { return std::holds_alternative<StateContents>(value_); }
    const StateContents& contents() const { return std::get<StateContents>(value_); }
    const std::string& message() const { return std::get<Err>(value_).message; }

  private:
    struct Err {
        std::string message;
    };
    explicit HandlerResult(StateContents c) : value_(std::move(c)) {}
    explicit HandlerResult(Err e) : value_(std::move(e)) {}

    std::variant<StateContents, Err> value_;
};

// A trigger condition armed alongside an interaction: either a predicate
// over the contract's funds or an absolute slot number.
struct FundsPredicate {
    std::function<bool(Lovelace)> holds;
};
struct SlotAt {
    std::uint64_t slot = 0;
};
using TriggerSpec = std::variant<FundsPredicate, SlotAt>;

// What the simulator passes to a handler besides the raw arguments: the
// stored contents, the calling wallet (empty for automatic interactions) and
// a sink for human-readable notes that end up in the simulation log.
struct CallContext {
    const StateContents& current;
    std::string caller;
    std::vector<std::string>* notes = nullptr;

    void note(std::string text) const {
        if (notes) notes->push_back(std::move(text));
    }
};

using Handler =
    std::function<HandlerResult(const std::vector<FieldValue>& args, const CallContext& ctx)>;
using TriggerHook = std::function<TriggerSpec(const std::vector<FieldValue>& args)>;

// Endpoint handlers plus trigger hooks, keyed by the hook naming scheme
// <endpoint>FundTrigger / <endpoint>SlotTrigger. This is the plugin surface:
// build one of these for your own protocol and hand it to the simulator.
struct HandlerTable {
    std::map<std::string, Handler> handlers;
    std::map<std::string, TriggerHook> trigger_hooks;
};

std::string trigger_hook_name(const std::string& endpoint, TriggerKind kind);

// Returns the built-in logic pack: guessing_game, ping_pong, crowdfunding or
// auction. Throws std::invalid_argument for any other name.
HandlerTable register_pack(const std::string& name);

std::vector<std::string> builtin_pack_names();

// -- guessing-game logic ------------------------------------------------------

// Lowercase SHA-256 hex digest; secrets are stored hashed, never in clear.
std::string hash_string(std::string_view s);

// Locks a secret and a positive prize; a non-positive prize is an error.
HandlerResult gg_lock(const std::string& secret, Lovelace amount);

// Pays out (funds drop to zero) when the guess hashes to the stored digest.
HandlerResult gg_guess(const std::string& word, const StateContents& current);

// Final state: the digest of "Game over" and zero funds.
HandlerResult gg_close_game(const StateContents& current);

}  // namespace psc
