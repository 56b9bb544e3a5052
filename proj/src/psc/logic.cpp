#include "psc/logic.hpp"

#include <sstream>
#include <stdexcept>

#include "psc/sha256.hpp"

namespace psc {

FieldValue default_value(BaseType type) {
    switch (type) {
        case BaseType::String: return StrValue{};
        case BaseType::HashedString: return HashedValue{};
        case BaseType::PubKeyHash: return KeyValue{};
        case BaseType::Value: return FundsValue{};
        case BaseType::Token: return TokenValue{};
    }
    return StrValue{};
}

bool value_matches_type(const FieldValue& v, BaseType type) {
    switch (type) {
        case BaseType::String: return std::holds_alternative<StrValue>(v);
        case BaseType::HashedString: return std::holds_alternative<HashedValue>(v);
        case BaseType::PubKeyHash: return std::holds_alternative<KeyValue>(v);
        case BaseType::Value: return std::holds_alternative<FundsValue>(v);
        case BaseType::Token: return std::holds_alternative<TokenValue>(v);
    }
    return false;
}

namespace {

struct ValueRenderer {
    std::string operator()(const StrValue& v) const { return "\"" + v.value + "\""; }
    std::string operator()(const HashedValue& v) const {
        if (v.digest.empty()) return "HashedString -";
        return "HashedString " + v.digest.substr(0, 8) + "..";
    }
    std::string operator()(const KeyValue& v) const {
        return "PubKeyHash " + (v.wallet.empty() ? "-" : v.wallet);
    }
    std::string operator()(const FundsValue& v) const {
        return "Value " + std::to_string(v.lovelace);
    }
    std::string operator()(const TokenValue& v) const {
        return "Token " + (v.token.empty() ? "-" : v.token);
    }
};

}  // namespace

std::string render_value(const FieldValue& v) {
    return std::visit(ValueRenderer{}, v);
}

Lovelace StateContents::funds() const {
    if (values.empty()) throw std::logic_error("state contents carry no funds field");
    const auto* f = std::get_if<FundsValue>(&values.back());
    if (!f) throw std::logic_error("last state field is not the funds value");
    return f->lovelace;
}

void StateContents::set_funds(Lovelace amount) {
    if (values.empty()) throw std::logic_error("state contents carry no funds field");
    values.back() = FundsValue{amount};
}

StateContents default_contents(const ProtocolDecl& decl) {
    StateContents c;
    for (BaseType t : decl.fields) c.values.push_back(default_value(t));
    c.values.push_back(FundsValue{0});
    return c;
}

bool contents_match_signature(const StateContents& c, const ProtocolDecl& decl) {
    if (c.values.size() != decl.fields.size() + 1) return false;
    for (std::size_t i = 0; i < decl.fields.size(); ++i) {
        if (!value_matches_type(c.values[i], decl.fields[i])) return false;
    }
    return std::holds_alternative<FundsValue>(c.values.back());
}

std::string render_contents(const StateContents& c) {
    std::ostringstream out;
    out << "[";
    for (std::size_t i = 0; i < c.values.size(); ++i) {
        if (i > 0) out << ", ";
        out << render_value(c.values[i]);
    }
    out << "]";
    return out.str();
}

std::string trigger_hook_name(const std::string& endpoint, TriggerKind kind) {
    return endpoint + (kind == TriggerKind::Funds ? "FundTrigger" : "SlotTrigger");
}

// -- guessing-game logic ------------------------------------------------------

std::string hash_string(std::string_view s) {
    return sha256_hex(s);
}

HandlerResult gg_lock(const std::string& secret, Lovelace amount) {
    if (amount <= 0) {
        return HandlerResult::error("lock requires a positive value, got " +
                                    std::to_string(amount));
    }
    StateContents c;
    c.values = {HashedValue{hash_string(secret)}, FundsValue{amount}};
    return HandlerResult::new_state(std::move(c));
}

HandlerResult gg_guess(const std::string& word, const StateContents& current) {
    const auto* stored = current.values.empty()
                             ? nullptr
                             : std::get_if<HashedValue>(&current.values.front());
    if (!stored) {
        return HandlerResult::error("guess: no hashed secret in the machine state");
    }
    if (hash_string(word) != stored->digest) {
        return HandlerResult::error("guess \"" + word + "\" does not match the secret");
    }
    StateContents c = current;
    c.set_funds(0);
    return HandlerResult::new_state(std::move(c));
}

HandlerResult gg_close_game(const StateContents& current) {
    (void)current;
    StateContents c;
    c.values = {HashedValue{hash_string("Game over")}, FundsValue{0}};
    return HandlerResult::new_state(std::move(c));
}

// -- built-in packs -----------------------------------------------------------

namespace {

const StrValue* as_str(const std::vector<FieldValue>& args, std::size_t i) {
    return i < args.size() ? std::get_if<StrValue>(&args[i]) : nullptr;
}

const FundsValue* as_funds(const std::vector<FieldValue>& args, std::size_t i) {
    return i < args.size() ? std::get_if<FundsValue>(&args[i]) : nullptr;
}

Handler identity_handler() {
    return [](const std::vector<FieldValue>&, const CallContext& ctx) {
        return HandlerResult::new_state(ctx.current);
    };
}

HandlerTable guessing_game_pack() {
    HandlerTable table;
    table.handlers["lock"] = [](const std::vector<FieldValue>& args, const CallContext&) {
        const auto* secret = as_str(args, 0);
        const auto* amount = as_funds(args, 1);
        if (!secret || !amount) return HandlerResult::error("lock expects (String, Value)");
        return gg_lock(secret->value, amount->lovelace);
    };
    table.handlers["guess"] = [](const std::vector<FieldValue>& args, const CallContext& ctx) {
        const auto* word = as_str(args, 0);
        if (!word) return HandlerResult::error("guess expects (String)");
        HandlerResult r = gg_guess(word->value, ctx.current);
        if (r.ok()) ctx.note("Congratulations, you won!");
        return r;
    };
    table.handlers["closeGame"] = [](const std::vector<FieldValue>&, const CallContext& ctx) {
        return gg_close_game(ctx.current);
    };
    table.trigger_hooks[trigger_hook_name("lock", TriggerKind::Funds)] =
        [](const std::vector<FieldValue>&) -> TriggerSpec {
        return FundsPredicate{[](Lovelace funds) { return funds <= 0; }};
    };
    table.trigger_hooks[trigger_hook_name("lock", TriggerKind::Slot)] =
        [](const std::vector<FieldValue>&) -> TriggerSpec { return SlotAt{20}; };
    return table;
}

HandlerTable ping_pong_pack() {
    HandlerTable table;
    table.handlers["init"] = identity_handler();
    table.handlers["ping"] = identity_handler();
    table.handlers["pong"] = identity_handler();
    return table;
}

HandlerTable crowdfunding_pack() {
    HandlerTable table;
    table.handlers["init"] = identity_handler();
    table.handlers["continue"] = identity_handler();
    table.handlers["contribute"] = [](const std::vector<FieldValue>& args,
                                      const CallContext& ctx) {
        const auto* donation = as_funds(args, 0);
        if (!donation) return HandlerResult::error("contribute expects (Value)");
        if (donation->lovelace <= 0) {
            return HandlerResult::error("a contribution must be positive, got " +
                                        std::to_string(donation->lovelace));
        }
        StateContents c = ctx.current;
        c.set_funds(c.funds() + donation->lovelace);
        return HandlerResult::new_state(std::move(c));
    };
    table.handlers["closeCrowdfund"] = [](const std::vector<FieldValue>&,
                                          const CallContext& ctx) {
        StateContents c = ctx.current;
        c.set_funds(0);
        return HandlerResult::new_state(std::move(c));
    };
    return table;
}

HandlerTable auction_pack() {
    HandlerTable table;
    table.handlers["beginAuction"] = [](const std::vector<FieldValue>& args,
                                        const CallContext&) {
        const auto* token = args.empty() ? nullptr : std::get_if<TokenValue>(&args[0]);
        const auto* reserve = as_funds(args, 1);
        if (!token || !reserve) return HandlerResult::error("beginAuction expects (Token, Value)");
        if (reserve->lovelace < 0) {
            return HandlerResult::error("the reserve price cannot be negative");
        }
        StateContents c;
        c.values = {KeyValue{}, FundsValue{reserve->lovelace}, FundsValue{0}};
        return HandlerResult::new_state(std::move(c));
    };
    table.handlers["bid"] = [](const std::vector<FieldValue>& args, const CallContext& ctx) {
        const auto* amount = as_funds(args, 0);
        if (!amount) return HandlerResult::error("bid expects (Value)");
        if (ctx.current.values.size() != 3) {
            return HandlerResult::error("bid: malformed auction state");
        }
        const auto* highest = std::get_if<FundsValue>(&ctx.current.values[1]);
        if (!highest) return HandlerResult::error("bid: malformed auction state");
        if (amount->lovelace <= highest->lovelace) {
            return HandlerResult::error("bid of " + std::to_string(amount->lovelace) +
                                        " does not beat the current " +
                                        std::to_string(highest->lovelace));
        }
        StateContents c;
        c.values = {KeyValue{ctx.caller}, FundsValue{amount->lovelace},
                    FundsValue{amount->lovelace}};
        return HandlerResult::new_state(std::move(c));
    };
    table.handlers["endAuction"] = [](const std::vector<FieldValue>&, const CallContext& ctx) {
        StateContents c = ctx.current;
        if (c.values.empty()) return HandlerResult::error("endAuction: malformed auction state");
        const auto* winner = std::get_if<KeyValue>(&c.values[0]);
        if (winner && !winner->wallet.empty()) {
            ctx.note("Auction token goes to " + winner->wallet);
        } else {
            ctx.note("Auction closed with no bids");
        }
        c.set_funds(0);
        return HandlerResult::new_state(std::move(c));
    };
    table.trigger_hooks[trigger_hook_name("beginAuction", TriggerKind::Slot)] =
        [](const std::vector<FieldValue>&) -> TriggerSpec { return SlotAt{10}; };
    return table;
}

}  // namespace

HandlerTable register_pack(const std::string& name) {
    if (name == "guessing_game") return guessing_game_pack();
    if (name == "ping_pong") return ping_pong_pack();
    if (name == "crowdfunding") return crowdfunding_pack();
    if (name == "auction") return auction_pack();
    throw std::invalid_argument("unknown logic pack '" + name + "'");
}

std::vector<std::string> builtin_pack_names() {
    return {"auction", "crowdfunding", "guessing_game", "ping_pong"};
}

}  // namespace psc
