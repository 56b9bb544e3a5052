#include "psc/scenario.hpp"

#include <json.hpp>

namespace psc {

namespace {

using nlohmann::json;

class Loader {
  public:
    explicit Loader(const std::string& text) : text_(text) {}

    ScenarioLoadResult run() {
        json root;
        try {
            root = json::parse(text_);
        } catch (const json::parse_error& e) {
            error("scenario-json", e.what(), span_at(e.byte));
            return finish();
        }
        if (!root.is_object()) {
            error("scenario-schema", "the scenario must be a JSON object", {});
            return finish();
        }
        for (const auto& [key, value] : root.items()) {
            if (key == "initial_balances") {
                load_balances(value);
            } else if (key == "roles") {
                load_roles(value);
            } else if (key == "mode") {
                load_mode(value);
            } else if (key == "actions") {
                load_actions(value);
            } else {
                error("scenario-unknown-key", "unknown scenario key '" + key + "'", {});
            }
        }
        for (const char* required : {"initial_balances", "roles", "actions"}) {
            if (!root.contains(required)) {
                error("scenario-schema",
                      std::string("missing required scenario key '") + required + "'", {});
            }
        }
        check_wallet_references();
        return finish();
    }

  private:
    void error(std::string code, std::string message, SourceSpan span) {
        diags_.push_back(Diagnostic{std::move(code), std::move(message), span});
    }

    // Line/column of a byte offset reported by the JSON parser.
    SourceSpan span_at(std::size_t byte) const {
        SourceSpan span{1, 1, byte > 0 ? byte - 1 : 0, 1};
        std::size_t limit = std::min(span.offset, text_.size());
        for (std::size_t i = 0; i < limit; ++i) {
            if (text_[i] == '\n') {
                ++span.line;
                span.column = 1;
            } else {
                ++span.column;
            }
        }
        return span;
    }

    void load_balances(const json& node) {
        if (!node.is_object()) {
            error("scenario-schema", "'initial_balances' must map wallets to Lovelace", {});
            return;
        }
        for (const auto& [wallet, amount] : node.items()) {
            if (!amount.is_number_integer()) {
                error("scenario-schema",
                      "/initial_balances/" + wallet + " must be an integer", {});
                continue;
            }
            std::int64_t value = amount.get<std::int64_t>();
            if (value < 0) {
                error("scenario-schema",
                      "/initial_balances/" + wallet + " cannot be negative", {});
                continue;
            }
            scenario_.initial_balances[wallet] = value;
        }
    }

    void load_roles(const json& node) {
        if (!node.is_object()) {
            error("scenario-schema", "'roles' must map wallets to role names", {});
            return;
        }
        for (const auto& [wallet, role] : node.items()) {
            if (!role.is_string()) {
                error("scenario-schema", "/roles/" + wallet + " must be a role name", {});
                continue;
            }
            scenario_.roles[wallet] = role.get<std::string>();
        }
    }

    void load_mode(const json& node) {
        if (node.is_string() && node.get<std::string>() == "guarded") {
            scenario_.mode = SimMode::Guarded;
        } else if (node.is_string() && node.get<std::string>() == "unguarded") {
            scenario_.mode = SimMode::Unguarded;
        } else {
            error("scenario-schema", "/mode must be \"guarded\" or \"unguarded\"", {});
        }
    }

    void load_actions(const json& node) {
        if (!node.is_array()) {
            error("scenario-schema", "'actions' must be an array", {});
            return;
        }
        std::size_t index = 0;
        for (const json& entry : node) {
            load_action(entry, "/actions/" + std::to_string(index));
            ++index;
        }
    }

    void load_action(const json& node, const std::string& path) {
        if (!node.is_object() || !node.contains("type") || !node["type"].is_string()) {
            error("scenario-schema", path + " must be an object with a \"type\" field", {});
            return;
        }
        std::string type = node["type"].get<std::string>();
        if (type == "wait") {
            load_wait(node, path);
        } else if (type == "call") {
            load_call(node, path);
        } else {
            error("scenario-schema", path + "/type must be \"call\" or \"wait\"", {});
        }
    }

    void load_wait(const json& node, const std::string& path) {
        WaitAction wait;
        bool valid = true;
        for (const auto& [key, value] : node.items()) {
            if (key == "type") continue;
            if (key == "slots") {
                if (!value.is_number_integer() || value.get<std::int64_t>() < 1) {
                    error("scenario-schema", path + "/slots must be a positive integer", {});
                    valid = false;
                } else {
                    wait.slots = value.get<std::uint64_t>();
                }
            } else {
                error("scenario-unknown-key", "unknown key '" + key + "' at " + path, {});
                valid = false;
            }
        }
        if (!node.contains("slots")) {
            error("scenario-schema", path + " is missing \"slots\"", {});
            valid = false;
        }
        if (valid) scenario_.actions.push_back(wait);
    }

    void load_call(const json& node, const std::string& path) {
        CallAction call;
        bool valid = true;
        for (const auto& [key, value] : node.items()) {
            if (key == "type") continue;
            if (key == "wallet") {
                if (!value.is_string()) {
                    error("scenario-schema", path + "/wallet must be a wallet name", {});
                    valid = false;
                } else {
                    call.wallet = value.get<std::string>();
                }
            } else if (key == "tag") {
                if (!value.is_string()) {
                    error("scenario-schema", path + "/tag must be an endpoint name", {});
                    valid = false;
                } else {
                    call.endpoint = value.get<std::string>();
                }
            } else if (key == "args") {
                if (!value.is_array()) {
                    error("scenario-schema", path + "/args must be an array", {});
                    valid = false;
                    continue;
                }
                std::size_t i = 0;
                for (const json& arg : value) {
                    if (arg.is_string()) {
                        call.args.emplace_back(arg.get<std::string>());
                    } else if (arg.is_number_integer()) {
                        call.args.emplace_back(arg.get<std::int64_t>());
                    } else {
                        error("scenario-schema",
                              path + "/args/" + std::to_string(i) +
                                  " must be a string or an integer",
                              {});
                        valid = false;
                    }
                    ++i;
                }
            } else {
                error("scenario-unknown-key", "unknown key '" + key + "' at " + path, {});
                valid = false;
            }
        }
        for (const char* required : {"wallet", "tag", "args"}) {
            if (!node.contains(required)) {
                error("scenario-schema",
                      path + " is missing \"" + std::string(required) + "\"", {});
                valid = false;
            }
        }
        if (valid) scenario_.actions.push_back(std::move(call));
    }

    void check_wallet_references() {
        for (std::size_t i = 0; i < scenario_.actions.size(); ++i) {
            const auto* call = std::get_if<CallAction>(&scenario_.actions[i]);
            if (call && scenario_.initial_balances.count(call->wallet) == 0) {
                error("scenario-unknown-wallet",
                      "/actions/" + std::to_string(i) + ": wallet '" + call->wallet +
                          "' is not in initial_balances",
                      {});
            }
        }
        for (const auto& [wallet, role] : scenario_.roles) {
            (void)role;
            if (scenario_.initial_balances.count(wallet) == 0) {
                error("scenario-unknown-wallet",
                      "/roles/" + wallet + ": wallet is not in initial_balances", {});
            }
        }
    }

    ScenarioLoadResult finish() {
        ScenarioLoadResult result;
        result.diagnostics = std::move(diags_);
        if (result.diagnostics.empty()) result.scenario = std::move(scenario_);
        return result;
    }

    const std::string& text_;
    Scenario scenario_;
    std::vector<Diagnostic> diags_;
};

}  // namespace

ScenarioLoadResult load_scenario(const std::string& json_text) {
    return Loader(json_text).run();
}

std::string serialize_scenario(const Scenario& s) {
    json root;
    root["initial_balances"] = json::object();
    for (const auto& [wallet, amount] : s.initial_balances) {
        root["initial_balances"][wallet] = amount;
    }
    root["roles"] = json::object();
    for (const auto& [wallet, role] : s.roles) {
        root["roles"][wallet] = role;
    }
    root["mode"] = s.mode == SimMode::Guarded ? "guarded" : "unguarded";
    root["actions"] = json::array();
    for (const Action& action : s.actions) {
        json entry;
        if (const auto* wait = std::get_if<WaitAction>(&action)) {
            entry["type"] = "wait";
            entry["slots"] = wait->slots;
        } else {
            const auto& call = std::get<CallAction>(action);
            entry["type"] = "call";
            entry["wallet"] = call.wallet;
            entry["tag"] = call.endpoint;
            entry["args"] = json::array();
            for (const ScenarioLiteral& arg : call.args) {
                if (const auto* text = std::get_if<std::string>(&arg)) {
                    entry["args"].push_back(*text);
                } else {
                    entry["args"].push_back(std::get<std::int64_t>(arg));
                }
            }
        }
        root["actions"].push_back(std::move(entry));
    }
    return root.dump(2) + "\n";
}

}  // namespace psc
