#include "psc/codegen.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

#include "psc/logic.hpp"

namespace psc {

namespace {

std::string join_params(const std::vector<BaseType>& params) {
    if (params.empty()) return "-";
    std::string out;
    for (std::size_t i = 0; i < params.size(); ++i) {
        if (i > 0) out += ",";
        out += to_keyword(params[i]);
    }
    return out;
}

std::vector<std::string> split_ws(const std::string& line) {
    std::vector<std::string> parts;
    std::istringstream in(line);
    std::string word;
    while (in >> word) parts.push_back(word);
    return parts;
}

std::optional<std::vector<BaseType>> parse_params(const std::string& text) {
    std::vector<BaseType> params;
    if (text == "-") return params;
    std::string word;
    std::istringstream in(text);
    while (std::getline(in, word, ',')) {
        auto t = base_type_from_keyword(word);
        if (!t) return std::nullopt;
        params.push_back(*t);
    }
    return params;
}

}  // namespace

Manifest build_manifest(const ProtocolDecl& decl, const Automaton& automaton) {
    Manifest m;
    m.protocol = decl.name;
    m.roles = decl.roles;
    m.fields = decl.fields;
    m.state_count = automaton.state_count;
    m.initial = automaton.initial;
    m.terminals.assign(automaton.terminals.begin(), automaton.terminals.end());

    std::map<std::string, ManifestEndpoint> endpoints;
    for (const EndpointInfo& info : collect_endpoints(decl)) {
        ManifestEndpoint entry;
        entry.endpoint = info.endpoint;
        entry.role = info.role;
        entry.params = info.params;
        entry.kind = info.is_interrupt_handler ? EdgeKind::AutoInterrupt : EdgeKind::UserCall;
        endpoints.emplace(info.endpoint, std::move(entry));
    }
    for (const Transition& t : automaton.transitions) {
        auto it = endpoints.find(t.label.endpoint);
        if (it != endpoints.end()) {
            it->second.edges.emplace_back(t.source, t.target);
        }
    }
    for (auto& [name, entry] : endpoints) {
        (void)name;
        std::sort(entry.edges.begin(), entry.edges.end());
        m.endpoints.push_back(std::move(entry));
    }

    for (const Interaction* inter : collect_interactions(decl)) {
        for (const TriggerDecl& t : inter->triggers) {
            ManifestTrigger trigger;
            trigger.hook = trigger_hook_name(inter->endpoint, t.kind);
            trigger.kind = t.kind;
            trigger.endpoint = inter->endpoint;
            trigger.target = t.target;
            trigger.slot_equals = t.slot_equals;
            m.triggers.push_back(std::move(trigger));
        }
    }
    std::sort(m.triggers.begin(), m.triggers.end(),
              [](const ManifestTrigger& a, const ManifestTrigger& b) { return a.hook < b.hook; });
    return m;
}

std::string emit_manifest(const Manifest& m) {
    std::ostringstream out;
    out << "manifest psc 1\n";
    out << "protocol " << m.protocol << "\n";
    out << "roles";
    if (m.roles.empty()) out << " -";
    for (const RoleName& r : m.roles) out << " " << r.name;
    out << "\n";
    out << "fields";
    if (m.fields.empty()) out << " -";
    for (BaseType t : m.fields) out << " " << to_keyword(t);
    out << "\n";
    out << "states " << m.state_count << "\n";
    out << "initial " << m.initial << "\n";
    out << "terminals";
    if (m.terminals.empty()) out << " -";
    for (StateId s : m.terminals) out << " " << s;
    out << "\n";
    for (const ManifestEndpoint& e : m.endpoints) {
        out << "endpoint " << e.endpoint << " "
            << (e.kind == EdgeKind::AutoInterrupt ? "auto" : "user") << " " << e.role.name
            << " " << join_params(e.params);
        for (const auto& [source, target] : e.edges) {
            out << " " << source << "->" << target;
        }
        out << "\n";
    }
    for (const ManifestTrigger& t : m.triggers) {
        out << "trigger " << t.hook << " " << (t.kind == TriggerKind::Funds ? "funds" : "slot")
            << " " << t.endpoint << " " << t.target;
        if (t.slot_equals) out << " @" << *t.slot_equals;
        out << "\n";
    }
    return out.str();
}

std::string emit_manifest(const ProtocolDecl& decl, const Automaton& automaton) {
    return emit_manifest(build_manifest(decl, automaton));
}

std::optional<Manifest> parse_manifest(const std::string& text) try {
    Manifest m;
    std::istringstream in(text);
    std::string line;
    bool saw_header = false;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::string> parts = split_ws(line);
        const std::string& tag = parts.front();
        if (tag == "manifest") {
            if (parts.size() != 3 || parts[1] != "psc" || parts[2] != "1") return std::nullopt;
            saw_header = true;
        } else if (tag == "protocol") {
            if (parts.size() != 2) return std::nullopt;
            m.protocol = parts[1];
        } else if (tag == "roles") {
            for (std::size_t i = 1; i < parts.size(); ++i) {
                if (parts[i] != "-") m.roles.push_back(RoleName{parts[i]});
            }
        } else if (tag == "fields") {
            for (std::size_t i = 1; i < parts.size(); ++i) {
                if (parts[i] == "-") continue;
                auto t = base_type_from_keyword(parts[i]);
                if (!t) return std::nullopt;
                m.fields.push_back(*t);
            }
        } else if (tag == "states") {
            if (parts.size() != 2) return std::nullopt;
            m.state_count = static_cast<std::uint32_t>(std::stoul(parts[1]));
        } else if (tag == "initial") {
            if (parts.size() != 2) return std::nullopt;
            m.initial = static_cast<StateId>(std::stoul(parts[1]));
        } else if (tag == "terminals") {
            for (std::size_t i = 1; i < parts.size(); ++i) {
                if (parts[i] != "-") m.terminals.push_back(static_cast<StateId>(std::stoul(parts[i])));
            }
        } else if (tag == "endpoint") {
            if (parts.size() < 5) return std::nullopt;
            ManifestEndpoint e;
            e.endpoint = parts[1];
            if (parts[2] == "auto") {
                e.kind = EdgeKind::AutoInterrupt;
            } else if (parts[2] == "user") {
                e.kind = EdgeKind::UserCall;
            } else {
                return std::nullopt;
            }
            e.role = RoleName{parts[3]};
            auto params = parse_params(parts[4]);
            if (!params) return std::nullopt;
            e.params = std::move(*params);
            for (std::size_t i = 5; i < parts.size(); ++i) {
                std::size_t arrow = parts[i].find("->");
                if (arrow == std::string::npos) return std::nullopt;
                e.edges.emplace_back(
                    static_cast<StateId>(std::stoul(parts[i].substr(0, arrow))),
                    static_cast<StateId>(std::stoul(parts[i].substr(arrow + 2))));
            }
            m.endpoints.push_back(std::move(e));
        } else if (tag == "trigger") {
            if (parts.size() < 5) return std::nullopt;
            ManifestTrigger t;
            t.hook = parts[1];
            if (parts[2] == "funds") {
                t.kind = TriggerKind::Funds;
            } else if (parts[2] == "slot") {
                t.kind = TriggerKind::Slot;
            } else {
                return std::nullopt;
            }
            t.endpoint = parts[3];
            t.target = parts[4];
            if (parts.size() == 6 && parts[5].size() > 1 && parts[5][0] == '@') {
                t.slot_equals = std::stoll(parts[5].substr(1));
            } else if (parts.size() > 5) {
                return std::nullopt;
            }
            m.triggers.push_back(std::move(t));
        } else {
            return std::nullopt;
        }
    }
    if (!saw_header) return std::nullopt;
    return m;
} catch (const std::exception&) {
    return std::nullopt;  // malformed numbers
}

namespace {

std::string lower_snake(const std::string& name) {
    std::string out;
    for (std::size_t i = 0; i < name.size(); ++i) {
        char c = name[i];
        if (std::isupper(static_cast<unsigned char>(c))) {
            if (i > 0 && out.back() != '_') out += '_';
            out += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        } else {
            out += c;
        }
    }
    return out;
}

std::string signature_comment(const EndpointInfo& info) {
    std::ostringstream out;
    out << "// " << info.endpoint << " (";
    for (std::size_t i = 0; i < info.params.size(); ++i) {
        if (i > 0) out << ", ";
        out << to_keyword(info.params[i]);
    }
    out << ")";
    if (info.is_choice_label) {
        out << ", a choice label decided at " << info.role.name;
    } else if (info.is_interrupt_handler) {
        out << " from " << info.role.name << ", runs automatically on trigger fire";
    } else {
        out << " from " << info.role.name;
    }
    return out.str();
}

}  // namespace

std::string emit_stubs(const ProtocolDecl& decl) {
    std::ostringstream out;
    std::string ns = lower_snake(decl.name.empty() ? std::string("protocol") : decl.name);
    out << "// Business logic stubs for protocol " << decl.name << ".\n";
    out << "// Complete each handler body, then register the table with the simulator\n";
    out << "// (see the plugin interface notes in the project README).\n";
    out << "//\n";
    out << "// A handler receives the call arguments plus the stored state contents and\n";
    out << "// returns either the contents for the next state or an error; on error no\n";
    out << "// transition happens. Trigger hooks return the condition armed alongside\n";
    out << "// their endpoint.\n";
    out << "\n";
    out << "#include \"psc/logic.hpp\"\n";
    out << "\n";
    out << "namespace " << ns << "_logic {\n";
    out << "\n";
    out << "using psc::CallContext;\n";
    out << "using psc::FieldValue;\n";
    out << "using psc::HandlerResult;\n";
    out << "using psc::HandlerTable;\n";
    out << "using psc::TriggerSpec;\n";

    std::vector<EndpointInfo> endpoints = collect_endpoints(decl);
    for (const EndpointInfo& info : endpoints) {
        out << "\n";
        out << "// stub: " << info.endpoint << "\n";
        out << signature_comment(info) << "\n";
        out << "HandlerResult " << info.endpoint
            << "(const std::vector<FieldValue>& args, const CallContext& ctx) {\n";
        out << "    (void)args;\n";
        if (info.is_choice_label) {
            out << "    // Routing decision only; replace if the branch needs real logic.\n";
            out << "    return HandlerResult::new_state(ctx.current);\n";
        } else {
            out << "    (void)ctx;\n";
            out << "    return HandlerResult::error(\"" << info.endpoint
                << ": business logic not implemented\");\n";
        }
        out << "}\n";
    }

    std::vector<std::pair<std::string, const TriggerDecl*>> hooks;
    for (const Interaction* inter : collect_interactions(decl)) {
        for (const TriggerDecl& t : inter->triggers) {
            hooks.emplace_back(trigger_hook_name(inter->endpoint, t.kind), &t);
        }
    }
    for (const auto& [hook, trigger] : hooks) {
        out << "\n";
        out << "// stub: " << hook << "\n";
        out << "// " << (trigger->kind == TriggerKind::Funds ? "funds" : "slot")
            << " trigger firing " << trigger->target;
        if (trigger->slot_equals) {
            out << " (the protocol pins slot " << *trigger->slot_equals
                << "; this hook is a fallback)";
        }
        out << "\n";
        out << "TriggerSpec " << hook << "(const std::vector<FieldValue>& args) {\n";
        out << "    (void)args;\n";
        if (trigger->kind == TriggerKind::Funds) {
            out << "    return psc::FundsPredicate{[](psc::Lovelace) { return false; }};\n";
        } else {
            out << "    return psc::SlotAt{" << trigger->slot_equals.value_or(0) << "};\n";
        }
        out << "}\n";
    }

    out << "\n";
    out << "HandlerTable make_handler_table() {\n";
    out << "    HandlerTable table;\n";
    for (const EndpointInfo& info : endpoints) {
        out << "    table.handlers[\"" << info.endpoint << "\"] = " << info.endpoint << ";\n";
    }
    for (const auto& [hook, trigger] : hooks) {
        (void)trigger;
        out << "    table.trigger_hooks[\"" << hook << "\"] = " << hook << ";\n";
    }
    out << "    return table;\n";
    out << "}\n";
    out << "\n";
    out << "}  // namespace " << ns << "_logic\n";
    return out.str();
}

std::size_t count_stubs(const std::string& stub_source) {
    std::size_t count = 0;
    std::istringstream in(stub_source);
    std::string line;
    while (std::getline(in, line)) {
        if (line.rfind("// stub: ", 0) == 0) ++count;
    }
    return count;
}

}  // namespace psc
