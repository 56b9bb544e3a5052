#include "psc/ast.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace psc {

const char* to_keyword(BaseType t) {
    switch (t) {
        case BaseType::String: return "String";
        case BaseType::HashedString: return "HashedString";
        case BaseType::PubKeyHash: return "PubKeyHash";
        case BaseType::Value: return "Value";
        case BaseType::Token: return "Token";
    }
    return "?";
}

std::optional<BaseType> base_type_from_keyword(const std::string& word) {
    if (word == "String") return BaseType::String;
    if (word == "HashedString") return BaseType::HashedString;
    if (word == "PubKeyHash") return BaseType::PubKeyHash;
    if (word == "Value") return BaseType::Value;
    if (word == "Token") return BaseType::Token;
    return std::nullopt;
}

namespace {

bool equal_interaction(const Interaction& a, const Interaction& b) {
    if (a.endpoint != b.endpoint || a.role != b.role || a.params != b.params) return false;
    if (a.triggers.size() != b.triggers.size()) return false;
    for (std::size_t i = 0; i < a.triggers.size(); ++i) {
        const TriggerDecl& ta = a.triggers[i];
        const TriggerDecl& tb = b.triggers[i];
        if (ta.kind != tb.kind || ta.target != tb.target || ta.slot_equals != tb.slot_equals)
            return false;
    }
    return true;
}

bool equal_items(const std::vector<ProtocolItem>& a, const std::vector<ProtocolItem>& b);

struct ItemEq {
    const ProtocolItem& other;

    bool operator()(const Interaction& x) const {
        const auto* y = std::get_if<Interaction>(&other.node);
        return y && equal_interaction(x, *y);
    }
    bool operator()(const Choice& x) const {
        const auto* y = std::get_if<Choice>(&other.node);
        if (!y || x.at != y->at || x.branches.size() != y->branches.size()) return false;
        for (std::size_t i = 0; i < x.branches.size(); ++i) {
            if (x.branches[i].label != y->branches[i].label) return false;
            if (!equal_items(x.branches[i].body, y->branches[i].body)) return false;
        }
        return true;
    }
    bool operator()(const Rec& x) const {
        const auto* y = std::get_if<Rec>(&other.node);
        return y && x.label == y->label && equal_items(x.body, y->body);
    }
    bool operator()(const Continue& x) const {
        const auto* y = std::get_if<Continue>(&other.node);
        return y && x.label == y->label;
    }
    bool operator()(const DoInterrupt& x) const {
        const auto* y = std::get_if<DoInterrupt>(&other.node);
        return y && equal_items(x.body, y->body) && equal_interaction(x.handler, y->handler);
    }
};

bool equal_items(const std::vector<ProtocolItem>& a, const std::vector<ProtocolItem>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (!structurally_equal(a[i], b[i])) return false;
    }
    return true;
}

}  // namespace

bool structurally_equal(const ProtocolItem& a, const ProtocolItem& b) {
    return std::visit(ItemEq{b}, a.node);
}

bool structurally_equal(const ProtocolDecl& a, const ProtocolDecl& b) {
    return a.name == b.name && a.roles == b.roles && a.fields == b.fields &&
           equal_items(a.body, b.body);
}

namespace {

// Walks every item in source order; handlers visited after their do body.
template <typename F>
void walk_items(const std::vector<ProtocolItem>& items, F&& f) {
    for (const ProtocolItem& item : items) {
        f(item);
        if (const auto* choice = std::get_if<Choice>(&item.node)) {
            for (const ChoiceBranch& br : choice->branches) walk_items(br.body, f);
        } else if (const auto* rec = std::get_if<Rec>(&item.node)) {
            walk_items(rec->body, f);
        } else if (const auto* di = std::get_if<DoInterrupt>(&item.node)) {
            walk_items(di->body, f);
        }
    }
}

class Validator {
  public:
    explicit Validator(const ProtocolDecl& decl) : decl_(decl) {}

    std::vector<Diagnostic> run() {
        check_roles();
        collect_handler_endpoints();
        check_block(decl_.body);
        return std::move(diags_);
    }

  private:
    void error(std::string code, std::string message, SourceSpan span) {
        diags_.push_back(Diagnostic{std::move(code), std::move(message), span});
    }

    void check_roles() {
        std::set<std::string> seen;
        for (const RoleName& r : decl_.roles) {
            if (r.name.empty()) {
                error("empty-role-name", "role name must not be empty", decl_.span);
            } else if (r.is_contract()) {
                error("contract-in-roles",
                      "'Contract' is the primitive contract role and cannot be declared",
                      decl_.span);
            } else if (!seen.insert(r.name).second) {
                error("duplicate-role", "role '" + r.name + "' declared more than once",
                      decl_.span);
            }
        }
    }

    void collect_handler_endpoints() {
        walk_items(decl_.body, [this](const ProtocolItem& item) {
            if (const auto* di = std::get_if<DoInterrupt>(&item.node)) {
                handler_endpoints_.insert(di->handler.endpoint);
            }
        });
    }

    bool role_declared(const RoleName& r) const {
        return std::find(decl_.roles.begin(), decl_.roles.end(), r) != decl_.roles.end();
    }

    void check_endpoint_unique(const std::string& name, SourceSpan span) {
        if (!endpoints_.insert(name).second) {
            error("duplicate-endpoint",
                  "endpoint '" + name + "' is declared at more than one site", span);
        }
    }

    void check_interaction(const Interaction& inter, bool is_handler) {
        check_endpoint_unique(inter.endpoint, inter.span);
        if (is_handler) {
            if (!inter.role.is_contract()) {
                error("interrupt-handler-role",
                      "interrupt handler '" + inter.endpoint + "' must be from Contract",
                      inter.span);
            }
            if (!inter.params.empty()) {
                error("interrupt-handler-params",
                      "interrupt handler '" + inter.endpoint + "' takes no parameters",
                      inter.span);
            }
            if (!inter.triggers.empty()) {
                error("interrupt-handler-triggers",
                      "interrupt handler '" + inter.endpoint + "' cannot declare triggers",
                      inter.span);
            }
        } else {
            if (inter.role.is_contract()) {
                error("contract-role-misuse",
                      "only interrupt handlers may be from Contract; '" + inter.endpoint +
                          "' is a regular interaction",
                      inter.span);
            } else if (!role_declared(inter.role)) {
                error("undeclared-role",
                      "role '" + inter.role.name + "' is not declared by the protocol",
                      inter.span);
            }
        }
        for (const TriggerDecl& t : inter.triggers) {
            if (handler_endpoints_.count(t.target) == 0) {
                error("trigger-unknown-target",
                      "trigger targets '" + t.target +
                          "', which is not an interrupt endpoint of this protocol",
                      t.span);
            }
        }
    }

    // Returns true when the block can fall through to whatever follows it.
    bool check_block(const std::vector<ProtocolItem>& items) {
        bool falls = true;
        for (std::size_t i = 0; i < items.size(); ++i) {
            if (!falls) {
                bool after_continue =
                    std::holds_alternative<Continue>(items[i - 1].node);
                error(after_continue ? "continue-not-last" : "unreachable-item",
                      after_continue
                          ? "no item may follow a recursion jump in the same block"
                          : "item is unreachable: the previous item never falls through",
                      item_span(items[i]));
                break;
            }
            falls = check_item(items[i]);
        }
        return falls;
    }

    bool check_item(const ProtocolItem& item) {
        if (const auto* inter = std::get_if<Interaction>(&item.node)) {
            check_interaction(*inter, /*is_handler=*/false);
            return true;
        }
        if (const auto* cont = std::get_if<Continue>(&item.node)) {
            if (!label_in_scope(cont->label)) {
                error("unbound-label",
                      "'" + cont->label + "' does not name an enclosing rec block",
                      cont->span);
            }
            return false;
        }
        if (const auto* rec = std::get_if<Rec>(&item.node)) {
            if (label_in_scope(rec->label)) {
                error("shadowed-label",
                      "rec label '" + rec->label + "' shadows an enclosing label", rec->span);
            }
            labels_.push_back(rec->label);
            bool falls = check_block(rec->body);
            labels_.pop_back();
            return falls;
        }
        if (const auto* choice = std::get_if<Choice>(&item.node)) {
            if (choice->at.is_contract()) {
                error("contract-role-misuse", "a choice cannot be at the Contract role",
                      choice->span);
            } else if (!role_declared(choice->at)) {
                error("undeclared-role",
                      "role '" + choice->at.name + "' is not declared by the protocol",
                      choice->span);
            }
            if (choice->branches.size() < 2) {
                error("choice-too-few-branches", "a choice needs at least two branches",
                      choice->span);
            }
            std::set<std::string> labels;
            bool any_falls = choice->branches.empty();
            for (const ChoiceBranch& br : choice->branches) {
                if (!labels.insert(br.label).second) {
                    error("duplicate-choice-label",
                          "branch label '" + br.label + "' appears twice in one choice",
                          br.span);
                } else {
                    check_endpoint_unique(br.label, br.span);
                }
                if (check_block(br.body)) any_falls = true;
            }
            return any_falls;
        }
        const auto& di = std::get<DoInterrupt>(item.node);
        check_interaction(di.handler, /*is_handler=*/true);
        // Interrupt regions are left via the handler only, so rec labels do
        // not cross the do boundary.
        std::vector<std::string> saved;
        saved.swap(labels_);
        check_block(di.body);
        labels_.swap(saved);
        return true;
    }

    bool label_in_scope(const std::string& label) const {
        return std::find(labels_.begin(), labels_.end(), label) != labels_.end();
    }

    static SourceSpan item_span(const ProtocolItem& item) {
        return std::visit([](const auto& node) { return node.span; }, item.node);
    }

    const ProtocolDecl& decl_;
    std::vector<Diagnostic> diags_;
    std::set<std::string> endpoints_;
    std::set<std::string> handler_endpoints_;
    std::vector<std::string> labels_;
};

}  // namespace

std::vector<Diagnostic> validate(const ProtocolDecl& decl) {
    return Validator(decl).run();
}

std::vector<const Interaction*> collect_interactions(const ProtocolDecl& decl) {
    std::vector<const Interaction*> out;
    walk_items(decl.body, [&out](const ProtocolItem& item) {
        if (const auto* inter = std::get_if<Interaction>(&item.node)) {
            out.push_back(inter);
        } else if (const auto* di = std::get_if<DoInterrupt>(&item.node)) {
            out.push_back(&di->handler);
        }
    });
    return out;
}

namespace {

void collect_endpoints_in(const std::vector<ProtocolItem>& items, std::vector<EndpointInfo>& out) {
    for (const ProtocolItem& item : items) {
        if (const auto* inter = std::get_if<Interaction>(&item.node)) {
            out.push_back(EndpointInfo{inter->endpoint, inter->role, inter->params,
                                       false, false, inter});
        } else if (const auto* choice = std::get_if<Choice>(&item.node)) {
            for (const ChoiceBranch& br : choice->branches) {
                out.push_back(EndpointInfo{br.label, choice->at, {}, false, true, nullptr});
                collect_endpoints_in(br.body, out);
            }
        } else if (const auto* rec = std::get_if<Rec>(&item.node)) {
            collect_endpoints_in(rec->body, out);
        } else if (const auto* di = std::get_if<DoInterrupt>(&item.node)) {
            collect_endpoints_in(di->body, out);
            out.push_back(EndpointInfo{di->handler.endpoint, di->handler.role,
                                       di->handler.params, true, false, &di->handler});
        }
    }
}

}  // namespace

std::vector<EndpointInfo> collect_endpoints(const ProtocolDecl& decl) {
    std::vector<EndpointInfo> out;
    collect_endpoints_in(decl.body, out);
    return out;
}

}  // namespace psc
