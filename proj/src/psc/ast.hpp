#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "psc/source_span.hpp"

namespace psc {

// Base types a protocol may declare for fields and endpoint parameters.
enum class BaseType {
    String,
    HashedString,
    PubKeyHash,
    Value,
    Token,
};

const char* to_keyword(BaseType t);
std::optional<BaseType> base_type_from_keyword(const std::string& word);

// A role is a class of participants. `Contract` is reserved for interactions
// the contract executes by itself and is never declarable.
struct RoleName {
    std::string name;

    bool is_contract() const { return name == "Contract"; }

    friend bool operator==(const RoleName&, const RoleName&) = default;
    friend auto operator<=>(const RoleName&, const RoleName&) = default;
};

inline const char* contract_role_name() { return "Contract"; }

enum class TriggerKind { Funds, Slot };

// `funds trigger closeGame;` or `slot trigger closeGame;` arm a condition at
// an interaction. The conditional form `slot trigger (slot == 10, endAuction);`
// pins the firing slot in the protocol itself; the bare form defers the
// condition to the business-logic trigger hook.
struct TriggerDecl {
    TriggerKind kind = TriggerKind::Funds;
    std::string target;
    std::optional<std::int64_t> slot_equals;
    SourceSpan span;
};

struct Interaction {
    std::string endpoint;
    std::vector<BaseType> params;
    RoleName role;
    std::vector<TriggerDecl> triggers;
    SourceSpan span;
};

struct ProtocolItem;

struct ChoiceBranch {
    std::string label;
    std::vector<ProtocolItem> body;
    SourceSpan span;
};

struct Choice {
    RoleName at;
    std::vector<ChoiceBranch> branches;
    SourceSpan span;
};

struct Rec {
    std::string label;
    std::vector<ProtocolItem> body;
    SourceSpan span;
};

struct Continue {
    std::string label;
    SourceSpan span;
};

struct DoInterrupt {
    std::vector<ProtocolItem> body;
    Interaction handler;
    SourceSpan span;
};

struct ProtocolItem {
    std::variant<Interaction, Choice, Rec, Continue, DoInterrupt> node;
};

struct ProtocolDecl {
    std::string name;
    std::vector<RoleName> roles;
    std::vector<BaseType> fields;
    std::vector<ProtocolItem> body;
    SourceSpan span;
};

// Structural equality, ignoring source spans. Used by round-trip tests.
bool structurally_equal(const ProtocolDecl& a, const ProtocolDecl& b);
bool structurally_equal(const ProtocolItem& a, const ProtocolItem& b);

// Well-formedness checks that are independent of parsing: role references,
// label binding and scoping, endpoint uniqueness, trigger targets, choice
// arity, interrupt-handler shape, and reachability within a block. Returns
// every violation; an empty result means build_automaton will not fail.
std::vector<Diagnostic> validate(const ProtocolDecl& decl);

// All interactions of the protocol in source order, interrupt handlers
// included. Choice labels are not interactions; see collect_endpoints.
std::vector<const Interaction*> collect_interactions(const ProtocolDecl& decl);

// Endpoint inventory in source order: interactions, choice labels (zero-param
// endpoints exercised by the `at` role) and interrupt handlers.
struct EndpointInfo {
    std::string endpoint;
    RoleName role;
    std::vector<BaseType> params;
    bool is_interrupt_handler = false;
    bool is_choice_label = false;
    const Interaction* interaction = nullptr;  // null for choice labels
};

std::vector<EndpointInfo> collect_endpoints(const ProtocolDecl& decl);

}  // namespace psc
