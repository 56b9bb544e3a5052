#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "psc/automaton.hpp"

namespace psc {

// Machine-readable summary of a compiled protocol: the contract interface,
// the automaton wiring and the trigger hooks the business logic must supply.
struct ManifestEndpoint {
    std::string endpoint;
    RoleName role;
    std::vector<BaseType> params;
    EdgeKind kind = EdgeKind::UserCall;
    std::vector<std::pair<StateId, StateId>> edges;

    friend bool operator==(const ManifestEndpoint&, const ManifestEndpoint&) = default;
};

struct ManifestTrigger {
    std::string hook;
    TriggerKind kind = TriggerKind::Funds;
    std::string endpoint;  // the interaction that arms the trigger
    std::string target;    // the interrupt endpoint it fires
    std::optional<std::int64_t> slot_equals;

    friend bool operator==(const ManifestTrigger&, const ManifestTrigger&) = default;
};

struct Manifest {
    std::string protocol;
    std::vector<RoleName> roles;
    std::vector<BaseType> fields;
    std::uint32_t state_count = 1;
    StateId initial = 1;
    std::vector<StateId> terminals;
    std::vector<ManifestEndpoint> endpoints;  // sorted by endpoint name
    std::vector<ManifestTrigger> triggers;    // sorted by hook name

    friend bool operator==(const Manifest&, const Manifest&) = default;
};

Manifest build_manifest(const ProtocolDecl& decl, const Automaton& automaton);

// Line-oriented text form (docs/formats.md); parse_manifest(emit_manifest(m))
// reproduces m exactly.
std::string emit_manifest(const Manifest& m);
std::string emit_manifest(const ProtocolDecl& decl, const Automaton& automaton);
std::optional<Manifest> parse_manifest(const std::string& text);

// Handler-stub source for the simulator's plugin interface: one stub per
// endpoint and per trigger hook, plus a function assembling the handler
// table. Each stub starts with a `// stub: <name>` marker line.
std::string emit_stubs(const ProtocolDecl& decl);

std::size_t count_stubs(const std::string& stub_source);

}  // namespace psc
