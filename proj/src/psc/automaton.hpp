#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "psc/ast.hpp"

namespace psc {

// States are numbered densely 1..N, depth-first in source order; state 1 is
// always the initial state.
using StateId = std::uint32_t;

enum class EdgeKind { UserCall, AutoInterrupt };

struct EdgeLabel {
    std::string endpoint;
    RoleName role;
    std::vector<BaseType> params;
    EdgeKind kind = EdgeKind::UserCall;

    friend bool operator==(const EdgeLabel&, const EdgeLabel&) = default;
};

struct Transition {
    StateId source = 0;
    EdgeLabel label;
    StateId target = 0;

    friend bool operator==(const Transition&, const Transition&) = default;
};

struct Automaton {
    std::string protocol_name;
    std::uint32_t state_count = 1;
    StateId initial = 1;
    std::set<StateId> terminals;
    std::vector<Transition> transitions;  // sorted by (source, endpoint)

    bool is_terminal(StateId s) const { return terminals.count(s) != 0; }

    friend bool operator==(const Automaton&, const Automaton&) = default;
};

// Translates a validated protocol into its state machine. Interactions add
// one edge to a fresh state; choice branches become zero-parameter edges of
// the deciding role, with fall-through branches merging into one post-choice
// state; a recursion jump rewires its edge back to the rec anchor; a
// do-interrupt adds one automatic handler edge from every state of its body
// to a fresh post-interrupt state. Throws std::invalid_argument when the
// protocol does not validate.
Automaton build_automaton(const ProtocolDecl& decl);

// Graphviz rendering: automatic edges dashed, terminal states double-circled.
// Output is sorted, so byte-stable for identical automata.
std::string to_dot(const Automaton& a);

// Line-oriented lossless dump (docs/formats.md), for golden tests and tools.
std::string dump_automaton(const Automaton& a);

// Labels of the outgoing transitions of `s`, sorted by endpoint name.
// Throws std::invalid_argument for an unknown state id.
std::vector<EdgeLabel> enabled(const Automaton& a, StateId s);

// The transition from `s` labelled with `endpoint`, or null. At most one
// exists per (state, endpoint) pair.
const Transition* find_transition(const Automaton& a, StateId s, const std::string& endpoint);

}  // namespace psc
