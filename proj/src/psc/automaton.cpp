#include "psc/automaton.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>

namespace psc {

namespace {

// Builds over raw node ids with a union-find so that a recursion jump can
// identify a freshly-drawn edge target with its rec anchor, and choice
// fall-throughs can merge into one node. Canonical numbering is assigned
// afterwards, in node-creation order, which matches depth-first source order.
class Builder {
  public:
    explicit Builder(const ProtocolDecl& decl) : decl_(decl) {}

    Automaton run() {
        std::uint32_t entry = fresh();
        std::optional<std::uint32_t> exit = build_block(decl_.body, entry);
        return finish(entry, exit);
    }

  private:
    std::uint32_t fresh() {
        parent_.push_back(static_cast<std::uint32_t>(parent_.size()));
        return parent_.back();
    }

    std::uint32_t find(std::uint32_t n) {
        while (parent_[n] != n) {
            parent_[n] = parent_[parent_[n]];
            n = parent_[n];
        }
        return n;
    }

    // The earlier-created node stays representative, keeping numbering stable.
    void unite(std::uint32_t a, std::uint32_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return;
        if (b < a) std::swap(a, b);
        parent_[b] = a;
    }

    struct RawEdge {
        std::uint32_t source;
        EdgeLabel label;
        std::uint32_t target;
    };

    std::optional<std::uint32_t> build_block(const std::vector<ProtocolItem>& items,
                                             std::uint32_t entry) {
        std::optional<std::uint32_t> current = entry;
        for (const ProtocolItem& item : items) {
            if (!current) break;  // unreachable items are rejected by validate
            current = build_item(item, *current);
        }
        return current;
    }

    std::optional<std::uint32_t> build_item(const ProtocolItem& item, std::uint32_t current) {
        if (const auto* inter = std::get_if<Interaction>(&item.node)) {
            std::uint32_t target = fresh();
            edges_.push_back(RawEdge{current,
                                     EdgeLabel{inter->endpoint, inter->role, inter->params,
                                               EdgeKind::UserCall},
                                     target});
            return target;
        }
        if (const auto* cont = std::get_if<Continue>(&item.node)) {
            auto anchor = anchors_.find(cont->label);
            if (anchor == anchors_.end()) {
                throw std::invalid_argument("unbound rec label '" + cont->label + "'");
            }
            unite(current, anchor->second);
            return std::nullopt;
        }
        if (const auto* rec = std::get_if<Rec>(&item.node)) {
            anchors_[rec->label] = current;
            std::optional<std::uint32_t> exit = build_block(rec->body, current);
            anchors_.erase(rec->label);
            return exit;
        }
        if (const auto* choice = std::get_if<Choice>(&item.node)) {
            std::optional<std::uint32_t> merged;
            for (const ChoiceBranch& br : choice->branches) {
                std::uint32_t branch_entry = fresh();
                edges_.push_back(RawEdge{current,
                                         EdgeLabel{br.label, choice->at, {}, EdgeKind::UserCall},
                                         branch_entry});
                std::optional<std::uint32_t> exit = build_block(br.body, branch_entry);
                if (exit) {
                    if (merged) {
                        unite(*merged, *exit);
                    } else {
                        merged = exit;
                    }
                }
            }
            return merged;
        }
        const auto& di = std::get<DoInterrupt>(item.node);
        std::uint32_t first_body_node = static_cast<std::uint32_t>(parent_.size());
        // Rec labels do not cross the interrupt boundary.
        std::map<std::string, std::uint32_t> saved_anchors;
        saved_anchors.swap(anchors_);
        build_block(di.body, current);
        anchors_.swap(saved_anchors);

        std::set<std::uint32_t> region;
        region.insert(find(current));
        for (std::uint32_t n = first_body_node; n < parent_.size(); ++n) {
            region.insert(find(n));
        }
        std::uint32_t post = fresh();
        for (std::uint32_t n : region) {
            edges_.push_back(RawEdge{n,
                                     EdgeLabel{di.handler.endpoint, di.handler.role,
                                               di.handler.params, EdgeKind::AutoInterrupt},
                                     post});
        }
        return post;
    }

    Automaton finish(std::uint32_t entry, std::optional<std::uint32_t> exit) {
        // Number representatives 1..N in creation order.
        std::map<std::uint32_t, StateId> numbering;
        auto number_of = [&](std::uint32_t raw) -> StateId {
            std::uint32_t rep = find(raw);
            auto it = numbering.find(rep);
            if (it != numbering.end()) return it->second;
            StateId id = static_cast<StateId>(numbering.size() + 1);
            numbering.emplace(rep, id);
            return id;
        };

        Automaton a;
        a.protocol_name = decl_.name;
        a.initial = number_of(entry);
        for (std::uint32_t n = 0; n < parent_.size(); ++n) {
            if (find(n) == n) number_of(n);
        }
        for (const RawEdge& e : edges_) {
            a.transitions.push_back(
                Transition{number_of(e.source), e.label, number_of(e.target)});
        }
        a.state_count = static_cast<std::uint32_t>(numbering.size());
        if (exit) a.terminals.insert(number_of(*exit));
        std::sort(a.transitions.begin(), a.transitions.end(),
                  [](const Transition& x, const Transition& y) {
                      if (x.source != y.source) return x.source < y.source;
                      if (x.label.endpoint != y.label.endpoint)
                          return x.label.endpoint < y.label.endpoint;
                      return x.target < y.target;
                  });
        return a;
    }

    const ProtocolDecl& decl_;
    std::vector<std::uint32_t> parent_;
    std::vector<RawEdge> edges_;
    std::map<std::string, std::uint32_t> anchors_;
};

}  // namespace

Automaton build_automaton(const ProtocolDecl& decl) {
    std::vector<Diagnostic> problems = validate(decl);
    if (!problems.empty()) {
        throw std::invalid_argument("protocol does not validate: " + problems.front().code +
                                    ": " + problems.front().message);
    }
    return Builder(decl).run();
}

std::string to_dot(const Automaton& a) {
    std::ostringstream out;
    out << "digraph " << a.protocol_name << " {\n";
    out << "  rankdir=LR;\n";
    out << "  node [shape=circle];\n";
    for (StateId s = 1; s <= a.state_count; ++s) {
        out << "  " << s << " [label=\"" << s << "\"";
        if (a.is_terminal(s)) out << ", shape=doublecircle";
        out << "];\n";
    }
    for (const Transition& t : a.transitions) {
        out << "  " << t.source << " -> " << t.target << " [label=\"" << t.label.endpoint
            << "\"";
        if (t.label.kind == EdgeKind::AutoInterrupt) out << ", style=dashed";
        out << "];\n";
    }
    out << "}\n";
    return out.str();
}

std::string dump_automaton(const Automaton& a) {
    std::ostringstream out;
    out << "automaton " << a.protocol_name << "\n";
    out << "states " << a.state_count << "\n";
    out << "initial " << a.initial << "\n";
    out << "terminals";
    if (a.terminals.empty()) {
        out << " -";
    } else {
        for (StateId s : a.terminals) out << " " << s;
    }
    out << "\n";
    for (const Transition& t : a.transitions) {
        out << "edge " << t.source << " " << t.target << " " << t.label.endpoint << " "
            << (t.label.kind == EdgeKind::AutoInterrupt ? "auto" : "user") << " "
            << t.label.role.name << " ";
        if (t.label.params.empty()) {
            out << "-";
        } else {
            for (std::size_t i = 0; i < t.label.params.size(); ++i) {
                if (i > 0) out << ",";
                out << to_keyword(t.label.params[i]);
            }
        }
        out << "\n";
    }
    return out.str();
}

std::vector<EdgeLabel> enabled(const Automaton& a, StateId s) {
    if (s < 1 || s > a.state_count) {
        throw std::invalid_argument("unknown state id " + std::to_string(s));
    }
    std::vector<EdgeLabel> out;
    for (const Transition& t : a.transitions) {
        if (t.source == s) out.push_back(t.label);
    }
    std::sort(out.begin(), out.end(), [](const EdgeLabel& x, const EdgeLabel& y) {
        return x.endpoint < y.endpoint;
    });
    return out;
}

const Transition* find_transition(const Automaton& a, StateId s, const std::string& endpoint) {
    for (const Transition& t : a.transitions) {
        if (t.source == s && t.label.endpoint == endpoint) return &t;
    }
    return nullptr;
}

}  // namespace psc
