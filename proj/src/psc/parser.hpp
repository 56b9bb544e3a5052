#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "psc/ast.hpp"

namespace psc {

struct ParseResult {
    std::optional<ProtocolDecl> decl;
    std::vector<Diagnostic> diagnostics;

    bool ok() const { return decl.has_value(); }
};

// Recursive-descent parser for the protocol language (grammar in
// docs/grammar.md). Recovers at `;` and `}` so one run reports every error
// it can; any diagnostic means no AST is produced.
ParseResult parse_protocol(std::string_view source);

// Canonical formatting of an AST. Tokenizing the output yields the same
// token stream as the accepted input, whitespace and comments aside.
std::string pretty_print(const ProtocolDecl& decl);

}  // namespace psc
