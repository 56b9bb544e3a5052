#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "psc/source_span.hpp"

namespace psc {

enum class TokenKind {
    Keyword,
    Identifier,
    Punctuation,
    IntegerLiteral,
};

struct Token {
    TokenKind kind = TokenKind::Identifier;
    std::string lexeme;
    SourceSpan span;
};

bool is_keyword(std::string_view word);

struct TokenizeResult {
    std::vector<Token> tokens;
    std::vector<Diagnostic> diagnostics;

    bool ok() const { return diagnostics.empty(); }
};

// Splits protocol source into tokens. `//` comments run to end of line.
// Characters outside the lexical alphabet produce one diagnostic each and
// are skipped, so the parser can still report later errors.
TokenizeResult tokenize(std::string_view source);

}  // namespace psc
