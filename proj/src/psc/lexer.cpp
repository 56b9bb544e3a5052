#include "psc/lexer.hpp"

#include <array>
#include <cctype>

namespace psc {

namespace {

constexpr std::array<std::string_view, 18> kKeywords = {
    "protocol", "role",  "field",   "choice", "at",    "rec",
    "do",       "interrupt", "from", "trigger", "funds", "slot",
    "String",   "HashedString", "PubKeyHash", "Value", "Token", "Contract",
};

bool ident_start(char c) {
    return std::isalpha(static_cast<unsigned char>(c)) != 0;
}

bool ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_';
}

}  // namespace

bool is_keyword(std::string_view word) {
    for (std::string_view k : kKeywords) {
        if (k == word) return true;
    }
    return false;
}

TokenizeResult tokenize(std::string_view source) {
    TokenizeResult result;
    std::size_t pos = 0;
    std::uint32_t line = 1;
    std::uint32_t column = 1;

    auto advance = [&](std::size_t n) {
        for (std::size_t i = 0; i < n; ++i) {
            if (source[pos] == '\n') {
                ++line;
                column = 1;
            } else {
                ++column;
            }
            ++pos;
        }
    };
    auto span_here = [&](std::size_t length) {
        return SourceSpan{line, column, pos, length};
    };
    auto push = [&](TokenKind kind, std::size_t length) {
        result.tokens.push_back(
            Token{kind, std::string(source.substr(pos, length)), span_here(length)});
        advance(length);
    };

    while (pos < source.size()) {
        char c = source[pos];
        if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
            advance(1);
            continue;
        }
        if (c == '/' && pos + 1 < source.size() && source[pos + 1] == '/') {
            while (pos < source.size() && source[pos] != '\n') advance(1);
            continue;
        }
        if (ident_start(c)) {
            std::size_t len = 1;
            while (pos + len < source.size() && ident_char(source[pos + len])) ++len;
            std::string_view word = source.substr(pos, len);
            push(is_keyword(word) ? TokenKind::Keyword : TokenKind::Identifier, len);
            continue;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t len = 1;
            while (pos + len < source.size() &&
                   std::isdigit(static_cast<unsigned char>(source[pos + len])))
                ++len;
            push(TokenKind::IntegerLiteral, len);
            continue;
        }
        if (c == '(' || c == ')' || c == '{' || c == '}' || c == ',' || c == ';' || c == ':') {
            push(TokenKind::Punctuation, 1);
            continue;
        }
        if (c == '=' && pos + 1 < source.size() && source[pos + 1] == '=') {
            push(TokenKind::Punctuation, 2);
            continue;
        }
        result.diagnostics.push_back(Diagnostic{
            "invalid-character",
            std::string("character '") + c + "' is not part of the protocol language",
            span_here(1)});
        advance(1);
    }
    return result;
}

}  // namespace psc
