#include <doctest.h>

#include "psc/lexer.hpp"

using namespace psc;

namespace {

std::vector<std::pair<TokenKind, std::string>> shapes(const TokenizeResult& r) {
    std::vector<std::pair<TokenKind, std::string>> out;
    for (const Token& t : r.tokens) out.emplace_back(t.kind, t.lexeme);
    return out;
}

}  // namespace

TEST_CASE("tokenize an interaction line") {
    TokenizeResult r = tokenize("lock (String, Value) from Owner;");
    REQUIRE(r.ok());
    std::vector<std::pair<TokenKind, std::string>> expected = {
        {TokenKind::Identifier, "lock"},  {TokenKind::Punctuation, "("},
        {TokenKind::Keyword, "String"},   {TokenKind::Punctuation, ","},
        {TokenKind::Keyword, "Value"},    {TokenKind::Punctuation, ")"},
        {TokenKind::Keyword, "from"},     {TokenKind::Identifier, "Owner"},
        {TokenKind::Punctuation, ";"},
    };
    CHECK(shapes(r) == expected);
}

TEST_CASE("tokenize empty source") {
    TokenizeResult r = tokenize("");
    CHECK(r.ok());
    CHECK(r.tokens.empty());
}

TEST_CASE("tokenize a conditional slot trigger") {
    TokenizeResult r = tokenize("slot trigger (slot == 10, endAuction);");
    REQUIRE(r.ok());
    bool has_literal = false;
    bool has_eq = false;
    for (const Token& t : r.tokens) {
        if (t.kind == TokenKind::IntegerLiteral && t.lexeme == "10") has_literal = true;
        if (t.kind == TokenKind::Punctuation && t.lexeme == "==") has_eq = true;
    }
    CHECK(has_literal);
    CHECK(has_eq);
    CHECK(r.tokens.front().kind == TokenKind::Keyword);
}

TEST_CASE("tokenize reports characters outside the alphabet") {
    TokenizeResult r = tokenize("lock @ guess");
    REQUIRE(r.diagnostics.size() == 1);
    CHECK(r.diagnostics[0].code == "invalid-character");
    CHECK(r.diagnostics[0].span.line == 1);
    CHECK(r.diagnostics[0].span.column == 6);
    CHECK(r.diagnostics[0].span.length == 1);
    CHECK(r.tokens.size() == 2);  // lexing continues past the bad character
}

TEST_CASE("tokenize skips // comments to end of line") {
    TokenizeResult r = tokenize("ping; // the player pings\npong;");
    REQUIRE(r.ok());
    REQUIRE(r.tokens.size() == 4);
    CHECK(r.tokens[2].lexeme == "pong");
    CHECK(r.tokens[2].span.line == 2);
    CHECK(r.tokens[2].span.column == 1);
}

TEST_CASE("spans are ordered and non-overlapping") {
    TokenizeResult r = tokenize("protocol P (role A) {\n  f () from A;\n}");
    REQUIRE(r.ok());
    for (std::size_t i = 1; i < r.tokens.size(); ++i) {
        const SourceSpan& prev = r.tokens[i - 1].span;
        const SourceSpan& cur = r.tokens[i].span;
        CHECK(prev.offset + prev.length <= cur.offset);
    }
}

TEST_CASE("a lone equals sign is not in the alphabet") {
    TokenizeResult r = tokenize("slot = 10");
    REQUIRE(r.diagnostics.size() == 1);
    CHECK(r.diagnostics[0].code == "invalid-character");
}
