#include <doctest.h>

#include "psc/lexer.hpp"
#include "psc/parser.hpp"
#include "test_util.hpp"

using namespace psc;

TEST_CASE("GuessingGame parses to the expected structure") {
    ParseResult r = parse_protocol(test_util::read_repo_file("protocols/guessing_game.psc"));
    REQUIRE(r.ok());
    const ProtocolDecl& decl = *r.decl;

    CHECK(decl.name == "GuessingGame");
    REQUIRE(decl.roles.size() == 2);
    CHECK(decl.roles[0].name == "Owner");
    CHECK(decl.roles[1].name == "Player");
    REQUIRE(decl.fields.size() == 1);
    CHECK(decl.fields[0] == BaseType::HashedString);

    REQUIRE(decl.body.size() == 2);
    const auto& lock = std::get<Interaction>(decl.body[0].node);
    CHECK(lock.endpoint == "lock");
    CHECK(lock.params == std::vector<BaseType>{BaseType::String, BaseType::Value});
    CHECK(lock.role.name == "Owner");
    REQUIRE(lock.triggers.size() == 2);
    CHECK(lock.triggers[0].kind == TriggerKind::Funds);
    CHECK(lock.triggers[0].target == "closeGame");
    CHECK(!lock.triggers[0].slot_equals.has_value());
    CHECK(lock.triggers[1].kind == TriggerKind::Slot);
    CHECK(lock.triggers[1].target == "closeGame");

    const auto& di = std::get<DoInterrupt>(decl.body[1].node);
    CHECK(di.handler.endpoint == "closeGame");
    CHECK(di.handler.role.is_contract());
    CHECK(di.handler.params.empty());
    REQUIRE(di.body.size() == 1);
    const auto& loop = std::get<Rec>(di.body[0].node);
    CHECK(loop.label == "Loop");
    REQUIRE(loop.body.size() == 2);
    const auto& guess = std::get<Interaction>(loop.body[0].node);
    CHECK(guess.endpoint == "guess");
    CHECK(guess.role.name == "Player");
    CHECK(std::get<Continue>(loop.body[1].node).label == "Loop");
}

TEST_CASE("Crowdfunding parses its choice with an empty branch") {
    ParseResult r = parse_protocol(test_util::read_repo_file("protocols/crowdfunding.psc"));
    REQUIRE(r.ok());
    const auto& rec = std::get<Rec>(r.decl->body[1].node);
    const auto& choice = std::get<Choice>(rec.body[0].node);
    CHECK(choice.at.name == "Owner");
    REQUIRE(choice.branches.size() == 2);
    CHECK(choice.branches[0].label == "continue");
    REQUIRE(choice.branches[0].body.size() == 2);
    const auto& contribute = std::get<Interaction>(choice.branches[0].body[0].node);
    CHECK(contribute.endpoint == "contribute");
    CHECK(contribute.params == std::vector<BaseType>{BaseType::Value});
    CHECK(std::get<Continue>(choice.branches[0].body[1].node).label == "Loop");
    CHECK(choice.branches[1].label == "closeCrowdfund");
    CHECK(choice.branches[1].body.empty());
}

TEST_CASE("Auction parses the conditional slot trigger") {
    ParseResult r = parse_protocol(test_util::read_repo_file("protocols/auction.psc"));
    REQUIRE(r.ok());
    const auto& begin = std::get<Interaction>(r.decl->body[0].node);
    REQUIRE(begin.triggers.size() == 1);
    CHECK(begin.triggers[0].kind == TriggerKind::Slot);
    CHECK(begin.triggers[0].target == "endAuction");
    CHECK(begin.triggers[0].slot_equals == 10);
}

TEST_CASE("a malformed parameter list points at the offending token") {
    std::string source = "protocol P (role A) { lock (String from A; }";
    ParseResult r = parse_protocol(source);
    REQUIRE(!r.ok());
    REQUIRE(r.diagnostics.size() == 1);
    const Diagnostic& d = r.diagnostics[0];
    CHECK(d.message.find("expected ')' or ',' in parameter list") != std::string::npos);
    CHECK(source.substr(d.span.offset, d.span.length) == "from");
}

TEST_CASE("the parser recovers at semicolons and reports several errors") {
    ParseResult r = parse_protocol(
        "protocol P (role A) {\n"
        "  f (String form A;\n"
        "  g () from A;\n"
        "  h (Value, from A;\n"
        "}\n");
    REQUIRE(!r.ok());
    CHECK(r.diagnostics.size() == 2);
}

TEST_CASE("a conditional funds trigger is rejected") {
    ParseResult r = parse_protocol(
        "protocol P (role A) {"
        "  f () from A { funds trigger (funds == 0, h); };"
        "  do { g () from A; } interrupt { h () from Contract; }"
        "}");
    REQUIRE(!r.ok());
    CHECK(r.diagnostics[0].message.find("only slot triggers") != std::string::npos);
}

TEST_CASE("at most one field declaration is accepted") {
    ParseResult r = parse_protocol(
        "protocol P (role A) { field String; field Value; f () from A; }");
    REQUIRE(!r.ok());
    CHECK(r.diagnostics[0].code == "duplicate-field-decl");
}

TEST_CASE("every shipped protocol parses without diagnostics") {
    for (const std::string& file : test_util::protocol_files()) {
        CAPTURE(file);
        ParseResult r = parse_protocol(test_util::read_repo_file(file));
        CHECK(r.ok());
        CHECK(r.diagnostics.empty());
    }
}

TEST_CASE("pretty-printing round-trips structure and token stream") {
    for (const std::string& file : test_util::protocol_files()) {
        CAPTURE(file);
        std::string source = test_util::read_repo_file(file);
        ParseResult first = parse_protocol(source);
        REQUIRE(first.ok());
        std::string printed = pretty_print(*first.decl);
        ParseResult second = parse_protocol(printed);
        REQUIRE(second.ok());
        CHECK(structurally_equal(*first.decl, *second.decl));

        TokenizeResult original = tokenize(source);
        TokenizeResult reprinted = tokenize(printed);
        REQUIRE(original.tokens.size() == reprinted.tokens.size());
        for (std::size_t i = 0; i < original.tokens.size(); ++i) {
            CHECK(original.tokens[i].kind == reprinted.tokens[i].kind);
            CHECK(original.tokens[i].lexeme == reprinted.tokens[i].lexeme);
        }
    }
}

TEST_CASE("diagnostic spans stay inside the source") {
    std::vector<std::string> bad_sources = {
        "protocol P (role A) { lock (String from A; }",
        "protocol P (role A) { f () from",
        "protocol",
        "= = =",
        "protocol P (role A) { choice at A { } }",  // zero branches parse, validation rejects
    };
    for (const std::string& source : bad_sources) {
        CAPTURE(source);
        ParseResult r = parse_protocol(source);
        for (const Diagnostic& d : r.diagnostics) {
            CHECK(d.span.offset <= source.size());
            CHECK(d.span.offset + d.span.length <= source.size());
        }
    }
}
