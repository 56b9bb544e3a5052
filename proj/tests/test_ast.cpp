#include <doctest.h>

#include "psc/parser.hpp"
#include "test_util.hpp"

using namespace psc;

namespace {

ProtocolDecl parsed(const std::string& source) {
    ParseResult r = parse_protocol(source);
    REQUIRE_MESSAGE(r.ok(), "expected the source to parse");
    return std::move(*r.decl);
}

Interaction interaction(std::string endpoint, std::vector<BaseType> params, std::string role) {
    Interaction i;
    i.endpoint = std::move(endpoint);
    i.params = std::move(params);
    i.role = RoleName{std::move(role)};
    return i;
}

std::vector<std::string> codes(const std::vector<Diagnostic>& ds) {
    std::vector<std::string> out;
    for (const Diagnostic& d : ds) out.push_back(d.code);
    return out;
}

}  // namespace

TEST_CASE("the straight-line game validates cleanly") {
    ProtocolDecl decl =
        parsed(test_util::read_repo_file("protocols/straight_line_guessing_game.psc"));
    CHECK(validate(decl).empty());
}

TEST_CASE("an unbound recursion label is reported") {
    std::string source = test_util::read_repo_file("protocols/ping_pong_rec.psc");
    std::size_t at = source.find("Loop;", source.find("pong"));
    REQUIRE(at != std::string::npos);
    source.replace(at, 4, "Loap");
    ProtocolDecl decl = parsed(source);
    std::vector<Diagnostic> ds = validate(decl);
    REQUIRE(ds.size() == 1);
    CHECK(ds[0].code == "unbound-label");
}

TEST_CASE("a trigger must target an interrupt endpoint") {
    std::string source = test_util::read_repo_file("protocols/guessing_game.psc");
    std::size_t at = source.find("funds trigger closeGame");
    REQUIRE(at != std::string::npos);
    source.replace(at, std::string("funds trigger closeGame").size(), "funds trigger closeGam");
    ProtocolDecl decl = parsed(source);
    std::vector<Diagnostic> ds = validate(decl);
    REQUIRE(ds.size() == 1);
    CHECK(ds[0].code == "trigger-unknown-target");
    CHECK(ds[0].span.line > 1);
}

TEST_CASE("Contract cannot be declared as a role") {
    ProtocolDecl decl;
    decl.name = "P";
    decl.roles = {RoleName{"Contract"}, RoleName{"A"}};
    CHECK(codes(validate(decl)) == std::vector<std::string>{"contract-in-roles"});
}

TEST_CASE("roles referenced by interactions must be declared") {
    ProtocolDecl decl = parsed("protocol P (role A) { f () from B; }");
    CHECK(codes(validate(decl)) == std::vector<std::string>{"undeclared-role"});
}

TEST_CASE("an interaction outside an interrupt block cannot be from Contract") {
    ProtocolDecl decl = parsed("protocol P (role A) { f () from Contract; }");
    CHECK(codes(validate(decl)) == std::vector<std::string>{"contract-role-misuse"});
}

TEST_CASE("endpoint names are unique across the protocol") {
    ProtocolDecl decl = parsed("protocol P (role A) { f () from A; f (Value) from A; }");
    CHECK(codes(validate(decl)) == std::vector<std::string>{"duplicate-endpoint"});
}

TEST_CASE("choice labels count as endpoints for uniqueness") {
    ProtocolDecl decl = parsed(
        "protocol P (role A) { f () from A; choice at A { f : {} g : {} } }");
    CHECK(codes(validate(decl)) == std::vector<std::string>{"duplicate-endpoint"});
}

TEST_CASE("a choice needs two branches with distinct labels") {
    ProtocolDecl one = parsed("protocol P (role A) { choice at A { only : {} } }");
    CHECK(codes(validate(one)) == std::vector<std::string>{"choice-too-few-branches"});

    ProtocolDecl dup = parsed("protocol P (role A) { choice at A { x : {} x : {} } }");
    CHECK(codes(validate(dup)) == std::vector<std::string>{"duplicate-choice-label"});
}

TEST_CASE("a choice cannot be decided by the contract") {
    ProtocolDecl decl;
    decl.name = "P";
    decl.roles = {RoleName{"A"}};
    Choice choice;
    choice.at = RoleName{"Contract"};
    choice.branches.push_back(ChoiceBranch{"x", {}, {}});
    choice.branches.push_back(ChoiceBranch{"y", {}, {}});
    decl.body.push_back(ProtocolItem{std::move(choice)});
    CHECK(codes(validate(decl)) == std::vector<std::string>{"contract-role-misuse"});
}

TEST_CASE("nothing may follow a recursion jump") {
    ProtocolDecl decl =
        parsed("protocol P (role A) { rec L { f () from A; L; g () from A; } }");
    CHECK(codes(validate(decl)) == std::vector<std::string>{"continue-not-last"});
}

TEST_CASE("items after a never-falling-through rec are unreachable") {
    ProtocolDecl decl =
        parsed("protocol P (role A) { rec L { f () from A; L; } g () from A; }");
    CHECK(codes(validate(decl)) == std::vector<std::string>{"unreachable-item"});
}

TEST_CASE("shadowed rec labels are rejected") {
    ProtocolDecl decl =
        parsed("protocol P (role A) { rec L { f () from A; rec L { g () from A; L; } } }");
    CHECK(codes(validate(decl)) == std::vector<std::string>{"shadowed-label"});
}

TEST_CASE("rec labels do not cross an interrupt boundary") {
    ProtocolDecl decl = parsed(
        "protocol P (role A) {"
        "  rec L {"
        "    f () from A;"
        "    do { g () from A; L; } interrupt { h () from Contract; }"
        "  }"
        "}");
    CHECK(codes(validate(decl)) == std::vector<std::string>{"unbound-label"});
}

TEST_CASE("interrupt handlers are Contract-signed and parameterless") {
    ProtocolDecl decl;
    decl.name = "P";
    decl.roles = {RoleName{"A"}};
    DoInterrupt di;
    di.body.push_back(ProtocolItem{interaction("f", {}, "A")});
    di.handler = interaction("h", {BaseType::Value}, "A");
    decl.body.push_back(ProtocolItem{std::move(di)});
    std::vector<std::string> found = codes(validate(decl));
    REQUIRE(found.size() == 2);
    CHECK(found[0] == "interrupt-handler-role");
    CHECK(found[1] == "interrupt-handler-params");
}

TEST_CASE("validate is pure") {
    ProtocolDecl decl = parsed("protocol P (role A) { f () from B; g () from C; }");
    std::vector<std::string> first = codes(validate(decl));
    std::vector<std::string> second = codes(validate(decl));
    CHECK(first == second);
    CHECK(first.size() == 2);
}

TEST_CASE("all seven shipped protocols validate with zero diagnostics") {
    for (const std::string& file : test_util::protocol_files()) {
        ProtocolDecl decl = parsed(test_util::read_repo_file(file));
        CAPTURE(file);
        CHECK(validate(decl).empty());
    }
}

TEST_CASE("structural equality ignores spans but not structure") {
    ProtocolDecl a = parsed("protocol P (role A) { f (Value) from A; }");
    ProtocolDecl b = parsed("protocol P (role A) {\n  f (Value) from A;\n}");
    ProtocolDecl c = parsed("protocol P (role A) { f (String) from A; }");
    CHECK(structurally_equal(a, b));
    CHECK(!structurally_equal(a, c));
}
