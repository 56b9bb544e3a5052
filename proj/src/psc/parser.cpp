#include "psc/parser.hpp"

#include <cstdlib>
#include <sstream>

#include "psc/lexer.hpp"

namespace psc {

namespace {

struct ParseError {};

class Parser {
  public:
    Parser(std::vector<Token> tokens, std::size_t source_size)
        : tokens_(std::move(tokens)), eof_span_{0, 0, source_size, 0} {
        if (!tokens_.empty()) {
            const SourceSpan& last = tokens_.back().span;
            eof_span_ = SourceSpan{last.line, last.column + static_cast<std::uint32_t>(last.length),
                                   last.offset + last.length, 0};
        } else {
            eof_span_.line = 1;
            eof_span_.column = 1;
        }
    }

    ParseResult run() {
        ParseResult result;
        try {
            ProtocolDecl decl = parse_protocol_decl();
            if (!at_end()) {
                error_here("expected end of input after the protocol body");
            }
            if (diags_.empty()) result.decl = std::move(decl);
        } catch (const ParseError&) {
            // Unrecoverable at top level; diagnostics already recorded.
        }
        result.diagnostics = std::move(diags_);
        return result;
    }

  private:
    // -- token cursor -------------------------------------------------------

    bool at_end() const { return pos_ >= tokens_.size(); }

    const Token& peek(std::size_t ahead = 0) const {
        static const Token eof{TokenKind::Punctuation, "", {}};
        if (pos_ + ahead >= tokens_.size()) return eof;
        return tokens_[pos_ + ahead];
    }

    SourceSpan current_span() const { return at_end() ? eof_span_ : tokens_[pos_].span; }

    const Token& advance() {
        return tokens_[pos_++];
    }

    bool check_keyword(std::string_view kw) const {
        return !at_end() && peek().kind == TokenKind::Keyword && peek().lexeme == kw;
    }

    bool check_punct(std::string_view p) const {
        return !at_end() && peek().kind == TokenKind::Punctuation && peek().lexeme == p;
    }

    bool match_keyword(std::string_view kw) {
        if (!check_keyword(kw)) return false;
        ++pos_;
        return true;
    }

    bool match_punct(std::string_view p) {
        if (!check_punct(p)) return false;
        ++pos_;
        return true;
    }

    void expect_keyword(std::string_view kw) {
        if (!match_keyword(kw)) error_here(std::string("expected '") + std::string(kw) + "'");
    }

    void expect_punct(std::string_view p) {
        if (!match_punct(p)) error_here(std::string("expected '") + std::string(p) + "'");
    }

    std::string expect_identifier(const char* what) {
        if (!at_end() && peek().kind == TokenKind::Identifier) {
            return advance().lexeme;
        }
        error_here(std::string("expected ") + what);
        return {};
    }

    [[noreturn]] void error_here(std::string message) {
        std::string found = at_end() ? "end of input" : "'" + peek().lexeme + "'";
        diags_.push_back(Diagnostic{"unexpected-token", message + ", found " + found,
                                    current_span()});
        throw ParseError{};
    }

    // Skips forward so parsing can continue with the next item: consumes up
    // to and including the next `;`, or stops before a `}`.
    void synchronize() {
        while (!at_end()) {
            if (check_punct(";")) {
                ++pos_;
                return;
            }
            if (check_punct("}")) return;
            ++pos_;
        }
    }

    // -- grammar ------------------------------------------------------------

    ProtocolDecl parse_protocol_decl() {
        ProtocolDecl decl;
        decl.span = current_span();
        expect_keyword("protocol");
        decl.name = expect_identifier("a protocol name");
        expect_punct("(");
        if (!check_punct(")")) {
            do {
                expect_keyword("role");
                decl.roles.push_back(RoleName{expect_identifier("a role name")});
            } while (match_punct(","));
        }
        expect_punct(")");
        expect_punct("{");
        if (check_keyword("field")) {
            advance();
            do {
                decl.fields.push_back(expect_base_type());
            } while (match_punct(","));
            expect_punct(";");
        }
        decl.body = parse_items();
        if (check_keyword("field")) {
            diags_.push_back(Diagnostic{"duplicate-field-decl",
                                        "a protocol has at most one field declaration, "
                                        "before any interaction",
                                        current_span()});
            throw ParseError{};
        }
        expect_punct("}");
        return decl;
    }

    BaseType expect_base_type() {
        if (!at_end() && peek().kind == TokenKind::Keyword) {
            if (auto t = base_type_from_keyword(peek().lexeme)) {
                ++pos_;
                return *t;
            }
        }
        error_here("expected a base type (String, HashedString, PubKeyHash, Value, Token)");
    }

    // Parses items until a `}` (not consumed) or end of input.
    std::vector<ProtocolItem> parse_items() {
        std::vector<ProtocolItem> items;
        while (!at_end() && !check_punct("}") && !check_keyword("field")) {
            try {
                items.push_back(parse_item());
            } catch (const ParseError&) {
                synchronize();
            }
        }
        return items;
    }

    ProtocolItem parse_item() {
        if (check_keyword("choice")) return ProtocolItem{parse_choice()};
        if (check_keyword("rec")) return ProtocolItem{parse_rec()};
        if (check_keyword("do")) return ProtocolItem{parse_do_interrupt()};
        if (!at_end() && peek().kind == TokenKind::Identifier) {
            if (peek(1).kind == TokenKind::Punctuation && peek(1).lexeme == ";") {
                Continue cont{peek().lexeme, current_span()};
                pos_ += 2;
                return ProtocolItem{std::move(cont)};
            }
            return ProtocolItem{parse_interaction()};
        }
        error_here("expected an interaction, choice, rec, recursion jump or do-interrupt");
    }

    Interaction parse_interaction() {
        Interaction inter;
        inter.span = current_span();
        inter.endpoint = expect_identifier("an endpoint name");
        expect_punct("(");
        if (!check_punct(")")) {
            while (true) {
                inter.params.push_back(expect_base_type());
                if (match_punct(",")) continue;
                if (check_punct(")")) break;
                error_here("expected ')' or ',' in parameter list");
            }
        }
        expect_punct(")");
        expect_keyword("from");
        inter.role = parse_role_ref();
        if (match_punct("{")) {
            while (!check_punct("}")) {
                inter.triggers.push_back(parse_trigger_decl());
            }
            expect_punct("}");
        }
        expect_punct(";");
        return inter;
    }

    RoleName parse_role_ref() {
        if (check_keyword("Contract")) {
            advance();
            return RoleName{contract_role_name()};
        }
        return RoleName{expect_identifier("a role name")};
    }

    TriggerDecl parse_trigger_decl() {
        TriggerDecl decl;
        decl.span = current_span();
        if (match_keyword("funds")) {
            decl.kind = TriggerKind::Funds;
        } else if (match_keyword("slot")) {
            decl.kind = TriggerKind::Slot;
        } else {
            error_here("expected 'funds' or 'slot' to open a trigger declaration");
        }
        expect_keyword("trigger");
        if (match_punct("(")) {
            if (decl.kind != TriggerKind::Slot) {
                diags_.push_back(Diagnostic{"unexpected-token",
                                            "only slot triggers take a conditional form",
                                            decl.span});
                throw ParseError{};
            }
            expect_keyword("slot");
            expect_punct("==");
            decl.slot_equals = expect_integer();
            expect_punct(",");
            decl.target = expect_identifier("an interrupt endpoint name");
            expect_punct(")");
        } else {
            decl.target = expect_identifier("an interrupt endpoint name");
        }
        expect_punct(";");
        return decl;
    }

    std::int64_t expect_integer() {
        if (!at_end() && peek().kind == TokenKind::IntegerLiteral) {
            return std::strtoll(advance().lexeme.c_str(), nullptr, 10);
        }
        error_here("expected an integer literal");
    }

    Choice parse_choice() {
        Choice choice;
        choice.span = current_span();
        expect_keyword("choice");
        expect_keyword("at");
        choice.at = parse_role_ref();
        expect_punct("{");
        while (!check_punct("}")) {
            ChoiceBranch branch;
            branch.span = current_span();
            branch.label = expect_identifier("a branch label");
            expect_punct(":");
            expect_punct("{");
            branch.body = parse_items();
            expect_punct("}");
            choice.branches.push_back(std::move(branch));
        }
        expect_punct("}");
        return choice;
    }

    Rec parse_rec() {
        Rec rec;
        rec.span = current_span();
        expect_keyword("rec");
        rec.label = expect_identifier("a recursion label");
        expect_punct("{");
        rec.body = parse_items();
        expect_punct("}");
        return rec;
    }

    DoInterrupt parse_do_interrupt() {
        DoInterrupt di;
        di.span = current_span();
        expect_keyword("do");
        expect_punct("{");
        di.body = parse_items();
        expect_punct("}");
        expect_keyword("interrupt");
        expect_punct("{");
        di.handler = parse_interaction();
        if (!check_punct("}")) {
            error_here("an interrupt block holds exactly one handler interaction");
        }
        expect_punct("}");
        return di;
    }

    std::vector<Token> tokens_;
    std::size_t pos_ = 0;
    std::vector<Diagnostic> diags_;
    SourceSpan eof_span_;
};

}  // namespace

ParseResult parse_protocol(std::string_view source) {
    TokenizeResult lexed = tokenize(source);
    if (!lexed.ok()) {
        return ParseResult{std::nullopt, std::move(lexed.diagnostics)};
    }
    return Parser(std::move(lexed.tokens), source.size()).run();
}

namespace {

class Printer {
  public:
    std::string print(const ProtocolDecl& decl) {
        out_ << "protocol " << decl.name << " (";
        for (std::size_t i = 0; i < decl.roles.size(); ++i) {
            if (i > 0) out_ << ", ";
            out_ << "role " << decl.roles[i].name;
        }
        out_ << ") {\n";
        indent_ = 1;
        if (!decl.fields.empty()) {
            pad();
            out_ << "field ";
            print_types(decl.fields);
            out_ << ";\n";
        }
        print_items(decl.body);
        out_ << "}\n";
        return out_.str();
    }

  private:
    void pad() {
        for (int i = 0; i < indent_; ++i) out_ << "  ";
    }

    void print_types(const std::vector<BaseType>& types) {
        for (std::size_t i = 0; i < types.size(); ++i) {
            if (i > 0) out_ << ", ";
            out_ << to_keyword(types[i]);
        }
    }

    void print_items(const std::vector<ProtocolItem>& items) {
        for (const ProtocolItem& item : items) {
            std::visit([this](const auto& node) { print_node(node); }, item.node);
        }
    }

    void print_node(const Interaction& inter) {
        pad();
        print_interaction_head(inter);
        if (!inter.triggers.empty()) {
            out_ << " {\n";
            ++indent_;
            for (const TriggerDecl& t : inter.triggers) {
                pad();
                out_ << (t.kind == TriggerKind::Funds ? "funds" : "slot") << " trigger ";
                if (t.slot_equals) {
                    out_ << "(slot == " << *t.slot_equals << ", " << t.target << ")";
                } else {
                    out_ << t.target;
                }
                out_ << ";\n";
            }
            --indent_;
            pad();
            out_ << "}";
        }
        out_ << ";\n";
    }

    void print_interaction_head(const Interaction& inter) {
        out_ << inter.endpoint << " (";
        print_types(inter.params);
        out_ << ") from " << inter.role.name;
    }

    void print_node(const Choice& choice) {
        pad();
        out_ << "choice at " << choice.at.name << " {\n";
        ++indent_;
        for (const ChoiceBranch& br : choice.branches) {
            pad();
            out_ << br.label << " : {\n";
            ++indent_;
            print_items(br.body);
            --indent_;
            pad();
            out_ << "}\n";
        }
        --indent_;
        pad();
        out_ << "}\n";
    }

    void print_node(const Rec& rec) {
        pad();
        out_ << "rec " << rec.label << " {\n";
        ++indent_;
        print_items(rec.body);
        --indent_;
        pad();
        out_ << "}\n";
    }

    void print_node(const Continue& cont) {
        pad();
        out_ << cont.label << ";\n";
    }

    void print_node(const DoInterrupt& di) {
        pad();
        out_ << "do {\n";
        ++indent_;
        print_items(di.body);
        --indent_;
        pad();
        out_ << "}\n";
        pad();
        out_ << "interrupt {\n";
        ++indent_;
        pad();
        print_interaction_head(di.handler);
        out_ << ";\n";
        --indent_;
        pad();
        out_ << "}\n";
    }

    std::ostringstream out_;
    int indent_ = 0;
};

}  // namespace

std::string pretty_print(const ProtocolDecl& decl) {
    return Printer().print(decl);
}

}  // namespace psc
