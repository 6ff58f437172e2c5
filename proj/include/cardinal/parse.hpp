#pragma once

// Parsers for the three text formats: concept expressions, TBox files and
// interpretation files.  The concept grammar (ASCII, whitespace-insensitive):
//
//   C ::= IDENT | "{" IDENT "}" | "top" | "bot" | "not" C
//       | "(" C "&" C ")" | "(" C "|" C ")" | "(" C "->" C ")"
//       | ("atleast"|"atmost"|"exactly") NAT R "." C
//       | ("exists"|"forall") R "." C
//   R ::= IDENT | "inv(" IDENT ")"
//
// IDENT is a nonempty word over [A-Za-z0-9_] that is neither all digits nor a
// reserved keyword.  TBox files are line-oriented ("card atleast N : C",
// "card atmost N : C", "card all : C", "gci C => C"); "#" starts a comment; a
// file may not mix card and gci statements.

#include <cctype>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "cardinal/interpretation.hpp"
#include "cardinal/surface.hpp"
#include "cardinal/syntax.hpp"

namespace cardinal {

class ParseError : public Error {
public:
    ParseError(const std::string& message, std::size_t line, std::size_t col)
        : Error("parse error at " + std::to_string(line) + ":" + std::to_string(col) + ": " +
                message),
          line(line),
          col(col) {}

    std::size_t line;
    std::size_t col;
};

namespace detail {

struct Token {
    enum class Type {
        Ident,
        Number,
        LBrace,
        RBrace,
        LParen,
        RParen,
        Amp,
        Pipe,
        Arrow,     // ->
        FatArrow,  // =>
        Dot,
        Colon,
        Comma,
        Equals,
        End,
    };
    Type type;
    std::string text;
    std::size_t line = 1;
    std::size_t col = 1;
};

inline bool is_word_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

class Lexer {
public:
    explicit Lexer(std::string_view text, std::size_t start_line = 1)
        : text_(text), line_(start_line) {
        advance();
    }

    const Token& peek() const { return current_; }

    Token take() {
        Token t = current_;
        advance();
        return t;
    }

    [[noreturn]] void fail(const std::string& message) const {
        throw ParseError(message, current_.line, current_.col);
    }

private:
    void advance() {
        while (pos_ < text_.size() &&
               std::isspace(static_cast<unsigned char>(text_[pos_]))) {
            if (text_[pos_] == '\n') {
                ++line_;
                col_ = 1;
            } else {
                ++col_;
            }
            ++pos_;
        }
        current_.line = line_;
        current_.col = col_;
        if (pos_ >= text_.size()) {
            current_ = Token{Token::Type::End, "", line_, col_};
            return;
        }
        char c = text_[pos_];
        auto simple = [&](Token::Type type, std::size_t len) {
            current_ = Token{type, std::string(text_.substr(pos_, len)), line_, col_};
            pos_ += len;
            col_ += len;
        };
        switch (c) {
            case '{': return simple(Token::Type::LBrace, 1);
            case '}': return simple(Token::Type::RBrace, 1);
            case '(': return simple(Token::Type::LParen, 1);
            case ')': return simple(Token::Type::RParen, 1);
            case '&': return simple(Token::Type::Amp, 1);
            case '|': return simple(Token::Type::Pipe, 1);
            case '.': return simple(Token::Type::Dot, 1);
            case ':': return simple(Token::Type::Colon, 1);
            case ',': return simple(Token::Type::Comma, 1);
            case '-':
                if (pos_ + 1 < text_.size() && text_[pos_ + 1] == '>')
                    return simple(Token::Type::Arrow, 2);
                if (pos_ + 1 < text_.size() &&
                    std::isdigit(static_cast<unsigned char>(text_[pos_ + 1])))
                    throw ParseError("negative count literal", line_, col_);
                throw ParseError("unexpected character '-'", line_, col_);
            case '=':
                if (pos_ + 1 < text_.size() && text_[pos_ + 1] == '>')
                    return simple(Token::Type::FatArrow, 2);
                return simple(Token::Type::Equals, 1);
            default: break;
        }
        if (is_word_char(c)) {
            std::size_t end = pos_;
            bool all_digits = true;
            while (end < text_.size() && is_word_char(text_[end])) {
                if (!std::isdigit(static_cast<unsigned char>(text_[end]))) all_digits = false;
                ++end;
            }
            Token::Type type = all_digits ? Token::Type::Number : Token::Type::Ident;
            simple(type, end - pos_);
            return;
        }
        throw ParseError(std::string("unexpected character '") + c + "'", line_, col_);
    }

    std::string_view text_;
    std::size_t pos_ = 0;
    std::size_t line_;
    std::size_t col_ = 1;
    Token current_;
};

inline bool is_reserved_word(const std::string& word) {
    static const std::set<std::string> kReserved = {"top",     "bot",    "not",  "atleast",
                                                    "atmost",  "exactly", "exists", "forall",
                                                    "inv"};
    return kReserved.count(word) != 0;
}

inline std::string expect_ident(Lexer& lex, const char* what) {
    const Token& t = lex.peek();
    if (t.type != Token::Type::Ident || is_reserved_word(t.text))
        lex.fail(std::string("expected ") + what);
    return lex.take().text;
}

inline Nat expect_number(Lexer& lex) {
    const Token& t = lex.peek();
    if (t.type != Token::Type::Number) lex.fail("expected a natural number");
    return Nat(lex.take().text);
}

inline void expect(Lexer& lex, Token::Type type, const char* what) {
    if (lex.peek().type != type) lex.fail(std::string("expected ") + what);
    lex.take();
}

inline RoleExpr parse_role_expr(Lexer& lex) {
    const Token& t = lex.peek();
    if (t.type == Token::Type::Ident && t.text == "inv") {
        lex.take();
        expect(lex, Token::Type::LParen, "'(' after inv");
        std::string name = expect_ident(lex, "role name");
        expect(lex, Token::Type::RParen, "')'");
        return inverse_role(name);
    }
    return role(expect_ident(lex, "role name"));
}

inline SurfaceConcept parse_surface_term(Lexer& lex) {
    const Token& t = lex.peek();
    switch (t.type) {
        case Token::Type::Ident: {
            const std::string& word = t.text;
            if (word == "top") {
                lex.take();
                return SurfaceConcept::top();
            }
            if (word == "bot") {
                lex.take();
                return SurfaceConcept::bot();
            }
            if (word == "not") {
                lex.take();
                return SurfaceConcept::negation(parse_surface_term(lex));
            }
            if (word == "atleast" || word == "atmost" || word == "exactly") {
                std::string kind = lex.take().text;
                Nat bound = expect_number(lex);
                RoleExpr r = parse_role_expr(lex);
                expect(lex, Token::Type::Dot, "'.' after role");
                SurfaceConcept q = parse_surface_term(lex);
                if (kind == "atleast") return SurfaceConcept::at_least(bound, r, q);
                if (kind == "atmost") return SurfaceConcept::at_most(bound, r, q);
                return SurfaceConcept::exactly(bound, r, q);
            }
            if (word == "exists" || word == "forall") {
                std::string kind = lex.take().text;
                RoleExpr r = parse_role_expr(lex);
                expect(lex, Token::Type::Dot, "'.' after role");
                SurfaceConcept q = parse_surface_term(lex);
                return kind == "exists" ? SurfaceConcept::exists(r, q)
                                        : SurfaceConcept::forall(r, q);
            }
            if (word == "inv") lex.fail("role expression used where a concept is expected");
            return SurfaceConcept::atomic(lex.take().text);
        }
        case Token::Type::LBrace: {
            lex.take();
            std::string name = expect_ident(lex, "individual name");
            expect(lex, Token::Type::RBrace, "'}'");
            return SurfaceConcept::nominal(name);
        }
        case Token::Type::LParen: {
            lex.take();
            SurfaceConcept lhs = parse_surface_term(lex);
            const Token& op = lex.peek();
            SurfaceConcept (*combine)(SurfaceConcept, SurfaceConcept) = nullptr;
            if (op.type == Token::Type::Amp)
                combine = &SurfaceConcept::conjunction;
            else if (op.type == Token::Type::Pipe)
                combine = &SurfaceConcept::disjunction;
            else if (op.type == Token::Type::Arrow)
                combine = &SurfaceConcept::implication;
            else
                lex.fail("unknown operator '" + op.text + "' (expected '&', '|' or '->')");
            lex.take();
            SurfaceConcept rhs = parse_surface_term(lex);
            expect(lex, Token::Type::RParen, "')'");
            return combine(std::move(lhs), std::move(rhs));
        }
        case Token::Type::Number:
            lex.fail("a number is not a concept");
        default:
            lex.fail("expected a concept");
    }
}

}  // namespace detail

/// Parses a surface concept; the whole input must be consumed.
inline SurfaceConcept parse_surface_concept(std::string_view text, std::size_t start_line = 1) {
    detail::Lexer lex(text, start_line);
    SurfaceConcept c = detail::parse_surface_term(lex);
    if (lex.peek().type != detail::Token::Type::End) lex.fail("trailing input after concept");
    return c;
}

/// Parses a concept and expands all abbreviations to core form.
inline Concept parse_concept(std::string_view text, std::size_t start_line = 1) {
    return expand_abbreviations(parse_surface_concept(text, start_line));
}

inline RoleExpr parse_role(std::string_view text) {
    detail::Lexer lex(text);
    RoleExpr r = detail::parse_role_expr(lex);
    if (lex.peek().type != detail::Token::Type::End) lex.fail("trailing input after role");
    return r;
}

namespace detail {

inline std::string strip_comment(std::string_view line) {
    auto hash = line.find('#');
    if (hash != std::string_view::npos) line = line.substr(0, hash);
    return std::string(line);
}

inline bool blank(const std::string& line) {
    return std::all_of(line.begin(), line.end(),
                       [](char c) { return std::isspace(static_cast<unsigned char>(c)); });
}

}  // namespace detail

/// Parses a TBox file.  The first statement fixes the kind: a file holds
/// either cardinality restrictions or inclusion axioms, never both.  An empty
/// file parses as the empty TcBox.
inline std::variant<TcBox, TiBox> parse_tbox_file(std::string_view text) {
    std::vector<CardRestriction> restrictions;
    std::vector<Gci> axioms;
    std::optional<bool> is_card;

    std::size_t line_no = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        auto nl = text.find('\n', start);
        std::string_view raw =
            text.substr(start, nl == std::string_view::npos ? std::string_view::npos : nl - start);
        ++line_no;
        start = nl == std::string_view::npos ? text.size() + 1 : nl + 1;

        std::string line = detail::strip_comment(raw);
        if (detail::blank(line)) continue;

        detail::Lexer lex(line, line_no);
        const detail::Token& head = lex.peek();
        if (head.type != detail::Token::Type::Ident) lex.fail("expected 'card' or 'gci'");
        if (head.text == "card") {
            if (is_card.has_value() && !*is_card)
                lex.fail("cardinality restriction in a gci file");
            is_card = true;
            lex.take();
            const detail::Token& kind = lex.peek();
            if (kind.type != detail::Token::Type::Ident) lex.fail("expected atleast/atmost/all");
            if (kind.text == "all") {
                lex.take();
                detail::expect(lex, detail::Token::Type::Colon, "':'");
                SurfaceConcept c = detail::parse_surface_term(lex);
                if (lex.peek().type != detail::Token::Type::End) lex.fail("trailing input");
                restrictions.push_back(CardRestriction{
                    CardRestriction::Kind::AtMost, 0,
                    Concept::negation(expand_abbreviations(c))});
            } else if (kind.text == "atleast" || kind.text == "atmost") {
                std::string which = lex.take().text;
                Nat bound = detail::expect_number(lex);
                detail::expect(lex, detail::Token::Type::Colon, "':'");
                SurfaceConcept c = detail::parse_surface_term(lex);
                if (lex.peek().type != detail::Token::Type::End) lex.fail("trailing input");
                restrictions.push_back(CardRestriction{which == "atleast"
                                                           ? CardRestriction::Kind::AtLeast
                                                           : CardRestriction::Kind::AtMost,
                                                       bound, expand_abbreviations(c)});
            } else {
                lex.fail("expected atleast/atmost/all after 'card'");
            }
        } else if (head.text == "gci") {
            if (is_card.has_value() && *is_card) lex.fail("gci axiom in a cardinality file");
            is_card = false;
            lex.take();
            SurfaceConcept lhs = detail::parse_surface_term(lex);
            detail::expect(lex, detail::Token::Type::FatArrow, "'=>'");
            SurfaceConcept rhs = detail::parse_surface_term(lex);
            if (lex.peek().type != detail::Token::Type::End) lex.fail("trailing input");
            axioms.push_back(Gci{expand_abbreviations(lhs), expand_abbreviations(rhs)});
        } else {
            lex.fail("expected 'card' or 'gci'");
        }
    }

    if (is_card.has_value() && !*is_card) return TiBox(std::move(axioms));
    return TcBox(std::move(restrictions));
}

/// Parses the interpretation text format produced by render(Interpretation).
inline Interpretation parse_interpretation(std::string_view text) {
    Interpretation interp;
    bool saw_domain = false;

    auto check_range = [&](Nat value, std::size_t line) -> Element {
        if (!saw_domain) throw ParseError("valuation before 'domain' line", line, 1);
        if (value >= interp.domain_size)
            throw ParseError("element " + value.str() + " out of range", line, 1);
        return static_cast<Element>(value);
    };

    std::size_t line_no = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        auto nl = text.find('\n', start);
        std::string_view raw =
            text.substr(start, nl == std::string_view::npos ? std::string_view::npos : nl - start);
        ++line_no;
        start = nl == std::string_view::npos ? text.size() + 1 : nl + 1;

        std::string line = detail::strip_comment(raw);
        if (detail::blank(line)) continue;

        detail::Lexer lex(line, line_no);
        const detail::Token& head = lex.peek();
        if (head.type != detail::Token::Type::Ident)
            lex.fail("expected domain/concept/role/nominal");
        if (head.text == "domain") {
            if (saw_domain) lex.fail("duplicate 'domain' line");
            lex.take();
            Nat size = detail::expect_number(lex);
            if (size < 1) lex.fail("domain must be nonempty");
            interp.domain_size = static_cast<std::size_t>(size);
            saw_domain = true;
        } else if (head.text == "concept") {
            lex.take();
            std::string name = detail::expect_ident(lex, "concept name");
            if (interp.concepts.count(name)) lex.fail("duplicate concept '" + name + "'");
            detail::expect(lex, detail::Token::Type::Equals, "'='");
            detail::expect(lex, detail::Token::Type::LBrace, "'{'");
            std::set<Element>& ext = interp.concepts[name];
            while (lex.peek().type != detail::Token::Type::RBrace) {
                if (!ext.empty()) detail::expect(lex, detail::Token::Type::Comma, "','");
                ext.insert(check_range(detail::expect_number(lex), line_no));
            }
            lex.take();
        } else if (head.text == "role") {
            lex.take();
            std::string name = detail::expect_ident(lex, "role name");
            if (interp.roles.count(name)) lex.fail("duplicate role '" + name + "'");
            detail::expect(lex, detail::Token::Type::Equals, "'='");
            detail::expect(lex, detail::Token::Type::LBrace, "'{'");
            auto& pairs = interp.roles[name];
            while (lex.peek().type != detail::Token::Type::RBrace) {
                if (!pairs.empty()) detail::expect(lex, detail::Token::Type::Comma, "','");
                detail::expect(lex, detail::Token::Type::LParen, "'('");
                Element a = check_range(detail::expect_number(lex), line_no);
                detail::expect(lex, detail::Token::Type::Comma, "','");
                Element b = check_range(detail::expect_number(lex), line_no);
                detail::expect(lex, detail::Token::Type::RParen, "')'");
                pairs.emplace(a, b);
            }
            lex.take();
        } else if (head.text == "nominal") {
            lex.take();
            std::string name = detail::expect_ident(lex, "individual name");
            if (interp.nominals.count(name)) lex.fail("duplicate nominal '" + name + "'");
            detail::expect(lex, detail::Token::Type::Equals, "'='");
            interp.nominals[name] = check_range(detail::expect_number(lex), line_no);
        } else {
            lex.fail("expected domain/concept/role/nominal");
        }
        if (lex.peek().type != detail::Token::Type::End) lex.fail("trailing input");
    }

    if (!saw_domain) throw ParseError("missing 'domain' line", 1, 1);
    interp.validate();
    return interp;
}

}  // namespace cardinal
