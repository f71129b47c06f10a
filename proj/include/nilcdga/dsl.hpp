#pragma once

#include "exterior.hpp"

#include <cctype>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace nilcdga {

class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, std::size_t column, std::string message, std::string token)
        : std::runtime_error(format(line, column, message, token)),
          line_(line),
          column_(column),
          message_(std::move(message)),
          token_(std::move(token)) {}

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }
    const std::string& message() const noexcept { return message_; }
    const std::string& token() const noexcept { return token_; }

private:
    static std::string format(std::size_t line, std::size_t column, const std::string& message,
                              const std::string& token) {
        std::string s = "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message;
        if (!token.empty())
            s += " (at '" + token + "')";
        return s;
    }

    std::size_t line_;
    std::size_t column_;
    std::string message_;
    std::string token_;
};

// A named generator-image table; images are listed in generator-table order.
struct ActionDecl {
    std::string name;
    int order = 1;
    std::vector<GradedElement> images;
};

struct PresentationSource {
    std::string text;
    CdgaPresentation presentation;
    std::vector<ActionDecl> actions;
    std::vector<std::pair<std::string, GradedElement>> elements;

    const ActionDecl* find_action(const std::string& name) const {
        for (const auto& a : actions)
            if (a.name == name)
                return &a;
        return nullptr;
    }

    const GradedElement* find_element(const std::string& name) const {
        for (const auto& [n, e] : elements)
            if (n == name)
                return &e;
        return nullptr;
    }
};

namespace dsl {

enum class TokenKind { Identifier, Number, Symbol, End };

struct Token {
    TokenKind kind = TokenKind::End;
    std::string text;
    std::size_t line = 0;
    std::size_t column = 0;
};

inline bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
inline bool is_ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

// Tokens of one source line; the comment tail is dropped.  The final token is
// always End, positioned just past the last character.
inline std::vector<Token> tokenize_line(std::string_view line, std::size_t line_no) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < line.size()) {
        char c = line[i];
        if (c == '#')
            break;
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        Token t;
        t.line = line_no;
        t.column = i + 1;
        if (is_ident_start(c)) {
            std::size_t j = i;
            while (j < line.size() && is_ident_char(line[j]))
                ++j;
            t.kind = TokenKind::Identifier;
            t.text = std::string(line.substr(i, j - i));
            i = j;
        } else if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t j = i;
            while (j < line.size() && std::isdigit(static_cast<unsigned char>(line[j])))
                ++j;
            t.kind = TokenKind::Number;
            t.text = std::string(line.substr(i, j - i));
            i = j;
        } else if (std::string_view("=^*/+-").find(c) != std::string_view::npos) {
            t.kind = TokenKind::Symbol;
            t.text = std::string(1, c);
            ++i;
        } else {
            throw ParseError(line_no, i + 1, "unexpected character", std::string(1, c));
        }
        out.push_back(std::move(t));
    }
    std::size_t end_col = line.size() + 1;
    if (auto hash = line.find('#'); hash != std::string_view::npos)
        end_col = hash + 1;
    out.push_back(Token{TokenKind::End, "", line_no, end_col});
    return out;
}

// Resolves identifiers in expressions: generators first, then bindings.
struct Scope {
    TablePtr table;
    const std::vector<std::pair<std::string, GradedElement>>* bindings = nullptr;

    std::optional<GradedElement> lookup(const std::string& name) const {
        if (auto i = table->find(name))
            return GradedElement::generator(table, *i);
        if (bindings)
            for (const auto& [n, e] : *bindings)
                if (n == name)
                    return e;
        return std::nullopt;
    }
};

class ExpressionParser {
public:
    ExpressionParser(const std::vector<Token>& tokens, std::size_t pos, const Scope& scope)
        : toks_(tokens), pos_(pos), scope_(scope) {}

    // expr := ['+'|'-'] term (('+'|'-') term)*
    GradedElement parse_expression() {
        GradedElement sum(scope_.table);
        bool negative = false;
        if (is_symbol("+") || is_symbol("-")) {
            negative = peek().text == "-";
            ++pos_;
        }
        sum += signed_term(negative);
        while (is_symbol("+") || is_symbol("-")) {
            negative = peek().text == "-";
            ++pos_;
            sum += signed_term(negative);
        }
        return sum;
    }

    std::size_t position() const noexcept { return pos_; }
    const Token& peek() const { return toks_[pos_]; }

private:
    bool is_symbol(const char* s) const { return peek().kind == TokenKind::Symbol && peek().text == s; }

    [[noreturn]] void fail(const std::string& message) const {
        const Token& t = peek();
        throw ParseError(t.line, t.column, message, t.text);
    }

    GradedElement signed_term(bool negative) {
        GradedElement t = term();
        return negative ? -t : t;
    }

    // term := rat ['*'] mono | rat | mono
    GradedElement term() {
        if (peek().kind == TokenKind::Number) {
            Rational q = rational();
            bool star = false;
            if (is_symbol("*")) {
                ++pos_;
                star = true;
            }
            if (peek().kind == TokenKind::Identifier)
                return ExactScalar(q) * mono();
            if (star)
                fail("expected a monomial after '*'");
            return GradedElement::monomial(scope_.table, Monomial{}, ExactScalar(q));
        }
        if (peek().kind == TokenKind::Identifier)
            return mono();
        fail(peek().kind == TokenKind::End ? "expected a term, found end of line" : "expected a term");
    }

    Rational rational() {
        const Token& num = peek();
        ++pos_;
        BigInt p(num.text), q(1);
        if (is_symbol("/")) {
            ++pos_;
            if (peek().kind != TokenKind::Number)
                fail("expected a denominator after '/'");
            q = BigInt(peek().text);
            if (q == 0)
                fail("zero denominator");
            ++pos_;
        }
        Rational r(p, q);
        r.canonicalize();
        return r;
    }

    // mono := ident ('^' ident)*
    GradedElement mono() {
        GradedElement out = factor();
        while (is_symbol("^")) {
            ++pos_;
            if (peek().kind != TokenKind::Identifier)
                fail("expected a generator after '^'");
            out = wedge(out, factor());
        }
        return out;
    }

    GradedElement factor() {
        const Token& t = peek();
        auto v = scope_.lookup(t.text);
        if (!v)
            throw ParseError(t.line, t.column, "unknown generator '" + t.text + "'", t.text);
        ++pos_;
        return *v;
    }

    const std::vector<Token>& toks_;
    std::size_t pos_;
    const Scope& scope_;
};

inline const std::set<std::string>& keywords() {
    static const std::set<std::string> k{"algebra", "generator", "d", "action", "order", "element"};
    return k;
}

struct Statement {
    std::vector<Token> tokens;
};

inline GradedElement parse_rhs(const std::vector<Token>& toks, std::size_t pos, const Scope& scope) {
    ExpressionParser ep(toks, pos, scope);
    GradedElement e = ep.parse_expression();
    if (ep.peek().kind != TokenKind::End)
        throw ParseError(ep.peek().line, ep.peek().column, "unexpected token after expression", ep.peek().text);
    return e;
}

inline void expect_symbol(const std::vector<Token>& toks, std::size_t pos, const char* s) {
    const Token& t = toks[pos];
    if (t.kind != TokenKind::Symbol || t.text != s)
        throw ParseError(t.line, t.column, std::string("expected '") + s + "'", t.text);
}

inline const Token& expect_identifier(const std::vector<Token>& toks, std::size_t pos, const char* what) {
    const Token& t = toks[pos];
    if (t.kind != TokenKind::Identifier)
        throw ParseError(t.line, t.column, std::string("expected ") + what, t.text);
    return t;
}

inline void expect_end(const std::vector<Token>& toks, std::size_t pos) {
    const Token& t = toks[pos];
    if (t.kind != TokenKind::End)
        throw ParseError(t.line, t.column, "unexpected trailing token", t.text);
}

} // namespace dsl

// Grammar, one statement per line, '#' to end of line is a comment:
//   algebra <name>
//   generator <ident> 1
//   d <ident> = <expr>
//   action <ident> order <int>
//   <action> <ident> = <expr>
//   element <ident> = <expr>          (named binding usable in later expressions)
// <expr> is a signed sum of terms "<rat>*<mono>", "<rat> <mono>", "<mono>" or
// "<rat>"; <rat> is p or p/q; <mono> is identifiers joined by '^'.
// Generators without a 'd' statement are closed.
inline PresentationSource parse_presentation(const std::string& text) {
    using namespace dsl;
    std::vector<Statement> stmts;
    {
        std::istringstream in(text);
        std::string line;
        std::size_t line_no = 0;
        while (std::getline(in, line)) {
            ++line_no;
            if (!line.empty() && line.back() == '\r')
                line.pop_back();
            auto toks = tokenize_line(line, line_no);
            if (toks.size() > 1)
                stmts.push_back({std::move(toks)});
        }
    }

    // Pass 1: declarations.
    std::optional<std::string> name;
    std::vector<std::string> gen_names;
    std::map<std::string, const Token*> gen_tokens;
    std::map<std::string, int> action_orders;
    std::vector<std::string> action_order_list;
    for (const auto& st : stmts) {
        const auto& t = st.tokens;
        const Token& head = t[0];
        if (head.kind != TokenKind::Identifier)
            throw ParseError(head.line, head.column, "expected a statement keyword", head.text);
        if (head.text == "algebra") {
            const Token& n = expect_identifier(t, 1, "an algebra name");
            if (name)
                throw ParseError(head.line, head.column, "duplicate 'algebra' statement", head.text);
            // names may contain '-' and digits, written without spaces
            std::string full = n.text;
            std::size_t j = 2;
            for (; t[j].kind != TokenKind::End; ++j) {
                const Token& prev = t[j - 1];
                const bool adjacent = t[j].column == prev.column + prev.text.size();
                const bool allowed = t[j].kind != TokenKind::Symbol || t[j].text == "-";
                if (!adjacent || !allowed)
                    break;
                full += t[j].text;
            }
            expect_end(t, j);
            name = full;
        } else if (head.text == "generator") {
            const Token& g = expect_identifier(t, 1, "a generator name");
            if (keywords().count(g.text))
                throw ParseError(g.line, g.column, "reserved word used as generator name", g.text);
            if (gen_tokens.count(g.text))
                throw ParseError(g.line, g.column, "duplicate generator '" + g.text + "'", g.text);
            const Token& deg = t[2];
            if (deg.kind != TokenKind::Number)
                throw ParseError(deg.line, deg.column, "expected generator degree", deg.text);
            if (deg.text != "1")
                throw ParseError(deg.line, deg.column, "only degree-1 generators are supported", deg.text);
            expect_end(t, 3);
            gen_tokens[g.text] = &g;
            gen_names.push_back(g.text);
        } else if (head.text == "action") {
            const Token& a = expect_identifier(t, 1, "an action name");
            if (keywords().count(a.text))
                throw ParseError(a.line, a.column, "reserved word used as action name", a.text);
            if (action_orders.count(a.text))
                throw ParseError(a.line, a.column, "duplicate action '" + a.text + "'", a.text);
            const Token& kw = t[2];
            if (kw.kind != TokenKind::Identifier || kw.text != "order")
                throw ParseError(kw.line, kw.column, "expected 'order'", kw.text);
            const Token& n = t[3];
            if (n.kind != TokenKind::Number)
                throw ParseError(n.line, n.column, "expected action order", n.text);
            if (n.text.size() > 6 || std::stoi(n.text) < 1)
                throw ParseError(n.line, n.column, "action order must be a positive integer", n.text);
            expect_end(t, 4);
            action_orders[a.text] = std::stoi(n.text);
            action_order_list.push_back(a.text);
        }
    }
    if (!name)
        throw ParseError(1, 1, "missing 'algebra' statement", "");
    for (const auto& a : action_order_list)
        if (gen_tokens.count(a)) {
            const Token* g = gen_tokens[a];
            throw ParseError(g->line, g->column, "name used both as generator and action", a);
        }
    TablePtr table;
    try {
        table = make_table(gen_names);
    } catch (const CdgaError& e) {
        throw ParseError(1, 1, e.what(), "");
    }

    // Pass 2: definitions, in source order.
    std::vector<std::pair<std::string, GradedElement>> bindings;
    Scope scope{table, &bindings};
    std::vector<std::optional<GradedElement>> images(table->size());
    std::vector<const Token*> d_tokens(table->size(), nullptr);
    std::map<std::string, std::vector<std::optional<GradedElement>>> action_images;
    for (const auto& a : action_order_list)
        action_images[a].resize(table->size());

    for (const auto& st : stmts) {
        const auto& t = st.tokens;
        const Token& head = t[0];
        if (head.text == "algebra" || head.text == "generator" || head.text == "action")
            continue;
        if (head.text == "d") {
            const Token& g = expect_identifier(t, 1, "a generator name");
            auto gi = table->find(g.text);
            if (!gi)
                throw ParseError(g.line, g.column, "unknown generator '" + g.text + "'", g.text);
            if (images[*gi])
                throw ParseError(g.line, g.column, "duplicate differential for '" + g.text + "'", g.text);
            expect_symbol(t, 2, "=");
            GradedElement rhs = parse_rhs(t, 3, scope);
            if (!rhs.is_homogeneous() || (!rhs.is_zero() && *rhs.degree() != 2))
                throw ParseError(t[3].line, t[3].column, "differential image of '" + g.text + "' is not of degree 2",
                                 t[3].text);
            images[*gi] = std::move(rhs);
            d_tokens[*gi] = &head;
        } else if (head.text == "element") {
            const Token& n = expect_identifier(t, 1, "an element name");
            if (keywords().count(n.text) || table->find(n.text) || action_orders.count(n.text))
                throw ParseError(n.line, n.column, "element name clashes with another name", n.text);
            for (const auto& b : bindings)
                if (b.first == n.text)
                    throw ParseError(n.line, n.column, "duplicate element '" + n.text + "'", n.text);
            expect_symbol(t, 2, "=");
            bindings.emplace_back(n.text, parse_rhs(t, 3, scope));
        } else if (action_orders.count(head.text)) {
            const Token& g = expect_identifier(t, 1, "a generator name");
            auto gi = table->find(g.text);
            if (!gi)
                throw ParseError(g.line, g.column, "unknown generator '" + g.text + "'", g.text);
            auto& slot = action_images[head.text][*gi];
            if (slot)
                throw ParseError(g.line, g.column, "duplicate image of '" + g.text + "' under '" + head.text + "'",
                                 g.text);
            expect_symbol(t, 2, "=");
            GradedElement rhs = parse_rhs(t, 3, scope);
            if (!rhs.is_homogeneous() || (!rhs.is_zero() && *rhs.degree() != 1))
                throw ParseError(t[3].line, t[3].column, "action image of '" + g.text + "' is not of degree 1",
                                 t[3].text);
            slot = std::move(rhs);
        } else {
            throw ParseError(head.line, head.column, "unknown statement", head.text);
        }
    }

    std::vector<GradedElement> d_images;
    for (auto& img : images)
        d_images.push_back(img ? std::move(*img) : GradedElement(table));
    auto dd = check_d_squared(table, d_images);
    if (!dd.pass) {
        const auto& f = dd.failures.front();
        const Token* at = d_tokens[*table->find(f.generator)];
        throw ParseError(at ? at->line : 1, at ? at->column : 1,
                         "d^2 != 0 on generator '" + f.generator + "': d(d " + f.generator + ") = " + f.dd.str(),
                         f.generator);
    }

    std::vector<ActionDecl> actions;
    for (const auto& a : action_order_list) {
        ActionDecl decl{a, action_orders[a], {}};
        for (std::size_t i = 0; i < table->size(); ++i) {
            auto& slot = action_images[a][i];
            if (!slot)
                throw ParseError(1, 1, "action '" + a + "' has no image for generator '" + table->name(i) + "'", a);
            decl.images.push_back(std::move(*slot));
        }
        actions.push_back(std::move(decl));
    }

    return PresentationSource{text, CdgaPresentation(*name, table, std::move(d_images)), std::move(actions),
                              std::move(bindings)};
}

// Parses a single expression against the source's generators and bindings.
inline GradedElement parse_element(const std::string& text, const PresentationSource& source) {
    auto toks = dsl::tokenize_line(text, 1);
    dsl::Scope scope{source.presentation.table(), &source.elements};
    return dsl::parse_rhs(toks, 0, scope);
}

inline GradedElement parse_element(const std::string& text, const CdgaPresentation& p) {
    auto toks = dsl::tokenize_line(text, 1);
    dsl::Scope scope{p.table(), nullptr};
    return dsl::parse_rhs(toks, 0, scope);
}

namespace dsl {

inline std::string rational_expression(const GradedElement& e) {
    for (const auto& [m, c] : e.terms())
        if (!c.is_rational())
            throw CdgaError("only rational coefficients can be written in the presentation language");
    return e.str();
}

} // namespace dsl

// Canonical text: every generator gets a 'd' line; element bindings are
// written fully expanded.
inline std::string serialize(const PresentationSource& src) {
    const auto& p = src.presentation;
    std::ostringstream os;
    os << "algebra " << p.name() << "\n";
    for (const auto& n : p.table()->names())
        os << "generator " << n << " 1\n";
    for (std::size_t i = 0; i < p.generator_count(); ++i)
        os << "d " << p.table()->name(i) << " = " << dsl::rational_expression(p.image(i)) << "\n";
    for (const auto& a : src.actions) {
        os << "action " << a.name << " order " << a.order << "\n";
        for (std::size_t i = 0; i < a.images.size(); ++i)
            os << a.name << " " << p.table()->name(i) << " = " << dsl::rational_expression(a.images[i]) << "\n";
    }
    for (const auto& [n, e] : src.elements)
        os << "element " << n << " = " << dsl::rational_expression(e) << "\n";
    return os.str();
}

inline std::string serialize(const CdgaPresentation& p) {
    return serialize(PresentationSource{"", p, {}, {}});
}

} // namespace nilcdga
