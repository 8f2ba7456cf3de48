#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "aba/frontend.hpp"

namespace aba {

namespace {

enum class Tok { Ident, Number, LParen, RParen, Comma, Dot, Equals, Arrow, Plus, Minus, End };

struct Token {
    Tok kind;
    std::string text;
    std::size_t line;
    std::size_t column;
};

std::string_view describe(Tok k) {
    switch (k) {
        case Tok::Ident: return "identifier";
        case Tok::Number: return "number";
        case Tok::LParen: return "'('";
        case Tok::RParen: return "')'";
        case Tok::Comma: return "','";
        case Tok::Dot: return "'.'";
        case Tok::Equals: return "'='";
        case Tok::Arrow: return "'<-'";
        case Tok::Plus: return "'+'";
        case Tok::Minus: return "'-'";
        case Tok::End: return "end of input";
    }
    return "?";
}

class Lexer {
public:
    explicit Lexer(std::string_view text) : text_(text) {}

    std::vector<Token> run() {
        std::vector<Token> out;
        while (true) {
            skip();
            const std::size_t line = line_, col = col_;
            if (pos_ >= text_.size()) {
                out.push_back({Tok::End, "", line, col});
                return out;
            }
            const char c = text_[pos_];
            if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
                out.push_back({Tok::Ident, word(), line, col});
            } else if (std::isdigit(static_cast<unsigned char>(c))) {
                out.push_back({Tok::Number, word(), line, col});
            } else if (c == '<' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '-') {
                advance();
                advance();
                out.push_back({Tok::Arrow, "<-", line, col});
            } else {
                Tok k;
                switch (c) {
                    case '(': k = Tok::LParen; break;
                    case ')': k = Tok::RParen; break;
                    case ',': k = Tok::Comma; break;
                    case '.': k = Tok::Dot; break;
                    case '=': k = Tok::Equals; break;
                    case '+': k = Tok::Plus; break;
                    case '-': k = Tok::Minus; break;
                    default:
                        throw ParseError({line, col, std::string("unexpected character '") + c + "'"});
                }
                advance();
                out.push_back({k, std::string(1, c), line, col});
            }
        }
    }

private:
    void advance() {
        if (text_[pos_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++pos_;
    }

    void skip() {
        while (pos_ < text_.size()) {
            const char c = text_[pos_];
            if (c == '%') {
                while (pos_ < text_.size() && text_[pos_] != '\n') advance();
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                advance();
            } else {
                return;
            }
        }
    }

    std::string word() {
        std::string w;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
            w += text_[pos_];
            advance();
        }
        return w;
    }

    std::string_view text_;
    std::size_t pos_ = 0;
    std::size_t line_ = 1;
    std::size_t col_ = 1;
};

struct Literal {
    bool is_equality = false;
    Atom atom;
    Equality equality;
};

class Parser {
public:
    explicit Parser(std::string_view text) : toks_(Lexer(text).run()) {}

    bool at_end() const { return peek().kind == Tok::End; }
    const Token& peek(std::size_t ahead = 0) const {
        return toks_[std::min(pos_ + ahead, toks_.size() - 1)];
    }

    const Token& expect(Tok k) {
        if (peek().kind != k) fail("expected " + std::string(describe(k)) + ", found " + found());
        return toks_[pos_++];
    }
    bool accept(Tok k) {
        if (peek().kind != k) return false;
        ++pos_;
        return true;
    }

    [[noreturn]] void fail(const std::string& message) const {
        throw ParseError({peek().line, peek().column, message});
    }

    std::string found() const {
        const Token& t = peek();
        return t.kind == Tok::End ? "end of input" : "'" + t.text + "'";
    }

    bool keyword(std::string_view w) const {
        return peek().kind == Tok::Ident && peek().text == w &&
               (peek(1).kind == Tok::Ident || peek(1).kind == Tok::Number);
    }

    Term term() {
        const Token& t = peek();
        if (t.kind == Tok::Number) {
            ++pos_;
            return Term::constant(t.text);
        }
        if (t.kind != Tok::Ident) fail("expected a term, found " + found());
        ++pos_;
        return is_variable_name(t.text) ? Term::variable(t.text) : Term::constant(t.text);
    }

    Atom atom() {
        const Token& t = peek();
        if (t.kind != Tok::Ident) fail("expected an atom, found " + found());
        if (is_variable_name(t.text)) fail("predicate names must start with a lowercase letter: '" + t.text + "'");
        ++pos_;
        Atom a{t.text, {}};
        if (accept(Tok::LParen)) {
            a.args.push_back(term());
            while (accept(Tok::Comma)) a.args.push_back(term());
            expect(Tok::RParen);
        }
        return a;
    }

    Literal literal() {
        const Token& t = peek();
        const bool equality = t.kind == Tok::Number || (t.kind == Tok::Ident && is_variable_name(t.text)) ||
                              (t.kind == Tok::Ident && peek(1).kind == Tok::Equals);
        Literal l;
        if (equality) {
            l.is_equality = true;
            l.equality.left = term();
            expect(Tok::Equals);
            l.equality.right = term();
        } else {
            l.atom = atom();
        }
        return l;
    }

    Rule rule_body(Atom head) {
        Rule r;
        r.head = std::move(head);
        if (accept(Tok::Arrow)) {
            do {
                Literal l = literal();
                if (l.is_equality)
                    r.equalities.push_back(std::move(l.equality));
                else
                    r.body.push_back(std::move(l.atom));
            } while (accept(Tok::Comma));
        }
        return r;
    }

    AssumptionDecl assumption_decl() {
        expect(Tok::Ident);  // assumption
        AssumptionDecl d;
        d.assumption = atom();
        if (!(peek().kind == Tok::Ident && peek().text == "contrary"))
            fail("expected 'contrary', found " + found());
        ++pos_;
        d.contrary = atom();
        return d;
    }

    GroundAtom ground_atom() {
        const Token& start = peek();
        Atom a = atom();
        GroundAtom g{a.predicate, {}};
        for (const auto& t : a.args) {
            if (t.is_variable())
                throw ParseError({start.line, start.column, "example " + to_string(a) + " is not ground"});
            g.args.push_back(t.name);
        }
        return g;
    }

private:
    std::vector<Token> toks_;
    std::size_t pos_ = 0;
};

}  // namespace

SourceDocument load_document(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return SourceDocument{path, ss.str(), {}};
}

Framework parse_framework(std::string_view text) {
    Parser p(text);
    FrameworkBuilder b;
    while (!p.at_end()) {
        if (p.keyword("assumption")) {
            b.add_assumption(p.assumption_decl());
        } else if (p.keyword("universe")) {
            p.expect(Tok::Ident);
            do {
                Term c = p.term();
                if (c.is_variable()) p.fail("universe members must be constants");
                b.add_constant(c.name);
            } while (p.accept(Tok::Comma));
        } else {
            b.add_rule(p.rule_body(p.atom()));
        }
        p.expect(Tok::Dot);
    }
    Framework fw = std::move(b).build();
    require_valid(fw);
    return fw;
}

Framework parse_framework(SourceDocument& doc) {
    doc.diagnostics.clear();
    try {
        return parse_framework(doc.text);
    } catch (const ParseError& e) {
        doc.diagnostics.push_back(e.diagnostic());
    } catch (const ValidationError& e) {
        for (const auto& m : e.messages()) doc.diagnostics.push_back({0, 0, m});
        if (e.messages().empty()) doc.diagnostics.push_back({0, 0, e.what()});
    }
    return {};
}

ExampleSets parse_examples(std::string_view text) {
    Parser p(text);
    ExampleSets out;
    while (!p.at_end()) {
        const Token sign = p.peek();
        bool positive;
        if (p.accept(Tok::Plus))
            positive = true;
        else if (p.accept(Tok::Minus))
            positive = false;
        else
            p.fail("expected '+' or '-', found " + p.found());
        GroundAtom a = p.ground_atom();
        p.expect(Tok::Dot);
        auto& same = positive ? out.positives : out.negatives;
        auto& other = positive ? out.negatives : out.positives;
        if (other.count(a))
            throw ParseError({sign.line, sign.column, to_string(a) + " is both a positive and a negative example"});
        if (!same.insert(a).second)
            throw ParseError({sign.line, sign.column, "duplicate example " + to_string(a)});
    }
    return out;
}

GroundAtom parse_ground_atom(std::string_view text) {
    Parser p(text);
    GroundAtom a = p.ground_atom();
    p.accept(Tok::Dot);
    if (!p.at_end()) p.fail("unexpected " + p.found() + " after atom");
    return a;
}

Rule parse_rule(std::string_view text) {
    Parser p(text);
    Rule r = p.rule_body(p.atom());
    p.accept(Tok::Dot);
    if (!p.at_end()) p.fail("unexpected " + p.found() + " after rule");
    return normalise(std::move(r));
}

AssumptionDecl parse_assumption(std::string_view text) {
    Parser p(text);
    if (!p.keyword("assumption")) p.fail("expected an assumption declaration");
    AssumptionDecl d = p.assumption_decl();
    p.accept(Tok::Dot);
    if (!p.at_end()) p.fail("unexpected " + p.found() + " after declaration");
    return normalise(std::move(d));
}

}  // namespace aba
