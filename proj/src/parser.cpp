#include "prodcheck/parser.hpp"

#include <cctype>
#include <fstream>
#include <map>
#include <sstream>

namespace prodcheck {

ParseError::ParseError(std::size_t line, std::size_t column, const std::string& message)
    : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
      line_(line), column_(column) {}

ArityError::ArityError(std::size_t line, std::size_t column, const std::string& symbol,
                       std::size_t expected, std::size_t found)
    : ParseError(line, column,
                 "symbol '" + symbol + "' used with arity " + std::to_string(found) +
                     " but previously with arity " + std::to_string(expected)),
      symbol_(symbol) {}

namespace {

enum class Tok { name, variable, lparen, rparen, comma, dot, neck, end };

struct Token {
    Tok kind;
    std::string text;
    std::size_t line;
    std::size_t column;
};

std::string describe(const Token& t) {
    switch (t.kind) {
    case Tok::end: return "end of input";
    case Tok::neck: return "':-'";
    default: return "'" + t.text + "'";
    }
}

class Lexer {
public:
    explicit Lexer(std::string_view src) : src_(src) {}

    Token next() {
        skip_blank();
        Token t{Tok::end, {}, line_, column_};
        if (pos_ >= src_.size()) return t;
        char c = src_[pos_];
        if (std::isalnum(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos_;
            while (pos_ < src_.size() &&
                   (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
                advance();
            t.text = std::string(src_.substr(start, pos_ - start));
            t.kind = (std::isupper(static_cast<unsigned char>(c)) || c == '_') ? Tok::variable : Tok::name;
            return t;
        }
        if (c == ':' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '-') {
            advance();
            advance();
            t.kind = Tok::neck;
            t.text = ":-";
            return t;
        }
        advance();
        t.text = std::string(1, c);
        switch (c) {
        case '(': t.kind = Tok::lparen; return t;
        case ')': t.kind = Tok::rparen; return t;
        case ',': t.kind = Tok::comma; return t;
        case '.': t.kind = Tok::dot; return t;
        default: throw ParseError(t.line, t.column, "unexpected character '" + t.text + "'");
        }
    }

private:
    void advance() {
        if (src_[pos_] == '\n') {
            ++line_;
            column_ = 1;
        } else {
            ++column_;
        }
        ++pos_;
    }

    void skip_blank() {
        while (pos_ < src_.size()) {
            char c = src_[pos_];
            if (c == '%') {
                while (pos_ < src_.size() && src_[pos_] != '\n') advance();
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                advance();
            } else {
                break;
            }
        }
    }

    std::string_view src_;
    std::size_t pos_ = 0;
    std::size_t line_ = 1;
    std::size_t column_ = 1;
};

class Parser {
public:
    explicit Parser(std::string_view src) : lex_(src) { cur_ = lex_.next(); }

    Program program() {
        std::vector<Clause> clauses;
        while (cur_.kind != Tok::end) clauses.push_back(clause());
        return Program(std::move(clauses));
    }

    Atom goal() {
        Atom a = atom();
        if (cur_.kind == Tok::dot) shift();
        if (cur_.kind != Tok::end) fail("expected end of goal, found " + describe(cur_));
        return a;
    }

private:
    Clause clause() {
        Clause c;
        c.head = atom();
        if (cur_.kind == Tok::neck) {
            shift();
            c.body.push_back(atom());
            while (cur_.kind == Tok::comma) {
                shift();
                c.body.push_back(atom());
            }
        }
        expect(Tok::dot, "'.' at end of clause");
        return c;
    }

    Atom atom() {
        if (cur_.kind != Tok::name) fail("expected a predicate name, found " + describe(cur_));
        Token head = cur_;
        shift();
        Atom a{head.text, arguments()};
        check_arity(predicate_arity_, head, a.args.size());
        return a;
    }

    std::vector<Term> arguments() {
        std::vector<Term> args;
        if (cur_.kind != Tok::lparen) return args;
        Token open = cur_;
        shift();
        args.push_back(term());
        while (cur_.kind == Tok::comma) {
            shift();
            args.push_back(term());
        }
        if (cur_.kind != Tok::rparen)
            fail("expected ',' or ')' to close '(' opened at " + std::to_string(open.line) + ":" +
                 std::to_string(open.column) + ", found " + describe(cur_));
        shift();
        return args;
    }

    Term term() {
        Token t = cur_;
        if (t.kind == Tok::variable) {
            shift();
            if (t.text == "_") return Term::variable("_G" + std::to_string(anonymous_++));
            return Term::variable(t.text);
        }
        if (t.kind != Tok::name) fail("expected a term, found " + describe(t));
        shift();
        auto args = arguments();
        check_arity(functor_arity_, t, args.size());
        return Term::compound(t.text, std::move(args));
    }

    void check_arity(std::map<std::string, std::size_t>& table, const Token& at, std::size_t arity) {
        auto [it, inserted] = table.emplace(at.text, arity);
        if (!inserted && it->second != arity) throw ArityError(at.line, at.column, at.text, it->second, arity);
    }

    void expect(Tok kind, const std::string& what) {
        if (cur_.kind != kind) fail("expected " + what + ", found " + describe(cur_));
        shift();
    }

    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(cur_.line, cur_.column, msg); }

    void shift() { cur_ = lex_.next(); }

    Lexer lex_;
    Token cur_;
    std::size_t anonymous_ = 0;
    std::map<std::string, std::size_t> predicate_arity_;
    std::map<std::string, std::size_t> functor_arity_;
};

} // namespace

Program parse_program(std::string_view text) { return Parser(text).program(); }

Atom parse_goal(std::string_view text) { return Parser(text).goal(); }

Program load_program(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw FileError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_program(ss.str());
}

} // namespace prodcheck
