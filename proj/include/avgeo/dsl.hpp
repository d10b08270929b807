#pragma once

#include <cctype>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "avgeo/rational.hpp"

namespace avgeo::dsl {

// ---------------------------------------------------------------------------
// Lexer
// ---------------------------------------------------------------------------

enum class Tok {
    ident,
    string, // double-quoted literal (file paths)
    number, // integer literal
    real,   // floating literal (only used by integrate arguments)
    ddx,    // d/d<name>
    lparen,
    rparen,
    lbrace,
    rbrace,
    lbracket,
    rbracket,
    comma,
    colon,
    equals,
    plus,
    minus,
    star,
    caret,
    slash,
    newline,
    end,
};

struct Token {
    Tok kind;
    std::string text;
    int line = 0;
    int col = 0;
};

struct ParseError : std::runtime_error {
    int line;
    int col;
    std::string expected;
    ParseError(int l, int c, const std::string& msg, std::string exp = "")
        : std::runtime_error("parse error at " + std::to_string(l) + ":" + std::to_string(c) +
                             ": " + msg + (exp.empty() ? "" : " (expected " + exp + ")")),
          line(l), col(c), expected(std::move(exp)) {}
};

inline std::vector<Token> lex(const std::string& text) {
    std::vector<Token> out;
    int line = 1, col = 1;
    size_t i = 0;
    auto push = [&](Tok k, std::string s, int l, int c) { out.push_back({k, std::move(s), l, c}); };
    while (i < text.size()) {
        char ch = text[i];
        if (ch == '\n') {
            push(Tok::newline, "\n", line, col);
            ++line;
            col = 1;
            ++i;
            continue;
        }
        if (ch == ' ' || ch == '\t' || ch == '\r') {
            ++i;
            ++col;
            continue;
        }
        if (ch == '#') { // comment to end of line
            while (i < text.size() && text[i] != '\n') ++i;
            continue;
        }
        int tl = line, tc = col;
        if (ch == '"') {
            size_t j = i + 1;
            while (j < text.size() && text[j] != '"' && text[j] != '\n') ++j;
            if (j >= text.size() || text[j] != '"')
                throw ParseError(tl, tc, "unterminated string literal");
            push(Tok::string, text.substr(i + 1, j - i - 1), tl, tc);
            col += int(j + 1 - i);
            i = j + 1;
            continue;
        }
        if (std::isalpha((unsigned char)ch) || ch == '_') {
            size_t j = i;
            while (j < text.size() && (std::isalnum((unsigned char)text[j]) || text[j] == '_'))
                ++j;
            std::string word = text.substr(i, j - i);
            // d/d<name> lexes as one derivation token
            if (word == "d" && j + 1 < text.size() && text[j] == '/' && text[j + 1] == 'd') {
                size_t k = j + 2;
                size_t name_start = k;
                while (k < text.size() &&
                       (std::isalnum((unsigned char)text[k]) || text[k] == '_'))
                    ++k;
                if (k > name_start) {
                    push(Tok::ddx, text.substr(name_start, k - name_start), tl, tc);
                    col += int(k - i);
                    i = k;
                    continue;
                }
            }
            push(Tok::ident, word, tl, tc);
            col += int(j - i);
            i = j;
            continue;
        }
        if (std::isdigit((unsigned char)ch)) {
            size_t j = i;
            bool real = false;
            while (j < text.size() && std::isdigit((unsigned char)text[j])) ++j;
            if (j < text.size() && text[j] == '.') {
                real = true;
                ++j;
                while (j < text.size() && std::isdigit((unsigned char)text[j])) ++j;
            }
            if (j < text.size() && (text[j] == 'e' || text[j] == 'E')) {
                size_t k = j + 1;
                if (k < text.size() && (text[k] == '+' || text[k] == '-')) ++k;
                if (k < text.size() && std::isdigit((unsigned char)text[k])) {
                    real = true;
                    j = k;
                    while (j < text.size() && std::isdigit((unsigned char)text[j])) ++j;
                }
            }
            push(real ? Tok::real : Tok::number, text.substr(i, j - i), tl, tc);
            col += int(j - i);
            i = j;
            continue;
        }
        Tok k;
        switch (ch) {
            case '(': k = Tok::lparen; break;
            case ')': k = Tok::rparen; break;
            case '{': k = Tok::lbrace; break;
            case '}': k = Tok::rbrace; break;
            case '[': k = Tok::lbracket; break;
            case ']': k = Tok::rbracket; break;
            case ',': k = Tok::comma; break;
            case ':': k = Tok::colon; break;
            case '=': k = Tok::equals; break;
            case '+': k = Tok::plus; break;
            case '-': k = Tok::minus; break;
            case '*': k = Tok::star; break;
            case '^': k = Tok::caret; break;
            case '/': k = Tok::slash; break;
            default:
                throw ParseError(line, col, std::string("unexpected character '") + ch + "'");
        }
        push(k, std::string(1, ch), tl, tc);
        ++i;
        ++col;
    }
    out.push_back({Tok::end, "", line, col});
    return out;
}

// ---------------------------------------------------------------------------
// Expression AST
// ---------------------------------------------------------------------------

struct Expr;
using ExprPtr = std::shared_ptr<Expr>;

struct Expr {
    enum class Kind { number, name, deriv, call, unary_minus, add, sub, mul, pow_or_wedge };
    Kind kind;
    Rational value;           // number
    std::string name;         // name / deriv / call
    std::vector<ExprPtr> args;
    int line = 0, col = 0;

    std::string render() const {
        switch (kind) {
            case Kind::number: return value.str();
            case Kind::name: return name;
            case Kind::deriv: return "d/d" + name;
            case Kind::call: {
                std::string s = name + "(";
                for (size_t i = 0; i < args.size(); ++i)
                    s += (i ? ", " : "") + args[i]->render();
                return s + ")";
            }
            case Kind::unary_minus: return "-" + args[0]->render();
            case Kind::add: return "(" + args[0]->render() + " + " + args[1]->render() + ")";
            case Kind::sub: return "(" + args[0]->render() + " - " + args[1]->render() + ")";
            case Kind::mul: return args[0]->render() + "*" + args[1]->render();
            case Kind::pow_or_wedge: return args[0]->render() + "^" + args[1]->render();
        }
        return "?";
    }
};

// ---------------------------------------------------------------------------
// Statements
// ---------------------------------------------------------------------------

struct Statement {
    // decl kinds: space, chart, avbundle, section, gauge, tensor, rzsection,
    //             affpoisson, affjacobi, affgebroid, newton
    // command kinds: check, bracket, dual, construct, dynamics, integrate, report
    std::string kind;
    std::string name;                       // declared name or primary operand
    std::vector<std::string> words;         // flat keyword arguments
    std::vector<ExprPtr> exprs;             // expression arguments in order
    std::vector<std::pair<std::string, ExprPtr>> fields; // brace-field arguments
    std::vector<Rational> numbers;          // vector literals like v0=[...]
    double real1 = 0, real2 = 0;            // numeric arguments (integrate)
    int line = 0, col = 0;

    std::string render() const;
};

struct Script {
    std::vector<Statement> statements;

    std::string render() const {
        std::string s;
        for (const auto& st : statements) s += st.render() + "\n";
        return s;
    }
};

// ---------------------------------------------------------------------------
// Parser
// ---------------------------------------------------------------------------

class Parser {
  public:
    explicit Parser(std::string text) : toks_(lex(text)) {}

    Script parse() {
        Script s;
        skip_newlines();
        while (!at(Tok::end)) {
            s.statements.push_back(statement());
            if (!at(Tok::end)) expect_newline();
            skip_newlines();
        }
        return s;
    }

    /// Expression entry point used by tests.
    ExprPtr parse_expression() {
        ExprPtr e = expr();
        if (!at(Tok::end) && !at(Tok::newline))
            throw err("trailing input after expression", "end of input");
        return e;
    }

  private:
    const Token& cur() const { return toks_[pos_]; }
    bool at(Tok k) const { return cur().kind == k; }
    bool at_word(const char* w) const { return at(Tok::ident) && cur().text == w; }
    Token eat() { return toks_[pos_++]; }
    ParseError err(const std::string& msg, std::string expected = "") const {
        return ParseError(cur().line, cur().col, msg, std::move(expected));
    }
    Token expect(Tok k, const char* what) {
        if (!at(k)) throw err("got '" + cur().text + "'", what);
        return eat();
    }
    void expect_newline() {
        if (at(Tok::end)) return;
        if (!at(Tok::newline)) throw err("got '" + cur().text + "'", "end of statement");
        eat();
    }
    void skip_newlines() {
        while (at(Tok::newline)) eat();
    }
    std::string ident(const char* what) { return expect(Tok::ident, what).text; }

    Statement statement() {
        if (!at(Tok::ident)) throw err("got '" + cur().text + "'", "statement keyword");
        Statement st;
        st.line = cur().line;
        st.col = cur().col;
        std::string kw = eat().text;
        st.kind = kw;
        if (kw == "space") return space_decl(st);
        if (kw == "chart") return chart_decl(st);
        if (kw == "avbundle") return avbundle_decl(st);
        if (kw == "section" || kw == "gauge" || kw == "tensor") return valued_decl(st);
        if (kw == "rzsection") return rzsection_decl(st);
        if (kw == "affpoisson" || kw == "affjacobi") return structure_decl(st);
        if (kw == "affgebroid") return affgebroid_decl(st);
        if (kw == "newton") return newton_decl(st);
        if (kw == "check") return check_cmd(st);
        if (kw == "bracket") return bracket_cmd(st);
        if (kw == "dual") return dual_cmd(st);
        if (kw == "construct") return construct_cmd(st);
        if (kw == "dynamics") return dynamics_cmd(st);
        if (kw == "integrate") return integrate_cmd(st);
        if (kw == "report") return st;
        throw ParseError(st.line, st.col, "unknown statement '" + kw + "'",
                         "declaration or command");
    }

    Statement space_decl(Statement st) {
        st.name = ident("space name");
        std::string kind = ident("space kind (affine|special)");
        if (kind != "affine" && kind != "special")
            throw err("unknown space kind '" + kind + "'", "affine or special");
        st.words.push_back(kind);
        if (!at_word("dim")) throw err("got '" + cur().text + "'", "dim");
        eat();
        st.numbers.push_back(Rational::parse(expect(Tok::number, "dimension").text));
        if (at(Tok::ident) && cur().text == "v0") {
            eat();
            expect(Tok::equals, "=");
            st.numbers.push_back(Rational(0)); // marker replaced by count below
            size_t mark = st.numbers.size() - 1;
            expect(Tok::lbracket, "[");
            std::vector<Rational> entries;
            if (!at(Tok::rbracket)) {
                entries.push_back(rational_literal());
                while (at(Tok::comma)) {
                    eat();
                    entries.push_back(rational_literal());
                }
            }
            expect(Tok::rbracket, "]");
            st.numbers[mark] = Rational((long long)entries.size());
            for (auto& e : entries) st.numbers.push_back(e);
        }
        return st;
    }

    Rational rational_literal() {
        bool neg = false;
        if (at(Tok::minus)) {
            eat();
            neg = true;
        }
        Rational r = Rational::parse(expect(Tok::number, "number").text);
        if (at(Tok::slash)) {
            eat();
            r = r / Rational::parse(expect(Tok::number, "number").text);
        }
        return neg ? -r : r;
    }

    Statement chart_decl(Statement st) {
        st.name = ident("chart name");
        expect(Tok::lparen, "(");
        st.words.push_back(ident("coordinate"));
        while (at(Tok::comma)) {
            eat();
            st.words.push_back(ident("coordinate"));
        }
        expect(Tok::rparen, ")");
        return st;
    }

    Statement avbundle_decl(Statement st) {
        st.name = ident("bundle name");
        if (!at_word("base")) throw err("got '" + cur().text + "'", "base");
        eat();
        expect(Tok::lparen, "(");
        st.words.push_back(ident("coordinate"));
        while (at(Tok::comma)) {
            eat();
            st.words.push_back(ident("coordinate"));
        }
        expect(Tok::rparen, ")");
        if (!at_word("fiber")) throw err("got '" + cur().text + "'", "fiber");
        eat();
        expect(Tok::lparen, "(");
        std::string fiber = ident("fiber coordinate");
        expect(Tok::rparen, ")");
        st.words.push_back(fiber); // final word is the fiber
        return st;
    }

    Statement valued_decl(Statement st) {
        st.name = ident("name");
        if (at_word("on")) {
            eat();
            st.words.push_back(ident("carrier name"));
        }
        expect(Tok::equals, "=");
        st.exprs.push_back(expr());
        return st;
    }

    Statement rzsection_decl(Statement st) {
        st.name = ident("name");
        if (at_word("on")) {
            eat();
            st.words.push_back(ident("bundle name"));
        }
        expect(Tok::equals, "=");
        expect(Tok::lparen, "(");
        for (const char* field : {"X", "alpha", "beta", "gamma"}) {
            std::string got = ident("field name");
            if (got != field) throw err("field '" + got + "'", field);
            expect(Tok::colon, ":");
            st.fields.emplace_back(field, expr());
            if (field != std::string("gamma")) expect(Tok::comma, ",");
        }
        expect(Tok::rparen, ")");
        return st;
    }

    Statement structure_decl(Statement st) {
        st.name = ident("name");
        if (at_word("on")) {
            eat();
            st.words.push_back(ident("bundle name"));
        }
        expect(Tok::lbrace, "{");
        while (!at(Tok::rbrace)) {
            std::string field = ident("field name");
            expect(Tok::colon, ":");
            st.fields.emplace_back(field, expr());
            if (at(Tok::comma)) eat();
        }
        expect(Tok::rbrace, "}");
        return st;
    }

    Statement affgebroid_decl(Statement st) {
        st.name = ident("name");
        expect(Tok::equals, "=");
        std::string builder = ident("builder");
        st.words.push_back(builder);
        expect(Tok::lparen, "(");
        st.words.push_back(ident("operand"));
        expect(Tok::rparen, ")");
        return st;
    }

    Statement newton_decl(Statement st) {
        st.name = ident("name");
        if (!at_word("metric")) throw err("got '" + cur().text + "'", "metric");
        eat();
        if (!at_word("diag")) throw err("got '" + cur().text + "'", "diag");
        eat();
        expect(Tok::lparen, "(");
        st.numbers.push_back(rational_literal());
        expect(Tok::comma, ",");
        st.numbers.push_back(rational_literal());
        expect(Tok::comma, ",");
        st.numbers.push_back(rational_literal());
        expect(Tok::rparen, ")");
        if (!at_word("mass")) throw err("got '" + cur().text + "'", "mass");
        eat();
        st.numbers.push_back(rational_literal());
        return st;
    }

    Statement check_cmd(Statement st) {
        std::string what = ident("check kind");
        st.words.push_back(what);
        if (what == "canonical" || what == "axioms" || what == "contact") {
            st.name = ident("target");
        } else if (what == "closure") {
            st.name = ident("subbundle tag");
            while (at(Tok::ident)) st.words.push_back(eat().text);
        } else if (what == "duality") {
            st.name = ident("theorem id");
            while (at(Tok::ident)) st.words.push_back(eat().text);
        } else {
            throw err("unknown check '" + what + "'",
                      "canonical, axioms, contact, closure, or duality");
        }
        return st;
    }

    Statement bracket_cmd(Statement st) {
        std::string what = ident("bracket kind");
        st.words.push_back(what);
        if (what != "vertical" && what != "schouten" && what != "rz" && what != "aff" &&
            what != "contact")
            throw err("unknown bracket '" + what + "'",
                      "vertical, schouten, rz, aff, or contact");
        if (what == "vertical" || what == "contact" || what == "aff")
            st.name = ident("carrier name");
        st.exprs.push_back(expr());
        st.exprs.push_back(expr());
        return st;
    }

    Statement dual_cmd(Statement st) {
        if (at_word("special")) {
            eat();
            st.words.push_back("special");
        }
        st.name = ident("space name");
        return st;
    }

    Statement construct_cmd(Statement st) {
        st.words.push_back(ident("construction kind"));
        st.words.push_back(ident("operand"));
        st.words.push_back(ident("operand"));
        if (!at_word("as")) throw err("got '" + cur().text + "'", "as");
        eat();
        st.name = ident("result name");
        return st;
    }

    Statement dynamics_cmd(Statement st) {
        std::string what = ident("dynamics kind");
        st.words.push_back(what);
        if (what == "newton") {
            st.words.push_back(ident("spacetime name"));
            if (!at_word("potential")) throw err("got '" + cur().text + "'", "potential");
            eat();
            st.exprs.push_back(expr());
        } else if (what == "timedep") {
            if (!at_word("dof")) throw err("got '" + cur().text + "'", "dof");
            eat();
            st.numbers.push_back(Rational::parse(expect(Tok::number, "dof count").text));
            if (!at_word("hamiltonian")) throw err("got '" + cur().text + "'", "hamiltonian");
            eat();
            st.exprs.push_back(expr());
        } else {
            throw err("unknown dynamics '" + what + "'", "newton or timedep");
        }
        if (!at_word("as")) throw err("got '" + cur().text + "'", "as");
        eat();
        st.name = ident("result name");
        return st;
    }

    Statement integrate_cmd(Statement st) {
        st.name = ident("field name");
        if (!at_word("dt")) throw err("got '" + cur().text + "'", "dt");
        eat();
        st.real1 = std::stod(at(Tok::real) ? eat().text : expect(Tok::number, "dt value").text);
        if (!at_word("steps")) throw err("got '" + cur().text + "'", "steps");
        eat();
        st.real2 = std::stod(expect(Tok::number, "step count").text);
        if (at_word("start")) {
            eat();
            expect(Tok::lbracket, "[");
            st.numbers.push_back(rational_literal());
            while (at(Tok::comma)) {
                eat();
                st.numbers.push_back(rational_literal());
            }
            expect(Tok::rbracket, "]");
        }
        if (at_word("out")) {
            eat();
            st.words.push_back(expect(Tok::string, "quoted output path").text);
        }
        return st;
    }

    // expression grammar; '^' wedges tensor atoms and raises polynomials to
    // integer powers, resolved during evaluation
    ExprPtr expr() {
        ExprPtr e = term();
        while (at(Tok::plus) || at(Tok::minus)) {
            bool plus = at(Tok::plus);
            Token op = eat();
            ExprPtr rhs = term();
            auto n = std::make_shared<Expr>();
            n->kind = plus ? Expr::Kind::add : Expr::Kind::sub;
            n->args = {e, rhs};
            n->line = op.line;
            n->col = op.col;
            e = n;
        }
        return e;
    }

    ExprPtr term() {
        ExprPtr e = power();
        while (at(Tok::star)) {
            Token op = eat();
            ExprPtr rhs = power();
            auto n = std::make_shared<Expr>();
            n->kind = Expr::Kind::mul;
            n->args = {e, rhs};
            n->line = op.line;
            n->col = op.col;
            e = n;
        }
        return e;
    }

    ExprPtr power() {
        ExprPtr e = atom();
        while (at(Tok::caret)) {
            Token op = eat();
            ExprPtr rhs = atom();
            auto n = std::make_shared<Expr>();
            n->kind = Expr::Kind::pow_or_wedge;
            n->args = {e, rhs};
            n->line = op.line;
            n->col = op.col;
            e = n;
        }
        return e;
    }

    ExprPtr atom() {
        auto n = std::make_shared<Expr>();
        n->line = cur().line;
        n->col = cur().col;
        if (at(Tok::minus)) {
            eat();
            n->kind = Expr::Kind::unary_minus;
            n->args = {atom()};
            return n;
        }
        if (at(Tok::number)) {
            n->kind = Expr::Kind::number;
            n->value = Rational::parse(eat().text);
            if (at(Tok::slash)) {
                eat();
                n->value = n->value / Rational::parse(expect(Tok::number, "denominator").text);
            }
            return n;
        }
        if (at(Tok::ddx)) {
            n->kind = Expr::Kind::deriv;
            n->name = eat().text;
            return n;
        }
        if (at(Tok::ident)) {
            n->name = eat().text;
            if (at(Tok::lparen)) {
                eat();
                n->kind = Expr::Kind::call;
                if (!at(Tok::rparen)) {
                    n->args.push_back(expr());
                    while (at(Tok::comma)) {
                        eat();
                        n->args.push_back(expr());
                    }
                }
                expect(Tok::rparen, ")");
                return n;
            }
            n->kind = Expr::Kind::name;
            return n;
        }
        if (at(Tok::lparen)) {
            eat();
            ExprPtr e = expr();
            expect(Tok::rparen, ")");
            return e;
        }
        throw err("got '" + cur().text + "'", "identifier, number, or (");
    }

    std::vector<Token> toks_;
    size_t pos_ = 0;
};

inline Script parse(const std::string& text) { return Parser(text).parse(); }

inline std::string Statement::render() const {
    std::string s = kind;
    auto word = [&](size_t i) { return i < words.size() ? words[i] : std::string(); };
    if (kind == "space") {
        s += " " + name + " " + word(0) + " dim " + numbers[0].str();
        if (numbers.size() > 1) {
            s += " v0=[";
            long long cnt = numbers[1].num();
            for (long long i = 0; i < cnt; ++i)
                s += (i ? "," : "") + numbers[2 + i].str();
            s += "]";
        }
    } else if (kind == "chart") {
        s += " " + name + "(";
        for (size_t i = 0; i < words.size(); ++i) s += (i ? "," : "") + words[i];
        s += ")";
    } else if (kind == "avbundle") {
        s += " " + name + " base(";
        for (size_t i = 0; i + 1 < words.size(); ++i) s += (i ? "," : "") + words[i];
        s += ") fiber(" + words.back() + ")";
    } else if (kind == "section" || kind == "gauge" || kind == "tensor") {
        s += " " + name;
        if (!words.empty()) s += " on " + words[0];
        s += " = " + exprs[0]->render();
    } else if (kind == "rzsection") {
        s += " " + name;
        if (!words.empty()) s += " on " + words[0];
        s += " = (";
        for (size_t i = 0; i < fields.size(); ++i)
            s += (i ? ", " : "") + fields[i].first + ": " + fields[i].second->render();
        s += ")";
    } else if (kind == "affpoisson" || kind == "affjacobi") {
        s += " " + name;
        if (!words.empty()) s += " on " + words[0];
        s += " { ";
        for (size_t i = 0; i < fields.size(); ++i)
            s += (i ? ", " : "") + fields[i].first + ": " + fields[i].second->render();
        s += " }";
    } else if (kind == "affgebroid") {
        s += " " + name + " = " + word(0) + "(" + word(1) + ")";
    } else if (kind == "newton") {
        s += " " + name + " metric diag(" + numbers[0].str() + "," + numbers[1].str() + "," +
             numbers[2].str() + ") mass " + numbers[3].str();
    } else if (kind == "check") {
        s += " " + word(0) + " " + name;
        for (size_t i = 1; i < words.size(); ++i) s += " " + words[i];
    } else if (kind == "bracket") {
        s += " " + word(0);
        if (!name.empty()) s += " " + name;
        s += " " + exprs[0]->render() + " " + exprs[1]->render();
    } else if (kind == "dual") {
        if (!words.empty()) s += " special";
        s += " " + name;
    } else if (kind == "construct") {
        s += " " + word(0) + " " + word(1) + " " + word(2) + " as " + name;
    } else if (kind == "dynamics") {
        s += " " + word(0);
        if (word(0) == "newton")
            s += " " + word(1) + " potential " + exprs[0]->render();
        else
            s += " dof " + numbers[0].str() + " hamiltonian " + exprs[0]->render();
        s += " as " + name;
    } else if (kind == "integrate") {
        std::ostringstream os;
        os << " " << name << " dt " << real1 << " steps " << (long long)real2;
        s += os.str();
        if (!numbers.empty()) {
            s += " start [";
            for (size_t i = 0; i < numbers.size(); ++i) s += (i ? "," : "") + numbers[i].str();
            s += "]";
        }
        if (!words.empty()) s += " out \"" + words[0] + "\"";
    }
    return s;
}

} // namespace avgeo::dsl
