#pragma once

#include <cctype>
#include <memory>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "qgrass/error.hpp"
#include "qgrass/oscillator.hpp"
#include "qgrass/representatives.hpp"

namespace qgrass {

// ---------------------------------------------------------------------------
// Surface syntax (stable public contract):
//   expr   := ['-'] term (('+'|'-') term)*
//   term   := factor (factor)*              ('*' optional between factors)
//   factor := atom ('^' ['-'] int)?         (negative exponents only on q)
//   atom   := 'a' | 'ad' | 'xi' | 'xibar' | 'dxi' | 'dxibar' | 'q'
//           | 'br(' int ')' | 'rad(' int ')' | int ('/' int)? | '(' expr ')'
// with q^m = zeta^m, br(n) = [n]_q, rad(n) = r_n.

enum class AtomKind { A, Ad, Xi, XiBar, DXi, DXiBar, QPow, Bracket, Rad, Lit };

struct ExprAst;
using AstPtr = std::shared_ptr<const ExprAst>;

struct ExprAst {
    enum class Tag { Sum, Product, Power, Atom };

    Tag tag = Tag::Atom;

    // Sum: parallel signs (+1/-1) and terms. Product: ordered factors.
    std::vector<int> signs;
    std::vector<AstPtr> children;

    // Power
    AstPtr base;
    long exponent = 0;

    // Atom
    AtomKind atom = AtomKind::Lit;
    long arg = 0;   // QPow exponent / Bracket n / Rad n
    Rational lit{0};
};

inline AstPtr ast_atom(AtomKind kind, long arg = 0) {
    auto n = std::make_shared<ExprAst>();
    n->tag = ExprAst::Tag::Atom;
    n->atom = kind;
    n->arg = arg;
    return n;
}

inline AstPtr ast_lit(Rational r) {
    auto n = std::make_shared<ExprAst>();
    n->tag = ExprAst::Tag::Atom;
    n->atom = AtomKind::Lit;
    n->lit = std::move(r);
    return n;
}

inline AstPtr ast_power(AstPtr base, long e) {
    auto n = std::make_shared<ExprAst>();
    n->tag = ExprAst::Tag::Power;
    n->base = std::move(base);
    n->exponent = e;
    return n;
}

inline AstPtr ast_product(std::vector<AstPtr> factors) {
    if (factors.size() == 1) return factors.front();
    auto n = std::make_shared<ExprAst>();
    n->tag = ExprAst::Tag::Product;
    n->children = std::move(factors);
    return n;
}

inline AstPtr ast_sum(std::vector<int> signs, std::vector<AstPtr> terms) {
    if (terms.size() == 1 && signs.front() == 1) return terms.front();
    auto n = std::make_shared<ExprAst>();
    n->tag = ExprAst::Tag::Sum;
    n->signs = std::move(signs);
    n->children = std::move(terms);
    return n;
}

inline bool ast_equal(const ExprAst& a, const ExprAst& b) {
    if (a.tag != b.tag) return false;
    switch (a.tag) {
        case ExprAst::Tag::Atom:
            return a.atom == b.atom && a.arg == b.arg && a.lit == b.lit;
        case ExprAst::Tag::Power:
            return a.exponent == b.exponent && ast_equal(*a.base, *b.base);
        case ExprAst::Tag::Product:
        case ExprAst::Tag::Sum: {
            if (a.children.size() != b.children.size() || a.signs != b.signs) return false;
            for (std::size_t i = 0; i < a.children.size(); ++i)
                if (!ast_equal(*a.children[i], *b.children[i])) return false;
            return true;
        }
    }
    return false;
}

/// Collapses singleton sums/products; the form the parser produces.
inline AstPtr normalize(const AstPtr& node) {
    switch (node->tag) {
        case ExprAst::Tag::Atom:
            return node;
        case ExprAst::Tag::Power:
            return ast_power(normalize(node->base), node->exponent);
        case ExprAst::Tag::Product: {
            std::vector<AstPtr> f;
            for (const auto& c : node->children) f.push_back(normalize(c));
            return ast_product(std::move(f));
        }
        case ExprAst::Tag::Sum: {
            std::vector<AstPtr> t;
            for (const auto& c : node->children) t.push_back(normalize(c));
            return ast_sum(node->signs, std::move(t));
        }
    }
    return node;
}

// ---------------------------------------------------------------------------
// Lexer

namespace detail {

struct Token {
    enum Type { Ident, Int, Plus, Minus, Star, Caret, Slash, LParen, RParen, End } type;
    std::string text;
    int line;
    int column;
};

inline std::vector<Token> lex(const std::string& src) {
    std::vector<Token> out;
    int line = 1, col = 1;
    std::size_t i = 0;
    auto push = [&](Token::Type t, std::string text, int l, int c) {
        out.push_back({t, std::move(text), l, c});
    };
    while (i < src.size()) {
        const char ch = src[i];
        if (ch == '\n') {
            ++line;
            col = 1;
            ++i;
            continue;
        }
        if (std::isspace(static_cast<unsigned char>(ch))) {
            ++col;
            ++i;
            continue;
        }
        const int at_line = line, at_col = col;
        if (std::isalpha(static_cast<unsigned char>(ch))) {
            std::string word;
            while (i < src.size() && std::isalnum(static_cast<unsigned char>(src[i]))) {
                word.push_back(src[i]);
                ++i;
                ++col;
            }
            push(Token::Ident, std::move(word), at_line, at_col);
            continue;
        }
        if (std::isdigit(static_cast<unsigned char>(ch))) {
            std::string digits;
            while (i < src.size() && std::isdigit(static_cast<unsigned char>(src[i]))) {
                digits.push_back(src[i]);
                ++i;
                ++col;
            }
            push(Token::Int, std::move(digits), at_line, at_col);
            continue;
        }
        Token::Type t;
        switch (ch) {
            case '+': t = Token::Plus; break;
            case '-': t = Token::Minus; break;
            case '*': t = Token::Star; break;
            case '^': t = Token::Caret; break;
            case '/': t = Token::Slash; break;
            case '(': t = Token::LParen; break;
            case ')': t = Token::RParen; break;
            default:
                throw syntax_error(std::string("unexpected character '") + ch + "'", at_line, at_col, {});
        }
        push(t, std::string(1, ch), at_line, at_col);
        ++i;
        ++col;
    }
    push(Token::End, "", line, col);
    return out;
}

class Parser {
public:
    explicit Parser(const std::string& src) : toks_(lex(src)) {}

    AstPtr parse() {
        AstPtr e = expr();
        expect(Token::End, "end of input");
        return e;
    }

private:
    static constexpr long kExponentBound = 1000000;

    const Token& peek() const { return toks_[pos_]; }
    const Token& advance() { return toks_[pos_++]; }

    bool accept(Token::Type t) {
        if (peek().type != t) return false;
        ++pos_;
        return true;
    }

    void expect(Token::Type t, const std::string& what) {
        if (!accept(t)) fail("unexpected token '" + describe(peek()) + "'", {what});
    }

    [[noreturn]] void fail(const std::string& msg, std::vector<std::string> expected) const {
        throw syntax_error(msg, peek().line, peek().column, std::move(expected));
    }

    static std::string describe(const Token& t) { return t.type == Token::End ? "<end>" : t.text; }

    long int_value(const Token& t, bool exponent_bounds) {
        if (exponent_bounds && t.text.size() > 7) throw exponent_overflow("exponent beyond 10^6");
        long v = 0;
        for (char c : t.text) {
            v = v * 10 + (c - '0');
            if (v > kExponentBound) {
                if (exponent_bounds) throw exponent_overflow("exponent beyond 10^6");
                break;  // literal magnitudes handled as Rational below
            }
        }
        return v;
    }

    bool starts_factor() const {
        const Token& t = peek();
        return t.type == Token::Ident || t.type == Token::Int || t.type == Token::LParen;
    }

    AstPtr expr() {
        std::vector<int> signs;
        std::vector<AstPtr> terms;
        signs.push_back(accept(Token::Minus) ? -1 : 1);
        terms.push_back(term());
        while (peek().type == Token::Plus || peek().type == Token::Minus) {
            signs.push_back(advance().type == Token::Plus ? 1 : -1);
            terms.push_back(term());
        }
        return ast_sum(std::move(signs), std::move(terms));
    }

    AstPtr term() {
        std::vector<AstPtr> factors;
        factors.push_back(factor());
        while (true) {
            if (accept(Token::Star)) {
                factors.push_back(factor());
                continue;
            }
            if (!starts_factor()) break;
            factors.push_back(factor());
        }
        return ast_product(std::move(factors));
    }

    AstPtr factor() {
        AstPtr base = atom();
        if (!accept(Token::Caret)) return base;
        const bool negative = accept(Token::Minus);
        if (peek().type != Token::Int) fail("exponent expected", {"integer"});
        const long e = int_value(advance(), true);
        if (base->tag == ExprAst::Tag::Atom && base->atom == AtomKind::QPow)
            return ast_atom(AtomKind::QPow, base->arg * (negative ? -e : e));
        if (negative) fail("negative exponents are only allowed on q", {"nonnegative integer"});
        return ast_power(std::move(base), e);
    }

    AstPtr atom() {
        const Token& t = peek();
        if (t.type == Token::LParen) {
            advance();
            AstPtr inner = expr();
            expect(Token::RParen, "')'");
            return inner;
        }
        if (t.type == Token::Int) {
            advance();
            const Rational num(BigInt(t.text));
            if (accept(Token::Slash)) {
                if (peek().type != Token::Int) fail("denominator expected", {"integer"});
                const Token& d = advance();
                const BigInt den(d.text);
                if (den == 0) throw syntax_error("zero denominator", d.line, d.column, {});
                return ast_lit(Rational(BigInt(t.text), den));
            }
            return ast_lit(num);
        }
        if (t.type == Token::Ident) {
            advance();
            const std::string& w = t.text;
            if (w == "a") return ast_atom(AtomKind::A);
            if (w == "ad") return ast_atom(AtomKind::Ad);
            if (w == "xi") return ast_atom(AtomKind::Xi);
            if (w == "xibar") return ast_atom(AtomKind::XiBar);
            if (w == "dxi") return ast_atom(AtomKind::DXi);
            if (w == "dxibar") return ast_atom(AtomKind::DXiBar);
            if (w == "q") return ast_atom(AtomKind::QPow, 1);
            if (w == "br" || w == "rad") {
                expect(Token::LParen, "'('");
                if (peek().type != Token::Int) fail("integer argument expected", {"integer"});
                const long n = int_value(advance(), true);
                expect(Token::RParen, "')'");
                return ast_atom(w == "br" ? AtomKind::Bracket : AtomKind::Rad, n);
            }
            throw syntax_error("unknown name '" + w + "'", t.line, t.column,
                               {"a", "ad", "xi", "xibar", "dxi", "dxibar", "q", "br", "rad"});
        }
        fail("atom expected", {"a", "ad", "xi", "xibar", "dxi", "dxibar", "q", "br", "rad", "integer", "'('"});
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
};

}  // namespace detail

inline AstPtr parse(const std::string& src) { return detail::Parser(src).parse(); }

// ---------------------------------------------------------------------------
// Printers

enum class PrintFormat { Text, Latex };

namespace detail {

inline std::string atom_text(const ExprAst& a, PrintFormat f) {
    const bool tex = f == PrintFormat::Latex;
    switch (a.atom) {
        case AtomKind::A: return "a";
        case AtomKind::Ad: return tex ? "a^{\\dagger}" : "ad";
        case AtomKind::Xi: return tex ? "\\xi" : "xi";
        case AtomKind::XiBar: return tex ? "\\bar\\xi" : "xibar";
        case AtomKind::DXi: return tex ? "d\\xi" : "dxi";
        case AtomKind::DXiBar: return tex ? "d\\bar\\xi" : "dxibar";
        case AtomKind::QPow: {
            if (a.arg == 1) return "q";
            std::ostringstream os;
            if (tex)
                os << "q^{" << a.arg << "}";
            else
                os << "q^" << a.arg;
            return os.str();
        }
        case AtomKind::Bracket: {
            std::ostringstream os;
            if (tex)
                os << "[" << a.arg << "]_q";
            else
                os << "br(" << a.arg << ")";
            return os.str();
        }
        case AtomKind::Rad: {
            std::ostringstream os;
            if (tex)
                os << "\\sqrt{[" << a.arg << "]_q}";
            else
                os << "rad(" << a.arg << ")";
            return os.str();
        }
        case AtomKind::Lit: {
            const BigInt num = rat_num(a.lit), den = rat_den(a.lit);
            std::ostringstream os;
            if (den == 1)
                os << num;
            else if (tex)
                os << "\\frac{" << num << "}{" << den << "}";
            else
                os << num << "/" << den;
            return os.str();
        }
    }
    return "?";
}

inline std::string print_node(const ExprAst& e, PrintFormat f);

inline std::string parenthesized(const ExprAst& e, PrintFormat f) {
    if (f == PrintFormat::Latex) return "\\left(" + print_node(e, f) + "\\right)";
    return "(" + print_node(e, f) + ")";
}

inline std::string print_node(const ExprAst& e, PrintFormat f) {
    switch (e.tag) {
        case ExprAst::Tag::Atom:
            return atom_text(e, f);
        case ExprAst::Tag::Power: {
            std::string base = (e.base->tag == ExprAst::Tag::Atom) ? print_node(*e.base, f)
                                                                   : parenthesized(*e.base, f);
            std::ostringstream os;
            if (f == PrintFormat::Latex)
                os << base << "^{" << e.exponent << "}";
            else
                os << base << "^" << e.exponent;
            return os.str();
        }
        case ExprAst::Tag::Product: {
            std::ostringstream os;
            for (std::size_t i = 0; i < e.children.size(); ++i) {
                if (i) os << " ";
                const ExprAst& c = *e.children[i];
                const bool wrap = c.tag == ExprAst::Tag::Sum || c.tag == ExprAst::Tag::Product;
                os << (wrap ? parenthesized(c, f) : print_node(c, f));
            }
            return os.str();
        }
        case ExprAst::Tag::Sum: {
            std::ostringstream os;
            for (std::size_t i = 0; i < e.children.size(); ++i) {
                if (i == 0) {
                    if (e.signs[i] < 0) os << "-";
                } else {
                    os << (e.signs[i] < 0 ? " - " : " + ");
                }
                const ExprAst& c = *e.children[i];
                os << (c.tag == ExprAst::Tag::Sum ? parenthesized(c, f) : print_node(c, f));
            }
            return os.str();
        }
    }
    return "?";
}

}  // namespace detail

inline std::string print(const ExprAst& e, PrintFormat f = PrintFormat::Text) {
    return detail::print_node(e, f);
}
inline std::string print(const AstPtr& e, PrintFormat f = PrintFormat::Text) { return print(*e, f); }

// ---------------------------------------------------------------------------
// Core-value printers. Text output stays inside the grammar (so it reparses)
// except for the q^{sN} factors of oscillator normal words, which have no
// input syntax.

namespace detail {

struct TermPieces {
    bool negative = false;
    std::vector<std::string> factors;  // joined with spaces; empty means "1"
};

inline std::string join_factors(const std::vector<std::string>& fs) {
    if (fs.empty()) return "1";
    std::string out;
    for (std::size_t i = 0; i < fs.size(); ++i) {
        if (i) out += " ";
        out += fs[i];
    }
    return out;
}

/// One cyclotomic basis term r * q^j as (negative?, factor strings).
inline TermPieces cyclo_term_pieces(const Rational& r, long j, PrintFormat f) {
    TermPieces t;
    Rational a = r;
    if (a < 0) {
        t.negative = true;
        a = -a;
    }
    const bool unit = (a == 1);
    if (!unit || j == 0) {
        ExprAst lit;
        lit.tag = ExprAst::Tag::Atom;
        lit.atom = AtomKind::Lit;
        lit.lit = a;
        t.factors.push_back(atom_text(lit, f));
    }
    if (j != 0) {
        ExprAst qp;
        qp.tag = ExprAst::Tag::Atom;
        qp.atom = AtomKind::QPow;
        qp.arg = j;
        t.factors.push_back(atom_text(qp, f));
    }
    return t;
}

inline std::string signed_join(const std::vector<TermPieces>& terms) {
    if (terms.empty()) return "0";
    std::string out;
    for (std::size_t i = 0; i < terms.size(); ++i) {
        if (i == 0) {
            if (terms[i].negative) out += "-";
        } else {
            out += terms[i].negative ? " - " : " + ";
        }
        out += join_factors(terms[i].factors);
    }
    return out;
}

}  // namespace detail

inline std::string print(const CyclotomicNumber& c, PrintFormat f = PrintFormat::Text) {
    if (c.is_zero()) return "0";
    if (const auto phase = c.as_phase_multiple())
        return detail::signed_join({detail::cyclo_term_pieces(phase->first, phase->second, f)});
    std::vector<detail::TermPieces> terms;
    for (std::size_t j = 0; j < c.coeffs().size(); ++j)
        if (c.coeffs()[j] != 0) terms.push_back(detail::cyclo_term_pieces(c.coeffs()[j], static_cast<long>(j), f));
    return detail::signed_join(terms);
}

namespace detail {

/// A RadicalScalar as term pieces, multiplying the given trailing letter
/// factors. Multi-term bodies get parenthesized.
inline TermPieces scalar_pieces(const RadicalScalar& s, std::vector<std::string> letters, PrintFormat f) {
    TermPieces t;
    std::vector<std::string> rads;
    for (long n = 1; n < s.order(); ++n)
        if (s.radical_bits() & (std::uint64_t{1} << (n - 1))) {
            ExprAst r;
            r.tag = ExprAst::Tag::Atom;
            r.atom = AtomKind::Rad;
            r.arg = n;
            rads.push_back(atom_text(r, f));
        }
    const auto phase = s.body().as_phase_multiple();
    if (phase && !s.body().is_zero()) {
        TermPieces body = cyclo_term_pieces(phase->first, phase->second, f);
        t.negative = body.negative;
        // drop a bare "1" factor when letters or radicals follow
        if (!(body.factors.size() == 1 && body.factors[0] == "1" && !(rads.empty() && letters.empty())))
            t.factors = body.factors;
    } else if (!s.body().is_zero()) {
        const std::string body = print(s.body(), f);
        t.factors.push_back(rads.empty() && letters.empty() ? body
                            : (f == PrintFormat::Latex ? "\\left(" + body + "\\right)" : "(" + body + ")"));
    }
    t.factors.insert(t.factors.end(), rads.begin(), rads.end());
    t.factors.insert(t.factors.end(), letters.begin(), letters.end());
    return t;
}

inline std::string power_string(const std::string& base, unsigned e, PrintFormat f) {
    if (e == 1) return base;
    std::ostringstream os;
    if (f == PrintFormat::Latex)
        os << base << "^{" << e << "}";
    else
        os << base << "^" << e;
    return os.str();
}

inline std::vector<std::string> monomial_letters(const GrassmannMonomial& m, PrintFormat f) {
    std::vector<std::string> out;
    const bool tex = f == PrintFormat::Latex;
    const bool multi = m.modes() > 1;
    for (int mode = 0; mode < m.modes(); ++mode) {
        const unsigned e = m.xi[static_cast<std::size_t>(mode)];
        if (!e) continue;
        std::string base = tex ? "\\xi" : "xi";
        if (multi) base += tex ? ("_{" + std::to_string(mode + 1) + "}") : std::to_string(mode + 1);
        out.push_back(power_string(base, e, f));
    }
    for (int mode = 0; mode < m.modes(); ++mode) {
        const unsigned e = m.xibar[static_cast<std::size_t>(mode)];
        if (!e) continue;
        std::string base = tex ? "\\bar\\xi" : "xibar";
        if (multi) base += tex ? ("_{" + std::to_string(mode + 1) + "}") : std::to_string(mode + 1);
        out.push_back(power_string(base, e, f));
    }
    return out;
}

}  // namespace detail

inline std::string print(const RadicalScalar& s, PrintFormat f = PrintFormat::Text) {
    if (s.is_zero()) return "0";
    return detail::signed_join({detail::scalar_pieces(s, {}, f)});
}

inline std::string print(const GrassmannPolynomial& p, PrintFormat f = PrintFormat::Text) {
    if (p.is_zero()) return "0";
    std::vector<detail::TermPieces> terms;
    for (const auto& [m, c] : p.terms())
        terms.push_back(detail::scalar_pieces(c, detail::monomial_letters(m, f), f));
    return detail::signed_join(terms);
}

inline std::string print(const MixedPolynomial& p, PrintFormat f = PrintFormat::Text) {
    if (p.is_zero()) return "0";
    const bool tex = f == PrintFormat::Latex;
    std::vector<detail::TermPieces> terms;
    for (const auto& [key, c] : p.terms()) {
        std::vector<std::string> letters = detail::monomial_letters(key.grassmann, f);
        const OscWord& o = key.oscillator;
        if (o.ad_pow) letters.push_back(detail::power_string(tex ? "a^{\\dagger}" : "ad", o.ad_pow, f));
        if (o.qn_pow) {
            // No input syntax for q^{sN}; printed for readability only.
            std::ostringstream os;
            if (tex)
                os << "q^{" << (o.qn_pow == 1 ? "" : std::to_string(o.qn_pow)) << "N}";
            else if (o.qn_pow == 1)
                os << "q^N";
            else
                os << "q^(" << o.qn_pow << "N)";
            letters.push_back(os.str());
        }
        if (o.a_pow) letters.push_back(detail::power_string("a", o.a_pow, f));
        terms.push_back(detail::scalar_pieces(c, std::move(letters), f));
    }
    return detail::signed_join(terms);
}

inline std::string print(const RepPolynomial& p, PrintFormat f = PrintFormat::Text) {
    return print(p.to_polynomial(), f);
}

}  // namespace qgrass
