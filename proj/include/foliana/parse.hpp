// Polynomial text grammar:
//   expr    := ['+'|'-'] term (('+'|'-') term)*
//   term    := factor (('*'|'/') factor)*
//   factor  := base ('^' uint)?
//   base    := 'x' | 'y' | 'i' | literal | '(' expr ')'
//   literal := decimal real, optional exponent part, optional 'i' suffix
// Whitespace is insignificant. '/' is accepted only with a nonzero constant
// divisor (exact rationals print as e.g. "2/3" and must re-parse).
// All literals parse to exact Gaussian rationals.
#ifndef FOLIANA_PARSE_HPP
#define FOLIANA_PARSE_HPP

#include "poly.hpp"

#include <cctype>
#include <cstdio>
#include <sstream>
#include <string>

namespace foliana {

struct ParseError : std::runtime_error {
    int line, col;
    ParseError(const std::string& msg, int line_, int col_)
        : std::runtime_error(msg + " at line " + std::to_string(line_) + ", column " + std::to_string(col_)),
          line(line_), col(col_) {}
};

namespace detail {

class PolyParser {
public:
    explicit PolyParser(const std::string& s) : s_(s) {}

    Poly2 parse() {
        skip_ws();
        if (pos_ >= s_.size()) fail("empty polynomial text");
        Poly2 p = parse_expr();
        skip_ws();
        if (pos_ < s_.size()) fail(std::string("unexpected character '") + s_[pos_] + "'");
        for (const auto& [e, c] : p.terms())
            if (!is_finite(c.value())) fail("literal overflow: coefficient exceeds double range");
        return p;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, line_, col_); }

    void advance() {
        if (pos_ < s_.size()) {
            if (s_[pos_] == '\n') { ++line_; col_ = 1; }
            else ++col_;
            ++pos_;
        }
    }
    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) advance();
    }
    char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
    bool accept(char c) {
        skip_ws();
        if (peek() == c) { advance(); return true; }
        return false;
    }

    Poly2 parse_expr() {
        skip_ws();
        bool neg = false;
        if (peek() == '+' || peek() == '-') { neg = (peek() == '-'); advance(); }
        Poly2 acc = parse_term();
        if (neg) acc = -acc;
        for (;;) {
            skip_ws();
            char c = peek();
            if (c == '+') { advance(); acc = acc + parse_term(); }
            else if (c == '-') { advance(); acc = acc - parse_term(); }
            else break;
        }
        return acc;
    }

    Poly2 parse_term() {
        Poly2 acc = parse_factor();
        for (;;) {
            skip_ws();
            char c = peek();
            if (c == '*') { advance(); acc = acc * parse_factor(); }
            else if (c == '/') {
                advance();
                Poly2 d = parse_factor();
                if (!d.is_constant() || d.empty())
                    fail("division is only supported by a nonzero constant");
                acc = acc * (Coeff(1) / d.coeff(0, 0));
            } else break;
        }
        return acc;
    }

    Poly2 parse_factor() {
        Poly2 base = parse_base();
        skip_ws();
        if (peek() == '^') {
            advance();
            skip_ws();
            if (peek() == '-')
                fail("exponent not a nonnegative integer");
            if (!std::isdigit(static_cast<unsigned char>(peek())))
                fail("exponent not a nonnegative integer");
            long e = 0;
            while (std::isdigit(static_cast<unsigned char>(peek()))) {
                e = e * 10 + (peek() - '0');
                if (e > 512) fail("exponent too large (cap 512)");
                advance();
            }
            if (peek() == '.') fail("exponent not a nonnegative integer");
            Poly2 r = Poly2::constant(Coeff(1));
            Poly2 b = base;
            long k = e;
            while (k > 0) {
                if (k & 1) r = r * b;
                b = b * b;
                k >>= 1;
            }
            return r;
        }
        return base;
    }

    Poly2 parse_base() {
        skip_ws();
        char c = peek();
        if (c == 'x') { advance(); return Poly2::x(); }
        if (c == 'y') { advance(); return Poly2::y(); }
        if (c == 'i') { advance(); return Poly2::constant(Coeff::i()); }
        if (c == '(') {
            advance();
            Poly2 inner = parse_expr();
            skip_ws();
            if (!accept(')')) fail("expected ')'");
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_literal();
        fail(std::string("unexpected character '") + (c ? std::string(1, c) : std::string("<eof>")) + "'");
    }

    Poly2 parse_literal() {
        std::string digits, frac;
        while (std::isdigit(static_cast<unsigned char>(peek()))) { digits += peek(); advance(); }
        if (peek() == '.') {
            advance();
            while (std::isdigit(static_cast<unsigned char>(peek()))) { frac += peek(); advance(); }
        }
        if (digits.empty() && frac.empty()) fail("malformed numeric literal");
        long expo = 0;
        if (peek() == 'e' || peek() == 'E') {
            advance();
            bool eneg = false;
            if (peek() == '+' || peek() == '-') { eneg = (peek() == '-'); advance(); }
            if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("malformed exponent in literal");
            long ev = 0;
            while (std::isdigit(static_cast<unsigned char>(peek()))) {
                ev = ev * 10 + (peek() - '0');
                if (ev > 6000) fail("literal overflow: exponent too large");
                advance();
            }
            expo = eneg ? -ev : ev;
        }
        BigInt mant(digits.empty() ? std::string("0") : digits);
        for (char f : frac) mant = mant * 10 + (f - '0');
        long shift = expo - long(frac.size());
        BigRat val(mant);
        if (shift > 0) {
            BigInt tens = 1;
            for (long k = 0; k < shift; ++k) tens *= 10;
            val *= BigRat(tens);
        } else if (shift < 0) {
            BigInt tens = 1;
            for (long k = 0; k < -shift; ++k) tens *= 10;
            val /= BigRat(tens);
        }
        GaussQ g;
        bool imag = false;
        if (peek() == 'i') { imag = true; advance(); }
        if (imag) g = GaussQ(BigRat(0), val);
        else g = GaussQ(val, BigRat(0));
        Coeff c(g);
        if (!is_finite(c.value())) fail("literal overflow: value exceeds double range");
        return Poly2::constant(c);
    }

    const std::string& s_;
    size_t pos_ = 0;
    int line_ = 1, col_ = 1;
};

inline bool den_ten_smooth(BigInt d, int& k2, int& k5) {
    k2 = k5 = 0;
    while (d % 2 == 0) { d /= 2; ++k2; }
    while (d % 5 == 0) { d /= 5; ++k5; }
    return d == 1;
}

// exact decimal string for rationals with 10-smooth denominator, "p/q" otherwise
inline std::string rat_to_string(const BigRat& r) {
    BigInt num = numerator(r), den = denominator(r);
    bool neg = num < 0;
    if (neg) num = -num;
    int k2 = 0, k5 = 0;
    std::string body;
    if (den_ten_smooth(den, k2, k5)) {
        int k = std::max(k2, k5);
        BigInt scale = 1;
        for (int t = k2; t < k; ++t) scale *= 2;
        for (int t = k5; t < k; ++t) scale *= 5;
        BigInt digits = num * scale; // value = digits / 10^k
        std::string s = digits.convert_to<std::string>();
        if (k == 0) body = s;
        else {
            while (int(s.size()) <= k) s.insert(s.begin(), '0');
            std::string ip = s.substr(0, s.size() - size_t(k));
            std::string fp = s.substr(s.size() - size_t(k));
            while (!fp.empty() && fp.back() == '0') fp.pop_back();
            body = fp.empty() ? ip : ip + "." + fp;
        }
    } else {
        body = num.convert_to<std::string>() + "/" + den.convert_to<std::string>();
    }
    return neg ? "-" + body : body;
}

inline std::string double_to_string(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// rational imaginary part rendered so it re-parses: "2i/3" means (2i)/3
inline std::string rat_imag_to_string(const BigRat& r) {
    BigInt num = numerator(r), den = denominator(r);
    bool neg = num < 0;
    if (neg) num = -num;
    int k2 = 0, k5 = 0;
    std::string body;
    if (den_ten_smooth(den, k2, k5)) {
        body = rat_to_string(neg ? BigRat(-num, den) : BigRat(num, den));
        return body + "i";
    }
    body = num.convert_to<std::string>() + "i/" + den.convert_to<std::string>();
    return neg ? "-" + body : body;
}

struct CoeffStr {
    std::string text; // without leading sign for sign-splittable forms
    bool negative;    // sign extracted (real or pure-imaginary only)
    bool is_one;      // |coefficient| is exactly one (print as bare monomial)
};

inline CoeffStr coeff_to_string(const Coeff& c) {
    CoeffStr out{"", false, false};
    if (c.exact()) {
        const GaussQ& q = c.rat();
        if (q.im == 0) {
            out.negative = q.re < 0;
            BigRat a = out.negative ? BigRat(-q.re) : q.re;
            out.is_one = (a == 1);
            out.text = rat_to_string(a);
        } else if (q.re == 0) {
            out.negative = q.im < 0;
            BigRat a = out.negative ? BigRat(-q.im) : q.im;
            out.text = rat_imag_to_string(a);
        } else {
            std::string re = rat_to_string(q.re);
            std::string im = rat_imag_to_string(q.im);
            std::string joined = (q.im < 0) ? re + im : re + "+" + im;
            out.text = "(" + joined + ")";
        }
        return out;
    }
    CD v = c.value();
    if (v.imag() == 0.0) {
        out.negative = std::signbit(v.real()) && v.real() != 0.0;
        double a = std::abs(v.real());
        out.is_one = (a == 1.0);
        out.text = double_to_string(a);
    } else if (v.real() == 0.0) {
        out.negative = std::signbit(v.imag());
        out.text = double_to_string(std::abs(v.imag())) + "i";
    } else {
        std::string re = double_to_string(v.real());
        std::string im = double_to_string(std::abs(v.imag())) + "i";
        out.text = "(" + re + (std::signbit(v.imag()) ? "-" : "+") + im + ")";
    }
    return out;
}

} // namespace detail

inline Poly2 parse_poly(const std::string& text) {
    detail::PolyParser p(text);
    return p.parse();
}

inline std::string monomial_to_string(int i, int j) {
    std::string s;
    if (i > 0) { s += "x"; if (i > 1) s += "^" + std::to_string(i); }
    if (j > 0) {
        if (!s.empty()) s += "*";
        s += "y";
        if (j > 1) s += "^" + std::to_string(j);
    }
    return s;
}

// canonical printer; parse(poly_to_string(p)) reproduces the term map
inline std::string poly_to_string(const Poly2& p) {
    if (p.empty()) return "0";
    std::vector<std::pair<Exp2, Coeff>> terms(p.terms().begin(), p.terms().end());
    std::sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) {
        int da = a.first.i + a.first.j, db = b.first.i + b.first.j;
        if (da != db) return da > db;
        return a.first.i > b.first.i;
    });
    std::string out;
    bool first = true;
    for (const auto& [e, c] : terms) {
        auto cs = detail::coeff_to_string(c);
        std::string mono = monomial_to_string(e.i, e.j);
        std::string body;
        if (mono.empty()) body = cs.text;
        else if (cs.is_one) body = mono;
        else body = cs.text + "*" + mono;
        if (first) {
            out += (cs.negative ? "-" : "") + body;
            first = false;
        } else {
            out += (cs.negative ? " - " : " + ") + body;
        }
    }
    return out;
}

inline std::string poly1_to_string(const Poly1& p, const std::string& var = "x") {
    Poly2 q;
    for (int k = 0; k <= p.degree(); ++k) q.add_term(k, 0, p.coeff(k));
    std::string s = poly_to_string(q);
    if (var != "x") {
        std::string r;
        for (char ch : s) r += (ch == 'x') ? var : std::string(1, ch);
        return r;
    }
    return s;
}

} // namespace foliana

#endif
