// Dense univariate and sparse bivariate polynomials over Coeff scalars,
// plus the exact gcd / square-free machinery used by identity decisions.
#ifndef FOLIANA_POLY_HPP
#define FOLIANA_POLY_HPP

#include "numeric.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

namespace foliana {

// Relative threshold under which an approximate polynomial coefficient is
// treated as zero by identity tests. Exact coefficients bypass this.
inline constexpr double kZeroRelTol = 1e-12;

// ---------------------------------------------------------------------------
// Poly1: dense univariate polynomial, coefficients ascending by exponent.
// ---------------------------------------------------------------------------
class Poly1 {
public:
    Poly1() = default;
    explicit Poly1(std::vector<Coeff> c) : c_(std::move(c)) { trim(); }
    static Poly1 constant(Coeff v) {
        Poly1 p;
        if (!v.is_zero()) p.c_ = {std::move(v)};
        return p;
    }
    static Poly1 monomial(Coeff v, int k) {
        Poly1 p;
        if (!v.is_zero()) { p.c_.assign(size_t(k) + 1, Coeff(0)); p.c_[size_t(k)] = std::move(v); }
        return p;
    }

    const std::vector<Coeff>& coeffs() const { return c_; }
    bool empty() const { return c_.empty(); }
    int degree() const { return c_.empty() ? -1 : int(c_.size()) - 1; }
    Coeff coeff(int k) const { return (k >= 0 && k < int(c_.size())) ? c_[size_t(k)] : Coeff(0); }
    Coeff leading() const { return c_.empty() ? Coeff(0) : c_.back(); }

    bool all_exact() const {
        for (const auto& c : c_) if (!c.exact()) return false;
        return true;
    }
    double max_abs() const {
        double m = 0;
        for (const auto& c : c_) m = std::max(m, c.abs());
        return m;
    }
    // identity-test zero: exact path is exact, approximate path is relative
    bool is_zero() const {
        if (c_.empty()) return true;
        if (all_exact()) {
            for (const auto& c : c_) if (!c.is_zero()) return false;
            return true;
        }
        double m = max_abs();
        for (const auto& c : c_) if (c.abs() >= kZeroRelTol * m) return false;
        return true;
    }

    void set_coeff(int k, Coeff v) {
        if (k >= int(c_.size())) c_.resize(size_t(k) + 1, Coeff(0));
        c_[size_t(k)] = std::move(v);
        trim();
    }

    friend Poly1 operator+(const Poly1& a, const Poly1& b) {
        std::vector<Coeff> r(std::max(a.c_.size(), b.c_.size()), Coeff(0));
        for (size_t k = 0; k < r.size(); ++k) r[k] = a.coeff(int(k)) + b.coeff(int(k));
        return Poly1(std::move(r));
    }
    friend Poly1 operator-(const Poly1& a, const Poly1& b) {
        std::vector<Coeff> r(std::max(a.c_.size(), b.c_.size()), Coeff(0));
        for (size_t k = 0; k < r.size(); ++k) r[k] = a.coeff(int(k)) - b.coeff(int(k));
        return Poly1(std::move(r));
    }
    friend Poly1 operator-(const Poly1& a) {
        std::vector<Coeff> r(a.c_);
        for (auto& c : r) c = -c;
        return Poly1(std::move(r));
    }
    friend Poly1 operator*(const Poly1& a, const Poly1& b) {
        if (a.empty() || b.empty()) return Poly1();
        std::vector<Coeff> r(a.c_.size() + b.c_.size() - 1, Coeff(0));
        for (size_t i = 0; i < a.c_.size(); ++i)
            for (size_t j = 0; j < b.c_.size(); ++j)
                r[i + j] += a.c_[i] * b.c_[j];
        return Poly1(std::move(r));
    }
    friend Poly1 operator*(const Poly1& a, const Coeff& s) {
        std::vector<Coeff> r(a.c_);
        for (auto& c : r) c *= s;
        return Poly1(std::move(r));
    }

    Coeff eval(const Coeff& x) const {
        Coeff acc(0);
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
        return acc;
    }
    CD eval(CD x) const {
        CD acc = 0;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + it->value();
        return acc;
    }

    Poly1 derivative() const {
        if (c_.size() <= 1) return Poly1();
        std::vector<Coeff> r(c_.size() - 1, Coeff(0));
        for (size_t k = 1; k < c_.size(); ++k) r[k - 1] = c_[k] * Coeff(long(k));
        return Poly1(std::move(r));
    }

    // quotient/remainder over the scalar field; requires b nonzero
    static std::pair<Poly1, Poly1> divrem(const Poly1& a, const Poly1& b) {
        if (b.empty()) throw std::domain_error("Poly1: division by zero polynomial");
        Poly1 r = a;
        std::vector<Coeff> q(a.c_.size() > b.c_.size() - 1 ? a.c_.size() - b.c_.size() + 1 : 0, Coeff(0));
        while (!r.empty() && r.degree() >= b.degree()) {
            Coeff f = r.leading() / b.leading();
            int shift = r.degree() - b.degree();
            q[size_t(shift)] = f;
            // r -= f * x^shift * b
            std::vector<Coeff> rc = r.c_;
            for (size_t k = 0; k < b.c_.size(); ++k) rc[size_t(shift) + k] -= f * b.c_[k];
            rc.back() = Coeff(0); // leading cancels by construction
            r = Poly1(std::move(rc));
        }
        return {Poly1(std::move(q)), r};
    }

    // exact-coefficient monic gcd (Euclid); approximate inputs are not supported
    static Poly1 gcd(Poly1 a, Poly1 b) {
        if (!a.all_exact() || !b.all_exact())
            throw std::domain_error("Poly1::gcd requires exact coefficients");
        // drop exact-zero padding via trim (already done); Euclid
        while (!b.is_zero()) {
            auto [q, r] = divrem(a, b);
            (void)q;
            a = std::move(b);
            b = std::move(r);
        }
        if (a.empty()) return a;
        // normalize monic
        Coeff lc = a.leading();
        std::vector<Coeff> r(a.c_);
        for (auto& c : r) c /= lc;
        return Poly1(std::move(r));
    }

    Poly1 pow(int e) const {
        Poly1 r = Poly1::constant(Coeff(1));
        Poly1 base = *this;
        while (e > 0) {
            if (e & 1) r = r * base;
            base = base * base;
            e >>= 1;
        }
        return r;
    }

private:
    void trim() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }
    std::vector<Coeff> c_;
};

// Square-free decomposition (Yun) of an exact univariate polynomial:
// returns factors g_k with p = lc * prod g_k^k, g_k square-free, monic.
inline std::vector<std::pair<Poly1, int>> squarefree_decomposition(const Poly1& p) {
    std::vector<std::pair<Poly1, int>> out;
    if (p.degree() <= 0) return out;
    Poly1 a = p;
    // make monic
    {
        Coeff lc = a.leading();
        std::vector<Coeff> c(a.coeffs());
        for (auto& x : c) x /= lc;
        a = Poly1(std::move(c));
    }
    Poly1 d = a.derivative();
    Poly1 g = Poly1::gcd(a, d);
    if (g.degree() <= 0) {
        out.emplace_back(a, 1);
        return out;
    }
    Poly1 w = Poly1::divrem(a, g).first;
    Poly1 z = Poly1::divrem(d, g).first;
    int k = 1;
    while (w.degree() > 0) {
        Poly1 h = z - w.derivative();
        Poly1 gk = Poly1::gcd(w, h);
        if (gk.degree() > 0) out.emplace_back(gk, k);
        w = Poly1::divrem(w, gk).first;
        z = Poly1::divrem(h, gk).first;
        ++k;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Poly2: sparse bivariate polynomial, term map keyed by (i, j) exponents.
// ---------------------------------------------------------------------------
struct Exp2 {
    int i = 0, j = 0;
    friend bool operator<(const Exp2& a, const Exp2& b) {
        return a.i != b.i ? a.i < b.i : a.j < b.j;
    }
    friend bool operator==(const Exp2& a, const Exp2& b) { return a.i == b.i && a.j == b.j; }
};

class Poly2 {
public:
    using TermMap = std::map<Exp2, Coeff>;

    Poly2() = default;
    static Poly2 constant(Coeff v) {
        Poly2 p;
        p.add_term(0, 0, std::move(v));
        return p;
    }
    static Poly2 monomial(Coeff v, int i, int j) {
        Poly2 p;
        p.add_term(i, j, std::move(v));
        return p;
    }
    static Poly2 x() { return monomial(Coeff(1), 1, 0); }
    static Poly2 y() { return monomial(Coeff(1), 0, 1); }

    const TermMap& terms() const { return t_; }
    bool empty() const { return t_.empty(); }

    void add_term(int i, int j, Coeff v) {
        if (v.is_zero()) return;
        Exp2 e{i, j};
        auto it = t_.find(e);
        if (it == t_.end()) {
            t_.emplace(e, std::move(v));
        } else {
            it->second += v;
            if (it->second.is_zero()) t_.erase(it);
        }
    }

    Coeff coeff(int i, int j) const {
        auto it = t_.find(Exp2{i, j});
        return it == t_.end() ? Coeff(0) : it->second;
    }

    int degree() const {
        int d = -1;
        for (const auto& [e, c] : t_) d = std::max(d, e.i + e.j);
        return d;
    }
    int deg_x() const {
        int d = -1;
        for (const auto& [e, c] : t_) d = std::max(d, e.i);
        return d;
    }
    int deg_y() const {
        int d = -1;
        for (const auto& [e, c] : t_) d = std::max(d, e.j);
        return d;
    }

    bool all_exact() const {
        for (const auto& [e, c] : t_) if (!c.exact()) return false;
        return true;
    }
    double max_abs() const {
        double m = 0;
        for (const auto& [e, c] : t_) m = std::max(m, c.abs());
        return m;
    }
    bool is_zero() const {
        if (t_.empty()) return true;
        if (all_exact()) return false; // stored exact terms are nonzero
        double m = max_abs();
        for (const auto& [e, c] : t_) if (c.abs() >= kZeroRelTol * m) return false;
        return true;
    }
    bool is_constant() const { return t_.empty() || (t_.size() == 1 && t_.begin()->first == Exp2{0, 0}); }

    friend Poly2 operator+(const Poly2& a, const Poly2& b) {
        Poly2 r = a;
        for (const auto& [e, c] : b.t_) r.add_term(e.i, e.j, c);
        return r;
    }
    friend Poly2 operator-(const Poly2& a, const Poly2& b) {
        Poly2 r = a;
        for (const auto& [e, c] : b.t_) r.add_term(e.i, e.j, -c);
        return r;
    }
    friend Poly2 operator-(const Poly2& a) {
        Poly2 r;
        for (const auto& [e, c] : a.t_) r.t_.emplace(e, -c);
        return r;
    }
    friend Poly2 operator*(const Poly2& a, const Poly2& b) {
        Poly2 r;
        for (const auto& [ea, ca] : a.t_)
            for (const auto& [eb, cb] : b.t_)
                r.add_term(ea.i + eb.i, ea.j + eb.j, ca * cb);
        return r;
    }
    friend Poly2 operator*(const Poly2& a, const Coeff& s) {
        Poly2 r;
        if (s.is_zero()) return r;
        for (const auto& [e, c] : a.t_) {
            Coeff v = c * s;
            if (!v.is_zero()) r.t_.emplace(e, std::move(v));
        }
        return r;
    }

    Coeff eval(const Coeff& x, const Coeff& y) const {
        Coeff acc(0);
        for (const auto& [e, c] : t_) {
            Coeff t = c;
            for (int k = 0; k < e.i; ++k) t *= x;
            for (int k = 0; k < e.j; ++k) t *= y;
            acc += t;
        }
        return acc;
    }
    CD eval(CD x, CD y) const {
        CD acc = 0;
        for (const auto& [e, c] : t_) {
            CD t = c.value();
            for (int k = 0; k < e.i; ++k) t *= x;
            for (int k = 0; k < e.j; ++k) t *= y;
            acc += t;
        }
        return acc;
    }

    Poly2 derivative_x() const {
        Poly2 r;
        for (const auto& [e, c] : t_)
            if (e.i > 0) r.add_term(e.i - 1, e.j, c * Coeff(long(e.i)));
        return r;
    }
    Poly2 derivative_y() const {
        Poly2 r;
        for (const auto& [e, c] : t_)
            if (e.j > 0) r.add_term(e.i, e.j - 1, c * Coeff(long(e.j)));
        return r;
    }

    // homogeneous part of total degree k
    Poly2 homogeneous_part(int k) const {
        Poly2 r;
        for (const auto& [e, c] : t_)
            if (e.i + e.j == k) r.t_.emplace(e, c);
        return r;
    }
    // lowest total degree among stored terms (-1 for zero polynomial)
    int order() const {
        int o = -1;
        for (const auto& [e, c] : t_) {
            int d = e.i + e.j;
            if (o < 0 || d < o) o = d;
        }
        return o;
    }
    bool is_homogeneous() const {
        int d = -2;
        for (const auto& [e, c] : t_) {
            if (d == -2) d = e.i + e.j;
            else if (e.i + e.j != d) return false;
        }
        return true;
    }

    // minimal exponent of x (resp. y) dividing every term; zero poly -> INT_MAX
    int order_x() const {
        int o = -1;
        for (const auto& [e, c] : t_) o = (o < 0) ? e.i : std::min(o, e.i);
        return o < 0 ? 1 << 30 : o;
    }
    int order_y() const {
        int o = -1;
        for (const auto& [e, c] : t_) o = (o < 0) ? e.j : std::min(o, e.j);
        return o < 0 ? 1 << 30 : o;
    }
    Poly2 div_xk(int k) const {
        Poly2 r;
        for (const auto& [e, c] : t_) {
            if (e.i < k) throw std::domain_error("Poly2: not divisible by x^k");
            r.t_.emplace(Exp2{e.i - k, e.j}, c);
        }
        return r;
    }
    Poly2 div_yk(int k) const {
        Poly2 r;
        for (const auto& [e, c] : t_) {
            if (e.j < k) throw std::domain_error("Poly2: not divisible by y^k");
            r.t_.emplace(Exp2{e.i, e.j - k}, c);
        }
        return r;
    }

    // substitution p(A(x,y), B(x,y)) with power memoization
    Poly2 compose(const Poly2& A, const Poly2& B) const {
        int dx = deg_x(), dy = deg_y();
        std::vector<Poly2> powA(size_t(std::max(dx, 0)) + 1), powB(size_t(std::max(dy, 0)) + 1);
        powA[0] = Poly2::constant(Coeff(1));
        for (int k = 1; k <= dx; ++k) powA[size_t(k)] = powA[size_t(k - 1)] * A;
        powB[0] = Poly2::constant(Coeff(1));
        for (int k = 1; k <= dy; ++k) powB[size_t(k)] = powB[size_t(k - 1)] * B;
        Poly2 r;
        for (const auto& [e, c] : t_)
            r = r + powA[size_t(e.i)] * powB[size_t(e.j)] * c;
        return r;
    }

    // translate to p(x + a, y + b)
    Poly2 shift(const Coeff& a, const Coeff& b) const {
        Poly2 A = Poly2::x() + Poly2::constant(a);
        Poly2 B = Poly2::y() + Poly2::constant(b);
        return compose(A, B);
    }

    // swap the two variables
    Poly2 swap_vars() const {
        Poly2 r;
        for (const auto& [e, c] : t_) r.t_.emplace(Exp2{e.j, e.i}, c);
        return r;
    }

    // view as polynomial in y: coefficient of y^j is a Poly1 in x
    std::vector<Poly1> collect_y() const {
        int dy = deg_y();
        std::vector<Poly1> out(size_t(std::max(dy, -1) + 1));
        if (dy < 0) return out;
        std::vector<std::vector<Coeff>> acc(size_t(dy) + 1);
        for (const auto& [e, c] : t_) {
            auto& v = acc[size_t(e.j)];
            if (int(v.size()) <= e.i) v.resize(size_t(e.i) + 1, Coeff(0));
            v[size_t(e.i)] = c;
        }
        for (size_t j = 0; j < acc.size(); ++j) out[j] = Poly1(std::move(acc[j]));
        return out;
    }

    static Poly2 from_collected_y(const std::vector<Poly1>& cs) {
        Poly2 r;
        for (size_t j = 0; j < cs.size(); ++j)
            for (int i = 0; i <= cs[j].degree(); ++i)
                r.add_term(i, int(j), cs[j].coeff(i));
        return r;
    }

    // univariate slices
    Poly1 substitute_y(const Coeff& y0) const {
        auto cs = collect_y();
        Poly1 acc;
        Coeff p(1);
        for (size_t j = 0; j < cs.size(); ++j) {
            acc = acc + cs[j] * p;
            p *= y0;
        }
        return acc;
    }
    Poly1 substitute_x(const Coeff& x0) const { return swap_vars().substitute_y(x0); }

    // drop approximate coefficients below the relative threshold (cleanup after
    // float-path transforms); exact terms are kept verbatim
    Poly2 pruned() const {
        if (all_exact()) return *this;
        double m = max_abs();
        Poly2 r;
        for (const auto& [e, c] : t_)
            if (c.exact() || c.abs() >= kZeroRelTol * m) r.t_.emplace(e, c);
        return r;
    }

    // truncate to total degree <= d
    Poly2 truncated(int d) const {
        Poly2 r;
        for (const auto& [e, c] : t_)
            if (e.i + e.j <= d) r.t_.emplace(e, c);
        return r;
    }

    friend bool operator==(const Poly2& a, const Poly2& b) {
        if (a.t_.size() != b.t_.size()) return false;
        auto ia = a.t_.begin();
        auto ib = b.t_.begin();
        for (; ia != a.t_.end(); ++ia, ++ib) {
            if (!(ia->first == ib->first)) return false;
            if (ia->second != ib->second) return false;
        }
        return true;
    }

private:
    TermMap t_;
};

// max |coefficient| distance, for approximate comparisons in tests and checks
inline double coeff_distance(const Poly2& a, const Poly2& b) {
    double m = 0;
    Poly2 d = a - b;
    for (const auto& [e, c] : d.terms()) m = std::max(m, c.abs());
    return m;
}

// ---------------------------------------------------------------------------
// Bivariate gcd over exact coefficients (content/primitive + Euclid in y).
// ---------------------------------------------------------------------------
namespace detail {

// divide each y-coefficient of p by the univariate divisor d(x); must be exact
inline Poly2 divide_by_univar_x(const Poly2& p, const Poly1& d) {
    auto cs = p.collect_y();
    for (auto& c : cs) {
        auto [q, r] = Poly1::divrem(c, d);
        if (!r.is_zero()) throw std::domain_error("Poly2: inexact division by content");
        c = q;
    }
    return Poly2::from_collected_y(cs);
}

inline Poly1 content_y(const Poly2& p) {
    auto cs = p.collect_y();
    Poly1 g;
    for (const auto& c : cs) {
        if (c.is_zero()) continue;
        g = g.is_zero() ? c : Poly1::gcd(g, c);
        if (g.degree() == 0) break;
    }
    if (g.is_zero()) return g;
    Coeff lc = g.leading();
    std::vector<Coeff> norm(g.coeffs());
    for (auto& c : norm) c /= lc;
    return Poly1(std::move(norm));
}

} // namespace detail

// gcd of exact bivariate polynomials (monic-ish canonical output)
inline Poly2 gcd_bivar(Poly2 a, Poly2 b) {
    if (!a.all_exact() || !b.all_exact())
        throw std::domain_error("gcd_bivar requires exact coefficients");
    if (a.empty()) return b;
    if (b.empty()) return a;
    // pure-x contents
    Poly1 ca = detail::content_y(a), cb = detail::content_y(b);
    Poly2 pa = detail::divide_by_univar_x(a, ca);
    Poly2 pb = detail::divide_by_univar_x(b, cb);
    Poly1 cg = Poly1::gcd(ca, cb);

    // Euclid in y over Q(i)(x) using pseudo-division; primitive parts each step
    auto prim = [](const Poly2& p) {
        Poly1 c = detail::content_y(p);
        return c.is_zero() ? p : detail::divide_by_univar_x(p, c);
    };
    Poly2 u = pa.deg_y() >= pb.deg_y() ? pa : pb;
    Poly2 v = pa.deg_y() >= pb.deg_y() ? pb : pa;
    while (!v.empty() && v.deg_y() > 0) {
        // pseudo-remainder of u by v in y
        auto ucs = u.collect_y();
        auto vcs = v.collect_y();
        int du = int(ucs.size()) - 1, dv = int(vcs.size()) - 1;
        Poly1 lv = vcs[size_t(dv)];
        Poly2 r = u;
        while (!r.empty() && r.deg_y() >= dv) {
            auto rcs = r.collect_y();
            int dr = int(rcs.size()) - 1;
            Poly1 lr = rcs[size_t(dr)];
            // r = lv * r - lr * y^(dr-dv) * v
            std::vector<Poly1> nr(size_t(std::max(dr, dv + dr - dv)) + 1);
            Poly2 lvr = Poly2();
            {
                Poly2 lv2 = Poly2::from_collected_y({lv});
                Poly2 lr2 = Poly2::from_collected_y({lr});
                Poly2 shift;
                for (const auto& [e, c] : v.terms()) shift.add_term(e.i, e.j + (dr - dv), c);
                r = lv2 * r - lr2 * shift;
            }
            (void)du;
        }
        u = prim(v);
        v = prim(r);
        if (!v.empty() && v.deg_y() == 0) break;
    }
    Poly2 g;
    if (v.empty()) g = u;
    else g = Poly2::constant(Coeff(1)); // coprime in y
    // restore shared pure-x content
    Poly2 out = g * Poly2::from_collected_y({cg});
    // canonical: divide by leading coefficient of the lex-largest term
    if (!out.empty()) {
        Coeff lc = out.terms().rbegin()->second;
        out = out * (Coeff(1) / lc);
    }
    return out;
}

// convenience: true when exact polys share a nonconstant factor
inline bool has_common_factor(const Poly2& a, const Poly2& b) {
    Poly2 g = gcd_bivar(a, b);
    return !g.is_constant();
}

} // namespace foliana

#endif
