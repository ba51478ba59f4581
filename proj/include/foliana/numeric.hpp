// Scalar layer: exact Gaussian rationals with a double-complex mirror.
//
// Coefficients parsed from text are always exact (decimal literals are
// rationals). Arithmetic stays exact as long as both operands are exact;
// any operation touching an approximate value degrades to double-complex.
// Zero tests and identity decisions consult the exact value when present.
#ifndef FOLIANA_NUMERIC_HPP
#define FOLIANA_NUMERIC_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <complex>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace foliana {

using CD = std::complex<double>;
using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

inline double to_double(const BigRat& r) { return r.template convert_to<double>(); }

inline bool is_finite(CD z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

// floor-sqrt based exact square root test
inline std::optional<BigInt> sqrt_exact(const BigInt& n) {
    if (n < 0) return std::nullopt;
    BigInt s = boost::multiprecision::sqrt(n);
    if (s * s == n) return s;
    return std::nullopt;
}

inline std::optional<BigRat> sqrt_exact(const BigRat& r) {
    if (r < 0) return std::nullopt;
    auto sn = sqrt_exact(numerator(r));
    if (!sn) return std::nullopt;
    auto sd = sqrt_exact(denominator(r));
    if (!sd) return std::nullopt;
    return BigRat(*sn, *sd);
}

// Exact Gaussian rational a + b*i.
struct GaussQ {
    BigRat re, im;

    GaussQ() : re(0), im(0) {}
    GaussQ(BigRat r) : re(std::move(r)), im(0) {}
    GaussQ(BigRat r, BigRat i) : re(std::move(r)), im(std::move(i)) {}
    GaussQ(long r) : re(r), im(0) {}

    bool is_zero() const { return re == 0 && im == 0; }
    bool is_real() const { return im == 0; }

    GaussQ conj() const { return {re, -im}; }
    BigRat norm2() const { return re * re + im * im; }

    friend GaussQ operator+(const GaussQ& a, const GaussQ& b) { return {a.re + b.re, a.im + b.im}; }
    friend GaussQ operator-(const GaussQ& a, const GaussQ& b) { return {a.re - b.re, a.im - b.im}; }
    friend GaussQ operator-(const GaussQ& a) { return {-a.re, -a.im}; }
    friend GaussQ operator*(const GaussQ& a, const GaussQ& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend GaussQ operator/(const GaussQ& a, const GaussQ& b) {
        BigRat n = b.norm2();
        if (n == 0) throw std::domain_error("GaussQ: division by zero");
        GaussQ t = a * b.conj();
        return {t.re / n, t.im / n};
    }
    friend bool operator==(const GaussQ& a, const GaussQ& b) { return a.re == b.re && a.im == b.im; }
    friend bool operator!=(const GaussQ& a, const GaussQ& b) { return !(a == b); }

    CD to_complex() const { return {to_double(re), to_double(im)}; }
};

// sqrt in Q(i) when it exists: x^2 - y^2 = a, 2xy = b.
inline std::optional<GaussQ> sqrt_exact(const GaussQ& z) {
    if (z.im == 0) {
        if (z.re >= 0) {
            auto s = sqrt_exact(z.re);
            if (s) return GaussQ(*s, 0);
            return std::nullopt;
        }
        auto s = sqrt_exact(BigRat(-z.re));
        if (s) return GaussQ(0, *s);
        return std::nullopt;
    }
    auto r = sqrt_exact(z.norm2());
    if (!r) return std::nullopt;
    BigRat x2 = (z.re + *r) / 2;
    auto x = sqrt_exact(x2);
    if (!x || *x == 0) return std::nullopt;
    BigRat y = z.im / (2 * (*x));
    GaussQ cand(*x, y);
    if (cand * cand == z) return cand;
    return std::nullopt;
}

// A complex scalar that is exact when it can be, approximate otherwise.
class Coeff {
public:
    Coeff() : exact_(true), q_(), d_(0.0, 0.0) {}
    Coeff(int v) : exact_(true), q_(long(v)), d_(double(v), 0.0) {}
    Coeff(long v) : exact_(true), q_(v), d_(double(v), 0.0) {}
    Coeff(GaussQ q) : exact_(true), q_(std::move(q)) { d_ = q_.to_complex(); }
    Coeff(double v) : exact_(false), d_(v, 0.0) {}
    Coeff(CD v) : exact_(false), d_(v) {}

    static Coeff from_ratio(long num, long den) { return Coeff(GaussQ(BigRat(num, den))); }
    static Coeff i() { return Coeff(GaussQ(BigRat(0), BigRat(1))); }

    bool exact() const { return exact_; }
    CD value() const { return d_; }
    const GaussQ& rat() const {
        if (!exact_) throw std::logic_error("Coeff: exact value requested from approximate scalar");
        return q_;
    }

    bool is_zero() const { return exact_ ? q_.is_zero() : d_ == CD(0.0, 0.0); }
    bool is_real() const { return exact_ ? q_.is_real() : d_.imag() == 0.0; }
    double abs() const { return std::abs(d_); }

    Coeff conj() const { return exact_ ? Coeff(q_.conj()) : Coeff(std::conj(d_)); }

    friend Coeff operator+(const Coeff& a, const Coeff& b) {
        if (a.exact_ && b.exact_) return Coeff(a.q_ + b.q_);
        return Coeff(a.d_ + b.d_);
    }
    friend Coeff operator-(const Coeff& a, const Coeff& b) {
        if (a.exact_ && b.exact_) return Coeff(a.q_ - b.q_);
        return Coeff(a.d_ - b.d_);
    }
    friend Coeff operator-(const Coeff& a) { return a.exact_ ? Coeff(-a.q_) : Coeff(-a.d_); }
    friend Coeff operator*(const Coeff& a, const Coeff& b) {
        if (a.exact_ && b.exact_) return Coeff(a.q_ * b.q_);
        return Coeff(a.d_ * b.d_);
    }
    friend Coeff operator/(const Coeff& a, const Coeff& b) {
        if (a.exact_ && b.exact_) return Coeff(a.q_ / b.q_);
        if (b.d_ == CD(0.0, 0.0)) throw std::domain_error("Coeff: division by zero");
        return Coeff(a.d_ / b.d_);
    }

    Coeff& operator+=(const Coeff& o) { *this = *this + o; return *this; }
    Coeff& operator-=(const Coeff& o) { *this = *this - o; return *this; }
    Coeff& operator*=(const Coeff& o) { *this = *this * o; return *this; }
    Coeff& operator/=(const Coeff& o) { *this = *this / o; return *this; }

    // value identity: exact-vs-exact compares rationals, otherwise the mirrors
    friend bool operator==(const Coeff& a, const Coeff& b) {
        if (a.exact_ && b.exact_) return a.q_ == b.q_;
        return a.d_ == b.d_;
    }
    friend bool operator!=(const Coeff& a, const Coeff& b) { return !(a == b); }

    std::optional<Coeff> sqrt_if_exact() const {
        if (!exact_) return std::nullopt;
        auto s = sqrt_exact(q_);
        if (s) return Coeff(*s);
        return std::nullopt;
    }

private:
    bool exact_;
    GaussQ q_;
    CD d_{0.0, 0.0};
};

inline Coeff approx_sqrt(const Coeff& c) {
    if (auto s = c.sqrt_if_exact()) return *s;
    return Coeff(std::sqrt(c.value()));
}

// Continued-fraction reconstruction of a real ratio as p/q with q <= den_cap.
// Returns nullopt when no rational within |window| exists at that cap.
struct SmallRational { std::int64_t p, q; };
inline std::optional<SmallRational> reconstruct_rational(double x, std::int64_t den_cap, double window) {
    if (!std::isfinite(x)) return std::nullopt;
    // walk the Stern-Brocot/continued-fraction convergents
    double v = x;
    std::int64_t p0 = 1, q0 = 0, p1 = std::int64_t(std::floor(v)), q1 = 1;
    for (int it = 0; it < 64; ++it) {
        if (q1 > den_cap) break;
        double approx = double(p1) / double(q1);
        if (std::abs(x - approx) <= window) return SmallRational{p1, q1};
        double frac = v - std::floor(v);
        if (frac < 1e-15) break;
        v = 1.0 / frac;
        std::int64_t a = std::int64_t(std::floor(v));
        std::int64_t p2 = a * p1 + p0, q2 = a * q1 + q0;
        p0 = p1; q0 = q1; p1 = p2; q1 = q2;
    }
    if (q1 <= den_cap && q1 > 0 && std::abs(x - double(p1) / double(q1)) <= window)
        return SmallRational{p1, q1};
    return std::nullopt;
}

} // namespace foliana

#endif
