// Global structure of the projective foliation induced by a polynomial
// vector field on C^2: tangency with the line at infinity, chart transforms,
// the singular set, invariant affine lines, and the tangent direction map.
#ifndef FOLIANA_FIELD_HPP
#define FOLIANA_FIELD_HPP

#include "roots.hpp"

#include <array>
#include <variant>

namespace foliana {

struct AnalysisError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class Chart { Affine, U1, U2 };

inline const char* chart_name(Chart c) {
    switch (c) {
        case Chart::Affine: return "affine";
        case Chart::U1: return "U1";
        case Chart::U2: return "U2";
    }
    return "?";
}

// A point of CP^2 described in one of the three standard charts.
//   affine: (x, y);  U1: (u, v) = (1/x, y/x);  U2: (u', w) = (1/y, x/y)
struct ProjectivePoint {
    Chart chart = Chart::Affine;
    Coeff c1, c2;

    static ProjectivePoint affine(Coeff x, Coeff y) { return {Chart::Affine, std::move(x), std::move(y)}; }
    static ProjectivePoint infinity_dir_x() { return {Chart::U1, Coeff(0), Coeff(0)}; }   // [1:0:0]
    static ProjectivePoint infinity_dir_y() { return {Chart::U2, Coeff(0), Coeff(0)}; }   // [0:1:0]

    bool at_infinity() const { return chart != Chart::Affine && c1.is_zero(); }

    std::array<CD, 3> homogeneous() const {
        CD a = c1.value(), b = c2.value();
        switch (chart) {
            case Chart::Affine: return {a, b, CD(1)};
            case Chart::U1: return {CD(1), b, a};
            case Chart::U2: return {b, CD(1), a};
        }
        return {CD(0), CD(0), CD(0)};
    }

    friend bool projectively_equal(const ProjectivePoint& p, const ProjectivePoint& q, double tol) {
        auto a = p.homogeneous(), b = q.homogeneous();
        double scale = 0;
        for (int i = 0; i < 3; ++i) scale = std::max({scale, std::abs(a[i]), std::abs(b[i])});
        for (int i = 0; i < 3; ++i)
            for (int j = i + 1; j < 3; ++j)
                if (std::abs(a[i] * b[j] - a[j] * b[i]) > tol * scale * scale) return false;
        return true;
    }
};

struct Line {
    enum class Kind { Slant, Vertical, Infinity };
    Kind kind = Kind::Slant;
    Coeff m, b; // y = m x + b
    Coeff a;    // x = a

    static Line slant(Coeff m_, Coeff b_) { return {Kind::Slant, std::move(m_), std::move(b_), Coeff(0)}; }
    static Line vertical(Coeff a_) { return {Kind::Vertical, Coeff(0), Coeff(0), std::move(a_)}; }
    static Line infinity() { return {Kind::Infinity, Coeff(0), Coeff(0), Coeff(0)}; }
};

class VectorField {
public:
    // validating constructor: rejects the zero field and (on the exact path)
    // fields whose components share a nonconstant factor
    VectorField(Poly2 P, Poly2 Q, bool validate = true) : P_(std::move(P)), Q_(std::move(Q)) {
        if (validate) {
            if (P_.is_zero() && Q_.is_zero())
                throw AnalysisError("vector field: (P, Q) must not be identically zero");
            if (P_.all_exact() && Q_.all_exact() && !P_.is_zero() && !Q_.is_zero() &&
                has_common_factor(P_, Q_))
                throw AnalysisError("vector field: P and Q share a nonconstant factor (non-isolated singularities)");
        }
        degree_ = std::max(std::max(P_.degree(), Q_.degree()), 0);
    }

    const Poly2& P() const { return P_; }
    const Poly2& Q() const { return Q_; }
    int degree() const { return degree_; }
    bool exact() const { return P_.all_exact() && Q_.all_exact(); }

    VectorField translated(const Coeff& x0, const Coeff& y0) const {
        return VectorField(P_.shift(x0, y0), Q_.shift(x0, y0), false);
    }
    VectorField scaled(const Coeff& c) const { return VectorField(P_ * c, Q_ * c, false); }

private:
    Poly2 P_, Q_;
    int degree_ = 0;
};

// T_inf = x*Q_d - y*P_d with d = max(deg P, deg Q); zero iff L_inf is not invariant
inline Poly2 tangency_at_infinity(const VectorField& vf) {
    int d = vf.degree();
    Poly2 Pd = vf.P().homogeneous_part(d);
    Poly2 Qd = vf.Q().homogeneous_part(d);
    return Poly2::x() * Qd - Poly2::y() * Pd;
}

inline bool linf_invariant(const VectorField& vf) { return !tangency_at_infinity(vf).is_zero(); }

namespace detail {

// chart image of a polynomial: u^d * p(1/u, v/u) resp. u^d * p(w/u, 1/u),
// realized as a pure exponent reindexing
inline Poly2 chart_image(const Poly2& p, int d, Chart chart) {
    Poly2 r;
    for (const auto& [e, c] : p.terms()) {
        int k = d - e.i - e.j;
        if (chart == Chart::U1) r.add_term(k, e.j, c);
        else r.add_term(k, e.i, c);
    }
    return r;
}

} // namespace detail

// Field generating the same foliation in the chosen infinity chart. The dual
// 1-form is pulled back and poles are cleared by the minimal power of the
// divisor coordinate (a time rescale at the foliation level).
inline VectorField chart_transform(const VectorField& vf, Chart chart) {
    if (chart == Chart::Affine) return vf;
    int d = vf.degree();
    Poly2 Ps = detail::chart_image(vf.P(), d, chart);
    Poly2 Qs = detail::chart_image(vf.Q(), d, chart);
    Poly2 u = Poly2::x();
    Poly2 comp1, comp2;
    if (chart == Chart::U1) {
        comp1 = -(u * Ps);
        comp2 = Qs - Poly2::y() * Ps;
    } else {
        comp1 = -(u * Qs);
        comp2 = Ps - Poly2::y() * Qs;
    }
    int k1 = comp1.order_x(), k2 = comp2.order_x();
    int k = std::min(k1, k2);
    if (k > 0 && k < (1 << 29)) {
        comp1 = comp1.empty() ? comp1 : comp1.div_xk(k);
        comp2 = comp2.empty() ? comp2 : comp2.div_xk(k);
    }
    return VectorField(std::move(comp1), std::move(comp2), false);
}

// ---------------------------------------------------------------------------
// Singular set
// ---------------------------------------------------------------------------
struct SingularLocus {
    ProjectivePoint point;
    int multiplicity = 1;
};

struct SingularitySet {
    std::vector<SingularLocus> affine;
    std::vector<SingularLocus> at_infinity;          // roots of T_inf (L_inf invariant)
    std::vector<SingularLocus> infinity_tangencies;  // non-invariant L_inf; flagged, not singularities
    bool linf_is_invariant = false;
    std::vector<std::string> warnings;
};

namespace detail {

// direction decomposition of a homogeneous h(x,y): pairs ([1:t] roots of
// h(1,t) with multiplicity, plus [0:1] with the x-factor multiplicity)
struct DirPoly {
    Poly1 f;     // h(1, t)
    int x_mult;  // multiplicity of the [0:1] direction
};

inline DirPoly direction_poly(const Poly2& h) {
    int D = h.degree();
    Poly1 f;
    {
        std::vector<Coeff> c(size_t(std::max(D, 0)) + 1, Coeff(0));
        for (const auto& [e, cc] : h.terms()) c[size_t(e.j)] = cc;
        f = Poly1(std::move(c));
    }
    return {f, D - f.degree()};
}

// attempt to upgrade a numerically found point to exact Gaussian-rational
// coordinates verified against exact polynomials
inline std::optional<std::pair<Coeff, Coeff>> try_exact_point(const Poly2& P, const Poly2& Q, CD x, CD y) {
    if (!P.all_exact() || !Q.all_exact()) return std::nullopt;
    auto lift = [](double v) -> std::optional<BigRat> {
        auto r = reconstruct_rational(v, 1000, 1e-8 * std::max(1.0, std::abs(v)));
        if (!r) return std::nullopt;
        return BigRat(r->p, r->q);
    };
    auto xr = lift(x.real()), xi = lift(x.imag()), yr = lift(y.real()), yi = lift(y.imag());
    if (!xr || !xi || !yr || !yi) return std::nullopt;
    Coeff cx{GaussQ(*xr, *xi)}, cy{GaussQ(*yr, *yi)};
    if (P.eval(cx, cy).is_zero() && Q.eval(cx, cy).is_zero()) return std::make_pair(cx, cy);
    return std::nullopt;
}

} // namespace detail

// Locations only; classification is a separate concern.
inline SingularitySet singularities(const VectorField& vf, double tol = 1e-10) {
    SingularitySet out;
    bool p_const_nonzero = vf.P().is_constant() && !vf.P().is_zero();
    bool q_const_nonzero = vf.Q().is_constant() && !vf.Q().is_zero();
    if (!p_const_nonzero && !q_const_nonzero) {
        auto cz = common_zeros(vf.P(), vf.Q(), tol);
        for (auto& w : cz.warnings) out.warnings.push_back(w);
        for (auto& z : cz.points) {
            ProjectivePoint p;
            if (auto ex = detail::try_exact_point(vf.P(), vf.Q(), z.x, z.y))
                p = ProjectivePoint::affine(ex->first, ex->second);
            else
                p = ProjectivePoint::affine(Coeff(z.x), Coeff(z.y));
            out.affine.push_back({p, z.multiplicity});
        }
    }

    Poly2 tinf = tangency_at_infinity(vf);
    out.linf_is_invariant = !tinf.is_zero();

    if (out.linf_is_invariant) {
        // drop direction factors shared by both top-degree parts
        int d = vf.degree();
        Poly2 Pd = vf.P().homogeneous_part(d), Qd = vf.Q().homogeneous_part(d);
        auto dirs = detail::direction_poly(tinf);
        if (!Pd.is_zero() && !Qd.is_zero() && Pd.all_exact() && Qd.all_exact() && tinf.all_exact()) {
            Poly2 g = gcd_bivar(gcd_bivar(Pd, Qd), tinf);
            if (!g.is_constant()) {
                auto gd = detail::direction_poly(g);
                auto [q, r] = Poly1::divrem(dirs.f, gd.f);
                if (r.is_zero()) {
                    dirs.f = q;
                    dirs.x_mult -= gd.x_mult;
                }
                out.warnings.push_back("top-degree parts share directions with the infinity tangency polynomial; shared factors removed");
            }
        }
        VectorField f1 = chart_transform(vf, Chart::U1);
        if (dirs.f.degree() >= 1) {
            for (auto& [t, m] : univariate_roots(dirs.f, tol)) {
                Coeff tc = Coeff(t);
                if (auto ex = detail::try_exact_point(f1.P(), f1.Q(), CD(0), t))
                    tc = ex->second;
                ProjectivePoint p{Chart::U1, Coeff(0), tc};
                double res = std::abs(f1.P().eval(CD(0), tc.value())) + std::abs(f1.Q().eval(CD(0), tc.value()));
                double scale = std::max(1.0, std::max(f1.P().max_abs(), f1.Q().max_abs()) *
                                                 std::max(1.0, std::pow(std::abs(t), f1.P().degree())));
                if (res > 1e-9 * scale)
                    out.warnings.push_back("infinity direction failed the chart-field residual check");
                out.at_infinity.push_back({p, m});
            }
        } else if (dirs.f.degree() == 0 && dirs.f.is_zero()) {
            out.warnings.push_back("infinity tangency polynomial vanished after shared-factor removal");
        }
        if (dirs.x_mult > 0)
            out.at_infinity.push_back({ProjectivePoint::infinity_dir_y(), dirs.x_mult});
    } else {
        // L_inf not invariant: points of tangency between the foliation and
        // L_inf (or residual singular points there) are flagged for review
        VectorField f1 = chart_transform(vf, Chart::U1);
        Poly1 a0 = f1.P().substitute_x(Coeff(0));
        std::vector<std::pair<CD, int>> found;
        if (!a0.is_zero() && a0.degree() >= 1)
            for (auto& rm : univariate_roots(a0, tol)) found.push_back(rm);
        for (auto& [t, m] : found)
            out.infinity_tangencies.push_back({ProjectivePoint{Chart::U1, Coeff(0), Coeff(t)}, m});
        // the [0:1:0] corner via U2
        VectorField f2 = chart_transform(vf, Chart::U2);
        Poly1 b0 = f2.P().substitute_x(Coeff(0));
        if (!b0.is_zero()) {
            // only the w = 0 root is new relative to U1
            if (b0.coeff(0).is_zero())
                out.infinity_tangencies.push_back({ProjectivePoint::infinity_dir_y(), 1});
        } else if (b0.is_zero() && f2.P().is_zero()) {
            out.warnings.push_back("chart field degenerate along the divisor");
        }
    }

    std::sort(out.affine.begin(), out.affine.end(), [](const SingularLocus& a, const SingularLocus& b) {
        CD pa = a.point.c1.value(), pb = b.point.c1.value();
        if (pa.real() != pb.real()) return pa.real() < pb.real();
        if (pa.imag() != pb.imag()) return pa.imag() < pb.imag();
        CD qa = a.point.c2.value(), qb = b.point.c2.value();
        if (qa.real() != qb.real()) return qa.real() < qb.real();
        return qa.imag() < qb.imag();
    });
    std::sort(out.at_infinity.begin(), out.at_infinity.end(), [](const SingularLocus& a, const SingularLocus& b) {
        if (a.point.chart != b.point.chart) return a.point.chart < b.point.chart;
        CD pa = a.point.c2.value(), pb = b.point.c2.value();
        if (pa.real() != pb.real()) return pa.real() < pb.real();
        return pa.imag() < pb.imag();
    });
    return out;
}

// ---------------------------------------------------------------------------
// Invariant lines
// ---------------------------------------------------------------------------
struct InvariantLines {
    bool infinitely_many = false;
    std::vector<Line> lines; // valid when not infinitely_many
};

inline bool line_invariant(const VectorField& vf, const Line& line) {
    if (line.kind == Line::Kind::Infinity)
        throw AnalysisError("line_invariant: use linf_invariant for the line at infinity");
    if (line.kind == Line::Kind::Vertical) {
        Poly1 slice = vf.P().substitute_x(line.a);
        return slice.is_zero();
    }
    Poly2 sub = Poly2::x() * line.m + Poly2::constant(line.b);
    Poly2 X = Poly2::x();
    Poly2 rem = vf.Q().compose(X, sub) - (vf.P().compose(X, sub) * line.m);
    return rem.is_zero();
}

namespace detail {

inline BigInt binomial(int n, int k) {
    BigInt r = 1;
    for (int t = 0; t < k; ++t) { r *= (n - t); r /= (t + 1); }
    return r;
}

// coefficients (in x) of Q(x, mx+b) - m P(x, mx+b) as polynomials in (m, b)
inline std::vector<Poly2> line_condition_coeffs(const VectorField& vf) {
    int D = vf.degree() + 1;
    std::vector<Poly2> out(size_t(2 * D + 2));
    auto scatter = [&](const Poly2& f, bool times_m) {
        for (const auto& [e, c] : f.terms()) {
            for (int l = 0; l <= e.j; ++l) {
                Coeff w = c * Coeff(GaussQ(BigRat(binomial(e.j, l))));
                int mdeg = l + (times_m ? 1 : 0);
                int xpow = e.i + l;
                if (xpow >= int(out.size())) out.resize(size_t(xpow) + 1);
                Poly2 term = Poly2::monomial(times_m ? -w : w, mdeg, e.j - l);
                out[size_t(xpow)] = out[size_t(xpow)] + term;
            }
        }
    };
    scatter(vf.Q(), false);
    scatter(vf.P(), true);
    return out;
}

inline std::optional<Coeff> lift_small(CD v) {
    auto re = reconstruct_rational(v.real(), 1000, 1e-8 * std::max(1.0, std::abs(v)));
    auto im = reconstruct_rational(v.imag(), 1000, 1e-8 * std::max(1.0, std::abs(v)));
    if (!re || !im) return std::nullopt;
    return Coeff(GaussQ(BigRat(re->p, re->q), BigRat(im->p, im->q)));
}

} // namespace detail

inline InvariantLines invariant_lines(const VectorField& vf, double tol = 1e-10) {
    InvariantLines out;
    bool exact = vf.exact();

    // vertical lines: common roots of the coefficients of P in y
    {
        auto cs = vf.P().collect_y();
        bool all_zero = true;
        Poly1 g;
        for (auto& c : cs) {
            if (c.is_zero()) continue;
            all_zero = false;
            if (exact) g = g.is_zero() ? c : Poly1::gcd(g, c);
        }
        if (all_zero) {
            out.infinitely_many = true; // P == 0: every vertical line is invariant
            return out;
        }
        if (exact) {
            if (g.degree() >= 1)
                for (auto& [r, m] : univariate_roots(g, tol)) {
                    Coeff a = Coeff(r);
                    if (auto ex = detail::lift_small(r)) {
                        if (vf.P().substitute_x(*ex).is_zero()) a = *ex;
                    }
                    Line ln = Line::vertical(a);
                    if (line_invariant(vf, ln)) out.lines.push_back(ln);
                }
        } else {
            // approximate: candidate roots of the least-degree nonzero coefficient
            for (auto& c : cs) {
                if (c.is_zero() || c.degree() < 1) continue;
                for (auto& [r, m] : univariate_roots(c, tol)) {
                    Line ln = Line::vertical(Coeff(r));
                    if (line_invariant(vf, ln)) out.lines.push_back(ln);
                }
                break;
            }
        }
    }

    // slant lines via the coefficient system in (m, b)
    auto coeffs = detail::line_condition_coeffs(vf);
    std::vector<Poly2> cs;
    for (auto& c : coeffs)
        if (!c.is_zero()) cs.push_back(c.pruned());
    if (cs.empty()) {
        out.infinitely_many = true; // every slant line is invariant
        return out;
    }
    // constant nonzero condition: no slant solutions
    bool impossible = false;
    for (auto& c : cs)
        if (c.is_constant()) { impossible = true; break; }
    if (!impossible) {
        if (exact) {
            Poly2 g = cs[0];
            for (size_t k = 1; k < cs.size() && !g.is_constant(); ++k) g = gcd_bivar(g, cs[k]);
            if (!g.is_constant()) {
                out.infinitely_many = true;
                return out;
            }
        }
        // eliminate b: candidate polynomials in m
        std::vector<Poly1> mpolys;
        for (auto& c : cs)
            if (c.deg_y() == 0 && c.deg_x() >= 1) {
                auto cy = c.collect_y();
                mpolys.push_back(cy[0]);
            }
        for (size_t a = 0; a < cs.size(); ++a)
            for (size_t b2 = a + 1; b2 < cs.size(); ++b2) {
                if (std::max(cs[a].deg_y(), 0) == 0 && std::max(cs[b2].deg_y(), 0) == 0) continue;
                try {
                    Poly1 r = resultant(cs[a], cs[b2], Var::Y);
                    if (!r.is_zero() && r.degree() >= 1) mpolys.push_back(r);
                    else if (!r.is_zero() && r.degree() == 0) { impossible = true; }
                } catch (const std::domain_error&) {
                    // skip degenerate pairs
                }
            }
        std::vector<CD> mcands;
        if (!impossible) {
            if (mpolys.empty()) {
                // single condition c(m,b) with finite solution set would have
                // been caught by the gcd test; treat as no slant solutions
            } else {
                Poly1 g = mpolys[0];
                if (exact)
                    for (size_t k = 1; k < mpolys.size(); ++k) {
                        g = Poly1::gcd(g, mpolys[k]);
                        if (g.degree() == 0) break;
                    }
                if (g.degree() >= 1)
                    for (auto& [r, m] : univariate_roots(g, std::max(tol, 1e-9))) mcands.push_back(r);
                else if (!exact)
                    for (auto& [r, m] : univariate_roots(mpolys[0], std::max(tol, 1e-9))) mcands.push_back(r);
            }
        }
        for (CD m0 : mcands) {
            // substitute m = m0, solve for b
            std::vector<CD> bcands;
            for (auto& c : cs) {
                Poly1 cb = c.substitute_x(Coeff(m0)); // poly in b
                if (cb.degree() >= 1) {
                    try {
                        for (auto& [r, mm] : univariate_roots(cb, std::max(tol, 1e-9))) bcands.push_back(r);
                    } catch (const RootError&) {}
                    break;
                }
            }
            if (bcands.empty()) bcands.push_back(CD(0));
            for (CD b0 : bcands) {
                // verify on all conditions
                double resid = 0, scale = 1;
                for (auto& c : cs) {
                    resid = std::max(resid, std::abs(c.eval(m0, b0)));
                    scale = std::max(scale, c.max_abs() * std::max(1.0, std::pow(std::max(std::abs(m0), std::abs(b0)), c.degree())));
                }
                if (resid > 1e-7 * scale) continue;
                Line ln = Line::slant(Coeff(m0), Coeff(b0));
                auto em = detail::lift_small(m0);
                auto eb = detail::lift_small(b0);
                if (em && eb) {
                    Line lx = Line::slant(*em, *eb);
                    if (line_invariant(vf, lx)) ln = lx;
                    else if (!line_invariant(vf, ln)) continue;
                } else if (!line_invariant(vf, ln)) {
                    continue;
                }
                bool dup = false;
                for (auto& l2 : out.lines)
                    if (l2.kind == Line::Kind::Slant &&
                        std::abs(l2.m.value() - ln.m.value()) + std::abs(l2.b.value() - ln.b.value()) <
                            1e-8 * (1 + std::abs(ln.m.value()) + std::abs(ln.b.value())))
                        dup = true;
                if (!dup) out.lines.push_back(ln);
            }
        }
    }
    std::sort(out.lines.begin(), out.lines.end(), [](const Line& a, const Line& b) {
        if (a.kind != b.kind) return int(a.kind) < int(b.kind);
        CD ka = a.kind == Line::Kind::Vertical ? a.a.value() : a.m.value();
        CD kb = b.kind == Line::Kind::Vertical ? b.a.value() : b.m.value();
        if (ka.real() != kb.real()) return ka.real() < kb.real();
        if (ka.imag() != kb.imag()) return ka.imag() < kb.imag();
        CD ba = a.b.value(), bb = b.b.value();
        if (ba.real() != bb.real()) return ba.real() < bb.real();
        return ba.imag() < bb.imag();
    });
    return out;
}

// tangent direction [P(p) : Q(p)], normalized so the larger coordinate is 1
inline std::pair<CD, CD> gauss_direction(const VectorField& vf, CD x, CD y, double tol = 1e-10) {
    CD a = vf.P().eval(x, y), b = vf.Q().eval(x, y);
    double scale = std::max(1.0, std::max(vf.P().max_abs(), vf.Q().max_abs()) *
                                     std::max(1.0, std::pow(std::max(std::abs(x), std::abs(y)), vf.degree())));
    if (std::abs(a) < tol * scale && std::abs(b) < tol * scale)
        throw AnalysisError("gauss_direction: point is singular");
    if (std::abs(a) >= std::abs(b)) return {CD(1), b / a};
    return {a / b, CD(1)};
}

} // namespace foliana

#endif
