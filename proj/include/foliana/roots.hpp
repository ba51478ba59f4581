// Numerical root finding (Aberth simultaneous iteration with a
// companion-matrix fallback), Sylvester resultants via specialization and
// interpolation, bivariate common zeros, and projective (de)homogenization.
#ifndef FOLIANA_ROOTS_HPP
#define FOLIANA_ROOTS_HPP

#include "parse.hpp"
#include "poly.hpp"

#include <Eigen/Eigenvalues>

#include <numeric>
#include <random>

namespace foliana {

struct RootError : std::runtime_error {
    double residual;
    explicit RootError(const std::string& msg, double res = 0.0)
        : std::runtime_error(msg), residual(res) {}
};

namespace detail {

inline CD horner(const std::vector<CD>& c, CD z) {
    CD acc = 0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * z + *it;
    return acc;
}
inline CD horner_d(const std::vector<CD>& c, CD z) {
    CD acc = 0;
    for (size_t k = c.size(); k-- > 1;) acc = acc * z + double(k) * c[k];
    return acc;
}

inline std::vector<CD> companion_roots(const std::vector<CD>& c) {
    int n = int(c.size()) - 1;
    Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(n, n);
    for (int r = 1; r < n; ++r) M(r, r - 1) = 1.0;
    for (int r = 0; r < n; ++r) M(r, n - 1) = -c[size_t(r)] / c[size_t(n)];
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(M, false);
    std::vector<CD> out(static_cast<size_t>(n));
    for (int k = 0; k < n; ++k) out[size_t(k)] = es.eigenvalues()(k);
    return out;
}

// Aberth-Ehrlich on a polynomial with nonzero constant and leading terms.
inline std::vector<CD> aberth(const std::vector<CD>& c, double tol, int max_iter = 200) {
    int n = int(c.size()) - 1;
    if (n == 1) return {-c[0] / c[1]};
    double lead = std::abs(c[size_t(n)]);
    double radius = 0.0;
    for (int k = 0; k < n; ++k) radius = std::max(radius, std::pow(std::abs(c[size_t(k)]) / lead, 1.0 / double(n - k)));
    radius = std::max(radius * 2.0, 1e-6);
    std::vector<CD> z(static_cast<size_t>(n));
    for (int k = 0; k < n; ++k) {
        double th = 2.0 * M_PI * double(k) / double(n) + 0.41;
        z[size_t(k)] = radius * CD(std::cos(th), std::sin(th));
    }
    double scale = 0.0;
    for (const auto& ck : c) scale = std::max(scale, std::abs(ck));
    bool converged = false;
    for (int it = 0; it < max_iter && !converged; ++it) {
        converged = true;
        for (int k = 0; k < n; ++k) {
            CD p = horner(c, z[size_t(k)]);
            CD dp = horner_d(c, z[size_t(k)]);
            if (std::abs(p) < 1e-15 * scale * std::max(1.0, std::pow(std::abs(z[size_t(k)]), double(n))))
                continue;
            CD w = (dp == CD(0)) ? CD(0) : p / dp;
            CD sum = 0;
            for (int j = 0; j < n; ++j)
                if (j != k) {
                    CD d = z[size_t(k)] - z[size_t(j)];
                    if (std::abs(d) < 1e-300) d = CD(1e-300, 0);
                    sum += 1.0 / d;
                }
            CD denom = 1.0 - w * sum;
            CD step = (std::abs(denom) < 1e-300) ? w : w / denom;
            if (dp == CD(0)) step = CD(radius * 1e-3, radius * 1e-3);
            z[size_t(k)] -= step;
            if (std::abs(step) > tol * std::max(1.0, std::abs(z[size_t(k)]))) converged = false;
        }
    }
    if (!converged) {
        // fall back to companion-matrix eigenvalues
        z = companion_roots(c);
    }
    // Newton polish
    for (auto& zk : z) {
        for (int t = 0; t < 8; ++t) {
            CD p = horner(c, zk), dp = horner_d(c, zk);
            if (std::abs(dp) < 1e-300) break;
            CD step = p / dp;
            zk -= step;
            if (std::abs(step) < 1e-16 * std::max(1.0, std::abs(zk))) break;
        }
    }
    return z;
}

// merge clusters with radius tol*max(1,|root|); multiplicity = cluster size
inline std::vector<std::pair<CD, int>> cluster_merge(std::vector<CD> roots, double tol) {
    std::vector<std::pair<CD, int>> out;
    std::vector<bool> used(roots.size(), false);
    for (size_t a = 0; a < roots.size(); ++a) {
        if (used[a]) continue;
        CD sum = roots[a];
        int cnt = 1;
        used[a] = true;
        bool grew = true;
        while (grew) {
            grew = false;
            CD center = sum / double(cnt);
            for (size_t b = 0; b < roots.size(); ++b) {
                if (used[b]) continue;
                if (std::abs(roots[b] - center) <= tol * std::max(1.0, std::abs(center))) {
                    sum += roots[b];
                    ++cnt;
                    used[b] = true;
                    grew = true;
                }
            }
        }
        out.emplace_back(sum / double(cnt), cnt);
    }
    std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) {
        if (x.first.real() != y.first.real()) return x.first.real() < y.first.real();
        return x.first.imag() < y.first.imag();
    });
    return out;
}

} // namespace detail

// Roots with multiplicities. Exact inputs get an exact square-free split, so
// every numerical solve sees simple roots; approximate inputs go through
// Aberth plus cluster merging at radius tol*max(1,|root|).
inline std::vector<std::pair<CD, int>> univariate_roots(const Poly1& p, double tol) {
    if (p.degree() < 1) throw RootError("univariate_roots: polynomial must have degree >= 1");
    std::vector<std::pair<CD, int>> out;

    auto run_simple = [&](const Poly1& q, int mult) {
        if (q.degree() < 1) return;
        // strip zero roots exactly
        int z0 = 0;
        std::vector<CD> c;
        for (int k = 0; k <= q.degree(); ++k) c.push_back(q.coeff(k).value());
        while (!c.empty() && c.front() == CD(0)) { c.erase(c.begin()); ++z0; }
        if (z0 > 0) out.emplace_back(CD(0), z0 * mult);
        if (c.size() <= 1) return;
        auto roots = detail::aberth(c, std::min(tol, 1e-12));
        double scale = 0;
        for (auto& ck : c) scale = std::max(scale, std::abs(ck));
        for (auto& r : roots) {
            double res = std::abs(detail::horner(c, r));
            double allow = 1e-6 * scale * std::max(1.0, std::pow(std::abs(r), double(c.size() - 1)));
            if (!(res <= allow) || !is_finite(r))
                throw RootError("univariate_roots: iteration did not converge", res);
        }
        auto merged = detail::cluster_merge(roots, tol);
        for (auto& [r, m] : merged) out.emplace_back(r, m * mult);
    };

    if (p.all_exact()) {
        for (auto& [g, k] : squarefree_decomposition(p)) run_simple(g, k);
    } else {
        run_simple(p, 1);
    }
    // deterministic order
    std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) {
        if (x.first.real() != y.first.real()) return x.first.real() < y.first.real();
        return x.first.imag() < y.first.imag();
    });
    int total = 0;
    for (auto& [r, m] : out) total += m;
    if (total != p.degree()) {
        // approximate path may have merged distinct roots of near-equal value;
        // re-split is not possible, report honestly
        throw RootError("univariate_roots: multiplicities do not sum to degree");
    }
    return out;
}

// ---------------------------------------------------------------------------
// Resultants
// ---------------------------------------------------------------------------
inline constexpr int kResultantDegreeCap = 24;

// determinant by Gaussian elimination over Coeff (exact division when exact)
inline Coeff determinant(std::vector<std::vector<Coeff>> m) {
    size_t n = m.size();
    Coeff det(1);
    bool exact = true;
    for (auto& row : m)
        for (auto& v : row)
            if (!v.exact()) exact = false;
    for (size_t col = 0; col < n; ++col) {
        size_t piv = col;
        if (exact) {
            while (piv < n && m[piv][col].is_zero()) ++piv;
        } else {
            double best = -1;
            piv = n;
            for (size_t r = col; r < n; ++r)
                if (m[r][col].abs() > best) { best = m[r][col].abs(); piv = r; }
            if (piv == n || m[piv][col].abs() == 0.0) piv = n;
        }
        if (piv >= n) return Coeff(0);
        if (piv != col) { std::swap(m[piv], m[col]); det = -det; }
        det *= m[col][col];
        Coeff inv = Coeff(1) / m[col][col];
        for (size_t r = col + 1; r < n; ++r) {
            if (m[r][col].is_zero()) continue;
            Coeff f = m[r][col] * inv;
            for (size_t cc = col; cc < n; ++cc) m[r][cc] -= f * m[col][cc];
        }
    }
    return det;
}

// Sylvester determinant of two univariate polynomials laid out with ascending
// coefficients (this orientation matches the convention used throughout).
// m and n are the formal degrees (>= actual degree); entries beyond a
// polynomial's actual degree are zero, which keeps specialization coherent.
inline Coeff sylvester_resultant(const Poly1& a, const Poly1& b, int m, int n) {
    if (m == 0 && n == 0) throw std::domain_error("resultant: neither input depends on the eliminated variable");
    size_t size = size_t(m + n);
    std::vector<std::vector<Coeff>> M(size, std::vector<Coeff>(size, Coeff(0)));
    for (int r = 0; r < n; ++r)
        for (int k = 0; k <= m; ++k) M[size_t(r)][size_t(r + k)] = a.coeff(k);
    for (int s = 0; s < m; ++s)
        for (int k = 0; k <= n; ++k) M[size_t(n + s)][size_t(s + k)] = b.coeff(k);
    return determinant(std::move(M));
}

enum class Var { X, Y };

// Resultant eliminating `var`; the result is univariate in the other variable.
// Computed by specialize-and-interpolate so that specialization always agrees
// with the Sylvester determinant of the formal-degree matrix.
inline Poly1 resultant(const Poly2& p, const Poly2& q, Var var) {
    if (p.is_zero() || q.is_zero()) throw std::domain_error("resultant: zero input polynomial");
    Poly2 a = (var == Var::Y) ? p : p.swap_vars();
    Poly2 b = (var == Var::Y) ? q : q.swap_vars();
    int m = std::max(a.deg_y(), 0), n = std::max(b.deg_y(), 0);
    if (m == 0 && n == 0)
        throw std::domain_error("resultant: neither input depends on the eliminated variable");
    if (m + n > kResultantDegreeCap)
        throw std::domain_error("resultant: Sylvester dimension exceeds degree cap " +
                                std::to_string(kResultantDegreeCap));
    int dxa = std::max(a.deg_x(), 0), dxb = std::max(b.deg_x(), 0);
    long bound = long(n) * dxa + long(m) * dxb;

    bool exact = a.all_exact() && b.all_exact();
    if (exact) {
        // integer nodes 0, 1, -1, 2, -2, ... then exact Lagrange interpolation
        std::vector<Coeff> xs, ys;
        for (long t = 0; long(xs.size()) <= bound; ++t) {
            long node = (t % 2 == 0) ? (t / 2) : -(t / 2 + 1);
            Coeff x0{node};
            xs.push_back(x0);
            ys.push_back(sylvester_resultant(a.substitute_x(x0), b.substitute_x(x0), m, n));
        }
        // Newton divided differences, exact
        size_t N = xs.size();
        std::vector<Coeff> dd = ys;
        for (size_t lvl = 1; lvl < N; ++lvl)
            for (size_t k = N - 1; k >= lvl; --k)
                dd[k] = (dd[k] - dd[k - 1]) / (xs[k] - xs[k - lvl]);
        Poly1 acc, basis = Poly1::constant(Coeff(1));
        for (size_t k = 0; k < N; ++k) {
            acc = acc + basis * dd[k];
            basis = basis * Poly1({-xs[k], Coeff(1)});
        }
        return acc;
    }
    // approximate path: scaled roots-of-unity nodes and inverse DFT
    size_t N = size_t(bound) + 1;
    double rho = 1.0;
    std::vector<CD> vals(N);
    for (size_t k = 0; k < N; ++k) {
        double th = 2.0 * M_PI * double(k) / double(N);
        CD x0 = rho * CD(std::cos(th), std::sin(th));
        vals[k] = sylvester_resultant(a.substitute_x(Coeff(x0)), b.substitute_x(Coeff(x0)), m, n).value();
    }
    std::vector<Coeff> coeffs(N, Coeff(0));
    double maxc = 0;
    std::vector<CD> raw(N);
    for (size_t j = 0; j < N; ++j) {
        CD acc = 0;
        for (size_t k = 0; k < N; ++k) {
            double th = -2.0 * M_PI * double(j) * double(k) / double(N);
            acc += vals[k] * CD(std::cos(th), std::sin(th));
        }
        raw[j] = acc / double(N) / std::pow(rho, double(j));
        maxc = std::max(maxc, std::abs(raw[j]));
    }
    for (size_t j = 0; j < N; ++j)
        coeffs[j] = (std::abs(raw[j]) < 1e-11 * std::max(maxc, 1e-300)) ? Coeff(CD(0.0)) : Coeff(raw[j]);
    return Poly1(std::move(coeffs));
}

// ---------------------------------------------------------------------------
// Common zeros of a bivariate pair
// ---------------------------------------------------------------------------
struct AffineZero {
    CD x, y;
    int multiplicity = 1;
};
struct CommonZerosResult {
    std::vector<AffineZero> points;
    std::vector<std::string> warnings;
};

struct CommonComponentError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline CommonZerosResult common_zeros(const Poly2& p, const Poly2& q, double tol) {
    CommonZerosResult out;
    bool pzero = p.is_zero(), qzero = q.is_zero();
    if (pzero && qzero) throw CommonComponentError("common_zeros: both inputs are zero");
    if (pzero || qzero) {
        const Poly2& other = pzero ? q : p;
        if (other.is_constant()) return out; // nonzero constant: empty zero set
        throw CommonComponentError("common_zeros: zero set has a common component");
    }
    if (p.is_constant() || q.is_constant()) return out;
    if (p.all_exact() && q.all_exact() && has_common_factor(p, q))
        throw CommonComponentError("common_zeros: inputs share a nonconstant factor");

    auto px = p.derivative_x(), py = p.derivative_y();
    auto qx = q.derivative_x(), qy = q.derivative_y();
    auto newton_polish = [&](CD& x, CD& y) {
        for (int it = 0; it < 30; ++it) {
            CD f = p.eval(x, y), g = q.eval(x, y);
            CD a = px.eval(x, y), b = py.eval(x, y);
            CD c = qx.eval(x, y), d = qy.eval(x, y);
            CD det = a * d - b * c;
            if (std::abs(det) < 1e-300) break;
            CD dx = (f * d - b * g) / det;
            CD dy = (a * g - f * c) / det;
            x -= dx;
            y -= dy;
            if (std::abs(dx) + std::abs(dy) < 1e-16 * (1.0 + std::abs(x) + std::abs(y))) break;
        }
    };

    // x-candidates from eliminating y (or swap when p,q are pure-x free)
    std::vector<std::pair<CD, int>> xroots;
    {
        Poly1 rx;
        bool ok = true;
        try {
            rx = resultant(p, q, Var::Y);
        } catch (const std::domain_error&) {
            ok = false;
        }
        if (ok) {
            if (rx.is_zero()) throw CommonComponentError("common_zeros: resultant vanishes identically");
            if (rx.degree() >= 1) xroots = univariate_roots(rx, std::max(tol, 1e-12));
        } else {
            // both independent of y: zero sets are unions of vertical lines
            throw CommonComponentError("common_zeros: zero set has a common component (both inputs pure-x)");
        }
    }

    for (auto& [x0r, mult] : xroots) {
        CD x0 = x0r;
        // y-candidates: roots of the slice with larger y-degree, plus the other
        std::vector<CD> cands;
        for (const Poly2* f : {&p, &q}) {
            Poly1 slice = f->substitute_x(Coeff(x0));
            if (slice.degree() >= 1) {
                try {
                    for (auto& [r, mm] : univariate_roots(slice, std::max(tol, 1e-10)))
                        cands.push_back(r);
                } catch (const RootError&) {
                    out.warnings.push_back("root refinement failed on a fiber slice");
                }
            }
        }
        std::vector<AffineZero> local;
        for (CD y0 : cands) {
            CD x = x0, y = y0;
            newton_polish(x, y);
            if (std::abs(p.eval(x, y)) < tol && std::abs(q.eval(x, y)) < tol) {
                bool dup = false;
                for (auto& pt : local)
                    if (std::abs(pt.x - x) + std::abs(pt.y - y) <
                        10 * tol * (1.0 + std::abs(x) + std::abs(y))) { dup = true; break; }
                if (!dup) local.push_back({x, y, 1});
            }
        }
        if (local.size() == 1) local[0].multiplicity = mult;
        else if (local.empty() && mult > 0)
            out.warnings.push_back("no zero recovered above x-candidate (possible leading-coefficient degeneracy)");
        for (auto& pt : local) out.points.push_back(pt);
    }
    // global dedupe across nearby x-candidates
    std::vector<AffineZero> dedup;
    for (auto& pt : out.points) {
        bool merged = false;
        for (auto& d : dedup)
            if (std::abs(d.x - pt.x) + std::abs(d.y - pt.y) <
                10 * tol * (1.0 + std::abs(pt.x) + std::abs(pt.y))) {
                merged = true;
                break;
            }
        if (!merged) dedup.push_back(pt);
    }
    out.points = std::move(dedup);
    std::sort(out.points.begin(), out.points.end(), [](const AffineZero& a, const AffineZero& b) {
        if (a.x.real() != b.x.real()) return a.x.real() < b.x.real();
        if (a.x.imag() != b.x.imag()) return a.x.imag() < b.x.imag();
        if (a.y.real() != b.y.real()) return a.y.real() < b.y.real();
        return a.y.imag() < b.y.imag();
    });
    return out;
}

// ---------------------------------------------------------------------------
// Homogenization
// ---------------------------------------------------------------------------
struct Exp3 {
    int i = 0, j = 0, k = 0;
    friend bool operator<(const Exp3& a, const Exp3& b) {
        if (a.i != b.i) return a.i < b.i;
        if (a.j != b.j) return a.j < b.j;
        return a.k < b.k;
    }
};

struct HPoly3 {
    std::map<Exp3, Coeff> terms;
    int total_degree = 0;
};

inline HPoly3 homogenize(const Poly2& p, int d) {
    if (d < p.degree()) throw std::domain_error("homogenize: d < deg p");
    HPoly3 h;
    h.total_degree = d;
    for (const auto& [e, c] : p.terms())
        h.terms.emplace(Exp3{e.i, e.j, d - e.i - e.j}, c);
    return h;
}

enum class AffineChart { Z1, X1, Y1 }; // Z=1 (affine), X=1 (U1), Y=1 (U2)

inline Poly2 dehomogenize(const HPoly3& h, AffineChart chart) {
    Poly2 p;
    for (const auto& [e, c] : h.terms) {
        switch (chart) {
            case AffineChart::Z1: p.add_term(e.i, e.j, c); break;
            case AffineChart::X1: p.add_term(e.k, e.j, c); break; // (u, v) = (Z/X, Y/X)
            case AffineChart::Y1: p.add_term(e.k, e.i, c); break; // (u', w) = (Z/Y, X/Y)
        }
    }
    return p;
}

} // namespace foliana

#endif
