#include "foliana/roots.hpp"
#include "support/gen.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace foliana;
using foliana::testgen::Rng;

static Coeff gq(long re, long im = 0) { return Coeff(GaussQ(BigRat(re), BigRat(im))); }

TEST_CASE("parse: direct readings") {
    Poly2 p = parse_poly("x + y");
    REQUIRE(p.terms().size() == 2);
    CHECK(p.coeff(1, 0) == Coeff(1));
    CHECK(p.coeff(0, 1) == Coeff(1));

    Poly2 q = parse_poly("(1+2i)*x^2*y - 3");
    REQUIRE(q.terms().size() == 2);
    CHECK(q.coeff(2, 1) == gq(1, 2));
    CHECK(q.coeff(0, 0) == gq(-3));

    CHECK(parse_poly("x*y - x*y").empty());
}

TEST_CASE("parse: literal forms") {
    CHECK(parse_poly("1.5").coeff(0, 0) == Coeff(GaussQ(BigRat(3, 2))));
    CHECK(parse_poly("2e-1").coeff(0, 0) == Coeff(GaussQ(BigRat(1, 5))));
    CHECK(parse_poly("3i").coeff(0, 0) == gq(0, 3));
    CHECK(parse_poly("i").coeff(0, 0) == gq(0, 1));
    CHECK(parse_poly("(0+1i)*y").coeff(0, 1) == gq(0, 1));
    CHECK(parse_poly("2i/3").coeff(0, 0) == Coeff(GaussQ(BigRat(0), BigRat(2, 3))));
    CHECK(parse_poly("-x").coeff(1, 0) == gq(-1));
}

TEST_CASE("parse: errors carry position") {
    try {
        parse_poly("x +\n* y");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line == 2);
        CHECK(e.col == 1);
    }
    CHECK_THROWS_AS(parse_poly("x^-2"), ParseError);
    CHECK_THROWS_AS(parse_poly("x^2.5"), ParseError);
    CHECK_THROWS_AS(parse_poly("1e400"), ParseError);
    CHECK_THROWS_AS(parse_poly(""), ParseError);
    CHECK_THROWS_AS(parse_poly("x/(y)"), ParseError);
}

TEST_CASE("parser round-trip on random lattice polynomials") {
    Rng rng(20260810);
    for (int t = 0; t < 1000; ++t) {
        Poly2 p = testgen::random_poly(rng, 6);
        Poly2 back = parse_poly(poly_to_string(p));
        REQUIRE(back == p);
    }
}

TEST_CASE("printer emits re-parseable rationals") {
    Poly2 p;
    p.add_term(1, 0, Coeff(GaussQ(BigRat(1, 3), BigRat(-2, 7))));
    p.add_term(0, 0, Coeff(GaussQ(BigRat(-3, 2))));
    Poly2 back = parse_poly(poly_to_string(p));
    CHECK(back == p);
}

TEST_CASE("resultant: hand-checked Sylvester values") {
    Poly2 p = parse_poly("x+y"), q = parse_poly("y");
    Poly1 r = resultant(p, q, Var::Y);
    REQUIRE(r.degree() == 1);
    CHECK(r.coeff(1) == Coeff(1));
    CHECK(r.coeff(0) == Coeff(0));

    Poly1 r2 = resultant(parse_poly("x^2+y^2"), parse_poly("y-x"), Var::Y);
    REQUIRE(r2.degree() == 2);
    CHECK(r2.coeff(2) == gq(2));
    CHECK(r2.coeff(1) == Coeff(0));
    CHECK(r2.coeff(0) == Coeff(0));

    CHECK_THROWS_AS(resultant(parse_poly("x"), parse_poly("x"), Var::Y), std::domain_error);
}

TEST_CASE("resultant specialization property") {
    Rng rng(77);
    int done = 0;
    while (done < 60) {
        Poly2 p = testgen::random_poly(rng, 3);
        Poly2 q = testgen::random_poly(rng, 3);
        if (p.is_zero() || q.is_zero()) continue;
        if (p.deg_y() < 1 && q.deg_y() < 1) continue;
        Poly1 r;
        try {
            r = resultant(p, q, Var::Y);
        } catch (const std::domain_error&) {
            continue;
        }
        std::uniform_real_distribution<double> xd(-2.0, 2.0);
        CD x0(xd(rng), xd(rng));
        Poly1 a = p.substitute_x(Coeff(x0));
        Poly1 b = q.substitute_x(Coeff(x0));
        // generic draw: formal degrees match actual degrees
        if (a.degree() != std::max(p.deg_y(), 0) || b.degree() != std::max(q.deg_y(), 0)) continue;
        CD lhs = r.eval(x0);
        CD rhs = sylvester_resultant(a, b, a.degree(), b.degree()).value();
        double scale = std::max({1.0, std::abs(lhs), std::abs(rhs)});
        REQUIRE(std::abs(lhs - rhs) <= 1e-9 * scale);
        ++done;
    }
}

TEST_CASE("univariate roots: known values and multiplicity bookkeeping") {
    {
        Poly1 p({gq(1), gq(0), gq(1)}); // z^2 + 1
        auto roots = univariate_roots(p, 1e-10);
        REQUIRE(roots.size() == 2);
        CHECK(testgen::approx_eq(roots[0].first, CD(0, -1), 1e-12));
        CHECK(testgen::approx_eq(roots[1].first, CD(0, 1), 1e-12));
    }
    {
        Poly1 p({gq(0), gq(0), gq(1)}); // z^2
        auto roots = univariate_roots(p, 1e-10);
        REQUIRE(roots.size() == 1);
        CHECK(roots[0].first == CD(0));
        CHECK(roots[0].second == 2);
    }
    {
        Poly1 p({gq(-1), gq(0), gq(0), gq(1)}); // z^3 - 1
        auto roots = univariate_roots(p, 1e-10);
        REQUIRE(roots.size() == 3);
        for (auto& [r, m] : roots) {
            CHECK(m == 1);
            CHECK(std::abs(std::abs(r) - 1.0) < 1e-12);
            CHECK(std::abs(p.eval(r)) < 1e-10);
        }
    }
}

TEST_CASE("univariate roots: multiplicities always sum to degree") {
    Rng rng(99);
    for (int t = 0; t < 200; ++t) {
        // build products with repeated factors to exercise the square-free path
        std::uniform_int_distribution<int> nd(1, 4), md(1, 3);
        Poly1 p = Poly1::constant(gq(1));
        int deg = 0;
        int n = nd(rng);
        for (int f = 0; f < n && deg < 8; ++f) {
            int m = md(rng);
            Poly1 lin({testgen::gauss_int(rng, -4, 4), gq(1)});
            for (int k = 0; k < m && deg < 8; ++k) {
                p = p * lin;
                ++deg;
            }
        }
        if (p.degree() < 1) continue;
        auto roots = univariate_roots(p, 1e-9);
        int total = 0;
        for (auto& [r, m] : roots) total += m;
        REQUIRE(total == p.degree());
    }
}

TEST_CASE("common zeros: examples") {
    {
        auto res = common_zeros(parse_poly("x+y"), parse_poly("y"), 1e-10);
        REQUIRE(res.points.size() == 1);
        CHECK(testgen::approx_eq(res.points[0].x, CD(0), 1e-12));
        CHECK(testgen::approx_eq(res.points[0].y, CD(0), 1e-12));
    }
    {
        auto res = common_zeros(parse_poly("x^2-1"), parse_poly("y"), 1e-10);
        REQUIRE(res.points.size() == 2);
        CHECK(testgen::approx_eq(res.points[0].x, CD(-1), 1e-12));
        CHECK(testgen::approx_eq(res.points[1].x, CD(1), 1e-12));
    }
    {
        auto res = common_zeros(parse_poly("x^2+y^2-1"), parse_poly("x-y"), 1e-10);
        REQUIRE(res.points.size() == 2);
        double s = 1.0 / std::sqrt(2.0);
        CHECK(testgen::approx_eq(res.points[0].x, CD(-s), 1e-10));
        CHECK(testgen::approx_eq(res.points[0].y, CD(-s), 1e-10));
        CHECK(testgen::approx_eq(res.points[1].x, CD(s), 1e-10));
        CHECK(testgen::approx_eq(res.points[1].y, CD(s), 1e-10));
        for (auto& pt : res.points) {
            CHECK(std::abs(parse_poly("x^2+y^2-1").eval(pt.x, pt.y)) < 1e-10);
            CHECK(std::abs(parse_poly("x-y").eval(pt.x, pt.y)) < 1e-10);
        }
    }
    CHECK_THROWS_AS(common_zeros(parse_poly("x*y"), parse_poly("x*y+x"), 1e-10), CommonComponentError);
}

TEST_CASE("common zeros: factored grid completeness") {
    Rng rng(1234);
    for (int t = 0; t < 20; ++t) {
        std::uniform_int_distribution<int> nd(1, 3);
        std::uniform_int_distribution<int> cd(-3, 3);
        int na = nd(rng), nb = nd(rng);
        std::vector<int> as, bs;
        for (int k = 0; k < na; ++k) {
            int v = cd(rng);
            if (std::find(as.begin(), as.end(), v) == as.end()) as.push_back(v);
        }
        for (int k = 0; k < nb; ++k) {
            int v = cd(rng);
            if (std::find(bs.begin(), bs.end(), v) == bs.end()) bs.push_back(v);
        }
        Poly2 p = Poly2::constant(Coeff(1)), q = Poly2::constant(Coeff(1));
        for (int a : as) p = p * (Poly2::x() - Poly2::constant(Coeff(long(a))));
        for (int b : bs) q = q * (Poly2::y() - Poly2::constant(Coeff(long(b))));
        auto res = common_zeros(p, q, 1e-10);
        REQUIRE(res.points.size() == as.size() * bs.size());
        for (int a : as)
            for (int b : bs) {
                bool found = false;
                for (auto& pt : res.points)
                    if (std::abs(pt.x - CD(a)) < 1e-9 && std::abs(pt.y - CD(b)) < 1e-9) found = true;
                REQUIRE(found);
            }
    }
}

TEST_CASE("homogenize and dehomogenize") {
    Poly2 p = parse_poly("x+y");
    HPoly3 h1 = homogenize(p, 1);
    CHECK(h1.terms.size() == 2);
    CHECK(dehomogenize(h1, AffineChart::Z1) == p);

    HPoly3 h2 = homogenize(p, 2);
    // X*Z + Y*Z
    CHECK(h2.terms.at(Exp3{1, 0, 1}) == Coeff(1));
    CHECK(h2.terms.at(Exp3{0, 1, 1}) == Coeff(1));
    CHECK(dehomogenize(h2, AffineChart::Z1) == p);

    CHECK_THROWS_AS(homogenize(parse_poly("x^3"), 2), std::domain_error);

    // U1-chart image agrees with direct substitution x=1/u, y=v/u cleared by u^d
    Rng rng(5150);
    for (int t = 0; t < 50; ++t) {
        Poly2 f = testgen::random_poly(rng, 4);
        int d = std::max(f.degree(), 0) + (t % 2); // also exercise padding
        if (f.is_zero()) continue;
        Poly2 img = dehomogenize(homogenize(f, d), AffineChart::X1);
        std::uniform_real_distribution<double> xd(0.3, 1.7);
        CD u(xd(rng), xd(rng)), v(xd(rng), xd(rng));
        CD direct = std::pow(u, d) * f.eval(1.0 / u, v / u);
        CHECK(testgen::approx_eq(img.eval(u, v), direct, 1e-9 * (1.0 + std::abs(direct))));
    }
}

TEST_CASE("exact gcd and square-free helpers") {
    // (x+y)^2 * (x-y) vs (x+y) * y
    Poly2 a = parse_poly("(x+y)^2*(x-y)");
    Poly2 b = parse_poly("(x+y)*y");
    Poly2 g = gcd_bivar(a, b);
    CHECK(!g.is_constant());
    CHECK(has_common_factor(a, b));
    CHECK(!has_common_factor(parse_poly("x"), parse_poly("y")));
    CHECK(!has_common_factor(parse_poly("x+y"), parse_poly("y")));

    Poly1 u({gq(0), gq(0), gq(1)}); // x^2
    Poly1 v({gq(0), gq(1)});        // x
    auto sq = squarefree_decomposition(u * v * v);
    // x^2 * x^2 ... (x^4): one factor x with multiplicity 4
    int total = 0;
    for (auto& [f, m] : sq) total += f.degree() * m;
    CHECK(total == 4);
}

TEST_CASE("gaussian rational square roots") {
    auto s = sqrt_exact(GaussQ(BigRat(-4)));
    REQUIRE(s.has_value());
    CHECK(*s == GaussQ(BigRat(0), BigRat(2)));

    auto t = sqrt_exact(GaussQ(BigRat(0), BigRat(2)));
    REQUIRE(t.has_value()); // sqrt(2i) = 1+i
    CHECK(*t == GaussQ(BigRat(1), BigRat(1)));

    CHECK(!sqrt_exact(GaussQ(BigRat(2))).has_value());
    auto q = sqrt_exact(GaussQ(BigRat(9, 4)));
    REQUIRE(q.has_value());
    CHECK(*q == GaussQ(BigRat(3, 2)));
}
