// Shared deterministic generators and comparison helpers for the test suites.
#ifndef FOLIANA_TESTS_GEN_HPP
#define FOLIANA_TESTS_GEN_HPP

#include "foliana/poly.hpp"

#include <random>

namespace foliana::testgen {

using Rng = std::mt19937;

inline Coeff gauss_int(Rng& rng, int lo = -9, int hi = 9, bool allow_imag = true) {
    std::uniform_int_distribution<int> d(lo, hi);
    GaussQ g(BigRat(d(rng)), allow_imag ? BigRat(d(rng)) : BigRat(0));
    return Coeff(g);
}

// random exact polynomial on the integer lattice, total degree <= max_deg
inline Poly2 random_poly(Rng& rng, int max_deg, int max_terms = 8, bool allow_imag = true) {
    std::uniform_int_distribution<int> nd(1, max_terms);
    std::uniform_int_distribution<int> ed(0, max_deg);
    Poly2 p;
    int n = nd(rng);
    for (int t = 0; t < n; ++t) {
        int i = ed(rng);
        std::uniform_int_distribution<int> jd(0, max_deg - i);
        int j = jd(rng);
        p.add_term(i, j, gauss_int(rng, -9, 9, allow_imag));
    }
    return p;
}

inline bool approx_eq(CD a, CD b, double tol) { return std::abs(a - b) <= tol; }

} // namespace foliana::testgen

#endif
