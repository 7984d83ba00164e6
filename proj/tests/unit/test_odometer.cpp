#include "l2rank/odometer.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <random>

using namespace l2rank;

namespace {

Space odo(std::vector<int> r, Continuation c = Continuation::Periodic) {
    return Space::odometer(RadixSequence(std::move(r), c));
}

CrossedMatrix scalar(const CrossedElement& e) { return CrossedMatrix::scalar(e); }

// Rank over Q(s) is the maximum rank over sample points avoiding the finitely many bad values.
std::size_t sampled_rank(const LaurentMatrix& m) {
    std::size_t best = 0;
    for (Rational s : {Rational(2), Rational(-3), Rational(5, 7), Rational(11, 3), Rational(-13, 17)}) {
        oracle::Dense d = oracle::zeros(m.size(), m.empty() ? 0 : m[0].size());
        for (std::size_t i = 0; i < m.size(); ++i)
            for (std::size_t j = 0; j < m[i].size(); ++j) {
                const LaurentPoly& p = m[i][j];
                Rational v = 0, pw = 1;
                const int lo = p.valuation();
                for (int e = 0; e < std::abs(lo); ++e) pw = lo < 0 ? Rational(pw / s) : Rational(pw * s);
                for (int e = lo; e <= p.max_exponent() && !p.is_zero(); ++e) {
                    v += p.coeff(e) * pw;
                    pw *= s;
                }
                d[i][j] = v;
            }
        best = std::max(best, oracle::rank(d));
    }
    return best;
}

CrossedMatrix random_element(std::mt19937& gen, const Space& sp, std::size_t k, int level) {
    CrossedMatrix a(k);
    for (int t = 0; t < 4; ++t) {
        std::vector<int> prefix;
        const int len = static_cast<int>(gen() % (level + 1));
        for (int c = 1; c <= len; ++c) prefix.push_back(static_cast<int>(gen() % sp.radix(c)));
        a.add(gen() % k, gen() % k, Rational(static_cast<int>(gen() % 5) - 2), Cylinder::prefix(prefix),
              static_cast<long>(gen() % 5) - 2);
    }
    return a;
}

}  // namespace

TEST_CASE("supernatural membership") {
    Supernatural n(RadixSequence({2, 3}, Continuation::Periodic));
    CHECK(znumber_contains(n, Rational(5, 12)));
    CHECK_FALSE(znumber_contains(n, Rational(1, 5)));
    CHECK(znumber_contains(n, Rational(-7)));
    CHECK(n.exponent(2).infinite);
    CHECK(n.exponent(5) == PrimeExponent{false, 0});
    Supernatural c(RadixSequence({2, 3}, Continuation::Constant));
    CHECK(c.exponent(2) == PrimeExponent{false, 1});
    CHECK(c.exponent(3).infinite);
    CHECK_FALSE(znumber_contains(c, Rational(1, 4)));
    CHECK(znumber_contains(c, Rational(1, 54)));
}

TEST_CASE("realization at level one") {
    const Space sp = odo({2});
    const Poly s = Poly::x();
    LaurentMatrix t = realize_at_level(sp, scalar(CrossedElement::monomial(1, Cylinder{}, 1)), 1);
    CHECK(t == LaurentMatrix{{0, LaurentPoly(s, 0)}, {1, 0}});
    LaurentMatrix e = realize_at_level(sp, scalar(CrossedElement::monomial(1, Cylinder::prefix({0}), 0)), 1);
    CHECK(e == LaurentMatrix{{1, 0}, {0, 0}});
}

TEST_CASE("t to the p_m is s times the identity") {
    for (auto radices : {std::vector<int>{2, 3}, std::vector<int>{3, 2, 2}}) {
        const Space sp = odo(radices);
        for (int m = 1; m <= 3; ++m) {
            LaurentMatrix t = realize_at_level(sp, scalar(CrossedElement::monomial(1, Cylinder{}, 1)), m);
            LaurentMatrix p = t;
            const long pm = sp.radices().partial_product(m).get_si();
            for (long i = 1; i < pm; ++i) p = laurent_multiply(p, t);
            for (std::size_t i = 0; i < p.size(); ++i)
                for (std::size_t j = 0; j < p.size(); ++j)
                    CHECK(p[i][j] == (i == j ? LaurentPoly::monomial(1, 1) : LaurentPoly()));
        }
    }
}

TEST_CASE("realization is a *-homomorphism") {
    const Space sp = odo({2, 3});
    std::mt19937 gen(41);
    for (int it = 0; it < 30; ++it) {
        CrossedMatrix a = random_element(gen, sp, 2, 2), b = random_element(gen, sp, 2, 2);
        const int m = 2;
        CHECK(realize_at_level(sp, multiply(sp, a, b), m) ==
              laurent_multiply(realize_at_level(sp, a, m), realize_at_level(sp, b, m)));
        CHECK(realize_at_level(sp, adjoint(sp, a), m) == laurent_adjoint(realize_at_level(sp, a, m)));
    }
}

TEST_CASE("odometer ranks") {
    for (auto radices : {std::vector<int>{2, 3, 2, 3}, std::vector<int>{2, 2, 2, 2}}) {
        const Space sp = odo(radices);
        for (int m = 1; m <= 3; ++m) {
            const long pm = sp.radices().partial_product(m).get_si();
            for (long i = 0; i < pm; i += std::max(1L, pm / 4)) {
                OdoRank r = odo_rank(sp, scalar(level_unit(sp, m, i)));
                CHECK(r.rank == Rational(1, pm));
            }
        }
    }
    const Space sp = odo({2}, Continuation::Constant);
    CHECK(odo_rank(sp, scalar(CrossedElement::monomial(1, Cylinder{}, 1))).rank == 1);
    CrossedElement comp = CrossedElement::scalar(1) - CrossedElement::monomial(1, Cylinder::prefix({0}), 0);
    CHECK(odo_rank(sp, scalar(comp)).rank == Rational(1, 2));
}

TEST_CASE("level consistency") {
    const Space sp = odo({2, 3});
    CrossedMatrix e00 = scalar(level_unit(sp, 1, 0));
    CHECK(odo_rank(sp, e00, 1).rank == Rational(1, 2));
    OdoRank at2 = odo_rank(sp, e00, 2);
    CHECK(at2.rank == Rational(1, 2));
    CHECK(laurent_rank(realize_at_level(sp, e00, 2)) == 3);
    CHECK(level_consistency(sp, scalar(CrossedElement::monomial(1, Cylinder{}, 1)), 1));

    std::mt19937 gen(43);
    const Space sq = odo({2, 2});
    for (int it = 0; it < 20; ++it) {
        CrossedMatrix a = random_element(gen, sq, 2, 2);
        const int m = std::max(1, element_level(a));
        CHECK(embed_level(sq, realize_at_level(sq, a, m), 2, m) == realize_at_level(sq, a, m + 1));
        CHECK(level_consistency(sq, a, m));
    }
}

TEST_CASE("laurent rank agrees with sampled evaluation") {
    std::mt19937 gen(47);
    const Space sp = odo({3, 2});
    for (int it = 0; it < 25; ++it) {
        CrossedMatrix a = random_element(gen, sp, 2, 2);
        LaurentMatrix r = realize_at_level(sp, a, 2);
        CHECK(laurent_rank(r) == sampled_rank(r));
    }
}

TEST_CASE("diagonal projections realize every multiple of 1/p_m") {
    const Space sp = odo({2, 3});
    for (int m = 1; m <= 2; ++m) {
        const long pm = sp.radices().partial_product(m).get_si();
        for (long a = 0; a <= pm; ++a) CHECK(odo_rank(sp, scalar(diagonal_projection(sp, m, a)), m).rank == Rational(a) / pm);
    }
}
