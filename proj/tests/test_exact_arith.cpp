#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <random>

#include "tors5/exact_arith.hpp"

using namespace tors5;

namespace {

PolyQ random_poly(std::mt19937_64& rng, int max_deg, int bound, bool nonzero_lc = true) {
    std::uniform_int_distribution<int> dd(0, max_deg), cd(-bound, bound);
    int d = dd(rng);
    std::vector<BigRat> c(d + 1);
    for (auto& v : c) v = cd(rng);
    if (nonzero_lc && sgn(c[d]) == 0) c[d] = 1;
    return PolyQ(c);
}

std::multiset<int> degree_multiset(const Factorization& f) {
    std::multiset<int> s;
    for (auto& [g, e] : f.factors)
        for (int i = 0; i < e; ++i) s.insert(g.degree());
    return s;
}

}  // namespace

TEST_CASE("basic ring operations") {
    PolyQ a{1, 1}, b{-1, 1};
    CHECK(a * b == PolyQ{-1, 0, 1});
    auto [q, r] = divrem(PolyQ{-1, 0, 1}, PolyQ{-1, 1});
    CHECK(q == PolyQ{1, 1});
    CHECK(r.is_zero());
    CHECK_THROWS_AS(divrem(a, PolyQ()), MathError);
    CHECK(PolyQ().degree() == -1);
    CHECK(PolyQ{3, 0, 0}.degree() == 0);
}

TEST_CASE("rational invariants are canonical") {
    BigRat q(6, -4);
    PolyQ p(std::vector<BigRat>{q});
    CHECK(p.coeffs()[0].get_den() == 2);
    CHECK(p.coeffs()[0].get_num() == -3);
}

TEST_CASE("gcd") {
    CHECK(poly_gcd(PolyQ{-1, 0, 1}, PolyQ{-1, 1}) == PolyQ{-1, 1});
    PolyQ f{-11, 0, 0, 0, 0, 1};
    CHECK(poly_gcd(f, f.derivative()) == PolyQ{1});
    CHECK_THROWS_AS(poly_gcd(PolyQ(), PolyQ()), MathError);
    auto x = poly_xgcd(PolyQ{-1, 0, 1}, PolyQ{2, 1});
    CHECK(x.g == PolyQ{1});
    CHECK(x.s * PolyQ{-1, 0, 1} + x.t * PolyQ{2, 1} == PolyQ{1});
}

TEST_CASE("factor small examples") {
    auto f = factor_over_Q(PolyQ{-1, 0, 1});
    REQUIRE(f.factors.size() == 2);
    CHECK(f.factors[0].first == PolyQ{-1, 1});
    CHECK(f.factors[1].first == PolyQ{1, 1});
    auto g = factor_over_Q(PolyQ{-11, 0, 0, 0, 0, 1});
    REQUIRE(g.factors.size() == 1);
    CHECK(g.factors[0].first.degree() == 5);
    CHECK(possible_factor_degrees(PolyQ{-11, 0, 0, 0, 0, 1}, 8) == std::vector<int>{5});
    // repeated and non-monic input
    PolyQ h = PolyQ{2, 3} * PolyQ{2, 3} * PolyQ{1, 0, 1} * PolyQ{0, 1};
    auto fh = factor_over_Q(h);
    CHECK(fh.expand() == h);
    CHECK(fh.factors.size() == 3);
    // Swinnerton-Dyer style: x^4 - 10x^2 + 1 is irreducible but splits mod every prime
    auto sd = factor_over_Q(PolyQ{1, 0, -10, 0, 1});
    CHECK(sd.factors.size() == 1);
    CHECK(rational_roots(PolyQ{-6, 11, -6, 1}) == std::vector<BigRat>{1, 2, 3});
    CHECK(rational_roots(PolyQ{-1, 2}) == std::vector<BigRat>{BigRat(1, 2)});
}

TEST_CASE("small degree factors") {
    PolyQ big{-11, 0, 0, 0, 0, 1};
    PolyQ p = big * PolyQ{1, 0, 1} * PolyQ{-3, 1} * PolyQ{1, 1, 0, 0, 0, 0, 0, 1};
    auto s = small_degree_factors(p, 2);
    REQUIRE(s.size() == 2);
    CHECK(s[0] == PolyQ{-3, 1});
    CHECK(s[1] == PolyQ{1, 0, 1});
    auto s5 = small_degree_factors(p, 5);
    CHECK(s5.size() == 3);
}

TEST_CASE("resultant and discriminant") {
    CHECK(resultant(PolyQ{-2, 1}, PolyQ{-3, 1}) == -1);
    PolyQ f{1, 0, 1};
    CHECK(resultant(f, f.derivative()) == 4);
    CHECK(discriminant(f) == -4);
    CHECK(discriminant(PolyQ{1, 1, 0, 1}) == -31);
    // against the product formula for split polynomials
    PolyQ a = PolyQ{-1, 1} * PolyQ{-2, 1} * PolyQ{5, 2};
    PolyQ b = PolyQ{3, 1} * PolyQ{1, 0, 1};
    BigRat expect = BigRat(8);  // lc(a)^deg(b)
    for (BigRat r : {BigRat(1), BigRat(2), BigRat(-5, 2)}) expect *= b.eval(r);
    CHECK(resultant(a, b) == expect);
}

TEST_CASE("interpolation and squares") {
    PolyQ f(std::vector<BigRat>{3, -1, 0, BigRat(2, 7)});
    std::vector<BigRat> xs, ys;
    for (int i = 0; i < 4; ++i) {
        xs.emplace_back(i * 3 - 2);
        ys.push_back(f.eval(xs.back()));
    }
    CHECK(interpolate(xs, ys) == f);
    BigRat r;
    CHECK(is_rational_square(BigRat(9, 4), &r));
    CHECK(r == BigRat(3, 2));
    CHECK_FALSE(is_rational_square(BigRat(-9, 4)));
    CHECK_FALSE(is_rational_square(BigRat(125)));
}

TEST_CASE("shift and scale") {
    PolyQ f{1, 2, 3};
    CHECK(f.shift(1) == f.compose(PolyQ{1, 1}));
    CHECK(f.scale_var(2) == f.compose(PolyQ{0, 2}));
}

TEST_CASE("modular arithmetic") {
    PolyZn f(7, {1, 0, 1});  // irreducible mod 7
    CHECK(factor_mod_p(f).size() == 1);
    PolyZn g(5, {1, 0, 1});  // splits mod 5
    auto fs = factor_mod_p(g);
    CHECK(fs.size() == 2);
    CHECK(inv_mod(3, 7) == 5);
    CHECK_FALSE(is_squarefree_mod(PolyZn(5, {1, 2, 1})));
}

TEST_CASE("property: ring axioms and division") {
    std::mt19937_64 rng(1);
    for (int it = 0; it < 100; ++it) {
        PolyQ a = random_poly(rng, 8, 20), b = random_poly(rng, 8, 20), c = random_poly(rng, 8, 20);
        CHECK((a + b) * c == a * c + b * c);
        CHECK(a * b == b * a);
        if (!b.is_zero()) {
            auto [q, r] = divrem(a, b);
            CHECK(q * b + r == a);
            CHECK(r.degree() < b.degree());
        }
    }
}

TEST_CASE("property: factorization round trip on 200 random products") {
    std::mt19937_64 rng(7);
    for (int it = 0; it < 200; ++it) {
        int k = 1 + static_cast<int>(rng() % 4);
        PolyQ prod = PolyQ::constant(BigRat(1 + static_cast<long>(rng() % 5)));
        std::multiset<int> expect;
        for (int j = 0; j < k; ++j) {
            PolyQ g;
            while (g.degree() < 1) g = random_poly(rng, 6, 9);
            for (int d : degree_multiset(factor_over_Q(g))) expect.insert(d);
            prod *= g;
        }
        auto fac = factor_over_Q(prod);
        CHECK(fac.expand() == prod);
        CHECK(degree_multiset(fac) == expect);
        for (size_t i = 0; i < fac.factors.size(); ++i) {
            CHECK(fac.factors[i].first.lc() == 1);
            if (i) CHECK(lex_less(fac.factors[i - 1].first, fac.factors[i].first));
        }
        for (BigRat c : {BigRat(1), BigRat(-3)})
            CHECK(degree_multiset(factor_over_Q(prod.shift(c))) == degree_multiset(fac));
    }
}

TEST_CASE("property: gcd scales with common factor") {
    std::mt19937_64 rng(3);
    int tested = 0;
    while (tested < 50) {
        PolyQ a = random_poly(rng, 6, 9), b = random_poly(rng, 6, 9), g = random_poly(rng, 4, 9);
        if (a.degree() < 1 || b.degree() < 1 || g.degree() < 1) continue;
        if (poly_gcd(a, b).degree() != 0) continue;
        CHECK(poly_gcd(a * g, b * g) == g.monic());
        ++tested;
    }
}
