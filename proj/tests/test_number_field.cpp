#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "tors5/elliptic.hpp"
#include "tors5/number_field.hpp"

using namespace tors5;

namespace {

const PolyQ kQuintic11{-11, 0, 0, 0, 0, 1};
const PolyQ kZeta11Plus{1, 3, -3, -4, 1, 1};

// det of the trace form on a basis
BigRat basis_discriminant(const std::vector<NFElem>& b) {
    size_t n = b.size();
    std::vector<std::vector<BigRat>> m(n, std::vector<BigRat>(n));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) m[i][j] = (b[i] * b[j]).trace();
    BigRat det = 1;
    for (size_t c = 0; c < n; ++c) {
        size_t r = c;
        while (r < n && m[r][c] == 0) ++r;
        if (r == n) return 0;
        if (r != c) {
            std::swap(m[r], m[c]);
            det = -det;
        }
        det *= m[c][c];
        for (size_t i = c + 1; i < n; ++i) {
            BigRat f = m[i][c] / m[c][c];
            for (size_t j = c; j < n; ++j) m[i][j] -= f * m[c][j];
        }
    }
    return det;
}

}  // namespace

TEST_CASE("integral basis discriminants") {
    struct Case {
        PolyQ f;
        long disc;
    };
    // x^5-12 is not maximal at 2, x^5-810 is not maximal at 3
    for (const auto& c : {Case{PolyQ{-12, 0, 0, 0, 0, 1}, 4050000}, Case{kZeta11Plus, 14641},
                          Case{PolyQ{-352, 0, 0, 0, 0, 1}, 45753125}, Case{PolyQ{-810, 0, 0, 0, 0, 1}, 2531250000L}}) {
        CAPTURE(c.f.str());
        auto K = NumberField::make(c.f);
        auto ZK = integral_basis(K);
        REQUIRE(ZK.size() == 5);
        CHECK(basis_discriminant(ZK) == c.disc);
        for (const auto& w : ZK) {
            PolyQ m = w.minpoly();
            for (const auto& a : m.coeffs()) CHECK(a.get_den() == 1);
        }
        auto R = reduced_basis(K);
        CHECK(basis_discriminant(R) == c.disc);
    }
}

TEST_CASE("element arithmetic") {
    auto K = NumberField::make(kQuintic11);
    NFElem t = NFElem::generator(K);
    CHECK(t.pow(5) == NFElem(K, BigRat(11)));
    CHECK(t.inverse() * t == NFElem(K, BigRat(1)));
    CHECK((t * t).minpoly() == PolyQ{-121, 0, 0, 0, 0, 1});
    CHECK(t.norm() == 11);
    CHECK(t.trace() == 0);
    CHECK(NFElem(K, BigRat(3)).trace() == 15);
    CHECK_THROWS_AS(NFElem(K, BigRat(0)).inverse(), MathError);
    auto L = NumberField::make(PolyQ{-12, 0, 0, 0, 0, 1});
    CHECK_THROWS_AS(t + NFElem::generator(L), MathError);
    CHECK_THROWS_AS(NumberField::make(PolyQ{-1, 0, 1}), MathError);
}

TEST_CASE("roots in a field") {
    auto K = NumberField::make(kQuintic11);
    auto r = nf_roots(kQuintic11, K);
    REQUIRE(r.size() == 1);
    CHECK(r[0] == NFElem::generator(K));
    CHECK(nf_roots(PolyQ{1, 0, 1}, K).empty());
    auto rr = nf_roots(PolyQ{-6, 11, -6, 1}, K);
    CHECK(rr.size() == 3);
    // root of a polynomial with field coefficients
    NFElem t = NFElem::generator(K);
    PolyK g(K, std::vector<NFElem>{-(t * t * t), NFElem(K, BigRat(0)), NFElem(K, BigRat(1))});
    CHECK(nf_roots(g).empty());  // theta^3 is not a square: its norm 11^3 is not
    PolyK g2(K, std::vector<NFElem>{-(t * t), NFElem(K, BigRat(0)), NFElem(K, BigRat(1))});
    auto r2 = nf_roots(g2);
    REQUIRE(r2.size() == 2);
    for (auto& x : r2) CHECK(x * x == t * t);
}

TEST_CASE("root of the first quintic factor of psi5 of 11a2 lies in Q(11^(1/5))") {
    CurveQ E(0, -1, 1, -7820, -263580);
    auto fac = factor_over_Q(E.division_polynomial(5));
    std::vector<PolyQ> quintics;
    for (auto& [g, e] : fac.factors)
        if (g.degree() == 5) quintics.push_back(g);
    REQUIRE(quintics.size() == 2);
    auto K = NumberField::make(kQuintic11);
    CHECK(nf_roots(quintics[0], K).size() >= 1);
    CHECK(nf_roots(quintics[1], K).size() >= 1);
}

TEST_CASE("galois and isomorphism tests") {
    auto Z = NumberField::make(kZeta11Plus);
    auto K = NumberField::make(kQuintic11);
    CHECK(is_galois(Z));
    CHECK_FALSE(is_galois(K));
    CHECK(is_galois(NumberField::make(PolyQ{-1, 1})));
    CHECK(are_isomorphic(K, NumberField::make(PolyQ{-11 * 32, 0, 0, 0, 0, 1})));
    CHECK_FALSE(are_isomorphic(K, NumberField::make(PolyQ{-12, 0, 0, 0, 0, 1})));
    CHECK(are_isomorphic(K, K));
    CHECK(galois_group_order20_profile(Z) == QuinticClosure::galois_C5);
    CHECK(galois_group_order20_profile(K) == QuinticClosure::frobenius_F5);
    CHECK(galois_group_order20_profile(NumberField::make(PolyQ{-1, -1, 0, 0, 0, 1})) == QuinticClosure::other);
    // dihedral quintic: x^5 - 5x + 12
    CHECK(galois_group_order20_profile(NumberField::make(PolyQ{12, -5, 0, 0, 0, 1})) == QuinticClosure::other);
    CHECK_THROWS_AS(galois_group_order20_profile(NumberField::make(PolyQ{-2, 0, 1})), MathError);
}

TEST_CASE("normalized defining polynomial") {
    auto K = NumberField::make(PolyQ{-11 * 32, 0, 0, 0, 0, 1});
    auto n = normalized_defining_poly(K);
    CHECK(n == kQuintic11);
    auto Z = NumberField::make(kZeta11Plus.shift(3));
    auto nz = normalized_defining_poly(Z);
    CHECK(are_isomorphic(NumberField::make(nz), Z));
    CHECK(nz.degree() == 5);
}

TEST_CASE("property: isomorphism is reflexive and symmetric on random quintics") {
    std::mt19937_64 rng(11);
    std::vector<FieldPtr> pool;
    while (pool.size() < 10) {
        std::vector<BigRat> c(6);
        for (int i = 0; i < 5; ++i) c[i] = static_cast<long>(rng() % 7) - 3;
        c[5] = 1;
        PolyQ f(c);
        if (factor_over_Q(f).factors.size() != 1 || factor_over_Q(f).factors[0].second != 1) continue;
        pool.push_back(NumberField::make(f));
        // a root-shifted redefinition of the same field
        if (pool.size() < 10) pool.push_back(NumberField::make(f.shift(2)));
    }
    for (auto& a : pool) {
        CHECK(are_isomorphic(a, a));
        for (auto& b : pool) CHECK(are_isomorphic(a, b) == are_isomorphic(b, a));
    }
    for (size_t i = 0; i + 1 < pool.size(); i += 2) CHECK(are_isomorphic(pool[i], pool[i + 1]));
}

TEST_CASE("property: galois fields stay galois under redefinition") {
    auto Z = NumberField::make(kZeta11Plus);
    for (long c : {1L, -2L, 5L}) {
        auto Z2 = NumberField::make(kZeta11Plus.shift(c));
        CHECK(is_galois(Z2));
        CHECK(are_isomorphic(Z, Z2));
    }
}

TEST_CASE("property: every returned root evaluates to zero") {
    std::mt19937_64 rng(5);
    auto K = NumberField::make(kZeta11Plus);
    for (int it = 0; it < 20; ++it) {
        // products of random rational factors and the defining polynomial
        PolyQ g = kZeta11Plus.shift(static_cast<long>(rng() % 3));
        g *= PolyQ{static_cast<long>(rng() % 9) - 4, 1};
        for (auto& r : nf_roots(g, K)) CHECK(PolyK(K, g).eval(r).is_zero());
        CHECK(!nf_roots(kZeta11Plus, K).empty());
    }
}
