#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "tors5/elliptic.hpp"

using namespace tors5;

namespace {

const PolyQ kQuintic11{-11, 0, 0, 0, 0, 1};
const PolyQ kZeta11Plus{1, 3, -3, -4, 1, 1};

BigRat horner(const std::vector<long>& c, const BigRat& t) {
    BigRat r = 0;
    for (size_t i = c.size(); i-- > 0;) r = r * t + c[i];
    return r;
}

CurveQ e5(const BigRat& t) {
    return CurveQ(0, 0, 0, -27 * horner({1, -228, 494, 228, 1}, t), 54 * horner({1, 522, -10005, 0, -10005, -522, 1}, t));
}

CurveQ e6(const BigRat& t) {
    return CurveQ(0, 0, 0, -27 * horner({1, 12, 14, -12, 1}, t), 54 * horner({1, 18, 75, 0, 75, -18, 1}, t));
}

CurveQ curve(long a1, long a2, long a3, long a4, long a6) { return CurveQ(a1, a2, a3, a4, a6); }

const CurveQ k11a2 = curve(0, -1, 1, -7820, -263580);
const CurveQ k11a3 = curve(0, -1, 1, 0, 0);
const CurveQ k15a3 = curve(1, 1, 1, -5, 2);
const CurveQ k50a1 = curve(1, 0, 1, -1, -2);
const CurveQ k66c3 = curve(1, 0, 0, -10065, -389499);
const CurveQ k121b1 = curve(0, -1, 1, -7, 10);

// Short Weierstrass doubling and addition over a number field with the
// curve coefficient a in the field (used for twists by field elements).
struct ShortCurveK {
    NFElem a;
    PointK add(const PointK& P, const PointK& Q) const {
        if (P.inf) return Q;
        if (Q.inf) return P;
        NFElem l;
        if (P.x == Q.x) {
            if ((P.y + Q.y).is_zero()) return PointK();
            NFElem three(a.field(), BigRat(3)), two(a.field(), BigRat(2));
            l = (three * P.x * P.x + a) / (two * P.y);
        } else {
            l = (Q.y - P.y) / (Q.x - P.x);
        }
        NFElem x3 = l * l - P.x - Q.x;
        return PointK(x3, l * (P.x - x3) - P.y);
    }
    PointK mul(PointK P, long k) const {
        PointK r;
        while (k) {
            if (k & 1) r = add(r, P);
            k >>= 1;
            if (k) P = add(P, P);
        }
        return r;
    }
};

}  // namespace

TEST_CASE("curve invariants") {
    CurveQ E = curve(0, 0, 0, 0, 1);
    CHECK(E.j_invariant() == 0);
    CHECK(curve(0, 0, 0, 1, 0).j_invariant() == 1728);
    for (const CurveQ& C : {k11a2, k15a3, k50a1, k66c3})
        CHECK(C.c4() * C.c4() * C.c4() - C.c6() * C.c6() == 1728 * C.discriminant());
    CHECK_THROWS_AS(curve(0, 0, 0, 0, 0), MathError);
    CHECK_THROWS_AS(curve(0, 0, 0, -3, 2), MathError);
    BigRat t = 2;
    BigRat j5 = horner({1, -228, 494, 228, 1}, t);
    j5 = j5 * j5 * j5 / (t * horner({-1, -11, 1}, t) * horner({-1, -11, 1}, t) * horner({-1, -11, 1}, t) *
                         horner({-1, -11, 1}, t) * horner({-1, -11, 1}, t));
    CHECK(e5(t).j_invariant() == j5);
}

TEST_CASE("point arithmetic") {
    CurveQ F = e6(32);
    PointQ R(BigRat(2499), BigRat(3456));
    REQUIRE(on_curve(F, R));
    CHECK(add(F, R, PointQ()) == R);
    CHECK(add(F, PointQ(), R) == R);
    CHECK(point_order(F, R) == 5);
    CHECK(multiply(F, R, 5).inf);
    CHECK(add(F, R, negate(F, R)).inf);
    CHECK(multiply(F, R, -2) == negate(F, multiply(F, R, 2)));
    CurveQ E = curve(0, 0, 0, -1, 0);
    PointQ T(BigRat(1), BigRat(0));
    CHECK(multiply(E, T, 2).inf);
    CHECK(point_order(E, T) == 2);
    // a point of infinite order exceeds any cap
    CurveQ C = curve(0, 0, 1, -1, 0);  // 37a1, generator (0, 0)
    CHECK(point_order(C, PointQ(BigRat(0), BigRat(0))) == 0);
}

TEST_CASE("division polynomials") {
    CHECK(curve(0, 0, 0, 0, 1).division_polynomial(3) == PolyQ{0, 12, 0, 0, 3});
    CHECK(k11a2.division_polynomial(5).degree() == 12);
    CHECK(k11a3.division_polynomial(25).degree() == 312);
    CHECK(k11a3.division_polynomial(7).degree() == 24);
    CHECK(k11a3.division_polynomial(2) == k11a3.beta());
    // even index: beta times the quotient, degree (n^2 - 4)/2 + 3
    CHECK(k11a3.division_polynomial(4).degree() == 9);
    // non-integral model agrees with the integral one after rescaling
    CurveQ H(0, 0, 0, BigRat(1, 16), BigRat(1, 64));
    CurveQ Hi = curve(0, 0, 0, 1, 1);  // x -> x/4, y -> y/8
    for (int n : {3, 4, 5}) {
        PolyQ a = H.division_polynomial(n).monic();
        PolyQ b = Hi.division_polynomial(n).scale_var(BigRat(4)).monic();
        CHECK(a == b);
    }
    // roots of psi_3 of y^2 = x^3 + 1 give points with [2]P = -P
    CurveQ E = curve(0, 0, 0, 0, 1);
    PointQ P(BigRat(0), BigRat(1));
    CHECK(multiply(E, P, 2) == negate(E, P));
}

TEST_CASE("the two quintic factors of psi5 of 11a2") {
    auto fac = factor_over_Q(k11a2.division_polynomial(5));
    std::vector<int> degs;
    for (auto& [g, e] : fac.factors) degs.push_back(g.degree());
    std::sort(degs.begin(), degs.end());
    CHECK(degs == std::vector<int>{2, 5, 5});
}

TEST_CASE("torsion over Q") {
    CHECK(torsion_over_Q(k11a3) == TorsionGroup::cyclic(5));
    CHECK(torsion_over_Q(k66c3) == TorsionGroup::cyclic(2));
    CHECK(torsion_over_Q(k15a3).order() == 8);
    CHECK(torsion_over_Q(k15a3) == TorsionGroup(2, 4));
    CHECK(torsion_over_Q(k11a2) == TorsionGroup::cyclic(1));
    CHECK(torsion_over_Q(curve(1, 1, 1, -10, -10)) == TorsionGroup(2, 4));  // 15a1
    CHECK(torsion_over_Q(curve(1, 0, 1, -19, 26)) == TorsionGroup(2, 6));  // 30a2
    CHECK(torsion_over_Q(curve(1, -1, 1, -3, 3)) == TorsionGroup::cyclic(7));  // 26b1
    CHECK(torsion_over_Q(curve(1, 0, 0, -45, 81)) == TorsionGroup::cyclic(10));  // 66c1
    CHECK(torsion_over_Q(curve(0, 0, 0, -1, 0)) == TorsionGroup(2, 2));
    CHECK(torsion_over_Q(curve(0, 0, 0, 0, 1)) == TorsionGroup::cyclic(6));
    auto d = torsion_over_Q_detail(k11a3);
    CHECK(point_order(k11a3, d.witness) == 5);
    CHECK(d.points.size() == 5);
    for (auto& P : d.points) CHECK(on_curve(k11a3, P));
}

TEST_CASE("torsion over quintic fields") {
    auto K = NumberField::make(kQuintic11);
    auto Z = NumberField::make(kZeta11Plus);
    CHECK(torsion_over_quintic(k11a2, K) == TorsionGroup::cyclic(5));
    CHECK(torsion_over_quintic(k121b1, Z) == TorsionGroup::cyclic(11));
    CHECK(torsion_over_quintic(k11a3, Z) == TorsionGroup::cyclic(25));
    CHECK(torsion_over_quintic(k66c3, NumberField::make(PolyQ{-12, 0, 0, 0, 0, 1})) == TorsionGroup::cyclic(10));
    CHECK(torsion_over_quintic(k15a3, K) == TorsionGroup(2, 4));
    CHECK_THROWS_AS(torsion_over_quintic(k11a2, NumberField::make(PolyQ{-2, 0, 1})), MathError);
    auto d = torsion_over_field(k11a3, Z);
    CHECK(point_order(k11a3, d.witness) == 25);
    for (auto& P : d.points) CHECK(on_curve(k11a3, P));
}

TEST_CASE("quadratic twists") {
    CurveQ E1 = k50a1.quadratic_twist(BigInt(1));
    CHECK(E1.j_invariant() == k50a1.j_invariant());
    CHECK(E1.c4() / k50a1.c4() == BigRat(36 * 36));  // the model scales c4 by 6^4
    CurveQ Et = k50a1.quadratic_twist(BigInt(-3));
    CHECK(Et.j_invariant() == k50a1.j_invariant());
    CHECK(torsion_over_Q(Et) == TorsionGroup::cyclic(1));
    CHECK(torsion_over_Q(curve(1, -1, 1, -1130, 14897).quadratic_twist(BigInt(-3))) == TorsionGroup::cyclic(1));
    CHECK_THROWS_AS(k50a1.quadratic_twist(BigInt(0)), MathError);
}

TEST_CASE("rational isogeny kernels") {
    CHECK(!rational_isogeny_kernels(k11a2, 5).empty());
    CHECK(rational_isogeny_kernels(curve(0, 0, 0, 6, 2), 5).empty());
    auto k25 = rational_isogeny_kernels(k11a3, 25);
    REQUIRE(!k25.empty());
    CHECK(k25[0].degree() == 12);
    CHECK((k11a3.division_polynomial(25) % k25[0]).is_zero());
    CHECK(rational_isogeny_kernels(curve(0, 0, 0, -1, 0), 2).size() == 3);
    CHECK_THROWS_AS(rational_isogeny_kernels(k11a2, 26), MathError);
}

TEST_CASE("velu quotients") {
    BigRat t = 2;
    CurveQ E1 = e5(t * t * t * t * t);
    auto ks = rational_isogeny_kernels(E1, 5);
    REQUIRE(ks.size() == 2);
    BigRat s = t * horner({1, 2, 4, 3, 1}, t) / horner({1, -3, 4, -2, 1}, t);
    std::vector<BigRat> js;
    for (auto& k : ks) js.push_back(velu_quotient(E1, k).j_invariant());
    CHECK(std::count(js.begin(), js.end(), e6(t * t * t * t * t).j_invariant()) == 1);
    CHECK(std::count(js.begin(), js.end(), e5(s).j_invariant()) == 1);
    CHECK(velu_quotient(E1, PolyQ{1}) == E1);
    CHECK_THROWS_AS(velu_quotient(E1, PolyQ{1, 1}), MathError);
    // 2-isogeny: y^2 = x^3 - x by the kernel x = 0
    CurveQ E = curve(0, 0, 0, -1, 0);
    CurveQ Q = velu_quotient(E, PolyQ::x());
    CHECK(Q.j_invariant() == BigRat(1728));
    // composing along the 25-isogeny of 11a3 lands on 11a2's j
    auto k25 = rational_isogeny_kernels(k11a3, 25);
    REQUIRE(!k25.empty());
    CHECK(velu_quotient(k11a3, k25[0]).j_invariant() == k11a2.j_invariant());
}

TEST_CASE("property: roots of psi_n are exactly the n-torsion abscissae") {
    // The point above a root alpha lives over Q(alpha, sqrt(delta)) with
    // delta = alpha^3 + A alpha + B; on the twist by delta it becomes the
    // point (delta alpha, delta^2) defined over Q(alpha).
    std::mt19937_64 rng(2024);
    int sampled = 0;
    for (int iter = 0; sampled < 50 && iter < 400; ++iter) {
        long A = static_cast<long>(rng() % 21) - 10, B = static_cast<long>(rng() % 21) - 10;
        if (4 * A * A * A + 27 * B * B == 0) continue;
        CurveQ E = curve(0, 0, 0, A, B);
        int n = std::vector<int>{3, 5, 7, 9}[rng() % 4];
        for (auto& [g, e] : factor_over_Q(E.division_polynomial(n)).factors) {
            if (g.degree() > 12 || sampled >= 50) continue;
            auto L = NumberField::make(g, false);
            NFElem al = NFElem::generator(L);
            auto one = [&](long v) { return NFElem(L, BigRat(v)); };
            auto order_divides = [&](const NFElem& x, long m) {
                NFElem delta = x * x * x + one(A) * x + one(B);
                if (delta.is_zero()) return m % 2 == 0;
                ShortCurveK C{one(A) * delta * delta};
                return C.mul(PointK(delta * x, delta * delta), m).inf;
            };
            CHECK(order_divides(al, n));
            // a nearby non-root is not n-torsion
            CHECK_FALSE(order_divides(al + one(1), n));
            ++sampled;
        }
    }
    CHECK(sampled == 50);
}

TEST_CASE("property: rational torsion embeds in torsion over a quintic field") {
    auto K = NumberField::make(kQuintic11);
    for (const CurveQ& E : {k11a3, k15a3, k50a1, k66c3, curve(0, 0, 0, 0, 1)}) {
        TorsionGroup g = torsion_over_Q(E), h = torsion_over_quintic(E, K);
        CHECK(in_phi1(g));
        CHECK(in_phiQ5(h));
        CHECK(g.divides(h));
    }
}
