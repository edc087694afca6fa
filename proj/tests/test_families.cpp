#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "tors5/families.hpp"

using namespace tors5;

namespace {

BigRat q(long a, long b = 1) {
    BigRat r(a, b);
    r.canonicalize();
    return r;
}

PolyQ ints(std::vector<long> c) {
    std::vector<BigInt> z(c.begin(), c.end());
    return PolyQ::from_ints(z);
}

}  // namespace

TEST_CASE("family data checksum") {
    CHECK(family_data_checksum() == family_data_recorded_checksum());
    CHECK(family_data_checksum() == "5bf29343eb71bc75");
}

TEST_CASE("family curves") {
    // 16 + 228*8 + 494*4 - 228*2 + 1 = 3361
    CurveQ E = family_curve("E5", 2);
    CHECK(E.a4() == -27 * 3361);
    CHECK(E.a1() == 0);
    CHECK(E.a6() == 54 * (1 + 522 * 2 - 10005 * 4 - 10005 * 16 - 522 * 32 + 64));
    CHECK(family_curve("E1", 2) == family_curve("E5", 32));
    CHECK(family_curve("E1", q(1, 3)) == family_curve("E5", q(1, 243)));
    CurveQ F = family_curve("E6", 2);
    CHECK(F.a4() == -27 * (1 + 24 + 56 - 96 + 16));
    for (long r : {1L, 2L, -3L, 7L}) {
        CurveQ Er = family_curve("Er", r);
        PointQ P(BigRat(0), BigRat(0));
        CHECK(on_curve(Er, P));
        CHECK(point_order(Er, P) == 2);
    }
    CHECK(TorsionGroup(1, 2).divides(torsion_over_Q(family_curve("Er", 1))));
    CHECK_THROWS_AS(family_curve("E5", 0), MathError);  // x^3 - 27x + 54 = (x-3)^2 (x+6)
    CHECK_THROWS_AS(family_curve("E7", 1), MathError);
}

TEST_CASE("transcription of p5 and p25 at t = 0 and t = 1") {
    CHECK(family_poly("p5", 0) == ints({-3, 1}).pow(5));
    CHECK(family_poly("p5", 1) == ints({-109828721664L, -1089780480, -6981120, -30960, -480, 1}));
    CHECK(family_poly("p25", 0) == ints({-1, 1}).pow(5));
    CHECK(family_poly("p25", 1) == ints({44032, -40960, 6400, 688, -64, 1}));
    for (long t : {-3L, 2L, 5L}) {
        CHECK(family_poly("p25", t).degree() == 5);
        CHECK(family_poly("p25", t).lc() == 1);
        CHECK(family_poly("p5", t).lc() == 1);
    }
}

TEST_CASE("p5 divides psi5 at t = 2") {
    CurveQ E = family_curve("E5", 2);
    CHECK((E.division_polynomial(5) % family_poly("p5", 2)).is_zero());
}

TEST_CASE("j-maps") {
    CHECK(jmap("J2", -1) == 0);
    CHECK(jmap("J2", 1) == 2048);
    CHECK(jmap("J3", -9) == 0);
    CHECK(jmap("J1", -1) == 0);
    CHECK(jmap("J5", 2) == family_curve("E5", 2).j_invariant());
    CHECK(jmap("J5", q(-1, 7)) == family_curve("E5", q(-1, 7)).j_invariant());
    CHECK(jmap_function("j25").is_pole(1));
    CHECK_THROWS_AS(jmap("j25", 1), MathError);
    CHECK_THROWS_AS(jmap("J5", 0), MathError);
    CHECK_THROWS_AS(jmap("J4", 1), MathError);
    CHECK(jmap_function("J5").den.degree() == 11);
    CHECK(jmap_function("J5").num.degree() == 12);
}

TEST_CASE("parametrization by r") {
    for (long r : {1L, 2L, -2L}) {
        auto [s, t] = param_r(r);
        CHECK(jmap("J2", s) == family_curve("E5", t).j_invariant());
    }
    auto [s1, t1] = param_r(1);
    CHECK(t1 == q(2 * 64, 16 * 6));
    CHECK_THROWS_AS(param_r(q(1, 5)), MathError);
}

TEST_CASE("isogeny parameter") {
    CHECK(isogeny_param(0) == 0);
    CHECK(isogeny_param(1) == 11);
    CHECK(isogeny_param(2) == q(2 * (16 + 24 + 16 + 4 + 1), 16 - 16 + 16 - 6 + 1));
}

TEST_CASE("the 5-isogeny triangle at t = 2") {
    Triangle tr = triangle(2);
    CHECK(rational_isogeny_kernels(tr.E, 5).size() == 2);
    CHECK(tr.kernel1.degree() == 2);
    CHECK(tr.kernel2.degree() == 2);
    CHECK(tr.j1_matches);
    CHECK(tr.j2_matches);
    CHECK(tr.E1.j_invariant() == family_curve("E6", 32).j_invariant());
    CHECK(tr.E2.j_invariant() == family_curve("E5", isogeny_param(2)).j_invariant());
    REQUIRE_FALSE(tr.e2_kernels25.empty());
    for (const auto& k : tr.e2_kernels25) CHECK(k.degree() == 12);
}

TEST_CASE("auxiliary curves") {
    CHECK_FALSE(is_rational_square(BigRat(125)));
    CHECK_FALSE(on_aux_curve(AuxCurve::C_prime, {BigRat(0), BigRat(0)}));
    CHECK(auxiliary_point_search(AuxCurve::C_prime, 10000).empty());
    std::vector<AuxPoint> expected{{q(-27, 2), q(-2)}, {q(-27, 2), q(1, 2)}, {q(-2, 27), q(-1, 8)},
                                   {q(-2, 27), q(8)}, {q(0), q(0)}};
    for (const auto& P : expected) CHECK(on_aux_curve(AuxCurve::C_genus1, P));
    CHECK(auxiliary_point_search(AuxCurve::C_genus1, 100) == expected);
    // A smaller box misses every point with a coordinate of height 27.
    CHECK(auxiliary_point_search(AuxCurve::C_genus1, 20) == std::vector<AuxPoint>{{q(0), q(0)}});
    CHECK_THROWS_AS(auxiliary_point_search(AuxCurve::C_prime, 0), MathError);
}

TEST_CASE("point searches: serial and parallel agree") {
    CHECK(auxiliary_point_search(AuxCurve::C_prime, 1500, Exec::serial) ==
          auxiliary_point_search(AuxCurve::C_prime, 1500, Exec::parallel));
    CHECK(auxiliary_point_search(AuxCurve::C_genus1, 60, Exec::serial) ==
          auxiliary_point_search(AuxCurve::C_genus1, 60, Exec::parallel));
}

TEST_CASE("property: p5 divides psi5 of E5 at 20 random t") {
    auto c = check_p5(20);
    CHECK_MESSAGE(c.passed, c.detail);
    CHECK(c.samples == 20);
}

TEST_CASE("property: p25 gives points of order 25 over Galois quintic fields") {
    auto c = check_p25({1, 2, 3});
    CHECK_MESSAGE(c.passed, c.detail);
    CHECK(c.samples == 3);
}

TEST_CASE("property: the rational point of order 5 on E6 at t^5") {
    auto c = check_order5_point(10);
    CHECK_MESSAGE(c.passed, c.detail);
}

TEST_CASE("property: j-map identities at 20 random r") {
    auto c = check_jmaps(20);
    CHECK_MESSAGE(c.passed, c.detail);
    CHECK(c.samples == 20);
}

TEST_CASE("property: triangle j-equalities at sampled t") {
    auto c = check_triangle({2, 3, -2, 5, 7});
    CHECK_MESSAGE(c.passed, c.detail);
}
