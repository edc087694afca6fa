#pragma once

#include <random>
#include <string>
#include <utility>
#include <vector>

#include "tors5/elliptic.hpp"
#include "tors5/exact_arith.hpp"
#include "tors5/gl2.hpp"

namespace tors5 {

// num / den in one variable, reduced to lowest terms with a monic
// denominator.
struct RationalMap {
    PolyQ num, den;
    RationalMap() = default;
    RationalMap(PolyQ n, PolyQ d);
    // Throws MathError at a pole.
    BigRat eval(const BigRat& x) const;
    bool is_pole(const BigRat& x) const { return sgn(den.eval(x)) == 0; }
};

// ---------------------------------------------------------------- data file

// FNV-1a (64 bit) of the compact, key-sorted serialization of the "data"
// member, as lowercase hex.
std::string family_data_checksum();
// Checksum recorded in the file itself.
std::string family_data_recorded_checksum();

// ---------------------------------------------------------------- families

// name in {E5, E6, E1, Er}; E1 at t is E5 at t^5.  Throws MathError for a
// singular specialization or an unknown name.
CurveQ family_curve(const std::string& name, const BigRat& param);
// name in {p5, p25}, specialized at t; monic of degree 5.
PolyQ family_poly(const std::string& name, const BigRat& t);
// name in {J1, J2, J3, J5, j25}.
const RationalMap& jmap_function(const std::string& name);
BigRat jmap(const std::string& name, const BigRat& x);
// The pair (s, t)(r) with J2(s) = J5(t).
std::pair<BigRat, BigRat> param_r(const BigRat& r);
// s(t) with E/<P2> isomorphic over Qbar to E5 at s(t), E = E1 at t.
BigRat isogeny_param(const BigRat& t);

// The two rational 5-isogenies out of E = E1 at t.  kernel1 cuts out the
// leg whose quotient has the j-invariant of E6 at t^5, kernel2 the leg
// landing on the j-invariant of E5 at s(t).
struct Triangle {
    CurveQ E, E1, E2;
    PolyQ kernel1, kernel2;
    bool j1_matches = false, j2_matches = false;
    std::vector<PolyQ> e2_kernels25;  // rational 25-isogeny kernels of E2
};
Triangle triangle(const BigRat& t);

// ---------------------------------------------------------------- point search

enum class AuxCurve { C_prime, C_genus1 };

struct AuxPoint {
    BigRat x, y;  // (x, y) on C', (s, t) on the genus-1 curve
    bool operator==(const AuxPoint& o) const { return x == o.x && y == o.y; }
    bool operator<(const AuxPoint& o) const { return x != o.x ? x < o.x : y < o.y; }
};

// All affine rational points whose coordinates (x for C', both s and t for
// the genus-1 curve) have numerator and denominator bounded by
// height_bound in absolute value, sorted.
std::vector<AuxPoint> auxiliary_point_search(AuxCurve c, long height_bound, Exec exec = Exec::parallel);
// Exact membership tests.
bool on_aux_curve(AuxCurve c, const AuxPoint& P);

// ---------------------------------------------------------------- checks

struct FamilyCheck {
    std::string name;
    bool passed = false;
    long samples = 0;
    std::string detail;  // first failure, if any
};

// Sampled parameters are drawn from a seeded generator; the same seed
// gives the same parameters.
FamilyCheck check_p5(int samples, unsigned seed = 1);       // p5 | psi5(E5 at t)
FamilyCheck check_p25(const std::vector<long>& ts);          // 3^5 p25(x/3) | psi25(E6 at t^5), C25 over a Galois field
FamilyCheck check_order5_point(int samples, unsigned seed = 2);
FamilyCheck check_jmaps(int samples, unsigned seed = 3);     // J2(s(r)) = j(E5 at t(r)), J5 = j(E5)
FamilyCheck check_triangle(const std::vector<long>& ts);
FamilyCheck check_aux_points(long cprime_bound, long genus1_bound);

// A random rational of height at most h; zero excluded.
BigRat sample_rational(std::mt19937& rng, long h);

}  // namespace tors5
