#pragma once

#include <array>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "tors5/exact_arith.hpp"
#include "tors5/number_field.hpp"

namespace tors5 {

// C_m x C_n with m | n; m = 1 is the cyclic group C_n.
struct TorsionGroup {
    long m = 1, n = 1;
    TorsionGroup() = default;
    TorsionGroup(long m_, long n_);
    static TorsionGroup cyclic(long n) { return TorsionGroup(1, n); }
    long order() const { return m * n; }
    bool is_cyclic() const { return m == 1; }
    std::string str() const;  // "C5", "C2xC8"
    bool operator==(const TorsionGroup& o) const { return m == o.m && n == o.n; }
    bool operator!=(const TorsionGroup& o) const { return !(*this == o); }
    bool operator<(const TorsionGroup& o) const { return m != o.m ? m < o.m : n < o.n; }
    // Is this a subgroup of o (as abstract groups of this shape)?
    bool divides(const TorsionGroup& o) const { return o.m % m == 0 && o.n % n == 0; }
};

class CurveQ {
public:
    CurveQ(BigRat a1, BigRat a2, BigRat a3, BigRat a4, BigRat a6);
    explicit CurveQ(const std::array<BigRat, 5>& a) : CurveQ(a[0], a[1], a[2], a[3], a[4]) {}

    const std::array<BigRat, 5>& a() const { return a_; }
    const BigRat& a1() const { return a_[0]; }
    const BigRat& a2() const { return a_[1]; }
    const BigRat& a3() const { return a_[2]; }
    const BigRat& a4() const { return a_[3]; }
    const BigRat& a6() const { return a_[4]; }
    const BigRat& b2() const { return b2_; }
    const BigRat& b4() const { return b4_; }
    const BigRat& b6() const { return b6_; }
    const BigRat& b8() const { return b8_; }
    const BigRat& c4() const { return c4_; }
    const BigRat& c6() const { return c6_; }
    const BigRat& discriminant() const { return disc_; }
    const BigRat& j_invariant() const { return j_; }
    bool is_integral() const;
    std::string str() const;

    // (2y + a1 x + a3)^2 = beta(x)
    PolyQ beta() const;
    // The polynomial whose roots are the x-coordinates of the nonzero
    // n-torsion: psi_n for odd n, beta * psi_n / psi_2 for even n.
    PolyQ division_polynomial(int n) const;
    // psi_n for odd n and psi_n / psi_2 for even n (both polynomials in x).
    PolyQ f(int n) const;
    // x([k]P) = phi_k(x) / psi_k(x)^2 with both sides polynomials in x.
    PolyQ phi(int k) const;
    PolyQ psi_sq(int k) const;

    CurveQ quadratic_twist(const BigInt& d) const;
    // An integral model y^2 + ... obtained by scaling x -> x/u^2, y -> y/u^3;
    // returns u.
    BigInt integral_scale() const;

    bool operator==(const CurveQ& o) const { return a_ == o.a_; }

private:
    struct Cache;
    const ZPoly& fz(int n) const;  // f_n of the integral model
    std::array<BigRat, 5> a_;
    BigRat b2_, b4_, b6_, b8_, c4_, c6_, disc_, j_;
    BigInt u_;  // integral scaling
    std::shared_ptr<Cache> cache_;
};

// Affine points or the point at infinity, coordinates in Q (BigRat) or in
// a number field (NFElem).
template <class F>
struct Point {
    bool inf = true;
    F x, y;
    Point() = default;
    Point(F x_, F y_) : inf(false), x(std::move(x_)), y(std::move(y_)) {}
    bool operator==(const Point& o) const { return inf == o.inf && (inf || (x == o.x && y == o.y)); }
};
using PointQ = Point<BigRat>;
using PointK = Point<NFElem>;

template <class F> bool on_curve(const CurveQ& E, const Point<F>& P);
template <class F> Point<F> negate(const CurveQ& E, const Point<F>& P);
template <class F> Point<F> add(const CurveQ& E, const Point<F>& P, const Point<F>& Q);
template <class F> Point<F> multiply(const CurveQ& E, const Point<F>& P, long k);
// Exact order, or 0 when the order exceeds cap.
template <class F> long point_order(const CurveQ& E, const Point<F>& P, long cap = 50);

// ---------------------------------------------------------------- torsion

template <class F>
struct TorsionData {
    TorsionGroup group;
    Point<F> witness;             // a point of order group.n
    std::vector<Point<F>> points; // all torsion points (including infinity)
};

TorsionGroup torsion_over_Q(const CurveQ& E);
TorsionData<BigRat> torsion_over_Q_detail(const CurveQ& E);
// Requires [K:Q] = 5.
TorsionGroup torsion_over_quintic(const CurveQ& E, const FieldPtr& K);
// Any degree; the result is bounded by the orders allowed over quintic fields.
TorsionData<NFElem> torsion_over_field(const CurveQ& E, const FieldPtr& K);

// #E(F_p) for a prime p >= 3 of good reduction of the integral model.
long count_points_mod_p(const CurveQ& E, long p);

// ---------------------------------------------------------------- isogenies

// Monic kernel polynomials prod_{k=1}^{floor(n/2)} (z - x([k]R)) of all
// rational cyclic subgroups of order n, sorted.  2 <= n <= 25.
std::vector<PolyQ> rational_isogeny_kernels(const CurveQ& E, int n);
// Quotient by the subgroup cut out by a rational kernel polynomial.
CurveQ velu_quotient(const CurveQ& E, const PolyQ& kernel);

// Membership in Mazur's list and in the quintic list.
bool in_phi1(const TorsionGroup& G);
bool in_phiQ5(const TorsionGroup& G);

}  // namespace tors5
