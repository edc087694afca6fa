#include "tors5/elliptic.hpp"

#include <sstream>

namespace tors5 {

// ---------------------------------------------------------------- groups

TorsionGroup::TorsionGroup(long m_, long n_) : m(m_), n(n_) {
    if (m <= 0 || n <= 0 || n % m != 0) throw MathError("torsion group: need m | n");
}

std::string TorsionGroup::str() const {
    if (m == 1) return "C" + std::to_string(n);
    return "C" + std::to_string(m) + "xC" + std::to_string(n);
}

bool in_phi1(const TorsionGroup& G) {
    if (G.m == 1) return (G.n >= 1 && G.n <= 10) || G.n == 12;
    return G.m == 2 && (G.n == 2 || G.n == 4 || G.n == 6 || G.n == 8);
}

bool in_phiQ5(const TorsionGroup& G) { return in_phi1(G) || G == TorsionGroup(1, 11) || G == TorsionGroup(1, 25); }

// ---------------------------------------------------------------- curves

struct CurveQ::Cache {
    std::recursive_mutex mu;
    BigInt A1, A2, A3, A4, A6, B2, B4, B6, B8;
    ZPoly beta;
    std::map<int, ZPoly> f;
    std::map<int, PolyQ> fq;
};

CurveQ::CurveQ(BigRat a1, BigRat a2, BigRat a3, BigRat a4, BigRat a6) : a_{a1, a2, a3, a4, a6} {
    for (auto& v : a_) v.canonicalize();
    b2_ = a1 * a1 + 4 * a2;
    b4_ = 2 * a4 + a1 * a3;
    b6_ = a3 * a3 + 4 * a6;
    b8_ = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
    c4_ = b2_ * b2_ - 24 * b4_;
    c6_ = -b2_ * b2_ * b2_ + 36 * b2_ * b4_ - 216 * b6_;
    disc_ = -b2_ * b2_ * b8_ - 8 * b4_ * b4_ * b4_ - 27 * b6_ * b6_ + 9 * b2_ * b4_ * b6_;
    if (sgn(disc_) == 0) throw MathError("singular curve");
    j_ = c4_ * c4_ * c4_ / disc_;
    u_ = 1;
    for (const auto& v : a_) mpz_lcm(u_.get_mpz_t(), u_.get_mpz_t(), v.get_den_mpz_t());
    cache_ = std::make_shared<Cache>();
    Cache& c = *cache_;
    BigInt up = 1;
    std::array<BigInt*, 5> A{&c.A1, &c.A2, &c.A3, &c.A4, &c.A6};
    const int w[5] = {1, 2, 3, 4, 6};
    for (int i = 0; i < 5; ++i) {
        BigInt s;
        mpz_pow_ui(s.get_mpz_t(), u_.get_mpz_t(), w[i]);
        BigRat v = a_[i] * s;
        *A[i] = v.get_num();
    }
    c.B2 = c.A1 * c.A1 + 4 * c.A2;
    c.B4 = 2 * c.A4 + c.A1 * c.A3;
    c.B6 = c.A3 * c.A3 + 4 * c.A6;
    c.B8 = c.A1 * c.A1 * c.A6 + 4 * c.A2 * c.A6 - c.A1 * c.A3 * c.A4 + c.A2 * c.A3 * c.A3 - c.A4 * c.A4;
    c.beta = {c.B6, 2 * c.B4, c.B2, BigInt(4)};
}

bool CurveQ::is_integral() const { return u_ == 1; }

BigInt CurveQ::integral_scale() const { return u_; }

std::string CurveQ::str() const {
    std::ostringstream os;
    os << "[";
    for (int i = 0; i < 5; ++i) os << (i ? "," : "") << a_[i].get_str();
    os << "]";
    return os.str();
}

PolyQ CurveQ::beta() const { return PolyQ(std::vector<BigRat>{b6_, 2 * b4_, b2_, BigRat(4)}); }

const ZPoly& CurveQ::fz(int n) const {
    Cache& c = *cache_;
    std::lock_guard<std::recursive_mutex> lock(c.mu);
    auto it = c.f.find(n);
    if (it != c.f.end()) return it->second;
    ZPoly r;
    if (n == 0) {
        r = {};
    } else if (n == 1 || n == 2) {
        r = {BigInt(1)};
    } else if (n == 3) {
        r = {c.B8, 3 * c.B6, 3 * c.B4, c.B2, BigInt(3)};
    } else if (n == 4) {
        r = {c.B4 * c.B8 - c.B6 * c.B6, c.B2 * c.B8 - c.B4 * c.B6, 10 * c.B8, 10 * c.B6, 5 * c.B4, c.B2, BigInt(2)};
    } else if (n % 2 == 1) {
        int m = (n - 1) / 2;
        ZPoly b2sq = zmul(c.beta, c.beta);
        const ZPoly &fm2 = fz(m + 2), &fm = fz(m), &fm1 = fz(m - 1), &fp1 = fz(m + 1);
        ZPoly t1 = zmul(fm2, zmul(fm, zmul(fm, fm)));
        ZPoly t2 = zmul(fm1, zmul(fp1, zmul(fp1, fp1)));
        if (m % 2 == 0)
            t1 = zmul(b2sq, t1);
        else
            t2 = zmul(b2sq, t2);
        r = zsub(t1, t2);
    } else {
        int m = n / 2;
        const ZPoly &fm2 = fz(m + 2), &fm = fz(m), &fm1 = fz(m - 1), &fp1 = fz(m + 1), &fmm2 = fz(m - 2);
        r = zmul(fm, zsub(zmul(fm2, zmul(fm1, fm1)), zmul(fmm2, zmul(fp1, fp1))));
    }
    return c.f.emplace(n, std::move(r)).first->second;
}

PolyQ CurveQ::f(int n) const {
    if (n < 0) throw MathError("division polynomial index must be nonnegative");
    Cache& c = *cache_;
    std::lock_guard<std::recursive_mutex> lock(c.mu);
    auto it = c.fq.find(n);
    if (it != c.fq.end()) return it->second;
    PolyQ p = PolyQ::from_ints(fz(n));
    if (u_ != 1) {
        // f_n(x) = f'_n(u^2 x) / u^w for the integral model f'.
        long w = static_cast<long>(n) * n - (n % 2 ? 1 : 4);
        if (n == 0) w = 0;
        BigInt u2 = u_ * u_, uw;
        mpz_pow_ui(uw.get_mpz_t(), u_.get_mpz_t(), w);
        p = p.scale_var(BigRat(u2)) * BigRat(BigInt(1), uw);
    }
    return c.fq.emplace(n, p).first->second;
}

PolyQ CurveQ::division_polynomial(int n) const {
    if (n < 1) throw MathError("division polynomial index must be >= 1");
    if (n == 1) return PolyQ{1};
    if (n % 2 == 1) return f(n);
    return beta() * f(n);
}

PolyQ CurveQ::psi_sq(int k) const {
    PolyQ fk = f(k);
    if (k % 2) return fk * fk;
    return beta() * fk * fk;
}

PolyQ CurveQ::phi(int k) const {
    if (k == 1) return PolyQ::x();
    PolyQ fk = f(k), prod = f(k + 1) * f(k - 1);
    if (k % 2) return PolyQ::x() * fk * fk - beta() * prod;
    return PolyQ::x() * beta() * fk * fk - prod;
}

CurveQ CurveQ::quadratic_twist(const BigInt& d) const {
    if (sgn(d) == 0) throw MathError("twist by zero");
    BigRat D(d);
    return CurveQ(0, 0, 0, -27 * D * D * c4_, -54 * D * D * D * c6_);
}

long count_points_mod_p(const CurveQ& E, long p) {
    // (2y + a1 x + a3)^2 = beta(x) on the integral model.
    BigInt u = E.integral_scale();
    PolyQ b = E.beta();
    // beta of the integral model: beta'(X) = u^6 beta(X / u^2)
    BigInt u2 = u * u, u6 = u2 * u2 * u2;
    PolyQ bi = b.scale_var(BigRat(BigInt(1), u2)) * BigRat(u6);
    std::vector<long> c(4);
    for (int i = 0; i < 4; ++i) {
        const BigRat& v = bi.coeff(i);
        c[i] = static_cast<long>(mpz_fdiv_ui(v.get_num_mpz_t(), p));
    }
    long count = 1;
    for (long x = 0; x < p; ++x) {
        long v = ((c[3] * x % p * x % p * x) + c[2] * x % p * x + c[1] * x + c[0]) % p;
        if (v == 0) {
            count += 1;
            continue;
        }
        // Euler criterion
        long r = 1, bse = v, e = (p - 1) / 2;
        while (e) {
            if (e & 1) r = r * bse % p;
            bse = bse * bse % p;
            e >>= 1;
        }
        count += (r == 1) ? 2 : 0;
    }
    return count;
}

// ---------------------------------------------------------------- points

template <class F>
bool on_curve(const CurveQ& E, const Point<F>& P) {
    if (P.inf) return true;
    auto L = [&](const BigRat& c) { return lift_rational(P.x, c); };
    F lhs = P.y * P.y + L(E.a1()) * P.x * P.y + L(E.a3()) * P.y;
    F rhs = P.x * P.x * P.x + L(E.a2()) * P.x * P.x + L(E.a4()) * P.x + L(E.a6());
    return lhs == rhs;
}

template <class F>
Point<F> negate(const CurveQ& E, const Point<F>& P) {
    if (P.inf) return P;
    auto L = [&](const BigRat& c) { return lift_rational(P.x, c); };
    return Point<F>(P.x, -P.y - L(E.a1()) * P.x - L(E.a3()));
}

template <class F>
Point<F> add(const CurveQ& E, const Point<F>& P, const Point<F>& Q) {
    if (P.inf) return Q;
    if (Q.inf) return P;
    auto L = [&](const BigRat& c) { return lift_rational(P.x, c); };
    F lambda;
    if (P.x == Q.x) {
        F s = P.y + Q.y + L(E.a1()) * Q.x + L(E.a3());
        if (is_zero(s)) return Point<F>();
        lambda = (L(BigRat(3)) * P.x * P.x + L(2 * E.a2()) * P.x + L(E.a4()) - L(E.a1()) * P.y) /
                 (L(BigRat(2)) * P.y + L(E.a1()) * P.x + L(E.a3()));
    } else {
        lambda = (Q.y - P.y) / (Q.x - P.x);
    }
    F nu = P.y - lambda * P.x;
    F x3 = lambda * lambda + L(E.a1()) * lambda - L(E.a2()) - P.x - Q.x;
    F y3 = -(lambda + L(E.a1())) * x3 - nu - L(E.a3());
    return Point<F>(x3, y3);
}

template <class F>
Point<F> multiply(const CurveQ& E, const Point<F>& P, long k) {
    if (k < 0) return multiply(E, negate(E, P), -k);
    Point<F> r, b = P;
    while (k) {
        if (k & 1) r = add(E, r, b);
        k >>= 1;
        if (k) b = add(E, b, b);
    }
    return r;
}

template <class F>
long point_order(const CurveQ& E, const Point<F>& P, long cap) {
    Point<F> Q = P;
    for (long k = 1; k <= cap; ++k) {
        if (Q.inf) return k;
        Q = add(E, Q, P);
    }
    return 0;
}

template bool on_curve(const CurveQ&, const PointQ&);
template bool on_curve(const CurveQ&, const PointK&);
template PointQ negate(const CurveQ&, const PointQ&);
template PointK negate(const CurveQ&, const PointK&);
template PointQ add(const CurveQ&, const PointQ&, const PointQ&);
template PointK add(const CurveQ&, const PointK&, const PointK&);
template PointQ multiply(const CurveQ&, const PointQ&, long);
template PointK multiply(const CurveQ&, const PointK&, long);
template long point_order(const CurveQ&, const PointQ&, long);
template long point_order(const CurveQ&, const PointK&, long);

}  // namespace tors5
