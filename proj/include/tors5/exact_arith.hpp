#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace tors5 {

using BigInt = mpz_class;
using BigRat = mpq_class;

struct MathError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Dense univariate polynomial over Q, constant term first.  The zero
// polynomial is the empty coefficient list and has degree -1.
class PolyQ {
public:
    PolyQ() = default;
    explicit PolyQ(std::vector<BigRat> coeffs);
    PolyQ(std::initializer_list<long> coeffs);

    static PolyQ constant(const BigRat& c);
    static PolyQ x();
    static PolyQ monomial(const BigRat& c, int deg);
    static PolyQ from_ints(const std::vector<BigInt>& coeffs);

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const std::vector<BigRat>& coeffs() const { return c_; }
    BigRat coeff(int i) const;
    const BigRat& lc() const;
    bool is_integral() const;

    PolyQ operator-() const;
    PolyQ& operator+=(const PolyQ& o);
    PolyQ& operator-=(const PolyQ& o);
    PolyQ& operator*=(const PolyQ& o);
    PolyQ& operator*=(const BigRat& s);
    friend PolyQ operator+(PolyQ a, const PolyQ& b) { return a += b; }
    friend PolyQ operator-(PolyQ a, const PolyQ& b) { return a -= b; }
    friend PolyQ operator*(const PolyQ& a, const PolyQ& b);
    friend PolyQ operator*(PolyQ a, const BigRat& s) { return a *= s; }
    friend PolyQ operator*(const BigRat& s, PolyQ a) { return a *= s; }
    bool operator==(const PolyQ& o) const { return c_ == o.c_; }
    bool operator!=(const PolyQ& o) const { return !(*this == o); }

    BigRat eval(const BigRat& x) const;
    PolyQ derivative() const;
    PolyQ monic() const;
    PolyQ compose(const PolyQ& g) const;   // f(g(x))
    PolyQ shift(const BigRat& a) const;    // f(x + a)
    PolyQ scale_var(const BigRat& a) const;  // f(a x)
    PolyQ pow(unsigned e) const;
    std::string str(const std::string& var = "x") const;

private:
    void trim();
    std::vector<BigRat> c_;
};

std::pair<PolyQ, PolyQ> divrem(const PolyQ& a, const PolyQ& b);
PolyQ exact_div(const PolyQ& a, const PolyQ& b);
PolyQ operator%(const PolyQ& a, const PolyQ& b);
PolyQ poly_gcd(const PolyQ& a, const PolyQ& b);

struct XGcd {
    PolyQ g, s, t;  // s*a + t*b = g, g monic
};
XGcd poly_xgcd(const PolyQ& a, const PolyQ& b);

// Positive rational c with f / c primitive in Z[x] (sign of lc kept).
BigRat content(const PolyQ& f);
std::vector<BigInt> primitive_int(const PolyQ& f);
PolyQ squarefree_part(const PolyQ& f);
std::vector<std::pair<PolyQ, int>> squarefree_decomposition(const PolyQ& f);

BigRat resultant(const PolyQ& a, const PolyQ& b);
BigInt resultant_int(std::vector<BigInt> a, std::vector<BigInt> b);
BigRat discriminant(const PolyQ& f);
PolyQ interpolate(const std::vector<BigRat>& xs, const std::vector<BigRat>& ys);

bool is_rational_square(const BigRat& q, BigRat* root = nullptr);
bool lex_less(const PolyQ& a, const PolyQ& b);  // degree first, then coefficients

// Dense integer polynomial helpers used by the hot paths (division
// polynomials, Hensel lifting) where rational canonicalisation is wasted work.
using ZPoly = std::vector<BigInt>;
void ztrim(ZPoly& a);
ZPoly zadd(const ZPoly& a, const ZPoly& b);
ZPoly zsub(const ZPoly& a, const ZPoly& b);
ZPoly zmul(const ZPoly& a, const ZPoly& b);
ZPoly zscale(const ZPoly& a, const BigInt& s);
BigInt zcontent(const ZPoly& a);

// Polynomials over Z/nZ with word-size modulus.  Field operations
// (division, gcd, factorization) require n prime.
class PolyZn {
public:
    PolyZn() = default;
    PolyZn(uint64_t modulus, std::vector<uint64_t> coeffs);
    static PolyZn from_poly(const PolyQ& f, uint64_t p);  // p must not divide denominators
    static PolyZn from_ints(const ZPoly& f, uint64_t p);

    uint64_t modulus() const { return n_; }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const std::vector<uint64_t>& coeffs() const { return c_; }
    uint64_t lc() const { return c_.back(); }

    PolyZn operator+(const PolyZn& o) const;
    PolyZn operator-(const PolyZn& o) const;
    PolyZn operator*(const PolyZn& o) const;
    PolyZn scaled(uint64_t s) const;
    bool operator==(const PolyZn& o) const { return n_ == o.n_ && c_ == o.c_; }
    PolyZn derivative() const;
    PolyZn monic() const;

private:
    void trim();
    uint64_t n_ = 1;
    std::vector<uint64_t> c_;
};

std::pair<PolyZn, PolyZn> divrem(const PolyZn& a, const PolyZn& b);
PolyZn poly_gcd(const PolyZn& a, const PolyZn& b);
PolyZn powmod(const PolyZn& base, const BigInt& e, const PolyZn& m);
uint64_t inv_mod(uint64_t a, uint64_t p);
bool is_squarefree_mod(const PolyZn& f);
// Distinct-degree factorization of a monic squarefree f: (product, degree).
std::vector<std::pair<PolyZn, int>> distinct_degree(const PolyZn& f);
// Full factorization of a monic squarefree f into monic irreducibles.
std::vector<PolyZn> factor_mod_p(const PolyZn& f);

struct Factorization {
    BigRat unit;
    std::vector<std::pair<PolyQ, int>> factors;  // monic irreducible, multiplicity
    PolyQ expand() const;
};

Factorization factor_over_Q(const PolyQ& f);
// Distinct monic irreducible factors of degree <= max_degree, sorted.
std::vector<PolyQ> small_degree_factors(const PolyQ& f, int max_degree);
std::vector<BigRat> rational_roots(const PolyQ& f);
// Degrees d for which a factor of degree d is not excluded by the factor
// degree patterns modulo several small primes (f squarefree).
std::vector<int> possible_factor_degrees(const PolyQ& f, int nprimes = 3);

}  // namespace tors5
