#pragma once

#include <memory>
#include <string>
#include <vector>

#include "tors5/exact_arith.hpp"

namespace tors5 {

class NumberField;
using FieldPtr = std::shared_ptr<const NumberField>;

// Q[x]/(f) for a monic irreducible f, handled through the power basis.
class NumberField : public std::enable_shared_from_this<NumberField> {
public:
    // f is made monic; irreducibility is verified unless the caller vouches
    // for it (factors returned by factor_over_Q, for instance).
    static FieldPtr make(const PolyQ& f, bool check_irreducible = true);

    const PolyQ& defining_poly() const { return f_; }
    int degree() const { return f_.degree(); }
    std::string str() const { return f_.str(); }
    // Integer-cleared coefficients, lowest degree first.
    std::vector<BigInt> serialize() const;

private:
    explicit NumberField(PolyQ f) : f_(std::move(f)) {}
    PolyQ f_;
};

class NFElem {
public:
    NFElem() = default;
    NFElem(FieldPtr K, const BigRat& c);
    NFElem(FieldPtr K, const PolyQ& rep);  // reduced modulo the defining polynomial
    static NFElem generator(FieldPtr K);

    const FieldPtr& field() const { return K_; }
    const PolyQ& rep() const { return rep_; }
    std::vector<BigRat> coords() const;  // length = degree
    bool is_zero() const { return rep_.is_zero(); }
    bool is_rational() const { return rep_.degree() <= 0; }
    BigRat rational_value() const { return rep_.coeff(0); }

    NFElem operator-() const;
    friend NFElem operator+(const NFElem& a, const NFElem& b);
    friend NFElem operator-(const NFElem& a, const NFElem& b);
    friend NFElem operator*(const NFElem& a, const NFElem& b);
    friend NFElem operator/(const NFElem& a, const NFElem& b) { return a * b.inverse(); }
    NFElem& operator+=(const NFElem& o) { return *this = *this + o; }
    NFElem& operator-=(const NFElem& o) { return *this = *this - o; }
    NFElem& operator*=(const NFElem& o) { return *this = *this * o; }
    bool operator==(const NFElem& o) const;
    bool operator!=(const NFElem& o) const { return !(*this == o); }

    NFElem inverse() const;
    NFElem pow(unsigned e) const;
    BigRat norm() const;
    BigRat trace() const;
    PolyQ charpoly() const;
    PolyQ minpoly() const;
    std::string str() const { return rep_.str("a"); }

private:
    FieldPtr K_;
    PolyQ rep_;
};

// Scalar helpers shared by code templated over Q and number fields.
inline bool is_zero(const BigRat& a) { return sgn(a) == 0; }
inline bool is_zero(const NFElem& a) { return a.is_zero(); }
inline BigRat lift_rational(const BigRat&, const BigRat& c) { return c; }
inline NFElem lift_rational(const NFElem& like, const BigRat& c) { return NFElem(like.field(), c); }

// Polynomials with coefficients in a number field, constant term first.
class PolyK {
public:
    PolyK() = default;
    PolyK(FieldPtr K, std::vector<NFElem> coeffs);
    PolyK(FieldPtr K, const PolyQ& f);

    const FieldPtr& field() const { return K_; }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const std::vector<NFElem>& coeffs() const { return c_; }
    NFElem coeff(int i) const;
    const NFElem& lc() const { return c_.back(); }

    friend PolyK operator+(const PolyK& a, const PolyK& b);
    friend PolyK operator-(const PolyK& a, const PolyK& b);
    friend PolyK operator*(const PolyK& a, const PolyK& b);
    PolyK scaled(const NFElem& s) const;
    bool operator==(const PolyK& o) const { return c_ == o.c_; }

    NFElem eval(const NFElem& x) const;
    PolyK derivative() const;
    PolyK monic() const;
    PolyK shift(const NFElem& a) const;  // p(z + a)
    // Norm to Q: product of the conjugates, a rational polynomial.
    PolyQ norm() const;

private:
    void trim();
    FieldPtr K_;
    std::vector<NFElem> c_;
};

std::pair<PolyK, PolyK> divrem(const PolyK& a, const PolyK& b);
PolyK poly_gcd(const PolyK& a, const PolyK& b);

// Roots lying in K, each verified by evaluation, sorted by coordinates.
std::vector<NFElem> nf_roots(const PolyQ& g, const FieldPtr& K);
std::vector<NFElem> nf_roots(const PolyK& g);

bool is_galois(const FieldPtr& K);
bool are_isomorphic(const FieldPtr& K1, const FieldPtr& K2);

enum class QuinticClosure { galois_C5, frobenius_F5, other };
QuinticClosure galois_group_order20_profile(const FieldPtr& K);
const char* to_string(QuinticClosure c);

// A Z-basis of the ring of integers (maximal at every prime whose square
// divides the discriminant and is found by trial division up to 10^5).
std::vector<NFElem> integral_basis(const FieldPtr& K);
// The integral basis after LLL reduction for T2(x) = sum |sigma(x)|^2.
std::vector<NFElem> reduced_basis(const FieldPtr& K);

// Reduced defining polynomial of an isomorphic field: smallest coefficient
// vector among generators from a bounded search, after translation and
// rescaling to a monic integral polynomial.
PolyQ normalized_defining_poly(const FieldPtr& K);

}  // namespace tors5
