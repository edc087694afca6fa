// Rational cyclic isogeny kernels and Velu quotients.

#include <algorithm>

#include "tors5/elliptic.hpp"

namespace tors5 {

namespace {

int smallest_prime(int n) {
    for (int p = 2; p * p <= n; ++p)
        if (n % p == 0) return p;
    return n;
}

int euler_phi(int n) {
    int r = n;
    for (int p = 2; p * p <= n; ++p)
        if (n % p == 0) {
            while (n % p == 0) n /= p;
            r -= r / p;
        }
    if (n > 1) r -= r / n;
    return r;
}

// Numerator of K(phi_p / psi_p^2) * psi_p^(2 deg K): x-coordinates of the
// points R with [p]R in the subgroup cut out by K.
PolyQ pullback(const CurveQ& E, const PolyQ& K, int p) {
    PolyQ ph = E.phi(p), ps = E.psi_sq(p);
    int d = K.degree();
    PolyQ r;
    PolyQ phpow = PolyQ{1};
    std::vector<PolyQ> pspow{PolyQ{1}};
    for (int i = 1; i <= d; ++i) pspow.push_back(pspow.back() * ps);
    for (int i = 0; i <= d; ++i) {
        r += phpow * pspow[d - i] * K.coeff(i);
        phpow = phpow * ph;
    }
    return r;
}

// Kernel polynomial of <R> for x(R) a root of the irreducible g, if every
// coefficient is rational and R has exact order n.  Only multiples up to
// n/2 + 1 are needed: [k]R != O for k <= n/2, and [n]R = O exactly when
// x([(n+1)/2]R) = x([(n-1)/2]R) (n odd) or [n/2]R has order 2 (n even).
std::optional<PolyQ> kernel_from_generator(const CurveQ& E, const PolyQ& g, int n) {
    auto L = NumberField::make(g, false);
    NFElem a = NFElem::generator(L);
    auto x_mult = [&](int k) -> std::optional<NFElem> {
        if (k == 1) return a;
        NFElem den = PolyK(L, E.psi_sq(k)).eval(a);
        if (den.is_zero()) return std::nullopt;
        return PolyK(L, E.phi(k)).eval(a) / den;
    };
    std::vector<NFElem> xs;
    for (int k = 1; k <= n / 2; ++k) {
        auto xk = x_mult(k);
        if (!xk) return std::nullopt;
        xs.push_back(*xk);
    }
    if (n % 2) {
        auto xk = x_mult((n + 1) / 2);
        if (!xk || *xk != xs.back()) return std::nullopt;
    } else if (!PolyK(L, E.beta()).eval(xs.back()).is_zero()) {
        return std::nullopt;
    }
    PolyK ker(L, PolyQ{1});
    for (const NFElem& xk : xs) ker = ker * PolyK(L, std::vector<NFElem>{-xk, NFElem(L, BigRat(1))});
    std::vector<BigRat> c;
    for (const auto& v : ker.coeffs()) {
        if (!v.is_rational()) return std::nullopt;
        c.push_back(v.rational_value());
    }
    return PolyQ(c);
}

std::vector<PolyQ> kernels_rec(const CurveQ& E, int n) {
    std::vector<PolyQ> out;
    int p = smallest_prime(n), m = n / p;
    int maxdeg = std::max(1, euler_phi(n) / 2);
    std::vector<PolyQ> cands;
    if (m == 1) {
        cands = small_degree_factors(E.division_polynomial(n), maxdeg);
    } else {
        for (const PolyQ& Km : kernels_rec(E, m))
            for (const PolyQ& g : small_degree_factors(pullback(E, Km, p), maxdeg)) cands.push_back(g);
    }
    std::sort(cands.begin(), cands.end(), lex_less);
    cands.erase(std::unique(cands.begin(), cands.end()), cands.end());
    for (const PolyQ& g : cands) {
        auto k = kernel_from_generator(E, g, n);
        if (k) out.push_back(*k);
    }
    std::sort(out.begin(), out.end(), lex_less);
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

// Power sums p_0..p_k of the roots of a monic polynomial (Newton).
std::vector<BigRat> power_sums(const PolyQ& D, int k) {
    int d = D.degree();
    std::vector<BigRat> p(k + 1);
    p[0] = d;
    // e_i with D = z^d + c_{d-1} z^{d-1} + ...; Newton: p_j + c_{d-1} p_{j-1} + ... + j c_{d-j} = 0
    for (int j = 1; j <= k; ++j) {
        BigRat s = 0;
        for (int i = 1; i < j && i <= d; ++i) s += D.coeff(d - i) * p[j - i];
        if (j <= d) s += BigRat(j) * D.coeff(d - j);
        p[j] = -s;
    }
    return p;
}

BigRat root_sum(const PolyQ& D, const PolyQ& h) {
    if (D.degree() <= 0) return 0;
    auto p = power_sums(D, std::max(0, h.degree()));
    BigRat s = 0;
    for (int i = 0; i <= h.degree(); ++i) s += h.coeff(i) * p[i];
    return s;
}

}  // namespace

std::vector<PolyQ> rational_isogeny_kernels(const CurveQ& E, int n) {
    if (n < 2 || n > 25) throw MathError("isogeny degree outside the supported range 2..25");
    return kernels_rec(E, n);
}

CurveQ velu_quotient(const CurveQ& E, const PolyQ& kernel) {
    if (kernel.degree() <= 0) return E;
    PolyQ D = kernel.monic();
    PolyQ beta = E.beta();
    PolyQ D2 = poly_gcd(D, beta);
    PolyQ Do = exact_div(D, D2);
    // The roots must be the nonzero x-coordinates of a cyclic group of order n.
    if (D2.degree() >= 2) throw MathError("velu: kernel is not cyclic");
    int n = 2 * Do.degree() + 1 + D2.degree();
    if (!(E.division_polynomial(n) % D).is_zero()) throw MathError("velu: kernel is not a subgroup");
    PolyQ x = PolyQ::x();
    PolyQ tq = x * x * BigRat(6) + x * E.b2() + PolyQ::constant(E.b4());
    BigRat t = root_sum(Do, tq) + root_sum(D2, tq) * BigRat(1, 2);
    BigRat w = root_sum(Do, beta + x * tq) + root_sum(D2, x * tq) * BigRat(1, 2);
    return CurveQ(E.a1(), E.a2(), E.a3(), E.a4() - 5 * t, E.a6() - E.b2() * t - 7 * w);
}

}  // namespace tors5
