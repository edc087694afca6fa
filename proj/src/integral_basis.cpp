// Integral bases and T2-reduced bases of number fields.
//
// The order Z[theta] (theta integral) is enlarged prime by prime with the
// Round 2 step: O' = {x : x I ⊆ I} for the p-radical I of O, repeated
// until nothing changes.  The primes are those whose square divides the
// discriminant of theta, as found by trial division (plus a square
// cofactor); any prime missed that way only leaves the order non-maximal
// there.  The reduced basis is LLL under T2(x) = sum |sigma(x)|^2, with
// the embeddings computed in 256-bit floating point.

#include <algorithm>
#include <cmath>

#include "tors5/number_field.hpp"

namespace tors5 {

namespace {

using ZMat = std::vector<std::vector<BigInt>>;
using QMat = std::vector<std::vector<BigRat>>;
using Vec = std::vector<uint64_t>;

// Hermite normal form (upper triangular, positive pivots) of the lattice
// spanned by the rows; returns the n nonzero rows.
ZMat hnf(ZMat rows, int n) {
    size_t r0 = 0;
    for (int c = 0; c < n; ++c) {
        for (;;) {
            size_t piv = rows.size();
            for (size_t r = r0; r < rows.size(); ++r)
                if (sgn(rows[r][c]) != 0 && (piv == rows.size() || abs(rows[r][c]) < abs(rows[piv][c]))) piv = r;
            if (piv == rows.size()) break;
            std::swap(rows[r0], rows[piv]);
            bool done = true;
            for (size_t r = r0 + 1; r < rows.size(); ++r) {
                if (sgn(rows[r][c]) == 0) continue;
                BigInt q = rows[r][c] / rows[r0][c];
                for (int k = c; k < n; ++k) rows[r][k] -= q * rows[r0][k];
                if (sgn(rows[r][c]) != 0) done = false;
            }
            if (done) break;
        }
        if (r0 < rows.size() && sgn(rows[r0][c]) != 0) {
            if (sgn(rows[r0][c]) < 0)
                for (int k = c; k < n; ++k) rows[r0][k] = -rows[r0][k];
            ++r0;
        }
    }
    rows.resize(r0);
    // reduce above the pivots
    for (size_t i = 0; i < rows.size(); ++i) {
        int c = 0;
        while (sgn(rows[i][c]) == 0) ++c;
        for (size_t r = 0; r < i; ++r) {
            BigInt q;
            mpz_fdiv_q(q.get_mpz_t(), rows[r][c].get_mpz_t(), rows[i][c].get_mpz_t());
            for (int k = c; k < n; ++k) rows[r][k] -= q * rows[i][k];
        }
    }
    return rows;
}

QMat inverse(QMat a) {
    const size_t n = a.size();
    QMat inv(n, std::vector<BigRat>(n, BigRat(0)));
    for (size_t i = 0; i < n; ++i) inv[i][i] = 1;
    for (size_t c = 0; c < n; ++c) {
        size_t p = c;
        while (sgn(a[p][c]) == 0) ++p;
        std::swap(a[p], a[c]);
        std::swap(inv[p], inv[c]);
        BigRat s = 1 / a[c][c];
        for (size_t k = 0; k < n; ++k) {
            a[c][k] *= s;
            inv[c][k] *= s;
        }
        for (size_t r = 0; r < n; ++r) {
            if (r == c || sgn(a[r][c]) == 0) continue;
            BigRat f = a[r][c];
            for (size_t k = 0; k < n; ++k) {
                a[r][k] -= f * a[c][k];
                inv[r][k] -= f * inv[c][k];
            }
        }
    }
    return inv;
}

// Row vector times matrix.
std::vector<BigRat> vecmul(const std::vector<BigRat>& v, const QMat& m) {
    std::vector<BigRat> out(m[0].size(), BigRat(0));
    for (size_t i = 0; i < v.size(); ++i)
        if (sgn(v[i]) != 0)
            for (size_t k = 0; k < out.size(); ++k) out[k] += v[i] * m[i][k];
    return out;
}

// Kernel of the linear map x -> x A over F_p (A has n rows), as row vectors.
std::vector<Vec> left_kernel_mod(const std::vector<Vec>& A, uint64_t p) {
    const size_t n = A.size(), m = A.empty() ? 0 : A[0].size();
    // Row-reduce [A | I].
    std::vector<Vec> M(n, Vec(m + n, 0));
    for (size_t i = 0; i < n; ++i) {
        for (size_t k = 0; k < m; ++k) M[i][k] = A[i][k] % p;
        M[i][m + i] = 1;
    }
    size_t r = 0;
    for (size_t c = 0; c < m && r < n; ++c) {
        size_t piv = r;
        while (piv < n && M[piv][c] == 0) ++piv;
        if (piv == n) continue;
        std::swap(M[piv], M[r]);
        uint64_t s = inv_mod(M[r][c], p);
        for (auto& v : M[r]) v = static_cast<uint64_t>(static_cast<unsigned __int128>(v) * s % p);
        for (size_t i = 0; i < n; ++i) {
            if (i == r || M[i][c] == 0) continue;
            uint64_t f = M[i][c];
            for (size_t k = 0; k < m + n; ++k)
                M[i][k] = static_cast<uint64_t>((M[i][k] + static_cast<unsigned __int128>(p - f) * M[r][k]) % p);
        }
        ++r;
    }
    std::vector<Vec> ker;
    for (size_t i = r; i < n; ++i) ker.emplace_back(M[i].begin() + static_cast<long>(m), M[i].end());
    return ker;
}

struct Order {
    FieldPtr K;
    int n = 0;
    std::vector<NFElem> w;  // basis
    QMat Binv;              // power-basis coordinates -> basis coordinates
    std::vector<ZMat> T;    // T[i][j] = coordinates of w_i w_j

    Order(FieldPtr K_, std::vector<NFElem> basis) : K(std::move(K_)), n(K->degree()), w(std::move(basis)) {
        QMat B;
        for (const auto& e : w) B.push_back(e.coords());
        Binv = inverse(B);
        T.assign(n, ZMat(n));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                auto c = coords(w[i] * w[j]);
                for (const auto& v : c) T[i][j].push_back(v.get_num());
            }
    }
    std::vector<BigRat> coords(const NFElem& x) const { return vecmul(x.coords(), Binv); }

    // Product of two elements given by integer coordinates.
    std::vector<BigInt> mul(const std::vector<BigInt>& x, const std::vector<BigInt>& y) const {
        std::vector<BigInt> out(n, BigInt(0));
        for (int i = 0; i < n; ++i) {
            if (sgn(x[i]) == 0) continue;
            for (int j = 0; j < n; ++j) {
                if (sgn(y[j]) == 0) continue;
                BigInt s = x[i] * y[j];
                for (int k = 0; k < n; ++k) out[k] += s * T[i][j][k];
            }
        }
        return out;
    }
    Vec mul_mod(const Vec& x, const Vec& y, uint64_t p) const {
        std::vector<BigInt> X(x.begin(), x.end()), Y(y.begin(), y.end());
        auto z = mul(X, Y);
        Vec out(n);
        for (int k = 0; k < n; ++k) {
            BigInt r;
            mpz_fdiv_r_ui(r.get_mpz_t(), z[k].get_mpz_t(), p);
            out[k] = r.get_ui();
        }
        return out;
    }
    NFElem element(const std::vector<BigRat>& c) const {
        NFElem e(K, BigRat(0));
        for (int i = 0; i < n; ++i)
            if (sgn(c[i]) != 0) e += w[i] * NFElem(K, c[i]);
        return e;
    }
};

Vec pow_mod(const Order& O, Vec x, BigInt e, uint64_t p) {
    Vec r(O.n, 0);
    auto one = O.coords(NFElem(O.K, BigRat(1)));
    for (int k = 0; k < O.n; ++k) {
        BigInt v;
        mpz_fdiv_r_ui(v.get_mpz_t(), one[k].get_num_mpz_t(), p);
        r[k] = v.get_ui();
    }
    while (sgn(e) > 0) {
        if (mpz_odd_p(e.get_mpz_t())) r = O.mul_mod(r, x, p);
        x = O.mul_mod(x, x, p);
        e >>= 1;
    }
    return r;
}

// One Round 2 step at p; returns false when O is p-maximal.
bool enlarge_at(Order& O, uint64_t p) {
    const int n = O.n;
    // p-radical: kernel of Frobenius^k with p^k >= n.
    BigInt q = p;
    while (q < n) q *= p;
    std::vector<Vec> F;
    for (int i = 0; i < n; ++i) {
        Vec e(n, 0);
        e[i] = 1;
        F.push_back(pow_mod(O, e, q, p));
    }
    ZMat gens;
    for (int i = 0; i < n; ++i) {
        std::vector<BigInt> r(n, BigInt(0));
        r[i] = BigInt(p);
        gens.push_back(r);
    }
    for (const auto& v : left_kernel_mod(F, p)) gens.emplace_back(v.begin(), v.end());
    ZMat I = hnf(gens, n);
    QMat Iq;
    for (const auto& row : I) Iq.emplace_back(row.begin(), row.end());
    QMat Iinv = inverse(Iq);
    // u in O/pO with u I ⊆ p I.
    std::vector<Vec> A;
    for (int i = 0; i < n; ++i) {
        Vec row;
        std::vector<BigInt> e(n, BigInt(0));
        e[i] = 1;
        for (const auto& b : I) {
            auto prod = O.mul(e, b);
            auto y = vecmul(std::vector<BigRat>(prod.begin(), prod.end()), Iinv);
            for (const auto& v : y) {
                BigInt r;
                mpz_fdiv_r_ui(r.get_mpz_t(), v.get_num_mpz_t(), p);
                row.push_back(r.get_ui());
            }
        }
        A.push_back(row);
    }
    auto U = left_kernel_mod(A, p);
    if (U.empty()) return false;
    ZMat g;
    for (int i = 0; i < n; ++i) {
        std::vector<BigInt> r(n, BigInt(0));
        r[i] = BigInt(p);
        g.push_back(r);
    }
    for (const auto& u : U) g.emplace_back(u.begin(), u.end());
    ZMat H = hnf(g, n);
    std::vector<NFElem> nb;
    for (const auto& row : H) {
        std::vector<BigRat> c;
        for (const auto& v : row) {
            BigRat x(v, BigInt(p));
            x.canonicalize();
            c.push_back(x);
        }
        nb.push_back(O.element(c));
    }
    O = Order(O.K, nb);
    return true;
}

std::vector<BigInt> square_divisor_primes(BigInt d) {
    d = abs(d);
    std::vector<BigInt> out;
    for (unsigned long p = 2; p < 100000 && d > 1; ++p) {
        if (!mpz_divisible_ui_p(d.get_mpz_t(), p)) continue;
        int e = 0;
        while (mpz_divisible_ui_p(d.get_mpz_t(), p)) {
            mpz_divexact_ui(d.get_mpz_t(), d.get_mpz_t(), p);
            ++e;
        }
        if (e >= 2) out.push_back(BigInt(p));
    }
    if (d > 1 && mpz_perfect_square_p(d.get_mpz_t())) {
        BigInt r = sqrt(d);
        if (mpz_probab_prime_p(r.get_mpz_t(), 30) && r.fits_ulong_p()) out.push_back(r);
    }
    return out;
}

// ---------------------------------------------------------------- T2 / LLL

struct Real {
    mpf_class re, im;
};

std::vector<Real> complex_roots(const PolyQ& f) {
    const int n = f.degree();
    const unsigned prec = 256;
    auto mk = [&](double v) { return mpf_class(v, prec); };
    std::vector<mpf_class> c;
    for (int i = 0; i <= n; ++i) c.push_back(mpf_class(f.coeff(i) / f.lc(), prec));
    // Durand-Kerner from points on a circle enclosing every root.
    mpf_class R = mk(1);
    for (int i = 0; i < n; ++i) R = R > abs(c[i]) + 1 ? R : mpf_class(abs(c[i]) + 1);
    std::vector<Real> z(n);
    for (int k = 0; k < n; ++k) {
        double a = 0.4 + 6.283185307179586 * k / n;
        z[k] = {mk(std::cos(a)) * R, mk(std::sin(a)) * R};
    }
    auto mulc = [&](const Real& a, const Real& b) { return Real{a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re}; };
    auto divc = [&](const Real& a, const Real& b) {
        mpf_class d = b.re * b.re + b.im * b.im;
        return Real{(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
    };
    for (int it = 0; it < 2000; ++it) {
        mpf_class moved = mk(0);
        for (int k = 0; k < n; ++k) {
            Real v{mk(1), mk(0)};
            for (int i = n - 1; i >= 0; --i) {
                v = mulc(v, z[k]);
                v.re += c[i];
            }
            Real d{mk(1), mk(0)};
            for (int j = 0; j < n; ++j)
                if (j != k) d = mulc(d, Real{z[k].re - z[j].re, z[k].im - z[j].im});
            Real step = divc(v, d);
            z[k].re -= step.re;
            z[k].im -= step.im;
            mpf_class s = abs(step.re) + abs(step.im);
            if (s > moved) moved = s;
        }
        mpf_class scale = R;
        if (moved * 1e60 < scale) break;
    }
    return z;
}

// Real coordinates of the Minkowski embedding, so that T2 is the
// Euclidean norm.
std::vector<mpf_class> embed(const NFElem& x, const std::vector<Real>& roots) {
    std::vector<mpf_class> out;
    auto c = x.coords();
    for (const auto& r : roots) {
        mpf_class re(0, 256), im(0, 256);
        for (size_t i = c.size(); i-- > 0;) {
            mpf_class nre = re * r.re - im * r.im + mpf_class(c[i], 256);
            im = re * r.im + im * r.re;
            re = nre;
        }
        out.push_back(re);
        out.push_back(im);
    }
    return out;
}

mpf_class dot(const std::vector<mpf_class>& a, const std::vector<mpf_class>& b) {
    mpf_class s(0, 256);
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

}  // namespace

std::vector<NFElem> integral_basis(const FieldPtr& K) {
    const int n = K->degree();
    // theta' = k theta has an integral minimal polynomial when k clears
    // every denominator of the monic defining polynomial.
    BigInt k = 1;
    for (const auto& c : K->defining_poly().coeffs()) mpz_lcm(k.get_mpz_t(), k.get_mpz_t(), c.get_den_mpz_t());
    BigInt kn;
    mpz_pow_ui(kn.get_mpz_t(), k.get_mpz_t(), static_cast<unsigned long>(n));
    PolyQ f = K->defining_poly().scale_var(BigRat(1) / BigRat(k)) * BigRat(kn);
    NFElem th = NFElem::generator(K) * NFElem(K, BigRat(k));
    std::vector<NFElem> basis{NFElem(K, BigRat(1))};
    for (int i = 1; i < n; ++i) basis.push_back(basis.back() * th);
    Order O(K, basis);
    for (const BigInt& p : square_divisor_primes(discriminant(f).get_num()))
        while (enlarge_at(O, p.get_ui())) {
        }
    return O.w;
}

std::vector<NFElem> reduced_basis(const FieldPtr& K) {
    std::vector<NFElem> b = integral_basis(K);
    const size_t n = b.size();
    auto roots = complex_roots(K->defining_poly());
    std::vector<std::vector<mpf_class>> v;
    for (const auto& e : b) v.push_back(embed(e, roots));
    // Textbook LLL with delta = 3/4, Gram-Schmidt recomputed on demand.
    auto gso = [&](std::vector<std::vector<mpf_class>>& bs, std::vector<std::vector<mpf_class>>& mu, std::vector<mpf_class>& B) {
        std::vector<std::vector<mpf_class>> star = v;
        mu.assign(n, std::vector<mpf_class>(n, mpf_class(0, 256)));
        B.assign(n, mpf_class(0, 256));
        for (size_t i = 0; i < n; ++i) {
            star[i] = v[i];
            for (size_t j = 0; j < i; ++j) {
                mu[i][j] = dot(v[i], star[j]) / B[j];
                for (size_t t = 0; t < star[i].size(); ++t) star[i][t] -= mu[i][j] * star[j][t];
            }
            B[i] = dot(star[i], star[i]);
        }
        bs = star;
    };
    std::vector<std::vector<mpf_class>> star, mu;
    std::vector<mpf_class> B;
    size_t kk = 1;
    int guard = 0;
    gso(star, mu, B);
    while (kk < n && ++guard < 10000) {
        for (size_t j = kk; j-- > 0;) {
            mpf_class r = floor(mu[kk][j] + mpf_class(0.5, 256));
            if (sgn(r) == 0) continue;
            BigInt ri(r);
            b[kk] -= b[j] * NFElem(K, BigRat(ri));
            for (size_t t = 0; t < v[kk].size(); ++t) v[kk][t] -= r * v[j][t];
            gso(star, mu, B);
        }
        if (B[kk] >= (mpf_class(0.75, 256) - mu[kk][kk - 1] * mu[kk][kk - 1]) * B[kk - 1]) {
            ++kk;
        } else {
            std::swap(b[kk], b[kk - 1]);
            std::swap(v[kk], v[kk - 1]);
            gso(star, mu, B);
            kk = std::max<size_t>(kk - 1, 1);
        }
    }
    return b;
}

}  // namespace tors5
