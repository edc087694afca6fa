// Factorization over Q: squarefree decomposition, factorization modulo a
// good prime, quadratic Hensel lifting along a factor tree, and subset
// recombination with a degree filter taken from several primes.

#include <algorithm>
#include <numeric>

#include "tors5/exact_arith.hpp"

namespace tors5 {

namespace {

bool is_prime_u64(uint64_t n) {
    if (n < 2) return false;
    for (uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// ---- polynomials over Z/MZ with a multiprecision modulus (coefficients in [0, M))

void red(ZPoly& a, const BigInt& M) {
    for (auto& v : a) mpz_fdiv_r(v.get_mpz_t(), v.get_mpz_t(), M.get_mpz_t());
    ztrim(a);
}

ZPoly mulm(const ZPoly& a, const ZPoly& b, const BigInt& M) {
    ZPoly r = zmul(a, b);
    red(r, M);
    return r;
}

ZPoly subm(const ZPoly& a, const ZPoly& b, const BigInt& M) {
    ZPoly r = zsub(a, b);
    red(r, M);
    return r;
}

ZPoly addm(const ZPoly& a, const ZPoly& b, const BigInt& M) {
    ZPoly r = zadd(a, b);
    red(r, M);
    return r;
}

// Division by b whose leading coefficient is a unit mod M.
std::pair<ZPoly, ZPoly> divremm(const ZPoly& a, const ZPoly& b, const BigInt& M) {
    int da = static_cast<int>(a.size()) - 1, db = static_cast<int>(b.size()) - 1;
    if (da < db) return {ZPoly{}, a};
    BigInt inv;
    if (!mpz_invert(inv.get_mpz_t(), b.back().get_mpz_t(), M.get_mpz_t()))
        throw MathError("hensel: leading coefficient not invertible");
    ZPoly r = a, q(da - db + 1);
    BigInt t;
    for (int i = da; i >= db; --i) {
        mpz_fdiv_r(r[i].get_mpz_t(), r[i].get_mpz_t(), M.get_mpz_t());
        if (sgn(r[i]) == 0) continue;
        t = r[i] * inv;
        mpz_fdiv_r(t.get_mpz_t(), t.get_mpz_t(), M.get_mpz_t());
        q[i - db] = t;
        for (int j = 0; j <= db; ++j) mpz_submul(r[i - db + j].get_mpz_t(), t.get_mpz_t(), b[j].get_mpz_t());
    }
    r.resize(db);
    red(r, M);
    red(q, M);
    return {q, r};
}

ZPoly to_z(const PolyZn& f) {
    ZPoly r(f.coeffs().size());
    for (size_t i = 0; i < r.size(); ++i) r[i] = static_cast<unsigned long>(f.coeffs()[i]);
    return r;
}

// s*a + t*b = 1 over F_p for coprime a, b.
void xgcd_mod(const PolyZn& a, const PolyZn& b, PolyZn& s, PolyZn& t) {
    uint64_t p = a.modulus();
    PolyZn r0 = a, r1 = b, s0(p, {1}), s1(p, {}), t0(p, {}), t1(p, {1});
    while (!r1.is_zero()) {
        auto [q, r] = divrem(r0, r1);
        PolyZn s2 = s0 - q * s1, t2 = t0 - q * t1;
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s2;
        t0 = t1;
        t1 = t2;
    }
    if (r0.degree() != 0) throw MathError("hensel: factors not coprime mod p");
    uint64_t inv = inv_mod(r0.lc(), p);
    s = s0.scaled(inv);
    t = t0.scaled(inv);
}

// One quadratic Hensel step: f = g h mod m, s g + t h = 1 mod m, h monic.
// Returns the lifted quantities modulo M (a power of p dividing m^2).
void hensel_step(const ZPoly& f, ZPoly& g, ZPoly& h, ZPoly& s, ZPoly& t, const BigInt& M) {
    ZPoly e = subm(f, mulm(g, h, M), M);
    auto [q, r] = divremm(mulm(s, e, M), h, M);
    ZPoly g2 = addm(addm(g, mulm(t, e, M), M), mulm(q, g, M), M);
    ZPoly h2 = addm(h, r, M);
    ZPoly b = subm(addm(mulm(s, g2, M), mulm(t, h2, M), M), ZPoly{BigInt(1)}, M);
    auto [c, d] = divremm(mulm(s, b, M), h2, M);
    s = subm(s, d, M);
    t = subm(subm(t, mulm(t, b, M), M), mulm(c, g2, M), M);
    g = std::move(g2);
    h = std::move(h2);
}

// Lift f = lc(f) * prod(facs) mod p to monic factors modulo target = p^k.
void hensel_tree(const ZPoly& f, const std::vector<PolyZn>& facs, uint64_t p, const BigInt& target,
                 std::vector<ZPoly>& out) {
    if (facs.size() == 1) {
        BigInt inv;
        mpz_invert(inv.get_mpz_t(), f.back().get_mpz_t(), target.get_mpz_t());
        ZPoly m = zscale(f, inv);
        red(m, target);
        out.push_back(std::move(m));
        return;
    }
    size_t half = facs.size() / 2;
    std::vector<PolyZn> left(facs.begin(), facs.begin() + half), right(facs.begin() + half, facs.end());
    PolyZn gp(p, {mpz_fdiv_ui(f.back().get_mpz_t(), p)});
    for (const auto& u : left) gp = gp * u;
    PolyZn hp(p, {1});
    for (const auto& u : right) hp = hp * u;
    PolyZn sp, tp;
    xgcd_mod(gp, hp, sp, tp);
    ZPoly g = to_z(gp), h = to_z(hp), s = to_z(sp), t = to_z(tp);
    BigInt m = static_cast<unsigned long>(p);
    while (m < target) {
        BigInt M = m * m;
        if (M > target) M = target;
        hensel_step(f, g, h, s, t, M);
        m = M;
    }
    hensel_tree(g, left, p, target, out);
    hensel_tree(h, right, p, target, out);
}

BigInt norm2_ceil(const ZPoly& f) {
    BigInt s = 0;
    for (const auto& v : f) s += v * v;
    BigInt r;
    mpz_sqrt(r.get_mpz_t(), s.get_mpz_t());
    return r + 1;
}

void symmetric(ZPoly& a, const BigInt& M) {
    BigInt half = M / 2;
    for (auto& v : a)
        if (v > half) v -= M;
    ztrim(a);
}

// Exact division over Z; returns false if b does not divide a.
bool zdivides(const ZPoly& a, const ZPoly& b, ZPoly* quot) {
    int da = static_cast<int>(a.size()) - 1, db = static_cast<int>(b.size()) - 1;
    if (da < db) return false;
    ZPoly r = a, q(da - db + 1);
    for (int i = da; i >= db; --i) {
        if (sgn(r[i]) == 0) continue;
        if (!mpz_divisible_p(r[i].get_mpz_t(), b.back().get_mpz_t())) return false;
        mpz_divexact(q[i - db].get_mpz_t(), r[i].get_mpz_t(), b.back().get_mpz_t());
        for (int j = 0; j <= db; ++j) mpz_submul(r[i - db + j].get_mpz_t(), q[i - db].get_mpz_t(), b[j].get_mpz_t());
    }
    for (int i = 0; i < db; ++i)
        if (sgn(r[i]) != 0) return false;
    if (quot) {
        ztrim(q);
        *quot = std::move(q);
    }
    return true;
}

ZPoly primitive(ZPoly a) {
    BigInt c = zcontent(a);
    if (sgn(a.back()) < 0) c = -c;
    for (auto& v : a) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), c.get_mpz_t());
    return a;
}

// Subset sums of a degree multiset, as a bitmask over 0..n.
std::vector<char> subset_sums(const std::vector<int>& degs, int n) {
    std::vector<char> ok(n + 1, 0);
    ok[0] = 1;
    for (int d : degs)
        for (int s = n; s >= d; --s)
            if (ok[s - d]) ok[s] = 1;
    return ok;
}

// Good primes >= 5 for a primitive squarefree F, in increasing order.
std::vector<uint64_t> good_primes(const ZPoly& F, int count) {
    std::vector<uint64_t> out;
    for (uint64_t p = 5; static_cast<int>(out.size()) < count; ++p) {
        if (!is_prime_u64(p)) continue;
        if (mpz_divisible_ui_p(F.back().get_mpz_t(), p)) continue;
        if (!is_squarefree_mod(PolyZn::from_ints(F, p))) continue;
        out.push_back(p);
    }
    return out;
}

// f is squarefree over Q when it stays squarefree modulo some prime not
// dividing the leading coefficient; the rational gcd with f' is the slow
// path for large coefficients.
bool squarefree_by_reduction(const PolyQ& f) {
    ZPoly F = primitive_int(f);
    int tried = 0;
    for (uint64_t p = 101; tried < 4; p += 2) {
        if (!is_prime_u64(p) || mpz_divisible_ui_p(F.back().get_mpz_t(), p)) continue;
        ++tried;
        if (is_squarefree_mod(PolyZn::from_ints(F, p))) return true;
    }
    return false;
}

std::vector<int> ddf_degrees(const PolyZn& f) {
    std::vector<int> degs;
    for (auto& [g, d] : distinct_degree(f))
        for (int i = 0; i < g.degree() / d; ++i) degs.push_back(d);
    return degs;
}

// Core: irreducible factors of the primitive squarefree F (deg >= 2, F(0) != 0)
// of degree <= max_degree.  With max_degree >= deg F this is the complete
// factorization.
std::vector<ZPoly> factor_core(ZPoly F, int max_degree) {
    int n = static_cast<int>(F.size()) - 1;
    const bool complete = max_degree >= n;
    std::vector<ZPoly> result;

    auto primes = good_primes(F, 5);
    std::vector<char> allowed(n + 1, 1);
    uint64_t best_p = 0;
    size_t best_cost = SIZE_MAX;
    for (uint64_t p : primes) {
        PolyZn fp = PolyZn::from_ints(F, p).monic();
        auto degs = ddf_degrees(fp);
        auto ok = subset_sums(degs, n);
        for (int i = 0; i <= n; ++i) allowed[i] = allowed[i] && ok[i];
        size_t cost = 0;
        for (int d : degs)
            if (d <= max_degree) ++cost;
        if (cost < best_cost) {
            best_cost = cost;
            best_p = p;
        }
    }
    bool any = false;
    for (int d = 1; d <= std::min(max_degree, n - 1); ++d) any = any || allowed[d];
    if (!any) {
        if (complete) result.push_back(F);
        return result;
    }

    uint64_t p = best_p;
    PolyZn fp = PolyZn::from_ints(F, p).monic();
    std::vector<PolyZn> small, lifts_in;
    PolyZn big(p, {1});
    bool have_big = false;
    for (auto& [g, d] : distinct_degree(fp)) {
        if (d > max_degree) {
            big = big * g;
            have_big = true;
            continue;
        }
        // Only the small distinct-degree blocks are split.
        for (auto& u : factor_mod_p(g)) small.push_back(u);
    }
    if (small.empty()) {
        if (complete) result.push_back(F);
        return result;
    }
    lifts_in = small;
    if (have_big) lifts_in.push_back(big);

    BigInt L = F.back();
    BigInt B = abs(L) * norm2_ceil(F);
    mpz_mul_2exp(B.get_mpz_t(), B.get_mpz_t(), std::min(max_degree, n));
    BigInt M = static_cast<unsigned long>(p);
    while (M <= 2 * B) M *= p;

    std::vector<ZPoly> lifted;
    hensel_tree(F, lifts_in, p, M, lifted);
    if (have_big) lifted.pop_back();

    std::vector<ZPoly> u = lifted;
    std::vector<int> deg(u.size());
    for (size_t i = 0; i < u.size(); ++i) deg[i] = static_cast<int>(u[i].size()) - 1;

    ZPoly cur = F;
    for (size_t s = 1; s <= u.size(); ++s) {
        bool progress = true;
        while (progress) {
            progress = false;
            size_t r = u.size();
            if (s > r) break;
            // Without a lumped block the complement of a factor is a factor.
            if (!have_big && 2 * s > r) break;
            std::vector<size_t> idx(s);
            std::iota(idx.begin(), idx.end(), 0);
            while (true) {
                int dsum = 0;
                for (size_t i : idx) dsum += deg[i];
                int dcur = static_cast<int>(cur.size()) - 1;
                if (dsum <= max_degree && dsum < dcur && dsum <= n && allowed[dsum]) {
                    BigInt Lc = cur.back();
                    // constant term pre-check
                    BigInt c0 = Lc;
                    for (size_t i : idx) {
                        c0 *= u[i][0];
                        mpz_fdiv_r(c0.get_mpz_t(), c0.get_mpz_t(), M.get_mpz_t());
                    }
                    if (c0 > M / 2) c0 -= M;
                    BigInt lf0 = Lc * cur[0];
                    if (sgn(c0) != 0 && mpz_divisible_p(lf0.get_mpz_t(), c0.get_mpz_t())) {
                        ZPoly G{Lc};
                        for (size_t i : idx) G = mulm(G, u[i], M);
                        symmetric(G, M);
                        G = primitive(G);
                        ZPoly q;
                        if (zdivides(cur, G, &q)) {
                            result.push_back(G);
                            cur = primitive(q);
                            std::vector<ZPoly> nu;
                            std::vector<int> nd;
                            for (size_t i = 0; i < u.size(); ++i)
                                if (std::find(idx.begin(), idx.end(), i) == idx.end()) {
                                    nu.push_back(u[i]);
                                    nd.push_back(deg[i]);
                                }
                            u = std::move(nu);
                            deg = std::move(nd);
                            progress = true;
                            break;
                        }
                    }
                }
                // next combination
                int k = static_cast<int>(s) - 1;
                while (k >= 0 && idx[k] == u.size() - s + k) --k;
                if (k < 0) break;
                ++idx[k];
                for (size_t j = k + 1; j < s; ++j) idx[j] = idx[j - 1] + 1;
            }
        }
    }
    // Every proper subset has failed, so what is left is irreducible.
    if (!have_big && cur.size() > 1) result.push_back(cur);
    return result;
}

PolyQ monic_of(const ZPoly& g) { return PolyQ::from_ints(g).monic(); }

void sort_polys(std::vector<PolyQ>& v) { std::sort(v.begin(), v.end(), lex_less); }

// Monic irreducible factors of a monic squarefree polynomial, restricted
// to degree <= max_degree.
std::vector<PolyQ> squarefree_factors(const PolyQ& g, int max_degree) {
    std::vector<PolyQ> out;
    if (g.degree() <= 0) return out;
    PolyQ h = g;
    if (sgn(h.coeff(0)) == 0) {
        out.push_back(PolyQ::x());
        h = exact_div(h, PolyQ::x());
    }
    if (h.degree() == 1) {
        out.push_back(h.monic());
    } else if (h.degree() >= 2) {
        for (auto& z : factor_core(primitive_int(h), max_degree)) out.push_back(monic_of(z));
    }
    std::vector<PolyQ> kept;
    for (auto& f : out)
        if (f.degree() <= max_degree) kept.push_back(f);
    return kept;
}

}  // namespace

Factorization factor_over_Q(const PolyQ& f) {
    if (f.is_zero()) throw MathError("factor_over_Q: zero polynomial");
    Factorization fac;
    fac.unit = f.lc();
    for (auto& [g, e] : squarefree_decomposition(f))
        for (auto& h : squarefree_factors(g, g.degree())) fac.factors.emplace_back(h, e);
    std::sort(fac.factors.begin(), fac.factors.end(),
              [](const auto& a, const auto& b) { return lex_less(a.first, b.first); });
    return fac;
}

std::vector<PolyQ> small_degree_factors(const PolyQ& f, int max_degree) {
    if (f.is_zero()) throw MathError("small_degree_factors: zero polynomial");
    std::vector<PolyQ> out;
    if (f.degree() <= 0) return out;
    if (squarefree_by_reduction(f)) {
        out = squarefree_factors(f, max_degree);
    } else {
        for (auto& [g, e] : squarefree_decomposition(f))
            for (auto& h : squarefree_factors(g, max_degree)) out.push_back(h);
    }
    sort_polys(out);
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<BigRat> rational_roots(const PolyQ& f) {
    std::vector<BigRat> roots;
    for (auto& h : small_degree_factors(f, 1)) roots.push_back(-h.coeff(0));
    std::sort(roots.begin(), roots.end());
    return roots;
}

std::vector<int> possible_factor_degrees(const PolyQ& f, int nprimes) {
    PolyQ g = squarefree_by_reduction(f) ? f : squarefree_part(f);
    int n = g.degree();
    std::vector<int> out;
    if (n <= 0) return out;
    ZPoly F = primitive_int(g);
    std::vector<char> allowed(n + 1, 1);
    for (uint64_t p : good_primes(F, nprimes)) {
        auto ok = subset_sums(ddf_degrees(PolyZn::from_ints(F, p).monic()), n);
        for (int i = 0; i <= n; ++i) allowed[i] = allowed[i] && ok[i];
    }
    for (int d = 1; d <= n; ++d)
        if (allowed[d]) out.push_back(d);
    return out;
}

}  // namespace tors5
