// Torsion subgroups over Q and over number fields.  Each p-primary part is
// built level by level: the p-torsion from the division polynomial, then
// E[p^(k+1)] as the preimage of E[p^k] under [p], whose x-coordinates are
// roots of phi_p - x0 * psi_p^2.  The size sequence N_k = #E[p^k] fixes
// the structure C_{p^a} x C_{p^b}.

#include <algorithm>
#include <numeric>

#include "tors5/elliptic.hpp"

namespace tors5 {

namespace {

// Largest exponent of p allowed in a torsion group over Q or over a
// quintic field.
int exponent_cap(long p) {
    switch (p) {
        case 2: return 3;
        case 3: return 2;
        case 5: return 2;
        case 7: return 1;
        case 11: return 1;
        default: return 0;
    }
}

struct RationalField {
    using F = BigRat;
    F lift(const BigRat& c) const { return c; }
    std::vector<F> roots(const PolyQ& g) const { return rational_roots(g); }
    std::optional<F> sqrt(const F& a) const {
        BigRat r;
        if (is_rational_square(a, &r)) return r;
        return std::nullopt;
    }
};

struct NumberFieldCtx {
    using F = NFElem;
    FieldPtr K;
    F lift(const BigRat& c) const { return NFElem(K, c); }
    std::vector<F> roots(const PolyQ& g) const { return nf_roots(g, K); }
    std::optional<F> sqrt(const F& a) const {
        if (a.is_zero()) return a;
        if (a.is_rational()) {
            BigRat r;
            if (is_rational_square(a.rational_value(), &r)) return NFElem(K, r);
            if (K->degree() % 2 == 1) return std::nullopt;  // odd degree: no new square roots of rationals
        }
        if (!is_rational_square(a.norm())) return std::nullopt;
        PolyK g(K, std::vector<NFElem>{-a, NFElem(K, BigRat(0)), NFElem(K, BigRat(1))});
        auto r = nf_roots(g);
        if (r.empty()) return std::nullopt;
        return r.front();
    }
};

template <class Ctx>
std::vector<typename Ctx::F> roots_of_pullback(const Ctx& ctx, const CurveQ& E, long p,
                                                const typename Ctx::F& x0) {
    PolyQ ph = E.phi(static_cast<int>(p)), ps = E.psi_sq(static_cast<int>(p));
    if constexpr (std::is_same_v<typename Ctx::F, BigRat>) {
        return ctx.roots(ph - ps * x0);
    } else {
        if (x0.is_rational()) return ctx.roots(ph - ps * x0.rational_value());
        PolyK h = PolyK(ctx.K, ph) - PolyK(ctx.K, ps).scaled(x0);
        return nf_roots(h);
    }
}

template <class Ctx>
void points_above(const Ctx& ctx, const CurveQ& E, const typename Ctx::F& x,
                  std::vector<Point<typename Ctx::F>>& out) {
    using F = typename Ctx::F;
    PolyQ b = E.beta();
    F val = ctx.lift(b.coeff(0)) + x * (ctx.lift(b.coeff(1)) + x * (ctx.lift(b.coeff(2)) + x * ctx.lift(b.coeff(3))));
    auto s = ctx.sqrt(val);
    if (!s) return;
    F half = ctx.lift(BigRat(1, 2));
    F base = -(ctx.lift(E.a1()) * x) - ctx.lift(E.a3());
    Point<F> P(x, (base + *s) * half);
    out.push_back(P);
    if (!is_zero(val)) out.push_back(Point<F>(x, (base - *s) * half));
}

template <class F>
bool contains(const std::vector<Point<F>>& v, const Point<F>& P) {
    return std::find(v.begin(), v.end(), P) != v.end();
}

template <class Ctx>
struct PrimaryPart {
    using F = typename Ctx::F;
    long p = 1;
    int a = 0, b = 0;
    std::vector<Point<F>> points;  // all of E[p^inf], including infinity
    Point<F> generator;            // a point of order p^a
};

template <class Ctx>
PrimaryPart<Ctx> primary_part(const Ctx& ctx, const CurveQ& E, long p, int cap, bool check_cap) {
    using F = typename Ctx::F;
    PrimaryPart<Ctx> part;
    part.p = p;
    std::vector<Point<F>> level{Point<F>()};
    // level 1
    std::vector<Point<F>> pts;
    for (const F& x : ctx.roots(E.division_polynomial(static_cast<int>(p)))) points_above(ctx, E, x, pts);
    std::vector<Point<F>> cur = level;
    for (auto& P : pts)
        if (!contains(cur, P)) cur.push_back(P);
    const std::vector<Point<F>> first = cur;
    std::vector<long> N{1, static_cast<long>(cur.size())};
    int limit = check_cap ? cap + 1 : cap;
    for (int k = 2; k <= limit && N.back() > N[N.size() - 2]; ++k) {
        std::vector<Point<F>> next = first;
        std::vector<F> seen;
        for (const auto& P : cur) {
            if (P.inf) continue;
            if (std::find(seen.begin(), seen.end(), P.x) != seen.end()) continue;
            seen.push_back(P.x);
            std::vector<Point<F>> above;
            for (const F& x : roots_of_pullback(ctx, E, p, P.x)) points_above(ctx, E, x, above);
            for (auto& Q : above)
                if (!contains(next, Q)) next.push_back(Q);
        }
        N.push_back(static_cast<long>(next.size()));
        cur = std::move(next);
    }
    if (static_cast<int>(N.size()) - 1 > cap && N.back() > N[N.size() - 2])
        throw MathError("torsion point of order beyond the allowed bound (p = " + std::to_string(p) + ")");
    for (size_t k = 1; k < N.size(); ++k) {
        long r = N[k] / N[k - 1];
        if (N[k] % N[k - 1]) throw MathError("inconsistent torsion level sizes");
        if (r == p) ++part.a;
        else if (r == p * p) {
            ++part.a;
            ++part.b;
        } else if (r != 1) throw MathError("inconsistent torsion level sizes");
    }
    part.points = cur;
    long target = 1;
    for (int i = 0; i < part.a; ++i) target *= p;
    for (const auto& P : cur)
        if (point_order(E, P, target) == target) {
            part.generator = P;
            break;
        }
    return part;
}

template <class Ctx>
TorsionData<typename Ctx::F> assemble(const CurveQ& E, const std::vector<PrimaryPart<Ctx>>& parts) {
    using F = typename Ctx::F;
    TorsionData<F> out;
    long m = 1, n = 1;
    std::vector<Point<F>> all{Point<F>()};
    Point<F> w;
    for (const auto& part : parts) {
        for (int i = 0; i < part.a; ++i) n *= part.p;
        for (int i = 0; i < part.b; ++i) m *= part.p;
        std::vector<Point<F>> next;
        for (const auto& A : all)
            for (const auto& B : part.points) next.push_back(add(E, A, B));
        all = std::move(next);
        if (part.a > 0) w = add(E, w, part.generator);
    }
    out.group = TorsionGroup(m, n);
    out.witness = w;
    out.points = std::move(all);
    if (static_cast<long>(out.points.size()) != out.group.order()) throw MathError("torsion assembly mismatch");
    return out;
}

long valuation(long g, long p) {
    int v = 0;
    while (g % p == 0) {
        g /= p;
        ++v;
    }
    return v;
}

}  // namespace

TorsionData<BigRat> torsion_over_Q_detail(const CurveQ& E) {
    // Reduction at good odd primes embeds the torsion into E(F_p).
    BigInt u = E.integral_scale(), u12;
    mpz_pow_ui(u12.get_mpz_t(), u.get_mpz_t(), 12);
    BigRat D = E.discriminant() * BigRat(u12);
    BigInt Dz = D.get_num();
    long g = 0;
    int used = 0;
    for (long p = 3; used < 12 && p < 400; p += 2) {
        bool prime = true;
        for (long d = 3; d * d <= p; d += 2)
            if (p % d == 0) prime = false;
        if (!prime || mpz_divisible_ui_p(Dz.get_mpz_t(), p)) continue;
        g = std::gcd(g, count_points_mod_p(E, p));
        ++used;
    }
    RationalField ctx;
    std::vector<PrimaryPart<RationalField>> parts;
    for (long p : {2L, 3L, 5L, 7L}) {
        int v = static_cast<int>(valuation(g, p));
        if (v == 0) continue;
        parts.push_back(primary_part(ctx, E, p, std::min(v, exponent_cap(p)), false));
    }
    auto data = assemble(E, parts);
    if (!in_phi1(data.group)) throw MathError("torsion over Q outside Mazur's list");
    return data;
}

TorsionGroup torsion_over_Q(const CurveQ& E) { return torsion_over_Q_detail(E).group; }

TorsionData<NFElem> torsion_over_field(const CurveQ& E, const FieldPtr& K) {
    NumberFieldCtx ctx{K};
    std::vector<PrimaryPart<NumberFieldCtx>> parts;
    for (long p : {2L, 3L, 5L, 7L, 11L}) parts.push_back(primary_part(ctx, E, p, exponent_cap(p), false));
    auto data = assemble(E, parts);
    if (!in_phiQ5(data.group)) throw MathError("torsion outside the list for quintic fields");
    return data;
}

TorsionGroup torsion_over_quintic(const CurveQ& E, const FieldPtr& K) {
    if (K->degree() != 5) throw MathError("torsion_over_quintic requires a quintic field");
    return torsion_over_field(E, K).group;
}

}  // namespace tors5
