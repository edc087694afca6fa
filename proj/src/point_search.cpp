// Height-bounded rational point searches on the two auxiliary curves.
//
// C': y^2 = x^6 + 22x^3 + 125.  With x = a/b in lowest terms the point is
// rational iff a^6 + 22a^3b^3 + 125b^6 is a square; cheap residue filters
// (mod 2^64 and mod 45045) reject almost every pair before the exact
// 128-bit square root.
//
// Genus 1: 27(s+1)(s+9)^3 t(t^2-11t-1)^5 = s^3(t^4+228t^3+494t^2-228t+1)^3.
// With s = a/b and t = c/d, clearing denominators gives
//   27(a+b)(a+9b)^3 * c(c^2-11cd-d^2)^5 d = a^3 b * Q(c,d)^3,
// which is tested modulo two primes over the whole grid; survivors are
// confirmed with exact rational arithmetic.

#include <algorithm>
#include <cmath>
#include <numeric>

#include "tors5/families.hpp"

namespace tors5 {

namespace {

using i128 = __int128;
using u128 = unsigned __int128;

bool exact_square(i128 v, i128* root) {
    if (v < 0) return false;
    i128 r = static_cast<i128>(std::sqrt(static_cast<long double>(v)));
    while (r > 0 && r * r > v) --r;
    while ((r + 1) * (r + 1) <= v) ++r;
    if (r * r != v) return false;
    if (root) *root = r;
    return true;
}

constexpr uint64_t kResMod = 45045;  // 5 * 7 * 9 * 11 * 13

struct SquareTables {
    std::vector<char> mod64, modM;
    SquareTables() : mod64(64, 0), modM(kResMod, 0) {
        for (uint64_t i = 0; i < 64; ++i) mod64[(i * i) % 64] = 1;
        for (uint64_t i = 0; i < kResMod; ++i) modM[(i * i) % kResMod] = 1;
    }
};

const SquareTables& squares() {
    static const SquareTables t;
    return t;
}

uint64_t modM(long a) { return static_cast<uint64_t>(((a % static_cast<long>(kResMod)) + kResMod) % kResMod); }

std::vector<AuxPoint> search_cprime(long B, Exec exec) {
    const auto& sq = squares();
    std::vector<std::vector<AuxPoint>> per_b(static_cast<size_t>(B) + 1);
#pragma omp parallel for schedule(dynamic, 16) if (exec == Exec::parallel)
    for (long b = 1; b <= B; ++b) {
        uint64_t b3w = static_cast<uint64_t>(b) * b * b;
        uint64_t bm = modM(b), b3m = bm * bm % kResMod * bm % kResMod;
        for (long a = -B; a <= B; ++a) {
            // a^6 + 22 a^3 b^3 + 125 b^6 modulo 2^64 (wrapping is exact there)
            uint64_t a3w = static_cast<uint64_t>(a) * static_cast<uint64_t>(a) * static_cast<uint64_t>(a);
            uint64_t w = a3w * a3w + 22 * a3w * b3w + 125 * b3w * b3w;
            if (!sq.mod64[w & 63]) continue;
            uint64_t am = modM(a), a3m = am * am % kResMod * am % kResMod;
            uint64_t vm = (a3m * a3m + 22 * a3m % kResMod * b3m + 125 * b3m % kResMod * b3m) % kResMod;
            if (!sq.modM[vm]) continue;
            if (std::gcd(a, b) != 1) continue;
            i128 A3 = static_cast<i128>(a) * a * a, B3 = static_cast<i128>(b) * b * b;
            i128 v = A3 * A3 + 22 * A3 * B3 + 125 * B3 * B3, r;
            if (!exact_square(v, &r)) continue;
            // y = +-r / b^3
            BigInt rz(static_cast<long>(r));  // r < 2^41 for heights up to 10^4
            BigRat x(a, b), y(rz, BigInt(b) * b * b);
            x.canonicalize();
            y.canonicalize();
            per_b[static_cast<size_t>(b)].push_back({x, y});
            if (sgn(y) != 0) per_b[static_cast<size_t>(b)].push_back({x, -y});
        }
    }
    std::vector<AuxPoint> out;
    for (auto& v : per_b) out.insert(out.end(), v.begin(), v.end());
    return out;
}

// Arithmetic modulo the Mersenne prime 2^61 - 1 and a second 62-bit prime.
constexpr uint64_t kP1 = (uint64_t(1) << 61) - 1;
constexpr uint64_t kP2 = 4611686018427387847ULL;  // 2^62 - 57

uint64_t mul1(uint64_t a, uint64_t b) {
    u128 z = static_cast<u128>(a) * b;
    uint64_t r = static_cast<uint64_t>(z & kP1) + static_cast<uint64_t>(z >> 61);
    return r >= kP1 ? r - kP1 : r;
}
uint64_t mul2(uint64_t a, uint64_t b) { return static_cast<uint64_t>(static_cast<u128>(a) * b % kP2); }

template <uint64_t P>
uint64_t red(long v) {
    long r = v % static_cast<long>(P);
    return static_cast<uint64_t>(r < 0 ? r + static_cast<long>(P) : r);
}

template <uint64_t P>
uint64_t mul(uint64_t a, uint64_t b) {
    if constexpr (P == kP1) return mul1(a, b);
    else return mul2(a, b);
}

template <uint64_t P>
uint64_t powm(uint64_t a, int e) {
    uint64_t r = 1;
    while (e--) r = mul<P>(r, a);
    return r;
}

struct Side {
    long num, den;
    uint64_t l1, r1, l2, r2;  // left and right factors modulo both primes
};

template <uint64_t P>
std::pair<uint64_t, uint64_t> s_sides(long a, long b) {
    uint64_t l = mul<P>(red<P>(27), mul<P>(red<P>(a + b), powm<P>(red<P>(a + 9 * b), 3)));
    uint64_t r = mul<P>(powm<P>(red<P>(a), 3), red<P>(b));
    return {l, r};
}

template <uint64_t P>
std::pair<uint64_t, uint64_t> t_sides(long c, long d) {
    uint64_t q5 = powm<P>(red<P>(c * c - 11 * c * d - d * d), 5);
    uint64_t l = mul<P>(mul<P>(red<P>(c), q5), red<P>(d));
    long c2 = c * c, d2 = d * d;
    uint64_t Q = red<P>(c2 * c2 + 228 * c2 * c * d + 494 * c2 * d2 - 228 * c * d2 * d + d2 * d2);
    return {l, powm<P>(Q, 3)};
}

std::vector<std::pair<long, long>> coprime_grid(long B) {
    std::vector<std::pair<long, long>> g;
    for (long d = 1; d <= B; ++d)
        for (long n = -B; n <= B; ++n)
            if (std::gcd(n, d) == 1) g.push_back({n, d});
    return g;
}

std::vector<AuxPoint> search_genus1(long B, Exec exec) {
    auto grid = coprime_grid(B);
    std::vector<Side> S(grid.size()), T(grid.size());
    for (size_t i = 0; i < grid.size(); ++i) {
        auto [n, d] = grid[i];
        auto [sl1, sr1] = s_sides<kP1>(n, d);
        auto [sl2, sr2] = s_sides<kP2>(n, d);
        S[i] = {n, d, sl1, sr1, sl2, sr2};
        auto [tl1, tr1] = t_sides<kP1>(n, d);
        auto [tl2, tr2] = t_sides<kP2>(n, d);
        T[i] = {n, d, tl1, tr1, tl2, tr2};
    }
    std::vector<std::vector<AuxPoint>> found(S.size());
    const long ns = static_cast<long>(S.size());
#pragma omp parallel for schedule(dynamic, 64) if (exec == Exec::parallel)
    for (long i = 0; i < ns; ++i) {
        const Side& s = S[static_cast<size_t>(i)];
        for (const Side& t : T) {
            if (mul1(s.l1, t.l1) != mul1(s.r1, t.r1)) continue;
            if (mul2(s.l2, t.l2) != mul2(s.r2, t.r2)) continue;
            AuxPoint P{BigRat(s.num, s.den), BigRat(t.num, t.den)};
            P.x.canonicalize();
            P.y.canonicalize();
            if (on_aux_curve(AuxCurve::C_genus1, P)) found[static_cast<size_t>(i)].push_back(P);
        }
    }
    std::vector<AuxPoint> out;
    for (auto& v : found) out.insert(out.end(), v.begin(), v.end());
    return out;
}

}  // namespace

bool on_aux_curve(AuxCurve c, const AuxPoint& P) {
    if (c == AuxCurve::C_prime) {
        BigRat x3 = P.x * P.x * P.x;
        return P.y * P.y == x3 * x3 + 22 * x3 + 125;
    }
    const BigRat& s = P.x;
    const BigRat& t = P.y;
    BigRat s9 = s + 9, q = t * t - 11 * t - 1;
    BigRat q5 = q * q * q * q * q;
    BigRat lhs = 27 * (s + 1) * s9 * s9 * s9 * t * q5;
    BigRat u = t * t * t * t + 228 * t * t * t + 494 * t * t - 228 * t + 1;
    return lhs == s * s * s * u * u * u;
}

std::vector<AuxPoint> auxiliary_point_search(AuxCurve c, long height_bound, Exec exec) {
    if (height_bound < 1) throw MathError("height bound must be positive");
    auto out = c == AuxCurve::C_prime ? search_cprime(height_bound, exec) : search_genus1(height_bound, exec);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace tors5
