#include "tors5/number_field.hpp"

#include <algorithm>
#include <functional>

namespace tors5 {

// ---------------------------------------------------------------- fields

FieldPtr NumberField::make(const PolyQ& f, bool check_irreducible) {
    if (f.degree() < 1) throw MathError("number field: defining polynomial must have degree >= 1");
    PolyQ g = f.monic();
    if (check_irreducible) {
        auto fac = factor_over_Q(g);
        if (fac.factors.size() != 1 || fac.factors[0].second != 1)
            throw MathError("number field: defining polynomial is reducible");
    }
    return FieldPtr(new NumberField(std::move(g)));
}

std::vector<BigInt> NumberField::serialize() const { return primitive_int(f_); }

// ---------------------------------------------------------------- elements

static void check_same(const FieldPtr& a, const FieldPtr& b) {
    if (a == b) return;
    if (!a || !b || a->defining_poly() != b->defining_poly()) throw MathError("number field mismatch");
}

NFElem::NFElem(FieldPtr K, const BigRat& c) : K_(std::move(K)), rep_(PolyQ::constant(c)) {}

NFElem::NFElem(FieldPtr K, const PolyQ& rep) : K_(std::move(K)) {
    rep_ = rep.degree() >= K_->degree() ? rep % K_->defining_poly() : rep;
}

NFElem NFElem::generator(FieldPtr K) { return NFElem(K, PolyQ::x()); }

std::vector<BigRat> NFElem::coords() const {
    std::vector<BigRat> v(K_->degree());
    for (int i = 0; i <= rep_.degree(); ++i) v[i] = rep_.coeffs()[i];
    return v;
}

NFElem NFElem::operator-() const {
    NFElem r = *this;
    r.rep_ = -rep_;
    return r;
}

NFElem operator+(const NFElem& a, const NFElem& b) {
    check_same(a.K_, b.K_);
    NFElem r;
    r.K_ = a.K_;
    r.rep_ = a.rep_ + b.rep_;
    return r;
}

NFElem operator-(const NFElem& a, const NFElem& b) {
    check_same(a.K_, b.K_);
    NFElem r;
    r.K_ = a.K_;
    r.rep_ = a.rep_ - b.rep_;
    return r;
}

NFElem operator*(const NFElem& a, const NFElem& b) {
    check_same(a.K_, b.K_);
    if (a.is_rational()) {
        NFElem r = b;
        r.rep_ *= a.rational_value();
        return r;
    }
    if (b.is_rational()) {
        NFElem r = a;
        r.rep_ *= b.rational_value();
        return r;
    }
    return NFElem(a.K_, a.rep_ * b.rep_);
}

bool NFElem::operator==(const NFElem& o) const {
    if (K_ != o.K_) check_same(K_, o.K_);
    return rep_ == o.rep_;
}

NFElem NFElem::inverse() const {
    if (is_zero()) throw MathError("inversion of zero in number field");
    if (is_rational()) return NFElem(K_, 1 / rational_value());
    XGcd x = poly_xgcd(rep_, K_->defining_poly());
    return NFElem(K_, x.s);
}

NFElem NFElem::pow(unsigned e) const {
    NFElem r(K_, BigRat(1)), b = *this;
    while (e) {
        if (e & 1) r *= b;
        e >>= 1;
        if (e) b = b * b;
    }
    return r;
}

BigRat NFElem::norm() const {
    if (is_rational()) {
        BigRat r = 1, v = rational_value();
        for (int i = 0; i < K_->degree(); ++i) r *= v;
        return r;
    }
    return resultant(K_->defining_poly(), rep_);
}

BigRat NFElem::trace() const {
    // Sum over i of coefficient_i times the power sum p_i of the roots.
    const PolyQ& f = K_->defining_poly();
    int d = f.degree();
    std::vector<BigRat> p(d);
    // Newton identities for the monic f.
    p[0] = d;
    for (int k = 1; k < d; ++k) {
        BigRat s = BigRat(-k) * f.coeff(d - k);
        for (int i = 1; i < k; ++i) s -= f.coeff(d - i) * p[k - i];
        p[k] = s;
    }
    BigRat t = 0;
    for (int i = 0; i <= rep_.degree(); ++i) t += rep_.coeffs()[i] * p[i];
    return t;
}

PolyQ NFElem::charpoly() const {
    int d = K_->degree();
    std::vector<BigRat> xs, ys;
    for (int i = 0; i <= d; ++i) {
        BigRat z0(i);
        xs.push_back(z0);
        ys.push_back((NFElem(K_, z0) - *this).norm());
    }
    return interpolate(xs, ys);
}

PolyQ NFElem::minpoly() const { return squarefree_part(charpoly()); }

// ---------------------------------------------------------------- PolyK

PolyK::PolyK(FieldPtr K, std::vector<NFElem> coeffs) : K_(std::move(K)), c_(std::move(coeffs)) { trim(); }

PolyK::PolyK(FieldPtr K, const PolyQ& f) : K_(std::move(K)) {
    for (const auto& c : f.coeffs()) c_.emplace_back(K_, c);
    trim();
}

void PolyK::trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

NFElem PolyK::coeff(int i) const {
    if (i < 0 || i > degree()) return NFElem(K_, BigRat(0));
    return c_[i];
}

PolyK operator+(const PolyK& a, const PolyK& b) {
    std::vector<NFElem> r(std::max(a.c_.size(), b.c_.size()), NFElem(a.K_, BigRat(0)));
    for (size_t i = 0; i < a.c_.size(); ++i) r[i] = a.c_[i];
    for (size_t i = 0; i < b.c_.size(); ++i) r[i] += b.c_[i];
    return PolyK(a.K_, std::move(r));
}

PolyK operator-(const PolyK& a, const PolyK& b) {
    std::vector<NFElem> r(std::max(a.c_.size(), b.c_.size()), NFElem(a.K_, BigRat(0)));
    for (size_t i = 0; i < a.c_.size(); ++i) r[i] = a.c_[i];
    for (size_t i = 0; i < b.c_.size(); ++i) r[i] -= b.c_[i];
    return PolyK(a.K_, std::move(r));
}

PolyK operator*(const PolyK& a, const PolyK& b) {
    if (a.is_zero() || b.is_zero()) return PolyK(a.K_, std::vector<NFElem>{});
    // Accumulate unreduced products, reduce once per coefficient.
    std::vector<PolyQ> acc(a.c_.size() + b.c_.size() - 1);
    for (size_t i = 0; i < a.c_.size(); ++i)
        for (size_t j = 0; j < b.c_.size(); ++j) acc[i + j] += a.c_[i].rep() * b.c_[j].rep();
    std::vector<NFElem> r;
    r.reserve(acc.size());
    for (auto& p : acc) r.emplace_back(a.K_, p);
    return PolyK(a.K_, std::move(r));
}

PolyK PolyK::scaled(const NFElem& s) const {
    std::vector<NFElem> r = c_;
    for (auto& v : r) v *= s;
    return PolyK(K_, std::move(r));
}

NFElem PolyK::eval(const NFElem& x) const {
    NFElem r(K_, BigRat(0));
    for (int i = degree(); i >= 0; --i) r = r * x + c_[i];
    return r;
}

PolyK PolyK::derivative() const {
    std::vector<NFElem> r;
    for (size_t i = 1; i < c_.size(); ++i) r.push_back(c_[i] * NFElem(K_, BigRat(static_cast<long>(i))));
    return PolyK(K_, std::move(r));
}

PolyK PolyK::monic() const {
    if (is_zero()) return *this;
    return scaled(lc().inverse());
}

PolyK PolyK::shift(const NFElem& a) const {
    std::vector<NFElem> v = c_;
    int n = degree();
    for (int i = 0; i < n; ++i)
        for (int j = n - 1; j >= i; --j) v[j] += a * v[j + 1];
    return PolyK(K_, std::move(v));
}

PolyQ PolyK::norm() const {
    int n = degree() * K_->degree();
    std::vector<BigRat> xs, ys;
    for (int i = 0; i <= n; ++i) {
        BigRat z0(i);
        // Horner with a rational point keeps every step reduced.
        PolyQ acc;
        for (int k = degree(); k >= 0; --k) acc = acc * z0 + c_[k].rep();
        xs.push_back(z0);
        ys.push_back(NFElem(K_, acc).norm());
    }
    return interpolate(xs, ys);
}

std::pair<PolyK, PolyK> divrem(const PolyK& a, const PolyK& b) {
    if (b.is_zero()) throw MathError("PolyK division by zero");
    const FieldPtr& K = a.field();
    if (a.degree() < b.degree()) return {PolyK(K, std::vector<NFElem>{}), a};
    std::vector<NFElem> r = a.coeffs();
    int db = b.degree();
    std::vector<NFElem> q(a.degree() - db + 1, NFElem(K, BigRat(0)));
    NFElem inv = b.lc().inverse();
    for (int i = a.degree(); i >= db; --i) {
        if (r[i].is_zero()) continue;
        NFElem t = r[i] * inv;
        q[i - db] = t;
        for (int j = 0; j <= db; ++j) r[i - db + j] -= t * b.coeffs()[j];
    }
    r.resize(db);
    return {PolyK(K, std::move(q)), PolyK(K, std::move(r))};
}

PolyK poly_gcd(const PolyK& a, const PolyK& b) {
    PolyK u = a, v = b;
    while (!v.is_zero()) {
        PolyK r = divrem(u, v).second;
        u = std::move(v);
        v = r.monic();
    }
    return u.monic();
}

// ---------------------------------------------------------------- roots

namespace {

bool coords_less(const NFElem& a, const NFElem& b) {
    auto ca = a.coords(), cb = b.coords();
    return std::lexicographical_compare(ca.begin(), ca.end(), cb.begin(), cb.end());
}

bool squarefree_fast(const PolyQ& N) {
    // A good prime with a squarefree reduction proves squarefreeness.
    ZPoly z = primitive_int(N);
    int tried = 0;
    for (uint64_t p = 1000003; tried < 3; p += 2) {
        bool prime = true;
        for (uint64_t d = 3; d * d <= p; d += 2)
            if (p % d == 0) {
                prime = false;
                break;
            }
        if (!prime) continue;
        ++tried;
        if (mpz_divisible_ui_p(z.back().get_mpz_t(), p)) continue;
        if (is_squarefree_mod(PolyZn::from_ints(z, p))) return true;
    }
    return poly_gcd(N, N.derivative()).degree() == 0;
}

// Trager: roots of a squarefree G in K through the norm of G(z - c*theta).
std::vector<NFElem> trager_roots(const PolyK& G, int max_shifts) {
    const FieldPtr& K = G.field();
    int d = K->degree();
    std::vector<NFElem> roots;
    if (G.degree() < 1) return roots;
    if (G.degree() == 1) {
        roots.push_back(-(G.coeff(0) / G.coeff(1)));
        return roots;
    }
    NFElem theta = NFElem::generator(K);
    int tried = 0;
    bool rational = true;
    for (const auto& c : G.coeffs()) rational = rational && c.is_rational();
    for (long c : {0L, 1L, -1L, 2L, -2L, 3L, -3L, 4L, -4L, 5L, -5L, 7L, -7L, 11L, -11L}) {
        // The norm of a rational polynomial is a d-th power without a shift.
        if (c == 0 && rational && d > 1) continue;
        if (max_shifts > 0 && tried++ == max_shifts) break;
        NFElem ct = theta * NFElem(K, BigRat(c));
        PolyK Gc = c == 0 ? G : G.shift(-ct);
        PolyQ N = Gc.norm();
        if (!squarefree_fast(N)) continue;
        for (const PolyQ& h : small_degree_factors(N, d)) {
            if (h.degree() != d) continue;
            PolyK g = poly_gcd(Gc, PolyK(K, h));
            if (g.degree() != 1) continue;
            NFElem r = -g.coeff(0) - ct;
            if (G.eval(r).is_zero()) roots.push_back(r);
        }
        std::sort(roots.begin(), roots.end(), coords_less);
        return roots;
    }
    throw MathError("nf_roots: no squarefree norm shift found");
}

}  // namespace

// Reduction modulo degree-one primes.  For l not dividing disc(f), the
// localization of the ring of integers at l is Z_(l)[theta]; a root in K of a
// monic G with l-integral coordinates is then l-integral too, and theta -> r
// (f(r) = 0 mod l) maps it to a root of G mod l.  No root mod l proves that
// G has no root in K.
bool excluded_by_local_roots(const PolyK& G, int primes_wanted) {
    const FieldPtr& K = G.field();
    const PolyQ& f = K->defining_poly();
    if (!f.is_integral()) return false;
    ZPoly fz = primitive_int(f);
    BigRat disc = discriminant(f);
    int used = 0;
    for (uint64_t l = 101; used < primes_wanted && l < 20000; l += 2) {
        bool prime = true;
        for (uint64_t d = 3; d * d <= l; d += 2)
            if (l % d == 0) {
                prime = false;
                break;
            }
        if (!prime || mpz_divisible_ui_p(disc.get_num_mpz_t(), l)) continue;
        bool integral = true;
        for (const auto& c : G.coeffs())
            for (const auto& q : c.rep().coeffs())
                if (mpz_divisible_ui_p(q.get_den_mpz_t(), l)) integral = false;
        if (!integral) continue;
        PolyZn fl = PolyZn::from_ints(fz, l);
        PolyZn xl = powmod(PolyZn(l, {0, 1}), BigInt(static_cast<unsigned long>(l)), fl);
        PolyZn lin = poly_gcd(xl - PolyZn(l, {0, 1}), fl);
        if (lin.degree() < 1) continue;
        for (const PolyZn& r : factor_mod_p(lin)) {
            uint64_t root = (l - r.coeffs()[0]) % l;
            std::vector<uint64_t> red;
            for (const auto& c : G.coeffs()) {
                // evaluate the representative at theta = root
                const auto& cs = c.rep().coeffs();
                uint64_t v = 0;
                for (size_t i = cs.size(); i-- > 0;) {
                    uint64_t num = mpz_fdiv_ui(cs[i].get_num_mpz_t(), l);
                    uint64_t den = mpz_fdiv_ui(cs[i].get_den_mpz_t(), l);
                    uint64_t term = static_cast<uint64_t>(static_cast<unsigned __int128>(num) * inv_mod(den, l) % l);
                    v = static_cast<uint64_t>((static_cast<unsigned __int128>(v) * root + term) % l);
                }
                red.push_back(v);
            }
            PolyZn h(l, red);
            if (h.degree() < 1) continue;
            PolyZn hx = powmod(PolyZn(l, {0, 1}), BigInt(static_cast<unsigned long>(l)), h);
            if (poly_gcd(hx - PolyZn(l, {0, 1}), h).degree() < 1) return true;
            ++used;
        }
    }
    return false;
}

std::vector<NFElem> nf_roots(const PolyK& g) {
    if (g.is_zero()) throw MathError("nf_roots: zero polynomial");
    PolyK G = g.monic();
    if (G.degree() >= 2 && excluded_by_local_roots(G, 12)) return {};
    // A squarefree norm proves G squarefree, so the costly gcd with the
    // derivative over K is only taken when the shifts all fail.
    try {
        return trager_roots(G, 3);
    } catch (const MathError&) {
    }
    PolyK dg = poly_gcd(G, G.derivative());
    if (dg.degree() > 0) G = divrem(G, dg).first.monic();
    return trager_roots(G, 0);
}

std::vector<NFElem> nf_roots(const PolyQ& g, const FieldPtr& K) {
    if (g.is_zero()) throw MathError("nf_roots: zero polynomial");
    std::vector<NFElem> roots;
    PolyQ s = squarefree_part(g);
    if (s.degree() < 1) return roots;
    // Rational roots first; the remaining factors of degree dividing [K:Q]
    // can contribute roots, the others cannot.
    int d = K->degree();
    for (const PolyQ& h : small_degree_factors(s, d)) {
        if (h.degree() == 1) {
            roots.emplace_back(K, -h.coeff(0));
        } else if (d % h.degree() == 0) {
            for (auto& r : trager_roots(PolyK(K, h), 0)) roots.push_back(r);
        }
    }
    for (const auto& r : roots)
        if (!PolyK(K, g).eval(r).is_zero()) throw MathError("nf_roots: root failed verification");
    std::sort(roots.begin(), roots.end(), coords_less);
    return roots;
}

bool is_galois(const FieldPtr& K) {
    return static_cast<int>(nf_roots(K->defining_poly(), K).size()) == K->degree();
}

bool are_isomorphic(const FieldPtr& K1, const FieldPtr& K2) {
    if (K1->degree() != K2->degree()) return false;
    if (K1->defining_poly() == K2->defining_poly()) return true;
    return !nf_roots(K1->defining_poly(), K2).empty();
}

QuinticClosure galois_group_order20_profile(const FieldPtr& K) {
    if (K->degree() != 5) throw MathError("closure profile requires a quintic field");
    if (is_galois(K)) return QuinticClosure::galois_C5;
    // The stabilizer of a root acts on the other four roots.  Its cubic
    // resolvent has exactly one root in K precisely for the group of order 20.
    PolyK f(K, K->defining_poly());
    NFElem theta = NFElem::generator(K);
    PolyK lin(K, std::vector<NFElem>{-theta, NFElem(K, BigRat(1))});
    PolyK g4 = divrem(f, lin).first;
    NFElem a = g4.coeff(3), b = g4.coeff(2), c = g4.coeff(1), dd = g4.coeff(0);
    NFElem four(K, BigRat(4));
    PolyK res(K, std::vector<NFElem>{-(a * a * dd - four * b * dd + c * c), a * c - four * dd, -b,
                                     NFElem(K, BigRat(1))});
    size_t n = nf_roots(res).size();
    return n == 1 ? QuinticClosure::frobenius_F5 : QuinticClosure::other;
}

const char* to_string(QuinticClosure c) {
    switch (c) {
        case QuinticClosure::galois_C5: return "galois_C5";
        case QuinticClosure::frobenius_F5: return "frobenius_F5";
        default: return "other";
    }
}

// ---------------------------------------------------------------- normalization

namespace {

std::vector<BigInt> small_prime_divisors(BigInt n) {
    std::vector<BigInt> out;
    n = abs(n);
    for (unsigned long q = 2; q < 100000 && n > 1; ++q) {
        if (mpz_divisible_ui_p(n.get_mpz_t(), q)) {
            out.emplace_back(q);
            while (mpz_divisible_ui_p(n.get_mpz_t(), q)) mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), q);
        }
    }
    return out;
}

// Monic integral model of the same field with small coefficients.
PolyQ reduce_model(PolyQ f) {
    int d = f.degree();
    f = f.monic();
    // center the trace
    BigRat shift = f.coeff(d - 1) / d;
    BigRat sh = BigRat(BigInt(shift.get_num() / shift.get_den()));
    f = f.shift(-sh);
    // make integral: polynomial of k*alpha
    BigInt k = 1;
    for (const auto& c : f.coeffs()) mpz_lcm(k.get_mpz_t(), k.get_mpz_t(), c.get_den_mpz_t());
    if (k != 1) f = f.scale_var(BigRat(1) / BigRat(k)).monic();
    // scale down by primes q with q^i | a_{d-i}
    ZPoly z = primitive_int(f);
    BigInt g = 0;
    for (int i = 0; i < d; ++i) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), z[i].get_mpz_t());
    for (const BigInt& q : small_prime_divisors(g)) {
        while (true) {
            bool ok = true;
            BigInt qi = 1;
            for (int i = 1; i <= d && ok; ++i) {
                qi *= q;
                if (!mpz_divisible_p(z[d - i].get_mpz_t(), qi.get_mpz_t())) ok = false;
            }
            if (!ok) break;
            qi = 1;
            for (int i = 1; i <= d; ++i) {
                qi *= q;
                z[d - i] /= qi;
            }
        }
    }
    return PolyQ::from_ints(z);
}

// Ordering used to pick the representative: size, then the absolute
// trace, then lex.
bool smaller_model(const PolyQ& a, const PolyQ& b) {
    auto key = [](const PolyQ& p) {
        BigInt mx = 0, sum = 0;
        for (const auto& c : p.coeffs()) {
            BigInt v = abs(c.get_num());
            if (v > mx) mx = v;
            sum += v;
        }
        return std::make_pair(mx, sum);
    };
    auto ka = key(a), kb = key(b);
    if (ka != kb) return ka < kb;
    BigRat ta = abs(a.coeff(a.degree() - 1)), tb = abs(b.coeff(b.degree() - 1));
    if (ta != tb) return ta < tb;
    return lex_less(a, b);
}

// Of f(x) and -f(-x), the one whose first nonzero coefficient among
// x^(d-1), x^(d-3), ... is negative.
PolyQ sign_canonical(const PolyQ& f) {
    int d = f.degree();
    for (int i = d - 1; i >= 0; i -= 2) {
        int s = sgn(f.coeff(i));
        if (s == 0) continue;
        if (s < 0) return f;
        PolyQ neg = f.scale_var(BigRat(-1));
        return sgn(neg.lc()) < 0 ? neg * BigRat(-1) : neg;
    }
    return f;
}

}  // namespace

PolyQ normalized_defining_poly(const FieldPtr& K) {
    int d = K->degree();
    PolyQ best = sign_canonical(reduce_model(K->defining_poly()));
    if (d == 1) return PolyQ::x();
    // x -> -x model as well
    auto consider = [&](const PolyQ& f) {
        if (f.degree() != d || poly_gcd(f, f.derivative()).degree() != 0) return;
        PolyQ r = sign_canonical(reduce_model(f));
        if (smaller_model(r, best)) best = r;
    };
    consider(K->defining_poly());
    // Elements with coefficients in {-1, 0, 1} on theta, ..., theta^(d-1)
    // and on a T2-reduced integral basis.
    int total = 1;
    for (int i = 0; i < d; ++i) total *= 3;
    NFElem theta = NFElem::generator(K);
    std::vector<NFElem> powers{NFElem(K, BigRat(1))};
    for (int i = 1; i < d; ++i) powers.push_back(powers.back() * theta);
    for (const auto& basis : {powers, reduced_basis(K)}) {
        for (int m = 0; m < total; ++m) {
            int v = m;
            NFElem e(K, BigRat(0));
            for (int i = 0; i < d; ++i) {
                int c = v % 3 - 1;
                v /= 3;
                if (c) e += c > 0 ? basis[i] : -basis[i];
            }
            if (!e.is_rational()) consider(e.charpoly());
        }
    }
    return best;
}

}  // namespace tors5
