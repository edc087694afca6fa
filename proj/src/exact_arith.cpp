#include "tors5/exact_arith.hpp"

#include <algorithm>
#include <sstream>

namespace tors5 {

// ---------------------------------------------------------------- PolyQ

PolyQ::PolyQ(std::vector<BigRat> coeffs) : c_(std::move(coeffs)) {
    for (auto& v : c_) v.canonicalize();
    trim();
}

PolyQ::PolyQ(std::initializer_list<long> coeffs) {
    c_.reserve(coeffs.size());
    for (long v : coeffs) c_.emplace_back(v);
    trim();
}

PolyQ PolyQ::constant(const BigRat& c) { return PolyQ(std::vector<BigRat>{c}); }

PolyQ PolyQ::x() { return PolyQ{0, 1}; }

PolyQ PolyQ::monomial(const BigRat& c, int deg) {
    std::vector<BigRat> v(deg + 1);
    v[deg] = c;
    return PolyQ(std::move(v));
}

PolyQ PolyQ::from_ints(const std::vector<BigInt>& coeffs) {
    std::vector<BigRat> v(coeffs.size());
    for (size_t i = 0; i < coeffs.size(); ++i) v[i] = BigRat(coeffs[i]);
    return PolyQ(std::move(v));
}

void PolyQ::trim() {
    while (!c_.empty() && sgn(c_.back()) == 0) c_.pop_back();
}

BigRat PolyQ::coeff(int i) const {
    if (i < 0 || i > degree()) return BigRat(0);
    return c_[i];
}

const BigRat& PolyQ::lc() const {
    if (c_.empty()) throw MathError("leading coefficient of zero polynomial");
    return c_.back();
}

bool PolyQ::is_integral() const {
    for (const auto& v : c_)
        if (v.get_den() != 1) return false;
    return true;
}

PolyQ PolyQ::operator-() const {
    PolyQ r = *this;
    for (auto& v : r.c_) v = -v;
    return r;
}

PolyQ& PolyQ::operator+=(const PolyQ& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    trim();
    return *this;
}

PolyQ& PolyQ::operator-=(const PolyQ& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
    trim();
    return *this;
}

PolyQ operator*(const PolyQ& a, const PolyQ& b) {
    if (a.is_zero() || b.is_zero()) return PolyQ();
    // Multiply over Z after clearing denominators: far fewer gcds.
    BigInt da = 1, db = 1;
    for (const auto& v : a.c_) mpz_lcm(da.get_mpz_t(), da.get_mpz_t(), v.get_den_mpz_t());
    for (const auto& v : b.c_) mpz_lcm(db.get_mpz_t(), db.get_mpz_t(), v.get_den_mpz_t());
    ZPoly za(a.c_.size()), zb(b.c_.size());
    for (size_t i = 0; i < a.c_.size(); ++i) za[i] = a.c_[i].get_num() * (da / a.c_[i].get_den());
    for (size_t i = 0; i < b.c_.size(); ++i) zb[i] = b.c_[i].get_num() * (db / b.c_[i].get_den());
    ZPoly zc = zmul(za, zb);
    BigInt d = da * db;
    std::vector<BigRat> out(zc.size());
    for (size_t i = 0; i < zc.size(); ++i) {
        out[i] = BigRat(zc[i], d);
        out[i].canonicalize();
    }
    PolyQ r;
    r.c_ = std::move(out);
    r.trim();
    return r;
}

PolyQ& PolyQ::operator*=(const PolyQ& o) {
    *this = *this * o;
    return *this;
}

PolyQ& PolyQ::operator*=(const BigRat& s) {
    if (sgn(s) == 0) {
        c_.clear();
        return *this;
    }
    for (auto& v : c_) v *= s;
    return *this;
}

BigRat PolyQ::eval(const BigRat& x) const {
    BigRat r = 0;
    for (int i = degree(); i >= 0; --i) r = r * x + c_[i];
    return r;
}

PolyQ PolyQ::derivative() const {
    if (c_.size() <= 1) return PolyQ();
    std::vector<BigRat> v(c_.size() - 1);
    for (size_t i = 1; i < c_.size(); ++i) v[i - 1] = c_[i] * static_cast<long>(i);
    return PolyQ(std::move(v));
}

PolyQ PolyQ::monic() const {
    if (is_zero()) return *this;
    BigRat inv = 1 / lc();
    return *this * inv;
}

PolyQ PolyQ::compose(const PolyQ& g) const {
    PolyQ r;
    for (int i = degree(); i >= 0; --i) r = r * g + PolyQ::constant(c_[i]);
    return r;
}

PolyQ PolyQ::shift(const BigRat& a) const {
    // Taylor shift by repeated synthetic division.
    std::vector<BigRat> v = c_;
    int n = degree();
    for (int i = 0; i < n; ++i)
        for (int j = n - 1; j >= i; --j) v[j] += a * v[j + 1];
    return PolyQ(std::move(v));
}

PolyQ PolyQ::scale_var(const BigRat& a) const {
    std::vector<BigRat> v = c_;
    BigRat p = 1;
    for (auto& x : v) {
        x *= p;
        p *= a;
    }
    return PolyQ(std::move(v));
}

PolyQ PolyQ::pow(unsigned e) const {
    PolyQ r = PolyQ::constant(1), b = *this;
    while (e) {
        if (e & 1) r *= b;
        e >>= 1;
        if (e) b = b * b;
    }
    return r;
}

std::string PolyQ::str(const std::string& var) const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = degree(); i >= 0; --i) {
        const BigRat& v = c_[i];
        if (sgn(v) == 0) continue;
        BigRat a = abs(v);
        if (!first) os << (sgn(v) < 0 ? " - " : " + ");
        else if (sgn(v) < 0) os << "-";
        first = false;
        bool unit = (a == 1);
        if (!unit || i == 0) os << a.get_str();
        if (i > 0) {
            if (!unit) os << "*";
            os << var;
            if (i > 1) os << "^" << i;
        }
    }
    return os.str();
}

bool lex_less(const PolyQ& a, const PolyQ& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    for (int i = 0; i <= a.degree(); ++i) {
        int c = cmp(a.coeffs()[i], b.coeffs()[i]);
        if (c != 0) return c < 0;
    }
    return false;
}

std::pair<PolyQ, PolyQ> divrem(const PolyQ& a, const PolyQ& b) {
    if (b.is_zero()) throw MathError("polynomial division by zero");
    if (a.degree() < b.degree()) return {PolyQ(), a};
    std::vector<BigRat> r = a.coeffs();
    int db = b.degree();
    std::vector<BigRat> q(a.degree() - db + 1);
    BigRat inv = 1 / b.lc();
    for (int i = a.degree(); i >= db; --i) {
        if (sgn(r[i]) == 0) continue;
        BigRat t = r[i] * inv;
        q[i - db] = t;
        for (int j = 0; j <= db; ++j) r[i - db + j] -= t * b.coeffs()[j];
    }
    r.resize(db);
    return {PolyQ(std::move(q)), PolyQ(std::move(r))};
}

PolyQ exact_div(const PolyQ& a, const PolyQ& b) {
    auto [q, r] = divrem(a, b);
    if (!r.is_zero()) throw MathError("exact_div: nonzero remainder");
    return q;
}

PolyQ operator%(const PolyQ& a, const PolyQ& b) { return divrem(a, b).second; }

// Euclid on primitive integer parts keeps intermediate sizes in check.
PolyQ poly_gcd(const PolyQ& a, const PolyQ& b) {
    if (a.is_zero() && b.is_zero()) throw MathError("gcd of two zero polynomials");
    PolyQ u = a.is_zero() ? a : PolyQ::from_ints(primitive_int(a));
    PolyQ v = b.is_zero() ? b : PolyQ::from_ints(primitive_int(b));
    while (!v.is_zero()) {
        PolyQ r = u % v;
        u = std::move(v);
        v = r.is_zero() ? r : PolyQ::from_ints(primitive_int(r));
    }
    return u.monic();
}

XGcd poly_xgcd(const PolyQ& a, const PolyQ& b) {
    PolyQ r0 = a, r1 = b, s0 = PolyQ::constant(1), s1, t0, t1 = PolyQ::constant(1);
    while (!r1.is_zero()) {
        auto [q, r] = divrem(r0, r1);
        PolyQ s2 = s0 - q * s1, t2 = t0 - q * t1;
        r0 = std::move(r1);
        r1 = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s2);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    if (r0.is_zero()) return {r0, s0, t0};
    BigRat inv = 1 / r0.lc();
    return {r0 * inv, s0 * inv, t0 * inv};
}

BigRat content(const PolyQ& f) {
    if (f.is_zero()) return BigRat(0);
    BigInt g = 0, l = 1;
    for (const auto& v : f.coeffs()) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_num_mpz_t());
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v.get_den_mpz_t());
    }
    BigRat c(g, l);
    c.canonicalize();
    return c;
}

std::vector<BigInt> primitive_int(const PolyQ& f) {
    BigRat c = content(f);
    std::vector<BigInt> out(f.coeffs().size());
    for (size_t i = 0; i < out.size(); ++i) {
        BigRat q = f.coeffs()[i] / c;
        out[i] = q.get_num();
    }
    return out;
}

PolyQ squarefree_part(const PolyQ& f) {
    if (f.degree() <= 0) return f;
    return exact_div(f, poly_gcd(f, f.derivative())).monic();
}

std::vector<std::pair<PolyQ, int>> squarefree_decomposition(const PolyQ& f) {
    // Yun's algorithm.
    std::vector<std::pair<PolyQ, int>> out;
    if (f.degree() <= 0) return out;
    PolyQ a = f.monic();
    PolyQ d = a.derivative();
    PolyQ g = poly_gcd(a, d);
    PolyQ b = exact_div(a, g);
    PolyQ c = exact_div(d, g);
    PolyQ e = c - b.derivative();
    int i = 1;
    while (b.degree() > 0) {
        PolyQ h = poly_gcd(b, e);
        if (h.degree() > 0) out.emplace_back(h, i);
        b = exact_div(b, h);
        c = exact_div(e, h);
        e = c - b.derivative();
        ++i;
    }
    return out;
}

// Subresultant PRS over Z (Collins / Brown-Traub).
BigInt resultant_int(ZPoly a, ZPoly b) {
    ztrim(a);
    ztrim(b);
    if (a.empty() || b.empty()) return 0;
    int da = static_cast<int>(a.size()) - 1, db = static_cast<int>(b.size()) - 1;
    BigInt sign = 1;
    if (da < db) {
        std::swap(a, b);
        std::swap(da, db);
        if ((da % 2) && (db % 2)) sign = -sign;
    }
    if (db == 0) {
        BigInt r;
        mpz_pow_ui(r.get_mpz_t(), b[0].get_mpz_t(), da);
        return sign * r;
    }
    BigInt g = 1, h = 1;
    while (true) {
        da = static_cast<int>(a.size()) - 1;
        db = static_cast<int>(b.size()) - 1;
        int delta = da - db;
        if ((da % 2) && (db % 2)) sign = -sign;
        // pseudo-remainder: lc(b)^(delta+1) a = q b + r
        ZPoly r = a;
        BigInt lb = b.back();
        int steps = 0;
        for (int i = da; i >= db; --i) {
            BigInt t = r[i];
            for (auto& v : r) v *= lb;
            for (int j = 0; j <= db; ++j) r[i - db + j] -= t * b[j];
            ++steps;
        }
        for (int extra = steps; extra < delta + 1; ++extra)
            for (auto& v : r) v *= lb;
        r.resize(db);
        ztrim(r);
        if (r.empty()) return 0;
        BigInt hd;
        mpz_pow_ui(hd.get_mpz_t(), h.get_mpz_t(), delta);
        BigInt div = g * hd;
        for (auto& v : r) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), div.get_mpz_t());
        a = std::move(b);
        b = std::move(r);
        g = a.back();
        // h = g^delta / h^(delta-1)
        BigInt gd;
        mpz_pow_ui(gd.get_mpz_t(), g.get_mpz_t(), delta);
        if (delta == 0) {
            // h unchanged: g^0 * h^1
        } else {
            BigInt hp;
            mpz_pow_ui(hp.get_mpz_t(), h.get_mpz_t(), delta - 1);
            mpz_divexact(h.get_mpz_t(), gd.get_mpz_t(), hp.get_mpz_t());
        }
        if (b.size() == 1) {
            int dA = static_cast<int>(a.size()) - 1;
            BigInt lbp, hp;
            mpz_pow_ui(lbp.get_mpz_t(), b[0].get_mpz_t(), dA);
            if (dA == 0) return sign * h;
            mpz_pow_ui(hp.get_mpz_t(), h.get_mpz_t(), dA - 1);
            BigInt res;
            mpz_divexact(res.get_mpz_t(), lbp.get_mpz_t(), hp.get_mpz_t());
            return sign * res;
        }
    }
}

BigRat resultant(const PolyQ& a, const PolyQ& b) {
    if (a.is_zero() || b.is_zero()) throw MathError("resultant of zero polynomial");
    BigRat ca = content(a), cb = content(b);
    BigInt r = resultant_int(primitive_int(a), primitive_int(b));
    BigRat out(r);
    BigRat f1 = 1, f2 = 1;
    for (int i = 0; i < b.degree(); ++i) f1 *= ca;
    for (int i = 0; i < a.degree(); ++i) f2 *= cb;
    return out * f1 * f2;
}

BigRat discriminant(const PolyQ& f) {
    int n = f.degree();
    if (n < 1) throw MathError("discriminant of constant");
    BigRat r = resultant(f, f.derivative());
    BigRat s = ((static_cast<long>(n) * (n - 1) / 2) % 2) ? -1 : 1;
    return s * r / f.lc();
}

PolyQ interpolate(const std::vector<BigRat>& xs, const std::vector<BigRat>& ys) {
    // Newton divided differences.
    size_t n = xs.size();
    std::vector<BigRat> dd = ys;
    for (size_t j = 1; j < n; ++j)
        for (size_t i = n - 1; i >= j; --i) {
            dd[i] = (dd[i] - dd[i - 1]) / (xs[i] - xs[i - j]);
            if (i == j) break;
        }
    PolyQ r = PolyQ::constant(dd[n - 1]);
    for (size_t k = n - 1; k-- > 0;) {
        r = r * PolyQ(std::vector<BigRat>{-xs[k], BigRat(1)});
        r += PolyQ::constant(dd[k]);
    }
    return r;
}

bool is_rational_square(const BigRat& q, BigRat* root) {
    if (sgn(q) < 0) return false;
    if (!mpz_perfect_square_p(q.get_num_mpz_t()) || !mpz_perfect_square_p(q.get_den_mpz_t()))
        return false;
    if (root) {
        BigInt n, d;
        mpz_sqrt(n.get_mpz_t(), q.get_num_mpz_t());
        mpz_sqrt(d.get_mpz_t(), q.get_den_mpz_t());
        *root = BigRat(n, d);
    }
    return true;
}

// ---------------------------------------------------------------- ZPoly

void ztrim(ZPoly& a) {
    while (!a.empty() && sgn(a.back()) == 0) a.pop_back();
}

ZPoly zadd(const ZPoly& a, const ZPoly& b) {
    ZPoly r(std::max(a.size(), b.size()));
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i];
    for (size_t i = 0; i < b.size(); ++i) r[i] += b[i];
    ztrim(r);
    return r;
}

ZPoly zsub(const ZPoly& a, const ZPoly& b) {
    ZPoly r(std::max(a.size(), b.size()));
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i];
    for (size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
    ztrim(r);
    return r;
}

ZPoly zmul(const ZPoly& a, const ZPoly& b) {
    if (a.empty() || b.empty()) return {};
    ZPoly r(a.size() + b.size() - 1);
    for (size_t i = 0; i < a.size(); ++i) {
        if (sgn(a[i]) == 0) continue;
        for (size_t j = 0; j < b.size(); ++j)
            mpz_addmul(r[i + j].get_mpz_t(), a[i].get_mpz_t(), b[j].get_mpz_t());
    }
    ztrim(r);
    return r;
}

ZPoly zscale(const ZPoly& a, const BigInt& s) {
    if (sgn(s) == 0) return {};
    ZPoly r = a;
    for (auto& v : r) v *= s;
    return r;
}

BigInt zcontent(const ZPoly& a) {
    BigInt g = 0;
    for (const auto& v : a) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
    return g;
}

// ---------------------------------------------------------------- PolyZn

static inline uint64_t mulmod(uint64_t a, uint64_t b, uint64_t n) {
    return static_cast<uint64_t>((static_cast<unsigned __int128>(a) * b) % n);
}

uint64_t inv_mod(uint64_t a, uint64_t p) {
    int64_t t = 0, nt = 1;
    int64_t r = static_cast<int64_t>(p), nr = static_cast<int64_t>(a % p);
    while (nr != 0) {
        int64_t q = r / nr;
        int64_t tmp = t - q * nt;
        t = nt;
        nt = tmp;
        tmp = r - q * nr;
        r = nr;
        nr = tmp;
    }
    if (r != 1) throw MathError("inv_mod: not invertible");
    if (t < 0) t += static_cast<int64_t>(p);
    return static_cast<uint64_t>(t);
}

PolyZn::PolyZn(uint64_t modulus, std::vector<uint64_t> coeffs) : n_(modulus), c_(std::move(coeffs)) {
    for (auto& v : c_) v %= n_;
    trim();
}

PolyZn PolyZn::from_poly(const PolyQ& f, uint64_t p) {
    std::vector<uint64_t> v(f.coeffs().size());
    for (size_t i = 0; i < v.size(); ++i) {
        const BigRat& q = f.coeffs()[i];
        uint64_t num = mpz_fdiv_ui(q.get_num_mpz_t(), p);
        uint64_t den = mpz_fdiv_ui(q.get_den_mpz_t(), p);
        if (den == 0) throw MathError("PolyZn: denominator divisible by modulus");
        v[i] = mulmod(num, inv_mod(den, p), p);
    }
    return PolyZn(p, std::move(v));
}

PolyZn PolyZn::from_ints(const ZPoly& f, uint64_t p) {
    std::vector<uint64_t> v(f.size());
    for (size_t i = 0; i < f.size(); ++i) v[i] = mpz_fdiv_ui(f[i].get_mpz_t(), p);
    return PolyZn(p, std::move(v));
}

void PolyZn::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

PolyZn PolyZn::operator+(const PolyZn& o) const {
    std::vector<uint64_t> r(std::max(c_.size(), o.c_.size()), 0);
    for (size_t i = 0; i < c_.size(); ++i) r[i] = c_[i];
    for (size_t i = 0; i < o.c_.size(); ++i) r[i] = (r[i] + o.c_[i]) % n_;
    return PolyZn(n_, std::move(r));
}

PolyZn PolyZn::operator-(const PolyZn& o) const {
    std::vector<uint64_t> r(std::max(c_.size(), o.c_.size()), 0);
    for (size_t i = 0; i < c_.size(); ++i) r[i] = c_[i];
    for (size_t i = 0; i < o.c_.size(); ++i) r[i] = (r[i] + n_ - o.c_[i]) % n_;
    return PolyZn(n_, std::move(r));
}

PolyZn PolyZn::operator*(const PolyZn& o) const {
    if (c_.empty() || o.c_.empty()) return PolyZn(n_, {});
    std::vector<unsigned __int128> acc(c_.size() + o.c_.size() - 1, 0);
    // Moduli used here are below 2^32, so products fit comfortably.
    for (size_t i = 0; i < c_.size(); ++i) {
        if (!c_[i]) continue;
        for (size_t j = 0; j < o.c_.size(); ++j) acc[i + j] += static_cast<unsigned __int128>(c_[i]) * o.c_[j];
    }
    std::vector<uint64_t> r(acc.size());
    for (size_t i = 0; i < acc.size(); ++i) r[i] = static_cast<uint64_t>(acc[i] % n_);
    return PolyZn(n_, std::move(r));
}

PolyZn PolyZn::scaled(uint64_t s) const {
    std::vector<uint64_t> r = c_;
    for (auto& v : r) v = mulmod(v, s % n_, n_);
    return PolyZn(n_, std::move(r));
}

PolyZn PolyZn::derivative() const {
    if (c_.size() <= 1) return PolyZn(n_, {});
    std::vector<uint64_t> r(c_.size() - 1);
    for (size_t i = 1; i < c_.size(); ++i) r[i - 1] = mulmod(c_[i], i % n_, n_);
    return PolyZn(n_, std::move(r));
}

PolyZn PolyZn::monic() const {
    if (c_.empty()) return *this;
    return scaled(inv_mod(lc(), n_));
}

std::pair<PolyZn, PolyZn> divrem(const PolyZn& a, const PolyZn& b) {
    uint64_t n = a.modulus();
    if (b.is_zero()) throw MathError("PolyZn division by zero");
    if (a.degree() < b.degree()) return {PolyZn(n, {}), a};
    std::vector<uint64_t> r = a.coeffs();
    const auto& bc = b.coeffs();
    int db = b.degree();
    std::vector<uint64_t> q(a.degree() - db + 1, 0);
    uint64_t inv = inv_mod(b.lc(), n);
    for (int i = a.degree(); i >= db; --i) {
        if (!r[i]) continue;
        uint64_t t = mulmod(r[i], inv, n);
        q[i - db] = t;
        for (int j = 0; j <= db; ++j) r[i - db + j] = (r[i - db + j] + n - mulmod(t, bc[j], n)) % n;
    }
    r.resize(db);
    return {PolyZn(n, std::move(q)), PolyZn(n, std::move(r))};
}

PolyZn poly_gcd(const PolyZn& a, const PolyZn& b) {
    PolyZn u = a, v = b;
    while (!v.is_zero()) {
        PolyZn r = divrem(u, v).second;
        u = std::move(v);
        v = std::move(r);
    }
    return u.monic();
}

PolyZn powmod(const PolyZn& base, const BigInt& e, const PolyZn& m) {
    uint64_t n = m.modulus();
    PolyZn r(n, {1});
    PolyZn b = divrem(base, m).second;
    size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
    for (size_t i = bits; i-- > 0;) {
        r = divrem(r * r, m).second;
        if (mpz_tstbit(e.get_mpz_t(), i)) r = divrem(r * b, m).second;
    }
    return r;
}

bool is_squarefree_mod(const PolyZn& f) {
    if (f.degree() <= 0) return true;
    PolyZn d = f.derivative();
    if (d.is_zero()) return false;
    return poly_gcd(f, d).degree() == 0;
}

std::vector<std::pair<PolyZn, int>> distinct_degree(const PolyZn& f_in) {
    uint64_t p = f_in.modulus();
    std::vector<std::pair<PolyZn, int>> out;
    PolyZn f = f_in.monic();
    PolyZn x(p, {0, 1});
    PolyZn h = x;
    BigInt P(static_cast<unsigned long>(p));
    for (int d = 1; 2 * d <= f.degree(); ++d) {
        h = powmod(h, P, f);
        PolyZn g = poly_gcd(h - x, f);
        if (g.degree() > 0) {
            out.emplace_back(g, d);
            f = divrem(f, g).first;
            h = divrem(h, f).second;
        }
    }
    if (f.degree() > 0) out.emplace_back(f, f.degree());
    return out;
}

// Cantor-Zassenhaus equal-degree splitting (p odd).  The generator is seeded
// deterministically so runs are reproducible.
static void equal_degree_split(const PolyZn& g, int d, uint64_t& state, std::vector<PolyZn>& out) {
    if (g.degree() == d) {
        out.push_back(g.monic());
        return;
    }
    uint64_t p = g.modulus();
    BigInt e;
    mpz_ui_pow_ui(e.get_mpz_t(), p, d);
    e = (e - 1) / 2;
    while (true) {
        std::vector<uint64_t> a(g.degree());
        for (auto& v : a) {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            v = state % p;
        }
        PolyZn A(p, a);
        if (A.degree() < 1) continue;
        PolyZn w = powmod(A, e, g) - PolyZn(p, {1});
        PolyZn f1 = poly_gcd(w, g);
        if (f1.degree() > 0 && f1.degree() < g.degree()) {
            equal_degree_split(f1, d, state, out);
            equal_degree_split(divrem(g, f1).first, d, state, out);
            return;
        }
    }
}

std::vector<PolyZn> factor_mod_p(const PolyZn& f) {
    std::vector<PolyZn> out;
    uint64_t state = 0x9E3779B97F4A7C15ULL ^ f.modulus();
    for (auto& [g, d] : distinct_degree(f)) equal_degree_split(g, d, state, out);
    std::sort(out.begin(), out.end(), [](const PolyZn& a, const PolyZn& b) {
        if (a.degree() != b.degree()) return a.degree() < b.degree();
        return a.coeffs() < b.coeffs();
    });
    return out;
}

PolyQ Factorization::expand() const {
    PolyQ r = PolyQ::constant(unit);
    for (const auto& [f, e] : factors) r *= f.pow(e);
    return r;
}

}  // namespace tors5
