// Matrix groups over Z/nZ: closure, orbits, labels and the (d0, dv, d) table data.

#include "tors5/gl2.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <sstream>
#include <unordered_set>

namespace tors5 {

namespace {

int mod(long x, int n) {
    long r = x % n;
    return static_cast<int>(r < 0 ? r + n : r);
}

}  // namespace

// ---------------------------------------------------------------- matrices

MatZn::MatZn(int n_, long a_, long b_, long c_, long d_) : n(n_) {
    if (n < 1 || n > 255) throw MathError("matrix modulus out of range");
    a = mod(a_, n);
    b = mod(b_, n);
    c = mod(c_, n);
    d = mod(d_, n);
}

int MatZn::det() const { return mod(static_cast<long>(a) * d - static_cast<long>(b) * c, n); }

bool MatZn::invertible() const { return std::gcd(det(), n) == 1; }

MatZn MatZn::operator*(const MatZn& o) const {
    if (n != o.n) throw MathError("matrix modulus mismatch");
    MatZn r;
    r.n = n;
    r.a = (a * o.a + b * o.c) % n;
    r.b = (a * o.b + b * o.d) % n;
    r.c = (c * o.a + d * o.c) % n;
    r.d = (c * o.b + d * o.d) % n;
    return r;
}

MatZn MatZn::inverse() const {
    int D = det();
    if (std::gcd(D, n) != 1) throw MathError("matrix is not invertible");
    int inv = 1;
    for (int x = 1; x < n; ++x)
        if ((static_cast<long>(D) * x) % n == 1 % n) {
            inv = x;
            break;
        }
    return MatZn(n, static_cast<long>(d) * inv, -static_cast<long>(b) * inv, -static_cast<long>(c) * inv,
                 static_cast<long>(a) * inv);
}

MatZn MatZn::pow(long e) const {
    if (e < 0) return inverse().pow(-e);
    MatZn r = identity(n), x = *this;
    while (e) {
        if (e & 1) r = r * x;
        x = x * x;
        e >>= 1;
    }
    return r;
}

MatZn MatZn::reduce(int m) const {
    if (m < 1 || n % m != 0) throw MathError("reduction modulus must divide the modulus");
    return MatZn(m, a, b, c, d);
}

Vec2 MatZn::apply(const Vec2& v) const { return {(a * v[0] + b * v[1]) % n, (c * v[0] + d * v[1]) % n}; }

MatZn MatZn::from_key(int n, uint32_t k) {
    MatZn M;
    M.n = n;
    M.d = static_cast<int>(k % n);
    k /= n;
    M.c = static_cast<int>(k % n);
    k /= n;
    M.b = static_cast<int>(k % n);
    k /= n;
    M.a = static_cast<int>(k);
    return M;
}

std::string MatZn::str() const {
    std::ostringstream os;
    os << "[[" << a << "," << b << "],[" << c << "," << d << "]]";
    return os.str();
}

long element_order(const MatZn& M) {
    MatZn X = M;
    for (long k = 1;; ++k) {
        if (X.is_identity()) return k;
        X = X * M;
    }
}

long vector_order(const Vec2& v, int n) {
    long g = std::gcd(std::gcd(v[0], v[1]), n);
    return n / g;
}

// ---------------------------------------------------------------- groups

void MatGroup::finish() {
    keys_.clear();
    keys_.reserve(elems_.size());
    for (const auto& M : elems_) keys_.push_back(M.key());
    std::sort(keys_.begin(), keys_.end());
}

bool MatGroup::generate_bounded(int n, const std::vector<MatZn>& gens, size_t limit, MatGroup& out) {
    out = MatGroup();
    out.n_ = n;
    for (const auto& g : gens) {
        if (g.n != n) throw MathError("generator modulus mismatch");
        if (!g.invertible()) throw MathError("generator is not invertible: " + g.str());
        if (!g.is_identity()) out.gens_.push_back(g);
    }
    std::unordered_set<uint32_t> seen;
    MatZn I = MatZn::identity(n);
    out.elems_.push_back(I);
    seen.insert(I.key());
    for (size_t i = 0; i < out.elems_.size(); ++i) {
        for (const auto& g : out.gens_) {
            MatZn x = g * out.elems_[i];
            if (seen.insert(x.key()).second) {
                out.elems_.push_back(x);
                if (out.elems_.size() > limit) return false;
            }
        }
    }
    out.finish();
    return true;
}

MatGroup MatGroup::generate(int n, const std::vector<MatZn>& gens, size_t cap) {
    MatGroup G;
    if (!generate_bounded(n, gens, cap, G)) throw MathError("group exceeds the element cap");
    return G;
}

MatGroup subgroup_from_elements(int n, std::vector<MatZn> elems) {
    MatGroup G;
    G.n_ = n;
    G.elems_ = std::move(elems);
    for (const auto& M : G.elems_)
        if (!M.is_identity()) G.gens_.push_back(M);
    G.finish();
    return G;
}

bool MatGroup::contains(const MatZn& M) const {
    return M.n == n_ && std::binary_search(keys_.begin(), keys_.end(), M.key());
}

bool MatGroup::is_subgroup_of(const MatGroup& G) const {
    if (G.n_ != n_) return false;
    return std::includes(G.keys_.begin(), G.keys_.end(), keys_.begin(), keys_.end());
}

MatGroup MatGroup::reduce(int m) const {
    std::vector<MatZn> g;
    for (const auto& x : gens_) g.push_back(x.reduce(m));
    return generate(m, g);
}

MatGroup MatGroup::conjugate(const MatZn& x) const {
    MatZn xi = x.inverse();
    std::vector<MatZn> e;
    e.reserve(elems_.size());
    for (const auto& M : elems_) e.push_back(x * M * xi);
    MatGroup G = subgroup_from_elements(n_, std::move(e));
    G.gens_.clear();
    for (const auto& g : gens_) G.gens_.push_back(x * g * xi);
    return G;
}

std::vector<Vec2> MatGroup::orbit(const Vec2& v) const {
    std::vector<Vec2> orb{v};
    std::set<Vec2> seen{v};
    for (size_t i = 0; i < orb.size(); ++i)
        for (const auto& g : gens_) {
            Vec2 w = g.apply(orb[i]);
            if (seen.insert(w).second) orb.push_back(w);
        }
    return orb;
}

long MatGroup::orbit_size(const Vec2& v) const { return static_cast<long>(orbit(v).size()); }

MatGroup MatGroup::stabilizer(const Vec2& v) const {
    std::vector<MatZn> e;
    for (const auto& M : elems_)
        if (M.apply(v) == v) e.push_back(M);
    return subgroup_from_elements(n_, std::move(e));
}

bool MatGroup::is_abelian() const {
    for (size_t i = 0; i < gens_.size(); ++i)
        for (size_t j = i + 1; j < gens_.size(); ++j)
            if (gens_[i] * gens_[j] != gens_[j] * gens_[i]) return false;
    return true;
}

// ---------------------------------------------------------------- level data

std::string LevelData::str() const {
    std::ostringstream os;
    os << "(" << d0 << ", {";
    bool first = true;
    for (long x : dv) {
        os << (first ? "" : ",") << x;
        first = false;
    }
    os << "}, " << d << ")";
    return os.str();
}

LevelData level_data(const MatGroup& G) {
    int p = G.modulus();
    for (int q = 2; q * q <= p; ++q)
        if (p % q == 0) throw MathError("level_data needs a prime modulus");
    LevelData L;
    L.d = G.order();
    std::set<Vec2> done;
    for (int x = 0; x < p; ++x)
        for (int y = 0; y < p; ++y) {
            Vec2 v{x, y};
            if ((x == 0 && y == 0) || done.count(v)) continue;
            auto orb = G.orbit(v);
            for (auto& w : orb) done.insert(w);
            L.dv.insert(static_cast<long>(orb.size()));
        }
    // lines through the origin, normalized to (1, t) or (0, 1)
    auto normalize = [p](Vec2 v) -> Vec2 {
        if (v[0] != 0) {
            int inv = 1;
            while ((inv * v[0]) % p != 1) ++inv;
            return {1, (v[1] * inv) % p};
        }
        return {0, 1};
    };
    std::set<Vec2> lines_done;
    L.d0 = p + 1;
    for (int t = 0; t <= p; ++t) {
        Vec2 l = t < p ? Vec2{1, t} : Vec2{0, 1};
        if (lines_done.count(l)) continue;
        std::vector<Vec2> orb{l};
        std::set<Vec2> seen{l};
        for (size_t i = 0; i < orb.size(); ++i)
            for (const auto& g : G.generators()) {
                Vec2 w = normalize(g.apply(orb[i]));
                if (seen.insert(w).second) orb.push_back(w);
            }
        for (auto& w : orb) lines_done.insert(w);
        L.d0 = std::min(L.d0, static_cast<long>(orb.size()));
    }
    return L;
}

// ---------------------------------------------------------------- labels

const char* to_string(GroupLabel g) {
    switch (g) {
        case GroupLabel::C5: return "C5";
        case GroupLabel::C20: return "C20";
        case GroupLabel::F5: return "F5";
        default: return "other";
    }
}

namespace {

// Label from the materialized elements of a finite group.
template <class T, class Mul, class IsId>
GroupLabel label_of(const std::vector<T>& elems, const std::vector<T>& gens, Mul mul, IsId is_id) {
    size_t n = elems.size();
    if (n == 5) return GroupLabel::C5;
    if (n != 20) return GroupLabel::other;
    auto order = [&](const T& x) {
        T y = x;
        long k = 1;
        while (!is_id(y)) {
            y = mul(y, x);
            ++k;
        }
        return k;
    };
    for (const auto& x : elems)
        if (order(x) == 20) return GroupLabel::C20;
    long center = 0;
    for (const auto& x : elems) {
        bool central = true;
        for (const auto& g : gens)
            if (!(mul(x, g) == mul(g, x))) {
                central = false;
                break;
            }
        if (central) ++center;
    }
    return center == 1 ? GroupLabel::F5 : GroupLabel::other;
}

}  // namespace

GroupLabel identify_group(const MatGroup& G) {
    return label_of(G.elements(), G.generators(), [](const MatZn& x, const MatZn& y) { return x * y; },
                    [](const MatZn& x) { return x.is_identity(); });
}

GroupLabel identify_permutation_group(const std::vector<std::vector<int>>& gens) {
    using Perm = std::vector<int>;
    if (gens.empty()) return GroupLabel::other;
    size_t k = gens[0].size();
    Perm id(k);
    std::iota(id.begin(), id.end(), 0);
    auto mul = [](const Perm& x, const Perm& y) {
        Perm r(x.size());
        for (size_t i = 0; i < x.size(); ++i) r[i] = x[y[i]];
        return r;
    };
    std::vector<Perm> elems{id};
    std::set<Perm> seen{id};
    for (size_t i = 0; i < elems.size(); ++i)
        for (const auto& g : gens) {
            Perm x = mul(g, elems[i]);
            if (seen.insert(x).second) elems.push_back(x);
        }
    return label_of(elems, gens, mul, [&](const Perm& x) { return x == id; });
}

MatGroup normal_core(const MatGroup& G, const MatGroup& S) {
    if (!S.is_subgroup_of(G)) throw MathError("normal_core: S is not a subgroup of G");
    // Intersect with conjugates by the generators until stable.
    std::vector<uint32_t> core = S.keys();
    int n = G.modulus();
    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& g : G.generators()) {
            MatZn gi = g.inverse();
            std::vector<uint32_t> next;
            for (uint32_t k : core) {
                MatZn c = gi * MatZn::from_key(n, k) * g;  // g^-1 c g in core  <=>  c in g core g^-1
                if (std::binary_search(core.begin(), core.end(), c.key())) next.push_back(k);
            }
            if (next.size() != core.size()) {
                core = std::move(next);
                changed = true;
            }
        }
    }
    std::vector<MatZn> e;
    for (uint32_t k : core) e.push_back(MatZn::from_key(n, k));
    return subgroup_from_elements(n, std::move(e));
}

F5Census f5_lattice_census(const MatGroup& G) {
    if (identify_group(G) != GroupLabel::F5) throw MathError("f5_lattice_census: input is not the Frobenius group F5");
    int n = G.modulus();
    std::set<std::vector<uint32_t>> subs;
    const auto& E = G.elements();
    for (size_t i = 0; i < E.size(); ++i)
        for (size_t j = i; j < E.size(); ++j) subs.insert(MatGroup::generate(n, {E[i], E[j]}).keys());
    F5Census c;
    std::vector<std::vector<uint32_t>> index5;
    for (const auto& s : subs) {
        long idx = G.order() / static_cast<long>(s.size());
        ++c.by_index[idx];
        if (idx == 5) index5.push_back(s);
    }
    // one class: the conjugates of the first index-5 subgroup are all of them
    std::set<std::vector<uint32_t>> conj;
    if (!index5.empty()) {
        std::vector<MatZn> e;
        for (uint32_t k : index5[0]) e.push_back(MatZn::from_key(n, k));
        MatGroup H = subgroup_from_elements(n, e);
        for (const auto& g : E) conj.insert(H.conjugate(g).keys());
    }
    c.index5_single_class = !index5.empty() && conj.size() == index5.size();
    return c;
}

// ---------------------------------------------------------------- config

int Table1Report::mismatches() const {
    int m = 0;
    for (const auto& r : rows)
        if (!r.matches()) ++m;
    return m;
}

MatGroup group_from_entry(const GeneratorEntry& e, bool transpose) {
    std::vector<MatZn> g;
    for (const auto& M : e.generators) g.push_back(transpose ? MatZn(M.n, M.a, M.c, M.b, M.d) : M);
    return MatGroup::generate(e.modulus, g);
}

Table1Report table1(const std::vector<GeneratorEntry>& entries) {
    Table1Report best;
    int best_bad = -1;
    for (bool transpose : {false, true}) {
        Table1Report r;
        r.convention = transpose ? "row" : "column";
        for (const auto& e : entries) {
            Table1Row row;
            row.label = e.label;
            row.computed = level_data(group_from_entry(e, transpose));
            row.has_expected = e.has_expected;
            row.expected = e.expected;
            r.rows.push_back(row);
        }
        int bad = r.mismatches();
        if (best_bad < 0 || bad < best_bad) {
            best = r;
            best_bad = bad;
        }
    }
    return best;
}

}  // namespace tors5
