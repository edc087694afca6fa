// Subgroup searches above a mod-p image.
//
// Level p^2: the kernel K of GL2(Z/p^2) -> GL2(Z/p) is {I + pX}, a copy of
// M2(F_p) on which the preimage of H acts by conjugation through H.  A
// subgroup G with image H meets K in an H-invariant subspace N, and G is
// generated by N together with lifts h_i (I + p k_i) of the generators of
// H, the k_i running over coset representatives of K/N.
//
// Level 125 over H = <diag(1,2)>: the Sylow 5-subgroup S of G is normal
// with a complement of order 4, which can be conjugated to diag(1, w) with
// w the 4th root of unity congruent to 2.  If an order-125 vector has an
// orbit of size 5 on which G acts as F5, the order-4 element fixes exactly
// one orbit point; moving that point to e1 leaves orbits of the form
// {e1} + <diag(1, w)>u, and S must carry e1 to u while stabilizing the set.

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "tors5/gl2.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace tors5 {

namespace {

using V4 = std::array<int, 4>;  // X = [[x0, x1], [x2, x3]] over F_p

MatZn kernel_elem(int p, const V4& x) {
    int n = p * p;
    return MatZn(n, 1 + p * x[0], p * x[1], p * x[2], 1 + p * x[3]);
}

V4 kernel_coords(const MatZn& M, int p) {
    // M = I + pX mod p^2
    return {(M.a - 1 + M.n) % M.n / p % p, M.b / p % p, M.c / p % p, (M.d - 1 + M.n) % M.n / p % p};
}

// h X h^-1 over F_p for h given mod p.
V4 conj(const MatZn& h, const V4& x) {
    int p = h.n;
    MatZn X(p, x[0], x[1], x[2], x[3]);
    MatZn Y = h * X * h.inverse();
    return {Y.a, Y.b, Y.c, Y.d};
}

int encode(const V4& x, int p) { return ((x[0] * p + x[1]) * p + x[2]) * p + x[3]; }

// Reduced row echelon basis of the span.
std::vector<V4> rref(std::vector<V4> rows, int p) {
    std::vector<V4> out;
    int r = 0;
    for (int col = 0; col < 4 && r < static_cast<int>(rows.size()); ++col) {
        int piv = -1;
        for (int i = r; i < static_cast<int>(rows.size()); ++i)
            if (rows[i][col] % p) {
                piv = i;
                break;
            }
        if (piv < 0) continue;
        std::swap(rows[r], rows[piv]);
        int inv = 1;
        while ((inv * rows[r][col]) % p != 1) ++inv;
        for (auto& v : rows[r]) v = (v * inv) % p;
        for (int i = 0; i < static_cast<int>(rows.size()); ++i) {
            if (i == r || rows[i][col] == 0) continue;
            int f = rows[i][col];
            for (int j = 0; j < 4; ++j) rows[i][j] = ((rows[i][j] - f * rows[r][j]) % p + p) % p;
        }
        ++r;
    }
    rows.resize(r);
    return rows;
}

struct Subspace {
    std::vector<V4> basis;  // RREF
    std::vector<int> pivots;
    std::vector<char> member;  // indexed by encode()
};

Subspace make_subspace(const std::vector<V4>& span, int p) {
    Subspace S;
    S.basis = rref(span, p);
    for (const auto& b : S.basis)
        for (int j = 0; j < 4; ++j)
            if (b[j]) {
                S.pivots.push_back(j);
                break;
            }
    int total = p * p * p * p;
    S.member.assign(total, 0);
    std::vector<V4> elems{{0, 0, 0, 0}};
    for (const auto& b : S.basis) {
        std::vector<V4> next;
        for (const auto& e : elems)
            for (int c = 0; c < p; ++c) {
                V4 v;
                for (int j = 0; j < 4; ++j) v[j] = (e[j] + c * b[j]) % p;
                next.push_back(v);
            }
        elems = std::move(next);
    }
    for (const auto& e : elems) S.member[encode(e, p)] = 1;
    return S;
}

// Every subspace of F_p^4, by reduced echelon form.
std::vector<Subspace> all_subspaces(int p) {
    std::vector<Subspace> out;
    for (int mask = 0; mask < 16; ++mask) {
        std::vector<int> piv;
        for (int j = 0; j < 4; ++j)
            if (mask >> j & 1) piv.push_back(j);
        // free slots: row i, column j > piv[i], j not a pivot
        std::vector<std::pair<int, int>> slots;
        for (size_t i = 0; i < piv.size(); ++i)
            for (int j = piv[i] + 1; j < 4; ++j)
                if (!(mask >> j & 1)) slots.push_back({static_cast<int>(i), j});
        long count = 1;
        for (size_t s = 0; s < slots.size(); ++s) count *= p;
        for (long t = 0; t < count; ++t) {
            std::vector<V4> rows(piv.size(), V4{0, 0, 0, 0});
            for (size_t i = 0; i < piv.size(); ++i) rows[i][piv[i]] = 1;
            long u = t;
            for (auto& [i, j] : slots) {
                rows[i][j] = static_cast<int>(u % p);
                u /= p;
            }
            out.push_back(make_subspace(rows, p));
        }
    }
    return out;
}

bool invariant(const Subspace& S, const std::vector<MatZn>& hs, int p) {
    for (const auto& h : hs)
        for (const auto& b : S.basis)
            if (!S.member[encode(conj(h, b), p)]) return false;
    return true;
}

bool contained(const Subspace& A, const Subspace& B, int p) {
    for (const auto& b : A.basis)
        if (!B.member[encode(b, p)]) return false;
    return true;
}

struct Candidate {
    std::vector<uint32_t> keys;
    std::vector<MatZn> gens;
};

// Findings of one subgroup: orbits of vectors of full order with the
// requested size.
void collect_findings(const MatGroup& G, const SearchFilter& f, std::vector<SubgroupFinding>& out) {
    int n = G.modulus();
    std::set<Vec2> done;
    GroupLabel glabel = identify_group(G);
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
            Vec2 v{x, y};
            if (vector_order(v, n) != n || done.count(v)) continue;
            auto orb = G.orbit(v);
            for (auto& w : orb) done.insert(w);
            if (static_cast<long>(orb.size()) != f.orbit_size) continue;
            SubgroupFinding F;
            F.generators = G.generators();
            F.group_order = G.order();
            F.witness = v;
            F.orbit_size = static_cast<long>(orb.size());
            F.stabilizer_order = G.stabilizer(v).order();
            std::map<Vec2, int> index;
            for (size_t i = 0; i < orb.size(); ++i) index[orb[i]] = static_cast<int>(i);
            std::vector<std::vector<int>> perms;
            for (const auto& g : G.generators()) {
                std::vector<int> p(orb.size());
                for (size_t i = 0; i < orb.size(); ++i) p[i] = index.at(g.apply(orb[i]));
                perms.push_back(p);
            }
            F.quotient_label = perms.empty() ? GroupLabel::other : identify_permutation_group(perms);
            F.group_label = glabel;
            out.push_back(F);
        }
}

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); }
    void unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
};

}  // namespace

SearchResult preimage_search(const MatGroup& H, int k, const SearchFilter& filter, Exec exec) {
    int p = H.modulus();
    for (int q = 2; q * q <= p; ++q)
        if (p % q == 0) throw MathError("preimage_search needs a prime modulus");
    if (k != 2) throw MathError("unsupported level: only level p^2 is searched directly (use the chain search for 125)");
    int n = p * p;
    SearchResult res;
    std::vector<MatZn> hs = H.generators();
    std::vector<MatZn> lifts;
    for (const auto& h : hs) lifts.push_back(MatZn(n, h.a, h.b, h.c, h.d));

    std::vector<Subspace> inv;
    for (auto& S : all_subspaces(p))
        if (invariant(S, hs, p)) inv.push_back(std::move(S));
    res.stats.invariant_subspaces = static_cast<long>(inv.size());

    std::vector<Candidate> found;
    for (const Subspace& N : inv) {
        std::vector<int> free;
        for (int j = 0; j < 4; ++j)
            if (std::find(N.pivots.begin(), N.pivots.end(), j) == N.pivots.end()) free.push_back(j);
        long reps = 1;
        for (size_t i = 0; i < free.size(); ++i) reps *= p;
        long total = 1;
        for (size_t i = 0; i < lifts.size(); ++i) total *= reps;
        res.stats.lifts_tried += total;
        size_t target = static_cast<size_t>(H.order());
        for (size_t i = 0; i < N.basis.size(); ++i) target *= p;
        std::vector<MatZn> base;
        for (const auto& b : N.basis) base.push_back(kernel_elem(p, b));
        auto rep = [&](long t) {
            V4 x{0, 0, 0, 0};
            for (int j : free) {
                x[j] = static_cast<int>(t % p);
                t /= p;
            }
            return x;
        };
        auto try_tuple = [&](long t, std::vector<Candidate>& out) {
            std::vector<MatZn> gens = base;
            for (const auto& L : lifts) {
                gens.push_back(L * kernel_elem(p, rep(t % reps)));
                t /= reps;
            }
            MatGroup G;
            if (MatGroup::generate_bounded(n, gens, target, G) && G.elements().size() == target)
                out.push_back({G.keys(), gens});
        };
        if (exec == Exec::parallel) {
#pragma omp parallel
            {
                std::vector<Candidate> local;
#pragma omp for schedule(dynamic, 64) nowait
                for (long t = 0; t < total; ++t) try_tuple(t, local);
#pragma omp critical
                found.insert(found.end(), std::make_move_iterator(local.begin()), std::make_move_iterator(local.end()));
            }
        } else {
            for (long t = 0; t < total; ++t) try_tuple(t, found);
        }
    }
    std::sort(found.begin(), found.end(), [](const Candidate& a, const Candidate& b) {
        if (a.keys != b.keys) return a.keys < b.keys;
        return std::lexicographical_compare(a.gens.begin(), a.gens.end(), b.gens.begin(), b.gens.end());
    });
    found.erase(std::unique(found.begin(), found.end(), [](const Candidate& a, const Candidate& b) { return a.keys == b.keys; }),
                found.end());
    res.stats.subgroups = static_cast<long>(found.size());

    // conjugacy under the preimage, generated by the lifts and the kernel
    std::vector<MatZn> pgens = lifts;
    for (int j = 0; j < 4; ++j) {
        V4 e{0, 0, 0, 0};
        e[j] = 1;
        pgens.push_back(kernel_elem(p, e));
    }
    std::map<std::vector<uint32_t>, int> index;
    for (size_t i = 0; i < found.size(); ++i) index[found[i].keys] = static_cast<int>(i);
    UnionFind uf(found.size());
    for (size_t i = 0; i < found.size(); ++i) {
        for (const auto& x : pgens) {
            MatZn xi = x.inverse();
            std::vector<uint32_t> ck;
            ck.reserve(found[i].keys.size());
            for (uint32_t key : found[i].keys) ck.push_back((x * MatZn::from_key(n, key) * xi).key());
            std::sort(ck.begin(), ck.end());
            auto it = index.find(ck);
            if (it == index.end()) throw MathError("conjugate subgroup missing from the enumeration");
            uf.unite(static_cast<int>(i), it->second);
        }
    }
    std::vector<int> reps;
    for (size_t i = 0; i < found.size(); ++i)
        if (uf.find(static_cast<int>(i)) == static_cast<int>(i)) reps.push_back(static_cast<int>(i));
    res.stats.conjugacy_classes = static_cast<long>(reps.size());

    std::vector<std::vector<SubgroupFinding>> per(reps.size());
    auto examine = [&](size_t r) {
        const Candidate& c = found[reps[r]];
        if (filter.max_order > 0 && static_cast<long>(c.keys.size()) > filter.max_order) return;
        MatGroup G = MatGroup::generate(n, c.gens);
        collect_findings(G, filter, per[r]);
    };
    if (exec == Exec::parallel) {
#pragma omp parallel for schedule(dynamic, 1)
        for (long r = 0; r < static_cast<long>(reps.size()); ++r) examine(static_cast<size_t>(r));
    } else {
        for (size_t r = 0; r < reps.size(); ++r) examine(r);
    }
    for (auto& v : per)
        for (auto& f : v) res.findings.push_back(std::move(f));
    return res;
}

ChainResult mod125_chain_search(Exec exec) {
    const int p = 5, n = 125;
    ChainResult res;
    MatGroup H = MatGroup::generate(p, {MatZn(p, 1, 0, 0, 2)});
    for (const auto& f : preimage_search(H, 2, SearchFilter{5, 0}, exec).findings)
        if (f.quotient_label == GroupLabel::F5) ++res.level25_f5_findings;

    // Teichmueller lift of 2: w = 2^25 mod 125 has order 4.
    int w = 1;
    for (int i = 0; i < 25; ++i) w = w * 2 % n;
    if (MatZn(n, w, 0, 0, 1).pow(4) != MatZn::identity(n) || w % p != 2) throw MathError("bad root of unity");
    MatZn g(n, 1, 0, 0, w), g25 = g.reduce(25), gp = g.reduce(p);

    std::vector<Subspace> ginv;
    for (auto& S : all_subspaces(p))
        if (invariant(S, {gp}, p)) ginv.push_back(std::move(S));

    auto g_span = [&](const V4& x) {
        std::vector<V4> rows{x};
        V4 y = x;
        for (int i = 0; i < 3; ++i) {
            y = conj(gp, y);
            rows.push_back(y);
        }
        return rows;
    };

    // One row per alpha; each yields the candidate mod-25 images.
    std::vector<std::set<std::vector<V4>>> images(25);
    std::vector<long> examined(25, 0), realizable(25, 0);
    auto scan_alpha = [&](int alpha) {
        for (int beta = 1; beta < 25; ++beta) {
            Vec2 e1{1, 0}, u{(1 + 5 * alpha) % n, 5 * beta};
            std::set<Vec2> O{e1};
            Vec2 x = u;
            for (int i = 0; i < 4; ++i) {
                O.insert(x);
                x = g.apply(x);
            }
            if (O.size() != 5) continue;
            ++examined[alpha];
            auto keeps = [&](const MatZn& M) {
                for (const auto& v : O)
                    if (!O.count(M.apply(v))) return false;
                return true;
            };
            std::vector<V4> stab, movers;
            for (int b = 0; b < 25; ++b)
                for (int d = 0; d < 25; ++d) {
                    MatZn t(n, 1, 5 * b, 0, 1 + 5 * d);
                    if (keeps(t)) stab.push_back(kernel_coords(t.reduce(25), p));
                    MatZn s(n, 1 + 5 * alpha, 5 * b, 5 * beta, 1 + 5 * d);
                    if (keeps(s)) movers.push_back(kernel_coords(s.reduce(25), p));
                }
            if (movers.empty()) continue;
            ++realizable[alpha];
            Subspace W = make_subspace(stab, p);
            std::sort(movers.begin(), movers.end());
            movers.erase(std::unique(movers.begin(), movers.end()), movers.end());
            for (const auto& A : ginv) {
                if (!contained(A, W, p)) continue;
                for (const auto& m : movers) {
                    std::vector<V4> rows = A.basis;
                    for (const auto& r : g_span(m)) rows.push_back(r);
                    images[alpha].insert(rref(rows, p));
                }
            }
        }
    };
    if (exec == Exec::parallel) {
#pragma omp parallel for schedule(dynamic, 1)
        for (int alpha = 0; alpha < 25; ++alpha) scan_alpha(alpha);
    } else {
        for (int alpha = 0; alpha < 25; ++alpha) scan_alpha(alpha);
    }
    std::set<std::vector<V4>> all;
    for (int a = 0; a < 25; ++a) {
        res.orbits_examined += examined[a];
        res.realizable_orbits += realizable[a];
        all.insert(images[a].begin(), images[a].end());
    }
    res.candidate_images = static_cast<long>(all.size());
    for (const auto& basis : all) {
        std::vector<MatZn> gens{g25};
        for (const auto& b : basis) gens.push_back(kernel_elem(p, b));
        MatGroup G = MatGroup::generate(25, gens);
        collect_findings(G, SearchFilter{5, 0}, res.violations);
    }
    return res;
}

}  // namespace tors5
