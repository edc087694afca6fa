#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "tors5/exact_arith.hpp"

namespace tors5 {

using Vec2 = std::array<int, 2>;

// 2x2 matrix over Z/nZ; acts on column vectors by v -> M v.
struct MatZn {
    int n = 1;
    int a = 0, b = 0, c = 0, d = 0;

    MatZn() = default;
    MatZn(int n_, long a_, long b_, long c_, long d_);
    static MatZn identity(int n) { return MatZn(n, 1, 0, 0, 1); }

    int det() const;
    bool invertible() const;
    bool is_identity() const { return a == 1 % n && b == 0 && c == 0 && d == 1 % n; }
    MatZn operator*(const MatZn& o) const;
    MatZn inverse() const;
    MatZn pow(long e) const;
    MatZn reduce(int m) const;  // m | n
    Vec2 apply(const Vec2& v) const;
    uint32_t key() const { return static_cast<uint32_t>(((a * n + b) * n + c) * n + d); }
    static MatZn from_key(int n, uint32_t k);
    bool operator==(const MatZn& o) const { return n == o.n && a == o.a && b == o.b && c == o.c && d == o.d; }
    bool operator!=(const MatZn& o) const { return !(*this == o); }
    bool operator<(const MatZn& o) const { return key() < o.key(); }
    std::string str() const;
};

// A subgroup of GL2(Z/nZ) with every element materialized (BFS order from
// the identity) and a sorted key list for membership tests.
class MatGroup {
public:
    static constexpr size_t kMaxElements = 2'000'000;

    MatGroup() = default;
    static MatGroup generate(int n, const std::vector<MatZn>& gens, size_t cap = kMaxElements);
    // Same as generate, but gives up (returns false) once the closure
    // exceeds `limit` elements.
    static bool generate_bounded(int n, const std::vector<MatZn>& gens, size_t limit, MatGroup& out);

    int modulus() const { return n_; }
    const std::vector<MatZn>& generators() const { return gens_; }
    const std::vector<MatZn>& elements() const { return elems_; }
    const std::vector<uint32_t>& keys() const { return keys_; }  // sorted
    long order() const { return static_cast<long>(elems_.size()); }
    bool contains(const MatZn& M) const;
    bool is_subgroup_of(const MatGroup& G) const;
    bool operator==(const MatGroup& o) const { return n_ == o.n_ && keys_ == o.keys_; }

    MatGroup reduce(int m) const;  // image in GL2(Z/mZ), m | n
    MatGroup conjugate(const MatZn& x) const;  // x G x^-1
    long orbit_size(const Vec2& v) const;
    std::vector<Vec2> orbit(const Vec2& v) const;
    MatGroup stabilizer(const Vec2& v) const;
    bool is_abelian() const;

private:
    int n_ = 1;
    std::vector<MatZn> gens_, elems_;
    std::vector<uint32_t> keys_;
    void finish();
    friend MatGroup subgroup_from_elements(int n, std::vector<MatZn> elems);
};

// Builds a MatGroup from a list of elements already closed under products.
MatGroup subgroup_from_elements(int n, std::vector<MatZn> elems);

// Smallest positive k with M^k = I.
long element_order(const MatZn& M);
// Additive order of v in (Z/nZ)^2.
long vector_order(const Vec2& v, int n);

// ---------------------------------------------------------------- level data

struct LevelData {
    long d0 = 0;           // minimum orbit size on the p+1 lines
    std::set<long> dv;     // orbit sizes of nonzero vectors
    long d = 0;            // group order
    bool operator==(const LevelData& o) const { return d0 == o.d0 && dv == o.dv && d == o.d; }
    std::string str() const;
};

// Requires a prime modulus.
LevelData level_data(const MatGroup& G);

// ---------------------------------------------------------------- labels

enum class GroupLabel { C5, C20, F5, other };
const char* to_string(GroupLabel g);

// C5 for order 5; at order 20: C20 when cyclic, F5 when the center is
// trivial (the other groups of order 20 have a center of order 2 or are
// abelian); anything else is "other".
GroupLabel identify_group(const MatGroup& G);
// The same for the permutation group generated by `gens` on {0..k-1}.
GroupLabel identify_permutation_group(const std::vector<std::vector<int>>& gens);

// Largest normal subgroup of G contained in S (S must lie in G).
MatGroup normal_core(const MatGroup& G, const MatGroup& S);

struct F5Census {
    std::map<long, int> by_index;  // index -> number of subgroups
    bool index5_single_class = false;
};
// Subgroup census of a group isomorphic to F5; throws otherwise.
F5Census f5_lattice_census(const MatGroup& G);

// ---------------------------------------------------------------- searches

enum class Exec { serial, parallel };

struct SubgroupFinding {
    std::vector<MatZn> generators;
    long group_order = 0;
    Vec2 witness{0, 0};
    long orbit_size = 0;
    long stabilizer_order = 0;
    GroupLabel quotient_label = GroupLabel::other;  // G / core(G_v), acting on the orbit
    GroupLabel group_label = GroupLabel::other;     // G itself
};

struct SearchFilter {
    long orbit_size = 5;
    long max_order = 0;  // 0: no bound on |G|
};

struct SearchStats {
    long invariant_subspaces = 0;
    long lifts_tried = 0;
    long subgroups = 0;          // distinct subgroups with the right image mod p
    long conjugacy_classes = 0;  // classes under the full preimage
};

struct SearchResult {
    std::vector<SubgroupFinding> findings;
    SearchStats stats;
};

// Subgroups G of GL2(Z/p^k Z) reducing onto H mod p, up to conjugacy in
// the full preimage of H, and their orbits of order-p^k vectors whose size
// passes the filter.  Level p^2 only; level p^3 goes through
// mod125_chain_search.
SearchResult preimage_search(const MatGroup& H, int k, const SearchFilter& filter, Exec exec = Exec::parallel);

struct ChainResult {
    std::vector<SubgroupFinding> violations;
    long level25_f5_findings = 0;  // base findings at level 25 with quotient F5
    long orbits_examined = 0;      // candidate five-point orbits of order-125 vectors
    long realizable_orbits = 0;    // orbits carried transitively by a 5-subgroup
    long candidate_images = 0;     // distinct mod-25 images checked
};

// Level-125 check over the base 5Cs.1.1: no G <= GL2(Z/125Z) with G = H
// mod 5 has an order-125 vector with orbit size 5 and quotient F5 while its
// mod-25 image has an order-25 vector with orbit size 5.
ChainResult mod125_chain_search(Exec exec = Exec::parallel);

// ---------------------------------------------------------------- config

struct GeneratorEntry {
    std::string label;
    int modulus = 0;
    std::vector<MatZn> generators;
    std::string alt_name;  // the group under a second naming scheme
    bool has_expected = false;
    LevelData expected;
};

struct Table1Row {
    std::string label;
    LevelData computed;
    bool has_expected = false;
    LevelData expected;
    bool matches() const { return !has_expected || computed == expected; }
};

struct Table1Report {
    std::string convention;  // "column" or "row"
    std::vector<Table1Row> rows;
    int mismatches() const;
};

// Computes every row under the column-vector convention and under the
// transposed one, keeping whichever agrees with more expected rows.
Table1Report table1(const std::vector<GeneratorEntry>& entries);

// The groups named in the searches, looked up by label.
MatGroup group_from_entry(const GeneratorEntry& e, bool transpose = false);

}  // namespace tors5
