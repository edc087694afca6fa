#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "tors5/elliptic.hpp"
#include "tors5/gl2.hpp"
#include "tors5/number_field.hpp"

namespace tors5 {

struct PhiSets {
    std::set<TorsionGroup> phi1;      // torsion over Q
    std::set<TorsionGroup> phiQ5;     // torsion over quintic fields of curves over Q
    std::set<TorsionGroup> phiQ5_cm;  // the same for CM curves
    std::map<TorsionGroup, std::set<TorsionGroup>> phiQ5_of;  // reachable from each G in phi1
};
const PhiSets& phi_sets();

// The pairs (G, H) with G = E(Q)_tors != H = E(K)_tors for a quintic K.
const std::set<std::pair<TorsionGroup, TorsionGroup>>& growth_pairs();

struct Growth {
    FieldPtr field;
    PolyQ field_poly;  // normalized defining polynomial
    TorsionGroup torsion;
    bool galois = false;
};

struct Certificate {
    std::string route;  // "psi5", "psi11", "isogeny25", "cm-table" or empty
    PolyQ factor;       // the factor whose root generates the field
    PointK witness;     // a point of order torsion.n over the field
    long witness_order = 0;
    bool verified = false;  // the witness lies on E and has the claimed order
};

struct GrowthReport {
    std::string label;
    std::array<BigRat, 5> a_invariants;
    TorsionGroup base;
    std::optional<Growth> growth;
    Certificate certificate;
    int growth_fields = 0;  // pairwise non-isomorphic quintic fields with growth
};

struct GrowthOptions {
    bool cm_fast_path = false;  // answer the three stored curves from the table
};

GrowthReport quintic_growth(const CurveQ& E, const std::string& label = "", const GrowthOptions& opt = {});

// The three curves with 11-torsion over a quintic field, matched by exact
// a-invariants; the growth is over the maximal real subfield of Q(zeta11).
std::optional<Growth> known_cm_special_cases(const CurveQ& E);
PolyQ zeta11_plus_poly();

struct CurveRecord {
    std::string label;
    long conductor = 0;
    std::array<BigInt, 5> a;
    std::optional<long> torsion_order;   // optional column of the data file
    long line = 0;                        // source line
    CurveQ curve() const;
};

struct ScanReport {
    std::vector<GrowthReport> reports;
    std::map<std::pair<TorsionGroup, TorsionGroup>, long> counts;  // growth pairs
    std::vector<std::string> errors;  // per-curve failures, with source lines
    int max_fields_per_curve = 0;     // h = 1 means at most one
    bool pairs_allowed = true;
    bool c11_only_known = true;       // 11-torsion growth only for the stored curves
    bool certificates_verified = true;
    long curves = 0;
};

ScanReport scan_database(const std::vector<CurveRecord>& db, Exec exec = Exec::parallel, long max_conductor = 0);

}  // namespace tors5
