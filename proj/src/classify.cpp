// Torsion growth over quintic fields.  Only G in {C1, C2, C5} can grow.
// Candidate fields come from degree-5 factors of psi5 (G = C1 or C2), of
// psi11 (G = C1) and of rational 25-isogeny kernels (G = C5); the torsion
// over each candidate decides, and fields are compared up to isomorphism.

#include "tors5/classify.hpp"

#include <algorithm>

namespace tors5 {

namespace {

TorsionGroup C(long n) { return TorsionGroup::cyclic(n); }
TorsionGroup C2x(long n) { return TorsionGroup(2, n); }

PhiSets build_phi_sets() {
    PhiSets s;
    for (long n = 1; n <= 10; ++n) s.phi1.insert(C(n));
    s.phi1.insert(C(12));
    for (long m = 1; m <= 4; ++m) s.phi1.insert(C2x(2 * m));
    s.phiQ5 = s.phi1;
    s.phiQ5.insert(C(11));
    s.phiQ5.insert(C(25));
    s.phiQ5_cm = {C(1), C(2), C(3), C(4), C(6), C(11), C2x(2)};
    for (const auto& G : s.phi1) s.phiQ5_of[G] = {G};
    s.phiQ5_of[C(1)] = {C(1), C(5), C(11)};
    s.phiQ5_of[C(2)] = {C(2), C(10)};
    s.phiQ5_of[C(5)] = {C(5), C(25)};
    return s;
}

const std::array<std::array<long, 5>, 3> kC11Curves{{
    {1, 1, 1, -305, 7888},     // 121a2
    {0, -1, 1, -7, 10},        // 121b1
    {1, 1, 0, -3632, 82757},   // 121c2
}};

struct Candidate {
    std::string route;
    PolyQ factor;
};

void add_quintic_factors(const PolyQ& f, const std::string& route, std::vector<Candidate>& out) {
    for (const auto& [g, e] : factor_over_Q(f).factors)
        if (g.degree() == 5) out.push_back({route, g});
}

// The reported field is the one defined by the normalized polynomial.
Growth make_growth(const FieldPtr& K, const TorsionGroup& H) {
    PolyQ g = normalized_defining_poly(K);
    FieldPtr L = NumberField::make(g, false);
    return Growth{L, g, H, is_galois(L)};
}

}  // namespace

const PhiSets& phi_sets() {
    static const PhiSets s = build_phi_sets();
    return s;
}

const std::set<std::pair<TorsionGroup, TorsionGroup>>& growth_pairs() {
    static const std::set<std::pair<TorsionGroup, TorsionGroup>> p{
        {C(1), C(5)}, {C(1), C(11)}, {C(2), C(10)}, {C(5), C(25)}};
    return p;
}

PolyQ zeta11_plus_poly() { return PolyQ{1, 3, -3, -4, 1, 1}; }

std::optional<Growth> known_cm_special_cases(const CurveQ& E) {
    for (const auto& a : kC11Curves) {
        bool same = true;
        for (int i = 0; i < 5; ++i) same = same && E.a()[i] == a[i];
        if (!same) continue;
        FieldPtr K = NumberField::make(zeta11_plus_poly());
        return make_growth(K, C(11));
    }
    return std::nullopt;
}

GrowthReport quintic_growth(const CurveQ& E, const std::string& label, const GrowthOptions& opt) {
    GrowthReport rep;
    rep.label = label;
    rep.a_invariants = E.a();
    rep.base = torsion_over_Q(E);
    const TorsionGroup& G = rep.base;
    if (G != C(1) && G != C(2) && G != C(5)) return rep;

    std::vector<Candidate> cands;
    if (G == C(1) || G == C(2)) add_quintic_factors(E.division_polynomial(5), "psi5", cands);
    if (G == C(1)) {
        auto known = opt.cm_fast_path ? known_cm_special_cases(E) : std::nullopt;
        if (known) {
            cands.push_back({"cm-table", known->field->defining_poly()});
        } else {
            // psi11 has degree 60; the factor degree patterns modulo a few
            // primes usually rule out a quintic factor outright.
            PolyQ f11 = E.division_polynomial(11);
            auto degs = possible_factor_degrees(f11, 8);
            if (std::find(degs.begin(), degs.end(), 5) != degs.end())
                for (const auto& g : small_degree_factors(f11, 5))
                    if (g.degree() == 5) cands.push_back({"psi11", g});
        }
    }
    if (G == C(5))
        for (const auto& k : rational_isogeny_kernels(E, 25)) add_quintic_factors(k, "isogeny25", cands);

    std::vector<FieldPtr> growth_fields;
    for (const auto& c : cands) {
        FieldPtr K = NumberField::make(c.factor, false);
        bool seen = false;
        for (const auto& L : growth_fields) seen = seen || are_isomorphic(K, L);
        if (seen) continue;
        auto data = torsion_over_field(E, K);
        if (data.group == G) continue;
        growth_fields.push_back(K);
        if (rep.growth) continue;  // a second field would contradict uniqueness; counted below
        rep.growth = make_growth(K, data.group);
        Certificate& cert = rep.certificate;
        cert.route = c.route;
        cert.factor = c.factor;
        cert.witness = data.witness;
        cert.witness_order = point_order(E, data.witness, data.group.n);
        cert.verified = on_curve(E, data.witness) && cert.witness_order == data.group.n;
    }
    rep.growth_fields = static_cast<int>(growth_fields.size());
    return rep;
}

CurveQ CurveRecord::curve() const { return CurveQ(BigRat(a[0]), BigRat(a[1]), BigRat(a[2]), BigRat(a[3]), BigRat(a[4])); }

ScanReport scan_database(const std::vector<CurveRecord>& db, Exec exec, long max_conductor) {
    std::vector<const CurveRecord*> todo;
    for (const auto& r : db)
        if (max_conductor <= 0 || r.conductor <= max_conductor) todo.push_back(&r);
    const long n = static_cast<long>(todo.size());
    std::vector<std::optional<GrowthReport>> out(todo.size());
    std::vector<std::string> err(todo.size());
#pragma omp parallel for schedule(dynamic, 1) if (exec == Exec::parallel)
    for (long i = 0; i < n; ++i) {
        const CurveRecord& r = *todo[static_cast<size_t>(i)];
        try {
            out[static_cast<size_t>(i)] = quintic_growth(r.curve(), r.label);
        } catch (const std::exception& e) {
            err[static_cast<size_t>(i)] = "line " + std::to_string(r.line) + " (" + r.label + "): " + e.what();
        }
    }
    ScanReport s;
    s.curves = n;
    for (size_t i = 0; i < out.size(); ++i) {
        if (!err[i].empty()) {
            s.errors.push_back(err[i]);
            continue;
        }
        GrowthReport& g = *out[i];
        s.max_fields_per_curve = std::max(s.max_fields_per_curve, g.growth_fields);
        if (g.growth) {
            auto key = std::make_pair(g.base, g.growth->torsion);
            ++s.counts[key];
            if (!growth_pairs().count(key)) s.pairs_allowed = false;
            if (g.growth->torsion == C(11) && !known_cm_special_cases(CurveQ(g.a_invariants))) s.c11_only_known = false;
            if (!g.certificate.verified) s.certificates_verified = false;
        }
        s.reports.push_back(std::move(g));
    }
    return s;
}

}  // namespace tors5
