// Acceptance run: one PASS/FAIL line per criterion.  `acceptance N` runs
// criterion N and exits nonzero when it fails; with no argument all run.

#include <chrono>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "tors5/classify.hpp"
#include "tors5/data_io.hpp"
#include "tors5/families.hpp"
#include "tors5/gl2.hpp"

using namespace tors5;

namespace {

const std::string kData = TORS5_DATA_DIR;

struct Outcome {
    bool pass = true;
    std::string detail;
    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            detail += (detail.empty() ? "" : "; ") + what;
        }
    }
};

TorsionGroup C(long n) { return TorsionGroup::cyclic(n); }

const std::vector<CurveRecord>& db() {
    static const std::vector<CurveRecord> d = ingest_curves(kData + "/curves.csv");
    return d;
}

CurveQ curve(const std::string& label) {
    const CurveRecord* r = find_label(db(), label);
    if (!r) throw InputError("missing label " + label);
    return r->curve();
}

MatGroup base_group(const std::string& label) {
    GeneratorConfig cfg = load_generator_config(kData + "/gens.json");
    return group_from_entry(find_entry(cfg, label), cfg.convention == "row");
}

std::string labels_of(const SearchResult& r) {
    std::map<std::string, int> m;
    for (const auto& f : r.findings) ++m[to_string(f.quotient_label)];
    std::string s;
    for (const auto& [k, v] : m) s += (s.empty() ? "" : ",") + k + "x" + std::to_string(v);
    return s.empty() ? "none" : s;
}

// ---------------------------------------------------------------- 1

Outcome table1_rows() {
    Outcome o;
    GeneratorConfig cfg = load_generator_config(kData + "/gens.json");
    for (const auto& r : cfg.report.rows)
        if (!r.matches())
            o.require(false, r.label + " computed " + r.computed.str() + " recorded " + r.expected.str());
    o.require(cfg.report.rows.size() == 36, "expected 36 rows");
    if (o.pass) o.detail = std::to_string(cfg.report.rows.size()) + " rows match, convention " + cfg.report.convention;
    return o;
}

// ---------------------------------------------------------------- 2

Outcome level25_searches() {
    Outcome o;
    SearchResult r12 = preimage_search(base_group("5B.1.2"), 2, SearchFilter{});
    o.require(r12.findings.empty(), "5B.1.2 has findings");

    SearchResult r11 = preimage_search(base_group("5B.1.1"), 2, SearchFilter{});
    o.require(!r11.findings.empty(), "5B.1.1 has no findings");
    for (const auto& f : r11.findings) o.require(f.quotient_label == GroupLabel::C5, "5B.1.1 finding not C5");

    SearchFilter small;
    small.max_order = 25;
    SearchResult rcs = preimage_search(base_group("5Cs.1.1"), 2, small);
    bool f5 = false;
    for (const auto& f : rcs.findings) {
        // the quintic field is Galois (C5) or its closure is F5
        o.require(f.quotient_label == GroupLabel::C5 || f.quotient_label == GroupLabel::F5,
                  std::string("5Cs.1.1 finding labeled ") + to_string(f.quotient_label));
        f5 = f5 || f.quotient_label == GroupLabel::F5;
    }
    o.require(f5, "5Cs.1.1 has no F5 finding");
    o.detail += (o.detail.empty() ? "" : "; ") + std::string("5B.1.2: ") + labels_of(r12) + ", 5B.1.1: " +
                labels_of(r11) + ", 5Cs.1.1 (order <= 25): " + labels_of(rcs);
    return o;
}

// ---------------------------------------------------------------- 3

Outcome level125_chain() {
    Outcome o;
    ChainResult r = mod125_chain_search();
    o.require(r.violations.empty(), std::to_string(r.violations.size()) + " violations");
    o.require(r.level25_f5_findings > 0, "no F5 findings at level 25 to extend");
    o.detail += (o.detail.empty() ? "" : "; ") + std::to_string(r.orbits_examined) + " orbits examined, " +
                std::to_string(r.violations.size()) + " violations";
    return o;
}

// ---------------------------------------------------------------- 4

Outcome growth_rows() {
    Outcome o;
    struct Row {
        const char* label;
        TorsionGroup G, H;
        PolyQ field;
    };
    const PolyQ z11 = zeta11_plus_poly();
    std::vector<Row> rows{{"11a2", C(1), C(5), PolyQ{-11, 0, 0, 0, 0, 1}},
                          {"66c3", C(2), C(10), PolyQ{-12, 0, 0, 0, 0, 1}},
                          {"11a3", C(5), C(25), z11},
                          {"121a2", C(1), C(11), z11},
                          {"121c2", C(1), C(11), z11},
                          {"121b1", C(1), C(11), z11}};
    for (const auto& row : rows) {
        GrowthReport r = quintic_growth(curve(row.label), row.label);
        std::string l = row.label;
        o.require(r.base == row.G, l + " base " + r.base.str());
        if (!r.growth) {
            o.require(false, l + " has no growth");
            continue;
        }
        o.require(r.growth->torsion == row.H, l + " grows to " + r.growth->torsion.str());
        o.require(are_isomorphic(r.growth->field, NumberField::make(row.field)), l + " field differs");
        o.require(r.certificate.verified && r.certificate.witness_order == row.H.n, l + " certificate fails");
        o.require(r.growth_fields == 1, l + " has several growth fields");
    }
    if (o.pass) o.detail = "six curves, fields and witnesses verified";
    return o;
}

// ---------------------------------------------------------------- 5

Outcome family_identities() {
    Outcome o;
    for (const auto& c : {check_p5(20), check_p25({1, 2, 3}), check_order5_point(20), check_jmaps(20),
                          check_triangle({2, 3, -2, 5, 7})})
        o.require(c.passed, c.name + ": " + c.detail);
    o.require(family_data_checksum() == family_data_recorded_checksum(), "family data checksum");
    if (o.pass) o.detail = "p5 x20, p25 at 1,2,3, order-5 point x20, jmaps x20, triangle x5";
    return o;
}

// ---------------------------------------------------------------- 6

Outcome auxiliaries() {
    Outcome o;
    FamilyCheck c = check_aux_points(10000, 100);
    o.require(c.passed, c.detail);
    o.require(torsion_over_Q(curve("15a3")).order() == 8, "15a3 torsion order");
    for (const char* l : {"50a1", "450b2"})
        o.require(torsion_over_Q(curve(l).quadratic_twist(BigInt(-3))) == C(1), std::string(l) + " twist torsion");
    if (o.pass) o.detail = "C' empty to height 10^4, five genus-1 points to height 100, 15a3 order 8, twists trivial";
    return o;
}

// ---------------------------------------------------------------- 7

Outcome uniqueness_scan() {
    Outcome o;
    ScanReport s = scan_database(db(), Exec::parallel, 1000);
    o.require(s.errors.empty(), std::to_string(s.errors.size()) + " curve errors");
    o.require(s.max_fields_per_curve <= 1, "a curve has several growth fields");
    o.require(s.pairs_allowed, "a growth pair outside the four allowed");
    o.require(s.c11_only_known, "11-torsion growth on an unstored curve");
    o.require(s.certificates_verified, "a certificate fails");

    std::map<std::string, TorsionGroup> grown;
    std::set<std::string> c11, c25;
    for (const auto& r : s.reports) {
        if (!r.growth) continue;
        const CurveRecord* rec = find_label(db(), r.label);
        if (!rec || rec->conductor > 550) continue;
        grown[r.label] = r.growth->torsion;
        if (r.growth->torsion == C(11)) c11.insert(r.label);
        if (r.growth->torsion == C(25)) c25.insert(r.label);
    }
    auto has = [&](const std::string& l, const TorsionGroup& H) {
        auto it = grown.find(l);
        o.require(it != grown.end() && it->second == H, l + " should grow to " + H.str());
    };
    has("11a2", C(5));
    has("66c3", C(10));
    has("11a3", C(25));
    has("550k3", C(25));
    has("121a2", C(11));
    has("121b1", C(11));
    has("121c2", C(11));
    o.require(c11 == std::set<std::string>{"121a2", "121b1", "121c2"}, "11-torsion growth set differs");
    o.require(c25 == std::set<std::string>{"11a3", "550k3"}, "25-torsion growth set differs");

    std::ostringstream d;
    d << s.curves << " curves;";
    for (const auto& [k, v] : s.counts) d << " " << k.first.str() << "->" << k.second.str() << ":" << v;
    d << "; h = " << s.max_fields_per_curve;
    o.detail += (o.detail.empty() ? "" : "; ") + d.str();
    return o;
}

// ---------------------------------------------------------------- 8

struct ShortCurveK {
    NFElem a;
    PointK add(const PointK& P, const PointK& Q) const {
        if (P.inf) return Q;
        if (Q.inf) return P;
        NFElem l;
        if (P.x == Q.x) {
            if ((P.y + Q.y).is_zero()) return PointK();
            l = (NFElem(a.field(), BigRat(3)) * P.x * P.x + a) / (NFElem(a.field(), BigRat(2)) * P.y);
        } else {
            l = (Q.y - P.y) / (Q.x - P.x);
        }
        NFElem x3 = l * l - P.x - Q.x;
        return PointK(x3, l * (P.x - x3) - P.y);
    }
    PointK mul(PointK P, long k) const {
        PointK r;
        for (; k; k >>= 1) {
            if (k & 1) r = add(r, P);
            P = add(P, P);
        }
        return r;
    }
};

PolyQ random_poly(std::mt19937_64& rng, int max_deg, int bound) {
    std::uniform_int_distribution<int> dd(1, max_deg), cd(-bound, bound);
    int d = dd(rng);
    std::vector<BigRat> c(d + 1);
    for (auto& v : c) v = cd(rng);
    if (c[d] == 0) c[d] = 1;
    return PolyQ(c);
}

Outcome property_suites() {
    Outcome o;
    std::mt19937_64 rng(2024);

    // roots of psi_n are n-torsion abscissae: above a root x the point lives
    // on the twist by delta = x^3 + Ax + B as (delta x, delta^2)
    int sampled = 0;
    for (int iter = 0; sampled < 50 && iter < 400; ++iter) {
        long A = static_cast<long>(rng() % 21) - 10, B = static_cast<long>(rng() % 21) - 10;
        if (4 * A * A * A + 27 * B * B == 0) continue;
        CurveQ E(0, 0, 0, A, B);
        int n = std::vector<int>{3, 5, 7}[rng() % 3];
        for (auto& [g, e] : factor_over_Q(E.division_polynomial(n)).factors) {
            if (g.degree() > 12 || sampled >= 50) continue;
            auto L = NumberField::make(g, false);
            NFElem x = NFElem::generator(L);
            NFElem delta = x * x * x + NFElem(L, BigRat(A)) * x + NFElem(L, BigRat(B));
            ShortCurveK T{NFElem(L, BigRat(A)) * delta * delta};
            o.require(T.mul(PointK(delta * x, delta * delta), n).inf, "psi root is not torsion");
            ++sampled;
        }
    }
    o.require(sampled == 50, "sampled " + std::to_string(sampled) + " roots");

    // orbit-stabilizer on every search
    long findings = 0;
    SearchFilter small;
    small.max_order = 25;
    for (const auto& [label, filter] : std::vector<std::pair<std::string, SearchFilter>>{
             {"5B.1.1", SearchFilter{}}, {"5B.1.2", SearchFilter{}}, {"5Cs.1.1", small}})
        for (const auto& f : preimage_search(base_group(label), 2, filter).findings) {
            ++findings;
            o.require(f.orbit_size * f.stabilizer_order == f.group_order, "orbit-stabilizer fails in " + label);
        }
    for (const auto& f : mod125_chain_search().violations)
        o.require(f.orbit_size * f.stabilizer_order == f.group_order, "orbit-stabilizer fails at level 125");

    // factorization round trip
    for (int it = 0; it < 200; ++it) {
        int k = 1 + static_cast<int>(rng() % 4);
        PolyQ prod = PolyQ::constant(BigRat(1 + static_cast<long>(rng() % 5)));
        for (int j = 0; j < k; ++j) prod *= random_poly(rng, 6, 9);
        o.require(factor_over_Q(prod).expand() == prod, "factorization does not multiply back");
    }

    // every returned root is a root
    long roots = 0;
    for (const PolyQ& f : {zeta11_plus_poly(), PolyQ{-11, 0, 0, 0, 0, 1}}) {
        auto K = NumberField::make(f);
        for (int it = 0; it < 10; ++it) {
            PolyQ g = f.shift(static_cast<long>(rng() % 3)) * PolyQ{static_cast<long>(rng() % 9) - 4, 1};
            for (const auto& r : nf_roots(g, K)) {
                ++roots;
                o.require(PolyK(K, g).eval(r).is_zero(), "returned root is not a root");
            }
        }
    }
    o.detail += (o.detail.empty() ? "" : "; ") + std::to_string(sampled) + " psi roots, " +
                std::to_string(findings) + " findings, 200 products, " + std::to_string(roots) + " field roots";
    return o;
}

}  // namespace

// seconds allowed per criterion
const double kBudget[8] = {30, 3 * 600, 3600, 300, 1200, 1200, 3600, 1200};

int main(int argc, char** argv) {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"mod-p image table", table1_rows},
        {"level-25 subgroup searches", level25_searches},
        {"level-125 chain", level125_chain},
        {"growth rows end to end", growth_rows},
        {"family identities", family_identities},
        {"auxiliary curves", auxiliaries},
        {"uniqueness over the sample database", uniqueness_scan},
        {"arithmetic property suites", property_suites},
    };
    std::vector<int> which;
    if (argc > 1) which.push_back(std::atoi(argv[1]));
    else
        for (int i = 1; i <= 8; ++i) which.push_back(i);
    bool all = true;
    for (int i : which) {
        if (i < 1 || i > 8) {
            std::cerr << "criterion must be 1..8\n";
            return 2;
        }
        auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[i - 1].second();
        } catch (const std::exception& e) {
            o.require(false, std::string("exception: ") + e.what());
        }
        double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        o.require(s <= kBudget[i - 1], "over the time budget");
        std::cout << "criterion " << i << " " << (o.pass ? "PASS" : "FAIL") << " " << criteria[i - 1].first << " ("
                  << std::fixed << std::setprecision(1) << s << " s): " << o.detail << std::endl;
        all = all && o.pass;
    }
    return all ? 0 : 1;
}
