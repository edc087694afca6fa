// The parametrized families and maps, read from the embedded family data
// file.  Every polynomial there is stored factored as
// {"const": c, "factors": [{"poly": [lowest-first ints], "exp": e}]}.

#include "tors5/families.hpp"

#include <json.hpp>

#include <algorithm>
#include <cstdio>
#include <optional>
#include <map>
#include <string_view>

#include "tors5/number_field.hpp"

namespace tors5 {

namespace detail {
extern const std::string_view kFamilyJson;
}

namespace {

using json = nlohmann::json;

PolyQ expand(const json& f) {
    PolyQ out = PolyQ::constant(BigRat(f.at("const").get<long>()));
    for (const auto& fac : f.at("factors")) {
        std::vector<BigInt> c;
        for (const auto& v : fac.at("poly")) c.push_back(BigInt(v.get<long>()));
        out *= PolyQ::from_ints(c).pow(fac.at("exp").get<unsigned>());
    }
    return out;
}

RationalMap expand_map(const json& m) { return RationalMap(expand(m.at("num")), expand(m.at("den"))); }

struct FamilyTables {
    json root;
    std::map<std::string, std::array<PolyQ, 5>> curves;  // E5, E6, Er
    std::map<std::string, std::vector<std::vector<BigInt>>> polys;  // x^i coefficient in t
    std::map<std::string, RationalMap> jmaps;
    RationalMap param_s, param_t, isogeny;

    FamilyTables() {
        root = json::parse(detail::kFamilyJson);
        const json& d = root.at("data");
        for (const auto& [name, f] : d.at("families").items()) {
            std::array<PolyQ, 5> a;
            const char* keys[5] = {"a1", "a2", "a3", "a4", "a6"};
            for (int i = 0; i < 5; ++i) a[i] = expand(f.at(keys[i]));
            curves[name] = a;
        }
        for (const auto& [name, p] : d.at("polynomials").items()) {
            std::vector<std::vector<BigInt>> cs;
            for (const auto& c : p.at("coeffs")) {
                std::vector<BigInt> row;
                for (const auto& v : c) row.push_back(BigInt(v.get<long>()));
                cs.push_back(row);
            }
            polys[name] = cs;
        }
        for (const auto& [name, m] : d.at("jmaps").items()) jmaps[name] = expand_map(m);
        param_s = expand_map(d.at("param_r").at("s"));
        param_t = expand_map(d.at("param_r").at("t"));
        isogeny = expand_map(d.at("isogeny_param"));
    }
};

const FamilyTables& tables() {
    static const FamilyTables t;
    return t;
}

std::string fnv1a64_hex(const std::string& s) {
    uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

BigRat pow5(const BigRat& t) { return t * t * t * t * t; }

}  // namespace

RationalMap::RationalMap(PolyQ n, PolyQ d) {
    if (d.is_zero()) throw MathError("rational map with zero denominator");
    PolyQ g = poly_gcd(n, d);
    if (g.degree() > 0) {
        n = exact_div(n, g);
        d = exact_div(d, g);
    }
    BigRat lc = d.lc();
    num = n * (1 / lc);
    den = d * (1 / lc);
}

BigRat RationalMap::eval(const BigRat& x) const {
    BigRat d = den.eval(x);
    if (sgn(d) == 0) throw MathError("pole of a rational map");
    return num.eval(x) / d;
}

std::string family_data_checksum() { return fnv1a64_hex(tables().root.at("data").dump()); }
std::string family_data_recorded_checksum() { return tables().root.at("checksum_fnv1a64").get<std::string>(); }

CurveQ family_curve(const std::string& name, const BigRat& param) {
    const auto& T = tables();
    std::string key = name == "E1" ? "E5" : name;
    BigRat t = name == "E1" ? pow5(param) : param;
    auto it = T.curves.find(key);
    if (it == T.curves.end()) throw MathError("unknown family " + name);
    std::array<BigRat, 5> a;
    for (int i = 0; i < 5; ++i) a[i] = it->second[i].eval(t);
    return CurveQ(a);
}

PolyQ family_poly(const std::string& name, const BigRat& t) {
    const auto& T = tables();
    auto it = T.polys.find(name);
    if (it == T.polys.end()) throw MathError("unknown family polynomial " + name);
    std::vector<BigRat> c;
    for (const auto& row : it->second) c.push_back(PolyQ::from_ints(row).eval(t));
    return PolyQ(c);
}

const RationalMap& jmap_function(const std::string& name) {
    const auto& T = tables();
    auto it = T.jmaps.find(name);
    if (it == T.jmaps.end()) throw MathError("unknown j-map " + name);
    return it->second;
}

BigRat jmap(const std::string& name, const BigRat& x) { return jmap_function(name).eval(x); }

std::pair<BigRat, BigRat> param_r(const BigRat& r) { return {tables().param_s.eval(r), tables().param_t.eval(r)}; }

BigRat isogeny_param(const BigRat& t) { return tables().isogeny.eval(t); }

Triangle triangle(const BigRat& t) {
    CurveQ E = family_curve("E1", t);
    auto ks = rational_isogeny_kernels(E, 5);
    if (ks.size() != 2) throw MathError("degenerate parameter: expected two rational 5-isogenies");
    BigRat j6 = family_curve("E6", pow5(t)).j_invariant();
    BigRat j5 = family_curve("E5", isogeny_param(t)).j_invariant();
    CurveQ Q0 = velu_quotient(E, ks[0]), Q1 = velu_quotient(E, ks[1]);
    bool swap = !(Q0.j_invariant() == j6) && Q1.j_invariant() == j6;
    Triangle out{E, swap ? Q1 : Q0, swap ? Q0 : Q1, swap ? ks[1] : ks[0], swap ? ks[0] : ks[1], false, false, {}};
    out.j1_matches = out.E1.j_invariant() == j6;
    out.j2_matches = out.E2.j_invariant() == j5;
    out.e2_kernels25 = rational_isogeny_kernels(out.E2, 25);
    return out;
}

BigRat sample_rational(std::mt19937& rng, long h) {
    std::uniform_int_distribution<long> num(-h, h), den(1, h);
    for (;;) {
        long a = num(rng);
        if (a == 0) continue;
        BigRat q(a, den(rng));
        q.canonicalize();
        return q;
    }
}

// ---------------------------------------------------------------- checks

namespace {

// A sampled parameter giving a nonsingular member of the family.
template <class Make>
BigRat sample_nonsingular(std::mt19937& rng, long h, Make make) {
    for (;;) {
        BigRat t = sample_rational(rng, h);
        try {
            make(t);
            return t;
        } catch (const MathError&) {
        }
    }
}

FamilyCheck fail(FamilyCheck c, const std::string& why) {
    c.passed = false;
    if (c.detail.empty()) c.detail = why;
    return c;
}

}  // namespace

FamilyCheck check_p5(int samples, unsigned seed) {
    FamilyCheck c{"p5 divides psi5 of E5", true, 0, ""};
    std::mt19937 rng(seed);
    for (int i = 0; i < samples; ++i) {
        BigRat t = sample_nonsingular(rng, 50, [](const BigRat& u) { return family_curve("E5", u); });
        CurveQ E = family_curve("E5", t);
        ++c.samples;
        if (!(E.division_polynomial(5) % family_poly("p5", t)).is_zero()) return fail(c, "t = " + t.get_str());
    }
    return c;
}

FamilyCheck check_p25(const std::vector<long>& ts) {
    FamilyCheck c{"p25 gives a point of order 25 on E6 at t^5", true, 0, ""};
    for (long tl : ts) {
        BigRat t(tl);
        std::optional<CurveQ> E;
        try {
            E = family_curve("E6", pow5(t));
        } catch (const MathError&) {
            continue;  // degenerate parameter
        }
        ++c.samples;
        std::string at = "t = " + t.get_str();
        PolyQ p = family_poly("p25", t);
        // x(R) = 3 alpha, so the abscissa polynomial is 3^5 p25(x / 3).
        PolyQ g = p.scale_var(BigRat(1, 3)) * BigRat(243);
        if (!(E->division_polynomial(25) % g).is_zero()) return fail(c, at + ": no division");
        FieldPtr K = NumberField::make(p);
        if (!is_galois(K)) return fail(c, at + ": field not Galois");
        NFElem x = NFElem::generator(K) * NFElem(K, BigRat(3));
        PolyQ beta = E->beta();
        NFElem rhs(K, BigRat(0));
        for (int i = beta.degree(); i >= 0; --i) rhs = rhs * x + NFElem(K, beta.coeff(i));
        // (2y + a1 x + a3)^2 = beta(x); the families have a1 = a3 = 0.
        PolyK sq(K, std::vector<NFElem>{-rhs, NFElem(K, BigRat(0)), NFElem(K, BigRat(1))});
        auto w = nf_roots(sq);
        if (w.empty()) return fail(c, at + ": y not in K");
        PointK R(x, w.front() * NFElem(K, BigRat(1, 2)));
        if (!on_curve(*E, R) || point_order(*E, R, 25) != 25) return fail(c, at + ": order is not 25");
    }
    if (c.samples == 0) return fail(c, "no nondegenerate parameter");
    return c;
}

FamilyCheck check_order5_point(int samples, unsigned seed) {
    FamilyCheck c{"(3T^2 - 18T + 3, 108T) has order 5 on E6 at T = t^5", true, 0, ""};
    std::mt19937 rng(seed);
    for (int i = 0; i < samples; ++i) {
        BigRat t = sample_nonsingular(rng, 20, [](const BigRat& u) { return family_curve("E6", pow5(u)); });
        BigRat T = pow5(t);
        CurveQ E = family_curve("E6", T);
        PointQ P(3 * T * T - 18 * T + 3, 108 * T);
        ++c.samples;
        if (!on_curve(E, P) || point_order(E, P, 25) != 5) return fail(c, "t = " + t.get_str());
    }
    return c;
}

FamilyCheck check_jmaps(int samples, unsigned seed) {
    FamilyCheck c{"J2(s(r)) = j(E5 at t(r)) and J5(t) = j(E5 at t)", true, 0, ""};
    std::mt19937 rng(seed);
    for (int i = 0; i < samples; ++i) {
        BigRat r, s, t;
        for (;;) {
            r = sample_rational(rng, 30);
            try {
                std::tie(s, t) = param_r(r);
                if (sgn(s) == 0 || sgn(t) == 0) continue;
                family_curve("E5", t);
                break;
            } catch (const MathError&) {
            }
        }
        ++c.samples;
        BigRat jE = family_curve("E5", t).j_invariant();
        if (jmap("J2", s) != jE) return fail(c, "r = " + r.get_str());
        if (jmap("J5", t) != jE) return fail(c, "J5 at t = " + t.get_str());
    }
    return c;
}

FamilyCheck check_triangle(const std::vector<long>& ts) {
    FamilyCheck c{"5-isogeny triangle", true, 0, ""};
    for (long tl : ts) {
        BigRat t(tl);
        ++c.samples;
        std::string at = "t = " + t.get_str();
        std::optional<Triangle> tri;
        try {
            tri = triangle(t);
        } catch (const MathError& e) {
            return fail(c, at + ": " + e.what());
        }
        const Triangle& tr = *tri;
        if (!tr.j1_matches) return fail(c, at + ": j(E/<P1>) differs from j(E6 at t^5)");
        if (!tr.j2_matches) return fail(c, at + ": j(E/<P2>) differs from j(E5 at s(t))");
        if (tr.e2_kernels25.empty()) return fail(c, at + ": no rational 25-isogeny on E2");
    }
    return c;
}

FamilyCheck check_aux_points(long cprime_bound, long genus1_bound) {
    FamilyCheck c{"auxiliary curve point searches", true, 2, ""};
    if (!auxiliary_point_search(AuxCurve::C_prime, cprime_bound).empty()) return fail(c, "affine point on C'");
    std::vector<AuxPoint> expected{{BigRat(-2, 27), BigRat(-1, 8)}, {BigRat(-27, 2), BigRat(-2)},
                                   {BigRat(-27, 2), BigRat(1, 2)}, {BigRat(0), BigRat(0)},
                                   {BigRat(-2, 27), BigRat(8)}};
    for (auto& P : expected) {
        P.x.canonicalize();
        P.y.canonicalize();
    }
    std::sort(expected.begin(), expected.end());
    if (auxiliary_point_search(AuxCurve::C_genus1, genus1_bound) != expected)
        return fail(c, "genus-1 point list differs from the expected five points");
    return c;
}

}  // namespace tors5
