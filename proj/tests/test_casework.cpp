#include "clv/casework.hpp"

#include "doctest.h"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <tuple>

using namespace clv;
using namespace clv::casework;

namespace {

// Truncated bivariate polynomials, enough for weighted orders of local equations.
using Poly = std::map<std::pair<int, int>, Rational>;
constexpr int kTrunc = 24;

Poly mul(const Poly& a, const Poly& b) {
    Poly r;
    for (const auto& [ea, ca] : a)
        for (const auto& [eb, cb] : b) {
            const int i = ea.first + eb.first, j = ea.second + eb.second;
            if (i + j > kTrunc) continue;
            r[{i, j}] += ca * cb;
        }
    std::erase_if(r, [](const auto& kv) { return kv.second == 0; });
    return r;
}

Poly add(Poly a, const Poly& b) {
    for (const auto& [e, c] : b) a[e] += c;
    std::erase_if(a, [](const auto& kv) { return kv.second == 0; });
    return a;
}

Poly mono(Rational c, int i, int j) { return {{{i, j}, c}}; }

// f(x, y) with y replaced by u(x, y)
Poly subst_y(const Poly& f, const Poly& u) {
    Poly r;
    for (const auto& [e, c] : f) {
        Poly t = mono(c, e.first, 0);
        for (int k = 0; k < e.second; ++k) t = mul(t, u);
        r = add(r, t);
    }
    return r;
}

int word(const Poly& f, int p, int q) {
    int best = 1 << 20;
    for (const auto& [e, c] : f) best = std::min(best, p * e.first + q * e.second);
    return best;
}

// min over monomial valuations of log discrepancy / order, in the given coordinates
Rational valuation_min(const std::vector<std::pair<Poly, int>>& parts, int cap) {
    Rational best = 100;
    for (int p = 1; p <= cap; ++p)
        for (int q = 1; q <= cap; ++q) {
            int ord = 0;
            for (const auto& [f, c] : parts) ord += c * word(f, p, q);
            best = std::min(best, rat(p + q, ord));
        }
    return best;
}

Component comp(int m, int d, Sing s = Sing::Smooth, std::vector<cusp::NewtonPair> pairs = {}, int at = -1) {
    return {m, d, s, std::move(pairs), at, {}};
}

CurveConfiguration on_p2(int d, std::vector<Component> cs) {
    CurveConfiguration c;
    c.surface = surface_model(SurfaceKind::P2, d);
    c.comps = std::move(cs);
    std::vector<int> all(c.comps.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = int(i);
    c.points.push_back({all, -1});
    return c;
}

const CaseworkReport& report(int d) {
    static std::map<int, CaseworkReport> cache;
    if (!cache.count(d)) cache[d] = run_casework(d, {2});
    return cache[d];
}

}  // namespace

TEST_CASE("surface models") {
    auto m5 = surface_models(5);
    REQUIRE(m5.size() == 4);
    std::map<std::string, int> deg;
    for (const auto& s : m5) {
        deg[s.name] = s.divisor_degree;
        CHECK(s.threshold == rat(3, 5));
        CHECK(s.point_cap == 3);
        CHECK(s.component_cap == 1);
    }
    CHECK(deg["P2"] == 5);
    CHECK(deg["P(1,1,4)"] == 10);
    CHECK(deg["P(1,4,25)"] == 50);
    CHECK(deg["M(5) in P(1,2,13)"] == 26);
    auto m7 = surface_models(7);
    REQUIRE(m7.size() == 2);
    CHECK(m7[1].divisor_degree == 14);
    CHECK(m7[1].point_cap == 4);
    CHECK(m7[1].component_cap == 2);
    CHECK(m7[1].intersection(7, 7) == rat(49, 4));
    CHECK_THROWS_AS(surface_models(6), InputError);
}

TEST_CASE("chart multiplicities against a direct search") {
    for (int w : {2, 4, 13, 25})
        for (int q = 1; q < w; ++q) {
            if (gcd64(w, q) != 1) continue;
            for (int r = 0; r < w; ++r) {
                int best = 1 << 20;
                for (int i = 0; i <= 2 * w; ++i)
                    for (int k = 0; k <= 2 * w; ++k)
                        if ((i || k) && (i + q * k) % w == r) best = std::min(best, i + k);
                CHECK(min_chart_multiplicity({w, q}, r) == best);
            }
        }
}

TEST_CASE("vertex congruences") {
    const auto p114 = surface_model(SurfaceKind::P114, 7);
    auto two = vertex_congruence(p114, 0, {{2, 7}});
    CHECK(two.lower_bound == 6);
    CHECK_FALSE(two.feasible);
    // four reduced components, each smooth through the vertex, would need degrees = 1 mod 4 summing to 14
    int hits = 0;
    for (int a = 1; a <= 11; a += 4)
        for (int b = a; b <= 11; b += 4)
            for (int c = b; c <= 11; c += 4)
                for (int d = c; d <= 11; d += 4) hits += a + b + c + d == 14;
    CHECK(hits == 0);
    // three components through the index-13 point of P(1,2,13), degrees summing to 26
    const auto m5 = surface_model(SurfaceKind::M5, 5);
    int p13 = -1;
    for (std::size_t i = 0; i < m5.points.size(); ++i)
        if (m5.points[i].index == 13) p13 = int(i);
    REQUIRE(p13 >= 0);
    for (int a = 1; a <= 24; ++a)
        for (int b = a; a + b < 26; ++b) {
            const int c = 26 - a - b;
            if (c < b) continue;
            auto v = vertex_congruence(m5, p13, {{1, a}, {1, b}, {1, c}});
            bool all_smooth = true;
            for (const auto& x : v.detail["components"]) all_smooth = all_smooth && x["smooth_possible"].get<bool>();
            CHECK_FALSE(all_smooth);
        }
}

TEST_CASE("Hirzebruch genus against interior lattice points") {
    for (int n = 0; n <= 5; ++n)
        for (int a = 1; a <= 4; ++a)
            for (int b = std::max(1, n * a); b <= n * a + 12; ++b) {  // b = 0 with n = 0 is a multiple of a fibre
                // interior points of {0 <= j <= a, 0 <= i <= b - n j}
                int inner = 0;
                for (int j = 1; j < a; ++j)
                    for (int i = 1; i < b - n * j; ++i) ++inner;
                CAPTURE(n);
                CAPTURE(a);
                CAPTURE(b);
                CHECK(hirzebruch_genus(n, a, b) == inner);
            }
    CHECK(hirzebruch_genus(4, 3, 14) == 14);
    CHECK(hirzebruch_genus(4, 2, 10) == 5);
    CHECK(hirzebruch_genus(0, 1, 1) == 0);
}

TEST_CASE("strict transform class on F4") {
    auto t7 = strict_transform_class(surface_model(SurfaceKind::P114, 7), 14, rat(3, 7));
    CHECK(t7.a == 2);
    CHECK(t7.coeff_E == 3);
    CHECK(t7.coeff_fiber == 14);
    auto t5 = strict_transform_class(surface_model(SurfaceKind::P114, 5), 10, rat(3, 5));
    CHECK(t5.a == 2);
    CHECK(t5.coeff_E == 2);
    CHECK(t5.coeff_fiber == 10);
    CHECK_THROWS_AS(strict_transform_class(surface_model(SurfaceKind::P114, 7), 12, rat(3, 7)), InputError);
    CHECK_THROWS_AS(strict_transform_class(surface_model(SurfaceKind::P2, 7), 14, rat(3, 7)), InputError);
    // a = 2 needs 1/2 + t/2 <= 1
    CHECK_THROWS_AS(strict_transform_class(surface_model(SurfaceKind::P114, 7), 14, rat(3, 2)), NoSolution);
}

TEST_CASE("lct bounds from the published examples") {
    auto cubic_conics = on_p2(7, {comp(1, 3, Sing::Cusp, {{2, 3}}, 0), comp(1, 2), comp(1, 2)});
    bool seen = false;
    for (const auto& m : lct_upper_bound(cubic_conics).candidates)
        if (m["method"] == "cusp-reference" && m["value"] == "5/18") seen = true;
    CHECK(seen);
    CHECK(lct_upper_bound(cubic_conics).value <= rat(5, 18));

    auto quartic = on_p2(7, {comp(1, 4, Sing::Cusp, {{2, 7}}, 0), comp(1, 2), comp(1, 1)});
    seen = false;
    for (const auto& m : lct_upper_bound(quartic).candidates)
        if (m["method"] == "cusp-reference" && m["value"] == "9/26") seen = true;
    CHECK(seen);

    auto quintic = on_p2(7, {comp(1, 5, Sing::Cusp, {{2, 13}}, 0), comp(2, 1)});
    seen = false;
    for (const auto& m : lct_upper_bound(quintic).candidates)
        if (m["method"] == "cusp-reference" && m["value"] == "5/12") seen = true;
    CHECK(seen);
    CHECK(lct_upper_bound(quintic).value <= rat(5, 12));
}

TEST_CASE("one cuspidal component: the bound is the exact lct") {
    for (auto [a, b, d] : {std::tuple{6, 7, 7}, std::tuple{3, 11, 7}, std::tuple{2, 13, 5}, std::tuple{4, 5, 5}}) {
        auto c = on_p2(d, {comp(1, d, Sing::Cusp, {{a, b}}, 0)});
        CHECK(lct_upper_bound(c).value == rat(1, a) + rat(1, b));
    }
    CHECK_THROWS_AS(lct_upper_bound(on_p2(7, {comp(1, 7)})), NotSupported);
}

TEST_CASE("tangency bounds are realised by explicit valuations") {
    // three conics y - x^2 + t y^2 (pairwise contact 4) and their common tangent line y
    Poly line = mono(1, 0, 1);
    std::vector<Poly> conics;
    for (int t = 1; t <= 3; ++t) conics.push_back(add(add(mono(1, 0, 1), mono(-1, 2, 0)), mono(t, 0, 2)));
    // move to coordinates (x, y - x^2)
    const Poly shift = add(mono(1, 0, 1), mono(1, 2, 0));
    std::vector<std::pair<Poly, int>> parts{{subst_y(line, shift), 1}};
    for (const auto& q : conics) parts.push_back({subst_y(q, shift), 1});
    const Rational oracle = valuation_min(parts, 16);
    CHECK(oracle == rat(5, 14));
    const auto engine = lct_upper_bound(on_p2(7, {comp(1, 2), comp(1, 2), comp(1, 2), comp(1, 1)})).value;
    // sound: at least one genuine valuation ratio, and 5/14 is one
    CHECK(engine >= oracle);
    CHECK(engine == rat(5, 14));
    CHECK(engine < rat(3, 7));

    // conic + line + doubled conic
    std::vector<std::pair<Poly, int>> p2{{subst_y(line, shift), 1}, {subst_y(conics[0], shift), 1},
                                         {subst_y(conics[1], shift), 2}};
    const Rational o2 = valuation_min(p2, 16);
    const auto e2 = lct_upper_bound(on_p2(7, {comp(1, 2), comp(1, 1), comp(2, 2)})).value;
    CHECK(e2 >= o2);
    CHECK(e2 < rat(3, 7));
}

TEST_CASE("every stored bound recomputes from its method") {
    for (int d : {5, 7})
        for (const auto& s : report(d).surfaces)
            for (const auto& c : s.configs) {
                std::vector<Firing> all{{c.cert.rule, c.cert.bound, c.cert.witness}};
                all.insert(all.end(), c.cert.also.begin(), c.cert.also.end());
                for (const auto& f : all)
                    if (f.rule == Rule::LctTooSmall) {
                        REQUIRE(f.bound);
                        CHECK(recompute_lct_method(f.witness["method"]) == *f.bound);
                        CHECK(*f.bound < rat(3, d));
                    }
            }
}

TEST_CASE("every certificate rechecks from its witness") {
    for (int d : {5, 7}) {
        const auto models = surface_models(d);
        for (const auto& s : report(d).surfaces) {
            const SurfaceModel* m = nullptr;
            for (const auto& x : models)
                if (x.name == s.name) m = &x;
            REQUIRE(m);
            for (const auto& c : s.configs) {
                CAPTURE(c.geometry);
                if (c.cert.rule != Rule::ManualGeometric)
                    CHECK(recheck({c.cert.rule, c.cert.bound, c.cert.witness}, *m));
                for (const auto& f : c.cert.also) CHECK(recheck(f, *m));
            }
        }
    }
}

TEST_CASE("tampered witnesses fail the recheck") {
    const auto& r = report(7);
    int tampered = 0;
    for (const auto& s : r.surfaces)
        for (const auto& c : s.configs) {
            if (c.cert.rule != Rule::LctTooSmall) continue;
            Firing f{c.cert.rule, c.cert.bound, c.cert.witness};
            f.bound = *f.bound + rat(1, 1000);
            CHECK_FALSE(recheck(f, surface_models(7).front()));
            ++tampered;
        }
    CHECK(tampered > 0);
}

TEST_CASE("shell counts match a brute-force multiset counter") {
    for (int d : {5, 7})
        for (const auto& s : surface_models(d)) {
            // multisets of (m, degree) with m <= cap and sum m * degree = divisor degree
            std::int64_t brute = 0;
            std::function<void(int, int, int)> rec = [&](int left, int m0, int d0) {
                if (left == 0) {
                    ++brute;
                    return;
                }
                for (int m = m0; m <= s.component_cap; ++m)
                    for (int deg = (m == m0 ? d0 : 1); m * deg <= left; ++deg) rec(left - m * deg, m, deg);
            };
            rec(s.divisor_degree, 1, 1);
            CAPTURE(s.name);
            CHECK(shell_count(s) == brute);
            for (const auto& sr : report(d).surfaces)
                if (sr.name == s.name) CHECK(sr.shells == brute);
        }
}

TEST_CASE("same report for any thread count") {
    for (int d : {5, 7}) {
        const auto one = to_json(run_casework(d, {1})).dump();
        CHECK(one == to_json(run_casework(d, {3})).dump());
        CHECK(one == to_json(run_casework(d, {8})).dump());
    }
}

TEST_CASE("published rows: agreement, with two documented exceptions") {
    std::set<std::pair<std::string, std::string>> differs;
    for (int d : {5, 7})
        for (const auto& row : report(d).rows) {
            CAPTURE(row.label);
            CHECK(row.status != "missing");
            if (row.status == "differs") {
                differs.insert({row.surface, row.label});
                CHECK_FALSE(row.note.empty());
            } else {
                CHECK((row.status == "agrees" || row.status == "agrees-secondary"));
            }
        }
    CHECK(differs == std::set<std::pair<std::string, std::string>>{{"P2", "2+1 | 2"}, {"P(1,1,4)", "12 | 1"}});
}

TEST_CASE("verdicts and manual flags") {
    CHECK(manual_flags(5).empty());
    const auto f7 = manual_flags(7);
    REQUIRE(f7.size() == 3);
    std::set<std::string> ids;
    for (const auto& f : f7) {
        ids.insert(f.id);
        CHECK_FALSE(f.lemma.empty());
        CHECK_FALSE(f.cited_by.empty());
    }
    CHECK(ids.count("cremona-quintic-classification"));
    for (int d : {5, 7}) {
        CHECK(report(d).verdict == "smooth-only");
        CHECK(report(d).unresolved == 0);
        for (const auto& s : report(d).surfaces)
            for (const auto& c : s.configs) {
                if (c.cert.rule != Rule::ManualGeometric) continue;
                CHECK(d == 7);
                for (const auto& r : c.cert.relies_on) CHECK(ids.count(r));
            }
    }
    bool evidence = false;
    for (const auto& f : f7)
        if (f.evidence.contains("bl_check")) evidence = f.evidence["bl_check"]["pass"].get<bool>();
    CHECK(evidence);
}

TEST_CASE("the degree-14 cusps on P(1,1,4)") {
    std::map<std::string, std::vector<std::string>> rules;
    for (const auto& s : report(7).surfaces) {
        if (s.name != "P(1,1,4)") continue;
        for (const auto& c : s.configs) {
            if (!c.components.contains("components") || c.components["components"].size() != 1) continue;
            const auto sing = c.components["components"][0].value("singularity", "");
            std::vector<std::string> v{rule_name(c.cert.rule)};
            for (const auto& f : c.cert.also) v.push_back(rule_name(f.rule));
            rules[sing] = v;
        }
    }
    auto has = [&](const std::string& k, const char* r) {
        return std::find(rules[k].begin(), rules[k].end(), std::string(r)) != rules[k].end();
    };
    CHECK(rules["[(5,8)]"].front() == "LctTooSmall");
    CHECK(has("[(3,15)]", "LctTooSmall"));
    CHECK(rules["[(3,15)]"].front() == "ClassificationEmpty");
    CHECK(rules["[(2,29)]"].front() == "ClassificationEmpty");
}
