#include "clv/acceptance.hpp"

#include "clv/blcheck.hpp"
#include "clv/casework.hpp"
#include "clv/cusp.hpp"
#include "clv/igraph.hpp"
#include "clv/manetti.hpp"
#include "clv/markov.hpp"

#include <cmath>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>

namespace clv::acceptance {

namespace {

using cusp::CuspType;
using cusp::NewtonPair;
using casework::Rule;

struct Ctx {
    std::ostringstream why;
    bool ok = true;
    void expect(bool cond, const std::string& msg) {
        if (!cond && ok) why << msg;
        ok = ok && cond;
    }
};

Check finish(int id, const char* name, Ctx& c, const std::string& good) {
    return {id, name, c.ok, c.ok ? good : c.why.str()};
}

std::string seq(const cusp::MultiplicitySequence& m) { return cusp::to_string(m); }

Check table_one() {
    struct Row {
        std::vector<NewtonPair> pairs;
        std::int64_t delta;
        Rational lct;
        cusp::MultiplicitySequence mult;
    };
    const std::vector<Row> rows = {
        {{{2, 3}}, 1, rat(5, 6), {2}},
        {{{2, 7}}, 3, rat(9, 14), {2, 2, 2}},
        {{{3, 4}}, 3, rat(7, 12), {3}},
        {{{2, 13}}, 6, rat(15, 26), {2, 2, 2, 2, 2, 2}},
        {{{4, 5}}, 6, rat(9, 20), {4}},
        {{{3, 11}}, 10, rat(14, 33), {3, 3, 3, 2}},
        {{{2, 3}, {2, 5}}, 10, rat(5, 12), {4, 2, 2, 2, 2}},
        {{{5, 6}}, 10, rat(11, 30), {5}},
    };
    Ctx c;
    for (const auto& r : rows) {
        CuspType t(r.pairs);
        c.expect(cusp::delta_from_pairs(t) == r.delta, t.str() + ": delta " +
                                                           std::to_string(cusp::delta_from_pairs(t)));
        c.expect(cusp::lct(t) == r.lct, t.str() + ": lct " + to_string(cusp::lct(t)));
        c.expect(cusp::multiplicity_sequence(t) == r.mult,
                 t.str() + ": multiplicity sequence " + seq(cusp::multiplicity_sequence(t)));
    }
    return finish(1, "table of unicuspidal curves of degree <= 6", c, "8 rows match");
}

std::vector<NewtonPair> random_pairs(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> kd(1, 3), md(2, 30), nd(1, 30);
    while (true) {
        const int k = kd(rng);
        std::vector<NewtonPair> p;
        for (int j = 0; j < k; ++j) p.push_back({md(rng), nd(rng)});
        try {
            CuspType t(p);
            // the membership scan below is linear in delta
            if (cusp::delta_from_pairs(t) <= 20000) return t.pairs();
        } catch (const InputError&) {
        }
    }
}

Check delta_property() {
    std::mt19937_64 rng(20240917);
    Ctx c;
    for (int i = 0; i < 500; ++i) {
        CuspType t(random_pairs(rng));
        const auto d = cusp::delta_from_pairs(t);
        c.expect(cusp::delta_from_multiplicities(cusp::multiplicity_sequence(t)) == d,
                 t.str() + ": multiplicity delta differs");
        auto S = cusp::semigroup(t, 2 * d + 2);
        std::int64_t gaps = 0;
        for (std::int64_t x = 0; x < 2 * d; ++x) {
            if (!S.members[std::size_t(x)]) ++gaps;
            // symmetric: x in S iff 2d - 1 - x is not
            if (S.members[std::size_t(x)] == S.members[std::size_t(2 * d - 1 - x)]) {
                c.expect(false, t.str() + ": semigroup not symmetric at " + std::to_string(x));
                break;
            }
        }
        c.expect(gaps == d, t.str() + ": gap count " + std::to_string(gaps));
    }
    return finish(2, "delta cross-check on 500 random cusps", c, "500 cusps consistent");
}

Check bl_table() {
    const CuspType a = CuspType::single(2, 19), b = CuspType::single(4, 5);
    const std::vector<std::int64_t> want{7, 7, 7, 8, 7, 7, 7, 8, 8, 8};
    Ctx c;
    std::vector<std::int64_t> got;
    for (std::int64_t k = 12; k >= 3; --k) got.push_back(cusp::counting_R(a, k) + cusp::counting_R(b, 15 - k));
    c.expect(got == want, "R sums differ");
    auto v = bl::bl_check(7, {a, b});
    c.expect(!v.pass && v.fail_j == 2 && v.achieved_min == 7 && v.required == 6,
             "bl_check(7, (2,19),(4,5)) did not fail at j=2 with 7 vs 6");
    return finish(3, "BL R-table for (2,19),(4,5)", c, "R(12,3)..R(3,12) = 7,7,7,8,7,7,7,8,8,8; fail j=2, 7 vs 6");
}

Check unicuspidal_seven() {
    Ctx c;
    auto rep = bl::unicuspidal_candidates(7, 3);
    std::vector<std::string> singles;
    for (const auto& s : rep.survivors)
        if (s.cusp.k() == 1) singles.push_back(s.cusp.str());
    c.expect(singles == std::vector<std::string>{CuspType::single(6, 7).str()}, "single-pair survivors differ");
    std::set<std::string> bl_dead;
    for (const auto& e : rep.eliminated)
        if (e.reason == bl::Reason::BLFail && e.pairs.size() == 1)
            bl_dead.insert(std::to_string(e.pairs[0].m) + "," + std::to_string(e.pairs[0].n));
    c.expect(bl_dead.count("2,31") && bl_dead.count("3,16"), "(2,31) or (3,16) not killed by BL");
    // level j = 2 is violated for both; (2,31) already fails at j = 1
    for (const auto& [a, b] : {std::pair{2, 31}, std::pair{3, 16}}) {
        const auto v = bl::bl_check(7, {CuspType::single(a, b)});
        bool j2 = false;
        for (const auto& row : v.table)
            if (row.j == 2) j2 = row.minimum != row.required;
        c.expect(j2, CuspType::single(a, b).str() + " passes level j=2");
    }
    int two = 0;
    for (const auto& raw : bl::pairs_with_delta(15, 2)) {
        if (gcd64(raw[0].m, raw[0].n) != 1 || gcd64(raw[1].m, raw[1].n) != 1) continue;
        ++two;
        const Rational l = cusp::lct(CuspType(raw));
        c.expect(l <= rat(5, 12) && l < rat(3, 7), CuspType(raw).str() + " has lct " + to_string(l));
    }
    c.expect(two > 0, "no two-pair candidates");
    c.expect(cusp::lct(CuspType::single(6, 7)) == rat(13, 42), "(6,7) lct");
    return finish(4, "unicuspidal septics", c,
                  "survivor (6,7) lct 13/42; " + std::to_string(two) + " two-pair candidates with lct <= 5/12");
}

const casework::CaseworkReport& report(int d, int threads) {
    static std::map<int, casework::CaseworkReport> cache;
    auto it = cache.find(d);
    if (it == cache.end()) it = cache.emplace(d, casework::run_casework(d, {threads})).first;
    return it->second;
}

// Every config whose single component carries `pairs` on `surface` is killed by `rule`, first or later.
bool killed_by(const casework::CaseworkReport& r, const std::string& surface, const std::string& pairs, Rule rule,
               std::optional<Rational> below, int& seen) {
    bool ok = true;
    for (const auto& s : r.surfaces) {
        if (s.name != surface) continue;
        for (const auto& cfg : s.configs) {
            if (!cfg.components.contains("components")) continue;
            bool hit = false;
            for (const auto& comp : cfg.components["components"])
                if (comp.value("singularity", "") == pairs) hit = true;
            if (!hit) continue;
            ++seen;
            bool found = false;
            auto test = [&](Rule ru, const std::optional<Rational>& b) {
                if (ru != rule) return;
                if (below && !(b && *b < *below)) return;
                found = true;
            };
            test(cfg.cert.rule, cfg.cert.bound);
            for (const auto& f : cfg.cert.also) test(f.rule, f.bound);
            ok = ok && found;
        }
    }
    return ok;
}

Check diophantine(int threads) {
    Ctx c;
    auto names = [](std::int64_t p) {
        std::vector<std::string> v;
        for (const auto& x : bl::diophantine_pairs(p)) v.push_back(std::to_string(x.a) + "," + std::to_string(x.b));
        return v;
    };
    c.expect(names(28) == std::vector<std::string>{"2,29", "3,15", "5,8"}, "product 28");
    c.expect(names(10) == std::vector<std::string>{"2,11", "3,6"}, "product 10");
    c.expect(names(12) == std::vector<std::string>{"2,13", "3,7", "4,5"}, "product 12");

    const auto& r7 = report(7, threads);
    const auto& r5 = report(5, threads);
    int seen = 0;
    c.expect(killed_by(r7, "P(1,1,4)", "[(5,8)]", Rule::LctTooSmall, rat(3, 7), seen), "(5,8) lacks an lct certificate");
    c.expect(killed_by(r7, "P(1,1,4)", "[(3,15)]", Rule::LctTooSmall, rat(3, 7), seen),
             "(3,15) lacks an lct certificate");
    c.expect(killed_by(r5, "P(1,1,4)", "[(3,6)]", Rule::ClassificationEmpty, std::nullopt, seen),
             "(3,6) lacks a non-coprime certificate");
    for (const char* p : {"[(2,11)]"})
        c.expect(killed_by(r5, "P(1,1,4)", p, Rule::LctTooSmall, rat(3, 5), seen), std::string(p) + " lacks lct < 3/5");
    for (const char* p : {"[(2,13)]", "[(3,7)]", "[(4,5)]"})
        c.expect(killed_by(r5, "P2", p, Rule::LctTooSmall, rat(3, 5), seen), std::string(p) + " lacks lct < 3/5");
    c.expect(seen >= 7, "expected configurations not generated");
    return finish(5, "Diophantine steps and their certificates", c,
                  std::to_string(seen) + " configurations carry the stated eliminations");
}

Check hirzebruch() {
    Ctx c;
    c.expect(casework::hirzebruch_genus(4, 3, 14) == 14, "genus of 3E+14l");
    c.expect(casework::hirzebruch_genus(4, 2, 10) == 5, "genus of 2E+10l");
    auto t7 = casework::strict_transform_class(casework::surface_model(casework::SurfaceKind::P114, 7), 14, rat(3, 7));
    c.expect(t7.a == 2 && t7.coeff_E == 3 && t7.coeff_fiber == 14, "degree 14 strict transform");
    auto t5 = casework::strict_transform_class(casework::surface_model(casework::SurfaceKind::P114, 5), 10, rat(3, 5));
    c.expect(t5.a == 2 && t5.coeff_E == 2 && t5.coeff_fiber == 10, "degree 10 strict transform");
    return finish(6, "Hirzebruch genus and a = 2", c, "genus 14 and 5; a = 2 with classes (3,14), (2,10)");
}

// Every graph with <= 4 greens (mult <= 2) and <= 3 yellows of size <= 3 is either admissible and enumerated,
// or rejected with a named constraint.
bool small_space_consistent(igraph::Mode mode, const std::set<igraph::Graph>& adm, std::string& why) {
    for (int ng = 1; ng <= 4; ++ng) {
        std::vector<std::vector<int>> types;
        for (int a = 0; a < ng; ++a)
            for (int b = a; b < ng; ++b) {
                types.push_back({a, b});
                for (int x = b; x < ng; ++x) types.push_back({a, b, x});
            }
        for (int mask = 0; mask < (1 << ng); ++mask) {
            igraph::Graph base;
            for (int i = 0; i < ng; ++i) base.greens.push_back((mask >> i) & 1 ? 2 : 1);
            std::function<void(std::size_t, int, igraph::Graph&)> rec = [&](std::size_t from, int left,
                                                                            igraph::Graph& g) {
                bool valid = true;
                try {
                    igraph::validate(g);
                } catch (const InputError&) {
                    valid = false;
                }
                if (valid) {
                    auto v = igraph::first_violation(g, mode);
                    const bool listed = adm.count(igraph::canonical(g)) > 0;
                    if (v && v->empty()) {
                        why = g.str() + " rejected without a name";
                        return;
                    }
                    if (!v != listed) {
                        why = g.str() + (v ? " listed but rejected" : " admissible but not listed");
                        return;
                    }
                }
                if (left == 0) return;
                for (std::size_t t = from; t < types.size() && why.empty(); ++t) {
                    g.yellows.push_back(types[t]);
                    rec(t, left - 1, g);
                    g.yellows.pop_back();
                }
            };
            rec(0, 3, base);
            if (!why.empty()) return false;
        }
    }
    return true;
}

Check graphs() {
    Ctx c;
    auto e7 = igraph::enumerate_admissible(igraph::Mode::Deg7);
    auto e5 = igraph::enumerate_admissible(igraph::Mode::Deg5);
    auto strs = [](const std::vector<igraph::Graph>& v) {
        std::vector<std::string> s;
        for (const auto& g : v) s.push_back(g.str());
        return s;
    };
    const std::vector<std::string> want7{"G[1] Y[]",
                                         "G[1,1] Y[{0,1}]",
                                         "G[1,2] Y[{0,1}]",
                                         "G[1,1,1] Y[{0,1,2}]",
                                         "G[1,1,2] Y[{0,1,2}]",
                                         "G[1,2,2] Y[{0,1} {0,2} {1,2}]",
                                         "G[1,1,1,1] Y[{0,1,2,3}]"};
    const std::vector<std::string> want5{"G[1] Y[]", "G[1,1] Y[{0,1}]", "G[1,1,1] Y[{0,1,2}]"};
    c.expect(strs(e7.admissible) == want7, "Deg7 list differs");
    c.expect(strs(e5.admissible) == want5, "Deg5 list differs");
    for (const auto* e : {&e7, &e5})
        for (const auto& [k, v] : e->pruned) c.expect(!k.empty() && v > 0, "unnamed pruning");
    std::string why;
    c.expect(small_space_consistent(igraph::Mode::Deg7, {e7.admissible.begin(), e7.admissible.end()}, why), why);
    c.expect(small_space_consistent(igraph::Mode::Deg5, {e5.admissible.begin(), e5.admissible.end()}, why), why);
    return finish(7, "intersection graph enumeration", c, "7 graphs (Deg7), 3 graphs (Deg5); rejections all named");
}

Check markov_suite() {
    Ctx c;
    const std::int64_t N = 500;
    std::set<std::tuple<std::int64_t, std::int64_t, std::int64_t>> brute;
    for (std::int64_t a = 1; a <= N; ++a)
        for (std::int64_t b = a; b <= N; ++b) {
            // c^2 - 3ab c + a^2 + b^2 = 0
            const std::int64_t disc = 9 * a * a * b * b - 4 * (a * a + b * b);
            if (disc < 0) continue;
            auto s = static_cast<std::int64_t>(std::sqrt(static_cast<long double>(disc)));
            while (s * s > disc) --s;
            while ((s + 1) * (s + 1) <= disc) ++s;
            if (s * s != disc) continue;
            for (std::int64_t num : {3 * a * b - s, 3 * a * b + s}) {
                if (num % 2) continue;
                const std::int64_t cc = num / 2;
                if (cc >= b && cc <= N) brute.insert({a, b, cc});
            }
        }
    std::set<std::tuple<std::int64_t, std::int64_t, std::int64_t>> tree;
    for (const auto& t : markov::markov_tree(N)) {
        tree.insert({static_cast<std::int64_t>(t.a), static_cast<std::int64_t>(t.b), static_cast<std::int64_t>(t.c)});
        c.expect(manetti::volume_check(t) == 9, "volume check on " + t.str());
        c.expect(markov::descent_steps(t) >= 0, "descent from " + t.str());
    }
    c.expect(tree == brute, "tree and brute-force triples differ");
    auto nums = markov::markov_numbers(89);
    c.expect(nums == std::vector<BigInt>{1, 2, 5, 13, 29, 34, 89}, "first Markov numbers");
    c.expect(markov::verify_gonality_gap(1'000'000), "gonality gap");
    return finish(8, "Markov suite", c, std::to_string(tree.size()) + " triples up to 500 match brute force");
}

Check manetti_suite() {
    Ctx c;
    auto t = markov::make_triple(1, 2, 5);
    auto m5 = manetti::keeping(t, {5});
    c.expect(manetti::picard_index(m5) == 25, "picard index");
    c.expect(manetti::self_intersection({m5, 1}) == rat(1, 25), "O(1)^2");
    auto g = manetti::gonality_certificate(t, 1);
    c.expect(g.bound == 2 && g.plane_gonality == 4 && g.nonplanar, "gonality certificate");
    auto l = manetti::limit_degree_on_Mc(5, 5);
    c.expect(l && *l == 25, "limit degree");
    return finish(9, "Manetti suite", c, "index 25, O(1)^2 = 1/25, gonality {2,4,true}, limit degree 25");
}

Check full_casework(int threads) {
    Ctx c;
    const auto& r5 = report(5, threads);
    const auto& r7 = report(7, threads);
    c.expect(casework::manual_flags(5).empty(), "manual flags for d=5");
    const std::set<std::string> closed{"conic-tangent-line-uniqueness", "doubled-cubic-inflection-line",
                                       "cremona-quintic-classification"};
    std::set<std::string> ids;
    for (const auto& f : r7.manual_flags) {
        ids.insert(f.id);
        c.expect(!f.lemma.empty() && !f.cited_by.empty(), f.id + " cites nothing");
    }
    c.expect(ids == closed && r7.manual_flags.size() == 3, "d=7 manual flags differ");
    std::size_t manual = 0;
    for (const auto* r : {&r5, &r7}) {
        const Rational thr = rat(3, r->degree);
        c.expect(r->verdict == "smooth-only" && r->unresolved == 0, "verdict for d=" + std::to_string(r->degree));
        for (const auto& s : r->surfaces)
            for (const auto& cfg : s.configs) {
                if (cfg.cert.rule == Rule::ManualGeometric) {
                    ++manual;
                    c.expect(r->degree == 7 && !cfg.cert.manual_lemma.empty() && !cfg.cert.relies_on.empty(),
                             "manual config without a flag");
                }
                if (cfg.cert.rule == Rule::LctTooSmall)
                    c.expect(cfg.cert.bound && *cfg.cert.bound < thr, "lct bound not below 3/d");
                for (const auto& rel : cfg.cert.relies_on) c.expect(ids.count(rel) > 0, "relies on unknown " + rel);
                c.expect(casework::recheck({cfg.cert.rule, cfg.cert.bound, cfg.cert.witness}, [&] {
                             for (const auto& m : casework::surface_models(r->degree))
                                 if (m.name == s.name) return m;
                             return casework::surface_models(r->degree).front();
                         }()),
                         "witness does not recheck");
            }
        for (const auto& row : r->rows)
            c.expect(row.status == "agrees" || row.status == "agrees-secondary" || !row.note.empty(),
                     "row " + row.surface + " " + row.label + " " + row.status);
    }
    return finish(10, "full casework for d = 5 and 7", c,
                  "verdict smooth-only for both; " + std::to_string(manual) + " configuration(s) handed to manual flags");
}

Check bl_honesty(int threads) {
    Ctx c;
    const std::vector<CuspType> cs{CuspType::single(2, 3), CuspType::single(2, 11)};
    auto v = bl::bl_check(5, cs);
    c.expect(v.pass, "bl_check(5, (2,3),(2,11)) fails");
    for (const auto& row : v.table) {
        if (row.target <= 0) continue;
        c.expect(bl::brute_min(cs, row.target, 0, row.target) == row.minimum,
                 "brute force differs at j=" + std::to_string(row.j));
    }
    bool attached = false;
    for (const auto& f : report(7, threads).manual_flags)
        if (f.evidence.contains("bl_check") && f.evidence["bl_check"].value("pass", false)) attached = true;
    c.expect(attached, "evidence not attached to a d=7 flag");
    return finish(11, "BL honesty check", c, "bl_check(5, (2,3),(2,11)) = Pass, brute-force verified and attached");
}

}  // namespace

std::vector<Check> run_all(int threads) {
    std::vector<Check> out;
    auto guard = [&](int id, const char* name, const std::function<Check()>& f) {
        try {
            out.push_back(f());
        } catch (const std::exception& e) {
            out.push_back({id, name, false, std::string("exception: ") + e.what()});
        }
    };
    guard(1, "table of unicuspidal curves", table_one);
    guard(2, "delta cross-check", delta_property);
    guard(3, "BL R-table", bl_table);
    guard(4, "unicuspidal septics", unicuspidal_seven);
    guard(5, "Diophantine steps", [&] { return diophantine(threads); });
    guard(6, "Hirzebruch genus", hirzebruch);
    guard(7, "graph enumeration", graphs);
    guard(8, "Markov suite", markov_suite);
    guard(9, "Manetti suite", manetti_suite);
    guard(10, "full casework", [&] { return full_casework(threads); });
    guard(11, "BL honesty check", [&] { return bl_honesty(threads); });
    return out;
}

}  // namespace clv::acceptance
