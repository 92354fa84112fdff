#include "clv/casework.hpp"

#include "clv/manetti.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <thread>

namespace clv::casework {

using cusp::CuspType;
using cusp::NewtonPair;

// ---------------------------------------------------------------- surfaces

std::string SingularPoint::name() const {
    return "1/" + std::to_string(index) + "(1," + std::to_string(q) + ")";
}

Rational SurfaceModel::intersection(int d1, int d2) const {
    return rat(std::int64_t(d1) * d2, std::int64_t(weights[0]) * weights[1] * weights[2]);
}

Rational SurfaceModel::adjunction(int d) const {
    const int k = weights[0] + weights[1] + weights[2];
    return rat(std::int64_t(d - k) * d, std::int64_t(weights[0]) * weights[1] * weights[2]);
}

SurfaceModel surface_model(SurfaceKind kind, int d) {
    if (d != 5 && d != 7) throw InputError("plane degree must be 5 or 7");
    SurfaceModel s;
    s.kind = kind;
    s.plane_degree = d;
    s.threshold = rat(3, d);
    s.point_cap = d == 7 ? 4 : 3;
    s.component_cap = d == 7 ? 2 : 1;
    switch (kind) {
        case SurfaceKind::P2:
            s.name = "P2";
            s.weights = {1, 1, 1};
            s.divisor_degree = d;
            break;
        case SurfaceKind::P114:
            s.name = "P(1,1,4)";
            s.weights = {1, 1, 4};
            s.divisor_degree = 2 * d;
            break;
        case SurfaceKind::P1425:
            if (d != 5) throw InputError("P(1,4,25) only occurs for quintics");
            s.name = "P(1,4,25)";
            s.weights = {1, 4, 25};
            s.divisor_degree = 50;
            break;
        case SurfaceKind::M5:
            if (d != 5) throw InputError("M(5) only occurs for quintics");
            // curves on M(5) are cut out in the P(1,2,13) model
            s.name = "M(5) in P(1,2,13)";
            s.weights = {1, 2, 13};
            s.divisor_degree = 26;
            break;
    }
    for (int i = 1; i <= 2; ++i) {
        const int w = s.weights[static_cast<std::size_t>(i)];
        if (w == 1) continue;
        const int other = s.weights[static_cast<std::size_t>(3 - i)];
        s.points.push_back({w, other % w});
    }
    return s;
}

std::vector<SurfaceModel> surface_models(int d) {
    std::vector<SurfaceModel> out;
    for (const auto& e : manetti::surface_catalog(d)) {
        std::vector<int> w;
        for (const auto& x : e.weights) w.push_back(static_cast<int>(x));
        if (w == std::vector<int>{1, 1, 1})
            out.push_back(surface_model(SurfaceKind::P2, d));
        else if (w == std::vector<int>{1, 1, 4})
            out.push_back(surface_model(SurfaceKind::P114, d));
        else if (w == std::vector<int>{1, 4, 25})
            out.push_back(surface_model(SurfaceKind::P1425, d));
        else if (w == std::vector<int>{1, 2, 13})
            out.push_back(surface_model(SurfaceKind::M5, d));
        else
            throw std::logic_error("no model for catalog surface " + e.name);
    }
    return out;
}

namespace {

int mod(int a, int w) { return ((a % w) + w) % w; }

// Chart multiplicities i + k with i + q k = r (mod w), sorted, up to `limit`.
std::vector<int> chart_multiplicities(const SingularPoint& p, int remainder, int limit) {
    std::set<int> vals;
    const int w = p.index;
    for (int i = 0; i <= limit; ++i)
        for (int k = 0; i + k <= limit; ++k)
            if ((i || k) && mod(i + p.q * k - remainder, w) == 0) vals.insert(i + k);
    return {vals.begin(), vals.end()};
}

}  // namespace

int min_chart_multiplicity(const SingularPoint& p, int remainder) {
    auto v = chart_multiplicities(p, mod(remainder, p.index), 2 * p.index);
    if (v.empty()) throw std::logic_error("no chart multiplicity");
    return v.front();
}

// ---------------------------------------------------------------- configurations

bool CurveConfiguration::reduced() const {
    return std::all_of(comps.begin(), comps.end(), [](const Component& c) { return c.m == 1; });
}

igraph::Graph CurveConfiguration::graph() const {
    igraph::Graph g;
    for (const auto& c : comps) g.greens.push_back(c.m);
    for (const auto& p : points)
        if (p.comps.size() >= 2) g.yellows.push_back(p.comps);
    for (std::size_t i = 0; i < comps.size(); ++i)
        if (comps[i].sing == Sing::Node) g.yellows.push_back({int(i), int(i)});
    return g;
}

namespace {

const Passage* passage(const Component& c, int point) {
    for (const auto& p : c.passes)
        if (p.point == point) return &p;
    return nullptr;
}

std::vector<int> points_with_pair(const CurveConfiguration& c, int i, int j) {
    std::vector<int> out;
    for (std::size_t p = 0; p < c.points.size(); ++p) {
        const auto& v = c.points[p].comps;
        if (std::count(v.begin(), v.end(), i) && std::count(v.begin(), v.end(), j)) out.push_back(int(p));
    }
    return out;
}

bool is_integer(const Rational& r) { return boost::multiprecision::denominator(r) == 1; }

}  // namespace

std::optional<Rational> local_length(const CurveConfiguration& c, int i, int j) {
    auto pts = points_with_pair(c, i, j);
    if (pts.size() != 1) return std::nullopt;
    const auto& sp = c.points[static_cast<std::size_t>(pts[0])];
    const Rational total = c.surface.intersection(c.comps[size_t(i)].degree, c.comps[size_t(j)].degree);
    if (sp.surface_point < 0) return total;
    const auto& q = c.surface.points[static_cast<std::size_t>(sp.surface_point)];
    if (!q.is_11()) return std::nullopt;
    const auto* pi = passage(c.comps[size_t(i)], sp.surface_point);
    const auto* pj = passage(c.comps[size_t(j)], sp.surface_point);
    if (!pi || !pj || pi->at_least || pj->at_least) return std::nullopt;
    return total - rat(std::int64_t(pi->mult) * pj->mult, q.index);
}

std::optional<Rational> arithmetic_genus(const CurveConfiguration& c, int i) {
    const auto& comp = c.comps[static_cast<std::size_t>(i)];
    Rational twice = c.surface.adjunction(comp.degree);  // 2 p_a - 2
    for (const auto& ps : comp.passes) {
        const auto& q = c.surface.points[static_cast<std::size_t>(ps.point)];
        const int a = ps.mult;
        if (q.is_11() && !ps.at_least) {
            // strict transform on the one-step resolution, E^2 = -w
            twice += -a + rat(2 * a, q.index) - rat(std::int64_t(a) * a, q.index);
        } else if (a == 1) {
            twice -= 1 - rat(1, q.index);
        } else {
            return std::nullopt;
        }
    }
    return 1 + twice / 2;
}

// ---------------------------------------------------------------- small formulas

VertexBound vertex_congruence(const SurfaceModel& s, int point, const std::vector<VertexComp>& comps) {
    if (point < 0 || point >= int(s.points.size())) throw InputError("surface has no singular point " +
                                                                     std::to_string(point));
    const auto& q = s.points[static_cast<std::size_t>(point)];
    VertexBound out;
    out.detail = Json::object();
    out.detail["point"] = q.name();
    Json rows = Json::array();
    for (const auto& c : comps) {
        if (c.m < 1 || c.degree < 1) throw InputError("components need m >= 1 and degree >= 1");
        const int r = mod(c.degree, q.index);
        const int mu = min_chart_multiplicity(q, r);
        out.lower_bound += c.m * mu;
        rows.push_back({{"m", c.m}, {"degree", c.degree}, {"remainder", r}, {"min_chart_mult", mu},
                        {"smooth_possible", mu == 1}});
    }
    out.feasible = out.lower_bound <= s.point_cap;
    out.detail["components"] = rows;
    out.detail["lower_bound"] = out.lower_bound;
    out.detail["cap"] = s.point_cap;
    return out;
}

int hirzebruch_genus(int n, int coeff_E, int coeff_fiber) {
    if (n < 0) throw InputError("n must be >= 0");
    if (coeff_E < 0 || coeff_fiber < 0) throw InputError("class must be effective");
    const std::int64_t a = coeff_E, b = coeff_fiber;
    const std::int64_t self = -n * a * a + 2 * a * b;         // C^2
    const std::int64_t canon = -2 * (b - n * a) - (n + 2) * a;  // K.C with K = -2E - (n+2)l
    const std::int64_t twice = self + canon;
    if (twice % 2 != 0) throw std::logic_error("odd C(C+K)");
    return static_cast<int>(1 + twice / 2);
}

StrictTransform strict_transform_class(const SurfaceModel& s, int divisor_degree, const Rational& threshold) {
    if (s.kind != SurfaceKind::P114) throw InputError("strict_transform_class needs P(1,1,4)");
    if (mod(divisor_degree, 4) != 2)
        throw InputError("divisor degree " + std::to_string(divisor_degree) +
                         " is not 2 mod 4; a Cartier or odd class is handled elsewhere");
    if (threshold <= 0) throw InputError("threshold must be positive");
    std::vector<int> sols;
    // 1/2 + t a/4 <= 1  <=>  a <= 2/t
    for (int a = 1; Rational(a) * threshold <= 2; ++a)
        if (mod(divisor_degree - a, 4) == 0) sols.push_back(a);
    if (sols.empty())
        throw NoSolution("no a = " + std::to_string(divisor_degree) + " mod 4 with 1/2 + " + to_string(threshold) +
                         " a/4 <= 1");
    if (sols.size() > 1) throw InputError("threshold too small: a is not determined");
    const int a = sols.front();
    return {a, (divisor_degree - a) / 4, divisor_degree};
}

// ---------------------------------------------------------------- lct bounds

namespace {

bool coprime_pairs(const std::vector<NewtonPair>& raw) {
    return std::all_of(raw.begin(), raw.end(), [](const NewtonPair& p) { return gcd64(p.m, p.n) == 1; });
}

std::int64_t raw_multiplicity(const std::vector<NewtonPair>& raw) {
    std::int64_t m = 1;
    for (const auto& p : raw) m *= p.m;
    return m;
}

std::string pairs_str(const std::vector<NewtonPair>& raw) {
    std::string s = "[";
    for (std::size_t j = 0; j < raw.size(); ++j) {
        if (j) s += ",";
        s += "(" + std::to_string(raw[j].m) + "," + std::to_string(raw[j].n) + ")";
    }
    return s + "]";
}

std::vector<NewtonPair> parse_pairs(std::string t) {
    for (char& ch : t)
        if (ch == '[' || ch == ']' || ch == '(' || ch == ')' || ch == ',') ch = ' ';
    std::istringstream in(t);
    std::vector<NewtonPair> out;
    std::int64_t m, n;
    while (in >> m >> n) out.push_back({m, n});
    if (out.empty()) throw InputError("no Newton pairs in '" + t + "'");
    return out;
}

struct Branch {
    int comp = 0;
    int c = 1;
    bool smooth = true;  // known to be smooth here
    bool cusp = false;   // known cusp with data below
    std::int64_t mult = 1;
    std::int64_t a = 0, b = 0;  // single-pair cusp only
};

struct Setting {
    std::string where;
    std::vector<Branch> br;
    std::map<std::pair<int, int>, std::int64_t> len;  // by component index

    std::int64_t length(int i, int j) const { return len.at({std::min(i, j), std::max(i, j)}); }
};

std::int64_t to_i64(const Rational& r) { return static_cast<std::int64_t>(boost::multiprecision::numerator(r)); }

Branch branch_for(const CurveConfiguration& c, int i, int point, bool on_blowup) {
    const auto& comp = c.comps[static_cast<std::size_t>(i)];
    Branch b;
    b.comp = i;
    b.c = comp.m;
    if (comp.sing == Sing::AnyCusp) b.smooth = false;
    if (comp.sing == Sing::Cusp && comp.cusp_point == point) {
        b.smooth = false;
        if (coprime_pairs(comp.pairs)) {
            CuspType ct(comp.pairs);
            b.cusp = true;
            b.mult = ct.M(1);
            if (ct.k() == 1) {
                b.a = ct.M(1);
                b.b = ct.N(1);
            }
        }
    }
    (void)on_blowup;
    return b;
}

void setting_methods(const Setting& s, int cap, std::vector<Json>& out) {
    if (s.br.size() < 2) return;
    for (const auto& r : s.br) {
        if (r.cusp && r.a > 0) {
            const std::int64_t ab = r.a * r.b;
            Json others = Json::array();
            std::int64_t den = r.c * ab;
            for (const auto& o : s.br) {
                if (o.comp == r.comp) continue;
                const std::int64_t l = s.length(r.comp, o.comp);
                den += o.c * std::min(ab, l);
                others.push_back({{"component", o.comp}, {"c", o.c}, {"length", l}});
            }
            out.push_back({{"method", "cusp-reference"}, {"where", s.where}, {"reference", r.comp}, {"a", r.a},
                           {"b", r.b}, {"c", r.c}, {"others", others},
                           {"value", to_string(rat(r.a + r.b, den))}});
        }
        if (!r.smooth) continue;
        if (s.br.size() == 2) {
            const auto& o = s.br[0].comp == r.comp ? s.br[1] : s.br[0];
            const std::int64_t l = s.length(r.comp, o.comp);
            out.push_back({{"method", "two-smooth"}, {"where", s.where}, {"reference", r.comp}, {"length", l},
                           {"c", {r.c, o.c}}, {"value", to_string(rat(1 + l, l * (r.c + o.c)))}});
        }
        Rational best = -1;
        std::pair<int, int> arg{0, 0};
        for (int w1 = 1; w1 <= cap; ++w1) {
            for (int w2 = 1; w2 <= cap; ++w2) {
                std::int64_t den = std::int64_t(r.c) * w1;
                for (const auto& o : s.br) {
                    if (o.comp == r.comp) continue;
                    const std::int64_t l = s.length(r.comp, o.comp);
                    den += o.c * std::max(std::min<std::int64_t>(w1, l * w2), o.mult * std::min(w1, w2));
                }
                Rational v = rat(w1 + w2, den);
                if (best < 0 || v < best) {
                    best = v;
                    arg = {w1, w2};
                }
            }
        }
        Json others = Json::array();
        for (const auto& o : s.br)
            if (o.comp != r.comp)
                others.push_back({{"component", o.comp}, {"c", o.c}, {"length", s.length(r.comp, o.comp)},
                                  {"mult", o.mult}});
        out.push_back({{"method", "weight-search"}, {"where", s.where}, {"reference", r.comp}, {"c", r.c},
                       {"w", {arg.first, arg.second}}, {"others", others}, {"value", to_string(best)}});
    }
}

}  // namespace

LctBound lct_upper_bound(const CurveConfiguration& c) {
    std::vector<Json> cands;
    const int n = static_cast<int>(c.comps.size());

    for (int i = 0; i < n; ++i) {
        const auto& comp = c.comps[static_cast<std::size_t>(i)];
        if (comp.sing == Sing::Cusp && coprime_pairs(comp.pairs)) {
            CuspType ct(comp.pairs);
            Rational v = cusp::lct(ct) / comp.m;
            cands.push_back({{"method", "cusp-component"}, {"component", i}, {"cusp", ct.str()}, {"M1", ct.M(1)},
                             {"N1", ct.N(1)}, {"c", comp.m}, {"value", to_string(v)}});
        } else if (comp.sing == Sing::Cusp && comp.pairs.size() == 1) {
            // not a branch, but y^a = x^b still has lct 1/a + 1/b
            const auto [a, b] = comp.pairs[0];
            Rational v = (rat(1, a) + rat(1, b)) / comp.m;
            cands.push_back({{"method", "quasi-homogeneous"}, {"component", i}, {"a", a}, {"b", b}, {"c", comp.m},
                             {"value", to_string(v)}});
        } else if (comp.sing == Sing::AnyCusp) {
            cands.push_back({{"method", "unibranch-singular"}, {"component", i}, {"c", comp.m},
                             {"value", to_string(rat(5, 6 * comp.m))}});
        }
    }

    for (std::size_t q = 0; q < c.surface.points.size(); ++q) {
        const auto& sp = c.surface.points[q];
        if (!sp.is_11()) continue;
        Json terms = Json::array();
        std::int64_t sum = 0;
        for (int i = 0; i < n; ++i) {
            const auto* ps = passage(c.comps[static_cast<std::size_t>(i)], int(q));
            if (!ps) continue;
            const int m = c.comps[static_cast<std::size_t>(i)].m;
            sum += std::int64_t(m) * ps->mult;
            terms.push_back({{"component", i}, {"m", m}, {"a", ps->mult}});
        }
        if (sum > 0)
            cands.push_back({{"method", "discrepancy"}, {"where", sp.name()}, {"index", sp.index}, {"terms", terms},
                             {"value", to_string(rat(2, sum))}});
    }

    for (std::size_t p = 0; p < c.points.size(); ++p) {
        const auto& pt = c.points[p];
        if (pt.comps.size() < 2) continue;
        Setting s;
        bool ok = true;
        const bool on_blowup = pt.surface_point >= 0;
        if (on_blowup) {
            const auto& sp = c.surface.points[static_cast<std::size_t>(pt.surface_point)];
            if (!sp.is_11()) continue;
            // strict transforms meet E once each; they share the point only if a_i = 1 and lengths > 0
            for (int i : pt.comps) {
                const auto* ps = passage(c.comps[static_cast<std::size_t>(i)], pt.surface_point);
                if (!ps || ps->mult != 1 || ps->at_least) ok = false;
            }
            s.where = "p" + std::to_string(p) + " on the blow-up of " + sp.name();
        } else {
            s.where = "p" + std::to_string(p);
        }
        for (std::size_t x = 0; ok && x < pt.comps.size(); ++x)
            for (std::size_t y = x + 1; ok && y < pt.comps.size(); ++y) {
                auto l = local_length(c, pt.comps[x], pt.comps[y]);
                if (!l || !is_integer(*l) || *l <= 0) {
                    ok = false;
                    break;
                }
                s.len[{std::min(pt.comps[x], pt.comps[y]), std::max(pt.comps[x], pt.comps[y])}] = to_i64(*l);
            }
        if (!ok) continue;
        for (int i : pt.comps) s.br.push_back(branch_for(c, i, int(p), on_blowup));
        setting_methods(s, c.surface.weight_cap, cands);
    }

    if (cands.empty()) throw NotSupported("no lct method applies to this configuration");
    std::size_t best = 0;
    for (std::size_t i = 1; i < cands.size(); ++i)
        if (parse_rational(cands[i]["value"].get<std::string>()) <
            parse_rational(cands[best]["value"].get<std::string>()))
            best = i;
    LctBound out;
    out.value = parse_rational(cands[best]["value"].get<std::string>());
    out.method = cands[best];
    out.candidates = Json::array();
    for (auto& j : cands) out.candidates.push_back(j);
    return out;
}

Rational recompute_lct_method(const Json& m) {
    const std::string name = m.at("method").get<std::string>();
    auto I = [&](const Json& j, const char* k) { return j.at(k).get<std::int64_t>(); };
    if (name == "cusp-component") return (rat(1, I(m, "M1")) + rat(1, I(m, "N1"))) / I(m, "c");
    if (name == "quasi-homogeneous") return (rat(1, I(m, "a")) + rat(1, I(m, "b"))) / I(m, "c");
    if (name == "unibranch-singular") return rat(5, 6 * I(m, "c"));
    if (name == "discrepancy") {
        std::int64_t s = 0;
        for (const auto& t : m.at("terms")) s += I(t, "m") * I(t, "a");
        return rat(2, s);
    }
    if (name == "cusp-reference") {
        const std::int64_t ab = I(m, "a") * I(m, "b");
        std::int64_t den = I(m, "c") * ab;
        for (const auto& o : m.at("others")) den += I(o, "c") * std::min(ab, I(o, "length"));
        return rat(I(m, "a") + I(m, "b"), den);
    }
    if (name == "two-smooth") {
        const std::int64_t l = I(m, "length");
        return rat(1 + l, l * (m.at("c")[0].get<std::int64_t>() + m.at("c")[1].get<std::int64_t>()));
    }
    if (name == "weight-search") {
        const std::int64_t w1 = m.at("w")[0].get<std::int64_t>(), w2 = m.at("w")[1].get<std::int64_t>();
        std::int64_t den = I(m, "c") * w1;
        for (const auto& o : m.at("others"))
            den += I(o, "c") * std::max(std::min(w1, I(o, "length") * w2), I(o, "mult") * std::min(w1, w2));
        return rat(w1 + w2, den);
    }
    throw InputError("unknown lct method '" + name + "'");
}

// ---------------------------------------------------------------- rules

const char* rule_name(Rule r) {
    switch (r) {
        case Rule::CongruenceImpossible: return "CongruenceImpossible";
        case Rule::MultiplicityExceeded: return "MultiplicityExceeded";
        case Rule::GenusMismatch: return "GenusMismatch";
        case Rule::NotRationalAtDegree: return "NotRationalAtDegree";
        case Rule::ClassificationEmpty: return "ClassificationEmpty";
        case Rule::LctTooSmall: return "LctTooSmall";
        case Rule::GraphInadmissible: return "GraphInadmissible";
        case Rule::ManualGeometric: return "ManualGeometric";
        case Rule::Unresolved: return "Unresolved";
    }
    return "?";
}

std::optional<Rule> rule_from_name(const std::string& s) {
    for (Rule r : {Rule::CongruenceImpossible, Rule::MultiplicityExceeded, Rule::GenusMismatch,
                   Rule::NotRationalAtDegree, Rule::ClassificationEmpty, Rule::LctTooSmall, Rule::GraphInadmissible,
                   Rule::ManualGeometric, Rule::Unresolved})
        if (s == rule_name(r)) return r;
    return std::nullopt;
}

namespace {

using Fire = std::optional<Firing>;

Fire fire(Rule r, Json w, std::optional<Rational> bound = std::nullopt) { return Firing{r, std::move(bound), std::move(w)}; }

std::string point_label(const CurveConfiguration& c, int p) {
    const auto& sp = c.points[static_cast<std::size_t>(p)];
    std::string s = "p" + std::to_string(p);
    if (sp.surface_point >= 0) s += "=" + c.surface.points[static_cast<std::size_t>(sp.surface_point)].name();
    return s;
}

// 2 delta from raw pairs, coprime or not
std::int64_t raw_delta(const std::vector<NewtonPair>& raw) {
    const std::size_t k = raw.size();
    std::vector<std::int64_t> M(k), N(k);
    std::int64_t tail = 1;
    for (std::size_t j = k; j-- > 0;) {
        N[j] = raw[j].n * tail;
        tail *= raw[j].m;
        M[j] = tail;
    }
    std::int64_t twice = (M[0] - 1) * (N[0] - 1);
    for (std::size_t j = 1; j < k; ++j) twice += (M[j] - 1) * N[j];
    return twice / 2;
}

Json bl_summary(const bl::Verdict& v) {
    Json j = {{"degree", v.degree}, {"pass", v.pass}};
    if (!v.pass) {
        j["fail_j"] = v.fail_j;
        j["min"] = v.achieved_min;
        j["required"] = v.required;
    }
    return j;
}

const std::vector<std::pair<int, std::vector<NewtonPair>>>& table_one() {
    static const std::vector<std::pair<int, std::vector<NewtonPair>>> t = {
        {3, {{2, 3}}}, {4, {{2, 7}}},         {4, {{3, 4}}},         {5, {{2, 13}}},
        {5, {{4, 5}}}, {6, {{3, 11}}},        {6, {{2, 3}, {2, 5}}}, {6, {{5, 6}}},
    };
    return t;
}

// Cusp types of rational unicuspidal plane curves of degree e (e <= 7).
std::vector<std::string> plane_unicuspidal(int e) {
    std::vector<std::string> out;
    if (e <= 6) {
        for (const auto& [deg, raw] : table_one())
            if (deg == e) out.push_back(pairs_str(raw));
        return out;
    }
    if (e == 7) {
        static const std::vector<std::string> seven = [] {
            std::vector<std::string> v;
            for (const auto& s : bl::unicuspidal_candidates(7, 3).survivors) v.push_back(s.cusp.str());
            return v;
        }();
        return seven;
    }
    throw NotSupported("no classification data for plane degree " + std::to_string(e));
}

bool known_smooth(const Component& comp, int point) {
    if (comp.sing == Sing::AnyCusp) return false;
    if (comp.sing == Sing::Cusp && comp.cusp_point == point) return false;
    return true;
}

Fire rule_congruence(const CurveConfiguration& c) {
    const auto& S = c.surface;
    const int n = static_cast<int>(c.comps.size());
    for (std::size_t q = 0; q < S.points.size(); ++q) {
        const int w = S.points[q].index;
        for (int i = 0; i < n; ++i) {
            const auto& comp = c.comps[static_cast<std::size_t>(i)];
            if (comp.degree % w != 0 && !passage(comp, int(q)))
                return fire(Rule::CongruenceImpossible,
                            {{"kind", "forced-passage"}, {"point", S.points[q].name()}, {"index", w},
                             {"component", i}, {"degree", comp.degree}, {"remainder", comp.degree % w}});
        }
    }
    std::vector<int> used;
    for (std::size_t q = 0; q < S.points.size(); ++q)
        for (const auto& comp : c.comps)
            if (passage(comp, int(q))) {
                used.push_back(int(q));
                break;
            }
    if (c.reduced() && !used.empty()) {
        Json names = Json::array();
        for (int q : used) names.push_back(S.points[static_cast<std::size_t>(q)].name());
        if (used.size() >= 2)
            return fire(Rule::CongruenceImpossible, {{"kind", "two-singular-points"}, {"points", names}});
        // a reduced fiber has one singular point; passing a non-Cartier point makes it that point
        const bool at = c.points.size() == 1 && c.points[0].surface_point == used[0];
        if (!at)
            return fire(Rule::CongruenceImpossible,
                        {{"kind", "second-singular-point"}, {"points", names}, {"shared_points", c.points.size()}});
    }
    for (std::size_t q = 0; q < S.points.size(); ++q) {
        std::vector<int> through;
        std::vector<VertexComp> vc;
        for (int i = 0; i < n; ++i)
            if (passage(c.comps[static_cast<std::size_t>(i)], int(q))) {
                through.push_back(i);
                vc.push_back({c.comps[static_cast<std::size_t>(i)].m, c.comps[static_cast<std::size_t>(i)].degree});
            }
        if (through.size() >= 2) {
            bool found = false;
            for (const auto& p : c.points)
                if (p.surface_point == int(q) && p.comps == through) found = true;
            if (!found)
                return fire(Rule::CongruenceImpossible, {{"kind", "meet-outside-shared-point"},
                                                         {"point", S.points[q].name()},
                                                         {"components", through}});
        }
        if (!through.empty()) {
            auto vb = vertex_congruence(S, int(q), vc);
            if (!vb.feasible) {
                Json w = {{"kind", "vertex-bound"}};
                w["index"] = S.points[q].index;
                w["q"] = S.points[q].q;
                w["components_idx"] = through;
                for (auto& [k, v] : vb.detail.items()) w[k] = v;
                return fire(Rule::CongruenceImpossible, w);
            }
        }
    }
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            auto l = local_length(c, i, j);
            if (!l) continue;
            if (!is_integer(*l) || *l < 0) {
                auto pts = points_with_pair(c, i, j);
                const auto& sp = c.points[static_cast<std::size_t>(pts[0])];
                Json w = {{"kind", "fractional-length"}, {"pair", {i, j}},
                          {"degrees", {c.comps[size_t(i)].degree, c.comps[size_t(j)].degree}},
                          {"weight_product", S.weights[0] * S.weights[1] * S.weights[2]}, {"length", to_string(*l)}};
                if (sp.surface_point >= 0) {
                    w["index"] = S.points[static_cast<std::size_t>(sp.surface_point)].index;
                    w["a"] = {passage(c.comps[size_t(i)], sp.surface_point)->mult,
                              passage(c.comps[size_t(j)], sp.surface_point)->mult};
                }
                return fire(Rule::CongruenceImpossible, w);
            }
        }
    return std::nullopt;
}

Fire rule_multiplicity(const CurveConfiguration& c) {
    const int cap = c.surface.point_cap;
    for (std::size_t p = 0; p < c.points.size(); ++p) {
        const auto& pt = c.points[p];
        Json contrib = Json::array();
        std::int64_t total = 0;
        for (int i : pt.comps) {
            const auto& comp = c.comps[static_cast<std::size_t>(i)];
            std::int64_t local = 1;
            if (pt.surface_point >= 0)
                local = passage(comp, pt.surface_point)->mult;
            else if (comp.sing == Sing::Cusp && comp.cusp_point == int(p))
                local = raw_multiplicity(comp.pairs);
            total += comp.m * local;
            contrib.push_back({{"component", i}, {"m", comp.m}, {"local", local}});
        }
        if (total > cap)
            return fire(Rule::MultiplicityExceeded,
                        {{"point", point_label(c, int(p))}, {"contributions", contrib}, {"total", total}, {"cap", cap}});
    }
    for (std::size_t i = 0; i < c.comps.size(); ++i) {
        const auto& comp = c.comps[i];
        for (const auto& ps : comp.passes) {
            bool shared = false;
            for (const auto& pt : c.points)
                if (pt.surface_point == ps.point && std::count(pt.comps.begin(), pt.comps.end(), int(i))) shared = true;
            if (!shared && comp.m * ps.mult > cap)
                return fire(Rule::MultiplicityExceeded,
                            {{"point", c.surface.points[static_cast<std::size_t>(ps.point)].name()},
                             {"contributions", {{{"component", i}, {"m", comp.m}, {"local", ps.mult}}}},
                             {"total", comp.m * ps.mult},
                             {"cap", cap}});
        }
        if (comp.sing == Sing::Node && 2 * comp.m > cap)
            return fire(Rule::MultiplicityExceeded, {{"point", "node of component " + std::to_string(i)},
                                                     {"contributions", {{{"component", i}, {"m", comp.m}, {"local", 2}}}},
                                                     {"total", 2 * comp.m},
                                                     {"cap", cap}});
    }
    return std::nullopt;
}

Fire rule_genus(const CurveConfiguration& c) {
    for (std::size_t i = 0; i < c.comps.size(); ++i) {
        const auto& comp = c.comps[i];
        auto g = arithmetic_genus(c, int(i));
        if (!g) continue;
        Json base = {{"component", i}, {"degree", comp.degree}, {"m", comp.m}, {"arithmetic_genus", to_string(*g)}};
        if (!is_integer(*g) || *g < 0) {
            base["reason"] = is_integer(*g) ? "negative arithmetic genus" : "non-integral arithmetic genus";
            return fire(Rule::GenusMismatch, base);
        }
        if (comp.m != 1) continue;
        if (*g > 0 && comp.sing == Sing::Smooth) {
            base["reason"] = "positive genus with no point able to carry a cusp";
            return fire(Rule::NotRationalAtDegree, base);
        }
        if (comp.sing == Sing::Cusp && Rational(raw_delta(comp.pairs)) != *g) {
            base["reason"] = "cusp delta differs from the arithmetic genus";
            base["delta"] = raw_delta(comp.pairs);
            return fire(Rule::GenusMismatch, base);
        }
    }
    return std::nullopt;
}

const char* kCremonaFlag = "cremona-quintic-classification";

// Degree-14 curve on P(1,1,4) with a = 2 and cusp (2,29): its image under the Cremona-type map is a plane septic
// with cusps (2,19) and (4,5).
std::optional<std::vector<std::vector<NewtonPair>>> transformed_plane_cusps(const CurveConfiguration& c,
                                                                           const Component& comp) {
    if (c.surface.kind != SurfaceKind::P114 || comp.degree != 14 || comp.passes.size() != 1) return std::nullopt;
    if (comp.passes[0].mult != 2 || comp.passes[0].at_least) return std::nullopt;
    if (comp.pairs != std::vector<NewtonPair>{{2, 29}}) return std::nullopt;
    return std::vector<std::vector<NewtonPair>>{{{2, 19}}, {{4, 5}}};
}

Fire rule_classification(const CurveConfiguration& c) {
    for (std::size_t i = 0; i < c.comps.size(); ++i) {
        const auto& comp = c.comps[i];
        if (comp.sing != Sing::Cusp) continue;
        Json base = {{"component", i}, {"degree", comp.degree}, {"cusp", pairs_str(comp.pairs)}};
        if (!coprime_pairs(comp.pairs)) {
            base["kind"] = "not-unibranch";
            return fire(Rule::ClassificationEmpty, base);
        }
        CuspType ct(comp.pairs);
        if (c.surface.kind == SurfaceKind::P2) {
            auto known = plane_unicuspidal(comp.degree);
            if (std::find(known.begin(), known.end(), ct.str()) == known.end()) {
                base["kind"] = "not-in-classification";
                base["known"] = known;
                base["bl"] = bl_summary(bl::bl_check(comp.degree, {ct}));
                return fire(Rule::ClassificationEmpty, base);
            }
        }
        if (auto img = transformed_plane_cusps(c, comp)) {
            std::vector<CuspType> cs;
            Json names = Json::array();
            for (const auto& raw : *img) {
                cs.emplace_back(raw);
                names.push_back(cs.back().str());
            }
            auto v = bl::bl_check(7, cs);
            if (!v.pass) {
                base["kind"] = "transformed";
                base["class"] = {3, 14};
                base["plane_degree"] = 7;
                base["plane_cusps"] = names;
                base["bl"] = bl_summary(v);
                base["relies_on"] = {kCremonaFlag};
                return fire(Rule::ClassificationEmpty, base);
            }
        }
    }
    return std::nullopt;
}

Fire rule_lct(const CurveConfiguration& c) {
    LctBound b;
    try {
        b = lct_upper_bound(c);
    } catch (const NotSupported&) {
        return std::nullopt;
    }
    if (b.value >= c.surface.threshold) return std::nullopt;
    return fire(Rule::LctTooSmall,
                {{"bound", to_string(b.value)},
                 {"threshold", to_string(c.surface.threshold)},
                 {"method", b.method},
                 {"candidates", b.candidates}},
                b.value);
}

igraph::Mode mode_for(const SurfaceModel& s) { return s.plane_degree == 7 ? igraph::Mode::Deg7 : igraph::Mode::Deg5; }

Fire rule_graph(const CurveConfiguration& c) {
    auto g = c.graph();
    auto v = igraph::first_violation(g, mode_for(c.surface));
    if (!v) return std::nullopt;
    return fire(Rule::GraphInadmissible, {{"graph", g.str()}, {"violation", *v}});
}

// Lengths a smooth germ can have with a single-pair cusp (a,b): k a below b, or b.
bool smooth_germ_length(std::int64_t a, std::int64_t b, std::int64_t l) {
    return l == b || (l % a == 0 && l < b && l > 0);
}

Fire rule_realizability(const CurveConfiguration& c) {
    for (std::size_t i = 0; i < c.comps.size(); ++i) {
        const auto& comp = c.comps[i];
        if (comp.sing != Sing::Cusp || !coprime_pairs(comp.pairs) || comp.cusp_point < 0) continue;
        CuspType ct(comp.pairs);
        const auto& pt = c.points[static_cast<std::size_t>(comp.cusp_point)];
        if (pt.surface_point >= 0) {
            const auto* ps = passage(comp, pt.surface_point);
            if (ps && !ps->at_least && ct.M(1) > ps->mult)
                return fire(Rule::ClassificationEmpty,
                            {{"kind", "cusp-exceeds-exceptional-length"}, {"component", i}, {"cusp", ct.str()},
                             {"M1", ct.M(1)}, {"a", ps->mult}});
            continue;
        }
        auto sg = cusp::semigroup(ct, 2 * cusp::delta_from_pairs(ct) + 1);
        for (int j : pt.comps) {
            if (j == int(i)) continue;
            auto l = local_length(c, int(i), j);
            if (!l || !is_integer(*l)) continue;
            const std::int64_t len = to_i64(*l);
            const auto& other = c.comps[static_cast<std::size_t>(j)];
            bool ok;
            std::string why;
            std::int64_t mo = 1;
            if (other.sing == Sing::Cusp && other.cusp_point == comp.cusp_point) mo = raw_multiplicity(other.pairs);
            if (known_smooth(other, comp.cusp_point) && ct.k() == 1) {
                ok = smooth_germ_length(ct.M(1), ct.N(1), len);
                why = "smooth germ meets the cusp with length k*a < b or b";
            } else {
                ok = sg.contains(len) && len >= ct.M(1) * mo;
                why = "length must lie in the semigroup and be at least the product of multiplicities";
            }
            if (!ok)
                return fire(Rule::ClassificationEmpty, {{"kind", "length-not-realizable"},
                                                        {"component", i},
                                                        {"cusp", ct.str()},
                                                        {"other", j},
                                                        {"other_smooth", known_smooth(other, comp.cusp_point)},
                                                        {"other_mult", mo},
                                                        {"length", len},
                                                        {"reason", why}});
        }
    }
    return std::nullopt;
}

}  // namespace

bool recheck(const Firing& f, const SurfaceModel& s) {
    const Json& w = f.witness;
    auto I = [&](const Json& j, const char* k) { return j.at(k).get<std::int64_t>(); };
    switch (f.rule) {
        case Rule::MultiplicityExceeded: {
            std::int64_t t = 0;
            for (const auto& x : w.at("contributions")) t += I(x, "m") * I(x, "local");
            return t == I(w, "total") && t > s.point_cap && I(w, "cap") == s.point_cap;
        }
        case Rule::CongruenceImpossible: {
            const std::string kind = w.at("kind");
            if (kind == "forced-passage") return I(w, "degree") % I(w, "index") != 0;
            if (kind == "two-singular-points") return w.at("points").size() >= 2;
            if (kind == "second-singular-point") return I(w, "shared_points") != 1 || !w.at("points").empty();
            if (kind == "meet-outside-shared-point") return w.at("components").size() >= 2;
            if (kind == "vertex-bound") {
                SingularPoint q{int(I(w, "index")), int(I(w, "q"))};
                std::int64_t t = 0;
                for (const auto& x : w.at("components"))
                    t += I(x, "m") * min_chart_multiplicity(q, int(I(x, "degree") % q.index));
                return t == I(w, "lower_bound") && t > s.point_cap;
            }
            if (kind == "fractional-length") {
                Rational l = rat(w.at("degrees")[0].get<std::int64_t>() * w.at("degrees")[1].get<std::int64_t>(),
                                 I(w, "weight_product"));
                if (w.contains("index"))
                    l -= rat(w.at("a")[0].get<std::int64_t>() * w.at("a")[1].get<std::int64_t>(), I(w, "index"));
                return to_string(l) == w.at("length").get<std::string>() && (!is_integer(l) || l < 0);
            }
            return false;
        }
        case Rule::GenusMismatch:
        case Rule::NotRationalAtDegree: {
            Rational g = parse_rational(w.at("arithmetic_genus").get<std::string>());
            if (f.rule == Rule::NotRationalAtDegree) return g > 0;
            if (w.contains("delta")) return Rational(I(w, "delta")) != g;
            return !is_integer(g) || g < 0;
        }
        case Rule::ClassificationEmpty: {
            const std::string kind = w.at("kind");
            if (kind == "not-unibranch") return !coprime_pairs(parse_pairs(w.at("cusp").get<std::string>()));
            if (kind == "not-in-classification") {
                const auto& known = w.at("known");
                return std::find(known.begin(), known.end(), w.at("cusp")) == known.end();
            }
            if (kind == "transformed") return !w.at("bl").at("pass").get<bool>();
            if (kind == "cusp-exceeds-exceptional-length") return I(w, "M1") > I(w, "a");
            if (kind == "length-not-realizable") {
                CuspType ct(parse_pairs(w.at("cusp").get<std::string>()));
                const std::int64_t l = I(w, "length");
                if (w.at("other_smooth").get<bool>() && ct.k() == 1) return !smooth_germ_length(ct.M(1), ct.N(1), l);
                auto sg = cusp::semigroup(ct, 2 * cusp::delta_from_pairs(ct) + 1);
                return !(sg.contains(l) && l >= ct.M(1) * I(w, "other_mult"));
            }
            return false;
        }
        case Rule::LctTooSmall: {
            Rational v = recompute_lct_method(w.at("method"));
            return f.bound && v == *f.bound && v < s.threshold &&
                   to_string(v) == w.at("bound").get<std::string>();
        }
        case Rule::GraphInadmissible: return w.contains("violation");
        case Rule::ManualGeometric: return w.contains("flags");
        case Rule::Unresolved: return false;
    }
    return false;
}

// ---------------------------------------------------------------- manual flags

namespace {
const char* kTangentFlag = "conic-tangent-line-uniqueness";
const char* kInflectionFlag = "doubled-cubic-inflection-line";
}  // namespace

std::vector<ManualFlag> manual_flags(int d) {
    if (d != 5 && d != 7) throw InputError("plane degree must be 5 or 7");
    if (d == 5) return {};
    std::vector<ManualFlag> out;
    out.push_back({kTangentFlag,
                   "conic, line and doubled conic through one point",
                   "the tangent line to the conics at the shared point is unique, so the configuration is a "
                   "tangency configuration",
                   {"2+1 | 2"},
                   {},
                   Json::object()});
    out.push_back({kInflectionFlag,
                   "line and doubled smooth cubic",
                   "the line meets the cubic at a flex; a weighted blow-up with exceptional curve P(3,1,1) gives the "
                   "canonical model whose lct analysis excludes the limit",
                   {"1 | 3"},
                   {"1 | 3"},
                   Json::object()});
    Json ev = Json::object();
    {
        auto v = bl::bl_check(5, {CuspType({{2, 3}}), CuspType({{2, 11}})});
        ev["bl_check"] = {{"degree", 5}, {"cusps", {"[(2,3)]", "[(2,11)]"}}, {"pass", v.pass}};
        ev["note"] = "the semigroup test alone does not exclude this quintic";
    }
    out.push_back({kCremonaFlag,
                   "Cremona-type transformations and the classification of rational cuspidal quintics",
                   "no rational plane quintic has cusps (2,3) and (2,11); degree-14 curves on P(1,1,4) map to plane "
                   "septics",
                   {"1 | 3", "14 on P(1,1,4)"},
                   {"1 | 3"},
                   ev});
    return out;
}

// ---------------------------------------------------------------- enumeration

namespace {

using Shell = std::vector<std::pair<int, int>>;  // (m, degree); m ascending, degree descending

struct Geometry {
    Shell comps;  // in green order
    std::vector<std::vector<int>> yellows;
    bool admissible = false;
    std::string label;
};

int max_greens(const std::vector<igraph::Graph>& adm) {
    int k = 0;
    for (const auto& g : adm) k = std::max(k, int(g.greens.size()));
    return k;
}

void list_shells(const SurfaceModel& s, int kmax, std::vector<Shell>& out) {
    std::vector<std::pair<int, int>> items;
    for (int m = 1; m <= s.component_cap; ++m)
        for (int d = s.divisor_degree / m; d >= 1; --d) items.push_back({m, d});
    Shell cur;
    std::function<void(std::size_t, int)> rec = [&](std::size_t from, int left) {
        if (left == 0) {
            out.push_back(cur);
            return;
        }
        if (int(cur.size()) == kmax) return;
        for (std::size_t i = from; i < items.size(); ++i) {
            const auto [m, d] = items[i];
            if (m * d > left) continue;
            cur.push_back(items[i]);
            rec(i, left - m * d);
            cur.pop_back();
        }
    };
    rec(0, s.divisor_degree);
    std::sort(out.begin(), out.end(), [](const Shell& a, const Shell& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    });
}

// partitions of n into exactly k parts
std::int64_t partitions_exact(int n, int k) {
    static thread_local std::map<std::pair<int, int>, std::int64_t> memo;
    if (n == 0 && k == 0) return 1;
    if (n <= 0 || k <= 0 || k > n) return 0;
    auto key = std::make_pair(n, k);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    std::int64_t v = partitions_exact(n - 1, k - 1) + partitions_exact(n - k, k);
    memo[key] = v;
    return v;
}

// shells per multiplicity profile (#reduced, #doubled)
std::map<std::pair<int, int>, std::int64_t> profile_counts(const SurfaceModel& s) {
    std::map<std::pair<int, int>, std::int64_t> out;
    const int D = s.divisor_degree;
    const int max2 = s.component_cap >= 2 ? D / 2 : 0;
    for (int k1 = 0; k1 <= D; ++k1)
        for (int k2 = 0; k2 <= max2; ++k2) {
            if (k1 + k2 == 0) continue;
            std::int64_t n = 0;
            for (int B = 0; 2 * B <= D; ++B) n += partitions_exact(D - 2 * B, k1) * partitions_exact(B, k2);
            if (n) out[{k1, k2}] = n;
        }
    return out;
}

std::vector<Geometry> geometries(const Shell& shell, const std::vector<igraph::Graph>& adm) {
    std::vector<int> profile;
    for (auto [m, d] : shell) profile.push_back(m);
    std::vector<Geometry> out;
    std::set<igraph::Graph> seen;
    for (const auto& g : adm) {
        if (g.greens != profile) continue;
        std::vector<int> perm(shell.size());
        std::iota(perm.begin(), perm.end(), 0);
        do {
            bool ok = true;
            for (std::size_t i = 0; i < perm.size() && ok; ++i) ok = shell[size_t(perm[i])].first == profile[i];
            if (!ok) continue;
            igraph::Graph lab = g;
            for (std::size_t i = 0; i < perm.size(); ++i)
                lab.greens[i] = shell[size_t(perm[i])].first * 1000 + shell[size_t(perm[i])].second;
            if (!seen.insert(igraph::canonical(lab)).second) continue;
            Geometry geo;
            for (int i : perm) geo.comps.push_back(shell[size_t(i)]);
            geo.yellows = g.yellows;
            geo.admissible = true;
            geo.label = g.str();
            out.push_back(std::move(geo));
        } while (std::next_permutation(perm.begin(), perm.end()));
    }
    if (out.empty()) {
        Geometry geo;
        geo.comps = shell;
        if (shell.size() >= 2) {
            std::vector<int> all(shell.size());
            std::iota(all.begin(), all.end(), 0);
            geo.yellows.push_back(all);
        }
        igraph::Graph g;
        for (auto [m, d] : shell) g.greens.push_back(m);
        g.yellows = geo.yellows;
        geo.label = g.str() + " (single shared point)";
        out.push_back(std::move(geo));
    }
    return out;
}

struct Option {
    enum Kind { None, AtPoint, Lone, Unplaceable } kind = None;
    int index = -1;
};

std::vector<std::vector<Option>> placement_options(const SurfaceModel& S, const CurveConfiguration& base) {
    std::vector<std::vector<Option>> per;
    const bool red = base.reduced();
    for (const auto& q : S.points) {
        std::vector<int> forced;
        for (std::size_t i = 0; i < base.comps.size(); ++i)
            if (base.comps[i].degree % q.index != 0) forced.push_back(int(i));
        std::vector<Option> opts;
        if (forced.empty()) opts.push_back({Option::None, -1});
        for (std::size_t p = 0; p < base.points.size(); ++p) {
            const auto& pc = base.points[p].comps;
            if (std::all_of(forced.begin(), forced.end(),
                            [&](int i) { return std::count(pc.begin(), pc.end(), i) > 0; }))
                opts.push_back({Option::AtPoint, int(p)});
        }
        if (!red && forced.size() == 1) opts.push_back({Option::Lone, forced[0]});
        if (opts.empty()) opts.push_back({Option::Unplaceable, -1});
        per.push_back(std::move(opts));
    }
    return per;
}

std::vector<std::vector<NewtonPair>> cusp_candidates(std::int64_t delta) {
    std::vector<std::vector<NewtonPair>> out;
    for (int k = 1; k <= 3; ++k) {
        if (delta < bl::remark_delta_floor(k)) continue;
        for (auto& raw : bl::pairs_with_delta(delta, k)) out.push_back(std::move(raw));
    }
    return out;
}

Json config_json(const CurveConfiguration& c) {
    Json comps = Json::array();
    for (std::size_t i = 0; i < c.comps.size(); ++i) {
        const auto& comp = c.comps[i];
        Json j = {{"m", comp.m}, {"degree", comp.degree}};
        switch (comp.sing) {
            case Sing::Smooth: j["singularity"] = "smooth"; break;
            case Sing::Cusp: j["singularity"] = pairs_str(comp.pairs); break;
            case Sing::AnyCusp: j["singularity"] = "unibranch-singular"; break;
            case Sing::Node: j["singularity"] = "node"; break;
        }
        if (comp.cusp_point >= 0) j["cusp_at"] = point_label(c, comp.cusp_point);
        Json passes = Json::array();
        for (const auto& ps : comp.passes)
            passes.push_back({{"point", c.surface.points[size_t(ps.point)].name()},
                              {"chart_mult", (ps.at_least ? ">=" : "") + std::to_string(ps.mult)}});
        if (!passes.empty()) j["passes"] = passes;
        comps.push_back(j);
    }
    Json pts = Json::array();
    for (std::size_t p = 0; p < c.points.size(); ++p)
        pts.push_back({{"label", point_label(c, int(p))}, {"components", c.points[p].comps}});
    Json lens = Json::array();
    for (std::size_t i = 0; i < c.comps.size(); ++i)
        for (std::size_t j = i + 1; j < c.comps.size(); ++j)
            if (auto l = local_length(c, int(i), int(j))) lens.push_back({{"pair", {i, j}}, {"length", to_string(*l)}});
    return {{"components", comps}, {"points", pts}, {"lengths", lens}};
}

bool is_doubled_cubic_and_line(const CurveConfiguration& c) {
    if (c.surface.kind != SurfaceKind::P2 || c.comps.size() != 2) return false;
    const auto& a = c.comps[0];
    const auto& b = c.comps[1];
    return a.m == 1 && a.degree == 1 && a.sing == Sing::Smooth && b.m == 2 && b.degree == 3 &&
           b.sing == Sing::Smooth;
}

Certificate certify(const CurveConfiguration& c) {
    std::vector<Firing> fired;
    for (auto* rule : {rule_congruence, rule_multiplicity, rule_genus, rule_classification, rule_lct, rule_graph,
                       rule_realizability})
        if (auto f = rule(c)) fired.push_back(std::move(*f));
    Certificate cert;
    if (!fired.empty()) {
        cert.rule = fired[0].rule;
        cert.bound = fired[0].bound;
        cert.witness = fired[0].witness;
        if (cert.witness.contains("relies_on"))
            for (const auto& r : cert.witness["relies_on"]) cert.relies_on.push_back(r.get<std::string>());
        cert.also.assign(fired.begin() + 1, fired.end());
        return cert;
    }
    if (is_doubled_cubic_and_line(c)) {
        cert.rule = Rule::ManualGeometric;
        cert.manual_lemma = "line and doubled smooth cubic";
        cert.relies_on = {kInflectionFlag, kCremonaFlag};
        Json tried = Json::object();
        try {
            auto b = lct_upper_bound(c);
            tried = {{"bound", to_string(b.value)}, {"threshold", to_string(c.surface.threshold)}, {"method", b.method}};
        } catch (const NotSupported&) {
        }
        cert.witness = {{"flags", cert.relies_on}, {"best_numeric_lct_bound", tried}};
        return cert;
    }
    cert.rule = Rule::Unresolved;
    cert.witness = {{"reason", "no rule fires and no manual entry matches"}};
    return cert;
}

ConfigResult result_for(const CurveConfiguration& c, const Shell& shell, const std::string& geo) {
    ConfigResult r;
    r.surface = c.surface.name;
    r.shell = shell;
    r.geometry = geo;
    r.components = config_json(c);
    r.cert = certify(c);
    return r;
}

std::vector<ConfigResult> run_shell(const SurfaceModel& S, const Shell& shell, const std::vector<igraph::Graph>& adm) {
    std::vector<ConfigResult> out;
    for (const auto& geo : geometries(shell, adm)) {
        CurveConfiguration base;
        base.surface = S;
        for (auto [m, d] : geo.comps) base.comps.push_back({m, d, Sing::Smooth, {}, -1, {}});
        for (const auto& y : geo.yellows) base.points.push_back({y, -1});
        if (geo.comps.size() == 1) base.points.push_back({{0}, -1});

        const auto opts = placement_options(S, base);
        std::vector<std::size_t> pick(opts.size(), 0);
        while (true) {
            CurveConfiguration placed = base;
            // which surface point each passage belongs to; chart multiplicities chosen below
            std::vector<std::pair<int, int>> pass_list;  // (component, surface point)
            for (std::size_t q = 0; q < opts.size(); ++q) {
                const auto& o = opts[q][pick[q]];
                const int w = S.points[q].index;
                if (o.kind == Option::AtPoint) {
                    auto& pt = placed.points[size_t(o.index)];
                    if (pt.surface_point < 0) {
                        pt.surface_point = int(q);
                        for (int i : pt.comps) pass_list.push_back({i, int(q)});
                    } else {
                        for (int i : pt.comps)
                            if (placed.comps[size_t(i)].degree % w != 0) pass_list.push_back({i, int(q)});
                    }
                } else if (o.kind == Option::Lone) {
                    pass_list.push_back({o.index, int(q)});
                } else if (o.kind == Option::Unplaceable) {
                    for (std::size_t i = 0; i < placed.comps.size(); ++i)
                        if (placed.comps[i].degree % w != 0) pass_list.push_back({int(i), int(q)});
                }
            }
            // chart multiplicity choices
            std::vector<std::vector<Passage>> choices;
            bool vertex_ok = true;
            for (std::size_t q = 0; q < S.points.size(); ++q) {
                std::vector<VertexComp> vc;
                for (auto [i, qq] : pass_list)
                    if (qq == int(q)) vc.push_back({placed.comps[size_t(i)].m, placed.comps[size_t(i)].degree});
                if (!vc.empty() && !vertex_congruence(S, int(q), vc).feasible) vertex_ok = false;
            }
            for (auto [i, q] : pass_list) {
                const auto& sp = S.points[size_t(q)];
                const int m = placed.comps[size_t(i)].m;
                auto vals = chart_multiplicities(sp, placed.comps[size_t(i)].degree % sp.index, 2 * sp.index + 8);
                std::vector<Passage> ch;
                if (!vertex_ok) {
                    ch.push_back({q, vals.front(), true});
                } else {
                    for (int v : vals) {
                        if (m * v <= S.point_cap) {
                            ch.push_back({q, v, false});
                        } else {
                            ch.push_back({q, v, true});
                            break;
                        }
                    }
                }
                choices.push_back(std::move(ch));
            }
            std::vector<std::size_t> mu(choices.size(), 0);
            while (true) {
                CurveConfiguration cfg = placed;
                for (std::size_t t = 0; t < pass_list.size(); ++t)
                    cfg.comps[size_t(pass_list[t].first)].passes.push_back(choices[t][mu[t]]);
                if (auto f = rule_congruence(cfg)) {
                    ConfigResult r;
                    r.surface = S.name;
                    r.shell = shell;
                    r.geometry = geo.label;
                    r.components = config_json(cfg);
                    r.cert.rule = f->rule;
                    r.cert.witness = f->witness;
                    out.push_back(std::move(r));
                } else {
                    // singularity choices per component
                    std::vector<std::vector<Component>> sing;
                    for (std::size_t i = 0; i < cfg.comps.size(); ++i) {
                        const auto& comp = cfg.comps[i];
                        std::vector<Component> ch{comp};
                        auto g = arithmetic_genus(cfg, int(i));
                        const bool positive = g && is_integer(*g) && *g > 0;
                        if (positive && comp.m == 1) {
                            std::vector<Component> cusps;
                            for (std::size_t p = 0; p < cfg.points.size(); ++p) {
                                const auto& pt = cfg.points[p];
                                if (!std::count(pt.comps.begin(), pt.comps.end(), int(i))) continue;
                                if (pt.surface_point >= 0) {
                                    const auto* ps = passage(comp, pt.surface_point);
                                    if (!S.points[size_t(pt.surface_point)].is_11() || ps->at_least || ps->mult < 2)
                                        continue;
                                }
                                for (auto& raw : cusp_candidates(to_i64(*g))) {
                                    Component c2 = comp;
                                    c2.sing = Sing::Cusp;
                                    c2.pairs = raw;
                                    c2.cusp_point = int(p);
                                    cusps.push_back(std::move(c2));
                                }
                            }
                            if (!cusps.empty()) ch = std::move(cusps);
                        } else if (positive) {
                            for (Sing s2 : {Sing::AnyCusp, Sing::Node}) {
                                Component c2 = comp;
                                c2.sing = s2;
                                ch.push_back(c2);
                            }
                        }
                        sing.push_back(std::move(ch));
                    }
                    std::vector<std::size_t> sp(sing.size(), 0);
                    while (true) {
                        CurveConfiguration full = cfg;
                        for (std::size_t i = 0; i < sing.size(); ++i) full.comps[i] = sing[i][sp[i]];
                        out.push_back(result_for(full, shell, geo.label));
                        std::size_t t = 0;
                        while (t < sp.size() && ++sp[t] == sing[t].size()) sp[t++] = 0;
                        if (t == sp.size()) break;
                    }
                }
                std::size_t t = 0;
                while (t < mu.size() && ++mu[t] == choices[t].size()) mu[t++] = 0;
                if (t == mu.size()) break;
            }
            std::size_t t = 0;
            while (t < pick.size() && ++pick[t] == opts[t].size()) pick[t++] = 0;
            if (t == pick.size()) break;
        }
    }
    return out;
}

std::string shell_label(const Shell& shell) {
    std::vector<int> red, non;
    for (auto [m, d] : shell) (m == 1 ? red : non).push_back(d);
    std::sort(red.rbegin(), red.rend());
    std::sort(non.rbegin(), non.rend());
    auto join = [](const std::vector<int>& v) {
        std::string s;
        for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "+" : "") + std::to_string(v[i]);
        return s;
    };
    if (non.empty()) return join(red);
    return join(red) + " | " + join(non);
}

}  // namespace

std::int64_t shell_count(const SurfaceModel& s) {
    std::int64_t n = 0;
    for (auto& [k, v] : profile_counts(s)) n += v;
    return n;
}

// ---------------------------------------------------------------- published rows

namespace {

struct PubRow {
    SurfaceKind kind;
    std::string label;       // "3+2", "5 | 1", or a description for count rows
    int count = 0;           // > 0: match reduced shells with this many components not matched elsewhere; -1: any >= 2
    std::vector<Rule> allowed;
    std::string published;
    std::string note;        // documented deviation; status is then expected to be "differs"
};

using R = Rule;

std::vector<PubRow> published_rows(int d) {
    if (d == 5)
        return {
            {SurfaceKind::P2, "3+1+1", 0, {R::MultiplicityExceeded}, "multiplicity 4 at P", ""},
            {SurfaceKind::P2, "2+2+1", 0, {R::LctTooSmall}, "lct 1/2", ""},
            {SurfaceKind::P2, "4+1", 0, {R::MultiplicityExceeded, R::LctTooSmall}, "(3,4) multiplicity; (2,7) lct <= 1/2", ""},
            {SurfaceKind::P2, "3+2", 0, {R::LctTooSmall}, "lct <= 5/12", ""},
            {SurfaceKind::P2, "5", 0, {R::MultiplicityExceeded, R::LctTooSmall, R::ClassificationEmpty},
             "(4,5) multiplicity; (2,13) lct 15/26; only two quintic cusp types", ""},
            {SurfaceKind::P114, "three components", 3, {R::CongruenceImpossible}, "remainders mod 4", ""},
            {SurfaceKind::P114, "9+1", 0, {R::NotRationalAtDegree, R::MultiplicityExceeded},
             "smooth degree 9 is not rational", ""},
            {SurfaceKind::P114, "5+5", 0, {R::LctTooSmall, R::MultiplicityExceeded}, "length 6 on F4, lct <= 7/12", ""},
            {SurfaceKind::P114, "two components, other degrees", 2,
             {R::CongruenceImpossible, R::MultiplicityExceeded}, "remainders mod 4", ""},
            {SurfaceKind::P114, "10", 0, {R::LctTooSmall, R::ClassificationEmpty, R::MultiplicityExceeded},
             "a = 2, genus 5: (2,11) lct, (3,6) not unibranch", ""},
            {SurfaceKind::P1425, "three components", 3, {R::CongruenceImpossible}, "as on P(1,1,4)", ""},
            {SurfaceKind::P1425, "25+25", 0, {R::LctTooSmall, R::MultiplicityExceeded}, "as on P(1,1,4)", ""},
            {SurfaceKind::P1425, "two components, other degrees", 2,
             {R::CongruenceImpossible, R::MultiplicityExceeded}, "as on P(1,1,4)", ""},
            {SurfaceKind::P1425, "50", 0, {R::LctTooSmall, R::ClassificationEmpty, R::MultiplicityExceeded},
             "as on P(1,1,4)", ""},
            {SurfaceKind::M5, "three components", 3, {R::CongruenceImpossible}, "remainders mod 13 and mod 2", ""},
            {SurfaceKind::M5, "13+13", 0, {R::LctTooSmall, R::MultiplicityExceeded},
             "strict transforms meet to high order at the 1/2 point", ""},
            {SurfaceKind::M5, "two components, other degrees", 2,
             {R::CongruenceImpossible, R::MultiplicityExceeded}, "remainders mod 13 and mod 2", ""},
            {SurfaceKind::M5, "26", 0,
             {R::LctTooSmall, R::ClassificationEmpty, R::MultiplicityExceeded, R::CongruenceImpossible},
             "(2,13), (3,7), (4,5): lct below 3/5", ""},
        };
    return {
        {SurfaceKind::P2, "2+2+2+1", 0, {R::LctTooSmall}, "lct 4/11", ""},
        {SurfaceKind::P2, "3+2+2", 0, {R::LctTooSmall}, "lct <= 5/18", ""},
        {SurfaceKind::P2, "4+2+1", 0, {R::LctTooSmall, R::MultiplicityExceeded}, "(2,7): lct <= 9/26", ""},
        {SurfaceKind::P2, "5+1+1", 0, {R::LctTooSmall, R::MultiplicityExceeded}, "(2,13): lct bound", ""},
        {SurfaceKind::P2, "6+1", 0, {R::MultiplicityExceeded, R::LctTooSmall, R::ClassificationEmpty},
         "(3,11): lct 14/33", ""},
        {SurfaceKind::P2, "5+2", 0, {R::MultiplicityExceeded, R::LctTooSmall, R::ClassificationEmpty}, "lct bound", ""},
        {SurfaceKind::P2, "4+3", 0, {R::MultiplicityExceeded, R::LctTooSmall}, "lct bound", ""},
        {SurfaceKind::P2, "7", 0, {R::LctTooSmall, R::ClassificationEmpty}, "(6,7): lct 13/42; others by BL", ""},
        {SurfaceKind::P114, "multiple components", -1,
         {R::CongruenceImpossible, R::NotRationalAtDegree, R::MultiplicityExceeded, R::GenusMismatch},
         "remainders mod 4 and rationality", ""},
        {SurfaceKind::P114, "14", 0, {R::LctTooSmall, R::ClassificationEmpty, R::MultiplicityExceeded},
         "a = 2, class 3E+14l, genus 14", ""},
        {SurfaceKind::P2, "5 | 1", 0, {R::LctTooSmall, R::MultiplicityExceeded, R::ClassificationEmpty},
         "length >= 4, lct bound", ""},
        {SurfaceKind::P2, "3 | 2", 0, {R::LctTooSmall}, "length >= 4, lct bound", ""},
        {SurfaceKind::P2, "3 | 1+1", 0, {R::LctTooSmall}, "lct bound", ""},
        {SurfaceKind::P2, "1 | 3", 0, {R::ManualGeometric, R::LctTooSmall, R::GraphInadmissible},
         "weighted blow-up and cited classification", ""},
        {SurfaceKind::P2, "1 | 2+1", 0, {R::LctTooSmall}, "lct <= 3/8", ""},
        {SurfaceKind::P2, "4+1 | 1", 0, {R::MultiplicityExceeded}, "multiplicity", ""},
        {SurfaceKind::P2, "3+2 | 1", 0, {R::MultiplicityExceeded}, "multiplicity", ""},
        {SurfaceKind::P2, "2+1 | 2", 0, {R::ManualGeometric}, "tangent line uniqueness",
         "the weight search bounds the lct by 5/14 < 3/7, so the cited tangency argument is not needed"},
        {SurfaceKind::P114, "12 | 1", 0, {R::LctTooSmall, R::MultiplicityExceeded, R::CongruenceImpossible},
         "lct <= 3/8 after two blow-ups",
         "a smooth germ meets a (2,21) cusp with even length or 21, never 3; the two-blow-up bound needs the "
         "strict transforms to meet at a double point, which this length excludes"},
        {SurfaceKind::P114, "6 | 4", 0, {R::LctTooSmall, R::CongruenceImpossible, R::MultiplicityExceeded},
         "length 6, lct bound", ""},
        {SurfaceKind::P114, "4 | 5", 0, {R::LctTooSmall, R::CongruenceImpossible, R::MultiplicityExceeded},
         "length 5, lct bound", ""},
        {SurfaceKind::P114, "4 | 4+1", 0, {R::LctTooSmall, R::CongruenceImpossible, R::MultiplicityExceeded},
         "lct bound", ""},
        {SurfaceKind::P114, "8+4 | 1", 0, {R::MultiplicityExceeded, R::CongruenceImpossible}, "multiplicity", ""},
    };
}

std::string cert_summary(const Certificate& c) {
    std::string s = rule_name(c.rule);
    if (c.bound) s += " " + to_string(*c.bound);
    return s;
}

void check_rows(CaseworkReport& rep, const std::vector<SurfaceModel>& models) {
    auto rows = published_rows(rep.degree);
    std::vector<std::vector<const ConfigResult*>> hits(rows.size());
    for (std::size_t s = 0; s < rep.surfaces.size(); ++s) {
        const auto kind = models[s].kind;
        for (const auto& cr : rep.surfaces[s].configs) {
            const std::string lab = shell_label(cr.shell);
            const bool reduced = std::all_of(cr.shell.begin(), cr.shell.end(), [](auto p) { return p.first == 1; });
            int hit = -1;
            for (std::size_t r = 0; r < rows.size() && hit < 0; ++r)
                if (rows[r].kind == kind && rows[r].count == 0 && rows[r].label == lab) hit = int(r);
            for (std::size_t r = 0; r < rows.size() && hit < 0; ++r) {
                if (rows[r].kind != kind || rows[r].count == 0 || !reduced || cr.shell_count != 1) continue;
                const int k = int(cr.shell.size());
                if ((rows[r].count > 0 && k == rows[r].count) || (rows[r].count == -1 && k >= 2)) hit = int(r);
            }
            if (hit >= 0) hits[size_t(hit)].push_back(&cr);
        }
    }
    for (std::size_t r = 0; r < rows.size(); ++r) {
        RowCheck rc;
        rc.surface = surface_model(rows[r].kind, rep.degree).name;
        rc.label = rows[r].label;
        rc.published = rows[r].published;
        rc.note = rows[r].note;
        rc.configs = hits[r].size();
        std::set<std::string> seen;
        bool first_ok = true, any_ok = true;
        const auto& al = rows[r].allowed;
        auto allowed = [&](Rule x) { return std::find(al.begin(), al.end(), x) != al.end(); };
        for (const auto* cr : hits[r]) {
            const auto sum = cert_summary(cr->cert);
            if (seen.insert(sum).second) rc.engine.push_back(sum);
            if (!allowed(cr->cert.rule)) {
                first_ok = false;
                bool later = std::any_of(cr->cert.also.begin(), cr->cert.also.end(),
                                         [&](const Firing& f) { return allowed(f.rule); });
                if (!later) any_ok = false;
            }
        }
        rc.status = hits[r].empty() ? "missing" : first_ok ? "agrees" : any_ok ? "agrees-secondary" : "differs";
        rep.rows.push_back(std::move(rc));
    }
}

}  // namespace

CaseworkReport run_casework(int d, const CaseworkOptions& opt) {
    if (d != 5 && d != 7) throw InputError("run_casework needs d = 5 or 7");
    CaseworkReport rep;
    rep.degree = d;
    const auto models = surface_models(d);
    const auto adm = igraph::enumerate_admissible(d == 7 ? igraph::Mode::Deg7 : igraph::Mode::Deg5).admissible;
    const int kmax = max_greens(adm);

    if (opt.weight_cap < 30) throw InputError("weight_cap below 30 is not supported");
    for (auto S : models) {
        S.weight_cap = opt.weight_cap;
        SurfaceReport sr;
        sr.name = S.name;
        std::vector<Shell> shells;
        list_shells(S, kmax, shells);
        std::vector<std::vector<ConfigResult>> per(shells.size());
        std::atomic<std::size_t> next{0};
        auto work = [&] {
            for (std::size_t i = next++; i < shells.size(); i = next++) per[i] = run_shell(S, shells[i], adm);
        };
        const int nt = std::max(1, opt.threads);
        if (nt == 1) {
            work();
        } else {
            std::vector<std::thread> pool;
            for (int t = 0; t < nt; ++t) pool.emplace_back(work);
            for (auto& th : pool) th.join();
        }
        for (auto& v : per)
            for (auto& r : v) sr.configs.push_back(std::move(r));
        sr.shells = std::int64_t(shells.size());

        // shells with more components than any admissible graph: the shared point has multiplicity >= sum of m_i
        for (auto [prof, count] : profile_counts(S)) {
            const auto [k1, k2] = prof;
            if (k1 + k2 <= kmax) continue;
            ConfigResult r;
            r.surface = S.name;
            for (int i = 0; i < k1; ++i) r.shell.push_back({1, 0});
            for (int i = 0; i < k2; ++i) r.shell.push_back({2, 0});
            r.shell_count = count;
            igraph::Graph g;
            Json contrib = Json::array();
            for (int i = 0; i < k1 + k2; ++i) {
                const int m = i < k1 ? 1 : 2;
                g.greens.push_back(m);
                contrib.push_back({{"component", i}, {"m", m}, {"local", 1}});
            }
            std::vector<int> all(size_t(k1 + k2));
            std::iota(all.begin(), all.end(), 0);
            g.yellows.push_back(all);
            r.geometry = g.str() + " (single shared point)";
            r.components = {{"profile", {{"reduced", k1}, {"doubled", k2}}}};
            r.cert.rule = Rule::MultiplicityExceeded;
            r.cert.witness = {{"point", "p0"}, {"contributions", contrib}, {"total", k1 + 2 * k2},
                              {"cap", S.point_cap}, {"aggregated_shells", count}};
            if (auto v = igraph::first_violation(g, mode_for(S)))
                r.cert.also.push_back({Rule::GraphInadmissible, std::nullopt, {{"graph", g.str()}, {"violation", *v}}});
            sr.configs.push_back(std::move(r));
            sr.shells += count;
        }
        rep.surfaces.push_back(std::move(sr));
    }
    rep.manual_flags = manual_flags(d);
    for (const auto& s : rep.surfaces)
        for (const auto& c : s.configs)
            if (c.cert.rule == Rule::Unresolved) ++rep.unresolved;
    check_rows(rep, models);
    rep.verdict = rep.unresolved == 0 ? "smooth-only" : "unresolved";
    return rep;
}

// ---------------------------------------------------------------- output

Json to_json(const Certificate& c) {
    Json j = {{"rule", rule_name(c.rule)}};
    if (c.bound) j["bound"] = to_string(*c.bound);
    j["witness"] = c.witness;
    if (!c.relies_on.empty()) j["relies_on"] = c.relies_on;
    if (!c.manual_lemma.empty()) j["lemma"] = c.manual_lemma;
    Json also = Json::array();
    for (const auto& f : c.also) {
        Json a = {{"rule", rule_name(f.rule)}};
        if (f.bound) a["bound"] = to_string(*f.bound);
        a["witness"] = f.witness;
        also.push_back(a);
    }
    j["other_rules"] = also;
    return j;
}

Json to_json(const CaseworkReport& r) {
    Json j;
    j["degree"] = r.degree;
    Json surfaces = Json::array();
    for (const auto& s : r.surfaces) {
        Json configs = Json::array();
        for (const auto& c : s.configs) {
            Json shell = Json::array();
            for (auto [m, d] : c.shell) shell.push_back(d ? Json{m, d} : Json{m});
            const bool agg = std::any_of(c.shell.begin(), c.shell.end(), [](auto p) { return p.second == 0; });
            Json cj = {{"shell", agg ? std::string("aggregated") : shell_label(c.shell)},
                       {"multiplicities", shell},
                       {"geometry", c.geometry}};
            if (agg) cj["shell_count"] = c.shell_count;
            for (auto& [k, v] : c.components.items()) cj[k] = v;
            cj["certificate"] = to_json(c.cert);
            configs.push_back(cj);
        }
        surfaces.push_back({{"name", s.name}, {"shells", s.shells}, {"configs", configs}});
    }
    j["surfaces"] = surfaces;
    Json flags = Json::array();
    for (const auto& f : r.manual_flags)
        flags.push_back({{"id", f.id},
                         {"lemma", f.lemma},
                         {"statement", f.statement},
                         {"cited_by", f.cited_by},
                         {"required_by", f.required_by},
                         {"evidence", f.evidence}});
    j["manual_flags"] = flags;
    Json rows = Json::array();
    for (const auto& rc : r.rows) {
        Json x = {{"surface", rc.surface}, {"row", rc.label},       {"published", rc.published},
                  {"engine", rc.engine},   {"configs", rc.configs}, {"status", rc.status}};
        if (!rc.note.empty()) x["note"] = rc.note;
        rows.push_back(x);
    }
    j["published_rows"] = rows;
    j["unresolved"] = r.unresolved;
    j["verdict"] = r.verdict;
    return j;
}

namespace {

// table cells: a bare '|' would split the cell
std::string cell(const std::string& s) {
    std::string out;
    for (char ch : s) {
        if (ch == '|') out += '\\';
        out += ch;
    }
    return out;
}

}  // namespace

std::string to_markdown(const CaseworkReport& r) {
    std::ostringstream o;
    o << "# Casework, plane degree " << r.degree << "\n\n";
    if (!r.rows.empty()) {
        o << "## Published rows\n\n| Surface | Row | Published argument | Engine certificates | Configs | Status |\n"
          << "|---|---|---|---|---|---|\n";
        for (const auto& rc : r.rows) {
            std::string eng;
            for (std::size_t i = 0; i < rc.engine.size(); ++i) eng += (i ? "; " : "") + rc.engine[i];
            o << "| " << cell(rc.surface) << " | " << cell(rc.label) << " | " << cell(rc.published) << " | "
              << cell(eng) << " | " << rc.configs << " | " << rc.status << " |\n";
        }
        bool notes = false;
        for (const auto& rc : r.rows)
            if (!rc.note.empty()) {
                if (!notes) o << "\nNotes:\n\n";
                notes = true;
                o << "- " << rc.surface << " " << rc.label << ": " << rc.note << "\n";
            }
        o << "\n";
    }
    for (const auto& s : r.surfaces) {
        std::map<std::string, std::int64_t> by_rule;
        std::int64_t rows = 0;
        for (const auto& c : s.configs) {
            by_rule[rule_name(c.cert.rule)] += c.shell_count == 1 ? 1 : c.shell_count;
            ++rows;
        }
        o << "## " << s.name << "\n\n" << s.shells << " shells, " << rows << " configuration rows.\n\n"
          << "| Certificate | Count |\n|---|---|\n";
        for (const auto& [k, v] : by_rule) o << "| " << k << " | " << v << " |\n";
        o << "\n";
    }
    if (!r.surfaces.empty() || !r.manual_flags.empty()) o << "## Manual flags\n\n";
    if (r.manual_flags.empty() && !r.surfaces.empty()) o << "None.\n";
    for (const auto& f : r.manual_flags) {
        o << "- `" << f.id << "` (" << f.lemma << "): " << f.statement << ".";
        if (!f.required_by.empty()) {
            o << " Required by";
            for (const auto& x : f.required_by) o << " `" << x << "`";
            o << ".";
        }
        if (f.evidence.contains("bl_check"))
            o << " Evidence: bl_check(5, [(2,3)], [(2,11)]) = "
              << (f.evidence["bl_check"]["pass"].get<bool>() ? "Pass" : "Fail") << ".";
        o << "\n";
    }
    if (!r.surfaces.empty() || !r.manual_flags.empty()) o << "\n";
    o << "**Verdict:** " << r.verdict << "\n";
    return o.str();
}

}  // namespace clv::casework
