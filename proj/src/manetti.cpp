#include "clv/manetti.hpp"

#include <algorithm>

namespace clv::manetti {

BigInt Surface::alpha() const {
    BigInt p = 1;
    for (int i = 0; i < 3; ++i)
        if (kept[i]) p *= triple[i];
    return p;
}

BigInt Surface::beta() const {
    BigInt p = 1;
    for (int i = 0; i < 3; ++i)
        if (!kept[i]) p *= triple[i];
    return p;
}

std::vector<BigInt> Surface::local_class_orders() const {
    std::vector<BigInt> out;
    for (int i = 0; i < 3; ++i)
        if (kept[i]) out.push_back(triple[i] * triple[i]);
    return out;
}

std::string Surface::name() const {
    std::string inner;
    for (int i = 0; i < 3; ++i) {
        if (!kept[i] || triple[i] == 1) continue;
        if (!inner.empty()) inner += ",";
        inner += triple[i].str();
    }
    return inner.empty() ? "P2" : "M(" + inner + ")";
}

Surface full(const markov::Triple& t) {
    markov::make_triple(t.a, t.b, t.c);
    return Surface{t, {true, true, true}};
}

Surface keeping(const markov::Triple& t, const std::vector<BigInt>& kept_values) {
    Surface s = full(t);
    s.kept = {false, false, false};
    for (const auto& v : kept_values) {
        bool placed = false;
        for (int i = 0; i < 3 && !placed; ++i) {
            if (!s.kept[i] && t[i] == v) {
                s.kept[i] = true;
                placed = true;
            }
        }
        if (!placed) throw InputError(v.str() + " is not an unused entry of " + t.str());
    }
    return s;
}

bool DivisorClass::is_cartier() const {
    BigInt a2 = surface.alpha() * surface.alpha();
    return m % a2 == 0;
}

Rational volume_check(const markov::Triple& t) {
    markov::make_triple(t.a, t.b, t.c);
    BigInt s = t.a * t.a + t.b * t.b + t.c * t.c;
    BigInt p = t.a * t.b * t.c;
    return Rational(s * s, p * p);
}

BigInt picard_index(const Surface& s) { return s.alpha() * s.alpha(); }

Rational self_intersection(const DivisorClass& d) {
    return Rational(d.m * d.m, picard_index(d.surface));
}

std::optional<BigInt> limit_degree_on_Mc(const BigInt& d, const BigInt& c) {
    if (d < 1) throw InputError("degree must be >= 1");
    if (c < 1 || !markov::is_markov_number(c)) throw InputError(c.str() + " is not a Markov number");
    if (d % c != 0) return std::nullopt;
    BigInt n = d / c;
    return n * c * c;
}

GonalityCertificate gonality_certificate(const markov::Triple& t, const BigInt& n) {
    markov::make_triple(t.a, t.b, t.c);
    if (n < 1) throw InputError("n must be >= 1");
    BigInt d = n * t.c;
    GonalityCertificate g;
    g.plane_gonality = d - 1;
    if (t.c > 2) {
        g.bound = n * t.a * t.b;
    } else if (t.c == 2) {
        // projection from the point of multiplicity d/2
        g.bound = d - 2;
    } else {
        throw InputError("P2 limits are plane curves; no certificate");
    }
    g.nonplanar = g.bound < g.plane_gonality;
    return g;
}

Embedding ambient_embedding(const markov::Triple& t) {
    markov::make_triple(t.a, t.b, t.c);
    BigInt cp = 3 * t.a * t.b - t.c;
    return Embedding{{t.a * t.a, t.b * t.b, cp, t.c}, cp};
}

std::vector<CatalogEntry> surface_catalog(int d) {
    if (d == 5) {
        return {{"P2", {1, 1, 1}}, {"P(1,1,4)", {1, 1, 4}}, {"M(5)", {1, 2, 13}}, {"P(1,4,25)", {1, 4, 25}}};
    }
    if (d == 7) return {{"P2", {1, 1, 1}}, {"P(1,1,4)", {1, 1, 4}}};
    throw InputError("surface catalog is only known for degrees 5 and 7");
}

}  // namespace clv::manetti
