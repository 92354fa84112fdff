#pragma once

#include "clv/markov.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace clv::manetti {

// P(a^2,b^2,c^2) and its partial smoothings, keyed by which entries keep their singular point.
struct Surface {
    markov::Triple triple;
    std::array<bool, 3> kept{true, true, true};

    BigInt alpha() const;  // product of kept entries
    BigInt beta() const;   // product of smoothed entries
    std::vector<BigInt> local_class_orders() const;  // squares of kept entries
    std::string name() const;
};

// M(a,b,c): all three kept.
Surface full(const markov::Triple& t);
// Keep the entries listed (by value, e.g. {5} for M(5), {2,5} for M(2,5)).
Surface keeping(const markov::Triple& t, const std::vector<BigInt>& kept_values);

// m times the generator O(1) of the class group.
struct DivisorClass {
    Surface surface;
    BigInt m;

    bool is_cartier() const;
};

Rational volume_check(const markov::Triple& t);
BigInt picard_index(const Surface& s);
Rational self_intersection(const DivisorClass& d);

// Class nc^2 of the limit of O(d) on M(c) when d = nc.
std::optional<BigInt> limit_degree_on_Mc(const BigInt& d, const BigInt& c);

struct GonalityCertificate {
    BigInt bound;
    BigInt plane_gonality;
    bool nonplanar;
};

GonalityCertificate gonality_certificate(const markov::Triple& t, const BigInt& n);

struct Embedding {
    std::array<BigInt, 4> weights;  // (a^2, b^2, c', c)
    BigInt c_prime;
};

Embedding ambient_embedding(const markov::Triple& t);

struct CatalogEntry {
    std::string name;
    std::vector<BigInt> weights;
};

// Surfaces a Calabi-Yau limit of degree-d plane curves may live on (d = 5 or 7).
std::vector<CatalogEntry> surface_catalog(int d);

}  // namespace clv::manetti
