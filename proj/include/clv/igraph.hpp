#pragma once

#include "clv/arith.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace clv::igraph {

// Bipartite multigraph: greens are curve components, yellows are multibranch points.
// A yellow is the multiset of greens its branches lie on (one entry per edge).
struct Graph {
    std::vector<int> greens;               // multiplicity labels
    std::vector<std::vector<int>> yellows;  // sorted green indices, size >= 2

    int edge_count() const;
    friend bool operator==(const Graph&, const Graph&) = default;
    friend bool operator<(const Graph& x, const Graph& y) {
        if (x.greens.size() != y.greens.size()) return x.greens.size() < y.greens.size();
        if (x.greens != y.greens) return x.greens < y.greens;
        if (x.yellows.size() != y.yellows.size()) return x.yellows.size() < y.yellows.size();
        return x.yellows < y.yellows;
    }
    std::string str() const;
};

void validate(const Graph& g);

// V - E
int euler(const Graph& g);
// #G + sum over yellows of (1 - #E_y)
int euler_bipartite(const Graph& g);
int total_excess_multiplicity(const Graph& g);  // M = sum (m - 1)
// Sum of green multiplicities over the branches at yellow y.
int local_multiplicity(const Graph& g, std::size_t y);

Graph canonical(const Graph& g);

// Image of a normalization-graph yellow: a green or a yellow of the target.
struct VertexRef {
    bool yellow = false;
    int index = 0;
};

struct Morphism {
    std::vector<int> green_map;          // source green -> target green
    std::vector<int> green_degree;       // degree on each source component (zeta(g) = degree - 1)
    std::vector<VertexRef> yellow_map;   // source yellow -> target vertex
    // per source yellow, per branch: slot in the target yellow's edge list (ignored if it maps to a green)
    std::vector<std::vector<int>> edge_map;
};

std::vector<int> zeta_green(const Morphism& f);
std::vector<int> zeta_yellow(const Graph& source, const Morphism& f);

struct InequalityCheck {
    int lhs = 0;  // chi(normalization)
    int rhs = 0;  // chi(target) + M - sum zeta
    int chi_target = 0;
    int M = 0;
    int zeta_sum = 0;
    bool holds = false;
    bool equality = false;
};

InequalityCheck normalization_inequality(const Graph& norm, const Graph& target, const Morphism& f);
bool verify_normalization_inequality(const Graph& norm, const Graph& target, const Morphism& f);

enum class Mode { Deg7, Deg5 };

struct Caps {
    int max_multiplicity;  // per component
    int point_cap;         // local multiplicity at a yellow
};
Caps caps_for(Mode m);

// Search-space limits for the enumeration.
struct Bounds {
    int max_greens = 6;
    int max_yellows = 8;
    int max_edges = 16;
};

// First violated constraint, or nullopt if admissible. Names are stable identifiers.
std::optional<std::string> first_violation(const Graph& g, Mode mode, const Bounds& b = {});

struct Enumeration {
    Mode mode;
    Bounds bounds;
    std::vector<Graph> admissible;            // canonical, sorted
    std::map<std::string, long long> pruned;  // constraint -> number of pruned search nodes
    long long leaves_checked = 0;
};

Enumeration enumerate_admissible(Mode mode, const Bounds& b = {});

int theoremF_bound(int loops, const std::vector<int>& multiplicities);
int delta_from_contraction(int branches, int chi_OE);

// First Betti number of a connected graph: 1 - chi.
int loops(const Graph& g);

}  // namespace clv::igraph
