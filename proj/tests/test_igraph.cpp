#include "clv/igraph.hpp"

#include "doctest.h"

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

using namespace clv;
using igraph::Graph;

namespace {

Graph permuted(const Graph& g, const std::vector<int>& p) {
    Graph h;
    h.greens.assign(g.greens.size(), 0);
    for (std::size_t i = 0; i < p.size(); ++i) h.greens[std::size_t(p[i])] = g.greens[i];
    for (const auto& y : g.yellows) {
        std::vector<int> e;
        for (int v : y) e.push_back(p[std::size_t(v)]);
        std::sort(e.begin(), e.end());
        h.yellows.push_back(e);
    }
    std::shuffle(h.yellows.begin(), h.yellows.end(), std::mt19937(unsigned(p.size())));
    return h;
}

// Isomorphism by trying every relabelling, with no multiplicity shortcut.
bool brute_iso(const Graph& a, const Graph& b) {
    if (a.greens.size() != b.greens.size() || a.yellows.size() != b.yellows.size()) return false;
    auto ys = b.yellows;
    for (auto& y : ys) std::sort(y.begin(), y.end());
    std::sort(ys.begin(), ys.end());
    std::vector<int> p(a.greens.size());
    std::iota(p.begin(), p.end(), 0);
    do {
        Graph h = permuted(a, p);
        std::sort(h.yellows.begin(), h.yellows.end());
        if (h.greens == b.greens && h.yellows == ys) return true;
    } while (std::next_permutation(p.begin(), p.end()));
    return false;
}

Graph random_graph(std::mt19937& rng, int max_greens) {
    std::uniform_int_distribution<int> ng(1, max_greens), ny(0, 4), sz(2, 4), mult(1, 2);
    Graph g;
    const int n = ng(rng);
    for (int i = 0; i < n; ++i) g.greens.push_back(mult(rng));
    std::uniform_int_distribution<int> pick(0, n - 1);
    const int y = ny(rng);
    for (int k = 0; k < y; ++k) {
        std::vector<int> e;
        const int s = sz(rng);
        for (int j = 0; j < s; ++j) e.push_back(pick(rng));
        std::sort(e.begin(), e.end());
        g.yellows.push_back(e);
    }
    return g;
}

std::vector<std::string> strs(const std::vector<Graph>& v) {
    std::vector<std::string> s;
    for (const auto& g : v) s.push_back(g.str());
    return s;
}

}  // namespace

TEST_CASE("admissible graphs") {
    CHECK(strs(igraph::enumerate_admissible(igraph::Mode::Deg7).admissible) ==
          std::vector<std::string>{"G[1] Y[]", "G[1,1] Y[{0,1}]", "G[1,2] Y[{0,1}]", "G[1,1,1] Y[{0,1,2}]",
                                   "G[1,1,2] Y[{0,1,2}]", "G[1,2,2] Y[{0,1} {0,2} {1,2}]",
                                   "G[1,1,1,1] Y[{0,1,2,3}]"});
    CHECK(strs(igraph::enumerate_admissible(igraph::Mode::Deg5).admissible) ==
          std::vector<std::string>{"G[1] Y[]", "G[1,1] Y[{0,1}]", "G[1,1,1] Y[{0,1,2}]"});
}

TEST_CASE("wider search bounds find nothing new") {
    for (auto mode : {igraph::Mode::Deg7, igraph::Mode::Deg5}) {
        auto base = igraph::enumerate_admissible(mode);
        auto wide = igraph::enumerate_admissible(mode, {7, 10, 20});
        CHECK(strs(base.admissible) == strs(wide.admissible));
        for (const auto& [name, n] : wide.pruned) {
            CHECK_FALSE(name.empty());
            CHECK(n > 0);
        }
    }
}

TEST_CASE("canonical form: idempotent and a complete invariant") {
    std::mt19937 rng(3);
    std::vector<Graph> pool;
    for (int i = 0; i < 400; ++i) pool.push_back(random_graph(rng, 4));
    for (const auto& g : pool) {
        const Graph c = igraph::canonical(g);
        CHECK(igraph::canonical(c) == c);
        CHECK(brute_iso(g, c));
        std::vector<int> p(g.greens.size());
        std::iota(p.begin(), p.end(), 0);
        std::shuffle(p.begin(), p.end(), rng);
        CHECK(igraph::canonical(permuted(g, p)) == c);
    }
    for (std::size_t i = 0; i + 1 < pool.size(); i += 2)
        CHECK((igraph::canonical(pool[i]) == igraph::canonical(pool[i + 1])) == brute_iso(pool[i], pool[i + 1]));
}

TEST_CASE("random graphs: admissible exactly when enumerated, otherwise a named violation") {
    std::mt19937 rng(5);
    for (auto mode : {igraph::Mode::Deg7, igraph::Mode::Deg5}) {
        const auto adm = igraph::enumerate_admissible(mode).admissible;
        const std::set<Graph> listed(adm.begin(), adm.end());
        int accepted = 0;
        for (int i = 0; i < 3000; ++i) {
            const Graph g = random_graph(rng, 5);
            const auto v = igraph::first_violation(g, mode);
            CAPTURE(g.str());
            CHECK(!v == (listed.count(igraph::canonical(g)) > 0));
            if (v) CHECK_FALSE(v->empty());
            accepted += !v;
        }
        for (const auto& g : adm) CHECK_FALSE(igraph::first_violation(g, mode));
        CHECK(accepted > 0);
    }
}

TEST_CASE("Euler characteristics agree") {
    std::mt19937 rng(9);
    for (int i = 0; i < 500; ++i) {
        const Graph g = random_graph(rng, 5);
        CHECK(igraph::euler(g) == igraph::euler_bipartite(g));
        CHECK(igraph::loops(g) == 1 - igraph::euler(g));
        int M = 0;
        for (int m : g.greens) M += m - 1;
        CHECK(igraph::total_excess_multiplicity(g) == M);
    }
    const Graph tri{{1, 2, 2}, {{0, 1}, {0, 2}, {1, 2}}};
    CHECK(igraph::euler(tri) == 0);
    CHECK(igraph::local_multiplicity(tri, 2) == 4);
}

TEST_CASE("identity morphism meets the normalization inequality with equality") {
    const Graph g{{1, 1, 1}, {{0, 1, 2}}};
    igraph::Morphism f;
    f.green_map = {0, 1, 2};
    f.green_degree = {1, 1, 1};
    f.yellow_map = {{true, 0}};
    f.edge_map = {{0, 1, 2}};
    auto r = igraph::normalization_inequality(g, g, f);
    CHECK(r.holds);
    CHECK(r.lhs == r.rhs);
}

TEST_CASE("malformed graphs") {
    CHECK_THROWS_AS(igraph::validate(Graph{{}, {}}), InputError);
    CHECK_THROWS_AS(igraph::validate(Graph{{0}, {}}), InputError);
    CHECK_THROWS_AS(igraph::validate(Graph{{1, 1}, {{0}}}), InputError);
    CHECK_THROWS_AS(igraph::validate(Graph{{1, 1}, {{0, 2}}}), InputError);
}
