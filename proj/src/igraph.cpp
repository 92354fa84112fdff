#include "clv/igraph.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>

namespace clv::igraph {

int Graph::edge_count() const {
    int e = 0;
    for (const auto& y : yellows) e += static_cast<int>(y.size());
    return e;
}

std::string Graph::str() const {
    std::string s = "G[";
    for (std::size_t i = 0; i < greens.size(); ++i) s += (i ? "," : "") + std::to_string(greens[i]);
    s += "] Y[";
    for (std::size_t i = 0; i < yellows.size(); ++i) {
        s += i ? " {" : "{";
        for (std::size_t j = 0; j < yellows[i].size(); ++j) s += (j ? "," : "") + std::to_string(yellows[i][j]);
        s += "}";
    }
    return s + "]";
}

void validate(const Graph& g) {
    if (g.greens.empty()) throw InputError("graph needs at least one green vertex");
    for (std::size_t i = 0; i < g.greens.size(); ++i)
        if (g.greens[i] < 1) throw InputError("greens[" + std::to_string(i) + "].mult must be >= 1");
    for (std::size_t y = 0; y < g.yellows.size(); ++y) {
        const auto& e = g.yellows[y];
        if (e.size() < 2) throw InputError("yellows[" + std::to_string(y) + "] needs at least 2 edges");
        for (int idx : e)
            if (idx < 0 || idx >= static_cast<int>(g.greens.size()))
                throw InputError("yellows[" + std::to_string(y) + "].edges: green index " + std::to_string(idx) +
                                 " out of range");
    }
}

int euler(const Graph& g) {
    int v = static_cast<int>(g.greens.size() + g.yellows.size());
    return v - g.edge_count();
}

int euler_bipartite(const Graph& g) {
    int chi = static_cast<int>(g.greens.size());
    for (const auto& y : g.yellows) chi += 1 - static_cast<int>(y.size());
    return chi;
}

int total_excess_multiplicity(const Graph& g) {
    int m = 0;
    for (int x : g.greens) m += x - 1;
    return m;
}

int local_multiplicity(const Graph& g, std::size_t y) {
    int s = 0;
    for (int idx : g.yellows.at(y)) s += g.greens.at(static_cast<std::size_t>(idx));
    return s;
}

int loops(const Graph& g) { return 1 - euler(g); }

namespace {

Graph relabel(const Graph& g, const std::vector<int>& perm) {
    // perm[old] = new
    Graph h;
    h.greens.assign(g.greens.size(), 0);
    for (std::size_t i = 0; i < g.greens.size(); ++i) h.greens[static_cast<std::size_t>(perm[i])] = g.greens[i];
    for (const auto& y : g.yellows) {
        std::vector<int> e;
        for (int idx : y) e.push_back(perm[static_cast<std::size_t>(idx)]);
        std::sort(e.begin(), e.end());
        h.yellows.push_back(std::move(e));
    }
    std::sort(h.yellows.begin(), h.yellows.end());
    return h;
}

}  // namespace

Graph canonical(const Graph& g) {
    const std::size_t n = g.greens.size();
    // sort greens by multiplicity first
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return g.greens[a] < g.greens[b]; });
    std::vector<int> to_sorted(n);
    for (std::size_t i = 0; i < n; ++i) to_sorted[static_cast<std::size_t>(order[i])] = static_cast<int>(i);
    Graph base = relabel(g, to_sorted);

    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    Graph best = base;
    do {
        bool keeps = true;
        for (std::size_t i = 0; i < n && keeps; ++i)
            keeps = base.greens[i] == base.greens[static_cast<std::size_t>(perm[i])];
        if (!keeps) continue;
        Graph h = relabel(base, perm);
        if (h < best) best = std::move(h);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

std::vector<int> zeta_green(const Morphism& f) {
    std::vector<int> z;
    for (int d : f.green_degree) z.push_back(d - 1);
    return z;
}

std::vector<int> zeta_yellow(const Graph& source, const Morphism& f) {
    std::vector<int> z;
    for (std::size_t y = 0; y < source.yellows.size(); ++y) {
        if (!f.yellow_map[y].yellow) {
            z.push_back(0);
            continue;
        }
        std::set<int> image(f.edge_map[y].begin(), f.edge_map[y].end());
        z.push_back(static_cast<int>(source.yellows[y].size() - image.size()));
    }
    return z;
}

InequalityCheck normalization_inequality(const Graph& norm, const Graph& target, const Morphism& f) {
    validate(norm);
    validate(target);
    if (f.green_map.size() != norm.greens.size() || f.green_degree.size() != norm.greens.size())
        throw InputError("morphism: green_map/green_degree size mismatch");
    if (f.yellow_map.size() != norm.yellows.size() || f.edge_map.size() != norm.yellows.size())
        throw InputError("morphism: yellow_map/edge_map size mismatch");
    std::vector<bool> hit(target.greens.size(), false);
    for (std::size_t i = 0; i < f.green_map.size(); ++i) {
        int t = f.green_map[i];
        if (t < 0 || t >= static_cast<int>(target.greens.size()))
            throw InputError("morphism: green_map[" + std::to_string(i) + "] out of range");
        if (f.green_degree[i] < 1) throw InputError("morphism: green_degree must be >= 1");
        hit[static_cast<std::size_t>(t)] = true;
    }
    for (std::size_t i = 0; i < hit.size(); ++i)
        if (!hit[i]) throw InputError("morphism is not surjective: target green " + std::to_string(i) + " missed");
    for (std::size_t y = 0; y < norm.yellows.size(); ++y) {
        const auto& ref = f.yellow_map[y];
        std::size_t limit = ref.yellow ? target.yellows.size() : target.greens.size();
        if (ref.index < 0 || static_cast<std::size_t>(ref.index) >= limit)
            throw InputError("morphism: yellow_map[" + std::to_string(y) + "] out of range");
        if (!ref.yellow) continue;
        if (f.edge_map[y].size() != norm.yellows[y].size())
            throw InputError("morphism: edge_map[" + std::to_string(y) + "] size mismatch");
        for (int slot : f.edge_map[y])
            if (slot < 0 || static_cast<std::size_t>(slot) >= target.yellows[static_cast<std::size_t>(ref.index)].size())
                throw InputError("morphism: edge_map[" + std::to_string(y) + "] slot out of range");
    }

    InequalityCheck c;
    c.lhs = euler(norm);
    c.chi_target = euler(target);
    c.M = total_excess_multiplicity(target);
    for (int z : zeta_green(f)) c.zeta_sum += z;
    for (int z : zeta_yellow(norm, f)) c.zeta_sum += z;
    c.rhs = c.chi_target + c.M - c.zeta_sum;
    c.holds = c.lhs <= c.rhs;
    c.equality = c.lhs == c.chi_target + c.M;
    return c;
}

bool verify_normalization_inequality(const Graph& norm, const Graph& target, const Morphism& f) {
    return normalization_inequality(norm, target, f).holds;
}

Caps caps_for(Mode m) { return m == Mode::Deg7 ? Caps{2, 4} : Caps{1, 3}; }

std::optional<std::string> first_violation(const Graph& g, Mode mode, const Bounds& b) {
    try {
        validate(g);
    } catch (const InputError&) {
        return "structure";
    }
    if (static_cast<int>(g.greens.size()) > b.max_greens || static_cast<int>(g.yellows.size()) > b.max_yellows ||
        g.edge_count() > b.max_edges)
        return "bounds";
    const Caps caps = caps_for(mode);
    for (int m : g.greens)
        if (m > caps.max_multiplicity) return "H3:component-multiplicity";
    if (std::none_of(g.greens.begin(), g.greens.end(), [](int m) { return m == 1; }))
        return "H6:reduced-component";
    for (std::size_t y = 0; y < g.yellows.size(); ++y)
        if (local_multiplicity(g, y) > caps.point_cap) return "H4:point-multiplicity";
    const std::size_t n = g.greens.size();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            bool shared = std::any_of(g.yellows.begin(), g.yellows.end(), [&](const std::vector<int>& y) {
                return std::count(y.begin(), y.end(), int(i)) && std::count(y.begin(), y.end(), int(j));
            });
            if (!shared) return "H5:distance-2";
        }
    }
    const int chi = euler(g);
    const int M = total_excess_multiplicity(g);
    // normalization graph is a tree; a nonreduced fiber loses at least one in the inequality
    if (M == 0 ? chi != 1 : chi + M < 2) return "H1H2:euler";
    return std::nullopt;
}

Enumeration enumerate_admissible(Mode mode, const Bounds& b) {
    Enumeration out;
    out.mode = mode;
    out.bounds = b;
    const Caps caps = caps_for(mode);
    std::set<Graph> found;

    for (int ng = 1; ng <= b.max_greens; ++ng) {
        for (int doubles = 0; doubles <= ng; ++doubles) {
            if (doubles == ng) {
                ++out.pruned["H6:reduced-component"];
                continue;
            }
            if (doubles > 0 && caps.max_multiplicity < 2) {
                ++out.pruned["H3:component-multiplicity"];
                continue;
            }
            std::vector<int> mult(static_cast<std::size_t>(ng), 1);
            for (int i = ng - doubles; i < ng; ++i) mult[static_cast<std::size_t>(i)] = 2;
            const int M = doubles;
            const bool reduced = M == 0;
            const int budget = reduced ? ng - 1 : ng + M - 2;  // max of sum (#E_y - 1)

            // yellow types: multisets of greens with local multiplicity within the cap
            struct Type {
                std::vector<int> edges;
                int cost;
                std::vector<int> pairs;  // pair ids i*ng+j, i<j
            };
            std::vector<Type> types;
            std::function<void(int, std::vector<int>&, int)> gen = [&](int start, std::vector<int>& cur, int lm) {
                if (cur.size() >= 2) {
                    Type t{cur, static_cast<int>(cur.size()) - 1, {}};
                    for (std::size_t x = 0; x < cur.size(); ++x)
                        for (std::size_t y = x + 1; y < cur.size(); ++y)
                            if (cur[x] != cur[y]) t.pairs.push_back(cur[x] * ng + cur[y]);
                    std::sort(t.pairs.begin(), t.pairs.end());
                    t.pairs.erase(std::unique(t.pairs.begin(), t.pairs.end()), t.pairs.end());
                    types.push_back(std::move(t));
                }
                for (int i = start; i < ng; ++i) {
                    int nl = lm + mult[static_cast<std::size_t>(i)];
                    if (nl > caps.point_cap) {
                        if (cur.size() + 1 >= 2) ++out.pruned["H4:point-multiplicity"];
                        continue;
                    }
                    cur.push_back(i);
                    gen(i, cur, nl);
                    cur.pop_back();
                }
            };
            std::vector<int> scratch;
            gen(0, scratch, 0);

            // cheapest fractional cost per pair, scaled by 60 (pairs per type <= 6)
            std::vector<int> pair_cost(static_cast<std::size_t>(ng * ng), 1 << 20);
            for (const auto& t : types)
                for (int p : t.pairs)
                    pair_cost[static_cast<std::size_t>(p)] =
                        std::min(pair_cost[static_cast<std::size_t>(p)], 60 * t.cost / static_cast<int>(t.pairs.size()));

            Graph cur;
            cur.greens = mult;
            std::vector<int> covered(static_cast<std::size_t>(ng * ng), 0);
            auto lower_bound60 = [&]() {
                int lb = 0;
                for (int i = 0; i < ng; ++i)
                    for (int j = i + 1; j < ng; ++j)
                        if (!covered[static_cast<std::size_t>(i * ng + j)]) lb += pair_cost[static_cast<std::size_t>(i * ng + j)];
                return lb;
            };

            std::function<void(std::size_t, int)> dfs = [&](std::size_t start, int cost) {
                ++out.leaves_checked;
                if (!first_violation(cur, mode, b)) found.insert(canonical(cur));
                for (std::size_t i = start; i < types.size(); ++i) {
                    const auto& t = types[i];
                    if (cost + t.cost > budget) {
                        ++out.pruned["H1H2:euler"];
                        continue;
                    }
                    if (static_cast<int>(cur.yellows.size()) + 1 > b.max_yellows ||
                        cur.edge_count() + static_cast<int>(t.edges.size()) > b.max_edges) {
                        ++out.pruned["bounds"];
                        continue;
                    }
                    for (int p : t.pairs) ++covered[static_cast<std::size_t>(p)];
                    if (60 * (cost + t.cost) + lower_bound60() > 60 * budget) {
                        ++out.pruned["H5:distance-2"];
                    } else {
                        cur.yellows.push_back(t.edges);
                        dfs(i, cost + t.cost);
                        cur.yellows.pop_back();
                    }
                    for (int p : t.pairs) --covered[static_cast<std::size_t>(p)];
                }
            };
            dfs(0, 0);
        }
    }
    out.admissible.assign(found.begin(), found.end());
    return out;
}

int theoremF_bound(int loops, const std::vector<int>& multiplicities) {
    if (loops < 0) throw InputError("loops must be >= 0");
    int excess = 0;
    for (int m : multiplicities) {
        if (m < 1) throw InputError("multiplicities must be >= 1");
        excess += m - 1;
    }
    return std::max(0, loops - excess);
}

int delta_from_contraction(int branches, int chi_OE) {
    if (branches < 1) throw InputError("branches must be >= 1");
    return branches - chi_OE;
}

}  // namespace clv::igraph
