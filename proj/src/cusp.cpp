#include "clv/cusp.hpp"

#include <algorithm>
#include <limits>
#include <queue>

namespace clv::cusp {

namespace {

constexpr std::int64_t kMaxProduct = std::int64_t(1) << 40;

std::int64_t checked_mul(std::int64_t x, std::int64_t y) {
    if (x != 0 && y > kMaxProduct / x) throw InputError("Newton pair data too large");
    return x * y;
}

}  // namespace

CuspType::CuspType(std::vector<NewtonPair> pairs) : pairs_(std::move(pairs)) {
    if (pairs_.empty()) throw InputError("a cusp needs at least one Newton pair");
    for (std::size_t j = 0; j < pairs_.size(); ++j) {
        const auto& p = pairs_[j];
        std::string where = "Newton pair " + std::to_string(j + 1);
        if (p.m < 2) throw InputError(where + ": m must be >= 2");
        if (p.n < 1) throw InputError(where + ": n must be >= 1");
        if (j == 0 && p.n <= p.m) throw InputError(where + ": need n1 > m1");
        if (gcd64(p.m, p.n) != 1)
            throw NotUnibranch(where + " (" + std::to_string(p.m) + "," + std::to_string(p.n) +
                               ") is not coprime: not unibranch");
    }
    const int k = static_cast<int>(pairs_.size());
    M_.assign(k, 1);
    N_.assign(k, 1);
    // tail products m_{j+1} ... m_k
    std::int64_t tail = 1;
    for (int j = k - 1; j >= 0; --j) {
        N_[j] = checked_mul(pairs_[j].n, tail);
        tail = checked_mul(tail, pairs_[j].m);
        M_[j] = tail;
    }
    exps_.resize(k);
    std::int64_t b = 0;
    for (int j = 0; j < k; ++j) exps_[j] = b += N_[j];

    gens_.push_back(M_[0]);
    gens_.push_back(N_[0]);
    // w_j = m_{j-2} w_{j-1} + N_{j-1}
    for (int j = 3; j <= k + 1; ++j)
        gens_.push_back(checked_mul(pairs_[j - 3].m, gens_[j - 2]) + N_[j - 2]);
}

std::string CuspType::str() const {
    std::string s = "[";
    for (std::size_t j = 0; j < pairs_.size(); ++j) {
        if (j) s += ",";
        s += "(" + std::to_string(pairs_[j].m) + "," + std::to_string(pairs_[j].n) + ")";
    }
    return s + "]";
}

bool operator<(const CuspType& x, const CuspType& y) {
    return std::lexicographical_compare(x.pairs_.begin(), x.pairs_.end(), y.pairs_.begin(), y.pairs_.end(),
                                        [](const NewtonPair& p, const NewtonPair& q) {
                                            return p.m != q.m ? p.m < q.m : p.n < q.n;
                                        });
}

std::int64_t delta_from_pairs(const CuspType& c) {
    std::int64_t twice = (c.M(1) - 1) * (c.N(1) - 1);
    for (int j = 2; j <= c.k(); ++j) twice += (c.M(j) - 1) * c.N(j);
    if (twice % 2 != 0) throw std::logic_error("odd 2*delta for " + c.str());
    return twice / 2;
}

MultiplicitySequence multiplicity_sequence(const CuspType& c) {
    MultiplicitySequence out;
    // Euclid on (e, d): each quotient q of the larger by the smaller contributes q copies of the smaller.
    auto euclid = [&out](std::int64_t e, std::int64_t d) {
        while (e > 0 && d > 0) {
            if (d >= e) {
                out.insert(out.end(), d / e, e);
                d %= e;
            } else {
                out.insert(out.end(), e / d, d);
                e %= d;
            }
        }
    };
    euclid(c.M(1), c.N(1));
    for (int j = 2; j <= c.k(); ++j) euclid(c.M(j), c.N(j));
    while (!out.empty() && out.back() == 1) out.pop_back();
    return out;
}

std::int64_t delta_from_multiplicities(const MultiplicitySequence& m) {
    std::int64_t s = 0;
    for (auto x : m) {
        if (x < 1) throw InputError("multiplicities must be positive");
        s += x * (x - 1) / 2;
    }
    return s;
}

Rational lct(const CuspType& c) { return Rational(BigInt(1), BigInt(c.M(1))) + Rational(BigInt(1), BigInt(c.N(1))); }

bool Semigroup::contains(std::int64_t t) const {
    if (t < 0) return false;
    if (t >= conductor) return true;
    return members.at(static_cast<std::size_t>(t));
}

Semigroup semigroup(const CuspType& c, std::int64_t bound) {
    const std::int64_t delta = delta_from_pairs(c);
    if (bound < 2 * delta)
        throw InputError("semigroup bound " + std::to_string(bound) + " is below 2*delta = " +
                         std::to_string(2 * delta));
    Semigroup s;
    s.generators.push_back(0);
    for (auto w : c.generators()) s.generators.push_back(w);
    s.bound = bound;
    s.conductor = 2 * delta;
    s.members.assign(static_cast<std::size_t>(bound), false);
    if (bound > 0) s.members[0] = true;
    for (std::int64_t t = 1; t < bound; ++t) {
        for (auto w : c.generators()) {
            if (w <= t && s.members[static_cast<std::size_t>(t - w)]) {
                s.members[static_cast<std::size_t>(t)] = true;
                break;
            }
        }
    }
    return s;
}

std::vector<std::int64_t> apery_set(const CuspType& c) {
    const auto& g = c.generators();
    const std::int64_t w1 = g[0];
    constexpr auto inf = std::numeric_limits<std::int64_t>::max();
    std::vector<std::int64_t> dist(static_cast<std::size_t>(w1), inf);
    using Item = std::pair<std::int64_t, std::int64_t>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
    dist[0] = 0;
    pq.push({0, 0});
    while (!pq.empty()) {
        auto [d, r] = pq.top();
        pq.pop();
        if (d != dist[static_cast<std::size_t>(r)]) continue;
        for (std::size_t i = 1; i < g.size(); ++i) {
            std::int64_t nd = d + g[i];
            std::int64_t nr = nd % w1;
            if (nd < dist[static_cast<std::size_t>(nr)]) {
                dist[static_cast<std::size_t>(nr)] = nd;
                pq.push({nd, nr});
            }
        }
    }
    return dist;
}

std::int64_t counting_R(const CuspType& c, std::int64_t t) {
    if (t <= 0) return 0;
    const std::int64_t w1 = c.generators()[0];
    std::int64_t count = 0;
    for (auto ap : apery_set(c))
        if (ap < t) count += (t - 1 - ap) / w1 + 1;
    return count;
}

std::string to_string(const MultiplicitySequence& m) {
    std::string s = "(";
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(m[i]);
    }
    return s + ")";
}

}  // namespace clv::cusp
