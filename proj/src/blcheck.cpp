#include "clv/blcheck.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <numeric>

namespace clv::bl {

using cusp::CuspType;
using cusp::NewtonPair;

namespace {

constexpr auto kInf = std::numeric_limits<std::int64_t>::max() / 4;

std::vector<std::int64_t> r_table(const CuspType& c, std::int64_t upto) {
    // R(k) for k in [0, upto]
    std::vector<std::int64_t> out(static_cast<std::size_t>(upto + 1), 0);
    auto ap = cusp::apery_set(c);
    const std::int64_t w1 = c.generators()[0];
    for (std::int64_t k = 1; k <= upto; ++k) {
        std::int64_t n = 0;
        for (auto a : ap)
            if (a < k) n += (k - 1 - a) / w1 + 1;
        out[static_cast<std::size_t>(k)] = n;
    }
    return out;
}

}  // namespace

Verdict bl_check(int d, const std::vector<CuspType>& cusps) {
    if (d < 3) throw InputError("degree must be >= 3");
    if (cusps.empty()) throw InputError("need at least one cusp");
    std::int64_t dsum = 0;
    for (const auto& c : cusps) dsum += cusp::delta_from_pairs(c);
    const std::int64_t genus = std::int64_t(d - 1) * (d - 2) / 2;
    if (dsum != genus)
        throw InputError("delta sum " + std::to_string(dsum) + " differs from (d-1)(d-2)/2 = " +
                         std::to_string(genus) + ": not a rational cuspidal configuration");

    Verdict v;
    v.degree = d;
    v.cusps = cusps;
    const std::int64_t top = std::int64_t(d - 2) * d + 1;
    std::vector<std::vector<std::int64_t>> R;
    for (const auto& c : cusps) R.push_back(r_table(c, std::max<std::int64_t>(top, 0)));

    for (int j = -1; j <= d - 2; ++j) {
        LevelRow row;
        row.j = j;
        row.target = std::int64_t(j) * d + 1;
        row.required = std::int64_t(j + 1) * (j + 2) / 2;
        const std::size_t n = cusps.size();
        if (row.target <= 0) {
            row.minimum = 0;
            row.argmin.assign(n, 0);
            row.argmin[0] = row.target;
        } else {
            // min-plus convolution over the clamped box [0, target]
            const auto T = static_cast<std::size_t>(row.target);
            std::vector<std::vector<std::int64_t>> best(n, std::vector<std::int64_t>(T + 1, kInf));
            std::vector<std::vector<std::size_t>> choice(n, std::vector<std::size_t>(T + 1, 0));
            for (std::size_t s = 0; s <= T; ++s) {
                best[0][s] = R[0][s];
                choice[0][s] = s;
            }
            for (std::size_t i = 1; i < n; ++i) {
                for (std::size_t s = 0; s <= T; ++s) {
                    for (std::size_t k = 0; k <= s; ++k) {
                        std::int64_t val = best[i - 1][s - k] + R[i][k];
                        if (val < best[i][s]) {
                            best[i][s] = val;
                            choice[i][s] = k;
                        }
                    }
                }
            }
            row.minimum = best[n - 1][T];
            row.argmin.assign(n, 0);
            std::size_t s = T;
            for (std::size_t i = n; i-- > 0;) {
                row.argmin[i] = static_cast<std::int64_t>(choice[i][s]);
                s -= choice[i][s];
            }
        }
        if (v.pass && row.minimum != row.required) {
            v.pass = false;
            v.fail_j = j;
            v.achieved_min = row.minimum;
            v.required = row.required;
        }
        v.table.push_back(std::move(row));
    }
    return v;
}

std::int64_t brute_min(const std::vector<CuspType>& cusps, std::int64_t target, std::int64_t lo, std::int64_t hi) {
    std::int64_t best = kInf;
    std::vector<std::int64_t> ks(cusps.size(), 0);
    std::function<void(std::size_t, std::int64_t, std::int64_t)> rec = [&](std::size_t i, std::int64_t left,
                                                                           std::int64_t acc) {
        if (i + 1 == cusps.size()) {
            if (left < lo || left > hi) return;
            best = std::min(best, acc + cusp::counting_R(cusps[i], left));
            return;
        }
        for (std::int64_t k = lo; k <= hi; ++k) rec(i + 1, left - k, acc + cusp::counting_R(cusps[i], k));
    };
    rec(0, target, 0);
    return best;
}

const char* reason_name(Reason r) {
    switch (r) {
        case Reason::NotCoprime: return "NotCoprime";
        case Reason::BLFail: return "BLFail";
        case Reason::NewtonBoundFail: return "NewtonBoundFail";
    }
    return "?";
}

std::int64_t remark_delta_floor(int k) {
    if (k <= 1) return 0;
    // 2 delta > (2^k - 1) 2^k
    std::int64_t p = std::int64_t(1) << k;
    return (p - 1) * p / 2 + 1;
}

std::vector<std::vector<NewtonPair>> pairs_with_delta(std::int64_t delta, int k) {
    std::vector<std::vector<NewtonPair>> out;
    const std::int64_t two = 2 * delta;
    if (k < 1 || delta < 1) return out;
    std::vector<std::int64_t> m(k, 2);
    std::vector<NewtonPair> cur(k);

    // Choose the n's once the m's are fixed; 2 delta = (M1-1)(N1-1) + sum_{j>=2} (M_j-1) N_j.
    std::function<void(int, std::int64_t)> pick_n = [&](int j, std::int64_t left) {
        std::int64_t tail = 1;  // m_{j+1} ... m_k
        for (int i = j + 1; i < k; ++i) tail *= m[i];
        const std::int64_t Mj = m[j] * tail;
        if (j == 0) {
            // (M1-1)(n1 * tail - 1) = left
            if (left % (Mj - 1) != 0) return;
            std::int64_t N1 = left / (Mj - 1) + 1;
            if (N1 % tail != 0) return;
            std::int64_t n1 = N1 / tail;
            if (n1 <= m[0]) return;
            cur[0] = {m[0], n1};
            out.push_back(cur);
            return;
        }
        // contribution (M_j - 1) * n_j * tail
        const std::int64_t unit = (Mj - 1) * tail;
        for (std::int64_t n = 1; n * unit <= left; ++n) {
            cur[j] = {m[j], n};
            pick_n(j - 1, left - n * unit);
        }
    };

    std::function<void(int, std::int64_t)> pick_m = [&](int j, std::int64_t prod) {
        if (j == k) {
            pick_n(k - 1, two);
            return;
        }
        for (std::int64_t x = 2;; ++x) {
            std::int64_t p = prod * x;
            // crude bound: M1 - 1 <= 2 delta
            if (p - 1 > two) break;
            m[j] = x;
            pick_m(j + 1, p);
        }
    };
    pick_m(0, 1);
    std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) {
        return std::lexicographical_compare(x.begin(), x.end(), y.begin(), y.end(),
                                            [](const NewtonPair& p, const NewtonPair& q) {
                                                return p.m != q.m ? p.m < q.m : p.n < q.n;
                                            });
    });
    return out;
}

CandidateReport unicuspidal_candidates(int d, int max_pairs) {
    if (d < 3) throw InputError("degree must be >= 3");
    if (max_pairs < 1 || max_pairs > 3) throw InputError("max_pairs must be 1, 2 or 3");
    CandidateReport rep;
    rep.degree = d;
    rep.max_pairs = max_pairs;
    rep.target_delta = std::int64_t(d - 1) * (d - 2) / 2;
    for (int k = 1; k <= max_pairs; ++k) {
        if (rep.target_delta < remark_delta_floor(k)) {
            rep.eliminated.push_back({{}, k, Reason::NewtonBoundFail, 0, 0, 0});
            continue;
        }
        for (auto& raw : pairs_with_delta(rep.target_delta, k)) {
            bool coprime = std::all_of(raw.begin(), raw.end(),
                                       [](const NewtonPair& p) { return gcd64(p.m, p.n) == 1; });
            if (!coprime) {
                rep.eliminated.push_back({raw, k, Reason::NotCoprime, 0, 0, 0});
                continue;
            }
            CuspType c(raw);
            Verdict v = bl_check(d, {c});
            if (!v.pass) {
                rep.eliminated.push_back({raw, k, Reason::BLFail, v.fail_j, v.achieved_min, v.required});
                continue;
            }
            rep.survivors.push_back({c, cusp::lct(c)});
        }
    }
    return rep;
}

std::vector<DiophantinePair> diophantine_pairs(std::int64_t product) {
    if (product < 1) throw InputError("product must be >= 1");
    std::vector<DiophantinePair> out;
    for (std::int64_t x = 1; x * x <= product; ++x) {
        if (product % x != 0) continue;
        std::int64_t a = x + 1, b = product / x + 1;
        out.push_back({a, b, gcd64(a, b)});
    }
    return out;
}

}  // namespace clv::bl
