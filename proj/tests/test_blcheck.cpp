#include "clv/blcheck.hpp"

#include "doctest.h"

#include <functional>
#include <random>

using namespace clv;
using cusp::CuspType;

TEST_CASE("R-table for (2,19) and (4,5)") {
    const CuspType a = CuspType::single(2, 19), b = CuspType::single(4, 5);
    const std::vector<std::int64_t> want{7, 7, 7, 8, 7, 7, 7, 8, 8, 8};
    for (std::int64_t k = 12; k >= 3; --k)
        CHECK(cusp::counting_R(a, k) + cusp::counting_R(b, 15 - k) == want[std::size_t(12 - k)]);
    auto v = bl::bl_check(7, {a, b});
    CHECK_FALSE(v.pass);
    CHECK(v.fail_j == 2);
    CHECK(v.achieved_min == 7);
    CHECK(v.required == 6);
}

TEST_CASE("quintic with (2,3) and (2,11) passes") {
    const std::vector<CuspType> cs{CuspType::single(2, 3), CuspType::single(2, 11)};
    auto v = bl::bl_check(5, cs);
    CHECK(v.pass);
    for (const auto& row : v.table)
        if (row.target > 0) CHECK(bl::brute_min(cs, row.target, 0, row.target) == row.minimum);
}

TEST_CASE("min-plus table equals brute force on random cusp sets") {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<int> nd(1, 3), ad(2, 5), bd(3, 13);
    int tried = 0;
    while (tried < 60) {
        std::vector<CuspType> cs;
        std::int64_t delta = 0;
        const int n = nd(rng);
        for (int i = 0; i < n; ++i) {
            int a = ad(rng), b = bd(rng);
            if (b <= a || gcd64(a, b) != 1) continue;
            cs.push_back(CuspType::single(a, b));
            delta += cusp::delta_from_pairs(cs.back());
        }
        if (cs.empty()) continue;
        // smallest d whose genus is at least delta; pad with ordinary cusps to match
        int d = 3;
        while ((d - 1) * (d - 2) / 2 < delta) ++d;
        if (d > 8) continue;
        // brute_min is exponential in the number of cusps
        if (cs.size() + std::size_t((d - 1) * (d - 2) / 2 - delta) > 4) continue;
        while (delta < (d - 1) * (d - 2) / 2) {
            cs.push_back(CuspType::single(2, 3));
            ++delta;
        }
        ++tried;
        auto v = bl::bl_check(d, cs);
        for (const auto& row : v.table) {
            if (row.target <= 0) continue;
            CHECK(bl::brute_min(cs, row.target, 0, row.target) == row.minimum);
            std::int64_t s = 0, at = 0;
            for (std::size_t i = 0; i < cs.size(); ++i) {
                s += row.argmin[i];
                at += cusp::counting_R(cs[i], row.argmin[i]);
            }
            CHECK(s == row.target);
            CHECK(at == row.minimum);
        }
    }
}

TEST_CASE("known unicuspidal classifications survive, impostors do not") {
    auto names = [](int d) {
        std::vector<std::string> v;
        for (const auto& s : bl::unicuspidal_candidates(d, 3).survivors) v.push_back(s.cusp.str());
        return v;
    };
    CHECK(names(4) == std::vector<std::string>{"[(2,7)]", "[(3,4)]"});
    CHECK(names(5) == std::vector<std::string>{"[(2,13)]", "[(4,5)]"});
    CHECK(names(6) == std::vector<std::string>{"[(3,11)]", "[(5,6)]", "[(2,3),(2,5)]"});
    auto r7 = bl::unicuspidal_candidates(7, 3);
    std::vector<std::string> single;
    for (const auto& s : r7.survivors)
        if (s.cusp.k() == 1) single.push_back(s.cusp.str());
    CHECK(single == std::vector<std::string>{"[(6,7)]"});
    for (const auto& s : r7.survivors) CHECK(s.lct < rat(3, 7));
}

TEST_CASE("Newton pair floor") {
    CHECK(bl::remark_delta_floor(1) == 0);
    CHECK(bl::remark_delta_floor(2) == 7);
    CHECK(bl::remark_delta_floor(3) == 29);
}

TEST_CASE("pairs_with_delta against a direct search") {
    for (std::int64_t delta : {1, 5, 6, 10, 15}) {
        for (int k = 1; k <= 2; ++k) {
            std::vector<std::vector<cusp::NewtonPair>> brute;
            const std::int64_t two = 2 * delta;
            if (k == 1) {
                for (std::int64_t m = 2; m <= two + 1; ++m)
                    for (std::int64_t n = m + 1; (m - 1) * (n - 1) <= two; ++n)
                        if ((m - 1) * (n - 1) == two) brute.push_back({{m, n}});
            } else {
                for (std::int64_t m1 = 2; m1 <= two; ++m1)
                    for (std::int64_t m2 = 2; m1 * m2 - 1 <= two; ++m2)
                        for (std::int64_t n1 = m1 + 1; (m1 * m2 - 1) * (n1 * m2 - 1) <= two; ++n1)
                            for (std::int64_t n2 = 1; (m1 * m2 - 1) * (n1 * m2 - 1) + (m2 - 1) * n2 <= two; ++n2)
                                if ((m1 * m2 - 1) * (n1 * m2 - 1) + (m2 - 1) * n2 == two)
                                    brute.push_back({{m1, n1}, {m2, n2}});
            }
            auto got = bl::pairs_with_delta(delta, k);
            auto key = [](const std::vector<std::vector<cusp::NewtonPair>>& v) {
                std::vector<std::vector<std::int64_t>> out;
                for (const auto& p : v) {
                    std::vector<std::int64_t> f;
                    for (auto q : p) f.insert(f.end(), {q.m, q.n});
                    out.push_back(f);
                }
                std::sort(out.begin(), out.end());
                return out;
            };
            CAPTURE(delta);
            CAPTURE(k);
            CHECK(key(got) == key(brute));
        }
    }
}

TEST_CASE("Diophantine steps") {
    auto pairs = [](std::int64_t p) {
        std::vector<std::pair<std::int64_t, std::int64_t>> v;
        for (auto x : bl::diophantine_pairs(p)) v.push_back({x.a, x.b});
        return v;
    };
    using V = std::vector<std::pair<std::int64_t, std::int64_t>>;
    CHECK(pairs(28) == V{{2, 29}, {3, 15}, {5, 8}});
    CHECK(pairs(10) == V{{2, 11}, {3, 6}});
    CHECK(pairs(12) == V{{2, 13}, {3, 7}, {4, 5}});
    for (std::int64_t p = 1; p <= 200; ++p)
        for (auto x : bl::diophantine_pairs(p)) {
            CHECK((x.a - 1) * (x.b - 1) == p);
            CHECK(x.gcd == gcd64(x.a, x.b));
        }
}

TEST_CASE("bad input") {
    CHECK_THROWS_AS(bl::bl_check(2, {CuspType::single(2, 3)}), InputError);
    CHECK_THROWS_AS(bl::bl_check(5, {CuspType::single(2, 3)}), InputError);
    CHECK_THROWS_AS(bl::bl_check(5, {}), InputError);
    CHECK_THROWS_AS(bl::unicuspidal_candidates(7, 4), InputError);
    CHECK_THROWS_AS(bl::diophantine_pairs(0), InputError);
}
