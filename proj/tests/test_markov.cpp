#include "clv/manetti.hpp"
#include "clv/markov.hpp"

#include "doctest.h"

#include <cmath>
#include <set>
#include <tuple>

using namespace clv;

namespace {

using T3 = std::tuple<long, long, long>;

// Solve the quadratic in c for every a <= b <= n.
std::set<T3> brute_triples(long n) {
    std::set<T3> out;
    for (long a = 1; a <= n; ++a)
        for (long b = a; b <= n; ++b) {
            const long disc = 9 * a * a * b * b - 4 * (a * a + b * b);
            if (disc < 0) continue;
            long s = long(std::sqrt(double(disc)));
            while (s * s > disc) --s;
            while ((s + 1) * (s + 1) <= disc) ++s;
            if (s * s != disc) continue;
            for (long num : {3 * a * b - s, 3 * a * b + s})
                if (num % 2 == 0 && num / 2 >= b && num / 2 <= n) out.insert({a, b, num / 2});
        }
    return out;
}

T3 key(const markov::Triple& t) { return {long(t.a), long(t.b), long(t.c)}; }

}  // namespace

TEST_CASE("tree matches the quadratic brute force") {
    for (long n : {1L, 2L, 13L, 100L, 500L, 2000L}) {
        std::set<T3> tree;
        for (const auto& t : markov::markov_tree(n)) tree.insert(key(t));
        CHECK(tree == brute_triples(n));
    }
}

TEST_CASE("first Markov numbers") {
    auto v = markov::markov_numbers(200);
    CHECK(v == std::vector<BigInt>{1, 2, 5, 13, 29, 34, 89, 169, 194});
    CHECK(markov::is_markov_number(433));
    CHECK_FALSE(markov::is_markov_number(6));
    CHECK(markov::markov_count(89) == 7);
}

TEST_CASE("mutation is an involution and descent reaches the root") {
    for (const auto& t : markov::markov_tree(5000)) {
        for (int i = 0; i < 3; ++i) {
            auto s = markov::mutate(t, i);
            CHECK(markov::is_markov_triple(s.a, s.b, s.c));
            // mutating the replaced entry back gives t again
            bool back = false;
            for (int k = 0; k < 3; ++k) back = back || markov::mutate(s, k) == t;
            CHECK(back);
        }
        CHECK(markov::descent_steps(t) >= 0);
    }
    CHECK(markov::descent_steps(markov::make_triple(1, 1, 1)) == 0);
    CHECK(markov::descent_steps(markov::make_triple(1, 5, 13)) == 3);
}

TEST_CASE("volume check and gonality gap") {
    for (const auto& t : markov::markov_tree(100000)) CHECK(manetti::volume_check(t) == 9);
    CHECK(markov::verify_gonality_gap(1'000'000));
}

TEST_CASE("large entries stay exact") {
    // the (1, b, c) branch: (1, 5, 13) -> (1, 13, 34) -> (1, 34, 89) ...
    markov::Triple t = markov::make_triple(1, 5, 13);
    for (int i = 0; i < 60; ++i) {
        t = markov::mutate(t, 1);
        REQUIRE(t.a == 1);
    }
    CHECK(markov::is_markov_triple(t.a, t.b, t.c));
    CHECK(t.c > BigInt(1) << 64);
}

TEST_CASE("bad triples are input errors") {
    CHECK_THROWS_AS(markov::make_triple(1, 2, 3), InputError);
    CHECK_THROWS_AS(markov::make_triple(0, 1, 1), InputError);
    CHECK_THROWS_AS(markov::mutate(markov::make_triple(1, 1, 1), 3), InputError);
    CHECK_THROWS_AS(markov::markov_tree(0), InputError);
}
