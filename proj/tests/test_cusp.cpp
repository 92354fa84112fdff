#include "clv/cusp.hpp"

#include "doctest.h"

#include <algorithm>
#include <random>

using namespace clv;
using cusp::CuspType;

namespace {

// Additive closure of the generators on [0, bound).
std::vector<bool> closure(const std::vector<std::int64_t>& gens, std::int64_t bound) {
    std::vector<bool> in(std::size_t(bound), false);
    in[0] = true;
    for (std::int64_t x = 1; x < bound; ++x)
        for (auto g : gens)
            if (g <= x && in[std::size_t(x - g)]) {
                in[std::size_t(x)] = true;
                break;
            }
    return in;
}

// Minimal generators of a numerical semigroup given on [0, bound).
std::vector<std::int64_t> minimal_generators(const std::vector<bool>& in) {
    std::vector<std::int64_t> gens;
    for (std::int64_t x = 1; x < std::int64_t(in.size()); ++x) {
        if (!in[std::size_t(x)]) continue;
        bool sum = false;
        for (std::int64_t y = 1; y < x && !sum; ++y) sum = in[std::size_t(y)] && in[std::size_t(x - y)];
        if (!sum) gens.push_back(x);
    }
    return gens;
}

// Euclid's algorithm gives the multiplicity sequence of y^a = x^b.
cusp::MultiplicitySequence euclid(std::int64_t a, std::int64_t b) {
    cusp::MultiplicitySequence m;
    while (a > 1) {
        for (std::int64_t i = 0; i < b / a; ++i) m.push_back(a);
        const auto r = b % a;
        b = a;
        a = r;
    }
    return m;
}

CuspType random_cusp(std::mt19937_64& rng, std::int64_t max_delta) {
    std::uniform_int_distribution<int> kd(1, 3), md(2, 30), nd(1, 30);
    while (true) {
        std::vector<cusp::NewtonPair> p;
        const int k = kd(rng);
        for (int j = 0; j < k; ++j) p.push_back({md(rng), nd(rng)});
        try {
            CuspType c(p);
            if (cusp::delta_from_pairs(c) <= max_delta) return c;
        } catch (const InputError&) {
        }
    }
}

}  // namespace

TEST_CASE("unicuspidal table up to degree 6") {
    struct Row {
        std::vector<cusp::NewtonPair> p;
        std::int64_t delta;
        Rational lct;
        cusp::MultiplicitySequence m;
    };
    const std::vector<Row> rows{{{{2, 3}}, 1, rat(5, 6), {2}},
                                {{{2, 7}}, 3, rat(9, 14), {2, 2, 2}},
                                {{{3, 4}}, 3, rat(7, 12), {3}},
                                {{{2, 13}}, 6, rat(15, 26), {2, 2, 2, 2, 2, 2}},
                                {{{4, 5}}, 6, rat(9, 20), {4}},
                                {{{3, 11}}, 10, rat(14, 33), {3, 3, 3, 2}},
                                {{{2, 3}, {2, 5}}, 10, rat(5, 12), {4, 2, 2, 2, 2}},
                                {{{5, 6}}, 10, rat(11, 30), {5}}};
    for (const auto& r : rows) {
        CuspType c(r.p);
        CAPTURE(c.str());
        CHECK(cusp::delta_from_pairs(c) == r.delta);
        CHECK(cusp::lct(c) == r.lct);
        CHECK(cusp::multiplicity_sequence(c) == r.m);
    }
}

TEST_CASE("500 random cusps against brute-force semigroups") {
    std::mt19937_64 rng(7);
    for (int i = 0; i < 500; ++i) {
        const CuspType c = random_cusp(rng, 3000);
        CAPTURE(c.str());
        const auto delta = cusp::delta_from_pairs(c);
        const auto mult = cusp::multiplicity_sequence(c);
        CHECK(cusp::delta_from_multiplicities(mult) == delta);
        std::int64_t tri = 0;
        for (auto m : mult) tri += m * (m - 1) / 2;
        CHECK(tri == delta);

        const std::int64_t bound = 2 * delta + 2 * c.generators()[0] + 2;
        const auto brute = closure(c.generators(), bound);
        const auto S = cusp::semigroup(c, bound);
        for (std::int64_t x = 0; x < bound; ++x) REQUIRE(S.contains(x) == brute[std::size_t(x)]);
        // gap count, conductor and symmetry
        std::int64_t gaps = 0, last_gap = -1;
        for (std::int64_t x = 0; x < bound; ++x)
            if (!brute[std::size_t(x)]) {
                ++gaps;
                last_gap = x;
            }
        CHECK(gaps == delta);
        CHECK(last_gap + 1 == 2 * delta);
        CHECK(S.conductor == 2 * delta);
        for (std::int64_t x = 0; x < 2 * delta; ++x) REQUIRE(brute[std::size_t(x)] != brute[std::size_t(2 * delta - 1 - x)]);
        // Apery set: least element in each residue class
        const auto w1 = c.generators()[0];
        std::vector<std::int64_t> ap(std::size_t(w1), -1);
        for (std::int64_t x = 0; x < bound; ++x)
            if (brute[std::size_t(x)] && ap[std::size_t(x % w1)] < 0) ap[std::size_t(x % w1)] = x;
        auto got = cusp::apery_set(c);
        std::sort(got.begin(), got.end());
        std::sort(ap.begin(), ap.end());
        CHECK(got == ap);
        // the generators are exactly the minimal ones
        CHECK(minimal_generators(brute) == c.generators());
        // lct = 1/mult + 1/beta_1, read off the semigroup
        CHECK(cusp::lct(c) == rat(1, mult[0]) + rat(1, c.generators()[1]));
        for (std::int64_t t : {std::int64_t(0), std::int64_t(1), delta, 2 * delta, bound - 1}) {
            std::int64_t n = 0;
            for (std::int64_t x = 0; x < t; ++x) n += brute[std::size_t(x)];
            CHECK(cusp::counting_R(c, t) == n);
        }
    }
}

TEST_CASE("single pairs: Euclid and the Newton polygon") {
    for (std::int64_t a = 2; a <= 30; ++a)
        for (std::int64_t b = a + 1; b <= 30; ++b) {
            if (gcd64(a, b) != 1) continue;
            CuspType c = CuspType::single(a, b);
            CHECK(cusp::multiplicity_sequence(c) == euclid(a, b));
            CHECK(cusp::delta_from_pairs(c) == (a - 1) * (b - 1) / 2);
            // weighted blow-ups of y^a - x^b: min (p+q)/min(bp, aq) over p, q <= 60
            Rational best = 10;
            for (std::int64_t p = 1; p <= 60; ++p)
                for (std::int64_t q = 1; q <= 60; ++q) best = std::min(best, rat(p + q, std::min(b * p, a * q)));
            CHECK(cusp::lct(c) == best);
        }
}

TEST_CASE("invalid pairs") {
    CHECK_THROWS_AS(CuspType(std::vector<clv::cusp::NewtonPair>{}), InputError);
    CHECK_THROWS_AS(CuspType({{2, 4}}), NotUnibranch);
    CHECK_THROWS_AS(CuspType({{3, 2}}), InputError);
    CHECK_THROWS_AS(CuspType({{1, 2}}), InputError);
    CHECK_THROWS_AS(CuspType({{2, 3}, {2, 0}}), InputError);
    CHECK(cusp::counting_R(CuspType::single(2, 3), -4) == 0);
}
