#include "clv/manetti.hpp"
#include "clv/markov.hpp"

#include "doctest.h"

using namespace clv;

TEST_CASE("M(5) invariants") {
    auto t = markov::make_triple(1, 2, 5);
    auto m5 = manetti::keeping(t, {5});
    CHECK(manetti::picard_index(m5) == 25);
    CHECK(manetti::self_intersection({m5, 1}) == rat(1, 25));
    CHECK(manetti::self_intersection({m5, 5}) == 1);
    CHECK_FALSE(manetti::DivisorClass{m5, 1}.is_cartier());
    CHECK(manetti::DivisorClass{m5, 25}.is_cartier());
    auto l = manetti::limit_degree_on_Mc(5, 5);
    REQUIRE(l);
    CHECK(*l == 25);
    CHECK_FALSE(manetti::limit_degree_on_Mc(7, 5));
}

TEST_CASE("gonality certificate") {
    auto g = manetti::gonality_certificate(markov::make_triple(1, 2, 5), 1);
    CHECK(g.bound == 2);
    CHECK(g.plane_gonality == 4);
    CHECK(g.nonplanar);
}

TEST_CASE("P(a^2,b^2,c^2) has K^2 = 9") {
    // K^2 = (a^2+b^2+c^2)^2 / (a^2 b^2 c^2) on the full weighted plane
    for (const auto& t : markov::markov_tree(1000)) {
        auto s = manetti::full(t);
        const BigInt w = t.a * t.a + t.b * t.b + t.c * t.c;
        CHECK(Rational(w * w, manetti::picard_index(s)) == 9);
    }
}

TEST_CASE("ambient embedding of M(c)") {
    auto e = manetti::ambient_embedding(markov::make_triple(1, 2, 5));
    CHECK(e.c_prime == 1);
    CHECK(e.weights == std::array<BigInt, 4>{1, 4, 1, 5});
}

TEST_CASE("catalogs") {
    auto c5 = manetti::surface_catalog(5);
    auto c7 = manetti::surface_catalog(7);
    CHECK(c5.size() == 4);
    CHECK(c7.size() == 2);
    CHECK(c7[1].weights == std::vector<BigInt>{1, 1, 4});
}
