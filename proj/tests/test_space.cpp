#include <catch2/catch_amalgamated.hpp>

#include "orlicz/rng.hpp"
#include "orlicz/space.hpp"

using namespace orlicz;

TEST_CASE("measure of sets") {
    SpacePtr sp = make_space({"a1", "a2"}, {1.0, 2.0});
    AtomSet just_first(2);
    just_first.set(0);
    CHECK(mu(sp, just_first) == 1.0);
    CHECK(mu(sp, empty_set(2)) == 0.0);
    CHECK(mu(sp, full_set(2)) == 3.0);
    CHECK(sp->total_measure() == 3.0);
}

TEST_CASE("construction guards") {
    CHECK_THROWS_AS(make_space({"a", "a"}, {1.0, 1.0}), Error);
    CHECK_THROWS_AS(make_space({"a", "b"}, {1.0, 0.0}), Error);
    CHECK_THROWS_AS(make_space({"a", "b"}, {1.0, -2.0}), Error);
    CHECK_THROWS_AS(make_space({}, {}), Error);
    SpacePtr sp = unit_space(2);
    CHECK_THROWS_AS(Fn(sp, {1.0}), Error);
    CHECK_THROWS_AS(Fn(sp, {1.0, std::nan("")}), Error);
    CHECK(sp->index_of("a2") == 1);
    CHECK(sp->index_of("zz") == -1);
}

TEST_CASE("lattice operations") {
    SpacePtr sp = unit_space(2);
    Fn f(sp, {2.0, -1.0});
    Fn g(sp, {1.5, 3.0});
    CHECK(abs(f).values() == std::vector<double>{2.0, 1.0});
    CHECK(add(f, g).values() == std::vector<double>{3.5, 2.0});
    CHECK(scale(f, -2.0).values() == std::vector<double>{-4.0, 2.0});
    CHECK(pointwise_max(f, g).values() == std::vector<double>{2.0, 3.0});
    CHECK(pointwise_leq(abs(f), Fn(sp, {2.0, 1.0})));
    CHECK_FALSE(pointwise_leq(g, f));

    Fn other(unit_space(3), {1, 2, 3});
    CHECK_THROWS_AS(add(f, other), SpaceMismatchError);
}

TEST_CASE("level sets use strict inequality") {
    SpacePtr sp = unit_space(2);
    Fn f(sp, {2.0, 1.0});
    AtomSet a1 = level_set(f, 1.0);
    CHECK(a1.contains(0));
    CHECK_FALSE(a1.contains(1));
    CHECK(level_set(f, 0.0) == full_set(2));
    CHECK(level_set(f, 2.0) == empty_set(2));
}

TEST_CASE("level sets shrink as the threshold grows") {
    Rng rng(5);
    SpacePtr sp = unit_space(6);
    for (int k = 0; k < 100; ++k) {
        Fn f(sp, rng.uniform_vector(6, -5.0, 5.0));
        double t1 = rng.uniform(0.0, 5.0);
        double t2 = t1 + rng.uniform(0.0, 2.0);
        CHECK(level_set(f, t2).subset_of(level_set(f, t1)));
    }
}

TEST_CASE("set masks must match the carrier") {
    SpacePtr sp = unit_space(3);
    CHECK_THROWS_AS(mu(sp, AtomSet(2)), SpaceMismatchError);
    CHECK_THROWS_AS(indicator(sp, AtomSet(5)), SpaceMismatchError);
    CHECK_THROWS_AS(restrict(Fn(sp, {1, 2, 3}), AtomSet(2)), SpaceMismatchError);
}

TEST_CASE("indicators, restriction, support") {
    SpacePtr sp = unit_space(3);
    AtomSet a(3);
    a.set(1);
    Fn chi = indicator(sp, a);
    CHECK(chi.values() == std::vector<double>{0.0, 1.0, 0.0});
    Fn f(sp, {4.0, 5.0, 0.0});
    CHECK(restrict(f, a).values() == std::vector<double>{0.0, 5.0, 0.0});
    CHECK(support(f).count() == 2);
    CHECK(pow_elements(Fn(sp, {4.0, -9.0, 0.0}), 0.5).values() ==
          std::vector<double>{2.0, 3.0, 0.0});
}
