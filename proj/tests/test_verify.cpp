#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "orlicz/verify.hpp"

using namespace orlicz;

TEST_CASE("glob matching") {
    CHECK(glob_match("*", "anything"));
    CHECK(glob_match("semivar-*", "semivar-oracle"));
    CHECK_FALSE(glob_match("semivar-*", "lux-homogeneity"));
    CHECK(glob_match("*-oracle", "semivar-oracle"));
    CHECK(glob_match("chi-norm-formula", "chi-norm-formula"));
    CHECK_FALSE(glob_match("chi-norm", "chi-norm-formula"));
}

TEST_CASE("registry shape") {
    Registry reg = default_registry();
    REQUIRE_FALSE(reg.checks().empty());
    std::set<std::string> ids;
    for (const auto& c : reg.checks()) {
        CHECK(ids.insert(c.id).second);
        CHECK_FALSE(c.statement.empty());
        CHECK(c.default_instances > 0);
    }
    // the bundled index lists every registered check
    Json idx = registry_index(reg);
    for (const auto& c : reg.checks()) {
        REQUIRE(idx.contains(c.id));
        CHECK(idx[c.id] == c.statement);
    }
}

TEST_CASE("replay determinism") {
    Registry reg = default_registry();
    auto a = run_suite(reg, "young-*", 42, 20, 2);
    auto b = run_suite(reg, "young-*", 42, 20, 1);
    CHECK(verdicts_to_json(a, "young-*", 42, 20).dump() ==
          verdicts_to_json(b, "young-*", 42, 20).dump());

    // different seeds draw different instances yet keep the shape
    auto c = run_suite(reg, "young-*", 43, 20);
    CHECK(a.size() == c.size());
}

TEST_CASE("failure counterexamples replay identically") {
    Registry reg;
    reg.add("always-odd", "fails whenever the drawn integer is odd", 40,
            [](Rng& rng, int n, Verdict& v) {
                for (int k = 0; k < n; ++k) {
                    std::uint64_t replay = rng.next_u64();
                    Rng local(replay);
                    std::uint64_t x = local.next_u64();
                    if (x % 2 == 1)
                        v.failures.push_back(Failure{replay, Json{{"x", x}}});
                }
            });
    auto a = run_suite(reg, "*", 7, 0);
    auto b = run_suite(reg, "*", 7, 0);
    REQUIRE(a.size() == 1);
    REQUIRE_FALSE(a[0].pass());
    CHECK(verdicts_to_json(a, "*", 7, 0).dump() == verdicts_to_json(b, "*", 7, 0).dump());

    // the recorded replay seed regenerates the counterexample
    const Failure& f = a[0].failures.front();
    Rng local(f.replay_seed);
    CHECK(local.next_u64() == f.counterexample.at("x").get<std::uint64_t>());
}

TEST_CASE("a throwing check becomes a failed verdict, not a crashed run") {
    Registry reg;
    reg.add("explodes", "always throws", 3, [](Rng&, int, Verdict&) {
        throw Error("boom");
    });
    auto v = run_suite(reg, "*", 1, 0);
    REQUIRE(v.size() == 1);
    CHECK_FALSE(v[0].pass());
    CHECK(v[0].failures[0].counterexample.at("exception").get<std::string>().find("boom") !=
          std::string::npos);
}

TEST_CASE("unknown filter is an error") {
    Registry reg = default_registry();
    CHECK_THROWS_AS(run_suite(reg, "no-such-check-*", 1, 5), UnknownFilterError);
}

TEST_CASE("comma-separated filters select unions") {
    Registry reg = default_registry();
    auto v = run_suite(reg, "semivar-oracle,chi-norm-formula", 42, 5);
    REQUIRE(v.size() == 2);
    CHECK(v[0].id == "chi-norm-formula");  // verdicts assemble in id order
    CHECK(v[1].id == "semivar-oracle");
}

TEST_CASE("small-budget sweep of the whole registry passes") {
    Registry reg = default_registry();
    auto verdicts = run_suite(reg, "*", 42, 4);
    for (const auto& v : verdicts) {
        INFO(v.id);
        CHECK(v.pass());
    }
    Json doc = verdicts_to_json(verdicts, "*", 42, 4);
    CHECK(doc.at("v") == 1);
    CHECK(doc.at("checks").size() == verdicts.size());
}
