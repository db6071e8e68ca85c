#include "doctest.h"

#include <random>

#include "helpers.hpp"
#include "pinch/growth.hpp"

using namespace pinch;
using test_helpers::make_family;

TEST_CASE("growth_profile values") {
    auto [g, t] = make_family("tree:3", 6);
    auto profile = growth_profile(g, t, {t.root}, 4);
    REQUIRE(profile.rows.size() == 1);
    CHECK(profile.rows[0].sizes == std::vector<long long>{1, 4, 10, 22, 46});

    auto zero = growth_profile(g, t, stratified_sample(g, t, 3), 0);
    for (const auto& row : zero.rows) CHECK(row.sizes == std::vector<long long>{1});

    auto [gl, tl] = make_family("grid:1", 5);
    auto line = growth_profile(gl, tl, {tl.root}, 3);
    CHECK(line.rows[0].sizes == std::vector<long long>{1, 3, 5, 7});
}

TEST_CASE("growth_profile drops margin-violating samples with a warning") {
    auto [g, t] = make_family("tree:3", 4);
    int deep = -1;
    for (int v = 0; v < g.size(); ++v)
        if (t.dist[v] == 3) deep = v;
    auto profile = growth_profile(g, t, {t.root, deep}, 3);
    CHECK(profile.rows.size() == 1);
    CHECK(profile.warnings.size() == 1);
}

TEST_CASE("stratified sample is one vertex per shell, lowest key") {
    auto [g, t] = make_family("tree:3", 5);
    auto sample = stratified_sample(g, t, 2);
    REQUIRE(sample.size() == 3);
    CHECK(g.id(sample[0]).key == "R");
    CHECK(g.id(sample[1]).key == "R.0");
    CHECK(g.id(sample[2]).key == "R.0.0");
}

TEST_CASE("pinch_fit on the 3-regular tree") {
    auto [g, t] = make_family("tree:3", 13);
    auto profile = growth_profile(g, t, stratified_sample(g, t, 1), 12);
    auto est = pinch_fit(profile);
    CHECK(est.a > 1.95);
    CHECK(est.a < 2.05);
    CHECK(est.c <= 3.5);
    CHECK(est.violations.empty());
    // determinism
    auto est2 = pinch_fit(profile);
    CHECK(est.a == est2.a);
    CHECK(est.c == est2.c);
    // duplicating samples leaves the fit unchanged
    GrowthProfile doubled = profile;
    doubled.rows.insert(doubled.rows.end(), profile.rows.begin(), profile.rows.end());
    auto est3 = pinch_fit(doubled);
    CHECK(est3.a == doctest::Approx(est.a).epsilon(1e-12));
    CHECK(est3.c == doctest::Approx(est.c).epsilon(1e-12));
}

TEST_CASE("pinch_fit degenerate inputs") {
    CHECK_THROWS_AS(pinch_fit(GrowthProfile{}), DegenerateFitError);
    GrowthProfile constant;
    constant.r_max = 4;
    constant.rows.push_back({0, {"x"}, {1, 1, 1, 1, 1}});
    CHECK_THROWS_AS(pinch_fit(constant), DegenerateFitError);
}

TEST_CASE("fit-then-verify returns no violations") {
    for (const char* s : {"tree:3", "tree:4", "lamplighter"}) {
        auto [g, t] = make_family(s, 10);
        auto sample = stratified_sample(g, t, 2);
        auto profile = growth_profile(g, t, sample, 8);
        auto est = pinch_fit(profile);
        CHECK(pinch_verify(g, t, est.a, est.c, 8, both_sided(sample)).empty());
    }
}

TEST_CASE("pinch_verify explicit constants on the tree") {
    auto [g, t] = make_family("tree:3", 11);
    CHECK(pinch_verify(g, t, 2.0, 3.0, 10, both_sided({t.root})).empty());
    // c = 1 demands |B(v,r)| = a^r exactly
    CHECK(!pinch_verify(g, t, 2.0, 1.0, 10, both_sided({t.root})).empty());
    CHECK_THROWS_AS(pinch_verify(g, t, 1.0, 3.0, 10, both_sided({t.root})),
                    InvalidParameterError);
}

TEST_CASE("pinch_verify one-sided modes") {
    auto [g, t] = make_family("tree:3", 11);
    // |B| = 3*2^r - 2 > 2^r: the lower inequality with c=1 holds, the upper fails
    CHECK(pinch_verify(g, t, 2.0, 1.0, 8, {{t.root, PinchSide::lower_only}}).empty());
    CHECK(!pinch_verify(g, t, 2.0, 1.0, 8, {{t.root, PinchSide::upper_only}}).empty());
}

TEST_CASE("phi basics") {
    auto [g, t] = make_family("tree:3", 8);
    CHECK(phi(g, t, t.root, 1) == 1);
    CHECK(phi(g, t, t.root, 10) == 2);
    auto [gz, tz] = make_family("grid:2", 8);
    CHECK(phi(gz, tz, tz.root, 14) == 3);  // |B(2)| = 13 < 14 <= |B(3)| = 25
    CHECK_THROWS_AS(phi(g, t, t.root, 1'000'000'000), OutOfRangeError);
}

TEST_CASE("phi monotonicity and table invariants") {
    auto [g, t] = make_family("tree:3", 10);
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        long long n1 = 1 + rng() % 300, n2 = 1 + rng() % 300;
        if (n1 > n2) std::swap(n1, n2);
        CHECK(phi(g, t, t.root, n1) <= phi(g, t, t.root, n2));
    }
    auto table = phi_table(g, t, t.root, {1, 4, 10, 22, 23, 94});
    auto sizes = ball_sizes(g, t, t.root, 5);
    for (auto [n, r] : table.values) {
        CHECK(sizes[r] >= n);
        if (r > 1) CHECK(sizes[r - 1] < n);
    }
}
