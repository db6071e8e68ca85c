#include "doctest.h"

#include <set>
#include <sstream>

#include "helpers.hpp"
#include "pinch/isoperimetry.hpp"
#include "pinch/search.hpp"

using namespace pinch;
using test_helpers::make_family;
using test_helpers::make_path;

namespace {

VertexSet ball_set(const FiniteGraph& g, const Truncation& t, int radius) {
    VertexSet out;
    for (int v = 0; v < g.size(); ++v)
        if (t.dist[v] <= radius) out.push_back(v);
    return make_vertex_set(std::move(out));
}

VertexSet all_vertices(const FiniteGraph& g) {
    VertexSet out(g.size());
    for (int v = 0; v < g.size(); ++v) out[v] = v;
    return out;
}

bool is_connected(const FiniteGraph& g, const VertexSet& s) {
    if (s.empty()) return false;
    std::set<int> in(s.begin(), s.end()), seen{s[0]};
    std::vector<int> stack{s[0]};
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int w : g.neighbors(v))
            if (in.count(w) && !seen.count(w)) {
                seen.insert(w);
                stack.push_back(w);
            }
    }
    return seen.size() == s.size();
}

/// Brute-force count of connected n-subsets by filtering all combinations.
long long brute_connected_count(const FiniteGraph& g, const VertexSet& region, int n) {
    int m = static_cast<int>(region.size());
    long long count = 0;
    std::vector<int> pick(n);
    for (int i = 0; i < n; ++i) pick[i] = i;
    if (n > m) return 0;
    while (true) {
        VertexSet s(n);
        for (int i = 0; i < n; ++i) s[i] = region[pick[i]];
        if (is_connected(g, s)) ++count;
        int i = n - 1;
        while (i >= 0 && pick[i] == m - n + i) --i;
        if (i < 0) break;
        ++pick[i];
        for (int j = i + 1; j < n; ++j) pick[j] = pick[j - 1] + 1;
    }
    return count;
}

std::string profile_bytes(const FiniteGraph& g, const IsoProfile& p) {
    std::ostringstream s;
    for (const auto& [n, row] : p.rows) {
        s << n << ':' << row.min_boundary << ':';
        for (int v : row.witness) s << g.id(v).key << ',';
        s << ';';
    }
    return s.str();
}

}  // namespace

TEST_CASE("enum_connected_sets counts") {
    auto [p5, tp] = make_path(5);
    int count = 0;
    enum_connected_sets(p5, all_vertices(p5), 3, [&](const VertexSet&) { ++count; });
    CHECK(count == 3);

    auto [k3, tk] = test_helpers::make_complete_graph(3);
    count = 0;
    enum_connected_sets(k3, all_vertices(k3), 2, [&](const VertexSet&) { ++count; });
    CHECK(count == 3);

    auto [g, t] = make_family("tree:3", 6);
    VertexSet region = ball_set(g, t, 3);
    count = 0;
    enum_connected_sets(g, region, 5, [&](const VertexSet&) { ++count; });
    CHECK(count == brute_connected_count(g, region, 5));
}

TEST_CASE("enum_connected_sets emits each set exactly once, deterministically") {
    auto [g, t] = make_family("torus:4x4");
    VertexSet region = all_vertices(g);
    std::vector<VertexSet> seen1, seen2;
    enum_connected_sets(g, region, 4, [&](const VertexSet& s) { seen1.push_back(s); });
    enum_connected_sets(g, region, 4, [&](const VertexSet& s) { seen2.push_back(s); });
    CHECK(seen1 == seen2);
    std::set<VertexSet> unique(seen1.begin(), seen1.end());
    CHECK(unique.size() == seen1.size());
    for (const auto& s : seen1) {
        CHECK(s.size() == 4);
        CHECK(is_connected(g, s));
    }
    CHECK(static_cast<long long>(seen1.size()) == brute_connected_count(g, region, 4));
}

TEST_CASE("enum completeness on all small graphs up to 12 region vertices") {
    auto [p, tp] = make_path(9);
    auto [c, tc] = make_family("cycle:11");
    auto [g, t] = make_family("tree:3", 4);
    VertexSet tree_region = ball_set(g, t, 2);  // 10 vertices
    struct Item {
        const FiniteGraph* g;
        VertexSet region;
    };
    for (auto& [gg, region] : {Item{&p, all_vertices(p)}, Item{&c, all_vertices(c)},
                               Item{&g, tree_region}}) {
        for (int n = 1; n <= static_cast<int>(region.size()); ++n) {
            long long count = 0;
            enum_connected_sets(*gg, region, n, [&](const VertexSet&) { ++count; });
            CHECK(count == brute_connected_count(*gg, region, n));
        }
    }
}

TEST_CASE("enum budget") {
    auto [g, t] = make_family("tree:3", 6);
    CHECK_THROWS_AS(
        enum_connected_sets(g, ball_set(g, t, 3), 6, [](const VertexSet&) {}, false, 10),
        BudgetError);
}

TEST_CASE("exact_profile on the tree interior") {
    auto [g, t] = make_family("tree:3", 5);
    VertexSet region = ball_set(g, t, 3);  // 22 vertices
    auto connected = exact_profile(g, t, region, 8, SearchMethod::exact_connected);
    for (int n = 1; n <= 8; ++n) {
        REQUIRE(connected.rows.count(n));
        CHECK(connected.rows[n].min_boundary == n + 2);
        // witness reproduces the recorded value
        CHECK(static_cast<long long>(boundary(g, t, connected.rows[n].witness).size()) ==
              connected.rows[n].min_boundary);
    }
    auto all = exact_profile(g, t, region, 5, SearchMethod::exact_all);
    for (int n = 1; n <= 5; ++n) {
        CHECK(all.rows[n].min_boundary <= connected.rows[n].min_boundary);
        // measured gap: on this region disconnected sets never do better
        CHECK(all.rows[n].min_boundary == n + 2);
    }
}

TEST_CASE("exact_profile on a path region") {
    auto [p, tp] = make_path(10);
    auto profile = exact_profile(p, tp, all_vertices(p), 5, SearchMethod::exact_connected);
    for (int n = 1; n <= 5; ++n)
        CHECK(profile.rows[n].min_boundary == 1);  // prefix touching the end
}

TEST_CASE("exact_profile comb attached tree witness") {
    auto [g, t] = make_family("comb", 10);
    VertexSet region = comb_attached_tree(g, 3);  // 15 vertices, one boundary vertex
    auto profile = exact_profile(g, t, region, 15, SearchMethod::exact_connected);
    CHECK(profile.rows[15].min_boundary == 1);
}

TEST_CASE("exact_profile guards") {
    auto [g, t] = make_family("tree:3", 5);
    VertexSet frontier_touching = ball_set(g, t, 5);
    CHECK_THROWS_AS(
        exact_profile(g, t, frontier_touching, 2, SearchMethod::exact_connected),
        MarginError);
    VertexSet big = ball_set(g, t, 4);  // 46 > 24 vertices
    CHECK_THROWS_AS(exact_profile(g, t, big, 2, SearchMethod::exact_all),
                    InvalidParameterError);
}

TEST_CASE("heuristic_profile basics and determinism") {
    auto [g, t] = make_family("torus:8x8");
    SearchConfig cfg;
    cfg.region = all_vertices(g);
    cfg.n_max = 6;
    cfg.seed = 42;
    auto h1 = heuristic_profile(g, t, cfg);
    auto h2 = heuristic_profile(g, t, cfg);
    CHECK(profile_bytes(g, h1) == profile_bytes(g, h2));
    CHECK(h1.rows[1].min_boundary == 4);  // min degree vertex

    auto exact = exact_profile(g, t, cfg.region, 6, SearchMethod::exact_connected);
    for (int n = 1; n <= 6; ++n) {
        CHECK(h1.rows[n].min_boundary >= exact.rows[n].min_boundary);
        CHECK(static_cast<long long>(boundary(g, t, h1.rows[n].witness).size()) ==
              h1.rows[n].min_boundary);
    }
}

TEST_CASE("heuristic_profile finds the L1 ball on a large torus") {
    auto [g, t] = make_family("torus:16x16");
    SearchConfig cfg;
    cfg.region = all_vertices(g);
    cfg.n_max = 13;
    cfg.seed = 7;
    auto h = heuristic_profile(g, t, cfg);
    CHECK(h.rows[13].min_boundary <= 12);
}

TEST_CASE("heuristic_profile accepts seed sets (lamplighter box)") {
    auto [g, t] = make_family("lamplighter", 12);
    auto box = lamplighter_box(g, 3);
    REQUIRE(box.size() == 64);
    SearchConfig cfg;
    cfg.region = ball_set(g, t, 11);
    cfg.n_max = 64;
    cfg.seed = 3;
    cfg.seed_sets = {box};
    auto h = heuristic_profile(g, t, cfg);
    CHECK(h.rows[64].min_boundary <= 32);
}
