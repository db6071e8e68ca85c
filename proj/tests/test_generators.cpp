#include "doctest.h"

#include "helpers.hpp"
#include "pinch/generators.hpp"
#include "pinch/io.hpp"

using namespace pinch;
using test_helpers::make_family;
using test_helpers::read_file;
using test_helpers::write_file;

TEST_CASE("spec strings round-trip") {
    for (const char* s :
         {"tree:3", "grid:2", "lamplighter", "comb", "binary:6", "subdiv:4", "cycle:8",
          "torus:8x8", "file:/tmp/x.edges"})
        CHECK(spec_string(parse_spec(s)) == s);
    CHECK_THROWS_AS(parse_spec("octopus:9"), ParseError);
    CHECK_THROWS_AS(make_oracle(parse_spec("tree:2")), InvalidParameterError);
    CHECK_THROWS_AS(make_oracle(parse_spec("grid:0")), InvalidParameterError);
    CHECK_THROWS_AS(make_oracle(parse_spec("subdiv:0")), InvalidParameterError);
}

TEST_CASE("oracle invariants: symmetry, purity, canonical lists") {
    for (const char* s : {"tree:3", "tree:4", "grid:2", "lamplighter", "comb", "subdiv:3"}) {
        auto spec = parse_spec(s);
        auto oracle = make_oracle(spec);
        // walk a small neighborhood of the origin
        std::vector<VertexId> frontier{origin(spec)}, all = frontier;
        for (int depth = 0; depth < 3; ++depth) {
            std::vector<VertexId> next;
            for (const auto& v : frontier) {
                auto nbrs = oracle.neighbors(v);
                CHECK(oracle.neighbors(v) == nbrs);  // purity
                CHECK(std::is_sorted(nbrs.begin(), nbrs.end()));
                CHECK(std::adjacent_find(nbrs.begin(), nbrs.end()) == nbrs.end());
                for (const auto& w : nbrs) {
                    CHECK(w.key != v.key);  // no self-loops
                    auto back = oracle.neighbors(w);
                    CHECK(std::find(back.begin(), back.end(), v) != back.end());  // symmetry
                    next.push_back(w);
                }
            }
            frontier = std::move(next);
            all.insert(all.end(), frontier.begin(), frontier.end());
        }
    }
}

TEST_CASE("regular families report their degree") {
    CHECK(make_oracle(parse_spec("tree:3")).degree == 3);
    CHECK(make_oracle(parse_spec("tree:4")).degree == 4);
    CHECK(make_oracle(parse_spec("grid:2")).degree == 4);
    CHECK(make_oracle(parse_spec("lamplighter")).degree == 3);
    CHECK(!make_oracle(parse_spec("comb")).degree.has_value());
}

TEST_CASE("tree and lamplighter ball sizes at small radius") {
    auto [g, t] = make_family("tree:3", 2);
    CHECK(g.size() == 10);
    auto [gl, tl] = make_family("lamplighter", 1);
    CHECK(gl.size() == 4);  // identity + flip + step left/right
}

TEST_CASE("lamplighter generator relations") {
    auto oracle = make_oracle(parse_spec("lamplighter"));
    VertexId id{"0|"};
    auto nbrs = oracle.neighbors(id);
    REQUIRE(nbrs.size() == 3);
    // flip twice = identity; left of right = identity
    VertexId flipped{"0|0"};
    auto back = oracle.neighbors(flipped);
    CHECK(std::find(back.begin(), back.end(), id) != back.end());
    VertexId right{"1|"};
    auto from_right = oracle.neighbors(right);
    CHECK(std::find(from_right.begin(), from_right.end(), id) != from_right.end());
}

TEST_CASE("comb tree attached sets have one boundary vertex") {
    auto [g, t] = make_family("comb", 11);  // covers A_4 with margin
    auto a4 = comb_attached_tree(g, 4);
    CHECK(a4.size() == 31);  // 2^{k+1} - 1
    auto da = boundary(g, t, a4);
    REQUIRE(da.size() == 1);
    CHECK(g.id(da[0]).key == "s:4");
}

TEST_CASE("comb tree lower growth bound near a deep leaf") {
    // ball around the bottom leaf of the depth-8 attached tree, radius 8:
    // sizes must stay above 2^{floor(r/2) - 1}
    auto spec = parse_spec("comb");
    VertexId leaf{"t:8:00000000"};
    auto [g, t] = materialize(make_oracle(spec), leaf, 8);
    auto sizes = ball_sizes(g, t, t.root, 8);
    for (int r = 1; r <= 8; ++r)
        CHECK(static_cast<double>(sizes[r]) >= std::pow(2.0, r / 2 - 1));
}

TEST_CASE("subdivided binary tree structure") {
    auto [g, t] = make_family("subdiv:3", 12);
    int deg2 = 0, deg3 = 0;
    for (int v = 0; v < g.size(); ++v) {
        if (t.dist[v] > t.radius - 1) continue;  // frontier rows are partial
        if (g.degree(v) == 2) ++deg2;
        else if (g.degree(v) == 3) ++deg3;
        else CHECK(false);
    }
    CHECK(deg2 > 0);
    CHECK(deg3 > 0);
    // the chain below the root has exactly k = 3 subdivision vertices
    CHECK(g.index_of({"e:0:1"}).has_value());
    CHECK(g.index_of({"e:0:3"}).has_value());
    CHECK(!g.index_of({"e:0:4"}).has_value());
    int mid = g.require_index({"e:0:2"});
    CHECK(g.degree(mid) == 2);
}

TEST_CASE("binary tree family is finite and complete") {
    auto [g, t] = make_family("binary:4");
    CHECK(g.size() == 31);  // 2^{depth+1} - 1
    CHECK(t.complete);
    CHECK(g.degree(g.require_index({"b"})) == 2);
    CHECK(g.degree(g.require_index({"b:0000"})) == 1);
}

TEST_CASE("cycle and torus families") {
    auto [c, tc] = make_family("cycle:8");
    CHECK(c.size() == 8);
    for (int v = 0; v < c.size(); ++v) CHECK(c.degree(v) == 2);
    auto [g, t] = make_family("torus:4x5");
    CHECK(g.size() == 20);
    for (int v = 0; v < g.size(); ++v) CHECK(g.degree(v) == 4);
}

TEST_CASE("graph files round-trip") {
    auto [g, t] = make_family("tree:3", 3);
    std::string path = test_helpers::tmp_dir() + "/tree3.edges";
    write_graph(g, path, {"a comment"});
    auto [g2, t2] = read_graph(path);
    CHECK(format_graph(g2) == format_graph(g));
    std::string path2 = test_helpers::tmp_dir() + "/tree3b.edges";
    write_graph(g2, path2);
    // byte-identical modulo comment lines
    CHECK(read_file(path2) == format_graph(g));

    auto [ge, te] = read_graph(write_file("empty.edges", ""));
    CHECK(ge.size() == 0);

    auto [k4, tk] = test_helpers::make_complete_graph(4);
    for (int v = 0; v < 4; ++v) CHECK(k4.degree(v) == 3);
}

TEST_CASE("read_graph rejects malformed input") {
    CHECK_THROWS_AS(read_graph(write_file("bad1.edges", "a b c\n")), ParseError);
    CHECK_THROWS_AS(read_graph(write_file("bad2.edges", "a a\n")), ParseError);
    CHECK_THROWS_AS(read_graph("/nonexistent/file.edges"), ParseError);
}

TEST_CASE("lamplighter box sets") {
    auto [g, t] = make_family("lamplighter", 12);
    auto a2 = lamplighter_box(g, 2);
    CHECK(a2.size() == 3 * 8);  // positions 0..2, lamp subsets of {0,1,2}
    auto da = boundary(g, t, a2);
    CHECK(da.size() == 16);  // 2^{n+2}
}
