#pragma once

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "pinch/generators.hpp"
#include "pinch/graph.hpp"
#include "pinch/io.hpp"

namespace test_helpers {

/// Fresh scratch directory per test process.
inline std::string tmp_dir() {
    static std::string dir = [] {
        char tmpl[] = "/tmp/pinch_test_XXXXXX";
        char* p = mkdtemp(tmpl);
        if (!p) throw std::runtime_error("mkdtemp failed");
        return std::string(p);
    }();
    return dir;
}

inline std::string write_file(const std::string& name, const std::string& content) {
    std::string path = tmp_dir() + "/" + name;
    std::ofstream out(path);
    out << content;
    return path;
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

/// Path graph 0-1-...-(n-1) as a complete finite graph (n <= 10 so keys sort
/// numerically).
inline std::pair<pinch::FiniteGraph, pinch::Truncation> make_path(int n) {
    std::ostringstream edges;
    for (int i = 0; i + 1 < n; ++i) edges << i << ' ' << i + 1 << '\n';
    return pinch::read_graph(write_file("path" + std::to_string(n) + ".edges", edges.str()));
}

inline std::pair<pinch::FiniteGraph, pinch::Truncation> make_complete_graph(int n) {
    std::ostringstream edges;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) edges << i << ' ' << j << '\n';
    return pinch::read_graph(write_file("k" + std::to_string(n) + ".edges", edges.str()));
}

inline std::pair<pinch::FiniteGraph, pinch::Truncation> make_family(const std::string& spec,
                                                                    int radius = -1) {
    return pinch::materialize_family(pinch::parse_spec(spec), radius);
}

/// Random connected subset of `region`, grown by uniform frontier expansion.
inline pinch::VertexSet random_connected_set(const pinch::FiniteGraph& g,
                                             const pinch::VertexSet& region, int target,
                                             std::mt19937_64& rng) {
    std::vector<char> in_region(g.size(), 0), in_s(g.size(), 0);
    for (int v : region) in_region[v] = 1;
    int start = region[rng() % region.size()];
    std::vector<int> s{start}, frontier;
    in_s[start] = 1;
    for (int w : g.neighbors(start))
        if (in_region[w]) frontier.push_back(w);
    while (static_cast<int>(s.size()) < target && !frontier.empty()) {
        size_t i = rng() % frontier.size();
        int v = frontier[i];
        frontier.erase(frontier.begin() + i);
        if (in_s[v]) continue;
        in_s[v] = 1;
        s.push_back(v);
        for (int w : g.neighbors(v))
            if (in_region[w] && !in_s[w]) frontier.push_back(w);
    }
    return pinch::make_vertex_set(std::move(s));
}

}  // namespace test_helpers
