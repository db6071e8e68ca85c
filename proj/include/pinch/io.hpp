#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "pinch/errors.hpp"
#include "pinch/graph.hpp"

namespace pinch {

/// Write `content` to `path` via temp-then-rename so failed runs never leave
/// partial output behind.
inline void atomic_write(const std::string& path, const std::string& content) {
    std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error("cannot open for writing: " + tmp);
        out << content;
        if (!out) throw Error("write failed: " + tmp);
    }
    std::filesystem::rename(tmp, path);
}

/// Edge-list text format: one "u v" pair per line (canonical encodings),
/// '#' comment lines, and a single bare "u" line for an isolated vertex.
inline std::string format_graph(const FiniteGraph& g,
                                const std::vector<std::string>& comments = {}) {
    std::ostringstream out;
    for (const auto& c : comments) out << "# " << c << "\n";
    std::vector<std::pair<std::string, std::string>> edges;
    for (int v = 0; v < g.size(); ++v) {
        if (g.degree(v) == 0) edges.emplace_back(g.id(v).key, "");
        for (int w : g.neighbors(v))
            if (g.id(v).key < g.id(w).key) edges.emplace_back(g.id(v).key, g.id(w).key);
    }
    std::sort(edges.begin(), edges.end());
    for (const auto& [u, v] : edges) {
        out << u;
        if (!v.empty()) out << ' ' << v;
        out << '\n';
    }
    return out.str();
}

inline void write_graph(const FiniteGraph& g, const std::string& path,
                        const std::vector<std::string>& comments = {}) {
    atomic_write(path, format_graph(g, comments));
}

namespace detail {

inline std::map<std::string, std::vector<std::string>> read_adjacency(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open: " + path);
    std::map<std::string, std::vector<std::string>> adj;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        std::istringstream ls(line);
        std::string u, v, extra;
        if (!(ls >> u)) continue;
        if (!(ls >> v)) {
            adj.try_emplace(u);  // isolated vertex declaration
            continue;
        }
        if (ls >> extra)
            throw ParseError(path + ":" + std::to_string(lineno) + ": more than two tokens");
        if (u == v)
            throw ParseError(path + ":" + std::to_string(lineno) + ": self-loop on " + u);
        adj[u].push_back(v);
        adj[v].push_back(u);
    }
    for (auto& [k, nbrs] : adj) {
        std::sort(nbrs.begin(), nbrs.end());
        nbrs.erase(std::unique(nbrs.begin(), nbrs.end()), nbrs.end());
    }
    return adj;
}

}  // namespace detail

/// Read an edge-list file into a FiniteGraph (indices sorted by encoding)
/// plus a complete Truncation.
inline std::pair<FiniteGraph, Truncation> read_graph(const std::string& path) {
    auto adj = detail::read_adjacency(path);
    std::vector<VertexId> ids;
    ids.reserve(adj.size());
    std::map<std::string, int> index;
    for (const auto& [k, nbrs] : adj) {
        index.emplace(k, static_cast<int>(ids.size()));
        ids.push_back(VertexId{k});
    }
    std::vector<std::pair<int, int>> edges;
    for (const auto& [k, nbrs] : adj) {
        int u = index.at(k);
        for (const auto& w : nbrs) {
            int v = index.at(w);
            if (u < v) edges.emplace_back(u, v);
        }
    }
    FiniteGraph g(std::move(ids), edges);
    Truncation t;
    t.complete = true;
    t.root = 0;
    if (g.size() > 0) {
        t.dist = bfs_distances(g, 0);
        t.radius = 0;
        for (int d : t.dist) t.radius = std::max(t.radius, d);
    }
    return {std::move(g), std::move(t)};
}

/// Vertex-set file: one encoded VertexId per line, '#' comments.
inline void write_vertex_set(const FiniteGraph& g, const VertexSet& a, const std::string& path,
                             const std::vector<std::string>& comments = {}) {
    std::ostringstream out;
    for (const auto& c : comments) out << "# " << c << "\n";
    std::vector<std::string> keys;
    keys.reserve(a.size());
    for (int v : a) keys.push_back(g.id(v).key);
    std::sort(keys.begin(), keys.end());
    for (const auto& k : keys) out << k << '\n';
    atomic_write(path, out.str());
}

inline VertexSet read_vertex_set(const FiniteGraph& g, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open: " + path);
    VertexSet a;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        std::istringstream ls(line);
        std::string k;
        if (!(ls >> k)) continue;
        auto idx = g.index_of(VertexId{k});
        if (!idx)
            throw ParseError(path + ":" + std::to_string(lineno) +
                             ": vertex not in graph: " + k);
        a.push_back(*idx);
    }
    return make_vertex_set(std::move(a));
}

}  // namespace pinch
