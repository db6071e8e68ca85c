#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <deque>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "pinch/errors.hpp"

namespace pinch {

/// Opaque vertex identifier. The key is a canonical byte encoding: equal keys
/// mean equal vertices, and the lexicographic order on keys is the one
/// deterministic order used everywhere (BFS tie-breaking, witness sets).
struct VertexId {
    std::string key;

    auto operator<=>(const VertexId&) const = default;
};

/// Pure neighbor function over VertexIds. The only handle on infinite
/// families. Neighbor lists are sorted by key, contain no duplicates and no
/// self-loops, and are symmetric: u in N(v) iff v in N(u).
struct GraphOracle {
    std::function<std::vector<VertexId>(const VertexId&)> neighbors;
    std::optional<int> degree;  // uniform degree, present iff regular
    std::string family;
};

/// Materialized graph: dense indices 0..n-1, CSR adjacency, and the
/// bidirectional index <-> VertexId maps.
class FiniteGraph {
public:
    FiniteGraph() = default;
    FiniteGraph(std::vector<VertexId> ids, const std::vector<std::pair<int, int>>& edges)
        : ids_(std::move(ids)) {
        for (int i = 0; i < size(); ++i) index_.emplace(ids_[i].key, i);
        if (static_cast<int>(index_.size()) != size())
            throw InvalidParameterError("duplicate vertex encodings");
        build_csr(edges);
    }

    int size() const { return static_cast<int>(ids_.size()); }

    std::span<const int> neighbors(int v) const {
        return {adj_.data() + xadj_[v], adj_.data() + xadj_[v + 1]};
    }

    int degree(int v) const { return xadj_[v + 1] - xadj_[v]; }

    long long edge_count() const { return static_cast<long long>(adj_.size()) / 2; }

    const VertexId& id(int v) const { return ids_[v]; }

    std::optional<int> index_of(const VertexId& v) const {
        auto it = index_.find(v.key);
        if (it == index_.end()) return std::nullopt;
        return it->second;
    }

    int require_index(const VertexId& v) const {
        auto idx = index_of(v);
        if (!idx) throw InvalidParameterError("vertex not materialized: " + v.key);
        return *idx;
    }

private:
    friend std::pair<FiniteGraph, struct Truncation> materialize(const GraphOracle&,
                                                                 const VertexId&, int,
                                                                 long long);

    void build_csr(const std::vector<std::pair<int, int>>& edges) {
        xadj_.assign(size() + 1, 0);
        for (auto [u, v] : edges) {
            ++xadj_[u + 1];
            ++xadj_[v + 1];
        }
        for (int i = 0; i < size(); ++i) xadj_[i + 1] += xadj_[i];
        adj_.clear();
        adj_.resize(xadj_[size()]);
        std::vector<int> cursor(xadj_.begin(), xadj_.end() - 1);
        for (auto [u, v] : edges) {
            adj_[cursor[u]++] = v;
            adj_[cursor[v]++] = u;
        }
        for (int i = 0; i < size(); ++i)
            std::sort(adj_.begin() + xadj_[i], adj_.begin() + xadj_[i + 1]);
    }

    std::vector<VertexId> ids_;
    std::unordered_map<std::string, int> index_;
    std::vector<int> xadj_{0};
    std::vector<int> adj_;
};

/// Truncation record for a materialized ball B(o, R_t). `complete` marks
/// graphs that are honestly finite (file imports, cycles, tori, finite
/// trees): margin rules auto-pass there because nothing was cut off.
struct Truncation {
    int root = 0;
    int radius = 0;
    std::vector<int> dist;  // distance from root, -1 if unreachable
    bool complete = false;
};

/// Sorted, strictly increasing list of vertex indices.
using VertexSet = std::vector<int>;

inline VertexSet make_vertex_set(std::vector<int> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

inline constexpr long long kDefaultVertexCap = 30'000'000;

/// Materialize exactly B(o, R_t) of the oracle graph. Vertices at distance
/// R_t are present but not expanded, so their adjacency rows are partial;
/// every vertex at distance < R_t has all oracle neighbors materialized.
inline std::pair<FiniteGraph, Truncation> materialize(const GraphOracle& oracle,
                                                      const VertexId& o, int r_t,
                                                      long long cap = kDefaultVertexCap) {
    if (r_t < 0) throw InvalidParameterError("truncation radius must be >= 0");
    FiniteGraph g;
    Truncation t;
    t.radius = r_t;
    g.ids_.push_back(o);
    g.index_.emplace(o.key, 0);
    t.dist.push_back(0);
    std::vector<std::pair<int, int>> edges;
    std::deque<int> queue{0};
    while (!queue.empty()) {
        int v = queue.front();
        queue.pop_front();
        int d = t.dist[v];
        if (d == r_t) continue;
        auto nbrs = oracle.neighbors(g.ids_[v]);
        for (const VertexId& w : nbrs) {
            auto it = g.index_.find(w.key);
            int wi;
            if (it == g.index_.end()) {
                wi = g.size();
                if (wi >= cap)
                    throw ResourceLimitError("materialize: vertex cap exceeded at radius " +
                                             std::to_string(d + 1));
                g.ids_.push_back(w);
                g.index_.emplace(w.key, wi);
                t.dist.push_back(d + 1);
                queue.push_back(wi);
            } else {
                wi = it->second;
            }
            if (wi > v || t.dist[wi] == r_t) edges.emplace_back(v, wi);
        }
    }
    g.build_csr(edges);
    return {std::move(g), std::move(t)};
}

/// Materialize a whole finite oracle graph (BFS until exhaustion) and mark
/// the truncation complete.
inline std::pair<FiniteGraph, Truncation> materialize_complete(
    const GraphOracle& oracle, const VertexId& o, long long cap = kDefaultVertexCap) {
    auto [g, t] = materialize(oracle, o, std::numeric_limits<int>::max() - 1, cap);
    t.radius = *std::max_element(t.dist.begin(), t.dist.end());
    t.complete = true;
    return {std::move(g), std::move(t)};
}

/// BFS distances from `sources` over the materialized adjacency.
/// -1 = unreached.
inline std::vector<int> bfs_distances(const FiniteGraph& g, std::span<const int> sources) {
    std::vector<int> dist(g.size(), -1);
    std::deque<int> queue;
    for (int s : sources) {
        dist[s] = 0;
        queue.push_back(s);
    }
    while (!queue.empty()) {
        int v = queue.front();
        queue.pop_front();
        for (int w : g.neighbors(v)) {
            if (dist[w] < 0) {
                dist[w] = dist[v] + 1;
                queue.push_back(w);
            }
        }
    }
    return dist;
}

inline std::vector<int> bfs_distances(const FiniteGraph& g, int source) {
    int s[1] = {source};
    return bfs_distances(g, std::span<const int>(s, 1));
}

namespace detail {

inline int max_dist_from_root(const Truncation& t, const VertexSet& a) {
    int s = 0;
    for (int v : a) s = std::max(s, t.dist[v]);
    return s;
}

}  // namespace detail

enum class InteriorMode { boundary, certificate };

/// Margin rule check. Boundary mode: every vertex of A at distance
/// <= R_t - 1, so all its oracle neighbors are present. Certificate mode: the
/// 3s rule, R_t >= 3 * max_dist(A) — truncated BFS distances between members
/// then equal true graph distances (pairs are at distance <= 2s and any
/// geodesic between them stays inside B(o, 3s)).
inline bool interior_check(const Truncation& t, const VertexSet& a, InteriorMode mode) {
    if (t.complete) return true;
    int s = detail::max_dist_from_root(t, a);
    if (mode == InteriorMode::boundary) return s <= t.radius - 1 || a.empty();
    return 3 * s <= t.radius;
}

/// |B(v,r)| for r = 0..r_max. Exactness needs dist(o,v) + r_max <= R_t.
inline std::vector<long long> ball_sizes(const FiniteGraph& g, const Truncation& t, int v,
                                         int r_max) {
    if (r_max < 0) throw InvalidParameterError("r_max must be >= 0");
    if (!t.complete && t.dist[v] + r_max > t.radius)
        throw MarginError("ball exactness margin: dist(o,v)=" + std::to_string(t.dist[v]) +
                          " + r_max=" + std::to_string(r_max) + " exceeds R_t=" +
                          std::to_string(t.radius));
    auto dist = bfs_distances(g, v);
    std::vector<long long> sizes(r_max + 1, 0);
    for (int d : dist)
        if (d >= 0 && d <= r_max) ++sizes[d];
    for (int r = 1; r <= r_max; ++r) sizes[r] += sizes[r - 1];
    return sizes;
}

/// Vertex boundary: vertices outside A with at least one neighbor in A.
inline VertexSet boundary(const FiniteGraph& g, const Truncation& t, const VertexSet& a) {
    if (!interior_check(t, a, InteriorMode::boundary))
        throw MarginError("boundary: set touches the truncation frontier");
    std::vector<char> in_a(g.size(), 0);
    for (int v : a) in_a[v] = 1;
    std::vector<char> seen(g.size(), 0);
    VertexSet out;
    for (int v : a)
        for (int w : g.neighbors(v))
            if (!in_a[w] && !seen[w]) {
                seen[w] = 1;
                out.push_back(w);
            }
    std::sort(out.begin(), out.end());
    return out;
}

/// Distance histogram m_r = |{v in A : d(v,u) = r}| under the 3s margin rule
/// over A u {u}.
inline std::map<int, long long> distance_histogram(const FiniteGraph& g, const Truncation& t,
                                                   const VertexSet& a, int u) {
    VertexSet probe = a;
    probe.push_back(u);
    probe = make_vertex_set(std::move(probe));
    if (!interior_check(t, probe, InteriorMode::certificate))
        throw MarginError("distance_histogram: 3s margin rule fails (s=" +
                          std::to_string(detail::max_dist_from_root(t, probe)) +
                          ", R_t=" + std::to_string(t.radius) + ")");
    auto dist = bfs_distances(g, u);
    std::map<int, long long> hist;
    for (int v : a) ++hist[dist[v]];
    return hist;
}

/// All-pairs BFS distances; intended as a brute-force oracle on small graphs.
inline std::vector<std::vector<int>> all_pairs_distances(const FiniteGraph& g) {
    std::vector<std::vector<int>> d;
    d.reserve(g.size());
    for (int v = 0; v < g.size(); ++v) d.push_back(bfs_distances(g, v));
    return d;
}

}  // namespace pinch
