#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "pinch/errors.hpp"
#include "pinch/graph.hpp"
#include "pinch/isoperimetry.hpp"

namespace pinch {

enum class SearchMethod { exact_all, exact_connected, heuristic };

inline const char* method_name(SearchMethod m) {
    switch (m) {
        case SearchMethod::exact_all: return "exact_all";
        case SearchMethod::exact_connected: return "exact_connected";
        case SearchMethod::heuristic: return "heuristic";
    }
    return "?";
}

/// n -> (minimum |dA| found, witness, method).
struct IsoProfile {
    struct Row {
        long long min_boundary = -1;
        VertexSet witness;
        SearchMethod method = SearchMethod::heuristic;
    };
    std::map<int, Row> rows;
};

namespace detail {

/// Stamped scratch space for O(|S| deg) boundary-size evaluation.
struct BoundaryScratch {
    std::vector<long long> mark;
    long long stamp = 0;

    explicit BoundaryScratch(int n) : mark(n, -1) {}

    long long size(const FiniteGraph& g, const std::vector<int>& s) {
        stamp += 2;
        for (int v : s) mark[v] = stamp;
        long long count = 0;
        for (int v : s)
            for (int w : g.neighbors(v))
                if (mark[w] < stamp) {
                    mark[w] = stamp + 1;
                    ++count;
                }
        return count;
    }
};

}  // namespace detail

/// Enumerate every connected induced subset of `region` with exactly n
/// vertices, each exactly once, in a deterministic order (canonical
/// extension with exclusion sets, polynomial delay). `fn` receives the set
/// sorted ascending. When `emit_smaller` is set, every connected subset of
/// size <= n is emitted once as well.
inline void enum_connected_sets(const FiniteGraph& g, const VertexSet& region, int n,
                                const std::function<void(const VertexSet&)>& fn,
                                bool emit_smaller = false, long long budget = -1) {
    if (n < 1) throw InvalidParameterError("enum_connected_sets: n must be >= 1");
    std::vector<char> in_region(g.size(), 0);
    for (int v : region) in_region[v] = 1;
    std::vector<char> blocked(g.size(), 0);  // in S, or already a candidate somewhere
    std::vector<int> s;
    long long visited = 0;
    auto charge = [&] {
        if (budget >= 0 && ++visited > budget)
            throw BudgetError("enum_connected_sets: work budget exceeded");
    };

    std::function<void(std::vector<int>&, int)> rec = [&](std::vector<int>& ext, int root) {
        charge();
        if (emit_smaller || static_cast<int>(s.size()) == n) {
            VertexSet out = s;
            std::sort(out.begin(), out.end());
            fn(out);
        }
        if (static_cast<int>(s.size()) == n) return;
        // candidates considered here stay blocked for sibling branches;
        // restore on exit
        for (size_t i = 0; i < ext.size(); ++i) {
            int u = ext[i];
            s.push_back(u);
            std::vector<int> next(ext.begin() + i + 1, ext.end());
            size_t added_from = next.size();
            for (int w : g.neighbors(u))
                if (in_region[w] && w > root && !blocked[w]) {
                    blocked[w] = 1;
                    next.push_back(w);
                }
            rec(next, root);
            for (size_t j = added_from; j < next.size(); ++j) blocked[next[j]] = 0;
            s.pop_back();
        }
    };

    for (int root : region) {
        s.assign(1, root);
        blocked[root] = 1;
        std::vector<int> ext;
        for (int w : g.neighbors(root))
            if (in_region[w] && w > root) {
                blocked[w] = 1;
                ext.push_back(w);
            }
        rec(ext, root);
        for (int w : ext) blocked[w] = 0;
        blocked[root] = 0;
    }
}

/// Exact minimum-boundary profile over `region` for n = 1..n_max.
/// mode=exact_connected scans connected sets; mode=exact_all scans all
/// subsets (region capped at 24 vertices). Witnesses are the
/// lexicographically smallest minimizers; `budget` caps sets visited.
inline IsoProfile exact_profile(const FiniteGraph& g, const Truncation& t, const VertexSet& region,
                                int n_max, SearchMethod mode, long long budget = -1) {
    if (!interior_check(t, region, InteriorMode::boundary))
        throw MarginError("exact_profile: region fails the boundary-mode interior check");
    if (mode == SearchMethod::heuristic)
        throw InvalidParameterError("exact_profile: mode must be exact_all or exact_connected");
    IsoProfile profile;
    detail::BoundaryScratch scratch(g.size());
    auto consider = [&](const VertexSet& s) {
        long long b = scratch.size(g, s);
        auto& row = profile.rows[static_cast<int>(s.size())];
        if (row.min_boundary < 0 || b < row.min_boundary ||
            (b == row.min_boundary && s < row.witness)) {
            row.min_boundary = b;
            row.witness = s;
            row.method = mode;
        }
    };
    if (mode == SearchMethod::exact_connected) {
        enum_connected_sets(g, region, n_max, consider, /*emit_smaller=*/true, budget);
        return profile;
    }
    if (static_cast<int>(region.size()) > 24)
        throw InvalidParameterError("exact_profile: mode=all needs |region| <= 24");
    int m = static_cast<int>(region.size());
    long long visited = 0;
    for (int n = 1; n <= std::min(n_max, m); ++n) {
        std::vector<int> pick(n);
        for (int i = 0; i < n; ++i) pick[i] = i;
        while (true) {
            if (budget >= 0 && ++visited > budget)
                throw BudgetError("exact_profile: work budget exceeded");
            VertexSet s(n);
            for (int i = 0; i < n; ++i) s[i] = region[pick[i]];
            consider(s);
            int i = n - 1;
            while (i >= 0 && pick[i] == m - n + i) --i;
            if (i < 0) break;
            ++pick[i];
            for (int j = i + 1; j < n; ++j) pick[j] = pick[j - 1] + 1;
        }
    }
    return profile;
}

struct AnnealSchedule {
    double t0 = 2.0;
    double cooling = 0.995;
    int steps = 3000;
};

struct SearchConfig {
    VertexSet region;
    int n_max = 1;
    std::uint64_t seed = 0;
    AnnealSchedule schedule;
    int greedy_seeds = 8;
    std::vector<VertexSet> seed_sets;  // optional known candidates to include
};

/// Heuristic profile: best of (a) greedy ball-like growth from deterministic
/// seeds (add the frontier vertex minimizing the resulting boundary, ties by
/// encoding), (b) fixed-size swap moves under simulated annealing, and (c)
/// any user-supplied seed sets. Deterministic given the config seed.
inline IsoProfile heuristic_profile(const FiniteGraph& g, const Truncation& t,
                                    const SearchConfig& config) {
    const VertexSet& region = config.region;
    if (region.empty()) throw InvalidParameterError("heuristic_profile: empty region");
    if (!interior_check(t, region, InteriorMode::boundary))
        throw MarginError("heuristic_profile: region fails the boundary-mode interior check");
    for (const auto& s : config.seed_sets)
        if (!std::includes(region.begin(), region.end(), s.begin(), s.end()))
            throw InvalidParameterError("heuristic_profile: seed set leaves the region");

    IsoProfile profile;
    detail::BoundaryScratch scratch(g.size());
    auto offer = [&](const VertexSet& s) {
        long long b = scratch.size(g, s);
        auto& row = profile.rows[static_cast<int>(s.size())];
        if (row.min_boundary < 0 || b < row.min_boundary ||
            (b == row.min_boundary && s < row.witness)) {
            row.min_boundary = b;
            row.witness = s;
            row.method = SearchMethod::heuristic;
        }
    };

    std::vector<char> in_region(g.size(), 0);
    for (int v : region) in_region[v] = 1;

    // (a) greedy growth
    int seeds = std::max(1, std::min<int>(config.greedy_seeds, static_cast<int>(region.size())));
    for (int i = 0; i < seeds; ++i) {
        int seed_v = region[static_cast<size_t>(i) * region.size() / seeds];
        std::vector<int> grown{seed_v};
        std::vector<char> in_s(g.size(), 0);
        in_s[seed_v] = 1;
        offer({seed_v});
        while (static_cast<int>(grown.size()) < std::min<int>(config.n_max,
                                                              static_cast<int>(region.size()))) {
            // frontier candidates inside the region
            std::vector<int> cand;
            for (int v : grown)
                for (int w : g.neighbors(v))
                    if (in_region[w] && !in_s[w]) cand.push_back(w);
            cand = make_vertex_set(std::move(cand));
            if (cand.empty()) break;
            long long best_b = -1;
            int best_w = -1;
            for (int w : cand) {
                grown.push_back(w);
                long long b = scratch.size(g, grown);
                grown.pop_back();
                if (best_b < 0 || b < best_b ||
                    (b == best_b && g.id(w).key < g.id(best_w).key)) {
                    best_b = b;
                    best_w = w;
                }
            }
            grown.push_back(best_w);
            in_s[best_w] = 1;
            VertexSet snapshot = make_vertex_set(grown);
            offer(snapshot);
        }
    }

    for (const auto& s : config.seed_sets)
        if (static_cast<int>(s.size()) <= config.n_max) offer(s);

    // (b) annealing per size, starting from the best set found so far
    for (auto& [n, row] : profile.rows) {
        if (n > config.n_max || n >= static_cast<int>(region.size())) continue;
        std::mt19937_64 rng(config.seed * 0x9e3779b97f4a7c15ull + static_cast<std::uint64_t>(n));
        VertexSet cur = row.witness;
        long long cur_b = row.min_boundary;
        std::vector<char> in_s(g.size(), 0);
        for (int v : cur) in_s[v] = 1;
        std::vector<int> outside;
        for (int v : region)
            if (!in_s[v]) outside.push_back(v);
        double temp = config.schedule.t0;
        for (int step = 0; step < config.schedule.steps; ++step, temp *= config.schedule.cooling) {
            if (outside.empty()) break;
            size_t ri = static_cast<size_t>(rng() % cur.size());
            size_t ai = static_cast<size_t>(rng() % outside.size());
            int removed = cur[ri], added = outside[ai];
            VertexSet next = cur;
            next[ri] = added;
            std::sort(next.begin(), next.end());
            long long next_b = scratch.size(g, next);
            long long delta = next_b - cur_b;
            bool accept = delta < 0 || (delta == 0 && next < cur);
            if (!accept && temp > 1e-12) {
                double u = static_cast<double>(rng() >> 11) * (1.0 / 9007199254740992.0);
                accept = u < std::exp(-static_cast<double>(delta) / temp);
            }
            if (accept) {
                cur = std::move(next);
                cur_b = next_b;
                in_s[removed] = 0;
                in_s[added] = 1;
                outside[ai] = removed;
                offer(cur);
            }
        }
    }
    return profile;
}

}  // namespace pinch
