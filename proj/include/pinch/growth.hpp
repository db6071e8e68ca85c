#pragma once

#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "pinch/errors.hpp"
#include "pinch/graph.hpp"

namespace pinch {

/// Ball-size sequences |B(v,r)|, r = 0..r_max, for a sample of vertices.
struct GrowthProfile {
    struct Row {
        int v;
        VertexId id;
        std::vector<long long> sizes;
    };
    std::vector<Row> rows;
    int r_max = 0;
    std::vector<std::string> warnings;  // samples dropped for margin failures
};

enum class PinchSide { both, lower_only, upper_only };

struct PinchViolation {
    VertexId v;
    int r;
    long long size;
    bool upper;   // true: size > c*a^r, false: size < a^r/c
    double bound;
};

/// Fitted pinch data: c^-1 a^r <= |B(v,r)| <= c a^r on the verified range.
struct PinchEstimate {
    double a = 0;
    double c = 0;
    int r_verified = 0;  // inequalities checked for r = 1..r_verified
    std::vector<PinchViolation> violations;
};

/// One vertex per distance shell, lowest encoding; the deterministic default
/// sampling policy for huge truncations.
inline std::vector<int> stratified_sample(const FiniteGraph& g, const Truncation& t,
                                          int max_shell) {
    std::vector<int> best(max_shell + 1, -1);
    for (int v = 0; v < g.size(); ++v) {
        int d = t.dist[v];
        if (d < 0 || d > max_shell) continue;
        if (best[d] < 0 || g.id(v).key < g.id(best[d]).key) best[d] = v;
    }
    std::vector<int> out;
    for (int v : best)
        if (v >= 0) out.push_back(v);
    return out;
}

/// Collect ball-size sequences. Samples violating the exactness margin are
/// dropped and reported in `warnings`, not fatal.
inline GrowthProfile growth_profile(const FiniteGraph& g, const Truncation& t,
                                    const std::vector<int>& sample, int r_max) {
    GrowthProfile profile;
    profile.r_max = r_max;
    for (int v : sample) {
        if (!t.complete && t.dist[v] + r_max > t.radius) {
            profile.warnings.push_back("dropped " + g.id(v).key +
                                       ": ball exactness margin fails for r_max=" +
                                       std::to_string(r_max));
            continue;
        }
        profile.rows.push_back({v, g.id(v), ball_sizes(g, t, v, r_max)});
    }
    return profile;
}

/// a from a pooled least-squares fit of log|B(v,r)| against r (r >= 1);
/// c as the exact envelope max(a^r/|B|, |B|/a^r) over the profile, so the
/// estimate certifies its own input by construction.
inline PinchEstimate pinch_fit(const GrowthProfile& profile) {
    if (profile.rows.empty() || profile.r_max < 2)
        throw DegenerateFitError("pinch_fit needs >= 1 vertex and >= 2 radii");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    long long n = 0;
    for (const auto& row : profile.rows)
        for (int r = 1; r <= profile.r_max; ++r) {
            double x = r, y = std::log(static_cast<double>(row.sizes[r]));
            sx += x;
            sy += y;
            sxx += x * x;
            sxy += x * y;
            ++n;
        }
    double denom = n * sxx - sx * sx;
    double slope = (n * sxy - sx * sy) / denom;
    if (!(slope > 0))
        throw DegenerateFitError("pinch_fit: nonpositive growth slope (a would be <= 1)");
    PinchEstimate est;
    est.a = std::exp(slope);
    est.r_verified = profile.r_max;
    est.c = 1.0;
    for (const auto& row : profile.rows) {
        double ar = 1.0;
        for (int r = 1; r <= profile.r_max; ++r) {
            ar *= est.a;
            double size = static_cast<double>(row.sizes[r]);
            est.c = std::max({est.c, ar / size, size / ar});
        }
    }
    // pad the envelope by a hair so re-verifying the same data never trips
    // on rounding of size * c vs a^r
    est.c *= 1.0 + 1e-12;
    return est;
}

struct PinchSample {
    int v;
    PinchSide side = PinchSide::both;
};

/// Check c^-1 a^r <= |B(v,r)| <= c a^r for r = 1..R at every sampled vertex.
/// One-sided samples check only the inequality the certificate needs (lower
/// for A-vertices, upper for boundary vertices).
inline std::vector<PinchViolation> pinch_verify(const FiniteGraph& g, const Truncation& t,
                                                double a, double c, int R,
                                                const std::vector<PinchSample>& sample) {
    if (!(a > 1) || !(c >= 1) || R < 1)
        throw InvalidParameterError("pinch_verify needs a > 1, c >= 1, R >= 1");
    std::vector<PinchViolation> out;
    for (const auto& s : sample) {
        auto sizes = ball_sizes(g, t, s.v, R);  // margin errors propagate
        double ar = 1.0;
        for (int r = 1; r <= R; ++r) {
            ar *= a;
            double size = static_cast<double>(sizes[r]);
            if (s.side != PinchSide::upper_only && size * c < ar)
                out.push_back({g.id(s.v), r, sizes[r], false, ar / c});
            if (s.side != PinchSide::lower_only && size > c * ar)
                out.push_back({g.id(s.v), r, sizes[r], true, c * ar});
        }
    }
    return out;
}

inline std::vector<PinchSample> both_sided(const std::vector<int>& vs) {
    std::vector<PinchSample> out;
    for (int v : vs) out.push_back({v, PinchSide::both});
    return out;
}

/// Inverse growth function: smallest r >= 1 with |B(v,r)| >= n. Errors when
/// the truncation cannot certify the answer.
inline int phi(const FiniteGraph& g, const Truncation& t, int v, long long n) {
    int r_exact = t.complete ? std::numeric_limits<int>::max() : t.radius - t.dist[v];
    if (r_exact < 1) throw OutOfRangeError("phi: no exact radius available for this vertex");
    auto dist = bfs_distances(g, v);
    std::vector<long long> count_at(t.complete ? t.radius + 2 : r_exact + 1, 0);
    int cap = static_cast<int>(count_at.size()) - 1;
    for (int d : dist)
        if (d >= 0 && d <= cap) ++count_at[d];
    long long total = 0;
    for (int r = 0; r <= cap; ++r) {
        total += count_at[r];
        if (r >= 1 && total >= n) return r;
    }
    if (t.complete) throw OutOfRangeError("phi: graph has fewer than n vertices");
    throw OutOfRangeError("phi: truncation cannot certify phi(n) within its margin");
}

/// PhiTable: anchor vertex plus the n -> phi(n) map.
struct PhiTable {
    int v;
    std::map<long long, int> values;
};

inline PhiTable phi_table(const FiniteGraph& g, const Truncation& t, int v,
                          const std::vector<long long>& ns) {
    PhiTable table{v, {}};
    for (long long n : ns) table.values[n] = phi(g, t, v, n);
    return table;
}

}  // namespace pinch
