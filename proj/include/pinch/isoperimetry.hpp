#pragma once

#include <atomic>
#include <cmath>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pinch/errors.hpp"
#include "pinch/graph.hpp"
#include "pinch/growth.hpp"
#include "pinch/util.hpp"

namespace pinch {

// ---- set analysis -------------------------------------------------------

/// A set, its vertex boundary, and the log-isoperimetric ratio
/// |dA| * ln(2+|A|) / |A| (the best admissible constant for this A).
struct SetAnalysis {
    VertexSet a;
    VertexSet da;
    long long size_a = 0;
    long long size_da = 0;
    double eii_ratio = std::numeric_limits<double>::quiet_NaN();
};

inline SetAnalysis analyze_set(const FiniteGraph& g, const Truncation& t, const VertexSet& a) {
    SetAnalysis out;
    out.a = a;
    out.da = boundary(g, t, a);
    out.size_a = static_cast<long long>(a.size());
    out.size_da = static_cast<long long>(out.da.size());
    if (out.size_a > 0)
        out.eii_ratio = static_cast<double>(out.size_da) *
                        std::log(2.0 + static_cast<double>(out.size_a)) /
                        static_cast<double>(out.size_a);
    return out;
}

// ---- Coulhon--Saloff-Coste and Babai--Szegedy ---------------------------

/// |A| / (4 m phi(2|A|)) for a regular graph of degree m; compare against
/// |dA|. `anchor` picks the vertex for phi.
inline double cs_bound(const FiniteGraph& g, const Truncation& t, const VertexSet& a, int m,
                       int anchor) {
    if (a.empty()) throw InvalidParameterError("cs_bound: empty set");
    if (m < 1) throw InvalidParameterError("cs_bound: degree must be >= 1");
    long long n = static_cast<long long>(a.size());
    int ph = phi(g, t, anchor, 2 * n);
    return static_cast<double>(n) / (4.0 * m * ph);
}

/// |A| / (1 + diam G) for finite connected G with 0 < |A| < |V|/2.
/// Diameter by all-pairs BFS.
inline double babai_szegedy(const FiniteGraph& g, const VertexSet& a) {
    if (a.empty() || 2 * static_cast<long long>(a.size()) >= g.size())
        throw OutOfRangeError("babai_szegedy: requires 0 < |A| < |V|/2");
    int diam = 0;
    for (int v = 0; v < g.size(); ++v) {
        auto dist = bfs_distances(g, v);
        for (int d : dist) {
            if (d < 0) throw DisconnectedError("babai_szegedy: graph is disconnected");
            diam = std::max(diam, d);
        }
    }
    return static_cast<double>(a.size()) / (1.0 + diam);
}

// ---- Z-certificate ------------------------------------------------------

namespace detail {

/// Smallest nonnegative integer t with a^t >= x, by repeated multiplication.
inline int ceil_log(double a, double x) {
    int t = 0;
    double p = 1.0;
    while (p < x) {
        p *= a;
        ++t;
        if (t > 4000) throw InvalidParameterError("ceil_log: exponent overflow");
    }
    return t;
}

}  // namespace detail

/// The proof's certificate for one set: Z = sum_{v in A} sum_{u in dA}
/// a^-d(v,u), computed both as per-boundary-vertex histogram sums and as the
/// direct double sum, with the explicit traced constants
/// kappa1 = 1/(2c^2) and beta = c(ceil(log_a|A|)+1) + 1/(a-1).
struct Certificate {
    double a = 0;
    double c = 0;
    int R = 0;  // ceil(log_a(2c|A|)), the minimal radius the proof needs
    VertexSet da;
    std::vector<double> z_u;                     // per boundary vertex, da order
    std::vector<std::map<int, long long>> hist;  // m_r per boundary vertex
    double z = 0;         // sum of z_u (histogram route)
    double z_direct = 0;  // double sum via per-v distances
    double kappa1 = 0;
    double beta = 0;
};

/// Raw-constant entry point: the caller asserts (a,c) have been verified for
/// radii 1..verified_r on the vertices the proof touches (lower on A, upper
/// on dA).
inline Certificate z_certificate(const FiniteGraph& g, const Truncation& t, const VertexSet& a_set,
                                 double a, double c, int verified_r, int jobs = 1) {
    if (!(a > 1) || !(c >= 1)) throw InvalidParameterError("z_certificate needs a > 1, c >= 1");
    if (a_set.empty()) throw InvalidParameterError("z_certificate: empty set");
    Certificate cert;
    cert.a = a;
    cert.c = c;
    long long n = static_cast<long long>(a_set.size());
    cert.R = std::max(1, detail::ceil_log(a, 2.0 * c * static_cast<double>(n)));
    if (cert.R > verified_r)
        throw UnverifiedPinchError("z_certificate: needs pinch verified up to R=" +
                                   std::to_string(cert.R) + " but only r<=" +
                                   std::to_string(verified_r) + " was verified");
    cert.da = boundary(g, t, a_set);
    VertexSet closure = a_set;
    closure.insert(closure.end(), cert.da.begin(), cert.da.end());
    closure = make_vertex_set(std::move(closure));
    if (!interior_check(t, closure, InteriorMode::certificate))
        throw MarginError("z_certificate: 3s margin rule fails for A united with dA");

    int nu = static_cast<int>(cert.da.size());
    cert.z_u.assign(nu, 0.0);
    cert.hist.assign(nu, {});
    parallel_for(nu, jobs, [&](int i) {
        auto dist = bfs_distances(g, cert.da[i]);
        std::map<int, long long>& h = cert.hist[i];
        for (int v : a_set) ++h[dist[v]];
        KahanSum s;
        for (const auto& [r, m] : h) s.add(static_cast<double>(m) * std::pow(a, -r));
        cert.z_u[i] = s.value();
    });
    KahanSum z;
    for (double zu : cert.z_u) z.add(zu);
    cert.z = z.value();

    // Independent route: distances taken from the A side.
    std::vector<double> per_v(a_set.size(), 0.0);
    std::vector<char> in_da(g.size(), 0);
    for (int u : cert.da) in_da[u] = 1;
    parallel_for(static_cast<int>(a_set.size()), jobs, [&](int i) {
        auto dist = bfs_distances(g, a_set[i]);
        KahanSum s;
        for (int u : cert.da) s.add(std::pow(a, -dist[u]));
        per_v[i] = s.value();
    });
    KahanSum zd;
    for (double x : per_v) zd.add(x);
    cert.z_direct = zd.value();

    cert.kappa1 = 1.0 / (2.0 * c * c);
    cert.beta = c * (detail::ceil_log(a, static_cast<double>(n)) + 1) + 1.0 / (a - 1.0);
    return cert;
}

inline Certificate z_certificate(const FiniteGraph& g, const Truncation& t, const VertexSet& a_set,
                                 const PinchEstimate& est, int jobs = 1) {
    if (!est.violations.empty())
        throw UnverifiedPinchError("z_certificate: pinch estimate carries violations");
    return z_certificate(g, t, a_set, est.a, est.c, est.r_verified, jobs);
}

struct CertificateCheck {
    bool lower_ok = false;  // Z >= kappa1 |A|
    bool upper_ok = false;  // max_u Z(u) <= beta
    double z = 0;
    double max_z_u = 0;
    double kappa1_times_a = 0;
    double beta = 0;
    double implied_boundary_lb = 0;  // |dA| >= Z / max_u Z(u) >= kappa1|A|/beta
};

inline CertificateCheck certificate_bounds_check(const Certificate& cert, long long size_a) {
    CertificateCheck out;
    out.z = cert.z;
    out.max_z_u = 0;
    for (double zu : cert.z_u) out.max_z_u = std::max(out.max_z_u, zu);
    out.kappa1_times_a = cert.kappa1 * static_cast<double>(size_a);
    out.beta = cert.beta;
    out.lower_ok = cert.z >= out.kappa1_times_a;
    out.upper_ok = out.max_z_u <= cert.beta;
    out.implied_boundary_lb = out.kappa1_times_a / cert.beta;
    return out;
}

// ---- warm-up two-dimensional argument -----------------------------------

/// Set-theoretic verification of the covering argument: with r the largest
/// distance from A to its boundary, attained at v*, both B(v*,2r) and A are
/// covered by the union of B(u,r) over u in dA. Reports the slack
/// |dA|^2 c^3 / |A| (>= 1 whenever the pinch inequalities hold at r and 2r).
struct WarmupReport {
    int v_star = -1;
    int r = 0;
    bool ball_covered = false;
    bool set_covered = false;
    long long size_a = 0;
    long long size_da = 0;
    double slack = 0;
};

inline WarmupReport warmup_check(const FiniteGraph& g, const Truncation& t, const VertexSet& a,
                                 double /*pinch a*/, double c) {
    if (a.empty()) throw InvalidParameterError("warmup_check: empty set");
    WarmupReport out;
    out.size_a = static_cast<long long>(a.size());
    VertexSet da = boundary(g, t, a);
    out.size_da = static_cast<long long>(da.size());
    auto d_to_boundary = bfs_distances(g, std::span<const int>(da.data(), da.size()));
    for (int v : a) {
        int d = d_to_boundary[v];
        if (d > out.r) {
            out.r = d;
            out.v_star = v;
        } else if (d == out.r && out.v_star >= 0 && g.id(v).key < g.id(out.v_star).key) {
            out.v_star = v;  // farthest vertex, ties by lowest encoding
        }
    }
    if (!t.complete) {
        if (t.dist[out.v_star] + 2 * out.r > t.radius)
            throw MarginError("warmup_check: B(v*,2r) exceeds the truncation margin");
        for (int v : a)
            if (t.dist[v] + out.r > t.radius)
                throw MarginError("warmup_check: boundary-distance margin fails inside A");
        for (int u : da)
            if (t.dist[u] + out.r > t.radius)
                throw MarginError("warmup_check: B(u,r) exceeds the truncation margin");
    }
    // covered[v] = v within distance r of some boundary vertex
    std::vector<char> covered(g.size(), 0);
    for (int v = 0; v < g.size(); ++v)
        if (d_to_boundary[v] >= 0 && d_to_boundary[v] <= out.r) covered[v] = 1;
    auto d_vstar = bfs_distances(g, out.v_star);
    out.ball_covered = true;
    for (int v = 0; v < g.size(); ++v)
        if (d_vstar[v] >= 0 && d_vstar[v] <= 2 * out.r && !covered[v]) out.ball_covered = false;
    out.set_covered = true;
    for (int v : a)
        if (!covered[v]) out.set_covered = false;
    out.slack = static_cast<double>(out.size_da) * static_cast<double>(out.size_da) * c * c * c /
                static_cast<double>(out.size_a);
    return out;
}

// ---- dimension fit ------------------------------------------------------

/// Least-squares slope sigma of log|dA| against log|A|; returns
/// s = 1/(1-sigma), or +inf when sigma >= 1.
inline double iso_dimension_fit(const std::vector<std::pair<long long, long long>>& pairs) {
    if (pairs.size() < 3) throw DegenerateFitError("iso_dimension_fit needs >= 3 pairs");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (auto [na, nb] : pairs) {
        if (na <= 0 || nb <= 0) throw DegenerateFitError("iso_dimension_fit: nonpositive sizes");
        double x = std::log(static_cast<double>(na));
        double y = std::log(static_cast<double>(nb));
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    double n = static_cast<double>(pairs.size());
    double denom = n * sxx - sx * sx;
    if (denom <= 1e-12) throw DegenerateFitError("iso_dimension_fit: |A| values not distinct");
    double sigma = (n * sxy - sx * sy) / denom;
    if (sigma >= 1.0) return std::numeric_limits<double>::infinity();
    return 1.0 / (1.0 - sigma);
}

// ---- finite-regime applicability ----------------------------------------

/// Largest |A| the finite-radius certificate covers: floor(a^R / (2c)),
/// from R >= ceil(log_a(2c|A|)).
inline long long finite_applicability(double a, double c, int R) {
    if (!(a > 1) || !(c >= 1) || R < 1)
        throw InvalidParameterError("finite_applicability needs a > 1, c >= 1, R >= 1");
    double p = 1.0;
    for (int i = 0; i < R; ++i) p *= a;
    double n = std::floor(p / (2.0 * c));
    if (n > 9e18) return 9'000'000'000'000'000'000LL;
    return static_cast<long long>(n);
}

// ---- branch points ------------------------------------------------------

/// Branch point: vertex whose removal leaves >= 3 components that each reach
/// the truncation frontier (the computable proxy for "infinite component").
/// The tree passes for path length k when, after deleting branch points,
/// every residual component inside the safe interior has < k vertices.
struct BranchCheck {
    bool holds = false;
    VertexSet branch_points;
    VertexSet witness;  // a residual chain of >= k interior vertices, when it fails
};

inline BranchCheck branch_point_check(const FiniteGraph& g, const Truncation& t, int k) {
    if (k < 1) throw InvalidParameterError("branch_point_check: k must be >= 1");
    int n = g.size();
    if (g.edge_count() != n - 1) throw NotATreeError("branch_point_check: not a tree (edge count)");
    {
        auto dist = bfs_distances(g, 0);
        for (int d : dist)
            if (d < 0) throw NotATreeError("branch_point_check: not connected");
    }
    std::vector<char> frontier(n, 0);
    if (!t.complete)
        for (int v = 0; v < n; ++v)
            if (t.dist[v] == t.radius) frontier[v] = 1;

    BranchCheck out;
    std::vector<char> is_branch(n, 0);
    std::vector<int> stack;
    std::vector<char> seen(n, 0);
    std::vector<int> touched;
    for (int v = 0; v < n; ++v) {
        if (g.degree(v) < 3) continue;
        int reaching = 0;
        for (int w0 : g.neighbors(v)) {
            // does the component of w0 in g - v contain a frontier vertex?
            bool reaches = false;
            stack.assign(1, w0);
            seen[w0] = 1;
            touched.assign(1, w0);
            while (!stack.empty() && !reaches) {
                int x = stack.back();
                stack.pop_back();
                if (frontier[x]) reaches = true;
                for (int y : g.neighbors(x))
                    if (y != v && !seen[y]) {
                        seen[y] = 1;
                        touched.push_back(y);
                        stack.push_back(y);
                    }
            }
            for (int x : touched) seen[x] = 0;
            if (reaches) ++reaching;
        }
        if (reaching >= 3) {
            is_branch[v] = 1;
            out.branch_points.push_back(v);
        }
    }

    // residual components among interior, non-branch vertices
    std::vector<char> scanned(n, 0);
    auto interior = [&](int v) { return t.complete || t.dist[v] <= t.radius - 1; };
    out.holds = true;
    for (int v = 0; v < n && out.holds; ++v) {
        if (scanned[v] || is_branch[v] || !interior(v)) continue;
        std::vector<int> comp{v};
        scanned[v] = 1;
        for (size_t i = 0; i < comp.size(); ++i)
            for (int w : g.neighbors(comp[i]))
                if (!scanned[w] && !is_branch[w] && interior(w)) {
                    scanned[w] = 1;
                    comp.push_back(w);
                }
        if (static_cast<int>(comp.size()) >= k) {
            out.holds = false;
            out.witness = make_vertex_set(std::move(comp));
        }
    }
    return out;
}

// ---- aggregate report ---------------------------------------------------

/// Everything computable about one set, for reports: the ratio, both named
/// bounds when applicable, the warm-up quantities, and the certificate
/// summary.
struct BoundReport {
    std::string set_id;
    SetAnalysis analysis;
    std::optional<double> cs;
    std::optional<double> bs;
    std::optional<WarmupReport> warmup;
    std::optional<Certificate> cert;
    std::optional<CertificateCheck> cert_check;
};

}  // namespace pinch
