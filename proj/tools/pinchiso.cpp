// pinchiso: ball growth, pinch constants, isoperimetric bounds and
// extremal-set search over implicit graph families.

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "pinch/config.hpp"
#include "pinch/generators.hpp"
#include "pinch/graph.hpp"
#include "pinch/growth.hpp"
#include "pinch/io.hpp"
#include "pinch/isoperimetry.hpp"
#include "pinch/report.hpp"
#include "pinch/search.hpp"

namespace {

using namespace pinch;

struct Loaded {
    FiniteGraph g;
    Truncation t;
    std::optional<GeneratorSpec> spec;
};

Loaded load_graph(const RunConfig& cfg) {
    Loaded out;
    if (!cfg.family.empty()) {
        auto spec = parse_spec(cfg.family);
        if (!is_finite_family(spec) && cfg.radius < 0)
            throw InvalidParameterError("--radius is required for infinite families");
        auto [g, t] = materialize_family(spec, cfg.radius);
        out.g = std::move(g);
        out.t = std::move(t);
        out.spec = spec;
    } else if (!cfg.graph.empty()) {
        auto [g, t] = read_graph(cfg.graph);
        out.g = std::move(g);
        out.t = std::move(t);
    } else {
        throw InvalidParameterError("need --family or --graph");
    }
    return out;
}

std::optional<int> uniform_degree(const Loaded& in) {
    if (in.spec) {
        auto oracle = make_oracle(*in.spec);
        if (oracle.degree) return oracle.degree;
        return std::nullopt;
    }
    if (in.g.size() == 0) return std::nullopt;
    int d = in.g.degree(0);
    for (int v = 1; v < in.g.size(); ++v)
        if (in.g.degree(v) != d) return std::nullopt;
    return d;
}

int default_rmax(const RunConfig& cfg, const Truncation& t) {
    if (cfg.rmax >= 0) return cfg.rmax;
    if (t.complete) return std::max(2, t.radius);
    return std::max(2, t.radius / 3);
}

std::vector<int> default_sample(const FiniteGraph& g, const Truncation& t, int rmax) {
    if (t.complete) return stratified_sample(g, t, t.radius);
    return stratified_sample(g, t, std::max(0, t.radius - rmax));
}

PinchEstimate fit_and_verify(const FiniteGraph& g, const Truncation& t, int rmax) {
    auto sample = default_sample(g, t, rmax);
    auto profile = growth_profile(g, t, sample, rmax);
    for (const auto& w : profile.warnings) std::cerr << "warning: " << w << "\n";
    auto est = pinch_fit(profile);
    std::vector<int> kept;
    for (const auto& row : profile.rows) kept.push_back(row.v);
    est.violations = pinch_verify(g, t, est.a, est.c, rmax, both_sided(kept));
    return est;
}

VertexSet safe_interior(const FiniteGraph& g, const Truncation& t) {
    VertexSet region;
    for (int v = 0; v < g.size(); ++v)
        if (t.complete || t.dist[v] <= t.radius - 1) region.push_back(v);
    return region;
}

int cmd_gen(const RunConfig& cfg) {
    auto in = load_graph(cfg);
    write_graph(in.g, cfg.out, {"config: " + cfg.serialize()});
    std::cout << "wrote " << in.g.size() << " vertices, " << in.g.edge_count() << " edges to "
              << cfg.out << "\n";
    return 0;
}

int cmd_growth(const RunConfig& cfg) {
    auto in = load_graph(cfg);
    int rmax = default_rmax(cfg, in.t);
    auto profile = growth_profile(in.g, in.t, default_sample(in.g, in.t, rmax), rmax);
    for (const auto& w : profile.warnings) std::cerr << "warning: " << w << "\n";
    if (profile.rows.empty())
        throw MarginError("growth: every sample violates the ball exactness margin");
    atomic_write(cfg.out, growth_csv(profile, cfg));
    return 0;
}

int cmd_pinch(const RunConfig& cfg) {
    auto in = load_graph(cfg);
    auto est = fit_and_verify(in.g, in.t, default_rmax(cfg, in.t));
    atomic_write(cfg.out, pinch_report(est, cfg));
    std::cout << "a = " << format_double(est.a) << ", c = " << format_double(est.c)
              << ", violations = " << est.violations.size() << "\n";
    return 0;
}

int cmd_phi(const RunConfig& cfg) {
    auto in = load_graph(cfg);
    if (cfg.nmax < 1) throw InvalidParameterError("phi: --nmax must be >= 1");
    std::vector<long long> ns;
    for (long long n = 1; n <= cfg.nmax; ++n) ns.push_back(n);
    auto table = phi_table(in.g, in.t, in.t.root, ns);
    atomic_write(cfg.out, phi_csv(table, in.g, cfg));
    return 0;
}

int cmd_check(const RunConfig& cfg) {
    auto in = load_graph(cfg);
    if (cfg.set.empty()) throw InvalidParameterError("check: --set is required");
    VertexSet a = read_vertex_set(in.g, cfg.set);
    BoundReport report;
    report.set_id = cfg.set;
    report.analysis = analyze_set(in.g, in.t, a);
    auto m = uniform_degree(in);
    if (m && !a.empty()) report.cs = cs_bound(in.g, in.t, a, *m, in.t.root);
    if (in.t.complete && !a.empty() && 2 * static_cast<long long>(a.size()) < in.g.size())
        report.bs = babai_szegedy(in.g, a);
    if (!in.t.complete && !a.empty()) {
        auto est = fit_and_verify(in.g, in.t, default_rmax(cfg, in.t));
        if (!est.violations.empty())
            std::cerr << "warning: pinch verification failed; certificate skipped\n";
        else {
            report.cert = z_certificate(in.g, in.t, a, est, cfg.jobs);
            report.cert_check =
                certificate_bounds_check(*report.cert, report.analysis.size_a);
            report.warmup = warmup_check(in.g, in.t, a, est.a, est.c);
        }
    }
    std::ostringstream text;
    text << config_comment(cfg);
    text << "|A| = " << report.analysis.size_a << "\n|dA| = " << report.analysis.size_da
         << "\n";
    if (report.analysis.size_a)
        text << "eii ratio |dA| ln(2+|A|)/|A| = " << format_double(report.analysis.eii_ratio)
             << "\n";
    if (report.cs) text << "CS bound |A|/(4 m phi(2|A|)) = " << format_double(*report.cs) << "\n";
    if (report.bs) text << "Babai-Szegedy |A|/(1+diam) = " << format_double(*report.bs) << "\n";
    if (report.cert && report.cert_check) {
        RunConfig sub = cfg;
        text << certificate_report(*report.cert, *report.cert_check, report.analysis.size_a,
                                   sub);
        text << warmup_report_text(in.g, *report.warmup, sub);
    }
    atomic_write(cfg.out, text.str());
    atomic_write(cfg.out + ".csv",
                 config_comment(cfg) + bound_report_csv_header() + bound_report_csv_row(report));
    return 0;
}

int cmd_certificate(const RunConfig& cfg) {
    auto in = load_graph(cfg);
    if (cfg.set.empty()) throw InvalidParameterError("certificate: --set is required");
    VertexSet a = read_vertex_set(in.g, cfg.set);
    auto est = fit_and_verify(in.g, in.t, default_rmax(cfg, in.t));
    auto cert = z_certificate(in.g, in.t, a, est, cfg.jobs);
    auto check = certificate_bounds_check(cert, static_cast<long long>(a.size()));
    atomic_write(cfg.out, certificate_report(cert, check, static_cast<long long>(a.size()), cfg));
    return 0;
}

int cmd_warmup(const RunConfig& cfg) {
    auto in = load_graph(cfg);
    if (cfg.set.empty()) throw InvalidParameterError("warmup: --set is required");
    VertexSet a = read_vertex_set(in.g, cfg.set);
    auto est = fit_and_verify(in.g, in.t, default_rmax(cfg, in.t));
    auto w = warmup_check(in.g, in.t, a, est.a, est.c);
    atomic_write(cfg.out, warmup_report_text(in.g, w, cfg));
    return 0;
}

int cmd_profile(const RunConfig& cfg) {
    auto in = load_graph(cfg);
    if (cfg.nmax < 1) throw InvalidParameterError("profile: --nmax must be >= 1");
    VertexSet region =
        cfg.set.empty() ? safe_interior(in.g, in.t) : read_vertex_set(in.g, cfg.set);
    IsoProfile profile;
    if (cfg.mode == "heuristic") {
        SearchConfig sc;
        sc.region = region;
        sc.n_max = cfg.nmax;
        sc.seed = cfg.seed < 0 ? 0 : static_cast<std::uint64_t>(cfg.seed);
        if (cfg.budget > 0) sc.schedule.steps = static_cast<int>(cfg.budget);
        profile = heuristic_profile(in.g, in.t, sc);
    } else if (cfg.mode == "all" || cfg.mode == "connected" || cfg.mode.empty()) {
        auto mode = cfg.mode == "all" ? SearchMethod::exact_all : SearchMethod::exact_connected;
        profile = exact_profile(in.g, in.t, region, cfg.nmax, mode, cfg.budget);
    } else {
        throw InvalidParameterError("profile: --mode must be all, connected or heuristic");
    }
    atomic_write(cfg.out, profile_csv(in.g, profile, cfg));
    return 0;
}

int cmd_branchcheck(const RunConfig& cfg) {
    auto in = load_graph(cfg);
    if (cfg.nmax < 1) throw InvalidParameterError("branchcheck: --nmax (path length k) required");
    auto check = branch_point_check(in.g, in.t, cfg.nmax);
    std::ostringstream out;
    out << config_comment(cfg);
    out << "k = " << cfg.nmax << "\n";
    out << "holds = " << (check.holds ? "yes" : "no") << "\n";
    out << "branch points = " << check.branch_points.size() << "\n";
    if (!check.holds) {
        out << "witness chain:";
        for (int v : check.witness) out << ' ' << in.g.id(v).key;
        out << "\n";
    }
    atomic_write(cfg.out, out.str());
    std::cout << (check.holds ? "holds" : "fails") << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"ball growth, pinch constants and vertex isoperimetry toolkit"};
    app.require_subcommand(1);
    RunConfig cfg;
    std::string plot_kind, plot_csv;

    auto add_common = [&](CLI::App* sub, bool needs_out = true) {
        sub->add_option("-f,--family", cfg.family, "family spec, e.g. tree:3, grid:2, "
                                                   "lamplighter, comb, subdiv:4, binary:6, "
                                                   "cycle:8, torus:8x8, file:PATH");
        sub->add_option("--graph", cfg.graph, "edge-list graph file");
        sub->add_option("--radius", cfg.radius, "truncation radius R_t");
        sub->add_option("--rmax", cfg.rmax, "maximum ball radius");
        sub->add_option("--set", cfg.set, "vertex-set file");
        sub->add_option("--nmax", cfg.nmax, "maximum set size / phi argument / path length");
        sub->add_option("--mode", cfg.mode, "all | connected | heuristic");
        sub->add_option("--seed", cfg.seed, "random seed");
        sub->add_option("--jobs", cfg.jobs, "concurrency cap");
        sub->add_option("--budget", cfg.budget, "work budget (sets visited / anneal steps)");
        if (needs_out)
            sub->add_option("--out", cfg.out, "output path")->required();
        else
            sub->add_option("--out", cfg.out, "output path");
    };

    add_common(app.add_subcommand("gen", "materialize a family and write an edge list"));
    add_common(app.add_subcommand("growth", "ball-size profile CSV"));
    add_common(app.add_subcommand("pinch", "fit pinch constants and verify them"));
    add_common(app.add_subcommand("phi", "inverse growth function table"));
    add_common(app.add_subcommand("check", "full bound report for one set"));
    add_common(app.add_subcommand("certificate", "Z-certificate for one set"));
    add_common(app.add_subcommand("warmup", "covering-argument check for one set"));
    add_common(app.add_subcommand("profile", "minimum-boundary profile over a region"));
    add_common(app.add_subcommand("branchcheck", "branch-point path check on a tree"));
    auto* plot = app.add_subcommand("plot", "emit a gnuplot script (and SVG) from a CSV");
    plot->add_option("kind", plot_kind, "growth | profile | ratio")->required();
    plot->add_option("csv", plot_csv, "input CSV produced by this tool")->required();
    plot->add_option("--out", cfg.out, "output script path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    auto* sub = app.get_subcommands().front();
    cfg.subcommand = sub->get_name();
    try {
        if (cfg.subcommand == "gen") return cmd_gen(cfg);
        if (cfg.subcommand == "growth") return cmd_growth(cfg);
        if (cfg.subcommand == "pinch") return cmd_pinch(cfg);
        if (cfg.subcommand == "phi") return cmd_phi(cfg);
        if (cfg.subcommand == "check") return cmd_check(cfg);
        if (cfg.subcommand == "certificate") return cmd_certificate(cfg);
        if (cfg.subcommand == "warmup") return cmd_warmup(cfg);
        if (cfg.subcommand == "profile") return cmd_profile(cfg);
        if (cfg.subcommand == "branchcheck") return cmd_branchcheck(cfg);
        if (cfg.subcommand == "plot") {
            PlotKind kind;
            if (plot_kind == "growth") kind = PlotKind::growth;
            else if (plot_kind == "profile") kind = PlotKind::profile;
            else if (plot_kind == "ratio") kind = PlotKind::ratio;
            else throw InvalidParameterError("plot kind must be growth, profile or ratio");
            emit_plot(plot_csv, kind, cfg.out);
            return 0;
        }
    } catch (const pinch::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
