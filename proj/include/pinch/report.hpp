#pragma once

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "pinch/config.hpp"
#include "pinch/errors.hpp"
#include "pinch/graph.hpp"
#include "pinch/growth.hpp"
#include "pinch/io.hpp"
#include "pinch/isoperimetry.hpp"
#include "pinch/search.hpp"

namespace pinch {

inline std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

inline std::string config_comment(const RunConfig& cfg) {
    return "# config: " + cfg.serialize() + "\n";
}

// ---- CSV emission -------------------------------------------------------

inline std::string growth_csv(const GrowthProfile& profile, const RunConfig& cfg) {
    std::ostringstream out;
    out << config_comment(cfg) << "vertex,r,ball_size\n";
    for (const auto& row : profile.rows)
        for (int r = 0; r <= profile.r_max; ++r)
            out << row.id.key << ',' << r << ',' << row.sizes[r] << '\n';
    return out.str();
}

inline std::string pinch_report(const PinchEstimate& est, const RunConfig& cfg) {
    std::ostringstream out;
    out << config_comment(cfg);
    out << "a = " << format_double(est.a) << "  (natural-log fit)\n";
    out << "c = " << format_double(est.c) << "\n";
    out << "verified radius range = [1, " << est.r_verified << "]\n";
    out << "violations = " << est.violations.size() << "\n";
    for (const auto& v : est.violations)
        out << "  " << v.v.key << " r=" << v.r << " |B|=" << v.size
            << (v.upper ? " > upper bound " : " < lower bound ") << format_double(v.bound)
            << "\n";
    return out.str();
}

inline std::string phi_csv(const PhiTable& table, const FiniteGraph& g, const RunConfig& cfg) {
    std::ostringstream out;
    out << config_comment(cfg) << "# anchor: " << g.id(table.v).key << "\n" << "n,phi\n";
    for (const auto& [n, r] : table.values) out << n << ',' << r << '\n';
    return out.str();
}

inline std::string profile_csv(const FiniteGraph& g, const IsoProfile& profile,
                               const RunConfig& cfg) {
    std::ostringstream out;
    out << config_comment(cfg) << "n,min_boundary,method,witness\n";
    for (const auto& [n, row] : profile.rows) {
        out << n << ',' << row.min_boundary << ',' << method_name(row.method) << ',';
        for (size_t i = 0; i < row.witness.size(); ++i) {
            if (i) out << ';';
            out << g.id(row.witness[i]).key;
        }
        out << '\n';
    }
    return out.str();
}

inline std::string certificate_report(const Certificate& cert, const CertificateCheck& check,
                                      long long size_a, const RunConfig& cfg) {
    std::ostringstream out;
    out << config_comment(cfg);
    out << "|A| = " << size_a << "\n";
    out << "|dA| = " << cert.da.size() << "\n";
    out << "a = " << format_double(cert.a) << ", c = " << format_double(cert.c)
        << ", R = " << cert.R << "\n";
    out << "Z (histogram route) = " << format_double(cert.z) << "\n";
    out << "Z (direct route)    = " << format_double(cert.z_direct) << "\n";
    out << "max_u Z(u) = " << format_double(check.max_z_u) << "\n";
    out << "kappa1*|A| = " << format_double(check.kappa1_times_a)
        << "  lower_ok = " << (check.lower_ok ? "yes" : "no") << "\n";
    out << "beta = " << format_double(check.beta)
        << "  upper_ok = " << (check.upper_ok ? "yes" : "no") << "\n";
    out << "implied |dA| lower bound = " << format_double(check.implied_boundary_lb) << "\n";
    return out.str();
}

inline std::string warmup_report_text(const FiniteGraph& g, const WarmupReport& w,
                                      const RunConfig& cfg) {
    std::ostringstream out;
    out << config_comment(cfg);
    out << "v* = " << g.id(w.v_star).key << "\n";
    out << "r = " << w.r << "\n";
    out << "B(v*,2r) covered by union B(u,r): " << (w.ball_covered ? "yes" : "no") << "\n";
    out << "A covered by union B(u,r): " << (w.set_covered ? "yes" : "no") << "\n";
    out << "|A| = " << w.size_a << ", |dA| = " << w.size_da << "\n";
    out << "|dA|^2 c^3 / |A| = " << format_double(w.slack) << "\n";
    return out.str();
}

inline std::string bound_report_csv_header() {
    return "set,size_a,size_da,eii_ratio,cs_bound,bs_bound,z,max_z_u,kappa1_a,beta,"
           "checks_passed\n";
}

inline std::string bound_report_csv_row(const BoundReport& r) {
    std::ostringstream out;
    auto opt = [&](const std::optional<double>& v) {
        return v ? format_double(*v) : std::string("");
    };
    bool checks = true;
    std::optional<double> z, mzu, k1a, beta;
    if (r.cert && r.cert_check) {
        z = r.cert_check->z;
        mzu = r.cert_check->max_z_u;
        k1a = r.cert_check->kappa1_times_a;
        beta = r.cert_check->beta;
        checks = checks && r.cert_check->lower_ok && r.cert_check->upper_ok;
    }
    if (r.warmup) checks = checks && r.warmup->ball_covered && r.warmup->set_covered;
    out << r.set_id << ',' << r.analysis.size_a << ',' << r.analysis.size_da << ','
        << (r.analysis.size_a ? format_double(r.analysis.eii_ratio) : "") << ',' << opt(r.cs)
        << ',' << opt(r.bs) << ',' << opt(z) << ',' << opt(mzu) << ',' << opt(k1a) << ','
        << opt(beta) << ',' << (checks ? "yes" : "no") << '\n';
    return out.str();
}

// ---- plot emission ------------------------------------------------------

enum class PlotKind { growth, profile, ratio };

namespace detail {

struct CsvData {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

inline CsvData read_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open: " + path);
    CsvData data;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::vector<std::string> cells;
        std::istringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) cells.push_back(cell);
        if (data.header.empty())
            data.header = cells;
        else
            data.rows.push_back(cells);
    }
    return data;
}

inline int column(const CsvData& d, const std::string& name) {
    for (size_t i = 0; i < d.header.size(); ++i)
        if (d.header[i] == name) return static_cast<int>(i);
    throw ParseError("csv schema mismatch: missing column " + name);
}

/// Minimal static line plot; enough to eyeball growth and ratio curves.
inline std::string render_svg(const std::vector<std::pair<double, double>>& pts, bool log_y,
                              const std::string& x_label, const std::string& y_label) {
    double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
    std::vector<std::pair<double, double>> p = pts;
    for (auto& [x, y] : p) {
        if (log_y) y = std::log10(y);
        xmin = std::min(xmin, x);
        xmax = std::max(xmax, x);
        ymin = std::min(ymin, y);
        ymax = std::max(ymax, y);
    }
    if (xmax <= xmin) xmax = xmin + 1;
    if (ymax <= ymin) ymax = ymin + 1;
    const double w = 640, h = 420, m = 50;
    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h
        << "\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<line x1=\"" << m << "\" y1=\"" << h - m << "\" x2=\"" << w - m << "\" y2=\""
        << h - m << "\" stroke=\"black\"/>\n";
    out << "<line x1=\"" << m << "\" y1=\"" << m << "\" x2=\"" << m << "\" y2=\"" << h - m
        << "\" stroke=\"black\"/>\n";
    out << "<text x=\"" << w / 2 << "\" y=\"" << h - 10 << "\" text-anchor=\"middle\">"
        << x_label << "</text>\n";
    out << "<text x=\"15\" y=\"" << h / 2 << "\" transform=\"rotate(-90 15 " << h / 2
        << ")\" text-anchor=\"middle\">" << y_label << (log_y ? " (log10)" : "")
        << "</text>\n<polyline fill=\"none\" stroke=\"steelblue\" stroke-width=\"1.5\" points=\"";
    for (auto [x, y] : p) {
        double px = m + (x - xmin) / (xmax - xmin) * (w - 2 * m);
        double py = h - m - (y - ymin) / (ymax - ymin) * (h - 2 * m);
        out << format_double(px) << ',' << format_double(py) << ' ';
    }
    out << "\"/>\n</svg>\n";
    return out.str();
}

}  // namespace detail

/// Emit a self-contained gnuplot script reproducing the figure, plus a
/// rendered SVG for the growth and ratio kinds. Errors (schema mismatch,
/// empty csv) leave no file behind.
inline void emit_plot(const std::string& csv_path, PlotKind kind, const std::string& out_path) {
    auto data = detail::read_csv(csv_path);
    if (data.rows.empty()) throw ParseError("emit_plot: no data rows in " + csv_path);
    std::ostringstream script;
    script << "# gnuplot script generated from " << csv_path << "\n";
    script << "set datafile separator ','\n";
    std::vector<std::pair<double, double>> pts;
    auto collect = [&](int cx, int cy) {
        for (const auto& row : data.rows)
            pts.emplace_back(std::stod(row[cx]), std::stod(row[cy]));
        std::sort(pts.begin(), pts.end());
    };
    switch (kind) {
        case PlotKind::growth: {
            int cr = detail::column(data, "r"), cb = detail::column(data, "ball_size");
            script << "set logscale y\nset xlabel 'r'\nset ylabel '|B(v,r)|'\n";
            script << "plot '" << csv_path << "' using " << cr + 1 << ':' << cb + 1
                   << " with linespoints title 'ball growth'\n";
            collect(cr, cb);
            atomic_write(out_path + ".svg",
                         detail::render_svg(pts, true, "r", "|B(v,r)|"));
            break;
        }
        case PlotKind::profile: {
            int cn = detail::column(data, "n"), cb = detail::column(data, "min_boundary");
            script << "set xlabel 'n'\nset ylabel 'min |dA|'\n";
            script << "plot '" << csv_path << "' using " << cn + 1 << ':' << cb + 1
                   << " with linespoints title 'isoperimetric profile'\n";
            break;
        }
        case PlotKind::ratio: {
            int cn = detail::column(data, "size_a"), cr = detail::column(data, "eii_ratio");
            script << "set xlabel '|A|'\nset ylabel '|dA| log(2+|A|)/|A|'\n";
            script << "plot '" << csv_path << "' using " << cn + 1 << ':' << cr + 1
                   << " with linespoints title 'isoperimetric ratio'\n";
            collect(cn, cr);
            atomic_write(out_path + ".svg",
                         detail::render_svg(pts, false, "|A|", "ratio"));
            break;
        }
    }
    atomic_write(out_path, script.str());
}

}  // namespace pinch
