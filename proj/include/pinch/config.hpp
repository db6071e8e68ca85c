#pragma once

#include <map>
#include <sstream>
#include <string>

#include "pinch/errors.hpp"

namespace pinch {

/// One run's inputs, carried verbatim into every output file so results are
/// reproducible from the artifact alone. Serializes to a single
/// "key=value ..." line and round-trips losslessly.
struct RunConfig {
    std::string subcommand;
    std::string family;
    std::string graph;
    std::string set;
    int radius = -1;
    int rmax = -1;
    int nmax = -1;
    std::string mode;
    long long seed = -1;
    int jobs = 1;
    long long budget = -1;
    std::string out;

    std::string serialize() const {
        std::ostringstream s;
        s << "cmd=" << subcommand;
        auto put = [&](const char* k, const std::string& v) {
            if (!v.empty()) s << ' ' << k << '=' << v;
        };
        auto puti = [&](const char* k, long long v, long long unset) {
            if (v != unset) s << ' ' << k << '=' << v;
        };
        put("family", family);
        put("graph", graph);
        put("set", set);
        puti("radius", radius, -1);
        puti("rmax", rmax, -1);
        puti("nmax", nmax, -1);
        put("mode", mode);
        puti("seed", seed, -1);
        puti("jobs", jobs, 1);
        puti("budget", budget, -1);
        put("out", out);
        return s.str();
    }

    static RunConfig parse(const std::string& line) {
        RunConfig c;
        std::istringstream s(line);
        std::string tok;
        while (s >> tok) {
            auto eq = tok.find('=');
            if (eq == std::string::npos) throw ParseError("bad config token: " + tok);
            std::string k = tok.substr(0, eq), v = tok.substr(eq + 1);
            if (k == "cmd") c.subcommand = v;
            else if (k == "family") c.family = v;
            else if (k == "graph") c.graph = v;
            else if (k == "set") c.set = v;
            else if (k == "radius") c.radius = std::stoi(v);
            else if (k == "rmax") c.rmax = std::stoi(v);
            else if (k == "nmax") c.nmax = std::stoi(v);
            else if (k == "mode") c.mode = v;
            else if (k == "seed") c.seed = std::stoll(v);
            else if (k == "jobs") c.jobs = std::stoi(v);
            else if (k == "budget") c.budget = std::stoll(v);
            else if (k == "out") c.out = v;
            else throw ParseError("unknown config key: " + k);
        }
        return c;
    }

    bool operator==(const RunConfig&) const = default;
};

}  // namespace pinch
