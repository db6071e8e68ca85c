#pragma once

#include <algorithm>
#include <charconv>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "pinch/errors.hpp"
#include "pinch/graph.hpp"
#include "pinch/io.hpp"

namespace pinch {

// Vertex encodings per family:
//   regular_tree(d)           "R", "R.2", "R.2.0" (child labels, root has d
//                             children, everyone else d-1)
//   lattice(d)                "x1,x2,...,xd"
//   lamplighter               "pos|l1,l2,..." lamps sorted ascending
//   comb_tree                 spine "s:n"; attached tree "t:n" (root),
//                             "t:n:0110" (path bits, depth n)
//   binary_tree(depth)        "b", "b:0", "b:01", ... (finite)
//   subdivided_binary_tree(k) branch "v", "v:p" (p = 0|1|2 then 0|1 bits);
//                             subdivision "e:p:i", i=1..k on the edge into
//                             branch p
//   cycle(n)                  "c0".."c{n-1}" (finite)
//   torus(w,h)                "i,j" with wraparound (finite)

struct GeneratorSpec {
    enum class Family {
        regular_tree,
        lattice,
        lamplighter,
        comb_tree,
        binary_tree,
        subdivided_binary_tree,
        cycle,
        torus,
        file,
    };
    Family family;
    int p1 = 0;  // degree / dimension / depth / subdivision / n / width
    int p2 = 0;  // torus height
    std::string path;
};

namespace detail {

inline long long parse_int(std::string_view s, const char* what) {
    long long out = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    if (ec != std::errc{} || p != s.data() + s.size())
        throw ParseError(std::string("bad integer for ") + what + ": " + std::string(s));
    return out;
}

inline std::vector<VertexId> sorted_ids(std::vector<VertexId> v) {
    std::sort(v.begin(), v.end());
    return v;
}

// ---- regular tree -------------------------------------------------------

inline std::vector<VertexId> tree_neighbors(const std::string& key, int d) {
    std::vector<VertexId> out;
    if (key == "R") {
        for (int i = 0; i < d; ++i) out.push_back({"R." + std::to_string(i)});
        return sorted_ids(std::move(out));
    }
    auto dot = key.rfind('.');
    if (dot == std::string::npos || key.substr(0, 1) != "R")
        throw InvalidParameterError("bad tree vertex: " + key);
    out.push_back({key.substr(0, dot)});
    for (int i = 0; i < d - 1; ++i) out.push_back({key + "." + std::to_string(i)});
    return sorted_ids(std::move(out));
}

// ---- lattice ------------------------------------------------------------

inline std::vector<long long> parse_coords(const std::string& key, int d) {
    std::vector<long long> c;
    size_t pos = 0;
    while (true) {
        auto comma = key.find(',', pos);
        std::string_view tok(key.data() + pos,
                             (comma == std::string::npos ? key.size() : comma) - pos);
        c.push_back(parse_int(tok, "coordinate"));
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    if (static_cast<int>(c.size()) != d)
        throw InvalidParameterError("wrong dimension in lattice vertex: " + key);
    return c;
}

inline std::string format_coords(const std::vector<long long>& c) {
    std::string s;
    for (size_t i = 0; i < c.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(c[i]);
    }
    return s;
}

inline std::vector<VertexId> lattice_neighbors(const std::string& key, int d) {
    auto c = parse_coords(key, d);
    std::vector<VertexId> out;
    for (int i = 0; i < d; ++i)
        for (int delta : {-1, 1}) {
            auto c2 = c;
            c2[i] += delta;
            out.push_back({format_coords(c2)});
        }
    return sorted_ids(std::move(out));
}

// ---- lamplighter --------------------------------------------------------

struct LampState {
    long long pos = 0;
    std::vector<long long> lamps;  // sorted ascending
};

inline LampState parse_lamp(const std::string& key) {
    auto bar = key.find('|');
    if (bar == std::string::npos) throw InvalidParameterError("bad lamplighter vertex: " + key);
    LampState s;
    s.pos = parse_int(std::string_view(key.data(), bar), "lamp position");
    size_t pos = bar + 1;
    while (pos < key.size()) {
        auto comma = key.find(',', pos);
        std::string_view tok(key.data() + pos,
                             (comma == std::string::npos ? key.size() : comma) - pos);
        s.lamps.push_back(parse_int(tok, "lamp"));
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    if (!std::is_sorted(s.lamps.begin(), s.lamps.end()) ||
        std::adjacent_find(s.lamps.begin(), s.lamps.end()) != s.lamps.end())
        throw InvalidParameterError("lamplighter lamps not canonical: " + key);
    return s;
}

inline std::string format_lamp(const LampState& s) {
    std::string out = std::to_string(s.pos) + "|";
    for (size_t i = 0; i < s.lamps.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(s.lamps[i]);
    }
    return out;
}

inline std::vector<VertexId> lamplighter_neighbors(const std::string& key) {
    LampState s = parse_lamp(key);
    std::vector<VertexId> out;
    LampState flip = s;
    auto it = std::lower_bound(flip.lamps.begin(), flip.lamps.end(), s.pos);
    if (it != flip.lamps.end() && *it == s.pos)
        flip.lamps.erase(it);
    else
        flip.lamps.insert(it, s.pos);
    out.push_back({format_lamp(flip)});
    LampState right = s;
    ++right.pos;
    out.push_back({format_lamp(right)});
    LampState left = s;
    --left.pos;
    out.push_back({format_lamp(left)});
    return sorted_ids(std::move(out));
}

inline VertexId lamp_vertex(long long pos, std::vector<long long> lamps) {
    std::sort(lamps.begin(), lamps.end());
    return {format_lamp({pos, std::move(lamps)})};
}

// ---- comb tree ----------------------------------------------------------

inline std::vector<VertexId> comb_neighbors(const std::string& key) {
    std::vector<VertexId> out;
    if (key.starts_with("s:")) {
        long long n = parse_int(std::string_view(key).substr(2), "spine index");
        if (n < 1) throw InvalidParameterError("spine index must be >= 1: " + key);
        if (n > 1) out.push_back({"s:" + std::to_string(n - 1)});
        out.push_back({"s:" + std::to_string(n + 1)});
        out.push_back({"t:" + std::to_string(n)});
        return sorted_ids(std::move(out));
    }
    if (!key.starts_with("t:")) throw InvalidParameterError("bad comb vertex: " + key);
    auto colon = key.find(':', 2);
    long long n;
    std::string bits;
    if (colon == std::string::npos) {
        n = parse_int(std::string_view(key).substr(2), "tree index");
    } else {
        n = parse_int(std::string_view(key.data() + 2, colon - 2), "tree index");
        bits = key.substr(colon + 1);
    }
    if (n < 1 || static_cast<long long>(bits.size()) > n || bits.empty() != (colon == std::string::npos))
        throw InvalidParameterError("bad comb vertex: " + key);
    std::string stem = "t:" + std::to_string(n);
    if (bits.empty()) {
        out.push_back({"s:" + std::to_string(n)});  // root hangs off spine n
        if (n >= 1) {
            out.push_back({stem + ":0"});
            out.push_back({stem + ":1"});
        }
    } else {
        std::string up = bits.substr(0, bits.size() - 1);
        out.push_back({up.empty() ? stem : stem + ":" + up});
        if (static_cast<long long>(bits.size()) < n) {
            out.push_back({stem + ":" + bits + "0"});
            out.push_back({stem + ":" + bits + "1"});
        }
    }
    return sorted_ids(std::move(out));
}

// ---- finite binary tree -------------------------------------------------

inline std::vector<VertexId> binary_tree_neighbors(const std::string& key, int depth) {
    std::vector<VertexId> out;
    std::string bits = key == "b" ? "" : key.substr(2);
    if (key != "b" && !key.starts_with("b:"))
        throw InvalidParameterError("bad binary tree vertex: " + key);
    if (!bits.empty()) {
        std::string up = bits.substr(0, bits.size() - 1);
        out.push_back({up.empty() ? "b" : "b:" + up});
    }
    if (static_cast<int>(bits.size()) < depth) {
        out.push_back({"b:" + bits + "0"});
        out.push_back({"b:" + bits + "1"});
    }
    return sorted_ids(std::move(out));
}

// ---- subdivided binary tree --------------------------------------------
// Branch vertices form an infinite tree in which every branch vertex has
// exactly three incident chains (the root has three child chains); each chain
// carries k subdivision vertices, so maximal runs of degree-2 vertices have
// length exactly k.

inline std::vector<VertexId> subdiv_neighbors(const std::string& key, int k) {
    std::vector<VertexId> out;
    auto branch_of = [](const std::string& p) {
        return p.empty() ? std::string("v") : "v:" + p;
    };
    if (key == "v") {
        for (char c : {'0', '1', '2'})
            out.push_back({std::string("e:") + c + ":1"});
        return sorted_ids(std::move(out));
    }
    if (key.starts_with("v:")) {
        std::string p = key.substr(2);
        if (p.empty()) throw InvalidParameterError("bad subdiv vertex: " + key);
        out.push_back({"e:" + p + ":" + std::to_string(k)});
        out.push_back({"e:" + p + "0:1"});
        out.push_back({"e:" + p + "1:1"});
        return sorted_ids(std::move(out));
    }
    if (!key.starts_with("e:")) throw InvalidParameterError("bad subdiv vertex: " + key);
    auto colon = key.rfind(':');
    std::string p = key.substr(2, colon - 2);
    long long i = parse_int(std::string_view(key).substr(colon + 1), "subdivision index");
    if (p.empty() || i < 1 || i > k) throw InvalidParameterError("bad subdiv vertex: " + key);
    if (i == 1)
        out.push_back({branch_of(p.substr(0, p.size() - 1))});
    else
        out.push_back({"e:" + p + ":" + std::to_string(i - 1)});
    if (i == k)
        out.push_back({"v:" + p});
    else
        out.push_back({"e:" + p + ":" + std::to_string(i + 1)});
    return sorted_ids(std::move(out));
}

// ---- finite vertex-transitive test graphs ------------------------------

inline std::vector<VertexId> cycle_neighbors(const std::string& key, int n) {
    long long i = parse_int(std::string_view(key).substr(1), "cycle index");
    return sorted_ids({{"c" + std::to_string((i + 1) % n)},
                       {"c" + std::to_string((i + n - 1) % n)}});
}

inline std::vector<VertexId> torus_neighbors(const std::string& key, int w, int h) {
    auto c = parse_coords(key, 2);
    auto wrap = [](long long x, int m) { return ((x % m) + m) % m; };
    std::vector<VertexId> out;
    for (auto [dx, dy] : {std::pair{-1, 0}, {1, 0}, {0, -1}, {0, 1}})
        out.push_back({format_coords({wrap(c[0] + dx, w), wrap(c[1] + dy, h)})});
    return sorted_ids(std::move(out));
}

}  // namespace detail

/// Parse a short CLI family string: "tree:3", "grid:2", "lamplighter",
/// "comb", "binary:6", "subdiv:4", "cycle:8", "torus:8x8", "file:PATH".
inline GeneratorSpec parse_spec(const std::string& s) {
    using F = GeneratorSpec::Family;
    auto colon = s.find(':');
    std::string head = s.substr(0, colon);
    std::string rest = colon == std::string::npos ? "" : s.substr(colon + 1);
    GeneratorSpec spec{};
    if (head == "tree") {
        spec.family = F::regular_tree;
        spec.p1 = static_cast<int>(detail::parse_int(rest, "tree degree"));
    } else if (head == "grid" || head == "lattice") {
        spec.family = F::lattice;
        spec.p1 = static_cast<int>(detail::parse_int(rest, "lattice dimension"));
    } else if (head == "lamplighter") {
        spec.family = F::lamplighter;
    } else if (head == "comb") {
        spec.family = F::comb_tree;
    } else if (head == "binary") {
        spec.family = F::binary_tree;
        spec.p1 = static_cast<int>(detail::parse_int(rest, "binary tree depth"));
    } else if (head == "subdiv") {
        spec.family = F::subdivided_binary_tree;
        spec.p1 = static_cast<int>(detail::parse_int(rest, "subdivision length"));
    } else if (head == "cycle") {
        spec.family = F::cycle;
        spec.p1 = static_cast<int>(detail::parse_int(rest, "cycle length"));
    } else if (head == "torus") {
        auto x = rest.find('x');
        if (x == std::string::npos) throw ParseError("torus spec needs WxH: " + s);
        spec.family = F::torus;
        spec.p1 = static_cast<int>(detail::parse_int(rest.substr(0, x), "torus width"));
        spec.p2 = static_cast<int>(detail::parse_int(rest.substr(x + 1), "torus height"));
    } else if (head == "file") {
        spec.family = F::file;
        spec.path = rest;
    } else {
        throw ParseError("unknown family spec: " + s);
    }
    return spec;
}

inline std::string spec_string(const GeneratorSpec& spec) {
    using F = GeneratorSpec::Family;
    switch (spec.family) {
        case F::regular_tree: return "tree:" + std::to_string(spec.p1);
        case F::lattice: return "grid:" + std::to_string(spec.p1);
        case F::lamplighter: return "lamplighter";
        case F::comb_tree: return "comb";
        case F::binary_tree: return "binary:" + std::to_string(spec.p1);
        case F::subdivided_binary_tree: return "subdiv:" + std::to_string(spec.p1);
        case F::cycle: return "cycle:" + std::to_string(spec.p1);
        case F::torus: return "torus:" + std::to_string(spec.p1) + "x" + std::to_string(spec.p2);
        case F::file: return "file:" + spec.path;
    }
    throw InvalidParameterError("bad family tag");
}

/// True when the family is an honestly finite graph (materialize_complete,
/// no truncation margins needed).
inline bool is_finite_family(const GeneratorSpec& spec) {
    using F = GeneratorSpec::Family;
    return spec.family == F::binary_tree || spec.family == F::cycle ||
           spec.family == F::torus || spec.family == F::file;
}

/// Natural origin vertex of the family (identity / root / spine 1).
inline VertexId origin(const GeneratorSpec& spec) {
    using F = GeneratorSpec::Family;
    switch (spec.family) {
        case F::regular_tree: return {"R"};
        case F::lattice: {
            std::vector<long long> zero(spec.p1, 0);
            return {detail::format_coords(zero)};
        }
        case F::lamplighter: return {"0|"};
        case F::comb_tree: return {"s:1"};
        case F::binary_tree: return {"b"};
        case F::subdivided_binary_tree: return {"v"};
        case F::cycle: return {"c0"};
        case F::torus: return {"0,0"};
        case F::file: throw InvalidParameterError("file graphs have no canonical origin");
    }
    throw InvalidParameterError("bad family tag");
}

inline GraphOracle make_oracle(const GeneratorSpec& spec) {
    using F = GeneratorSpec::Family;
    GraphOracle oracle;
    oracle.family = spec_string(spec);
    switch (spec.family) {
        case F::regular_tree: {
            int d = spec.p1;
            if (d < 3 || d > 9) throw InvalidParameterError("regular_tree degree must be in 3..9");
            oracle.degree = d;
            oracle.neighbors = [d](const VertexId& v) { return detail::tree_neighbors(v.key, d); };
            break;
        }
        case F::lattice: {
            int d = spec.p1;
            if (d < 1) throw InvalidParameterError("lattice dimension must be >= 1");
            oracle.degree = 2 * d;
            oracle.neighbors = [d](const VertexId& v) {
                return detail::lattice_neighbors(v.key, d);
            };
            break;
        }
        case F::lamplighter:
            oracle.degree = 3;
            oracle.neighbors = [](const VertexId& v) {
                return detail::lamplighter_neighbors(v.key);
            };
            break;
        case F::comb_tree:
            oracle.neighbors = [](const VertexId& v) { return detail::comb_neighbors(v.key); };
            break;
        case F::binary_tree: {
            int depth = spec.p1;
            if (depth < 0) throw InvalidParameterError("binary tree depth must be >= 0");
            oracle.neighbors = [depth](const VertexId& v) {
                return detail::binary_tree_neighbors(v.key, depth);
            };
            break;
        }
        case F::subdivided_binary_tree: {
            int k = spec.p1;
            if (k < 1) throw InvalidParameterError("subdivision length must be >= 1");
            oracle.neighbors = [k](const VertexId& v) {
                return detail::subdiv_neighbors(v.key, k);
            };
            break;
        }
        case F::cycle: {
            int n = spec.p1;
            if (n < 3) throw InvalidParameterError("cycle length must be >= 3");
            oracle.degree = 2;
            oracle.neighbors = [n](const VertexId& v) { return detail::cycle_neighbors(v.key, n); };
            break;
        }
        case F::torus: {
            int w = spec.p1, h = spec.p2;
            if (w < 3 || h < 3) throw InvalidParameterError("torus sides must be >= 3");
            oracle.degree = 4;
            oracle.neighbors = [w, h](const VertexId& v) {
                return detail::torus_neighbors(v.key, w, h);
            };
            break;
        }
        case F::file: {
            auto adj = std::make_shared<std::map<std::string, std::vector<std::string>>>(
                detail::read_adjacency(spec.path));
            oracle.neighbors = [adj](const VertexId& v) {
                auto it = adj->find(v.key);
                if (it == adj->end())
                    throw InvalidParameterError("vertex not in file graph: " + v.key);
                std::vector<VertexId> out;
                out.reserve(it->second.size());
                for (const auto& k : it->second) out.push_back({k});
                return out;
            };
            break;
        }
    }
    return oracle;
}

/// Materialize a family around its origin: full graph for finite families,
/// B(origin, radius) otherwise.
inline std::pair<FiniteGraph, Truncation> materialize_family(
    const GeneratorSpec& spec, int radius, long long cap = kDefaultVertexCap) {
    auto oracle = make_oracle(spec);
    if (spec.family == GeneratorSpec::Family::file) return read_graph(spec.path);
    if (is_finite_family(spec)) return materialize_complete(oracle, origin(spec), cap);
    return materialize(oracle, origin(spec), radius, cap);
}

// ---- named vertex helpers ----------------------------------------------

/// Lamplighter box set A_n: position in [0,n], lamps a subset of [0,n].
inline VertexSet lamplighter_box(const FiniteGraph& g, int n) {
    VertexSet out;
    for (long long p = 0; p <= n; ++p) {
        for (unsigned long long mask = 0; mask < (1ull << (n + 1)); ++mask) {
            std::vector<long long> lamps;
            for (int i = 0; i <= n; ++i)
                if (mask >> i & 1) lamps.push_back(i);
            out.push_back(g.require_index(detail::lamp_vertex(p, std::move(lamps))));
        }
    }
    return make_vertex_set(std::move(out));
}

/// Comb-tree set A_k: the full depth-k binary tree attached at spine vertex k.
inline VertexSet comb_attached_tree(const FiniteGraph& g, int k) {
    VertexSet out;
    std::string stem = "t:" + std::to_string(k);
    out.push_back(g.require_index({stem}));
    std::vector<std::string> level{""};
    for (int depth = 1; depth <= k; ++depth) {
        std::vector<std::string> next;
        for (const auto& bits : level)
            for (char b : {'0', '1'}) {
                next.push_back(bits + b);
                out.push_back(g.require_index({stem + ":" + next.back()}));
            }
        level = std::move(next);
    }
    return make_vertex_set(std::move(out));
}

}  // namespace pinch
