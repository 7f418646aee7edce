#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace gentle {

struct ParseError : std::runtime_error {
    int line;
    ParseError(int ln, const std::string& msg)
        : std::runtime_error("line " + std::to_string(ln) + ": " + msg), line(ln) {}
};

struct PreconditionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Arrow {
    std::string id, src, tgt;
};

/// A quiver with length-two monomial relations.  Vertices, arrows and
/// relations keep their stored (input) order; all algorithms that enumerate
/// derived data do so in this order, which makes every operation
/// deterministic.
struct GentleQuiver {
    std::vector<std::string> vertices;
    std::vector<Arrow> arrows;
    std::vector<std::pair<std::string, std::string>> relations;  // (a,b) forbids the path "a then b"

    int vertex_index(const std::string& v) const {
        for (std::size_t i = 0; i < vertices.size(); ++i)
            if (vertices[i] == v) return static_cast<int>(i);
        return -1;
    }
    int arrow_index(const std::string& a) const {
        for (std::size_t i = 0; i < arrows.size(); ++i)
            if (arrows[i].id == a) return static_cast<int>(i);
        return -1;
    }
    bool has_relation(const std::string& a, const std::string& b) const {
        for (const auto& r : relations)
            if (r.first == a && r.second == b) return true;
        return false;
    }
    std::vector<int> arrows_out(int v) const {
        std::vector<int> out;
        for (std::size_t i = 0; i < arrows.size(); ++i)
            if (vertex_index(arrows[i].src) == v) out.push_back(static_cast<int>(i));
        return out;
    }
    std::vector<int> arrows_in(int v) const {
        std::vector<int> in;
        for (std::size_t i = 0; i < arrows.size(); ++i)
            if (vertex_index(arrows[i].tgt) == v) in.push_back(static_cast<int>(i));
        return in;
    }
};

/// Parse the plain-text quiver format:
///   vertex <id>
///   arrow <id> <src> <tgt>
///   rel <arrow-id> <arrow-id>
/// '#' starts a comment; blank lines are ignored.
inline GentleQuiver parse_quiver(const std::string& text) {
    GentleQuiver q;
    std::set<std::string> vseen, aseen;
    std::set<std::pair<std::string, std::string>> rseen;
    std::istringstream in(text);
    std::string raw;
    int ln = 0;
    while (std::getline(in, raw)) {
        ++ln;
        std::string line = raw.substr(0, raw.find('#'));
        std::istringstream ls(line);
        std::string kw;
        if (!(ls >> kw)) continue;
        if (kw == "vertex") {
            std::string id, extra;
            if (!(ls >> id)) throw ParseError(ln, "vertex needs an identifier");
            if (ls >> extra) throw ParseError(ln, "unexpected token '" + extra + "'");
            if (!vseen.insert(id).second) throw ParseError(ln, "duplicate vertex '" + id + "'");
            q.vertices.push_back(id);
        } else if (kw == "arrow") {
            std::string id, s, t, extra;
            if (!(ls >> id >> s >> t)) throw ParseError(ln, "arrow needs <id> <src> <tgt>");
            if (ls >> extra) throw ParseError(ln, "unexpected token '" + extra + "'");
            if (!aseen.insert(id).second) throw ParseError(ln, "duplicate arrow '" + id + "'");
            if (!vseen.count(s)) throw ParseError(ln, "unknown vertex '" + s + "'");
            if (!vseen.count(t)) throw ParseError(ln, "unknown vertex '" + t + "'");
            q.arrows.push_back({id, s, t});
        } else if (kw == "rel") {
            std::string a, b, extra;
            if (!(ls >> a >> b)) throw ParseError(ln, "rel needs two arrow identifiers");
            if (ls >> extra) throw ParseError(ln, "unexpected token '" + extra + "'");
            if (!aseen.count(a)) throw ParseError(ln, "unknown arrow '" + a + "'");
            if (!aseen.count(b)) throw ParseError(ln, "unknown arrow '" + b + "'");
            const Arrow& aa = q.arrows[q.arrow_index(a)];
            const Arrow& ab = q.arrows[q.arrow_index(b)];
            if (aa.tgt != ab.src)
                throw ParseError(ln, "relation pair '" + a + " " + b + "' is not composable");
            if (!rseen.insert({a, b}).second)
                throw ParseError(ln, "duplicate relation '" + a + " " + b + "'");
            q.relations.push_back({a, b});
        } else {
            throw ParseError(ln, "unknown directive '" + kw + "'");
        }
    }
    return q;
}

inline std::string serialize_quiver(const GentleQuiver& q) {
    std::ostringstream out;
    for (const auto& v : q.vertices) out << "vertex " << v << "\n";
    for (const auto& a : q.arrows) out << "arrow " << a.id << " " << a.src << " " << a.tgt << "\n";
    for (const auto& r : q.relations) out << "rel " << r.first << " " << r.second << "\n";
    return out.str();
}

struct ValidationReport {
    bool gentle = true;              // arrow/relation bounds at every vertex
    bool finite_dimensional = true;  // no oriented cycle avoiding all relations
    std::vector<std::string> violations;
    bool ok() const { return gentle && finite_dimensional; }
};

namespace detail {
/// Successor graph on arrows: edge a -> b when "a then b" is composable and
/// `in_rel` selects whether the pair must lie in the relation set or avoid it.
inline bool arrow_graph_has_cycle(const GentleQuiver& q, bool in_rel) {
    std::size_t n = q.arrows.size();
    std::vector<std::vector<std::size_t>> adj(n);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            if (q.arrows[a].tgt == q.arrows[b].src &&
                q.has_relation(q.arrows[a].id, q.arrows[b].id) == in_rel)
                adj[a].push_back(b);
    std::vector<int> state(n, 0);  // 0 unvisited, 1 on stack, 2 done
    std::vector<std::pair<std::size_t, std::size_t>> stack;
    for (std::size_t s = 0; s < n; ++s) {
        if (state[s]) continue;
        stack.push_back({s, 0});
        state[s] = 1;
        while (!stack.empty()) {
            auto& [u, k] = stack.back();
            if (k < adj[u].size()) {
                std::size_t v = adj[u][k++];
                if (state[v] == 1) return true;
                if (state[v] == 0) {
                    state[v] = 1;
                    stack.push_back({v, 0});
                }
            } else {
                state[u] = 2;
                stack.pop_back();
            }
        }
    }
    return false;
}
}  // namespace detail

/// Check the gentle axioms: at most two arrows in and out of each vertex, and
/// for each arrow at most one composable continuation avoiding the relations,
/// at most one lying in them (same for predecessors).  Finite-dimensionality
/// (no relation-free oriented cycle) is reported separately.
inline ValidationReport validate_gentle(const GentleQuiver& q) {
    ValidationReport rep;
    auto fail = [&rep](const std::string& msg) {
        rep.gentle = false;
        rep.violations.push_back(msg);
    };
    for (std::size_t v = 0; v < q.vertices.size(); ++v) {
        std::size_t out = q.arrows_out(static_cast<int>(v)).size();
        std::size_t in = q.arrows_in(static_cast<int>(v)).size();
        if (out > 2) fail("vertex '" + q.vertices[v] + "' has " + std::to_string(out) + " outgoing arrows");
        if (in > 2) fail("vertex '" + q.vertices[v] + "' has " + std::to_string(in) + " incoming arrows");
    }
    for (const auto& a : q.arrows) {
        std::size_t succ_allowed = 0, succ_rel = 0, pred_allowed = 0, pred_rel = 0;
        for (const auto& b : q.arrows) {
            if (a.tgt == b.src) (q.has_relation(a.id, b.id) ? succ_rel : succ_allowed)++;
            if (b.tgt == a.src) (q.has_relation(b.id, a.id) ? pred_rel : pred_allowed)++;
        }
        if (succ_allowed > 1) fail("arrow '" + a.id + "' has more than one composition-allowed successor");
        if (succ_rel > 1) fail("arrow '" + a.id + "' has more than one relation successor");
        if (pred_allowed > 1) fail("arrow '" + a.id + "' has more than one composition-allowed predecessor");
        if (pred_rel > 1) fail("arrow '" + a.id + "' has more than one relation predecessor");
    }
    if (detail::arrow_graph_has_cycle(q, false)) {
        rep.finite_dimensional = false;
        rep.violations.push_back("oriented cycle with all compositions allowed (infinite dimension)");
    }
    return rep;
}

inline void require_valid(const GentleQuiver& q) {
    ValidationReport rep = validate_gentle(q);
    if (!rep.ok()) {
        std::string msg = "quiver is not a finite-dimensional gentle presentation:";
        for (const auto& v : rep.violations) msg += "\n  " + v;
        throw PreconditionError(msg);
    }
}

/// An oriented cycle whose every consecutive pair (cyclically) is a relation.
/// Presence of such a cycle is equivalent to infinite global dimension.
inline bool has_full_relation_cycle(const GentleQuiver& q) {
    return detail::arrow_graph_has_cycle(q, true);
}

/// Opposite quiver: arrows reversed (ids kept), relation pairs reversed.
inline GentleQuiver opposite_quiver(const GentleQuiver& q) {
    GentleQuiver op;
    op.vertices = q.vertices;
    for (const auto& a : q.arrows) op.arrows.push_back({a.id, a.tgt, a.src});
    for (const auto& r : q.relations) op.relations.push_back({r.second, r.first});
    return op;
}

}  // namespace gentle
