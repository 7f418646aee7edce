#pragma once

#include <array>
#include <string>
#include <vector>

#include "gentle/quiver.hpp"

namespace gentle {

/// Each quiver vertex is an arc with two ends (0 and 1).  Every arrow leaves
/// a definite end of its source arc and enters a definite end of its target
/// arc.  Two arrow slots at the same arc land on the same end exactly when
/// they can be read consecutively around one marked point:
///   - "a then b" composable and allowed  => a enters and b leaves one end;
///   - "a then b" composable and a relation => a and b use opposite ends;
///   - two arrows entering (or two leaving) an arc use opposite ends.
struct EndAssignment {
    std::vector<int> src_end, tgt_end;                 // per arrow
    std::vector<std::array<int, 2>> in_slot, out_slot; // per vertex and end: arrow or -1
};

struct ArcEnd {
    int vertex = -1, end = -1;
    bool operator==(const ArcEnd&) const = default;
};

/// A fan is the anticlockwise sequence of arc ends meeting one boundary
/// marked point; consecutive ends are linked by exactly one arrow.
struct Fan {
    std::vector<ArcEnd> ends;
};

struct SurfaceInvariants {
    int genus = 0;
    int boundaries = 0;
    int marks_circ = 0;    // marked points carrying arc ends
    int marks_bullet = 0;  // marked points dual to the arcs, one per boundary face
    int punctures = 0;
    int chi = 0;
};

struct FaceTrace {
    // Each face is the corner list of one complementary polygon.  A face with
    // a boundary gap meets the boundary once; a gapless face is a puncture.
    struct Face {
        bool boundary = false;
        int gap_fan = -1;  // fan whose gap closes this face (boundary faces)
        std::vector<ArcEnd> corners;
    };
    std::vector<Face> faces;
    std::vector<int> boundary_succ;             // fan -> next fan along its boundary
    std::vector<std::vector<int>> boundary_cycles;  // fans grouped by boundary component
};

namespace detail {
inline int end_node(int v, int e) { return 2 * v + e; }
}

inline EndAssignment assign_ends(const GentleQuiver& q) {
    int nv = static_cast<int>(q.vertices.size());
    int na = static_cast<int>(q.arrows.size());
    // Slots at each vertex: outgoing first, then incoming, in arrow order.
    struct Slot {
        int arrow;
        bool outgoing;
    };
    std::vector<std::vector<Slot>> slots(nv);
    for (int a = 0; a < na; ++a) slots[q.vertex_index(q.arrows[a].src)].push_back({a, true});
    for (int a = 0; a < na; ++a) slots[q.vertex_index(q.arrows[a].tgt)].push_back({a, false});

    EndAssignment ea;
    ea.src_end.assign(na, -1);
    ea.tgt_end.assign(na, -1);
    ea.in_slot.assign(nv, {-1, -1});
    ea.out_slot.assign(nv, {-1, -1});

    for (int v = 0; v < nv; ++v) {
        const auto& sl = slots[v];
        std::size_t n = sl.size();
        if (n == 0) continue;
        if (n > 4) throw PreconditionError("vertex with more than four arrow slots");
        // Same-end relation between slots, decided by the rules above.
        auto same_end = [&](const Slot& x, const Slot& y) {
            if (x.outgoing == y.outgoing) return false;
            const Slot& in = x.outgoing ? y : x;
            const Slot& out = x.outgoing ? x : y;
            return !q.has_relation(q.arrows[in.arrow].id, q.arrows[out.arrow].id);
        };
        std::vector<int> end(n, -1);
        end[0] = 0;
        for (std::size_t round = 0; round < n; ++round)
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j) {
                    if (i == j || end[i] < 0) continue;
                    int want = same_end(sl[i], sl[j]) ? end[i] : 1 - end[i];
                    if (end[j] < 0)
                        end[j] = want;
                    else if (end[j] != want)
                        throw PreconditionError("inconsistent end structure at vertex '" +
                                                q.vertices[v] + "'");
                }
        for (std::size_t i = 0; i < n; ++i) {
            auto& slot_table = sl[i].outgoing ? ea.out_slot : ea.in_slot;
            if (slot_table[v][end[i]] != -1)
                throw PreconditionError("two parallel slots on one arc end at vertex '" +
                                        q.vertices[v] + "'");
            slot_table[v][end[i]] = sl[i].arrow;
            (sl[i].outgoing ? ea.src_end : ea.tgt_end)[sl[i].arrow] = end[i];
        }
    }
    return ea;
}

/// Chain the arc ends into fans: the arrow a links the end it leaves to the
/// end it enters, and those two ends are consecutive (anticlockwise) at one
/// marked point.  Ends with no incoming link start a fan; bare ends form
/// singleton fans.
inline std::vector<Fan> build_fans(const GentleQuiver& q, const EndAssignment& ea) {
    int nv = static_cast<int>(q.vertices.size());
    std::vector<int> next(2 * nv, -1), has_pred(2 * nv, 0);
    for (std::size_t a = 0; a < q.arrows.size(); ++a) {
        int from = detail::end_node(q.vertex_index(q.arrows[a].src), ea.src_end[a]);
        int to = detail::end_node(q.vertex_index(q.arrows[a].tgt), ea.tgt_end[a]);
        if (next[from] != -1) throw PreconditionError("arc end with two departing arrows");
        next[from] = to;
        if (has_pred[to]) throw PreconditionError("arc end with two arriving arrows");
        has_pred[to] = 1;
    }
    std::vector<Fan> fans;
    std::vector<int> seen(2 * nv, 0);
    for (int e = 0; e < 2 * nv; ++e) {
        if (has_pred[e] || seen[e]) continue;
        Fan f;
        int cur = e;
        while (cur != -1) {
            if (seen[cur]) throw PreconditionError("cyclic fan (relation-free oriented cycle)");
            seen[cur] = 1;
            f.ends.push_back({cur / 2, cur % 2});
            cur = next[cur];
        }
        fans.push_back(std::move(f));
    }
    for (int e = 0; e < 2 * nv; ++e)
        if (!seen[e]) throw PreconditionError("cyclic fan (relation-free oriented cycle)");
    return fans;
}

/// Trace the complementary polygons of the arc system.  Around each marked
/// point the rotation is its fan followed by one boundary gap.  Crossing an
/// arc lands on its other end, and the next corner is that end's rotation
/// successor.  A face that reaches a gap closes through the boundary; the
/// fan owning that gap is followed, along the boundary, by the fan whose gap
/// started the face.  Gapless orbits are punctures.
///
/// Worked two-arc chain (arcs 1, 2 sharing a point, one arrow 1 -> 2): the
/// fans are (1a), (1b 2a), (2b) with gaps g0, g1, g2.  Starting at g0 the
/// walk crosses arc 1 to end 1b and steps to 2a, crosses arc 2 to 2b and
/// lands on g2: a triangle face using both arcs.  The faces from g1 and g2
/// are the two-corner faces (1a . g0-side) and (2a . g1-side); three faces,
/// each with one gap, one boundary component of three marked points.
inline FaceTrace trace_faces(const GentleQuiver& q, const std::vector<Fan>& fans) {
    int nv = static_cast<int>(q.vertices.size());
    int nf = static_cast<int>(fans.size());
    std::vector<int> fan_of(2 * nv, -1), pos_of(2 * nv, -1);
    for (int f = 0; f < nf; ++f)
        for (std::size_t k = 0; k < fans[f].ends.size(); ++k) {
            int node = detail::end_node(fans[f].ends[k].vertex, fans[f].ends[k].end);
            fan_of[node] = f;
            pos_of[node] = static_cast<int>(k);
        }
    // rotation successor inside fan f: position k -> k+1, last end -> gap.
    auto rot_next = [&](int node, int& gap_fan) -> int {
        int f = fan_of[node];
        std::size_t k = pos_of[node];
        if (k + 1 < fans[f].ends.size()) {
            gap_fan = -1;
            const ArcEnd& e = fans[f].ends[k + 1];
            return detail::end_node(e.vertex, e.end);
        }
        gap_fan = f;
        return -1;
    };
    auto cross = [&](int node) { return node ^ 1; };  // other end of the same arc

    FaceTrace ft;
    ft.boundary_succ.assign(nf, -1);
    std::vector<int> visited(2 * nv, 0);
    for (int f = 0; f < nf; ++f) {
        FaceTrace::Face face;
        face.boundary = true;
        const ArcEnd& first = fans[f].ends.front();
        int cur = detail::end_node(first.vertex, first.end);  // rotation successor of the gap
        while (true) {
            if (visited[cur]) throw PreconditionError("face trace revisited an arc end");
            visited[cur] = 1;
            face.corners.push_back({cur / 2, cur % 2});
            int gap_fan = -1;
            int nxt = rot_next(cross(cur), gap_fan);
            if (gap_fan >= 0) {
                face.gap_fan = gap_fan;
                ft.boundary_succ[gap_fan] = f;  // after gap_fan's segment comes fan f
                break;
            }
            cur = nxt;
        }
        ft.faces.push_back(std::move(face));
    }
    for (int e = 0; e < 2 * nv; ++e) {
        if (visited[e]) continue;
        FaceTrace::Face face;  // puncture polygon
        int cur = e;
        while (!visited[cur]) {
            visited[cur] = 1;
            face.corners.push_back({cur / 2, cur % 2});
            int gap_fan = -1;
            cur = rot_next(cross(cur), gap_fan);
            if (gap_fan >= 0) throw PreconditionError("gap reached from a closed face");
        }
        ft.faces.push_back(std::move(face));
    }
    std::vector<int> cyc_seen(nf, 0);
    for (int f = 0; f < nf; ++f) {
        if (cyc_seen[f]) continue;
        std::vector<int> cyc;
        int cur = f;
        while (!cyc_seen[cur]) {
            cyc_seen[cur] = 1;
            cyc.push_back(cur);
            cur = ft.boundary_succ[cur];
        }
        ft.boundary_cycles.push_back(std::move(cyc));
    }
    return ft;
}

namespace detail {
inline int component_count(const GentleQuiver& q) {
    int n = static_cast<int>(q.vertices.size());
    std::vector<int> parent(n);
    for (int i = 0; i < n; ++i) parent[i] = i;
    auto find = [&parent](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (const auto& a : q.arrows) {
        int x = find(q.vertex_index(a.src)), y = find(q.vertex_index(a.tgt));
        if (x != y) parent[x] = y;
    }
    int c = 0;
    for (int i = 0; i < n; ++i)
        if (find(i) == i) c++;
    return c;
}
}  // namespace detail

/// All counts are totals; on a disconnected quiver the genus is the sum of
/// the component genera (2·#components − 2·genus = chi + boundaries + punctures).
inline SurfaceInvariants surface_invariants(const GentleQuiver& q) {
    require_valid(q);
    if (q.vertices.empty()) throw PreconditionError("empty quiver describes no surface");
    EndAssignment ea = assign_ends(q);
    std::vector<Fan> fans = build_fans(q, ea);
    FaceTrace ft = trace_faces(q, fans);
    SurfaceInvariants s;
    s.chi = static_cast<int>(q.vertices.size()) - static_cast<int>(q.arrows.size());
    s.marks_circ = static_cast<int>(fans.size());
    for (const auto& f : ft.faces) (f.boundary ? s.marks_bullet : s.punctures)++;
    s.boundaries = static_cast<int>(ft.boundary_cycles.size());
    int twice_genus = 2 * detail::component_count(q) - s.boundaries - s.punctures - s.chi;
    if (twice_genus < 0 || twice_genus % 2 != 0)
        throw std::logic_error("inconsistent Euler characteristic in face trace");
    s.genus = twice_genus / 2;
    if (s.marks_circ != 2 * static_cast<int>(q.vertices.size()) - static_cast<int>(q.arrows.size()))
        throw std::logic_error("fan count disagrees with the marked point formula");
    return s;
}

/// Surfaces with so few marked points that they constrain exceptional
/// sequences: genus >= 1 with one boundary and one or two marked points, or
/// two boundaries with one marked point each.  Requires an unpunctured
/// surface.  Returns "" when the surface is none of them.
inline std::string classify_special(const SurfaceInvariants& s) {
    if (s.punctures > 0) throw PreconditionError("classification requires an unpunctured surface");
    if (s.genus >= 1 && s.boundaries == 1 && s.marks_circ == 1)
        return "T(" + std::to_string(s.genus) + ",1,1)";
    if (s.genus >= 1 && s.boundaries == 1 && s.marks_circ == 2)
        return "T(" + std::to_string(s.genus) + ",1,2)";
    if (s.genus >= 1 && s.boundaries == 2 && s.marks_circ == 2)
        return "T(" + std::to_string(s.genus) + ",2,2)";
    return "";
}

inline std::string classify_special(const GentleQuiver& q) {
    return classify_special(surface_invariants(q));
}

/// An arc is a loop when both of its ends lie in the same fan (both endpoints
/// of the arc are the same marked point).
inline bool is_loop_arc(const GentleQuiver& q, const std::string& vertex) {
    int v = q.vertex_index(vertex);
    if (v < 0) throw PreconditionError("unknown vertex '" + vertex + "'");
    require_valid(q);
    EndAssignment ea = assign_ends(q);
    std::vector<Fan> fans = build_fans(q, ea);
    for (const auto& f : fans) {
        bool e0 = false, e1 = false;
        for (const auto& e : f.ends) {
            if (e.vertex == v && e.end == 0) e0 = true;
            if (e.vertex == v && e.end == 1) e1 = true;
        }
        if (e0 && e1) return true;
    }
    return false;
}

}  // namespace gentle
