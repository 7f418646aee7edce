#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "gentle/quiver.hpp"
#include "gentle/surface.hpp"

namespace gentle {

inline bool is_acyclic(const GentleQuiver& q) {
    int nv = static_cast<int>(q.vertices.size());
    std::vector<int> indeg(nv, 0);
    for (const auto& a : q.arrows) indeg[q.vertex_index(a.tgt)]++;
    std::vector<int> ready;
    for (int v = 0; v < nv; ++v)
        if (indeg[v] == 0) ready.push_back(v);
    int removed = 0;
    while (!ready.empty()) {
        int v = ready.back();
        ready.pop_back();
        ++removed;
        for (const auto& a : q.arrows)
            if (q.vertex_index(a.src) == v && --indeg[q.vertex_index(a.tgt)] == 0)
                ready.push_back(q.vertex_index(a.tgt));
    }
    return removed == nv;
}

/// Topological orders of the vertices, enumerated so that at every step the
/// smallest available vertex id (string order) is tried first; the list is
/// truncated at `cap` entries (0 = unlimited).
inline std::vector<std::vector<std::string>> linear_extensions(const GentleQuiver& q,
                                                               std::size_t cap) {
    int nv = static_cast<int>(q.vertices.size());
    std::vector<int> order_by_id(nv);
    for (int i = 0; i < nv; ++i) order_by_id[i] = i;
    std::sort(order_by_id.begin(), order_by_id.end(),
              [&q](int a, int b) { return q.vertices[a] < q.vertices[b]; });
    std::vector<int> indeg(nv, 0);
    for (const auto& a : q.arrows) indeg[q.vertex_index(a.tgt)]++;
    std::vector<char> used(nv, 0);
    std::vector<std::string> cur;
    std::vector<std::vector<std::string>> out;
    auto rec = [&](auto&& self) -> bool {
        if (cur.size() == static_cast<std::size_t>(nv)) {
            out.push_back(cur);
            return cap > 0 && out.size() >= cap;
        }
        for (int v : order_by_id) {
            if (used[v] || indeg[v] != 0) continue;
            used[v] = 1;
            for (const auto& a : q.arrows)
                if (q.vertex_index(a.src) == v) indeg[q.vertex_index(a.tgt)]--;
            cur.push_back(q.vertices[v]);
            bool full = self(self);
            cur.pop_back();
            for (const auto& a : q.arrows)
                if (q.vertex_index(a.src) == v) indeg[q.vertex_index(a.tgt)]++;
            used[v] = 0;
            if (full) return true;
        }
        return false;
    };
    if (nv > 0)
        rec(rec);
    else
        out.push_back({});
    return out;
}

inline std::vector<GentleQuiver> components(const GentleQuiver& q) {
    int nv = static_cast<int>(q.vertices.size());
    std::vector<int> comp(nv, -1);
    int nc = 0;
    for (int s = 0; s < nv; ++s) {
        if (comp[s] >= 0) continue;
        std::vector<int> stack{s};
        comp[s] = nc;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (const auto& a : q.arrows) {
                int x = q.vertex_index(a.src), y = q.vertex_index(a.tgt);
                int other = (x == v) ? y : (y == v ? x : -1);
                if (other >= 0 && comp[other] < 0) {
                    comp[other] = nc;
                    stack.push_back(other);
                }
            }
        }
        ++nc;
    }
    std::vector<GentleQuiver> out(nc);
    for (int v = 0; v < nv; ++v) out[comp[v]].vertices.push_back(q.vertices[v]);
    for (const auto& a : q.arrows) out[comp[q.vertex_index(a.src)]].arrows.push_back(a);
    for (const auto& r : q.relations)
        for (auto& c : out)
            if (c.arrow_index(r.first) >= 0) c.relations.push_back(r);
    return out;
}

struct ExistsReport {
    bool exists = true;
    std::string reason;  // "punctures", a special shape like "T(1,1,1)", or ""
};

/// A full exceptional sequence exists exactly when the surface is unpunctured
/// and carries at least two boundary marked points; the only unpunctured
/// failures are the genus >= 1 surfaces with a single marked point.
inline ExistsReport exists_full_exceptional(const GentleQuiver& q) {
    require_valid(q);
    if (has_full_relation_cycle(q)) return {false, "punctures"};
    for (const auto& c : components(q)) {
        SurfaceInvariants s = surface_invariants(c);
        if (s.punctures > 0) return {false, "punctures"};
        std::string shape = classify_special(s);
        if (s.marks_circ < 2) return {false, shape.empty() ? "T(g,1,1)" : shape};
    }
    return {true, ""};
}

/// Quiver of a subcollection of arcs: restrict every fan to the chosen arcs'
/// ends; consecutive survivors give the arrows.  Two induced arrows through a
/// middle arc compose to zero exactly when they use opposite ends of it.
inline GentleQuiver induced_collection_quiver(const GentleQuiver& q,
                                              const std::vector<std::string>& subset) {
    require_valid(q);
    std::set<int> chosen;
    for (const auto& name : subset) {
        int v = q.vertex_index(name);
        if (v < 0) throw PreconditionError("unknown vertex '" + name + "'");
        if (!chosen.insert(v).second) throw PreconditionError("repeated vertex '" + name + "'");
    }
    EndAssignment ea = assign_ends(q);
    std::vector<Fan> fans = build_fans(q, ea);

    GentleQuiver out;
    for (const auto& v : q.vertices)
        if (chosen.count(q.vertex_index(v))) out.vertices.push_back(v);

    struct NewArrow {
        std::string id, src, tgt;
        int src_end, tgt_end;  // ends used on the two arcs
    };
    std::vector<NewArrow> arrows;
    for (int f = 0; f < static_cast<int>(fans.size()); ++f) {
        std::vector<ArcEnd> kept;
        std::vector<std::string> labels;  // arrow ids bridging kept[i] -> kept[i+1]
        std::string pending;
        for (std::size_t k = 0; k < fans[f].ends.size(); ++k) {
            const ArcEnd& e = fans[f].ends[k];
            if (k > 0) {
                int via = ea.out_slot[fans[f].ends[k - 1].vertex][fans[f].ends[k - 1].end];
                pending += q.arrows[via].id;
            }
            if (chosen.count(e.vertex)) {
                if (!kept.empty()) labels.push_back(pending);
                kept.push_back(e);
                pending.clear();
            }
        }
        for (std::size_t i = 0; i + 1 < kept.size(); ++i)
            arrows.push_back({labels[i], q.vertices[kept[i].vertex], q.vertices[kept[i + 1].vertex],
                              kept[i].end, kept[i + 1].end});
    }
    for (const auto& a : arrows) out.arrows.push_back({a.id, a.src, a.tgt});
    for (const auto& a : arrows)
        for (const auto& b : arrows)
            if (a.tgt == b.src && a.tgt_end != b.src_end) out.relations.push_back({a.id, b.id});
    require_valid(out);
    return out;
}

struct CutResult {
    GentleQuiver quiver;
    // old arrow id -> replacement (itself, or the composite arrow absorbing
    // it); arrows whose composition through the cut arc was allowed vanish.
    std::map<std::string, std::string> provenance;
};

namespace detail {
inline std::string strip_brackets(const std::string& id) {
    if (id.size() >= 2 && id.front() == '[' && id.back() == ']')
        return id.substr(1, id.size() - 2);
    return id;
}
}  // namespace detail

/// Remove one non-loop arc g.  Arrows through g survive only as the
/// composites [c1c2] of relation pairs c1: j -> g, c2: g -> k.  Since the
/// surviving arrows keep the arc ends they used, a composable pair of the cut
/// quiver is a relation exactly when its junction pair was one before: the
/// last constituent of the first arrow followed by the first constituent of
/// the second.
inline CutResult cut_vertex(const GentleQuiver& q, const std::string& vertex) {
    require_valid(q);
    int g = q.vertex_index(vertex);
    if (g < 0) throw PreconditionError("unknown vertex '" + vertex + "'");
    if (is_loop_arc(q, vertex))
        throw PreconditionError("vertex '" + vertex + "' is a loop arc and cannot be cut");

    CutResult res;
    for (const auto& v : q.vertices)
        if (v != vertex) res.quiver.vertices.push_back(v);
    struct NewArrow {
        std::string id, src, tgt;
        std::string first, last;  // junction constituents in the old quiver
    };
    std::vector<NewArrow> arrows;
    for (const auto& a : q.arrows)
        if (a.src != vertex && a.tgt != vertex) {
            arrows.push_back({a.id, a.src, a.tgt, a.id, a.id});
            res.provenance[a.id] = a.id;
        }
    for (const auto& c1 : q.arrows) {
        if (c1.tgt != vertex || c1.src == vertex) continue;
        for (const auto& c2 : q.arrows) {
            if (c2.src != vertex || c2.tgt == vertex) continue;
            if (!q.has_relation(c1.id, c2.id)) continue;
            std::string id =
                "[" + detail::strip_brackets(c1.id) + detail::strip_brackets(c2.id) + "]";
            arrows.push_back({id, c1.src, c2.tgt, c1.id, c2.id});
            res.provenance[c1.id] = id;
            res.provenance[c2.id] = id;
        }
    }
    for (const auto& a : arrows) res.quiver.arrows.push_back({a.id, a.src, a.tgt});
    for (const auto& a : arrows)
        for (const auto& b : arrows)
            if (a.tgt == b.src && q.has_relation(a.last, b.first))
                res.quiver.relations.push_back({a.id, b.id});
    require_valid(res.quiver);
    return res;
}

/// Cut several arcs (an exceptional collection: pairwise compatible, no
/// loops, composition-free in the induced quiver sense).  The result does not
/// depend on the order of the cuts.
inline CutResult cut_collection(const GentleQuiver& q, const std::vector<std::string>& subset) {
    GentleQuiver ind = induced_collection_quiver(q, subset);
    if (!is_acyclic(ind))
        throw PreconditionError("subset is not exceptional: its induced quiver has a cycle");
    for (const auto& v : subset)
        if (is_loop_arc(q, v))
            throw PreconditionError("subset member '" + v + "' is a loop arc");
    CutResult acc;
    acc.quiver = q;
    for (const auto& a : q.arrows) acc.provenance[a.id] = a.id;
    for (const auto& v : subset) {
        CutResult step = cut_vertex(acc.quiver, v);
        std::map<std::string, std::string> merged;
        for (const auto& [old_id, mid_id] : acc.provenance) {
            auto it = step.provenance.find(mid_id);
            if (it != step.provenance.end()) merged[old_id] = it->second;
        }
        acc.quiver = step.quiver;
        acc.provenance = std::move(merged);
    }
    return acc;
}

struct ComponentReport {
    GentleQuiver quiver;
    SurfaceInvariants invariants;
    std::string shape;
};

struct CompletionReport {
    bool can_complete = true;
    std::vector<ComponentReport> component_reports;  // all components, offenders flagged by shape
};

/// A collection extends to a full exceptional sequence exactly when no
/// connected component of the cut surface is a genus >= 1 surface with a
/// single boundary marked point.
inline CompletionReport can_complete(const GentleQuiver& q, const std::vector<std::string>& subset) {
    ExistsReport ex = exists_full_exceptional(q);
    if (!ex.exists)
        throw PreconditionError("no full exceptional sequence exists here (" + ex.reason + ")");
    CutResult cut = cut_collection(q, subset);
    CompletionReport rep;
    if (cut.quiver.vertices.empty()) return rep;
    for (const auto& c : components(cut.quiver)) {
        ComponentReport cr;
        cr.quiver = c;
        cr.invariants = surface_invariants(c);
        cr.shape = classify_special(cr.invariants);
        bool offending = cr.invariants.genus >= 1 && cr.invariants.boundaries == 1 &&
                         cr.invariants.marks_circ == 1;
        if (offending) rep.can_complete = false;
        rep.component_reports.push_back(std::move(cr));
    }
    return rep;
}

/// Quadratic dual presentation: the opposite quiver where a reversed pair is
/// a relation exactly when the original pair composed without one.  May be
/// infinite-dimensional; callers inspect validate_gentle themselves.
inline GentleQuiver koszul_dual_quiver(const GentleQuiver& q) {
    ValidationReport rep = validate_gentle(q);
    if (!rep.gentle) throw PreconditionError("dual requires a gentle presentation");
    GentleQuiver dual = opposite_quiver(q);
    dual.relations.clear();
    for (const auto& a : q.arrows)
        for (const auto& b : q.arrows)
            if (a.tgt == b.src && !q.has_relation(a.id, b.id))
                dual.relations.push_back({b.id, a.id});
    ValidationReport drep = validate_gentle(dual);
    if (!drep.gentle) throw std::logic_error("dual of a gentle presentation must stay gentle");
    return dual;
}

enum class SpecialFamily { one_boundary_two_marks, two_boundaries_two_marks };

/// Ladder presentations of the unpunctured genus-g surfaces with two marked
/// points (on one boundary circle or split over two): a chain of vertices
/// with doubled arrows, consecutive doubled blocks tied by parallel
/// relations.
inline GentleQuiver gen_surface_quiver(SpecialFamily family, int genus) {
    if (genus < 1) throw PreconditionError("genus must be at least 1");
    int n = family == SpecialFamily::one_boundary_two_marks ? 2 * genus + 1 : 2 * genus + 2;
    GentleQuiver q;
    for (int v = 1; v <= n; ++v) q.vertices.push_back(std::to_string(v));
    for (int i = 1; i < n; ++i) {
        q.arrows.push_back({"u" + std::to_string(i), std::to_string(i + 1), std::to_string(i)});
        q.arrows.push_back({"l" + std::to_string(i), std::to_string(i + 1), std::to_string(i)});
    }
    for (int i = 1; i + 1 < n; ++i) {
        q.relations.push_back({"u" + std::to_string(i + 1), "u" + std::to_string(i)});
        q.relations.push_back({"l" + std::to_string(i + 1), "l" + std::to_string(i)});
    }
    require_valid(q);
    return q;
}

}  // namespace gentle
