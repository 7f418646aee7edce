#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "gentle/fp.hpp"
#include "gentle/quiver.hpp"

namespace gentle {

/// A composition-allowed path, stored as arrow indices; empty means the
/// trivial path at `src` (== `tgt`).  Composition is written left to right:
/// the path "a then b" has source s(a) and target t(b).
struct Path {
    int src = -1, tgt = -1;
    std::vector<int> arrows;
    bool trivial() const { return arrows.empty(); }
    std::size_t length() const { return arrows.size(); }
};

/// Precomputed path data for a finite-dimensional gentle presentation over
/// F_p.  Immutable after construction; shared by complexes and modules.
struct Algebra {
    GentleQuiver q;
    Fp field;
    std::vector<Path> paths;                              // trivial paths first (vertex order),
                                                          // then by (length, arrow-id sequence)
    std::vector<std::vector<std::vector<int>>> between;   // between[v][w] = path ids v -> w, same order
    std::vector<int> allowed_succ, allowed_pred;          // per arrow, -1 when absent

    int nvertices() const { return static_cast<int>(q.vertices.size()); }
    int narrows() const { return static_cast<int>(q.arrows.size()); }
    int dim() const { return static_cast<int>(paths.size()); }
    int trivial_path(int v) const { return v; }

    int path_id(const Path& p) const {
        auto it = index_.find(key(p));
        return it == index_.end() ? -1 : it->second;
    }

    /// Compose path i with path j ("i then j").  Returns the resulting path id
    /// or -1 when the junction is a relation (the product is zero).
    int compose(int i, int j) const {
        const Path& x = paths[i];
        const Path& y = paths[j];
        if (x.tgt != y.src) throw std::logic_error("composing paths with mismatched endpoints");
        if (x.trivial()) return j;
        if (y.trivial()) return i;
        if (rel_pair_.count({x.arrows.back(), y.arrows.front()})) return -1;
        Path z;
        z.src = x.src;
        z.tgt = y.tgt;
        z.arrows = x.arrows;
        z.arrows.insert(z.arrows.end(), y.arrows.begin(), y.arrows.end());
        int id = path_id(z);
        if (id < 0) throw std::logic_error("composite of allowed paths not found");
        return id;
    }

    static std::shared_ptr<const Algebra> make(const GentleQuiver& q, std::uint32_t prime) {
        require_valid(q);
        auto alg = std::shared_ptr<Algebra>(new Algebra(q, prime));
        return alg;
    }

  private:
    std::map<std::vector<int>, int> index_;
    std::set<std::pair<int, int>> rel_pair_;

    static std::vector<int> key(const Path& p) {
        if (p.trivial()) return {-1 - p.src};
        return p.arrows;
    }

    Algebra(const GentleQuiver& quiver, std::uint32_t prime) : q(quiver), field(prime) {
        int nv = static_cast<int>(q.vertices.size());
        int na = static_cast<int>(q.arrows.size());
        for (const auto& r : q.relations)
            rel_pair_.insert({q.arrow_index(r.first), q.arrow_index(r.second)});
        allowed_succ.assign(na, -1);
        allowed_pred.assign(na, -1);
        for (int a = 0; a < na; ++a)
            for (int b = 0; b < na; ++b)
                if (q.arrows[a].tgt == q.arrows[b].src && !rel_pair_.count({a, b})) {
                    allowed_succ[a] = b;
                    allowed_pred[b] = a;
                }

        for (int v = 0; v < nv; ++v) paths.push_back({v, v, {}});
        std::vector<Path> nontrivial;
        for (int a0 = 0; a0 < na; ++a0) {
            Path p;
            p.src = q.vertex_index(q.arrows[a0].src);
            p.tgt = q.vertex_index(q.arrows[a0].tgt);
            p.arrows = {a0};
            int cur = a0;
            while (true) {
                nontrivial.push_back(p);
                cur = allowed_succ[cur];
                if (cur < 0) break;
                if (static_cast<int>(p.arrows.size()) > na)
                    throw std::logic_error("unbounded path growth in a validated presentation");
                p.arrows.push_back(cur);
                p.tgt = q.vertex_index(q.arrows[cur].tgt);
            }
        }
        std::sort(nontrivial.begin(), nontrivial.end(), [this](const Path& x, const Path& y) {
            if (x.length() != y.length()) return x.length() < y.length();
            for (std::size_t k = 0; k < x.length(); ++k) {
                const std::string& xi = q.arrows[x.arrows[k]].id;
                const std::string& yi = q.arrows[y.arrows[k]].id;
                if (xi != yi) return xi < yi;
            }
            return false;
        });
        for (auto& p : nontrivial) paths.push_back(p);
        for (std::size_t i = 0; i < paths.size(); ++i) index_[key(paths[i])] = static_cast<int>(i);
        between.assign(nv, std::vector<std::vector<int>>(nv));
        for (std::size_t i = 0; i < paths.size(); ++i)
            between[paths[i].src][paths[i].tgt].push_back(static_cast<int>(i));
    }
};

using AlgebraPtr = std::shared_ptr<const Algebra>;

/// Element of e_v A e_w: an F_p combination of paths v -> w.  Terms are kept
/// sorted by path id with zero coefficients dropped.
struct PathVector {
    int src = -1, tgt = -1;
    std::vector<std::pair<int, std::uint32_t>> terms;
    bool zero() const { return terms.empty(); }
};

inline PathVector pv_zero(int src, int tgt) { return {src, tgt, {}}; }

inline PathVector pv_path(const Algebra& A, int path, std::uint32_t c = 1) {
    const Path& p = A.paths[path];
    PathVector v{p.src, p.tgt, {}};
    c %= A.field.p;
    if (c) v.terms.push_back({path, c});
    return v;
}

inline void pv_accumulate(const Algebra& A, PathVector& acc, int path, std::uint32_t c) {
    if (!(c %= A.field.p)) return;
    auto it = std::lower_bound(acc.terms.begin(), acc.terms.end(), path,
                               [](const auto& t, int id) { return t.first < id; });
    if (it != acc.terms.end() && it->first == path) {
        it->second = A.field.add(it->second, c);
        if (!it->second) acc.terms.erase(it);
    } else {
        acc.terms.insert(it, {path, c});
    }
}

inline PathVector pv_add(const Algebra& A, const PathVector& x, const PathVector& y) {
    if (x.src != y.src || x.tgt != y.tgt) throw std::logic_error("adding mistyped path vectors");
    PathVector r = x;
    for (const auto& [p, c] : y.terms) pv_accumulate(A, r, p, c);
    return r;
}

inline PathVector pv_scale(const Algebra& A, std::uint32_t c, const PathVector& x) {
    PathVector r{x.src, x.tgt, {}};
    c %= A.field.p;
    if (!c) return r;
    for (const auto& [p, k] : x.terms) {
        std::uint32_t m = A.field.mul(c, k);
        if (m) r.terms.push_back({p, m});
    }
    return r;
}

inline PathVector pv_neg(const Algebra& A, const PathVector& x) {
    return pv_scale(A, A.field.p - 1, x);
}

/// Product "x then y" in the path algebra modulo the relations.
inline PathVector pv_mul(const Algebra& A, const PathVector& x, const PathVector& y) {
    if (x.tgt != y.src) throw std::logic_error("multiplying mistyped path vectors");
    PathVector r{x.src, y.tgt, {}};
    for (const auto& [px, cx] : x.terms)
        for (const auto& [py, cy] : y.terms) {
            int pz = A.compose(px, py);
            if (pz >= 0) pv_accumulate(A, r, pz, A.field.mul(cx, cy));
        }
    return r;
}

inline bool pv_equal(const PathVector& x, const PathVector& y) {
    return x.src == y.src && x.tgt == y.tgt && x.terms == y.terms;
}

/// Coefficient of the trivial path; only meaningful when src == tgt.
inline std::uint32_t pv_trivial_coeff(const Algebra& A, const PathVector& x) {
    if (x.src != x.tgt) return 0;
    int t = A.trivial_path(x.src);
    for (const auto& [p, c] : x.terms)
        if (p == t) return c;
    return 0;
}

/// Allowed paths from v to w in enumeration order (length, then the
/// lexicographic order of arrow-id sequences).
inline std::vector<int> allowed_paths(const Algebra& A, int v, int w) { return A.between[v][w]; }

}  // namespace gentle
