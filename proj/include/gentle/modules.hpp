#pragma once

#include <map>
#include <utility>
#include <vector>

#include "gentle/complex.hpp"
#include "gentle/fp.hpp"

namespace gentle {

/// A finite-dimensional left module: one coordinate space per vertex and one
/// matrix per arrow.  The matrix of arrow a maps M_{t(a)} to M_{s(a)}
/// (columns to rows), so the action of the path "a then b" is
/// matrix(a) * matrix(b), matching left-to-right path composition.
struct ModuleRep {
    AlgebraPtr A;
    std::vector<int> dims;       // per vertex
    std::vector<FpMat> action;   // per arrow: dims[s(a)] x dims[t(a)]

    int total_dim() const {
        int n = 0;
        for (int d : dims) n += d;
        return n;
    }
};

inline void validate_module(const ModuleRep& M) {
    const GentleQuiver& q = M.A->q;
    if (M.dims.size() != q.vertices.size() || M.action.size() != q.arrows.size())
        throw std::logic_error("module shape mismatch");
    for (std::size_t a = 0; a < q.arrows.size(); ++a) {
        int s = q.vertex_index(q.arrows[a].src), t = q.vertex_index(q.arrows[a].tgt);
        if (M.action[a].rows != static_cast<std::size_t>(M.dims[s]) ||
            M.action[a].cols != static_cast<std::size_t>(M.dims[t]))
            throw std::logic_error("module action shape mismatch");
    }
    for (const auto& r : q.relations) {
        int a = q.arrow_index(r.first), b = q.arrow_index(r.second);
        FpMat prod = mat_mul(M.A->field, M.action[a], M.action[b]);
        for (std::uint32_t x : prod.a)
            if (x != 0) throw std::logic_error("module violates a relation");
    }
}

inline ModuleRep simple_module(const AlgebraPtr& A, int v) {
    ModuleRep M;
    M.A = A;
    M.dims.assign(A->nvertices(), 0);
    M.dims[v] = 1;
    for (int a = 0; a < A->narrows(); ++a) {
        int s = A->q.vertex_index(A->q.arrows[a].src), t = A->q.vertex_index(A->q.arrows[a].tgt);
        M.action.emplace_back(M.dims[s], M.dims[t]);
    }
    validate_module(M);
    return M;
}

/// P_v = (paths ending at v); the arrow a acts by composing on the left.
inline ModuleRep projective_module(const AlgebraPtr& A, int v) {
    ModuleRep M;
    M.A = A;
    for (int w = 0; w < A->nvertices(); ++w)
        M.dims.push_back(static_cast<int>(A->between[w][v].size()));
    for (int a = 0; a < A->narrows(); ++a) {
        int s = A->q.vertex_index(A->q.arrows[a].src), t = A->q.vertex_index(A->q.arrows[a].tgt);
        FpMat m(M.dims[s], M.dims[t]);
        int ap = A->path_id({s, t, {a}});
        for (std::size_t col = 0; col < A->between[t][v].size(); ++col) {
            int comp = A->compose(ap, A->between[t][v][col]);
            if (comp < 0) continue;
            for (std::size_t row = 0; row < A->between[s][v].size(); ++row)
                if (A->between[s][v][row] == comp) m.at(row, col) = 1;
        }
        M.action.push_back(std::move(m));
    }
    validate_module(M);
    return M;
}

/// I_v = dual of (paths starting at v); in the dual basis the arrow a sends
/// the functional of a path to the functional of that path with its trailing
/// a removed.
inline ModuleRep injective_module(const AlgebraPtr& A, int v) {
    ModuleRep M;
    M.A = A;
    for (int w = 0; w < A->nvertices(); ++w)
        M.dims.push_back(static_cast<int>(A->between[v][w].size()));
    for (int a = 0; a < A->narrows(); ++a) {
        int s = A->q.vertex_index(A->q.arrows[a].src), t = A->q.vertex_index(A->q.arrows[a].tgt);
        FpMat m(M.dims[s], M.dims[t]);
        int ap = A->path_id({s, t, {a}});
        for (std::size_t row = 0; row < A->between[v][s].size(); ++row) {
            int comp = A->compose(A->between[v][s][row], ap);
            if (comp < 0) continue;
            for (std::size_t col = 0; col < A->between[v][t].size(); ++col)
                if (A->between[v][t][col] == comp) m.at(row, col) = 1;
        }
        M.action.push_back(std::move(m));
    }
    validate_module(M);
    return M;
}

namespace detail {

/// Row-vector form of the action of arrow `a`: a row over the coordinates of
/// M_{t(a)} is sent to a row over the coordinates of M_{s(a)}.
inline FpMat row_action(const ModuleRep& M, int a) { return transpose(M.action[a]); }

/// Apply a path to a row vector (last arrow acts first).
inline std::vector<std::uint32_t> act_path_row(const ModuleRep& M, const Path& p,
                                               std::vector<std::uint32_t> v) {
    const Fp& F = M.A->field;
    for (auto it = p.arrows.rbegin(); it != p.arrows.rend(); ++it) {
        FpMat act = row_action(M, *it);
        std::vector<std::uint32_t> out(act.cols, 0);
        for (std::size_t i = 0; i < act.rows; ++i)
            if (v[i] != 0)
                for (std::size_t j = 0; j < act.cols; ++j)
                    out[j] = F.add(out[j], F.mul(v[i], act.at(i, j)));
        v = std::move(out);
    }
    return v;
}

struct AmbientCoord {
    int summand;  // index into the ambient summand list
    int path;     // path id from the coordinate's vertex to the summand vertex
};

/// Coordinates of (+)_j P_{x_j} at vertex w, listed summand by summand.
inline std::vector<AmbientCoord> ambient_coords(const Algebra& A, const std::vector<int>& amb,
                                                int w) {
    std::vector<AmbientCoord> out;
    for (std::size_t j = 0; j < amb.size(); ++j)
        for (int p : A.between[w][amb[j]]) out.push_back({static_cast<int>(j), p});
    return out;
}

}  // namespace detail

/// Vertices of the projective cover of M (with multiplicity) and the chosen
/// generator rows: unit vectors of M extending an echelon basis of rad M.
struct CoverData {
    std::vector<int> vertices;
    std::vector<std::vector<std::uint32_t>> rows;  // generator coordinates in M
};

inline CoverData projective_cover(const ModuleRep& M) {
    const Fp& F = M.A->field;
    const GentleQuiver& q = M.A->q;
    CoverData out;
    for (int w = 0; w < M.A->nvertices(); ++w) {
        if (M.dims[w] == 0) continue;
        FpMat rad(0, M.dims[w]);
        for (int a = 0; a < M.A->narrows(); ++a) {
            if (q.vertex_index(q.arrows[a].src) != w) continue;
            FpMat rows = detail::row_action(M, a);  // M_{t(a)} -> M_w
            for (std::size_t r = 0; r < rows.rows; ++r) {
                rad.rows++;
                rad.a.insert(rad.a.end(), rows.a.begin() + r * rows.cols,
                             rows.a.begin() + (r + 1) * rows.cols);
            }
        }
        std::size_t base = rank(F, rad);
        for (int i = 0; i < M.dims[w]; ++i) {
            std::vector<std::uint32_t> unit(M.dims[w], 0);
            unit[i] = 1;
            FpMat trial = rad;
            trial.rows++;
            trial.a.insert(trial.a.end(), unit.begin(), unit.end());
            if (rank(F, trial) > base) {
                rad = std::move(trial);
                base++;
                out.vertices.push_back(w);
                out.rows.push_back(unit);
            }
        }
    }
    return out;
}

/// Minimal projective resolution ... -> P^{-1} -> P^0 of M, returned as a
/// complex concentrated in degrees <= 0.  Throws when the resolution fails
/// to terminate within the structural bound (infinite global dimension).
inline ProjComplex projective_resolution(const ModuleRep& M) {
    validate_module(M);
    const Algebra& A = *M.A;
    const Fp& F = A.field;
    int nv = A.nvertices();

    ProjComplex X;
    X.A = M.A;
    if (M.total_dim() == 0) return X;

    // Level 0: cover of M itself.
    CoverData cover = projective_cover(M);
    std::vector<std::vector<int>> levels = {cover.vertices};
    std::vector<MatrixPV> diffs;  // diffs[k]: level k+1 -> level k

    // Syzygy basis: per vertex, rows over the ambient coordinates of the
    // current cover (+)_j P_{x_j}, spanning the kernel of the cover map.
    std::vector<int> amb = cover.vertices;
    std::vector<FpMat> syz(nv);
    {
        for (int w = 0; w < nv; ++w) {
            auto coords = detail::ambient_coords(A, amb, w);
            FpMat phi(coords.size(), M.dims[w]);
            for (std::size_t i = 0; i < coords.size(); ++i) {
                auto img = detail::act_path_row(M, A.paths[coords[i].path],
                                                cover.rows[coords[i].summand]);
                for (std::size_t j = 0; j < img.size(); ++j) phi.at(i, j) = img[j];
            }
            syz[w] = left_kernel(F, phi);
        }
    }

    int guard = A.dim() + nv + 2;
    while (true) {
        int total = 0;
        for (int w = 0; w < nv; ++w) total += static_cast<int>(syz[w].rows);
        if (total == 0) break;
        if (--guard < 0)
            throw PreconditionError("module has no finite projective resolution");

        // Treat the syzygy as a module in ambient coordinates: radical rows
        // are arrow images of basis rows; generators extend their span.
        std::vector<std::vector<detail::AmbientCoord>> coords(nv);
        std::vector<std::map<std::pair<int, int>, int>> coord_index(nv);
        for (int w = 0; w < nv; ++w) {
            coords[w] = detail::ambient_coords(A, amb, w);
            for (std::size_t i = 0; i < coords[w].size(); ++i)
                coord_index[w][{coords[w][i].summand, coords[w][i].path}] =
                    static_cast<int>(i);
        }
        auto act_arrow = [&](int a, const std::vector<std::uint32_t>& row, int w)
            -> std::vector<std::uint32_t> {
            // row lives at vertex w = t(a); result lives at s(a).
            int s = A.q.vertex_index(A.q.arrows[a].src);
            int ap = A.path_id({s, w, {a}});
            std::vector<std::uint32_t> out(coords[s].size(), 0);
            for (std::size_t i = 0; i < coords[w].size(); ++i) {
                if (row[i] == 0) continue;
                int comp = A.compose(ap, coords[w][i].path);
                if (comp < 0) continue;
                int j = coord_index[s].at({coords[w][i].summand, comp});
                out[j] = F.add(out[j], row[i]);
            }
            return out;
        };

        std::vector<int> next_level;
        std::vector<std::vector<std::uint32_t>> gens;  // over ambient coords
        std::vector<int> gen_vertex;
        for (int w = 0; w < nv; ++w) {
            if (syz[w].rows == 0) continue;
            FpMat rad(0, coords[w].size());
            for (int a = 0; a < A.narrows(); ++a) {
                if (A.q.vertex_index(A.q.arrows[a].src) != w) continue;
                int t = A.q.vertex_index(A.q.arrows[a].tgt);
                for (std::size_t r = 0; r < syz[t].rows; ++r) {
                    std::vector<std::uint32_t> row(syz[t].a.begin() + r * syz[t].cols,
                                                   syz[t].a.begin() + (r + 1) * syz[t].cols);
                    auto img = act_arrow(a, row, t);
                    rad.rows++;
                    rad.a.insert(rad.a.end(), img.begin(), img.end());
                }
            }
            std::size_t base = rank(F, rad);
            for (std::size_t r = 0; r < syz[w].rows; ++r) {
                std::vector<std::uint32_t> row(syz[w].a.begin() + r * syz[w].cols,
                                               syz[w].a.begin() + (r + 1) * syz[w].cols);
                FpMat trial = rad;
                trial.rows++;
                trial.a.insert(trial.a.end(), row.begin(), row.end());
                if (rank(F, trial) > base) {
                    rad = std::move(trial);
                    base++;
                    next_level.push_back(w);
                    gen_vertex.push_back(w);
                    gens.push_back(row);
                }
            }
        }

        // Differential entries: regroup each generator row by ambient summand.
        MatrixPV d(gens.size());
        for (std::size_t t = 0; t < gens.size(); ++t) {
            for (std::size_t j = 0; j < amb.size(); ++j)
                d[t].push_back(pv_zero(gen_vertex[t], amb[j]));
            for (std::size_t i = 0; i < coords[gen_vertex[t]].size(); ++i)
                if (gens[t][i] != 0)
                    pv_accumulate(A, d[t][coords[gen_vertex[t]][i].summand],
                                  coords[gen_vertex[t]][i].path, gens[t][i]);
        }
        diffs.push_back(std::move(d));
        levels.push_back(next_level);

        // Next syzygy: kernel of (+)_t P_{w_t} -> old ambient.
        std::vector<FpMat> next_syz(nv);
        for (int w = 0; w < nv; ++w) {
            auto new_coords = detail::ambient_coords(A, next_level, w);
            FpMat phi(new_coords.size(), coords[w].size());
            for (std::size_t i = 0; i < new_coords.size(); ++i) {
                const Path& p = A.paths[new_coords[i].path];
                const auto& g = gens[new_coords[i].summand];
                // p . g, computed coordinate by coordinate on the old ambient.
                int gw = gen_vertex[new_coords[i].summand];
                for (std::size_t k = 0; k < coords[gw].size(); ++k) {
                    if (g[k] == 0) continue;
                    int comp = p.trivial() ? coords[gw][k].path
                                           : A.compose(new_coords[i].path, coords[gw][k].path);
                    if (comp < 0) continue;
                    int j = coord_index[w].at({coords[gw][k].summand, comp});
                    phi.at(i, j) = F.add(phi.at(i, j), g[k]);
                }
            }
            next_syz[w] = left_kernel(F, phi);
        }
        amb = next_level;
        syz = std::move(next_syz);
    }

    // Assemble: level k sits in degree -k.
    int len = static_cast<int>(levels.size());
    X.dmin = -(len - 1);
    for (int k = len - 1; k >= 0; --k) X.terms.push_back(levels[k]);
    for (int k = len - 2; k >= 0; --k) X.diff.push_back(diffs[k]);
    X = trim(X);
    validate_complex(X);
    return X;
}

}  // namespace gentle
