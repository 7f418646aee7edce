#pragma once

#include <map>
#include <memory>
#include <tuple>
#include <vector>

#include "gentle/minimal.hpp"

namespace gentle {

/// One projective summand Ae_u ⊗ e_wA of a two-sided module.  Its basis is
/// the set of pairs (p, q) with p a path ending at u and q a path starting
/// at w; the algebra acts on p from the left and on q from the right.
struct BimoduleSummand {
    int u;
    int w;
};

/// A single p ⊗ q term of a map between two-sided projectives: the map sends
/// the generator e_u ⊗ e_w to coeff * (p ⊗ q), so it carries the basis pair
/// (p', q') of the source to (p'p, qq').
struct PairTerm {
    int p;
    int q;
    std::uint32_t coeff;
};

/// A projective resolution of the dual bimodule D(A) over the enveloping
/// algebra.  levels[k] holds the summands of the k-th term; diff[k] is the
/// matrix of the map from level k+1 to level k (rows = source summands).
struct BimoduleResolution {
    AlgebraPtr A;
    std::vector<std::vector<BimoduleSummand>> levels;
    std::vector<std::vector<std::vector<std::vector<PairTerm>>>> diff;
};

namespace detail {

struct BimodCoord {
    int s;  // summand index within the level
    int p;  // path ending at u_s
    int q;  // path starting at w_s
};

inline int arrow_path_id(const Algebra& A, int a) {
    int s = A.q.vertex_index(A.q.arrows[a].src), t = A.q.vertex_index(A.q.arrows[a].tgt);
    return A.path_id({s, t, {a}});
}

inline std::vector<BimodCoord> bimod_coords(const Algebra& A,
                                            const std::vector<BimoduleSummand>& level) {
    std::vector<BimodCoord> out;
    for (int s = 0; s < static_cast<int>(level.size()); ++s)
        for (int p = 0; p < A.dim(); ++p) {
            if (A.paths[p].tgt != level[s].u) continue;
            for (int q = 0; q < A.dim(); ++q)
                if (A.paths[q].src == level[s].w) out.push_back({s, p, q});
        }
    return out;
}

inline std::map<std::tuple<int, int, int>, int> bimod_index(const std::vector<BimodCoord>& coords) {
    std::map<std::tuple<int, int, int>, int> idx;
    for (int i = 0; i < static_cast<int>(coords.size()); ++i)
        idx[{coords[i].s, coords[i].p, coords[i].q}] = i;
    return idx;
}

inline bool path_is_maximal(const Algebra& A, int p) {
    for (int a = 0; a < A.narrows(); ++a) {
        int ap = arrow_path_id(A, a);
        if (A.paths[ap].src == A.paths[p].tgt && A.compose(p, ap) != -1) return false;
        if (A.paths[ap].tgt == A.paths[p].src && A.compose(ap, p) != -1) return false;
    }
    return true;
}

}  // namespace detail

/// Resolve D(A) by two-sided projectives.  Requires finite global dimension
/// (no cycle made entirely of relations); the resolution is then finite and
/// the construction below terminates.
inline BimoduleResolution bimodule_resolution(const AlgebraPtr& A) {
    using detail::BimodCoord;
    if (has_full_relation_cycle(A->q))
        throw PreconditionError(
            "the dual bimodule has no finite projective resolution "
            "(the algebra has infinite global dimension)");
    const Fp& F = A->field;
    const int dim = A->dim();

    BimoduleResolution res;
    res.A = A;

    // Level 0: one summand per maximal path pi, covering the dual basis
    // vector pi^*.  The basis pair (p, q) of that summand hits m^* exactly
    // when pi factors as q*m*p.
    std::vector<int> maximal;
    for (int p = 0; p < dim; ++p)
        if (detail::path_is_maximal(*A, p)) maximal.push_back(p);
    res.levels.emplace_back();
    for (int pi : maximal)
        res.levels.back().push_back({A->paths[pi].tgt, A->paths[pi].src});

    std::vector<BimodCoord> coords = detail::bimod_coords(*A, res.levels[0]);
    FpMat aug(coords.size(), dim);
    for (std::size_t i = 0; i < coords.size(); ++i) {
        int pi = maximal[coords[i].s];
        int p = coords[i].p, q = coords[i].q;
        for (int m = 0; m < dim; ++m) {
            if (A->paths[m].src != A->paths[q].tgt) continue;
            int qm = A->compose(q, m);
            if (qm == -1 || A->paths[qm].tgt != A->paths[p].src) continue;
            if (A->compose(qm, p) == pi) aug.at(i, m) = 1;
        }
    }
    FpMat kernel = left_kernel(F, aug);

    const int guard = 2 * (dim + A->nvertices()) + 2;
    while (kernel.rows > 0) {
        if (static_cast<int>(res.levels.size()) > guard)
            throw PreconditionError("two-sided resolution failed to terminate");

        // Split the kernel into its vertex-pair components: the coordinate
        // (s, p, q) sits in component (source of p, target of q).
        std::map<std::pair<int, int>, std::vector<int>> comp_coords;
        for (int i = 0; i < static_cast<int>(coords.size()); ++i)
            comp_coords[{A->paths[coords[i].p].src, A->paths[coords[i].q].tgt}].push_back(i);
        std::map<std::pair<int, int>, FpMat> comp_rows;
        for (const auto& [ij, sub] : comp_coords) {
            FpMat rows(kernel.rows, sub.size());
            for (std::size_t r = 0; r < kernel.rows; ++r)
                for (std::size_t c = 0; c < sub.size(); ++c) rows.at(r, c) = kernel.at(r, sub[c]);
            comp_rows.emplace(ij, std::move(rows));
        }

        // Generators of the kernel, component by component: rows that extend
        // an echelon of the radical (arrow images from both sides).
        std::vector<BimoduleSummand> next_level;
        std::vector<std::vector<std::uint32_t>> covers;  // full-width rows
        for (const auto& [ij, sub] : comp_coords) {
            auto [i, j] = ij;
            std::map<std::tuple<int, int, int>, int> subidx;
            for (int c = 0; c < static_cast<int>(sub.size()); ++c) {
                const BimodCoord& bc = coords[sub[c]];
                subidx[{bc.s, bc.p, bc.q}] = c;
            }
            std::vector<std::vector<std::uint32_t>> rad;
            for (int a = 0; a < A->narrows(); ++a) {
                int ap = detail::arrow_path_id(*A, a);
                int as = A->paths[ap].src, at = A->paths[ap].tgt;
                if (as == i) {  // left action by a: (t(a), j) -> (i, j)
                    auto it = comp_rows.find({at, j});
                    if (it == comp_rows.end()) continue;
                    const std::vector<int>& src = comp_coords[{at, j}];
                    for (std::size_t r = 0; r < it->second.rows; ++r) {
                        std::vector<std::uint32_t> row(sub.size(), 0);
                        bool nonzero = false;
                        for (std::size_t c = 0; c < src.size(); ++c) {
                            std::uint32_t x = it->second.at(r, c);
                            if (x == 0) continue;
                            const BimodCoord& bc = coords[src[c]];
                            int pp = A->compose(ap, bc.p);
                            if (pp == -1) continue;
                            int tgt = subidx.at({bc.s, pp, bc.q});
                            row[tgt] = F.add(row[tgt], x);
                            nonzero = true;
                        }
                        if (nonzero) rad.push_back(std::move(row));
                    }
                }
                if (at == j) {  // right action by a: (i, s(a)) -> (i, j)
                    auto it = comp_rows.find({i, as});
                    if (it == comp_rows.end()) continue;
                    const std::vector<int>& src = comp_coords[{i, as}];
                    for (std::size_t r = 0; r < it->second.rows; ++r) {
                        std::vector<std::uint32_t> row(sub.size(), 0);
                        bool nonzero = false;
                        for (std::size_t c = 0; c < src.size(); ++c) {
                            std::uint32_t x = it->second.at(r, c);
                            if (x == 0) continue;
                            const BimodCoord& bc = coords[src[c]];
                            int qq = A->compose(bc.q, ap);
                            if (qq == -1) continue;
                            int tgt = subidx.at({bc.s, bc.p, qq});
                            row[tgt] = F.add(row[tgt], x);
                            nonzero = true;
                        }
                        if (nonzero) rad.push_back(std::move(row));
                    }
                }
            }
            FpMat ech(rad.size(), sub.size());
            for (std::size_t r = 0; r < rad.size(); ++r)
                for (std::size_t c = 0; c < sub.size(); ++c) ech.at(r, c) = rad[r][c];
            std::size_t rk = rref_inplace(F, ech).size();
            ech.a.resize(rk * ech.cols);
            ech.rows = rk;
            const FpMat& cand = comp_rows.at(ij);
            for (std::size_t r = 0; r < cand.rows; ++r) {
                FpMat trial(ech.rows + 1, ech.cols);
                trial.a = ech.a;
                trial.a.insert(trial.a.end(), cand.a.begin() + r * cand.cols,
                               cand.a.begin() + (r + 1) * cand.cols);
                std::size_t nrk = rref_inplace(F, trial).size();
                if (nrk == ech.rows) continue;
                trial.a.resize(nrk * trial.cols);
                trial.rows = nrk;
                ech = std::move(trial);
                next_level.push_back({i, j});
                std::vector<std::uint32_t> full(coords.size(), 0);
                for (std::size_t c = 0; c < sub.size(); ++c) full[sub[c]] = cand.at(r, c);
                covers.push_back(std::move(full));
            }
        }

        // The new differential: the cover vector of each generator, read off
        // summand by summand as p (x) q terms.
        res.diff.emplace_back(next_level.size(),
                              std::vector<std::vector<PairTerm>>(res.levels.back().size()));
        for (std::size_t t = 0; t < next_level.size(); ++t)
            for (std::size_t ci = 0; ci < coords.size(); ++ci)
                if (covers[t][ci] != 0)
                    res.diff.back()[t][coords[ci].s].push_back(
                        {coords[ci].p, coords[ci].q, covers[t][ci]});

        std::vector<BimodCoord> ncoords = detail::bimod_coords(*A, next_level);
        auto idx = detail::bimod_index(coords);
        FpMat step(ncoords.size(), coords.size());
        for (std::size_t r = 0; r < ncoords.size(); ++r) {
            const BimodCoord& nc = ncoords[r];
            for (std::size_t ci = 0; ci < coords.size(); ++ci) {
                std::uint32_t x = covers[nc.s][ci];
                if (x == 0) continue;
                const BimodCoord& bc = coords[ci];
                int pp = A->compose(nc.p, bc.p);
                int qq = A->compose(bc.q, nc.q);
                if (pp == -1 || qq == -1) continue;
                int col = idx.at({bc.s, pp, qq});
                step.at(r, col) = F.add(step.at(r, col), x);
            }
        }
        res.levels.push_back(std::move(next_level));
        coords = std::move(ncoords);
        kernel = left_kernel(F, step);
    }
    return res;
}

inline const BimoduleResolution& cached_bimodule_resolution(const AlgebraPtr& A) {
    static std::map<std::weak_ptr<const Algebra>, std::shared_ptr<const BimoduleResolution>,
                    std::owner_less<std::weak_ptr<const Algebra>>>
        cache;
    for (auto it = cache.begin(); it != cache.end();)
        it = it->first.expired() ? cache.erase(it) : std::next(it);
    std::weak_ptr<const Algebra> key = A;
    auto it = cache.find(key);
    if (it == cache.end())
        it = cache.emplace(key, std::make_shared<BimoduleResolution>(bimodule_resolution(A))).first;
    return *it->second;
}

/// The derived Nakayama functor: tensor X with the two-sided resolution of
/// D(A), take the total complex and pass to the minimal model.  On the
/// homotopy category of bounded complexes of projectives this computes the
/// Serre functor.
inline ProjComplex nakayama(const ProjComplex& X) {
    const AlgebraPtr& A = X.A;
    const BimoduleResolution& R = cached_bimodule_resolution(A);
    const Fp& F = A->field;
    const int L = static_cast<int>(R.levels.size());

    ProjComplex out;
    out.A = A;
    if (X.empty()) return out;

    // Summands of the total complex in degree D: a resolution summand at
    // level k, a summand of X in degree D + k, and a connecting path rho
    // from the right side w_s of the former to the vertex of the latter.
    struct TotSummand {
        int k, s, c, rho;
    };
    out.dmin = X.dmin - (L - 1);
    std::vector<std::vector<TotSummand>> tot(X.dmax() - out.dmin + 1);
    std::vector<std::map<std::tuple<int, int, int>, int>> pos(tot.size());
    for (int D = out.dmin; D <= X.dmax(); ++D) {
        int slot = D - out.dmin;
        for (int k = 0; k < L; ++k) {
            int d = D + k;
            if (d < X.dmin || d > X.dmax()) continue;
            const std::vector<int>& cols = X.terms[d - X.dmin];
            for (int s = 0; s < static_cast<int>(R.levels[k].size()); ++s)
                for (int c = 0; c < static_cast<int>(cols.size()); ++c)
                    for (int rho : A->between[R.levels[k][s].w][cols[c]]) {
                        pos[slot][{k, s * A->dim() + rho, c}] =
                            static_cast<int>(tot[slot].size());
                        tot[slot].push_back({k, s, c, rho});
                    }
        }
    }

    for (const auto& level : tot) {
        out.terms.emplace_back();
        for (const TotSummand& t : level) out.terms.back().push_back(R.levels[t.k][t.s].u);
    }
    for (int slot = 0; slot + 1 < static_cast<int>(tot.size()); ++slot) {
        MatrixPV m = zero_matrix(out, slot);
        for (std::size_t r = 0; r < tot[slot].size(); ++r) {
            const TotSummand& t = tot[slot][r];
            int u = R.levels[t.k][t.s].u;
            int d = (out.dmin + slot) + t.k;
            if (t.k >= 1) {  // resolution direction, no sign
                const auto& row = R.diff[t.k - 1][t.s];
                for (int s2 = 0; s2 < static_cast<int>(row.size()); ++s2)
                    for (const PairTerm& pt : row[s2]) {
                        int rho2 = A->compose(pt.q, t.rho);
                        if (rho2 == -1) continue;
                        auto it = pos[slot + 1].find({t.k - 1, s2 * A->dim() + rho2, t.c});
                        if (it == pos[slot + 1].end()) continue;
                        PathVector add = pv_path(*A, pt.p, pt.coeff);
                        m[r][it->second] = pv_add(*A, m[r][it->second], add);
                    }
            }
            if (d < X.dmax()) {  // module direction, sign (-1)^k
                const MatrixPV& dx = X.diff[d - X.dmin];
                for (int c2 = 0; c2 < static_cast<int>(dx[t.c].size()); ++c2)
                    for (const auto& [mu, cmu] : dx[t.c][c2].terms) {
                        int rho2 = A->compose(t.rho, mu);
                        if (rho2 == -1) continue;
                        auto it = pos[slot + 1].find({t.k, t.s * A->dim() + rho2, c2});
                        if (it == pos[slot + 1].end()) continue;
                        std::uint32_t coeff = (t.k % 2 == 0) ? cmu : F.neg(cmu);
                        PathVector add = pv_path(*A, A->trivial_path(u), coeff);
                        m[r][it->second] = pv_add(*A, m[r][it->second], add);
                    }
            }
        }
        out.diff.push_back(std::move(m));
    }
    trim(out);
    validate_complex(out);
    return minimalize(out);
}

}  // namespace gentle
