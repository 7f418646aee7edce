#pragma once

#include <map>
#include <vector>

#include "gentle/complex.hpp"
#include "gentle/fp.hpp"

namespace gentle {

namespace detail {

/// Coordinate basis of the degree-k piece of the hom complex Hom(X, Z):
/// one coordinate per (degree d, X_d summand, Z_{d+k} summand, path).
struct HomCoord {
    int degree, row, col, path;
};

inline std::vector<HomCoord> hom_coords(const ProjComplex& X, const ProjComplex& Z, int k) {
    std::vector<HomCoord> out;
    for (int d = X.dmin; d <= X.dmax(); ++d) {
        const auto& xs = X.at(d);
        const auto& zs = Z.at(d + k);
        for (int r = 0; r < static_cast<int>(xs.size()); ++r)
            for (int c = 0; c < static_cast<int>(zs.size()); ++c)
                for (int p : X.A->between[xs[r]][zs[c]]) out.push_back({d, r, c, p});
    }
    return out;
}

inline int coord_index(const std::vector<HomCoord>& coords, int d, int r, int c, int p) {
    for (std::size_t i = 0; i < coords.size(); ++i)
        if (coords[i].degree == d && coords[i].row == r && coords[i].col == c &&
            coords[i].path == p)
            return static_cast<int>(i);
    return -1;
}

/// Matrix of the hom-complex differential delta^k with respect to the
/// coordinate bases; rows index Hom^k, columns Hom^{k+1}.
/// delta(f)_d = d_X f_{d+1} - (-1)^k f_d d_Z.
inline FpMat hom_delta(const ProjComplex& X, const ProjComplex& Z, int k,
                       const std::vector<HomCoord>& from, const std::vector<HomCoord>& to) {
    const Algebra& A = *X.A;
    const Fp& F = A.field;
    FpMat m(from.size(), to.size());
    std::uint32_t sign = F.reduce(k % 2 == 0 ? -1 : 1);  // -(-1)^k
    for (std::size_t i = 0; i < from.size(); ++i) {
        const HomCoord& f = from[i];
        int d = f.degree;
        if (d - 1 >= X.dmin && !X.at(d - 1).empty() && d - 1 + (k + 1) <= Z.dmax()) {
            const MatrixPV& dx = X.diff[d - 1 - X.dmin];
            for (int r = 0; r < static_cast<int>(X.at(d - 1).size()); ++r)
                for (const auto& [t, ct] : dx[r][f.row].terms) {
                    int comp = A.compose(t, f.path);
                    if (comp < 0) continue;
                    int j = coord_index(to, d - 1, r, f.col, comp);
                    if (j >= 0) m.at(i, j) = F.add(m.at(i, j), ct);
                }
        }
        int zd = d + k;
        if (zd >= Z.dmin && zd < Z.dmax()) {
            const MatrixPV& dz = Z.diff[zd - Z.dmin];
            for (int c = 0; c < static_cast<int>(Z.at(zd + 1).size()); ++c)
                for (const auto& [t, ct] : dz[f.col][c].terms) {
                    int comp = A.compose(f.path, t);
                    if (comp < 0) continue;
                    int j = coord_index(to, d, f.row, c, comp);
                    if (j >= 0) m.at(i, j) = F.add(m.at(i, j), F.mul(sign, ct));
                }
        }
    }
    return m;
}

}  // namespace detail

/// The maps X -> Y[l] in the homotopy category: a materialized shifted
/// target, the coordinate list, and homotopy-class representatives (rows
/// over the coordinates plus assembled chain maps).
struct HomSpace {
    ProjComplex Z;  // shift(Y, l)
    std::vector<detail::HomCoord> coords;
    std::vector<std::vector<std::uint32_t>> rows;
    std::vector<ChainMap> basis;

    int dim() const { return static_cast<int>(basis.size()); }
};

inline ChainMap assemble_map(const ProjComplex& X, const ProjComplex& Z,
                             const std::vector<detail::HomCoord>& coords,
                             const std::vector<std::uint32_t>& row) {
    ChainMap f;
    f.dmin = X.dmin;
    for (int d = X.dmin; d <= X.dmax(); ++d) {
        MatrixPV m(X.at(d).size());
        for (std::size_t r = 0; r < X.at(d).size(); ++r)
            for (std::size_t c = 0; c < Z.at(d).size(); ++c)
                m[r].push_back(pv_zero(X.at(d)[r], Z.at(d)[c]));
        f.blocks.push_back(std::move(m));
    }
    for (std::size_t i = 0; i < coords.size(); ++i)
        if (row[i] != 0) {
            const detail::HomCoord& c = coords[i];
            pv_accumulate(*X.A, f.blocks[c.degree - f.dmin][c.row][c.col], c.path, row[i]);
        }
    return f;
}

/// Basis of Hom_{K^b}(X, Y[l]): kernel of delta^0 modulo the image of
/// delta^{-1}, represented by kernel rows that extend an echelon basis of
/// the image.
inline HomSpace hom_basis(const ProjComplex& X, const ProjComplex& Y, int l) {
    const Fp& F = X.A->field;
    HomSpace H;
    H.Z = shift(Y, l);
    H.coords = detail::hom_coords(X, H.Z, 0);
    auto lower = detail::hom_coords(X, H.Z, -1);
    auto upper = detail::hom_coords(X, H.Z, 1);
    FpMat d0 = detail::hom_delta(X, H.Z, 0, H.coords, upper);
    FpMat dm1 = detail::hom_delta(X, H.Z, -1, lower, H.coords);

    FpMat cycles = left_kernel(F, d0);
    FpMat ech = dm1;
    std::size_t base_rank = rank(F, ech);
    for (std::size_t r = 0; r < cycles.rows; ++r) {
        std::vector<std::uint32_t> cyc(cycles.a.begin() + r * cycles.cols,
                                       cycles.a.begin() + (r + 1) * cycles.cols);
        FpMat trial = ech;
        trial.rows++;
        trial.a.insert(trial.a.end(), cyc.begin(), cyc.end());
        if (rank(F, trial) > base_rank) {
            ech = std::move(trial);
            base_rank++;
            H.rows.push_back(cyc);
            H.basis.push_back(assemble_map(X, H.Z, H.coords, cyc));
        }
    }
    return H;
}

inline int hom_dim(const ProjComplex& X, const ProjComplex& Y, int l) {
    const Fp& F = X.A->field;
    ProjComplex Z = shift(Y, l);
    auto mid = detail::hom_coords(X, Z, 0);
    auto lower = detail::hom_coords(X, Z, -1);
    auto upper = detail::hom_coords(X, Z, 1);
    FpMat d0 = detail::hom_delta(X, Z, 0, mid, upper);
    FpMat dm1 = detail::hom_delta(X, Z, -1, lower, mid);
    return static_cast<int>(mid.size()) - static_cast<int>(rank(F, d0)) -
           static_cast<int>(rank(F, dm1));
}

/// Shift window outside which Hom(X, Y[l]) vanishes for support reasons.
inline std::pair<int, int> hom_window(const ProjComplex& X, const ProjComplex& Y) {
    if (X.empty() || Y.empty()) return {0, -1};
    return {Y.dmin - X.dmax(), Y.dmax() - X.dmin};
}

/// All nonzero graded hom dimensions over the support window.
inline std::map<int, int> hom_all(const ProjComplex& X, const ProjComplex& Y) {
    std::map<int, int> out;
    auto [lo, hi] = hom_window(X, Y);
    for (int l = lo; l <= hi; ++l) {
        int d = hom_dim(X, Y, l);
        if (d != 0) out[l] = d;
    }
    return out;
}

/// Alternating sum of graded hom dimensions (Euler pairing).
inline long long euler_pairing(const ProjComplex& X, const ProjComplex& Y) {
    long long chi = 0;
    for (const auto& [l, d] : hom_all(X, Y)) chi += (l % 2 == 0 ? d : -d);
    return chi;
}

/// Linear combination of hom-space basis elements as a chain map.
inline ChainMap combine(const ProjComplex& X, const HomSpace& H,
                        const std::vector<std::uint32_t>& coeffs) {
    const Fp& F = X.A->field;
    std::vector<std::uint32_t> row(H.coords.size(), 0);
    for (std::size_t b = 0; b < H.rows.size(); ++b)
        for (std::size_t i = 0; i < row.size(); ++i)
            row[i] = F.add(row[i], F.mul(coeffs[b], H.rows[b][i]));
    return assemble_map(X, H.Z, H.coords, row);
}

}  // namespace gentle
