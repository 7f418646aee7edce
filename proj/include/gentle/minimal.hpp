#pragma once

#include <map>

#include "gentle/complex.hpp"
#include "gentle/hom.hpp"

namespace gentle {

namespace detail {

inline void erase_row(MatrixPV& m, std::size_t r) { m.erase(m.begin() + r); }

inline void erase_col(MatrixPV& m, std::size_t c) {
    for (auto& row : m) row.erase(row.begin() + c);
}

}  // namespace detail

/// Split off contractible two-term pieces until no differential entry has an
/// invertible component.  A unit entry P_v -> P_v is a scalar multiple of the
/// trivial path (endomorphism rings of indecomposable projectives are one
/// dimensional here), so the pivot update stays path-valued.  Pivots are
/// taken in (degree, row, column) order, making the result deterministic.
inline ProjComplex minimalize(ProjComplex X) {
    const Algebra& A = *X.A;
    const Fp& F = A.field;
    bool changed = true;
    while (changed) {
        changed = false;
        for (int i = 0; i + 1 < X.ndegrees() && !changed; ++i) {
            MatrixPV& m = X.diff[i];
            for (std::size_t r = 0; r < m.size() && !changed; ++r)
                for (std::size_t c = 0; c < m[r].size() && !changed; ++c) {
                    std::uint32_t u = pv_trivial_coeff(A, m[r][c]);
                    if (u == 0) continue;
                    std::uint32_t uinv = F.inv(u);
                    for (std::size_t r2 = 0; r2 < m.size(); ++r2) {
                        if (r2 == r) continue;
                        for (std::size_t c2 = 0; c2 < m[r2].size(); ++c2) {
                            if (c2 == c) continue;
                            PathVector corr = pv_scale(
                                A, uinv, pv_mul(A, m[r2][c], m[r][c2]));
                            m[r2][c2] = pv_add(A, m[r2][c2], pv_neg(A, corr));
                        }
                    }
                    detail::erase_row(m, r);
                    detail::erase_col(m, c);
                    if (i > 0) detail::erase_col(X.diff[i - 1], r);
                    if (i + 2 < X.ndegrees()) detail::erase_row(X.diff[i + 1], c);
                    X.terms[i].erase(X.terms[i].begin() + r);
                    X.terms[i + 1].erase(X.terms[i + 1].begin() + c);
                    changed = true;
                }
        }
    }
    X = trim(X);
    validate_complex(X);
    return X;
}

inline bool is_contractible(const ProjComplex& X) { return minimalize(X).empty(); }

enum class IsoVerdict { isomorphic, not_isomorphic, undetermined };

inline const char* to_string(IsoVerdict v) {
    switch (v) {
        case IsoVerdict::isomorphic: return "isomorphic";
        case IsoVerdict::not_isomorphic: return "not_isomorphic";
        default: return "undetermined";
    }
}

/// Degree -> multiset of summand vertices of the minimal model.
inline std::map<int, std::map<int, int>> summand_profile(const ProjComplex& X) {
    std::map<int, std::map<int, int>> out;
    for (int d = X.dmin; d <= X.dmax(); ++d)
        for (int v : X.at(d)) out[d][v]++;
    return out;
}

/// Three-valued isomorphism test.  "not_isomorphic" is certified by minimal
/// model summands or graded hom dimensions; "isomorphic" by an explicit map
/// with contractible cone, searched among random combinations of a basis of
/// Hom(X, Y); anything else is reported honestly as undetermined.
inline IsoVerdict iso_test(const ProjComplex& X, const ProjComplex& Y, int trials = 20,
                           std::uint64_t seed = 0) {
    ProjComplex mX = minimalize(X);
    ProjComplex mY = minimalize(Y);
    if (mX.empty() && mY.empty()) return IsoVerdict::isomorphic;
    if (summand_profile(mX) != summand_profile(mY)) return IsoVerdict::not_isomorphic;
    auto xx = hom_all(mX, mX);
    if (xx != hom_all(mY, mY) || xx != hom_all(mX, mY) || xx != hom_all(mY, mX))
        return IsoVerdict::not_isomorphic;
    HomSpace H = hom_basis(mX, mY, 0);
    if (H.dim() == 0) return IsoVerdict::not_isomorphic;
    SplitMix64 rng(seed ^ 0x1505c0de);
    const Fp& F = X.A->field;
    for (int t = 0; t < trials; ++t) {
        std::vector<std::uint32_t> coeffs(H.dim());
        for (auto& c : coeffs) c = t == 0 ? 1 : static_cast<std::uint32_t>(rng.below(F.p));
        ChainMap f = combine(mX, H, coeffs);
        if (is_contractible(cone(mX, mY, f))) return IsoVerdict::isomorphic;
    }
    return IsoVerdict::undetermined;
}

}  // namespace gentle
