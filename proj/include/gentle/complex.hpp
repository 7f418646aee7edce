#pragma once

#include <string>
#include <vector>

#include "gentle/algebra.hpp"

namespace gentle {

/// A bounded complex of indecomposable projectives P_v with path-valued
/// differentials.  terms[i] lists the summand vertices in degree dmin + i;
/// diff[i] is the matrix of the differential from degree dmin + i to
/// dmin + i + 1, with one row per source summand and one column per target
/// summand.  Entries are elements of Hom(P_v, P_w) = e_v A e_w, composed left
/// to right, so d followed by d is the ordinary matrix product.
struct ProjComplex {
    AlgebraPtr A;
    int dmin = 0;
    std::vector<std::vector<int>> terms;
    std::vector<std::vector<std::vector<PathVector>>> diff;

    int ndegrees() const { return static_cast<int>(terms.size()); }
    int dmax() const { return dmin + ndegrees() - 1; }
    bool empty() const {
        for (const auto& t : terms)
            if (!t.empty()) return false;
        return true;
    }
    int summands() const {
        int n = 0;
        for (const auto& t : terms) n += static_cast<int>(t.size());
        return n;
    }
    const std::vector<int>& at(int degree) const {
        static const std::vector<int> none;
        int i = degree - dmin;
        return (i < 0 || i >= ndegrees()) ? none : terms[i];
    }
};

using MatrixPV = std::vector<std::vector<PathVector>>;

inline MatrixPV zero_matrix(const ProjComplex& X, int i) {
    std::size_t rows = X.terms[i].size();
    std::size_t cols = i + 1 < static_cast<std::size_t>(X.ndegrees()) ? X.terms[i + 1].size() : 0;
    MatrixPV m(rows);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c)
            m[r].push_back(pv_zero(X.terms[i][r], X.terms[i + 1][c]));
    return m;
}

/// Endpoint bookkeeping and d after d = 0; throws std::logic_error since a
/// violation is always a construction bug, never bad user input.
inline void validate_complex(const ProjComplex& X) {
    if (!X.A) throw std::logic_error("complex without algebra");
    int n = X.ndegrees();
    if (static_cast<int>(X.diff.size()) != (n == 0 ? 0 : n - 1))
        throw std::logic_error("differential count mismatch");
    for (int i = 0; i < n; ++i)
        for (int v : X.terms[i])
            if (v < 0 || v >= X.A->nvertices()) throw std::logic_error("bad summand vertex");
    for (int i = 0; i + 1 < n; ++i) {
        const MatrixPV& m = X.diff[i];
        if (m.size() != X.terms[i].size()) throw std::logic_error("differential row count");
        for (std::size_t r = 0; r < m.size(); ++r) {
            if (m[r].size() != X.terms[i + 1].size())
                throw std::logic_error("differential column count");
            for (std::size_t c = 0; c < m[r].size(); ++c)
                if (m[r][c].src != X.terms[i][r] || m[r][c].tgt != X.terms[i + 1][c])
                    throw std::logic_error("differential entry endpoints");
        }
    }
    for (int i = 0; i + 2 < n; ++i)
        for (std::size_t r = 0; r < X.terms[i].size(); ++r)
            for (std::size_t c = 0; c < X.terms[i + 2].size(); ++c) {
                PathVector acc = pv_zero(X.terms[i][r], X.terms[i + 2][c]);
                for (std::size_t k = 0; k < X.terms[i + 1].size(); ++k)
                    acc = pv_add(*X.A, acc, pv_mul(*X.A, X.diff[i][r][k], X.diff[i + 1][k][c]));
                if (!acc.terms.empty()) throw std::logic_error("d after d is nonzero");
            }
}

/// Drop empty degrees at both ends; the zero complex normalizes to no terms.
inline ProjComplex trim(ProjComplex X) {
    int lo = 0, hi = X.ndegrees();
    while (lo < hi && X.terms[lo].empty()) ++lo;
    while (hi > lo && X.terms[hi - 1].empty()) --hi;
    ProjComplex out;
    out.A = X.A;
    out.dmin = X.dmin + lo;
    out.terms.assign(X.terms.begin() + lo, X.terms.begin() + hi);
    if (hi - lo > 1) out.diff.assign(X.diff.begin() + lo, X.diff.begin() + hi - 1);
    if (out.empty()) {
        out.dmin = 0;
        out.terms.clear();
        out.diff.clear();
    }
    return out;
}

inline ProjComplex proj_stalk(const AlgebraPtr& A, int vertex, int degree) {
    ProjComplex X;
    X.A = A;
    X.dmin = degree;
    X.terms = {{vertex}};
    validate_complex(X);
    return X;
}

/// X[n]: degree d of the shift is degree d + n of X; differentials pick up
/// the sign (-1)^n.
inline ProjComplex shift(ProjComplex X, int n) {
    X.dmin -= n;
    if (n % 2 != 0)
        for (auto& m : X.diff)
            for (auto& row : m)
                for (auto& e : row) e = pv_neg(*X.A, e);
    return X;
}

inline ProjComplex direct_sum(const ProjComplex& X, const ProjComplex& Y) {
    if (X.empty()) return Y;
    if (Y.empty()) return X;
    ProjComplex S;
    S.A = X.A;
    S.dmin = std::min(X.dmin, Y.dmin);
    int top = std::max(X.dmax(), Y.dmax());
    S.terms.resize(top - S.dmin + 1);
    for (int d = S.dmin; d <= top; ++d) {
        auto& t = S.terms[d - S.dmin];
        for (int v : X.at(d)) t.push_back(v);
        for (int v : Y.at(d)) t.push_back(v);
    }
    for (int i = 0; i + 1 < S.ndegrees(); ++i) S.diff.push_back(zero_matrix(S, i));
    auto paste = [&](const ProjComplex& Z, bool second) {
        for (int i = 0; i + 1 < Z.ndegrees(); ++i) {
            int d = Z.dmin + i;
            std::size_t r0 = second ? X.at(d).size() : 0;
            std::size_t c0 = second ? X.at(d + 1).size() : 0;
            for (std::size_t r = 0; r < Z.terms[i].size(); ++r)
                for (std::size_t c = 0; c < Z.terms[i + 1].size(); ++c)
                    S.diff[d - S.dmin][r0 + r][c0 + c] = Z.diff[i][r][c];
        }
    };
    paste(X, false);
    paste(Y, true);
    validate_complex(S);
    return S;
}

/// A chain map X -> Y in degree 0, stored as one matrix per degree (rows =
/// X-summands, columns = Y-summands); absent degrees are zero.
struct ChainMap {
    int dmin = 0;                  // degree of blocks[0]
    std::vector<MatrixPV> blocks;  // blocks[i]: map in degree dmin + i

    const MatrixPV* at(int degree) const {
        int i = degree - dmin;
        if (i < 0 || i >= static_cast<int>(blocks.size())) return nullptr;
        return &blocks[i];
    }
};

inline PathVector map_entry(const ChainMap& f, const ProjComplex& X, const ProjComplex& Y,
                            int degree, std::size_t r, std::size_t c) {
    const MatrixPV* m = f.at(degree);
    if (m && r < m->size() && c < (*m)[r].size()) return (*m)[r][c];
    return pv_zero(X.at(degree)[r], Y.at(degree)[c]);
}

/// Checks f d_Y = d_X f degreewise.
inline void validate_chain_map(const ProjComplex& X, const ProjComplex& Y, const ChainMap& f) {
    const Algebra& A = *X.A;
    for (int d = std::min(X.dmin, Y.dmin); d <= std::max(X.dmax(), Y.dmax()); ++d) {
        const auto& xs = X.at(d);
        const auto& yt = Y.at(d + 1);
        for (std::size_t r = 0; r < xs.size(); ++r)
            for (std::size_t c = 0; c < yt.size(); ++c) {
                PathVector lhs = pv_zero(xs[r], yt[c]);
                for (std::size_t k = 0; k < Y.at(d).size(); ++k)
                    lhs = pv_add(A, lhs,
                                 pv_mul(A, map_entry(f, X, Y, d, r, k),
                                        Y.diff[d - Y.dmin][k][c]));
                PathVector rhs = pv_zero(xs[r], yt[c]);
                for (std::size_t k = 0; k < X.at(d + 1).size(); ++k)
                    rhs = pv_add(A, rhs,
                                 pv_mul(A, X.diff[d - X.dmin][r][k],
                                        map_entry(f, X, Y, d + 1, k, c)));
                if (!pv_equal(lhs, rhs)) throw std::logic_error("not a chain map");
            }
    }
}

/// cone(f: X -> Y): degree d is Y_d (+) X_{d+1} with differential
/// rows (Y_d | X_{d+1}) -> (Y_{d+1} | X_{d+2}) given by [[d_Y, 0], [f, -d_X]].
inline ProjComplex cone(const ProjComplex& X, const ProjComplex& Y, const ChainMap& f) {
    validate_chain_map(X, Y, f);
    const Algebra& A = *X.A;
    ProjComplex C;
    C.A = X.A;
    if (X.empty() && Y.empty()) return C;
    C.dmin = std::min(Y.empty() ? X.dmin - 1 : Y.dmin, X.dmin - 1);
    int top = std::max(Y.empty() ? X.dmax() - 1 : Y.dmax(), X.dmax() - 1);
    C.terms.resize(top - C.dmin + 1);
    for (int d = C.dmin; d <= top; ++d) {
        auto& t = C.terms[d - C.dmin];
        for (int v : Y.at(d)) t.push_back(v);
        for (int v : X.at(d + 1)) t.push_back(v);
    }
    for (int i = 0; i + 1 < C.ndegrees(); ++i) {
        C.diff.push_back(zero_matrix(C, i));
        int d = C.dmin + i;
        MatrixPV& m = C.diff[i];
        std::size_t ny = Y.at(d).size(), nyn = Y.at(d + 1).size();
        for (std::size_t r = 0; r < ny; ++r)
            for (std::size_t c = 0; c < nyn; ++c) m[r][c] = Y.diff[d - Y.dmin][r][c];
        for (std::size_t r = 0; r < X.at(d + 1).size(); ++r) {
            for (std::size_t c = 0; c < nyn; ++c)
                m[ny + r][c] = map_entry(f, X, Y, d + 1, r, c);
            for (std::size_t c = 0; c < X.at(d + 2).size(); ++c)
                m[ny + r][nyn + c] = pv_neg(A, X.diff[d + 1 - X.dmin][r][c]);
        }
    }
    C = trim(C);
    validate_complex(C);
    return C;
}

inline ChainMap identity_map(const ProjComplex& X) {
    ChainMap f;
    f.dmin = X.dmin;
    for (int i = 0; i < X.ndegrees(); ++i) {
        MatrixPV m(X.terms[i].size());
        for (std::size_t r = 0; r < X.terms[i].size(); ++r)
            for (std::size_t c = 0; c < X.terms[i].size(); ++c)
                m[r].push_back(r == c ? pv_path(*X.A, X.A->trivial_path(X.terms[i][r]))
                                      : pv_zero(X.terms[i][r], X.terms[i][c]));
        f.blocks.push_back(std::move(m));
    }
    return f;
}

}  // namespace gentle
