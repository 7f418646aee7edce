#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace gentle {

/// Arithmetic in the prime field F_p.  The modulus is a runtime value so the
/// same binary can work over different primes; elements are stored as
/// canonical representatives in [0, p).
struct Fp {
    std::uint32_t p;

    explicit Fp(std::uint32_t prime) : p(prime) {
        if (prime < 2) throw std::invalid_argument("field modulus must be a prime >= 2");
    }

    std::uint32_t reduce(std::int64_t x) const {
        std::int64_t r = x % static_cast<std::int64_t>(p);
        if (r < 0) r += p;
        return static_cast<std::uint32_t>(r);
    }
    std::uint32_t add(std::uint32_t a, std::uint32_t b) const {
        std::uint64_t s = static_cast<std::uint64_t>(a) + b;
        return static_cast<std::uint32_t>(s >= p ? s - p : s);
    }
    std::uint32_t sub(std::uint32_t a, std::uint32_t b) const {
        return a >= b ? a - b : a + p - b;
    }
    std::uint32_t neg(std::uint32_t a) const { return a == 0 ? 0 : p - a; }
    std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
        return static_cast<std::uint32_t>(static_cast<std::uint64_t>(a) * b % p);
    }
    std::uint32_t pow(std::uint32_t a, std::uint64_t e) const {
        std::uint32_t r = 1 % p;
        while (e) {
            if (e & 1) r = mul(r, a);
            a = mul(a, a);
            e >>= 1;
        }
        return r;
    }
    std::uint32_t inv(std::uint32_t a) const {
        if (a == 0) throw std::domain_error("inverse of zero in F_p");
        return pow(a, p - 2);
    }
};

/// Dense matrix over F_p, row-major.  Rows index the source basis and columns
/// the target basis; vectors are rows and maps act by right multiplication.
struct FpMat {
    std::size_t rows = 0, cols = 0;
    std::vector<std::uint32_t> a;

    FpMat() = default;
    FpMat(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c, 0) {}

    std::uint32_t& at(std::size_t i, std::size_t j) { return a[i * cols + j]; }
    std::uint32_t at(std::size_t i, std::size_t j) const { return a[i * cols + j]; }
};

inline FpMat transpose(const FpMat& m) {
    FpMat t(m.cols, m.rows);
    for (std::size_t i = 0; i < m.rows; ++i)
        for (std::size_t j = 0; j < m.cols; ++j) t.at(j, i) = m.at(i, j);
    return t;
}

inline FpMat mat_mul(const Fp& F, const FpMat& x, const FpMat& y) {
    if (x.cols != y.rows) throw std::logic_error("matrix shape mismatch");
    FpMat z(x.rows, y.cols);
    for (std::size_t i = 0; i < x.rows; ++i)
        for (std::size_t k = 0; k < x.cols; ++k) {
            std::uint32_t c = x.at(i, k);
            if (!c) continue;
            for (std::size_t j = 0; j < y.cols; ++j)
                z.at(i, j) = F.add(z.at(i, j), F.mul(c, y.at(k, j)));
        }
    return z;
}

/// Reduce to row echelon form in place; returns the pivot column of each
/// nonzero row.  Deterministic: pivots are chosen top-down, left-to-right.
inline std::vector<std::size_t> rref_inplace(const Fp& F, FpMat& m) {
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < m.cols && row < m.rows; ++col) {
        std::size_t sel = row;
        while (sel < m.rows && m.at(sel, col) == 0) ++sel;
        if (sel == m.rows) continue;
        if (sel != row)
            for (std::size_t j = 0; j < m.cols; ++j) std::swap(m.at(sel, j), m.at(row, j));
        std::uint32_t iv = F.inv(m.at(row, col));
        for (std::size_t j = col; j < m.cols; ++j) m.at(row, j) = F.mul(m.at(row, j), iv);
        for (std::size_t i = 0; i < m.rows; ++i) {
            if (i == row) continue;
            std::uint32_t c = m.at(i, col);
            if (!c) continue;
            for (std::size_t j = col; j < m.cols; ++j)
                m.at(i, j) = F.sub(m.at(i, j), F.mul(c, m.at(row, j)));
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

inline std::size_t rank(const Fp& F, FpMat m) { return rref_inplace(F, m).size(); }

/// Basis of { x : x * m = 0 } as rows of the returned matrix.
inline FpMat left_kernel(const Fp& F, const FpMat& m) {
    // Solve m^T y = 0 by echelonizing m^T; free columns give kernel vectors.
    FpMat t = transpose(m);
    std::vector<std::size_t> piv = rref_inplace(F, t);
    std::vector<bool> is_pivot(t.cols, false);
    for (std::size_t c : piv) is_pivot[c] = true;
    FpMat ker(t.cols - piv.size(), t.cols);
    std::size_t r = 0;
    for (std::size_t free = 0; free < t.cols; ++free) {
        if (is_pivot[free]) continue;
        ker.at(r, free) = 1;
        for (std::size_t i = 0; i < piv.size(); ++i)
            ker.at(r, piv[i]) = F.neg(t.at(i, free));
        ++r;
    }
    return ker;
}

/// Solve x * m = b for a row vector x; returns false when inconsistent.
inline bool solve_left(const Fp& F, const FpMat& m, const std::vector<std::uint32_t>& b,
                       std::vector<std::uint32_t>& x) {
    if (b.size() != m.cols) throw std::logic_error("rhs length mismatch");
    FpMat aug = transpose(m);            // (cols x rows), augmented with b as extra column
    FpMat sys(aug.rows, aug.cols + 1);
    for (std::size_t i = 0; i < aug.rows; ++i) {
        for (std::size_t j = 0; j < aug.cols; ++j) sys.at(i, j) = aug.at(i, j);
        sys.at(i, aug.cols) = b[i];
    }
    std::vector<std::size_t> piv = rref_inplace(F, sys);
    x.assign(m.rows, 0);
    for (std::size_t i = 0; i < piv.size(); ++i) {
        if (piv[i] == aug.cols) return false;   // pivot in the augmented column
        x[piv[i]] = sys.at(i, aug.cols);
    }
    return true;
}

/// Deterministic 64-bit generator (splitmix64); used wherever seeded sampling
/// is needed so results are reproducible across platforms.
struct SplitMix64 {
    std::uint64_t state;
    explicit SplitMix64(std::uint64_t seed) : state(seed) {}
    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    std::uint64_t below(std::uint64_t n) { return n ? next() % n : 0; }
};

}  // namespace gentle
