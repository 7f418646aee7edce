#pragma once

#include <algorithm>
#include <queue>
#include <sstream>
#include <string>
#include <vector>

#include "gentle/dissection.hpp"
#include "gentle/hom.hpp"
#include "gentle/nakayama.hpp"

namespace gentle {

/// Thrown when a verified theorem fails to hold on concrete data — this
/// always indicates a bug (or an undetermined randomized verdict), never bad
/// user input.
struct PropertyViolation : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline bool is_exceptional_object(const ProjComplex& X) {
    if (X.empty()) throw PreconditionError("the zero complex is not exceptional");
    for (const auto& [l, d] : hom_all(X, X)) {
        if (l == 0 && d != 1) return false;
        if (l != 0 && d != 0) return false;
    }
    return hom_dim(X, X, 0) == 1;
}

/// Every entry exceptional and every backward Hom space zero in all shifts.
inline bool is_exceptional_sequence(const std::vector<ProjComplex>& xs) {
    for (const ProjComplex& x : xs)
        if (x.empty()) return false;
    for (const ProjComplex& x : xs)
        if (!is_exceptional_object(x)) return false;
    for (std::size_t i = 0; i < xs.size(); ++i)
        for (std::size_t j = i + 1; j < xs.size(); ++j)
            if (!hom_all(xs[j], xs[i]).empty()) return false;
    return true;
}

/// No positive-shift morphisms between any ordered pair (including self).
inline bool is_presilting(const std::vector<ProjComplex>& xs) {
    for (const ProjComplex& x : xs)
        for (const ProjComplex& y : xs)
            for (const auto& [l, d] : hom_all(x, y))
                if (l > 0 && d != 0) return false;
    return true;
}

struct ExceptionalSequence {
    AlgebraPtr A;
    std::vector<ProjComplex> members;
    bool validated = false;

    int size() const { return static_cast<int>(members.size()); }
    bool full() const { return size() == A->nvertices(); }
};

inline void revalidate(ExceptionalSequence& seq, const char* when) {
    if (!is_exceptional_sequence(seq.members))
        throw PropertyViolation(std::string("sequence lost exceptionality ") + when);
    seq.validated = true;
}

/// Degree-0 projective stalks in the order of a linear extension.
inline ExceptionalSequence seed_sequence(const AlgebraPtr& A, const std::vector<int>& extension) {
    const GentleQuiver& q = A->q;
    if (!is_acyclic(q))
        throw PreconditionError("the quiver has an oriented cycle: no canonical seed exists");
    int n = A->nvertices();
    if (static_cast<int>(extension.size()) != n)
        throw PreconditionError("the vertex order must list every vertex exactly once");
    std::vector<int> pos(n, -1);
    for (int i = 0; i < n; ++i) {
        int v = extension[i];
        if (v < 0 || v >= n || pos[v] != -1)
            throw PreconditionError("the vertex order must list every vertex exactly once");
        pos[v] = i;
    }
    for (const Arrow& a : q.arrows)
        if (pos[q.vertex_index(a.src)] >= pos[q.vertex_index(a.tgt)])
            throw PreconditionError("the vertex order is not a linear extension");
    ExceptionalSequence seq;
    seq.A = A;
    for (int v : extension) seq.members.push_back(proj_stalk(A, v, 0));
    revalidate(seq, "in the seed");
    return seq;
}

namespace detail {

// Reindex f: X -> Y[l] as a chain map X[-l] -> Y (the blocks are unchanged).
inline ChainMap unshift_target(const ChainMap& f, int l) {
    ChainMap g = f;
    g.dmin += l;
    return g;
}

// The universal map X -> (+)_{l,b} Y[l], one summand per basis element of
// each Hom(X, Y[l]).  Requires at least one nonzero Hom space.
inline std::pair<ProjComplex, ChainMap> coevaluation(const ProjComplex& X, const ProjComplex& Y) {
    std::vector<ProjComplex> pieces;
    std::vector<ChainMap> maps;
    for (const auto& [l, d] : hom_all(X, Y)) {
        (void)d;
        HomSpace H = hom_basis(X, Y, l);
        for (const ChainMap& f : H.basis) {
            pieces.push_back(H.Z);
            maps.push_back(f);
        }
    }
    ProjComplex T = pieces[0];
    for (std::size_t k = 1; k < pieces.size(); ++k) T = direct_sum(T, pieces[k]);
    ChainMap u;
    u.dmin = X.dmin;
    for (int d = X.dmin; d <= X.dmax(); ++d) {
        std::size_t rows = X.at(d).size(), cols = T.at(d).size();
        MatrixPV m(rows, std::vector<PathVector>(cols));
        for (std::size_t r = 0; r < rows; ++r)
            for (std::size_t c = 0; c < cols; ++c)
                m[r][c] = pv_zero(X.at(d)[r], T.at(d)[c]);
        std::size_t off = 0;
        for (std::size_t k = 0; k < pieces.size(); ++k) {
            std::size_t w = pieces[k].at(d).size();
            for (std::size_t r = 0; r < rows; ++r)
                for (std::size_t c = 0; c < w; ++c)
                    m[r][off + c] = map_entry(maps[k], X, pieces[k], d, r, c);
            off += w;
        }
        u.blocks.push_back(std::move(m));
    }
    return {std::move(T), std::move(u)};
}

// The universal map (+)_{l,b} X[-l] -> Y assembled from the same bases.
inline std::pair<ProjComplex, ChainMap> evaluation(const ProjComplex& X, const ProjComplex& Y) {
    std::vector<ProjComplex> pieces;
    std::vector<ChainMap> maps;
    for (const auto& [l, d] : hom_all(X, Y)) {
        (void)d;
        HomSpace H = hom_basis(X, Y, l);
        for (const ChainMap& f : H.basis) {
            pieces.push_back(shift(X, -l));
            maps.push_back(unshift_target(f, l));
        }
    }
    ProjComplex S = pieces[0];
    for (std::size_t k = 1; k < pieces.size(); ++k) S = direct_sum(S, pieces[k]);
    ChainMap ev;
    ev.dmin = S.dmin;
    for (int d = S.dmin; d <= S.dmax(); ++d) {
        std::size_t rows = S.at(d).size(), cols = Y.at(d).size();
        MatrixPV m(rows, std::vector<PathVector>(cols));
        for (std::size_t r = 0; r < rows; ++r)
            for (std::size_t c = 0; c < cols; ++c)
                m[r][c] = pv_zero(S.at(d)[r], Y.at(d)[c]);
        std::size_t off = 0;
        for (std::size_t k = 0; k < pieces.size(); ++k) {
            std::size_t h = pieces[k].at(d).size();
            for (std::size_t r = 0; r < h; ++r)
                for (std::size_t c = 0; c < cols; ++c)
                    m[off + r][c] = map_entry(maps[k], pieces[k], Y, d, r, c);
            off += h;
        }
        ev.blocks.push_back(std::move(m));
    }
    return {std::move(S), std::move(ev)};
}

inline void require_exceptional_pair(const ProjComplex& X, const ProjComplex& Y) {
    if (!is_exceptional_sequence({X, Y}))
        throw PreconditionError("mutation requires an exceptional pair");
}

}  // namespace detail

/// R_Y X: the co-twist of X through Y, via the exchange triangle
/// X -> (+) Y[l] -> R_Y X [1].  When there are no morphisms, X itself.
inline ProjComplex right_mutation(const ProjComplex& X, const ProjComplex& Y) {
    detail::require_exceptional_pair(X, Y);
    if (hom_all(X, Y).empty()) return X;
    auto [T, u] = detail::coevaluation(X, Y);
    return minimalize(shift(cone(X, T, u), -1));
}

/// L_X Y: the twist of Y through X, via (+) X[-l] -> Y -> L_X Y.
inline ProjComplex left_mutation(const ProjComplex& X, const ProjComplex& Y) {
    detail::require_exceptional_pair(X, Y);
    if (hom_all(X, Y).empty()) return Y;
    auto [S, ev] = detail::evaluation(X, Y);
    return minimalize(cone(S, Y, ev));
}

using BraidWord = std::vector<int>;  // signed 1-based generator indices

inline BraidWord parse_braid_word(const std::string& text) {
    BraidWord w;
    std::istringstream in(text);
    std::string tok;
    while (in >> tok) {
        std::size_t used = 0;
        int v = 0;
        try {
            v = std::stoi(tok, &used);
        } catch (const std::exception&) {
            throw PreconditionError("braid word tokens must be signed integers");
        }
        if (used != tok.size() || v == 0)
            throw PreconditionError("braid word tokens must be nonzero signed integers");
        w.push_back(v);
    }
    return w;
}

/// One generator: +i swaps (X_i, X_{i+1}) to (X_{i+1}, R X_i), -i to (L X_{i+1}, X_i).
inline ExceptionalSequence apply_generator(const ExceptionalSequence& seq, int letter) {
    int i = letter > 0 ? letter : -letter;
    if (i < 1 || i >= seq.size())
        throw PreconditionError("braid generator index out of range");
    ExceptionalSequence out = seq;
    if (letter > 0) {
        out.members[i - 1] = seq.members[i];
        out.members[i] = right_mutation(seq.members[i - 1], seq.members[i]);
    } else {
        out.members[i - 1] = left_mutation(seq.members[i - 1], seq.members[i]);
        out.members[i] = seq.members[i - 1];
    }
    revalidate(out, "after a generator");
    return out;
}

inline ExceptionalSequence apply_word(const ExceptionalSequence& seq, const BraidWord& w) {
    ExceptionalSequence cur = seq;
    for (int letter : w) cur = apply_generator(cur, letter);
    return cur;
}

/// The half-twist word s_1 (s_2 s_1) ... (s_{n-1} ... s_1).
inline BraidWord half_twist_word(int n, bool inverse) {
    BraidWord w;
    for (int k = 1; k < n; ++k)
        for (int i = k; i >= 1; --i) w.push_back(i);
    if (inverse) {
        std::reverse(w.begin(), w.end());
        for (int& x : w) x = -x;
    }
    return w;
}

inline IsoVerdict combine_verdicts(IsoVerdict a, IsoVerdict b) {
    if (a == IsoVerdict::not_isomorphic || b == IsoVerdict::not_isomorphic)
        return IsoVerdict::not_isomorphic;
    if (a == IsoVerdict::undetermined || b == IsoVerdict::undetermined)
        return IsoVerdict::undetermined;
    return IsoVerdict::isomorphic;
}

inline IsoVerdict sequences_isomorphic(const ExceptionalSequence& a, const ExceptionalSequence& b,
                                       int trials = 20, std::uint64_t seed = 0) {
    if (a.size() != b.size()) return IsoVerdict::not_isomorphic;
    IsoVerdict v = IsoVerdict::isomorphic;
    for (int i = 0; i < a.size(); ++i)
        v = combine_verdicts(v, iso_test(a.members[i], b.members[i], trials, seed + i));
    return v;
}

/// Right dual (X_n, R X_{n-1}, ..., R^{n-1} X_1): computed by the half-twist
/// word and cross-checked against the iterated-mutation formula.
inline ExceptionalSequence right_dual(const ExceptionalSequence& seq, int trials = 20,
                                      std::uint64_t seed = 0) {
    if (!seq.full()) throw PreconditionError("duals are defined for full sequences");
    int n = seq.size();
    ExceptionalSequence by_word = apply_word(seq, half_twist_word(n, false));
    ExceptionalSequence by_formula;
    by_formula.A = seq.A;
    for (int r = 0; r < n; ++r) {
        ProjComplex obj = seq.members[n - 1 - r];
        for (int t = n - r; t < n; ++t) obj = right_mutation(obj, seq.members[t]);
        by_formula.members.push_back(std::move(obj));
    }
    revalidate(by_formula, "in the dual formula");
    if (sequences_isomorphic(by_word, by_formula, trials, seed) != IsoVerdict::isomorphic)
        throw PropertyViolation("the two right-dual computations disagree");
    return by_word;
}

/// Left dual (L^{n-1} X_n, ..., L X_2, X_1): inverse half-twist word,
/// cross-checked the same way.
inline ExceptionalSequence left_dual(const ExceptionalSequence& seq, int trials = 20,
                                     std::uint64_t seed = 0) {
    if (!seq.full()) throw PreconditionError("duals are defined for full sequences");
    int n = seq.size();
    ExceptionalSequence by_word = apply_word(seq, half_twist_word(n, true));
    ExceptionalSequence by_formula;
    by_formula.A = seq.A;
    for (int r = 0; r < n; ++r) {
        int m = n - 1 - r;
        ProjComplex obj = seq.members[m];
        for (int t = m - 1; t >= 0; --t) obj = left_mutation(seq.members[t], obj);
        by_formula.members.push_back(std::move(obj));
    }
    revalidate(by_formula, "in the dual formula");
    if (sequences_isomorphic(by_word, by_formula, trials, seed) != IsoVerdict::isomorphic)
        throw PropertyViolation("the two left-dual computations disagree");
    return by_word;
}

struct SerreReport {
    std::vector<IsoVerdict> components;
    IsoVerdict last_component_shortcut = IsoVerdict::undetermined;
    bool all_isomorphic() const {
        for (IsoVerdict v : components)
            if (v != IsoVerdict::isomorphic) return false;
        return last_component_shortcut == IsoVerdict::isomorphic;
    }
    bool any_undetermined() const {
        for (IsoVerdict v : components)
            if (v == IsoVerdict::undetermined) return true;
        return last_component_shortcut == IsoVerdict::undetermined;
    }
};

/// Verify that the Serre functor equals the double left dual, component by
/// component at shift zero, plus the last-component shortcut L^{n-1}X_n.
inline SerreReport serre_check(const ExceptionalSequence& seq, int trials = 20,
                               std::uint64_t seed = 0) {
    if (!seq.full()) throw PreconditionError("the Serre check needs a full sequence");
    ExceptionalSequence L1 = left_dual(seq, trials, seed);
    ExceptionalSequence L2 = left_dual(L1, trials, seed);
    SerreReport rep;
    for (int i = 0; i < seq.size(); ++i)
        rep.components.push_back(
            iso_test(nakayama(seq.members[i]), L2.members[i], trials, seed + 100 + i));
    rep.last_component_shortcut = iso_test(nakayama(seq.members[seq.size() - 1]), L1.members[0],
                                           trials, seed + 99);
    return rep;
}

/// Shifts l_i = (i-1)*a making (+) X_i[l_i] presilting, where a bounds the
/// positive shifts carrying forward morphisms.
inline std::vector<int> presilting_shift(const ExceptionalSequence& seq, int trials = 20) {
    (void)trials;
    if (!is_exceptional_sequence(seq.members))
        throw PreconditionError("presilting shifts require an exceptional sequence");
    int a = 0;
    for (int i = 0; i < seq.size(); ++i)
        for (int j = 0; j < seq.size(); ++j)
            for (const auto& [l, d] : hom_all(seq.members[i], seq.members[j]))
                if (l > 0 && d > 0 && l > a) a = l;
    std::vector<int> shifts;
    std::vector<ProjComplex> shifted;
    for (int i = 0; i < seq.size(); ++i) {
        shifts.push_back(i * a);
        shifted.push_back(shift(seq.members[i], i * a));
    }
    if (!is_presilting(shifted))
        throw PropertyViolation("the computed shifts failed the presilting verification");
    return shifts;
}

/// Translate so the minimal model starts in degree 0 (quotient of the
/// per-component shift action).
inline ProjComplex normalize_shift(const ProjComplex& X) {
    ProjComplex m = minimalize(X);
    if (m.empty()) throw PreconditionError("the zero complex has no shift normalization");
    return shift(m, m.dmin);
}

inline ExceptionalSequence normalize_sequence(const ExceptionalSequence& seq) {
    ExceptionalSequence out;
    out.A = seq.A;
    for (const ProjComplex& x : seq.members) out.members.push_back(normalize_shift(x));
    out.validated = seq.validated;
    return out;
}

/// Shift-invariant fingerprint: per-component summand multisets of the
/// normalized minimal models plus the full pairwise Hom-dimension table.
inline std::string canonical_key(const ExceptionalSequence& seq) {
    std::ostringstream out;
    std::vector<ProjComplex> nm;
    for (const ProjComplex& x : seq.members) nm.push_back(normalize_shift(x));
    for (const ProjComplex& x : nm) {
        out << "[";
        for (const auto& [d, counts] : summand_profile(x)) {
            out << d << ":";
            for (const auto& [v, c] : counts) out << v << "^" << c << ",";
            out << ";";
        }
        out << "]";
    }
    out << "|";
    for (std::size_t i = 0; i < nm.size(); ++i)
        for (std::size_t j = 0; j < nm.size(); ++j) {
            out << "(" << i << "," << j << "){";
            for (const auto& [l, d] : hom_all(nm[i], nm[j])) out << l << ":" << d << ",";
            out << "}";
        }
    return out.str();
}

/// The class of X in the split Grothendieck lattice of projectives.
inline std::vector<long long> k0_class(const ProjComplex& X) {
    std::vector<long long> cls(X.A->nvertices(), 0);
    for (int d = X.dmin; d <= X.dmax(); ++d)
        for (int v : X.at(d)) cls[v] += (d % 2 == 0) ? 1 : -1;
    return cls;
}

struct BraidCheckReport {
    int checks = 0;
    int failures = 0;
    int undetermined = 0;
    std::vector<std::string> failed_labels;
    bool ok() const { return failures == 0 && undetermined == 0; }
};

namespace detail {

inline void record_check(BraidCheckReport& rep, const std::string& label, IsoVerdict v) {
    ++rep.checks;
    if (v == IsoVerdict::not_isomorphic) {
        ++rep.failures;
        rep.failed_labels.push_back(label);
    } else if (v == IsoVerdict::undetermined) {
        ++rep.undetermined;
        rep.failed_labels.push_back(label + " (undetermined)");
    }
}

}  // namespace detail

/// Exercise the group relations on a concrete sequence: inverses, the braid
/// relation, distant commutation, and seeded random words undone by their
/// inverses.  Every comparison is componentwise up to isomorphism.
inline BraidCheckReport verify_braid_relations(const ExceptionalSequence& seq, int random_words,
                                               std::uint64_t seed, int trials = 20) {
    BraidCheckReport rep;
    int n = seq.size();
    auto compare = [&](const std::string& label, const BraidWord& w1, const BraidWord& w2) {
        ExceptionalSequence a = apply_word(seq, w1);
        ExceptionalSequence b = apply_word(seq, w2);
        detail::record_check(rep, label, sequences_isomorphic(a, b, trials, seed));
    };
    for (int i = 1; i < n; ++i) {
        compare("s" + std::to_string(i) + " s" + std::to_string(i) + "^-1", {i, -i}, {});
        compare("s" + std::to_string(i) + "^-1 s" + std::to_string(i), {-i, i}, {});
    }
    for (int i = 1; i + 1 < n; ++i)
        compare("braid at " + std::to_string(i), {i, i + 1, i}, {i + 1, i, i + 1});
    for (int i = 1; i < n; ++i)
        for (int j = i + 2; j < n; ++j)
            compare("commute " + std::to_string(i) + "," + std::to_string(j), {i, j}, {j, i});
    SplitMix64 rng{seed ^ 0xb5297a4d3f84d5a9ULL};
    for (int t = 0; t < random_words; ++t) {
        BraidWord w;
        for (int k = 0; k < 4 && n >= 2; ++k) {
            int i = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(n - 1)));
            w.push_back(rng.below(2) ? i : -i);
        }
        BraidWord undo(w.rbegin(), w.rend());
        for (int& x : undo) x = -x;
        BraidWord round = w;
        round.insert(round.end(), undo.begin(), undo.end());
        compare("random word " + std::to_string(t), round, {});
    }
    return rep;
}

struct OrbitReport {
    bool closed = false;
    int size = 0;
    int quarantined = 0;
    std::vector<std::string> keys;
};

/// Breadth-first closure of the generator action on shift-normalized
/// sequences.  Stops as soon as more than max_nodes distinct sequences are
/// seen (reported as an open orbit).
inline OrbitReport orbit_explore(const ExceptionalSequence& seed_seq, int max_nodes,
                                 std::uint64_t rng_seed, int trials = 20) {
    if (!seed_seq.full()) throw PreconditionError("orbit exploration needs a full sequence");
    OrbitReport rep;
    std::map<std::string, std::vector<int>> by_key;  // key -> node ids
    std::vector<ExceptionalSequence> nodes;
    std::queue<int> frontier;
    std::uint64_t iso_seed = rng_seed;

    auto visit = [&](const ExceptionalSequence& raw) -> bool {  // true if orbit still closed
        ExceptionalSequence norm = normalize_sequence(raw);
        std::string key = canonical_key(norm);
        for (int id : by_key[key]) {
            IsoVerdict v = sequences_isomorphic(nodes[id], norm, trials, ++iso_seed);
            if (v == IsoVerdict::isomorphic) return true;
            if (v == IsoVerdict::undetermined) {
                ++rep.quarantined;
                return true;
            }
        }
        int id = static_cast<int>(nodes.size());
        nodes.push_back(norm);
        by_key[key].push_back(id);
        rep.keys.push_back(key);
        frontier.push(id);
        return static_cast<int>(nodes.size()) <= max_nodes;
    };

    bool open = !visit(seed_seq);
    while (!open && !frontier.empty()) {
        int id = frontier.front();
        frontier.pop();
        ExceptionalSequence cur = nodes[id];  // copy: nodes may reallocate
        for (int i = 1; i < cur.size() && !open; ++i) {
            if (!visit(apply_generator(cur, i))) open = true;
            if (!open && !visit(apply_generator(cur, -i))) open = true;
        }
    }
    rep.closed = !open;
    rep.size = static_cast<int>(nodes.size());
    return rep;
}

}  // namespace gentle
