#include <catch2/catch_amalgamated.hpp>

#include "gentle/braid.hpp"
#include "helpers.hpp"

using namespace gentle;
using testutil::load_fixture;

namespace {

AlgebraPtr alg(const char* file, std::uint32_t p = 32003) {
    return Algebra::make(load_fixture(file), p);
}

ProjComplex two_term(const AlgebraPtr& A, int v, int w, int path, int dmin = -1) {
    ProjComplex X;
    X.A = A;
    X.dmin = dmin;
    X.terms = {{v}, {w}};
    X.diff = {{{pv_path(*A, path)}}};
    validate_complex(X);
    return X;
}

bool same_complex(const ProjComplex& X, const ProjComplex& Y) {
    if (X.dmin != Y.dmin || X.terms != Y.terms) return false;
    for (std::size_t i = 0; i + 1 < X.terms.size(); ++i)
        for (std::size_t r = 0; r < X.terms[i].size(); ++r)
            for (std::size_t c = 0; c < X.terms[i + 1].size(); ++c)
                if (!pv_equal(X.diff[i][r][c], Y.diff[i][r][c])) return false;
    return true;
}

std::vector<int> first_extension(const GentleQuiver& q) {
    auto exts = linear_extensions(q, 1);
    REQUIRE(!exts.empty());
    std::vector<int> order;
    for (const std::string& name : exts[0]) order.push_back(q.vertex_index(name));
    return order;
}

// All shift-normalized indecomposables of the bounded homotopy category of a
// linear A_n quiver: the stalks and one two-term complex per radical path.
std::vector<ProjComplex> linear_indecomposables(const AlgebraPtr& A) {
    std::vector<ProjComplex> out;
    for (int v = 0; v < A->nvertices(); ++v) out.push_back(proj_stalk(A, v, 0));
    for (int v = 0; v < A->nvertices(); ++v)
        for (int w = 0; w < A->nvertices(); ++w)
            if (v != w)
                for (int p : A->between[v][w]) out.push_back(normalize_shift(two_term(A, v, w, p)));
    return out;
}

long long floordiv(long long a, long long b) {
    long long q = a / b;
    return (a % b != 0 && (a < 0) != (b < 0)) ? q - 1 : q;
}

// Row Hermite normal form over the integers (canonical lattice basis).
std::vector<std::vector<long long>> hnf(std::vector<std::vector<long long>> m) {
    if (m.empty()) return m;
    const int rows = static_cast<int>(m.size()), cols = static_cast<int>(m[0].size());
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int nz = -1;
        for (int i = r; i < rows; ++i)
            if (m[i][c] != 0) {
                nz = i;
                break;
            }
        if (nz == -1) continue;
        std::swap(m[r], m[nz]);
        for (int i = r + 1; i < rows; ++i)
            while (m[i][c] != 0) {
                long long q = floordiv(m[r][c], m[i][c]);
                for (int k = 0; k < cols; ++k) m[r][k] -= q * m[i][k];
                std::swap(m[r], m[i]);
            }
        if (m[r][c] < 0)
            for (int k = 0; k < cols; ++k) m[r][k] = -m[r][k];
        for (int i = 0; i < r; ++i) {
            long long q = floordiv(m[i][c], m[r][c]);
            for (int k = 0; k < cols; ++k) m[i][k] -= q * m[r][k];
        }
        ++r;
    }
    return m;
}

std::vector<std::vector<long long>> class_lattice(const ExceptionalSequence& seq) {
    std::vector<std::vector<long long>> m;
    for (const ProjComplex& x : seq.members) m.push_back(k0_class(x));
    return hnf(std::move(m));
}

}  // namespace

TEST_CASE("exceptional object and sequence predicates") {
    auto A = alg("a2.gq");
    ProjComplex P1 = proj_stalk(A, 0, 0), P2 = proj_stalk(A, 1, 0);
    ProjComplex S = two_term(A, 0, 1, A->between[0][1][0]);
    CHECK(is_exceptional_object(P1));
    CHECK(is_exceptional_object(S));
    CHECK_FALSE(is_exceptional_object(direct_sum(P1, P1)));
    ProjComplex Z;
    Z.A = A;
    Z.dmin = 0;
    CHECK_THROWS_AS(is_exceptional_object(Z), PreconditionError);

    CHECK(is_exceptional_sequence({P1, P2}));
    CHECK_FALSE(is_exceptional_sequence({P2, P1}));
    CHECK(is_exceptional_sequence({S}));
    CHECK_FALSE(is_exceptional_sequence({Z}));

    CHECK(is_presilting({P1, P2}));
    CHECK_FALSE(is_presilting({P1, shift(P1, -1)}));
}

TEST_CASE("seeds come from linear extensions") {
    auto A = alg("a2.gq");
    ExceptionalSequence seq = seed_sequence(A, {0, 1});
    CHECK(seq.full());
    CHECK(seq.validated);
    CHECK_THROWS_AS(seed_sequence(A, {1, 0}), PreconditionError);
    CHECK_THROWS_AS(seed_sequence(A, {0}), PreconditionError);
    CHECK_THROWS_AS(seed_sequence(A, {0, 0}), PreconditionError);

    auto D = alg("delta1.gq");
    ExceptionalSequence big = seed_sequence(D, first_extension(D->q));
    CHECK(big.size() == 5);
    CHECK(big.full());
    CHECK(is_presilting(big.members));

    auto D2 = alg("delta2.gq");
    CHECK_THROWS_AS(seed_sequence(D2, {0, 1, 2, 3, 4}), PreconditionError);
}

TEST_CASE("the two basic mutations of the one-arrow pair") {
    auto A = alg("a2.gq");
    ProjComplex P1 = proj_stalk(A, 0, 0), P2 = proj_stalk(A, 1, 0);
    ProjComplex R = right_mutation(P1, P2);
    CHECK(R.dmin == 0);
    CHECK(R.terms == std::vector<std::vector<int>>{{0}, {1}});
    CHECK(is_exceptional_sequence({P2, R}));
    ProjComplex L = left_mutation(P1, P2);
    CHECK(L.dmin == -1);
    CHECK(L.terms == std::vector<std::vector<int>>{{0}, {1}});
    CHECK(is_exceptional_sequence({L, P1}));
    CHECK_THROWS_AS(right_mutation(P2, P1), PreconditionError);  // not an exceptional pair
}

TEST_CASE("mutation through a disconnected object is the identity") {
    auto D = alg("delta1.gq");
    const GentleQuiver& q = D->q;
    ProjComplex X = proj_stalk(D, q.vertex_index("γ2"), 0);
    ProjComplex Y = proj_stalk(D, q.vertex_index("γ4"), 0);
    REQUIRE(hom_all(X, Y).empty());
    CHECK(same_complex(right_mutation(X, Y), X));
    CHECK(same_complex(left_mutation(X, Y), Y));
}

TEST_CASE("single-map pair inside the annulus seed mutates to a two-term complex") {
    auto D = alg("delta1.gq");
    const GentleQuiver& q = D->q;
    int g4 = q.vertex_index("γ4"), g3 = q.vertex_index("γ3");
    ProjComplex R = right_mutation(proj_stalk(D, g4, 0), proj_stalk(D, g3, 0));
    CHECK(summand_profile(R) ==
          (std::map<int, std::map<int, int>>{{0, {{g4, 1}}}, {1, {{g3, 1}}}}));
}

TEST_CASE("words act and undo") {
    auto A = alg("a2.gq");
    ExceptionalSequence seq = seed_sequence(A, {0, 1});
    CHECK(parse_braid_word("1 2 -1") == BraidWord{1, 2, -1});
    CHECK_THROWS_AS(parse_braid_word("1 x"), PreconditionError);
    CHECK_THROWS_AS(parse_braid_word("0"), PreconditionError);
    CHECK(apply_word(seq, {}).members.size() == 2);
    ExceptionalSequence m = apply_word(seq, {1});
    CHECK(summand_profile(m.members[0]) == summand_profile(proj_stalk(A, 1, 0)));
    CHECK(summand_profile(m.members[1]) ==
          (std::map<int, std::map<int, int>>{{0, {{0, 1}}}, {1, {{1, 1}}}}));
    CHECK(sequences_isomorphic(apply_word(seq, {1, -1}), seq) == IsoVerdict::isomorphic);
    CHECK(sequences_isomorphic(apply_word(seq, {-1, 1}), seq) == IsoVerdict::isomorphic);
    CHECK_THROWS_AS(apply_generator(seq, 2), PreconditionError);
}

TEST_CASE("braid and commutation relations hold on the annulus seed") {
    auto D = alg("delta1.gq");
    ExceptionalSequence seq = seed_sequence(D, first_extension(D->q));
    BraidCheckReport rep = verify_braid_relations(seq, 5, 7);
    INFO("failures: " << rep.failures << " undetermined: " << rep.undetermined);
    for (const std::string& s : rep.failed_labels) INFO(s);
    CHECK(rep.ok());
    CHECK(rep.checks == 8 + 3 + 3 + 5);
}

TEST_CASE("explicit braid relation on the three-vertex line") {
    auto A = alg("a3.gq");
    ExceptionalSequence seq = seed_sequence(A, {0, 1, 2});
    CHECK(sequences_isomorphic(apply_word(seq, {1, 2, 1}), apply_word(seq, {2, 1, 2})) ==
          IsoVerdict::isomorphic);
}

TEST_CASE("duals via the half twist") {
    auto P = alg("point.gq");
    ExceptionalSequence one = seed_sequence(P, {0});
    CHECK(same_complex(right_dual(one).members[0], one.members[0]));

    auto A = alg("a2.gq");
    ExceptionalSequence seq = seed_sequence(A, {0, 1});
    ExceptionalSequence R = right_dual(seq);
    CHECK(summand_profile(R.members[0]) == summand_profile(proj_stalk(A, 1, 0)));
    CHECK(sequences_isomorphic(left_dual(R), seq) == IsoVerdict::isomorphic);

    for (const char* f : {"a3.gq", "delta1.gq"}) {
        auto B = alg(f);
        ExceptionalSequence s = seed_sequence(B, first_extension(B->q));
        CHECK(sequences_isomorphic(left_dual(right_dual(s)), s) == IsoVerdict::isomorphic);
    }
}

TEST_CASE("the serre functor is the double left dual") {
    for (const char* f : {"a2.gq", "a3.gq", "delta1.gq"}) {
        auto A = alg(f);
        ExceptionalSequence seq = seed_sequence(A, first_extension(A->q));
        SerreReport rep = serre_check(seq);
        INFO(f);
        CHECK(rep.all_isomorphic());
        CHECK_FALSE(rep.any_undetermined());
    }
}

TEST_CASE("presilting shifts") {
    auto A = alg("a2.gq");
    ExceptionalSequence seq = seed_sequence(A, {0, 1});
    CHECK(presilting_shift(seq) == std::vector<int>{0, 0});
    ExceptionalSequence m = apply_word(seq, {1});
    std::vector<int> shifts = presilting_shift(m);
    REQUIRE(shifts.size() == 2);
    std::vector<ProjComplex> shifted;
    for (int i = 0; i < 2; ++i) shifted.push_back(shift(m.members[i], shifts[i]));
    CHECK(is_presilting(shifted));
}

TEST_CASE("shift normalization and canonical keys") {
    auto A = alg("a2.gq");
    ProjComplex P1 = proj_stalk(A, 0, 3);
    ProjComplex n = normalize_shift(P1);
    CHECK(n.dmin == 0);
    ProjComplex Z;
    Z.A = A;
    Z.dmin = 0;
    CHECK_THROWS_AS(normalize_shift(Z), PreconditionError);

    ExceptionalSequence seq = seed_sequence(A, {0, 1});
    ExceptionalSequence shifted = seq;
    shifted.members[0] = shift(shifted.members[0], 2);
    shifted.members[1] = shift(shifted.members[1], -1);
    CHECK(canonical_key(seq) == canonical_key(shifted));
    CHECK(canonical_key(seq) != canonical_key(apply_word(seq, {1})));
}

TEST_CASE("orbit sizes match the brute-force enumeration") {
    auto A = alg("a2.gq");
    ExceptionalSequence seq = seed_sequence(A, {0, 1});
    OrbitReport rep = orbit_explore(seq, 100, 0);
    CHECK(rep.closed);
    CHECK(rep.size == 3);
    CHECK(rep.quarantined == 0);

    // Independent oracle: ordered pairs of normalized indecomposables.
    std::vector<ProjComplex> objs = linear_indecomposables(A);
    REQUIRE(objs.size() == 3);
    int pairs = 0;
    for (const ProjComplex& x : objs)
        for (const ProjComplex& y : objs)
            if (is_exceptional_sequence({x, y})) ++pairs;
    CHECK(pairs == rep.size);

    auto B = alg("a3.gq");
    OrbitReport r3 = orbit_explore(seed_sequence(B, {0, 1, 2}), 100, 0);
    CHECK(r3.closed);
    CHECK(r3.size == 16);
    std::vector<ProjComplex> objs3 = linear_indecomposables(B);
    REQUIRE(objs3.size() == 6);
    int triples = 0;
    for (const ProjComplex& x : objs3)
        for (const ProjComplex& y : objs3)
            for (const ProjComplex& z : objs3)
                if (is_exceptional_sequence({x, y, z})) ++triples;
    CHECK(triples == r3.size);
}

TEST_CASE("the annulus orbit does not close at desk scale") {
    auto D = alg("delta1.gq");
    ExceptionalSequence seq = seed_sequence(D, first_extension(D->q));
    OrbitReport rep = orbit_explore(seq, 50, 0);
    CHECK_FALSE(rep.closed);
    CHECK(rep.size > 50);
}

TEST_CASE("mutation preserves the class lattice") {
    auto D = alg("delta1.gq");
    ExceptionalSequence seq = seed_sequence(D, first_extension(D->q));
    auto before = class_lattice(seq);
    for (const BraidWord& w :
         {BraidWord{1}, BraidWord{2}, BraidWord{-3}, BraidWord{4}, BraidWord{1, 2, -1, 4}})
        CHECK(class_lattice(apply_word(seq, w)) == before);
    CHECK(before.size() == 5);
}
