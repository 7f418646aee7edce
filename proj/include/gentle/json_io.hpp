#pragma once

#include <string>

#include "gentle/braid.hpp"
#include "json.hpp"

namespace gentle {

/// Complexes travel as {"terms": {"-1": ["γ1"]}, "diff": {"-1": [[[["a"],1]]]}}:
/// terms lists summand vertices per degree, diff holds one matrix per degree,
/// and every matrix entry is a list of (path, coefficient) pairs where a path
/// is either the arrow-id list of a composite or the literal "e_<vertex>".
inline nlohmann::json complex_to_json(const ProjComplex& X) {
    const Algebra& A = *X.A;
    nlohmann::json terms = nlohmann::json::object();
    nlohmann::json diff = nlohmann::json::object();
    for (int d = X.dmin; d <= X.dmax(); ++d) {
        nlohmann::json names = nlohmann::json::array();
        for (int v : X.at(d)) names.push_back(A.q.vertices[v]);
        terms[std::to_string(d)] = std::move(names);
        int i = d - X.dmin;
        if (i + 1 >= X.ndegrees()) continue;
        nlohmann::json m = nlohmann::json::array();
        for (const auto& row : X.diff[i]) {
            nlohmann::json jrow = nlohmann::json::array();
            for (const PathVector& pv : row) {
                nlohmann::json entry = nlohmann::json::array();
                for (const auto& [path, coeff] : pv.terms) {
                    const Path& p = A.paths[path];
                    nlohmann::json jp;
                    if (p.trivial()) {
                        jp = "e_" + A.q.vertices[p.src];
                    } else {
                        jp = nlohmann::json::array();
                        for (int a : p.arrows) jp.push_back(A.q.arrows[a].id);
                    }
                    entry.push_back(nlohmann::json::array({jp, coeff}));
                }
                jrow.push_back(std::move(entry));
            }
            m.push_back(std::move(jrow));
        }
        diff[std::to_string(d)] = std::move(m);
    }
    return nlohmann::json{{"terms", std::move(terms)}, {"diff", std::move(diff)}};
}

inline ProjComplex json_to_complex(const nlohmann::json& j, const AlgebraPtr& A) {
    if (!j.is_object() || !j.contains("terms"))
        throw PreconditionError("a complex document needs a \"terms\" object");
    const GentleQuiver& q = A->q;
    std::map<int, std::vector<int>> terms;
    for (const auto& [key, names] : j.at("terms").items()) {
        int d = 0;
        try {
            d = std::stoi(key);
        } catch (const std::exception&) {
            throw PreconditionError("complex degrees must be integers");
        }
        std::vector<int> vs;
        for (const auto& name : names) {
            int v = q.vertex_index(name.get<std::string>());
            if (v < 0) throw PreconditionError("unknown vertex in complex: " + name.get<std::string>());
            vs.push_back(v);
        }
        terms[d] = std::move(vs);
    }
    ProjComplex X;
    X.A = A;
    if (terms.empty()) {
        X.dmin = 0;
        return X;
    }
    X.dmin = terms.begin()->first;
    int dmax = terms.rbegin()->first;
    for (int d = X.dmin; d <= dmax; ++d) X.terms.push_back(terms.count(d) ? terms[d] : std::vector<int>{});

    auto parse_path = [&](const nlohmann::json& jp, int need_src, int need_tgt) -> int {
        if (jp.is_string()) {
            std::string s = jp.get<std::string>();
            if (s.rfind("e_", 0) != 0)
                throw PreconditionError("trivial paths are written e_<vertex>");
            int v = q.vertex_index(s.substr(2));
            if (v < 0) throw PreconditionError("unknown vertex in path: " + s);
            if (v != need_src || v != need_tgt)
                throw PreconditionError("a differential entry has mismatched endpoints");
            return A->trivial_path(v);
        }
        Path p;
        for (const auto& name : jp) {
            int a = q.arrow_index(name.get<std::string>());
            if (a < 0) throw PreconditionError("unknown arrow in path: " + name.get<std::string>());
            if (p.arrows.empty()) p.src = q.vertex_index(q.arrows[a].src);
            p.arrows.push_back(a);
            p.tgt = q.vertex_index(q.arrows[a].tgt);
        }
        if (p.arrows.empty()) throw PreconditionError("paths must list at least one arrow");
        if (p.src != need_src || p.tgt != need_tgt)
            throw PreconditionError("a differential entry has mismatched endpoints");
        int id = A->path_id(p);
        if (id < 0) throw PreconditionError("a differential entry is not an allowed path");
        return id;
    };

    for (int i = 0; i + 1 < X.ndegrees(); ++i) {
        MatrixPV m = zero_matrix(X, i);
        std::string key = std::to_string(X.dmin + i);
        if (j.contains("diff") && j.at("diff").contains(key)) {
            const nlohmann::json& jm = j.at("diff").at(key);
            if (jm.size() != m.size())
                throw PreconditionError("a differential has the wrong number of rows");
            for (std::size_t r = 0; r < m.size(); ++r) {
                if (jm[r].size() != m[r].size())
                    throw PreconditionError("a differential has the wrong number of columns");
                for (std::size_t c = 0; c < m[r].size(); ++c)
                    for (const auto& term : jm[r][c]) {
                        int path = parse_path(term.at(0), m[r][c].src, m[r][c].tgt);
                        long long coeff = term.at(1).get<long long>();
                        std::uint32_t cc = A->field.reduce(coeff);
                        pv_accumulate(*A, m[r][c], path, cc);
                    }
            }
        }
        X.diff.push_back(std::move(m));
    }
    trim(X);
    validate_complex(X);
    return X;
}

/// A sequence document embeds its own presentation so it can be piped
/// between commands: {"quiver": "<.gq text>", "field_prime": p, "members": [...]}.
inline nlohmann::json sequence_to_json(const ExceptionalSequence& seq) {
    nlohmann::json members = nlohmann::json::array();
    for (const ProjComplex& x : seq.members) members.push_back(complex_to_json(x));
    return nlohmann::json{{"quiver", serialize_quiver(seq.A->q)},
                          {"field_prime", seq.A->field.p},
                          {"members", std::move(members)}};
}

inline ExceptionalSequence json_to_sequence(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("quiver") || !j.contains("members"))
        throw PreconditionError("a sequence document needs \"quiver\" and \"members\"");
    GentleQuiver q = parse_quiver(j.at("quiver").get<std::string>());
    std::uint32_t p = j.value("field_prime", 32003u);
    ExceptionalSequence seq;
    seq.A = Algebra::make(q, p);
    for (const auto& jm : j.at("members")) seq.members.push_back(json_to_complex(jm, seq.A));
    seq.validated = is_exceptional_sequence(seq.members);
    return seq;
}

}  // namespace gentle
