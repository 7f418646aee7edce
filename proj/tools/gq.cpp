#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "gentle/braid.hpp"
#include "gentle/dissection.hpp"
#include "gentle/json_io.hpp"
#include "gentle/nakayama.hpp"
#include "gentle/surface.hpp"

namespace {

using nlohmann::json;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw gentle::PreconditionError("cannot read file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

gentle::GentleQuiver load_quiver(const std::string& path) {
    return gentle::parse_quiver(read_file(path));
}

/// Sequence inputs are either a .gq file (seeded from the first linear
/// extension of an acyclic quiver) or a sequence document produced by
/// `seed`, `mutate` or `dual` (which carries its own quiver and members).
gentle::ExceptionalSequence load_sequence(const std::string& path, std::uint32_t prime) {
    if (path.size() >= 5 && path.compare(path.size() - 5, 5, ".json") == 0) {
        gentle::ExceptionalSequence seq = gentle::json_to_sequence(json::parse(read_file(path)));
        if (!seq.validated)
            throw gentle::PreconditionError("input members do not form an exceptional sequence");
        return seq;
    }
    gentle::GentleQuiver q = load_quiver(path);
    auto exts = gentle::linear_extensions(q, 1);
    if (exts.empty())
        throw gentle::PreconditionError(
            "quiver has an oriented cycle; supply a sequence document (.json) instead");
    std::vector<int> order;
    for (const std::string& name : exts[0]) order.push_back(q.vertex_index(name));
    return gentle::seed_sequence(gentle::Algebra::make(q, prime), order);
}

json invariants_json(const gentle::SurfaceInvariants& s) {
    std::string special = s.punctures > 0 ? "" : gentle::classify_special(s);
    return json{{"genus", s.genus},
                {"boundaries", s.boundaries},
                {"circ", s.marks_circ},
                {"bullet", s.marks_bullet},
                {"punctures", s.punctures},
                {"chi", s.chi},
                {"special", special.empty() ? json(nullptr) : json(special)}};
}

/// Render a flat JSON object as "key: value" lines for --plain.
std::string plain_lines(const json& j) {
    std::ostringstream out;
    for (const auto& [k, v] : j.items()) {
        out << k << ": ";
        if (v.is_string())
            out << v.get<std::string>();
        else
            out << v.dump();
        out << "\n";
    }
    return out.str();
}

void emit(const json& j, bool plain, const std::string& plain_text = "") {
    if (plain)
        std::cout << (plain_text.empty() ? plain_lines(j) : plain_text);
    else
        std::cout << j.dump(2) << "\n";
}

const char* verdict_word(gentle::IsoVerdict v) { return gentle::to_string(v); }

int run(int argc, char** argv) {
    CLI::App app{"gentle quivers of dissected surfaces: validation, invariants, "
                 "exceptional sequences and the braid action"};
    app.require_subcommand(1);

    std::uint32_t prime = 32003;
    std::uint64_t seed = 0;
    int trials = 20;
    int max_count = 0;
    bool plain = false;
    app.add_option("--field-prime", prime, "coefficient field prime")->capture_default_str();
    app.add_option("--seed", seed, "random seed")->capture_default_str();
    app.add_option("--trials", trials, "isomorphism-test trials")->capture_default_str();
    app.add_option("--max", max_count, "size bound (orbit nodes / random words)");
    app.add_flag("--plain", plain, "human-readable summary instead of JSON");

    std::string file, word_text, side = "right", family;
    std::vector<std::string> vertices;
    int genus = 1;

    auto* c_validate = app.add_subcommand("validate", "check the gentle conditions");
    c_validate->add_option("file", file)->required();

    auto* c_surface = app.add_subcommand("surface", "surface invariants of a dissection quiver");
    c_surface->add_option("file", file)->required();

    auto* c_exists = app.add_subcommand("exists", "does a full exceptional sequence exist?");
    c_exists->add_option("file", file)->required();

    auto* c_cut = app.add_subcommand("cut", "cut the dissection along chosen arcs");
    c_cut->add_option("file", file)->required();
    c_cut->add_option("--vertices", vertices, "arcs to cut")->delimiter(',')->required();

    auto* c_complete = app.add_subcommand("complete",
                                          "can the chosen arcs extend to a full sequence?");
    c_complete->add_option("file", file)->required();
    c_complete->add_option("--vertices", vertices, "chosen arcs")->delimiter(',');

    auto* c_koszul = app.add_subcommand("koszul", "quadratic dual presentation");
    c_koszul->add_option("file", file)->required();

    auto* c_gen = app.add_subcommand("gen", "generate a special-family dissection quiver");
    c_gen->add_option("--family", family, "T(g,1,2) or T(g,2,2)")->required();
    c_gen->add_option("--genus", genus, "genus (>= 1)")->required();

    auto* c_seed = app.add_subcommand("seed", "projective seed sequence of an acyclic quiver");
    c_seed->add_option("file", file)->required();

    auto* c_mutate = app.add_subcommand("mutate", "apply a braid word to a sequence");
    c_mutate->add_option("file", file)->required();
    c_mutate->add_option("--word", word_text, "signed generator indices, e.g. \"1 2 -1\"")
        ->required();

    auto* c_verify = app.add_subcommand("verify-braid", "check the braid relations on mutations");
    c_verify->add_option("file", file)->required();

    auto* c_dual = app.add_subcommand("dual", "dual sequence via the half twist");
    c_dual->add_option("file", file)->required();
    c_dual->add_option("--side", side, "left or right")->check(CLI::IsMember({"left", "right"}));

    auto* c_serre = app.add_subcommand("serre-check",
                                       "Serre functor against the double left dual");
    c_serre->add_option("file", file)->required();

    auto* c_orbit = app.add_subcommand("orbit", "explore the braid orbit of the seed");
    c_orbit->add_option("file", file)->required();

    auto* c_shift = app.add_subcommand("presilting-shift", "shifts making the seed presilting");
    c_shift->add_option("file", file)->required();

    for (CLI::App* sub : {c_validate, c_surface, c_exists, c_cut, c_complete, c_koszul, c_gen,
                          c_seed, c_mutate, c_verify, c_dual, c_serre, c_orbit, c_shift})
        sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    if (c_validate->parsed()) {
        gentle::ValidationReport r = gentle::validate_gentle(load_quiver(file));
        emit(json{{"gentle", r.gentle},
                  {"finite_gldim", r.finite_dimensional},
                  {"violations", r.violations}},
             plain);
        return 0;
    }

    if (c_surface->parsed()) {
        emit(invariants_json(gentle::surface_invariants(load_quiver(file))), plain);
        return 0;
    }

    if (c_exists->parsed()) {
        gentle::ExistsReport r = gentle::exists_full_exceptional(load_quiver(file));
        emit(json{{"exists", r.exists}, {"reason", r.exists ? json(nullptr) : json(r.reason)}},
             plain);
        return 0;
    }

    if (c_cut->parsed()) {
        gentle::CutResult r = gentle::cut_collection(load_quiver(file), vertices);
        std::string text = gentle::serialize_quiver(r.quiver);
        json comps = json::array();
        if (!r.quiver.vertices.empty())
            for (const auto& c : gentle::components(r.quiver))
                comps.push_back(invariants_json(gentle::surface_invariants(c)));
        emit(json{{"quiver", text}, {"provenance", r.provenance}, {"components", comps}}, plain,
             text);
        return 0;
    }

    if (c_complete->parsed()) {
        gentle::CompletionReport r = gentle::can_complete(load_quiver(file), vertices);
        json comps = json::array();
        for (const auto& c : r.component_reports) {
            json jc = invariants_json(c.invariants);
            jc["offending"] = c.invariants.genus >= 1 && c.invariants.boundaries == 1 &&
                              c.invariants.marks_circ == 1;
            comps.push_back(std::move(jc));
        }
        emit(json{{"can_complete", r.can_complete}, {"components", comps}}, plain);
        return 0;
    }

    if (c_koszul->parsed()) {
        gentle::GentleQuiver dual = gentle::koszul_dual_quiver(load_quiver(file));
        gentle::ValidationReport v = gentle::validate_gentle(dual);
        std::string text = gentle::serialize_quiver(dual);
        emit(json{{"quiver", text},
                  {"gentle", v.gentle},
                  {"finite_dimensional", v.finite_dimensional}},
             plain, text);
        return 0;
    }

    if (c_gen->parsed()) {
        gentle::SpecialFamily fam;
        if (family == "T(g,1,2)")
            fam = gentle::SpecialFamily::one_boundary_two_marks;
        else if (family == "T(g,2,2)")
            fam = gentle::SpecialFamily::two_boundaries_two_marks;
        else
            throw gentle::PreconditionError("unknown family: " + family +
                                            " (expected T(g,1,2) or T(g,2,2))");
        gentle::GentleQuiver q = gentle::gen_surface_quiver(fam, genus);
        std::string text = gentle::serialize_quiver(q);
        emit(json{{"quiver", text}, {"invariants", invariants_json(gentle::surface_invariants(q))}},
             plain, text);
        return 0;
    }

    if (c_seed->parsed()) {
        gentle::GentleQuiver q = load_quiver(file);
        auto exts = gentle::linear_extensions(q, 1);
        if (exts.empty())
            throw gentle::PreconditionError(
                "quiver has an oriented cycle; no canonical seed exists");
        std::vector<int> order;
        for (const std::string& name : exts[0]) order.push_back(q.vertex_index(name));
        gentle::ExceptionalSequence seq =
            gentle::seed_sequence(gentle::Algebra::make(q, prime), order);
        json doc = gentle::sequence_to_json(seq);
        doc["order"] = exts[0];
        emit(doc, plain);
        return 0;
    }

    if (c_mutate->parsed()) {
        gentle::ExceptionalSequence seq = load_sequence(file, prime);
        gentle::BraidWord w = gentle::parse_braid_word(word_text);
        gentle::ExceptionalSequence out = gentle::apply_word(seq, w);
        json doc = gentle::sequence_to_json(out);
        doc["word"] = w;
        emit(doc, plain);
        return 0;
    }

    if (c_verify->parsed()) {
        gentle::ExceptionalSequence seq = load_sequence(file, prime);
        int words = max_count > 0 ? max_count : 20;
        gentle::BraidCheckReport r = gentle::verify_braid_relations(seq, words, seed, trials);
        emit(json{{"checks", r.checks},
                  {"failures", r.failures},
                  {"undetermined", r.undetermined},
                  {"failed", r.failed_labels},
                  {"ok", r.ok()},
                  {"seed", seed},
                  {"trials", trials}},
             plain);
        return r.ok() ? 0 : 2;
    }

    if (c_dual->parsed()) {
        gentle::ExceptionalSequence seq = load_sequence(file, prime);
        gentle::ExceptionalSequence out = side == "left"
                                              ? gentle::left_dual(seq, trials, seed)
                                              : gentle::right_dual(seq, trials, seed);
        json doc = gentle::sequence_to_json(out);
        doc["side"] = side;
        doc["seed"] = seed;
        emit(doc, plain);
        return 0;
    }

    if (c_serre->parsed()) {
        gentle::ExceptionalSequence seq = load_sequence(file, prime);
        gentle::SerreReport r = gentle::serre_check(seq, trials, seed);
        json comps = json::array();
        for (gentle::IsoVerdict v : r.components) comps.push_back(verdict_word(v));
        emit(json{{"components", comps},
                  {"last_component_shortcut", verdict_word(r.last_component_shortcut)},
                  {"ok", r.all_isomorphic()},
                  {"seed", seed},
                  {"trials", trials}},
             plain);
        return r.all_isomorphic() ? 0 : 2;
    }

    if (c_orbit->parsed()) {
        gentle::ExceptionalSequence seq = load_sequence(file, prime);
        int cap = max_count > 0 ? max_count : 1000;
        gentle::OrbitReport r = gentle::orbit_explore(seq, cap, seed, trials);
        emit(json{{"closed", r.closed},
                  {"size", r.size},
                  {"quarantined", r.quarantined},
                  {"seed", seed}},
             plain);
        return r.quarantined == 0 ? 0 : 2;
    }

    if (c_shift->parsed()) {
        gentle::ExceptionalSequence seq = load_sequence(file, prime);
        emit(json{{"shifts", gentle::presilting_shift(seq, trials)}}, plain);
        return 0;
    }

    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const gentle::PropertyViolation& e) {
        std::cerr << "property violation: " << e.what() << "\n";
        return 2;
    } catch (const gentle::ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 1;
    } catch (const gentle::PreconditionError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "json error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 2;
    }
}
