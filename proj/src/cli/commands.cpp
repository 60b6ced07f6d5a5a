// SPDX-License-Identifier: Apache-2.0
#include "mvhull/cli.hpp"
#include "mvhull/freepwl.hpp"
#include "mvhull/hull.hpp"
#include "mvhull/term.hpp"

#include "CLI11.hpp"

#include <filesystem>
#include <fstream>
#include <memory>
#include <ostream>
#include <sstream>

namespace mvhull::cli {

namespace {

using AlgebraPtr = std::shared_ptr<const mv::GridAlgebra>;

std::string read_text(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorCode::Domain, "cannot read '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

AlgebraPtr load(const std::string& path) { return std::make_shared<const mv::GridAlgebra>(load_algebra_file(path)); }

QVector vector_arg(const std::string& text, const mv::GridAlgebra& a) {
    QVector v = QVector::parse(text);
    if (v.size() != a.dim()) {
        fail(ErrorCode::Domain, "vector has " + std::to_string(v.size()) + " entries, the algebra has " +
                                    std::to_string(a.dim()) + " points");
    }
    return v;
}

std::string join_labels(const mv::PointSet& ps, const std::vector<std::size_t>& idx) {
    std::string s;
    for (std::size_t i = 0; i < idx.size(); ++i) {
        if (i) s += ',';
        s += ps.label(idx[i]);
    }
    return s;
}

template <class T>
std::string join_list(const std::vector<T>& xs, const char* sep = ",") {
    std::ostringstream os;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i) os << sep;
        os << xs[i];
    }
    return xs.empty() ? "-" : os.str();
}

const char* verdict(bool ok) { return ok ? "pass" : "fail"; }

void cmd_generate(const std::string& spec, bool json, std::ostream& out) {
    const auto a = load(spec);
    if (json) {
        out << serialize_algebra(*a) << '\n';
        return;
    }
    out << "points=" << join_list(a->points().labels()) << '\n';
    out << "den=" << a->den() << '\n';
    out << "size=" << a->size() << '\n';
    for (std::size_t i = 0; i < a->size(); ++i) out << "element=" << a->element(i) << '\n';
    out << "chains=" << join_list(mv::chain_decomposition(*a)) << '\n';
}

void cmd_spectrum(const std::string& spec, std::ostream& out) {
    const auto a = load(spec);
    const mv::Spectrum s = mv::max_spectrum(*a);
    out << "classes=" << s.classes.count() << '\n';
    for (std::size_t c = 0; c < s.classes.count(); ++c) {
        out << "class=" << c << " points=" << join_labels(a->points(), s.classes.members[c]) << '\n';
    }
    for (std::size_t c = 0; c < s.maximal_ideals.size(); ++c) {
        out << "maximal_ideal=" << c << " vanishes_on=" << join_labels(a->points(), s.classes.members[c])
            << " zero_classes=" << join_list(s.maximal_ideals[c].zero_classes) << '\n';
    }
    for (const auto& r : s.radical) out << "radical=" << r << '\n';
}

void cmd_hull(const std::string& spec, std::ostream& out) {
    const auto a = load(spec);
    hull::LGroupTrace trace;
    const hull::UnitalLGroup g = hull::lgroup_generate(*a, &trace);
    const hull::RieszHull h = hull::riesz_hull(a);
    out << "points=" << join_list(a->points().labels()) << '\n';
    out << "lattice_den=" << g.lattice.den() << '\n';
    out << "lattice_rank=" << g.lattice.rank() << '\n';
    for (const auto& row : g.lattice.basis()) out << "lattice_row=(" << join_list(row) << ")\n";
    out << "closure_rounds=" << trace.rounds << '\n';
    out << "closure_added=" << trace.steps.size() << '\n';
    out << "span_dim=" << h.span_basis().size() << '\n';
    for (const auto& b : h.span_basis()) out << "span_basis=" << b << '\n';
    out << "skeleton_pivots=" << join_labels(a->points(), h.pivot_points()) << '\n';
    out << "skeleton=span(span_basis) n [0,1]^" << a->dim() << '\n';
    out << "gamma_size=" << hull::gamma_unit(g).size() << '\n';
}

void cmd_member(const std::string& spec, const std::string& vec, std::ostream& out) {
    const auto a = load(spec);
    const hull::RieszHull h = hull::riesz_hull(a);
    const QVector v = vector_arg(vec, *a);
    if (!h.member(v)) {
        out << "not-in-hull\n";
        return;
    }
    out << "member=true\n";
    out << "coordinates=(" << join_list(*h.coordinates(v)) << ")\n";
    out << "in_algebra=" << (a->contains(v) ? "true" : "false") << '\n';
}

void cmd_divhull(const std::string& spec, const std::string& vec, std::ostream& out) {
    const auto a = load(spec);
    const hull::DivisibleHull d(hull::lgroup_generate(*a));
    const QVector v = vector_arg(vec, *a);
    const hull::AverageCertificate cert = d.decompose_average(v);
    out << "n=" << cert.n << '\n';
    for (const auto& p : cert.parts) out << "part=" << p << '\n';
}

void cmd_essential(const std::string& spec, const std::string& vec, std::ostream& out) {
    const auto a = load(spec);
    const hull::RieszHull h = hull::riesz_hull(a);
    const hull::EssentialWitness w = hull::essential_witness(h, vector_arg(vec, *a));
    out << "a=" << w.a << " n=" << w.n << '\n';
}

void cmd_extend(const std::string& spec_a, const std::string& spec_v, const std::string& map_path,
                std::uint64_t seed, std::ostream& out) {
    const auto a = load(spec_a);
    const auto vbase = load(spec_v);
    const auto v = std::make_shared<const hull::RieszHull>(hull::riesz_hull(vbase));
    const hull::HullHom f{a, v, parse_point_map(read_text(map_path), *a, vbase->points())};
    const hull::Extension ext = hull::extend_hom(f, seed);
    for (std::size_t i = 0; i < a->generators().size(); ++i) {
        out << "generator=" << a->generators()[i] << " image=" << ext.generator_images[i] << '\n';
    }
    const hull::RieszHull ra = hull::riesz_hull(a);
    for (const auto& b : ra.span_basis()) out << "span_image=" << b << " -> " << ext.map(b) << '\n';
    out << "restricts_to_f=" << (ext.restricts_to_f ? "true" : "false") << '\n';
    out << "scalar_compatible=" << (ext.scalar_compatible ? "true" : "false") << '\n';
    out << "uniqueness=" << (ext.unique_on_span ? "confirmed" : "FAILED") << '\n';
    if (!ext.restricts_to_f || !ext.scalar_compatible || !ext.unique_on_span) {
        fail(ErrorCode::Invariant, "extension checks failed");
    }
}

void cmd_functor(const std::string& spec_a, const std::string& spec_b, const std::string& map_path,
                 std::ostream& out) {
    const auto a = load(spec_a);
    const auto b = load(spec_b);
    const mv::PointMapHom h{a, b, parse_point_map(read_text(map_path), *a, b->points())};
    const mv::HomCheck check = mv::hom_check(h);
    const hull::FunctorImage r = hull::hull_functor(h);
    out << "hom=valid\n";
    out << "embedding=" << (check.is_embedding ? "true" : "false") << '\n';
    out << "essential=" << (check.is_essential ? "true" : "false") << '\n';
    std::string picks;
    for (std::size_t y = 0; y < r.map.pick.size(); ++y) {
        if (y) picks += ',';
        picks += b->points().label(y) + "<-" + a->points().label(r.map.pick[y]);
    }
    out << "rh_map=" << picks << '\n';
    for (const auto& v : r.source_hull->span_basis()) out << "span_image=" << v << " -> " << r.map(v) << '\n';
    out << "square=" << (r.square_commutes ? "commutes" : "FAILS") << '\n';
    out << "rank=" << r.source_rank << "->" << r.image_rank << '\n';
    out << "rh_injective=" << (r.injective ? "true" : "false") << '\n';
    if (!r.square_commutes || (check.is_embedding && !r.injective)) {
        fail(ErrorCode::Invariant, "functor checks failed");
    }
}

void cmd_adjoint(const std::string& spec, std::uint64_t seed, std::ostream& out) {
    const auto a = load(spec);
    const auto v = std::make_shared<const hull::RieszHull>(hull::riesz_hull(a));
    const hull::AdjunctionReport r = hull::adjunction_check(a, v, seed);
    out << "unit=" << verdict(r.unit_ok) << '\n';
    out << "counit=" << verdict(r.counit_ok) << '\n';
    out << "triangle_left=" << verdict(r.triangle_left) << '\n';
    out << "triangle_right=" << verdict(r.triangle_right) << '\n';
    out << "idempotent=" << verdict(r.idempotent) << '\n';
    out << "homset_bijection=" << verdict(r.homset_bijection) << '\n';
    out << "homs_checked=" << r.homs_checked << '\n';
    if (!r.all()) fail(ErrorCode::Invariant, "adjunction checks failed");
}

pwl::PWL pwl_input(const std::string& arg) {
    if (std::filesystem::is_regular_file(arg)) return pwl::PWL::parse(read_text(arg));
    if (arg.find(':') != std::string::npos) return pwl::PWL::parse(arg);
    return pwl::term_to_pwl(term::parse(arg));
}

void cmd_pwl(const std::string& mode, const std::string& input, const std::string& at, std::ostream& out) {
    const pwl::PWL f = pwl_input(input);
    if (mode == "eval") {
        out << "pwl=" << f.str() << '\n';
        if (!at.empty()) out << "value=" << f(Rat::parse(at)) << '\n';
    } else if (mode == "mcnaughton") {
        out << (pwl::is_mcnaughton(f) ? "true" : "false") << '\n';
    } else {
        const pwl::Decomposition d = pwl::schauder_decompose(f);
        out << "nodes=" << join_list(d.subdivision.nodes, " ") << '\n';
        out << "coefficients=" << join_list(d.coefficients, " ") << '\n';
        bool hats_ok = true;
        for (std::size_t i = 0; i < d.subdivision.nodes.size(); ++i) {
            const pwl::PWL h = pwl::hat(d.subdivision, i);
            hats_ok = hats_ok && pwl::is_mcnaughton(h);
            out << "hat=" << h.str() << '\n';
        }
        const bool exact = d.reconstruct() == f && d.reconstruct_truncated() == f;
        out << "unimodular=" << (d.subdivision.unimodular() ? "true" : "false") << '\n';
        out << "hats_mcnaughton=" << (hats_ok ? "true" : "false") << '\n';
        out << "reconstruction=" << (exact ? "exact" : "MISMATCH") << '\n';
        if (!exact || !hats_ok) fail(ErrorCode::Invariant, "decomposition checks failed");
    }
}

}  // namespace

int exit_code(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::Parse: return 2;
        case ErrorCode::Domain: return 3;
        case ErrorCode::NotInHull: return 4;
        case ErrorCode::NotHom: return 5;
        case ErrorCode::Invariant: return 6;
    }
    return 1;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Riesz hulls of finite MV-algebras", "mvhull"};
    app.require_subcommand(1);

    std::string spec, target, map_path, vec, mode, input, at;
    std::uint64_t seed = 0;
    bool json = false;

    auto* generate = app.add_subcommand("generate", "Generated algebra and its chain decomposition");
    generate->add_option("spec,--spec", spec, "Algebra file")->required();
    generate->add_flag("--json", json, "Canonical JSON serialization instead of key=value lines");

    auto* spectrum = app.add_subcommand("spectrum", "Point classes and maximal ideals");
    spectrum->add_option("spec,--spec", spec, "Algebra file")->required();

    auto* hull_cmd = app.add_subcommand("hull", "Generated l-group lattice and hull span");
    hull_cmd->add_option("spec,--spec", spec, "Algebra file")->required();

    auto* member = app.add_subcommand("member", "Hull skeleton membership");
    member->add_option("spec,--spec", spec, "Algebra file")->required();
    member->add_option("vector,--vector", vec, "Vector p/q,p/q,...")->required();

    auto* divhull = app.add_subcommand("divhull", "Averaging certificate in the divisible hull");
    divhull->add_option("spec,--spec", spec, "Algebra file")->required();
    divhull->add_option("vector,--vector", vec, "Vector p/q,p/q,...")->required();

    auto* essential = app.add_subcommand("essential", "Essential-embedding witness (a, n)");
    essential->add_option("spec,--spec", spec, "Algebra file")->required();
    essential->add_option("vector,--vector", vec, "Vector p/q,p/q,...")->required();

    auto* extend = app.add_subcommand("extend", "Extend A -> U(R(V)) to R(A) -> R(V)");
    extend->add_option("spec,--spec", spec, "Source algebra file")->required();
    extend->add_option("target,--target", target, "Target algebra file (its hull is the codomain)")->required();
    extend->add_option("map,--map", map_path, "Point map file")->required();
    extend->add_option("--seed", seed, "Sampling seed");

    auto* functor = app.add_subcommand("functor", "R(h) for a homomorphism h : A -> B");
    functor->add_option("spec,--spec", spec, "Source algebra file")->required();
    functor->add_option("target,--target", target, "Target algebra file")->required();
    functor->add_option("map,--map", map_path, "Point map file")->required();

    auto* adjoint = app.add_subcommand("adjoint", "Unit, counit and triangle identities");
    adjoint->add_option("spec,--spec", spec, "Algebra file")->required();
    adjoint->add_option("--seed", seed, "Sampling seed");

    auto* pwl_cmd = app.add_subcommand("pwl", "One-variable piecewise-linear calculus");
    pwl_cmd->add_option("mode", mode, "eval | decompose | mcnaughton")
        ->required()
        ->check(CLI::IsMember({"eval", "decompose", "mcnaughton"}));
    pwl_cmd->add_option("input", input, "Term, node:value list, or file")->required();
    pwl_cmd->add_option("--at", at, "Evaluate at this point (eval mode)");

    std::vector<const char*> argv{"mvhull"};
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "PARSE: " << e.what() << '\n';
        return exit_code(ErrorCode::Parse);
    }

    try {
        if (*generate) cmd_generate(spec, json, out);
        else if (*spectrum) cmd_spectrum(spec, out);
        else if (*hull_cmd) cmd_hull(spec, out);
        else if (*member) cmd_member(spec, vec, out);
        else if (*divhull) cmd_divhull(spec, vec, out);
        else if (*essential) cmd_essential(spec, vec, out);
        else if (*extend) cmd_extend(spec, target, map_path, seed, out);
        else if (*functor) cmd_functor(spec, target, map_path, out);
        else if (*adjoint) cmd_adjoint(spec, seed, out);
        else if (*pwl_cmd) cmd_pwl(mode, input, at, out);
    } catch (const Error& e) {
        err << to_string(e.code()) << ": " << e.what() << '\n';
        return exit_code(e.code());
    }
    return 0;
}

}  // namespace mvhull::cli
