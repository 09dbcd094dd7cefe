#pragma once

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "obstructk/corpus.hpp"
#include "obstructk/io.hpp"

namespace obstructk::cli {

using json = nlohmann::json;

enum ExitCode { Pass = 0, Mismatch = 1, BadInput = 2, Internal = 3 };

struct Globals {
    std::string format = "json";
    std::optional<std::uint64_t> budget;
    std::uint64_t seed = 0;
};

/// Result of one command: a JSON document, a text rendering and the exit code.
struct Outcome {
    json doc;
    std::string text;
    int code = Pass;
};

inline void write_file(const std::string& path, const std::string& content) {
    std::ofstream f(path);
    if (!f) throw InputError("cannot write " + path);
    f << content;
}

inline void expect_value(Outcome& o, const std::string& what, const std::string& expected, const std::string& computed) {
    o.doc["expectation"] = {{"quantity", what}, {"expected", expected}, {"computed", computed}, {"passed", expected == computed}};
    if (expected != computed) {
        o.code = Mismatch;
        o.text += "MISMATCH " + what + ": expected " + expected + ", computed " + computed + "\n";
    }
}

inline io::AnyExtension load_extension(const std::string& source) {
    if (source.rfind("builtin:", 0) == 0) {
        json j{{"kind", "builtin"}, {"name", source.substr(8)}};
        if (source == "builtin:circle") j = {{"kind", "circle"}};
        if (source == "builtin:spin") j = {{"kind", "spin"}};
        return io::extension_from_json(io::Node(j, ""));
    }
    auto j = io::read_file(source);
    return io::extension_from_json(io::Node(j, ""));
}

inline std::string complex_summary(const SimplicialComplex& x) {
    std::string f;
    for (int q = 0; q <= x.dimension(); ++q) f += (q ? "," : "") + std::to_string(x.count(q));
    return "complex: dim " + std::to_string(x.dimension()) + ", f-vector (" + f + ")\n";
}

// ---------------------------------------------------------------- commands

struct CohomologyArgs {
    std::string complex, coeff = "Z", cocycle, expect;
    std::optional<int> degree;
};

inline Outcome cmd_cohomology(const CohomologyArgs& a) {
    Outcome o;
    std::vector<std::string> warnings;
    auto x = share(io::load_complex(a.complex, &warnings));
    auto coeff = CoefficientSystem::parse(a.coeff);
    o.doc["warnings"] = warnings;
    o.text = complex_summary(*x);
    for (const auto& w : warnings) o.text += "warning: " + w + "\n";
    json groups = json::array();
    std::vector<int> degrees;
    if (a.degree) {
        if (*a.degree < 0) throw InputError("degree must be nonnegative");
        degrees = {*a.degree};
    } else {
        for (int q = 0; q <= x->dimension(); ++q) degrees.push_back(q);
    }
    std::shared_ptr<const CohomologyGroup> last;
    for (int q : degrees) {
        last = cohomology_group(x, coeff, q);
        groups.push_back(io::group_to_json(*last));
        o.text += "H^" + std::to_string(q) + "(X; " + coeff.name() + ") = " + last->describe() + "\n";
    }
    o.doc["groups"] = groups;
    if (!a.cocycle.empty()) {
        auto j = io::read_file(a.cocycle);
        auto c = io::cochain_from_json(io::Node(j, ""), x);
        auto g = cohomology_group(x, c.coefficient(), c.degree());
        auto cls = classify_cocycle(c, g);
        o.doc["class"] = io::class_to_json(cls);
        o.text += "class: " + std::string(cls.is_zero() ? "zero" : "nonzero") + ", order " +
                  corpus::order_text(cls.order()) + "\n";
    }
    if (!a.expect.empty()) {
        if (degrees.size() != 1) throw InputError("--expect needs --degree");
        expect_value(o, "H^" + std::to_string(degrees[0]), a.expect, last->describe());
    }
    return o;
}

struct BundleArgs {
    std::string complex, transitions, extension, out, expect;
};

struct LoadedBundle {
    ComplexPtr x;
    std::vector<std::string> warnings;
    io::AnyExtension ext;
};

inline LoadedBundle load_bundle(const BundleArgs& a) {
    std::vector<std::string> warnings;
    auto x = share(io::load_complex(a.complex, &warnings));
    return {x, warnings, load_extension(a.extension)};
}

inline Outcome cmd_obstruct(const BundleArgs& a) {
    auto b = load_bundle(a);
    auto tj = io::read_file(a.transitions);
    return std::visit(
        [&](const auto& ext) {
            Outcome o;
            auto t = io::transitions_from_json(io::Node(tj, ""), b.x, ext);
            auto rep = validate_transition(t);
            if (!rep.valid()) {
                o.doc = {{"validation", io::transition_report_to_json(rep)}};
                o.text = "invalid transition data: " + rep.violations.front().kind + " at " +
                         format_simplex(rep.violations.front().simplex) + "\n";
                o.code = BadInput;
                return o;
            }
            auto r = compute_obstruction(t, ext);
            o.doc = io::obstruction_to_json(r, ext);
            o.doc["warnings"] = b.warnings;
            o.doc["validation"] = io::transition_report_to_json(rep);
            o.text = complex_summary(*b.x);
            for (const auto& w : b.warnings) o.text += "warning: " + w + "\n";
            o.text += "extension: " + ext.name() + "\n";
            o.text += "H^2(X; " + r.group->coefficient.name() + ") = " + r.group->describe() + "\n";
            o.text += "obstruction class: " + std::string(r.class2.is_zero() ? "zero" : "nonzero") + ", order " +
                      corpus::order_text(r.class2.order()) + "\n";
            if (!a.out.empty()) write_file(a.out, io::emit(o.doc));
            if (!a.expect.empty()) expect_value(o, "obstruction class", a.expect, r.class2.is_zero() ? "zero" : "nonzero");
            return o;
        },
        b.ext);
}

inline Outcome cmd_lift_search(const BundleArgs& a, const Globals& g) {
    auto b = load_bundle(a);
    auto tj = io::read_file(a.transitions);
    return std::visit(
        [&](const auto& ext) {
            Outcome o;
            auto t = io::transitions_from_json(io::Node(tj, ""), b.x, ext);
            if (ext.fiber_elements().empty()) throw InputError("lift search needs a finite fiber; " + ext.name() + " has none");
            auto r = brute_force_lift_search(t, ext, g.budget.value_or(default_search_budget));
            o.doc = io::lift_search_to_json(r, ext);
            o.text = "lift search: " + status_name(r.status) + " (search space " + to_string(r.search_space) +
                     ", nodes visited " + std::to_string(r.nodes_visited) + ")\n";
            if (!a.expect.empty()) expect_value(o, "lift search status", a.expect, status_name(r.status));
            return o;
        },
        b.ext);
}

struct ChaseArgs {
    std::string obstruction, sequence, out, expect_order;
};

inline Outcome cmd_chase(const ChaseArgs& a) {
    Outcome o;
    auto j = io::read_file(a.obstruction);
    io::Node n(j, "");
    auto x = share(io::complex_from_json(n.at("complex")));
    auto h = io::cochain_from_json(n.at("h"), x);
    std::optional<ShortExactCoefficients> seq;
    if (!a.sequence.empty()) {
        auto sj = io::read_file(a.sequence);
        seq = io::sequence_from_json(io::Node(sj, ""));
    }
    auto c = chase_pipeline(h, seq);
    o.doc = io::chase_to_json(c);
    o.text = complex_summary(*x);
    o.text += "branch: " + std::string(c.triple.degenerate ? "degenerate (discrete fiber)" : "exponential") + "\n";
    o.text += "degree-2 class: " + std::string(c.class2.is_zero() ? "zero" : "nonzero") + ", order " +
              corpus::order_text(c.class2.order()) + "\n";
    o.text += "degree-3 class: order " + corpus::order_text(c.report.torsion_order) + ", rational image " +
              (c.report.rational_class.is_zero() ? "zero" : "nonzero") + "\n";
    if (c.routes) o.text += std::string("route agreement: ") + (c.routes->agree() ? "yes" : "NO") + "\n";
    if (c.routes && !c.routes->agree()) {
        o.code = Internal;
        o.text += "internal invariant violation: the two routes disagree\n";
    }
    if (!a.out.empty()) write_file(a.out, io::emit(o.doc));
    if (!a.expect_order.empty())
        expect_value(o, "torsion_order", a.expect_order, corpus::order_text(c.report.torsion_order));
    return o;
}

inline Outcome cmd_deligne_check(const std::string& path) {
    Outcome o;
    auto j = io::read_file(path);
    io::Node n(j, "");
    auto t = io::triple_from_json(n.has("triple") ? n.at("triple") : n);
    auto rep = deligne_validate(t);
    o.doc = io::deligne_report_to_json(rep);
    for (std::size_t i = 0; i < rep.conditions.size(); ++i) {
        const auto& c = rep.conditions[i];
        o.text += std::string(c.passed ? "ok   " : "FAIL ") + "(" + std::to_string(i + 1) + ") " + c.name;
        if (!c.passed) {
            o.text += ": " + c.detail;
            for (const auto& s : c.simplices) o.text += " " + format_simplex(s);
        }
        o.text += "\n";
    }
    o.text += rep.valid() ? "triple accepted\n" : "triple rejected\n";
    if (!rep.valid()) o.code = Mismatch;
    return o;
}

struct XModArgs {
    std::string module, section, expect;
};

inline Outcome cmd_xmod(const XModArgs& a, const Globals& g) {
    Outcome o;
    auto j = io::read_file(a.module);
    auto cm = io::xmod_from_json(io::Node(j, ""));
    auto s = validate_crossed_module(cm);
    json viol = json::array();
    for (const auto& v : s.violations) viol.push_back({{"axiom", v.axiom}, {"indices", v.indices}, {"detail", v.describe()}});
    o.doc = {{"name", cm.name}, {"valid", s.valid()}, {"violations", viol}};
    if (!s.valid()) {
        o.text = "invalid crossed module: " + s.violations.front().describe() + "\n";
        o.code = BadInput;
        return o;
    }
    std::optional<RationalMatrix> sigma;
    if (!a.section.empty()) {
        auto sj = io::read_file(a.section);
        io::Node sn(sj, "");
        sigma = io::matrix_from_json(sn.raw().is_object() ? sn.at("sigma") : sn, cm.n.dim(), s.coker.dim());
    }
    auto rep = xmod::analyze(cm, sigma);
    o.doc["dim_kernel"] = rep.structure.kernel.size();
    o.doc["dim_cokernel"] = rep.structure.coker.dim();
    o.doc["cokernel"] = io::lie_to_json(rep.structure.coker);
    o.doc["section"] = io::matrix_to_json(rep.cocycle.sigma);
    o.doc["omega3"] = io::ce_cochain_to_json(rep.cocycle.omega3);
    o.doc["class_zero"] = rep.solve.exact();
    o.doc["witness"] = rep.solve.witness ? io::ce_cochain_to_json(*rep.solve.witness) : json(nullptr);
    o.doc["certificate"] = rep.solve.certificate ? io::rat_list(*rep.solve.certificate) : json(nullptr);
    // Independence of the section, checked against one seeded alternative.
    std::mt19937_64 rng(g.seed);
    auto other = obstruction_3cocycle(cm, rep.structure, xmod::random_section(cm, rep.structure, rng));
    auto diff = other.omega3 - rep.cocycle.omega3;
    bool exact = diff.size() == 0 || diff.dim_v() == 0 || coboundary_solve(diff, rep.structure.module).exact();
    o.doc["section_change_exact"] = exact;
    o.text = "crossed module " + cm.name + ": ker dim " + std::to_string(rep.structure.kernel.size()) +
             ", coker dim " + std::to_string(rep.structure.coker.dim()) + "\n";
    o.text += "obstruction class in H^3: " + std::string(rep.solve.exact() ? "zero (witness found)" : "nonzero (certificate found)") + "\n";
    if (!exact) {
        o.code = Internal;
        o.text += "internal invariant violation: section change is not exact\n";
    }
    if (!a.expect.empty()) expect_value(o, "class", a.expect, rep.solve.exact() ? "zero" : "nonzero");
    return o;
}

inline Outcome cmd_corpus_list() {
    Outcome o;
    o.doc = json::array();
    for (const auto& e : corpus::entries()) {
        o.doc.push_back({{"name", e.name}, {"kind", e.kind}, {"description", e.description}});
        o.text += e.name + " [" + e.kind + "] " + e.description + "\n";
    }
    return o;
}

inline Outcome cmd_corpus_run(const std::string& filter, bool timing) {
    Outcome o;
    auto rep = corpus::corpus_run(filter);
    if (rep.entries.empty()) throw InputError("no corpus entry matches '" + filter + "'");
    o.doc = rep.to_json(timing);
    o.text = rep.to_text();
    o.code = rep.exit_code();
    return o;
}

inline Outcome cmd_corpus_export(const std::string& name, const std::string& dir) {
    Outcome o;
    for (const auto& e : corpus::entries()) {
        if (e.name != name) continue;
        std::filesystem::create_directories(dir);
        o.doc = json::array();
        for (const auto& [file, doc] : e.documents()) {
            auto path = (std::filesystem::path(dir) / file).string();
            write_file(path, io::emit(doc));
            o.doc.push_back(path);
            o.text += "wrote " + path + "\n";
        }
        return o;
    }
    throw InputError("unknown corpus entry '" + name + "'");
}

// ---------------------------------------------------------------- driver

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Obstruction classes for lifting bundles and crossed modules"};
    app.require_subcommand(1);
    app.fallthrough();
    Globals g;
    std::uint64_t budget = 0;
    app.add_option("--format", g.format, "output format")->check(CLI::IsMember({"json", "text"}));
    auto* budget_opt = app.add_option("--budget", budget, "lift-search node budget");
    app.add_option("--seed", g.seed, "seed for randomized checks; never changes mathematical results");

    CohomologyArgs ca;
    auto* coh = app.add_subcommand("cohomology", "cohomology groups of a complex, optionally classify a cocycle");
    coh->add_option("--complex", ca.complex, "complex file or builtin:<name>")->required();
    coh->add_option("--coeff", ca.coeff, "Z, Z/n, Q, Q^k or Q/Z");
    coh->add_option("--degree", ca.degree, "single degree");
    coh->add_option("--cocycle", ca.cocycle, "cochain file to classify");
    coh->add_option("--expect", ca.expect, "expected group description");

    BundleArgs ba;
    auto add_bundle = [&](CLI::App* sc, const std::string& expect_help) {
        sc->add_option("--complex", ba.complex, "complex file or builtin:<name>")->required();
        sc->add_option("--transitions", ba.transitions, "transition data file")->required();
        sc->add_option("--extension", ba.extension, "extension file or builtin:<name>")->required();
        sc->add_option("--expect", ba.expect, expect_help);
    };
    auto* obs = app.add_subcommand("obstruct", "degree-2 obstruction cocycle and its class");
    add_bundle(obs, "zero or nonzero");
    obs->add_option("--out", ba.out, "also write the JSON result here");
    auto* lift = app.add_subcommand("lift-search", "exhaustive search for a lift of the transition data");
    add_bundle(lift, "found, exhausted or truncated");

    ChaseArgs cha;
    auto* chase = app.add_subcommand("chase", "connecting-map chase of an obstruction cocycle");
    chase->add_option("--obstruction", cha.obstruction, "file with \"complex\" and \"h\"")->required();
    chase->add_option("--sequence", cha.sequence, "short exact coefficient sequence file");
    chase->add_option("--out", cha.out, "also write the JSON result here");
    chase->add_option("--expect-torsion-order", cha.expect_order, "integer or infinite");

    std::string triple;
    auto* dc = app.add_subcommand("deligne-check", "validate an (h, alpha, beta, omega) triple");
    dc->add_option("--triple", triple, "triple file or chase output")->required();

    XModArgs xa;
    auto* xm = app.add_subcommand("xmod-lie", "obstruction 3-class of a Lie crossed module");
    xm->add_option("--module", xa.module, "crossed module file")->required();
    xm->add_option("--section", xa.section, "section matrix file");
    xm->add_option("--expect", xa.expect, "zero or nonzero");

    auto* corp = app.add_subcommand("corpus", "built-in instances with independently stated expectations");
    corp->require_subcommand(1);
    auto* clist = corp->add_subcommand("list", "list entries");
    std::string filter = "*";
    bool no_timing = false;
    auto* crun = corp->add_subcommand("run", "run entries and compare against expectations");
    crun->add_option("--filter", filter, "name pattern with * and ?");
    crun->add_flag("--no-timing", no_timing, "omit timings for byte-stable output");
    std::string export_name, export_dir = ".";
    auto* cexp = corp->add_subcommand("export", "write the input documents of one entry");
    cexp->add_option("name", export_name, "entry name")->required();
    cexp->add_option("--out", export_dir, "directory");
    clist->fallthrough();
    crun->fallthrough();
    cexp->fallthrough();
    for (auto* sc : {coh, obs, lift, chase, dc, xm, corp}) sc->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return Pass;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return BadInput;
    }
    if (budget_opt->count()) g.budget = budget;

    Outcome o;
    try {
        if (*coh) o = cmd_cohomology(ca);
        else if (*obs) o = cmd_obstruct(ba);
        else if (*lift) o = cmd_lift_search(ba, g);
        else if (*chase) o = cmd_chase(cha);
        else if (*dc) o = cmd_deligne_check(triple);
        else if (*xm) o = cmd_xmod(xa, g);
        else if (*clist) o = cmd_corpus_list();
        else if (*crun) o = cmd_corpus_run(filter, !no_timing);
        else if (*cexp) o = cmd_corpus_export(export_name, export_dir);
    } catch (const io::SchemaError& e) {
        o = {{{"error", {{"kind", "input"}, {"path", e.path()}, {"message", e.what()}}}}, std::string(e.what()) + "\n", BadInput};
    } catch (const InputError& e) {
        o = {{{"error", {{"kind", "input"}, {"message", e.what()}}}}, std::string(e.what()) + "\n", BadInput};
    } catch (const InternalError& e) {
        o = {{{"error", {{"kind", "internal"}, {"message", e.what()}}}},
             std::string("internal invariant violation: ") + e.what() + "\n", Internal};
    }
    if (o.code == BadInput || o.code == Internal) {
        if (g.format == "json") out << io::emit(o.doc);
        err << o.text;
    } else if (g.format == "json") {
        out << io::emit(o.doc);
        if (o.code == Mismatch) err << o.text;
    } else {
        out << o.text;
    }
    return o.code;
}

}  // namespace obstructk::cli
