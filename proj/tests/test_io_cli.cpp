#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include "catch_amalgamated.hpp"
#include "obstructk/cli.hpp"

using namespace obstructk;
namespace fs = std::filesystem;

namespace {

const std::string data_dir = OBSTRUCTK_DATA;

std::string slurp(const std::string& path) {
    std::ifstream f(path);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

struct Run {
    int code;
    std::string out, err;
};

Run run_cli(std::vector<std::string> args) {
    args.insert(args.begin(), "obstructk");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    int code = obstructk::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

/// Runs the built binary and returns its exit status.
int binary(const std::string& args) {
    int status = std::system((std::string(OBSTRUCTK_CLI) + " " + args + " > /dev/null 2>&1").c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

fs::path temp_dir() {
    auto d = fs::temp_directory_path() / "obstructk-tests";
    fs::create_directories(d);
    return d;
}

}  // namespace

TEST_CASE("complex documents round-trip byte for byte") {
    for (const auto* name : {"octahedron", "torus", "rp2"}) {
        INFO(name);
        const auto path = data_dir + "/" + name + ".json";
        const auto text = slurp(path);
        auto j = io::parse_text(text);
        auto x = io::complex_from_json(io::Node(j, ""));
        CHECK(io::emit(io::complex_to_json(x)) == text);
        CHECK(io::emit(j) == text);
    }
}

TEST_CASE("exported corpus documents round-trip byte for byte") {
    for (const auto& entry : fs::recursive_directory_iterator(data_dir)) {
        if (entry.path().extension() != ".json") continue;
        // Hand-written negative examples are not in emitter layout.
        if (entry.path().parent_path() == fs::path(data_dir) && entry.path().stem() != "octahedron" &&
            entry.path().stem() != "torus" && entry.path().stem() != "rp2")
            continue;
        const auto text = slurp(entry.path().string());
        INFO(entry.path().string());
        CHECK(io::emit(io::parse_text(text)) == text);
    }
    auto x = share(spaces::octahedron());
    auto j = io::read_file(data_dir + "/circle-octahedron-winding/transitions.json");
    CircleExtension ext;
    auto t = io::transitions_from_json(io::Node(j, ""), x, ext);
    CHECK(io::emit(io::transitions_to_json(t, "Q/Z")) == io::emit(j));
}

TEST_CASE("a non-closed simplex list is closed with a warning") {
    std::vector<std::string> warnings;
    auto j = io::read_file(data_dir + "/non_closed.json");
    auto x = io::complex_from_json(io::Node(j, ""), &warnings);
    CHECK(x.count(1) == 3);
    REQUIRE(warnings.size() == 1);
    CHECK(warnings[0].find("not closed") != std::string::npos);
    CHECK(warnings[0].find("[0,1]") != std::string::npos);
    auto maximal = io::parse_text(R"({"maximal_simplices": [[0, 1, 2]]})");
    warnings.clear();
    io::complex_from_json(io::Node(maximal, ""), &warnings);
    CHECK(warnings.empty());
}

TEST_CASE("antisymmetry violation is a structured error naming the edge") {
    auto j = io::read_file(data_dir + "/antisymmetry_violation.json");
    auto ext = extensions::q8_over_v4();
    try {
        io::transitions_from_json(io::Node(j, ""), share(spaces::triangle()), ext);
        FAIL("no error");
    } catch (const io::SchemaError& e) {
        CHECK(e.path() == "/g/1");
        CHECK(std::string(e.what()).find("antisymmetry") != std::string::npos);
        CHECK(std::string(e.what()).find("[1,0]") != std::string::npos);
    }
    auto r = run_cli({"obstruct", "--complex", "builtin:triangle", "--transitions", data_dir + "/antisymmetry_violation.json",
                  "--extension", "builtin:Q8/V4"});
    CHECK(r.code == 2);
    auto doc = io::parse_text(r.out);
    CHECK(doc["error"]["path"] == "/g/1");
}

TEST_CASE("rationals are written as p/q strings and floats are rejected") {
    auto x = share(spaces::torus());
    Cochain c(x, 1, CoefficientSystem::rationals());
    c.set(2, Rational(-3, 4));
    auto j = io::cochain_to_json(c);
    CHECK(j["values"][0]["value"] == "-3/4");
    CHECK(io::cochain_from_json(io::Node(j, ""), x) == c);
    j["values"][0]["value"] = 0.75;
    CHECK_THROWS_AS(io::cochain_from_json(io::Node(j, ""), x), io::SchemaError);
    j["values"][0]["value"] = "1/3";
    j["coefficient"] = "Z";
    CHECK_THROWS_AS(io::cochain_from_json(io::Node(j, ""), x), io::SchemaError);
}

TEST_CASE("cochains given on unsorted simplices pick up the permutation sign") {
    auto x = share(spaces::triangle());
    auto j = io::parse_text(R"({"degree": 1, "coefficient": "Z", "values": [{"simplex": [1, 0], "value": "2"}]})");
    auto c = io::cochain_from_json(io::Node(j, ""), x);
    CHECK(c[Simplex{0, 1}] == Rational(-2));
}

TEST_CASE("triples and crossed modules round-trip") {
    auto x = share(spaces::torus());
    auto gen = cohomology_group(x, CoefficientSystem::integers(), 2)->generators.at(0);
    auto h = gen.map_values(CoefficientSystem::rationals_mod_integers(), [](const Rational& v) { return v / 3; });
    auto t = chase_pipeline(h, ShortExactCoefficients::exponential()).triple;
    auto j = io::triple_to_json(t);
    auto back = io::triple_from_json(io::Node(j, ""));
    CHECK(back.h == t.h);
    CHECK(back.alpha == t.alpha);
    CHECK(io::emit(io::triple_to_json(back)) == io::emit(j));
    auto cm = xmod::adjoint(lie::heisenberg());
    auto cj = io::xmod_to_json(cm);
    CHECK(io::emit(io::xmod_to_json(io::xmod_from_json(io::Node(cj, "")))) == io::emit(cj));
}

TEST_CASE("extensions round-trip through their documents") {
    for (const auto& e : {extensions::q8_over_v4(), extensions::d4_over_v4(), extensions::split(2, groups::klein_four())}) {
        auto j = io::extension_to_json(e);
        auto back = std::get<FiniteExtension>(io::extension_from_json(io::Node(j, "")));
        CHECK(back.section_table() == e.section_table());
        CHECK(back.project_table() == e.project_table());
    }
}

TEST_CASE("CLI pipeline: obstruct, chase, deligne-check") {
    const auto dir = temp_dir();
    const auto q8 = data_dir + "/q8-v4-torus/";
    auto r = run_cli({"obstruct", "--complex", q8 + "complex.json", "--transitions", q8 + "transitions.json", "--extension",
                  q8 + "extension.json", "--out", (dir / "obs.json").string(), "--expect", "nonzero"});
    REQUIRE(r.code == 0);
    auto doc = io::parse_text(r.out);
    CHECK(doc["class2"]["zero"] == false);
    CHECK(doc["class2"]["group"] == "Z/2");
    r = run_cli({"chase", "--obstruction", (dir / "obs.json").string(), "--out", (dir / "chase.json").string()});
    REQUIRE(r.code == 0);
    r = run_cli({"deligne-check", "--triple", (dir / "chase.json").string()});
    CHECK(r.code == 0);
    CHECK(io::parse_text(r.out)["valid"] == true);

    // A tampered triple is rejected with exit code 1.
    auto chase = io::read_file((dir / "chase.json").string());
    chase["triple"]["alpha"]["values"] = nlohmann::json::array({{{"simplex", {0, 1, 3}}, {"value", "1/3"}}});
    std::ofstream((dir / "bad.json").string()) << io::emit(chase);
    r = run_cli({"--format", "text", "deligne-check", "--triple", (dir / "bad.json").string()});
    CHECK(r.code == 1);
    CHECK(r.out.find("triple rejected") != std::string::npos);
}

TEST_CASE("CLI exit codes") {
    const auto q8 = data_dir + "/q8-v4-torus/";
    CHECK(run_cli({"obstruct", "--complex", q8 + "complex.json", "--transitions", q8 + "transitions.json", "--extension",
               q8 + "extension.json", "--expect", "zero"})
              .code == 1);
    CHECK(run_cli({"lift-search", "--complex", q8 + "complex.json", "--transitions", q8 + "transitions.json",
               "--extension", "builtin:Q8/V4", "--expect", "exhausted"})
              .code == 0);
    CHECK(run_cli({"--budget", "10", "lift-search", "--complex", q8 + "complex.json", "--transitions",
               q8 + "transitions.json", "--extension", "builtin:Q8/V4", "--expect", "truncated"})
              .code == 0);
    CHECK(run_cli({"cohomology", "--complex", "builtin:rp2", "--degree", "2", "--expect", "Z/2"}).code == 0);
    CHECK(run_cli({"cohomology", "--complex", "builtin:rp2", "--degree", "2", "--expect", "Z"}).code == 1);
    CHECK(run_cli({"cohomology", "--complex", "builtin:nowhere"}).code == 2);
    CHECK(run_cli({"cohomology", "--complex", "/nonexistent.json"}).code == 2);
    CHECK(run_cli({"cohomology", "--complex", "builtin:rp2", "--coeff", "Z/0"}).code == 2);
    CHECK(run_cli({"cohomology"}).code == 2);
    CHECK(run_cli({"--format", "yaml", "corpus", "list"}).code == 2);
    CHECK(run_cli({"chase", "--obstruction", data_dir + "/rp2xs1-torsion-gerbe/obstruction.json"}).code == 2);
    CHECK(run_cli({"chase", "--obstruction", data_dir + "/rp2xs1-torsion-gerbe/obstruction.json", "--sequence",
               data_dir + "/rp2xs1-torsion-gerbe/sequence.json", "--expect-torsion-order", "2"})
              .code == 0);
    CHECK(run_cli({"xmod-lie", "--module", data_dir + "/xmod-ad-heis3/module.json", "--expect", "nonzero"}).code == 1);
}

TEST_CASE("xmod-lie accepts an explicit section") {
    const auto dir = temp_dir();
    auto cm = xmod::adjoint(lie::heisenberg());
    auto s = validate_crossed_module(cm);
    auto sigma = lin::add(default_section(s), cm.mu * RationalMatrix(3, s.coker.dim()));
    sigma(0, 0) += 0;
    std::ofstream((dir / "section.json").string()) << io::emit({{"sigma", io::matrix_to_json(sigma)}});
    auto r = run_cli({"xmod-lie", "--module", data_dir + "/xmod-ad-heis3/module.json", "--section",
                  (dir / "section.json").string()});
    CHECK(r.code == 0);
    std::ofstream((dir / "bad_section.json").string()) << io::emit({{"sigma", io::matrix_to_json(RationalMatrix(6, 4))}});
    CHECK(run_cli({"xmod-lie", "--module", data_dir + "/xmod-ad-heis3/module.json", "--section",
               (dir / "bad_section.json").string()})
              .code == 2);
}

TEST_CASE("seed does not change mathematical output") {
    auto a = run_cli({"--seed", "1", "xmod-lie", "--module", data_dir + "/xmod-ad-heis3/module.json"});
    auto b = run_cli({"--seed", "99", "xmod-lie", "--module", data_dir + "/xmod-ad-heis3/module.json"});
    CHECK(a.out == b.out);
}

TEST_CASE("corpus run without timing is byte-stable") {
    auto a = run_cli({"corpus", "run", "--filter", "q8-*", "--no-timing"});
    auto b = run_cli({"corpus", "run", "--filter", "q8-*", "--no-timing"});
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(run_cli({"corpus", "run", "--filter", "no-such-entry"}).code == 2);
}

TEST_CASE("the installed binary reports the same exit codes") {
    const auto q8 = data_dir + "/q8-v4-torus/";
    const auto bundle = " --complex " + q8 + "complex.json --transitions " + q8 + "transitions.json --extension " + q8 +
                        "extension.json";
    CHECK(binary("obstruct" + bundle + " --expect nonzero") == 0);
    CHECK(binary("obstruct" + bundle + " --expect zero") == 1);
    CHECK(binary("obstruct --complex builtin:triangle --transitions " + data_dir +
                 "/antisymmetry_violation.json --extension builtin:Q8/V4") == 2);
    CHECK(binary("--format text corpus list") == 0);
}
