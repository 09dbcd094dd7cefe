#include "catch_amalgamated.hpp"
#include "obstructk/corpus.hpp"

using namespace obstructk;
using namespace obstructk::corpus;

namespace {

const RunReport& full_run() {
    static const RunReport rep = corpus_run();
    return rep;
}

const EntryReport& entry(const std::string& name) {
    for (const auto& e : full_run().entries)
        if (e.name == name) return e;
    throw std::runtime_error("no entry " + name);
}

const Check& check(const EntryReport& e, const std::string& quantity) {
    for (const auto& c : e.checks)
        if (c.quantity == quantity) return c;
    throw std::runtime_error("no check " + quantity + " in " + e.name);
}

}  // namespace

TEST_CASE("every corpus entry passes") {
    const auto& rep = full_run();
    CHECK(rep.entries.size() == entries().size());
    for (const auto& e : rep.entries) {
        INFO(e.name << ": " << e.error);
        for (const auto& c : e.checks) {
            INFO(c.quantity << " expected " << c.expected << " computed " << c.computed);
            CHECK(c.passed);
        }
        CHECK(e.passed);
        CHECK(e.error_code == 0);
    }
    CHECK(rep.exit_code() == 0);
}

TEST_CASE("every check records provenance and an oracle") {
    for (const auto& e : full_run().entries) {
        CHECK_FALSE(e.checks.empty());
        for (const auto& c : e.checks) {
            INFO(e.name << " / " << c.quantity);
            CHECK_FALSE(c.provenance.empty());
            CHECK_FALSE(c.oracle.empty());
        }
    }
}

TEST_CASE("every entry kind is represented") {
    std::set<std::string> kinds;
    for (const auto& e : entries()) kinds.insert(e.kind);
    CHECK(kinds == std::set<std::string>{"bundle-circle", "bundle-finite", "bundle-spin", "cohomology", "gerbe", "xmod"});
}

TEST_CASE("trivial bundle lifts") {
    const auto& e = entry("trivial-bundle-any");
    CHECK(check(e, "class2 zero").computed == "true");
    CHECK(check(e, "lift exists").computed == "true");
}

TEST_CASE("Q8 over V4 on the torus obstructs and has no lift") {
    const auto& e = entry("q8-v4-torus");
    CHECK(check(e, "class2 zero").computed == "false");
    CHECK(check(e, "class2 order").computed == "2");
    CHECK(check(e, "lift exists").computed == "false");
    CHECK(e.details["lift_search"]["status"] == "exhausted");
}

TEST_CASE("torsion gerbe on RP2 x S1") {
    const auto& e = entry("rp2xs1-torsion-gerbe");
    CHECK(check(e, "torsion_order").computed == "2");
    CHECK(check(e, "rational class zero with witness").computed == "true");
    CHECK(check(e, "route agreement").computed == "true");
}

TEST_CASE("winding bundle on the octahedron") {
    const auto& e = entry("circle-octahedron-winding");
    CHECK(check(e, "|Chern number|").computed == "1");
    CHECK(check(e, "class2 order").computed == "infinite");
}

TEST_CASE("glob matching") {
    CHECK(glob_match("*", "anything"));
    CHECK(glob_match("q8-*", "q8-v4-torus"));
    CHECK_FALSE(glob_match("q8-*", "d4-v4-torus"));
    CHECK(glob_match("*-torus", "split-v4-torus"));
    CHECK(glob_match("space-?p2", "space-rp2"));
    CHECK_FALSE(glob_match("space-?p2", "space-rp2xs1"));
    CHECK(glob_match("*v4*rp2*", "q8-v4-rp2xs1"));
    CHECK(glob_match("", ""));
    CHECK_FALSE(glob_match("", "a"));
    auto rep = corpus_run("space-*");
    CHECK(rep.entries.size() == space_instances().size());
    CHECK(corpus_run("no-such-*").entries.empty());
}

TEST_CASE("report without timing is deterministic") {
    auto a = corpus_run("*gerbe*").to_json(false).dump();
    auto b = corpus_run("*gerbe*").to_json(false).dump();
    CHECK(a == b);
    CHECK(a.find("millis") == std::string::npos);
    CHECK(corpus_run("*gerbe*").to_json(true).dump().find("millis") != std::string::npos);
}

TEST_CASE("exit code takes the most severe failure") {
    RunReport rep;
    rep.entries.resize(3);
    CHECK(rep.exit_code() == 0);
    rep.entries[0].expect("x", "1", "2", "p", "o");
    CHECK_FALSE(rep.passed());
    CHECK(rep.exit_code() == 1);
    rep.entries[1].passed = false;
    rep.entries[1].error_code = 3;
    rep.entries[2].passed = false;
    rep.entries[2].error_code = 2;
    CHECK(rep.exit_code() == 3);
    CHECK(rep.to_text().find("FAIL") != std::string::npos);
}

TEST_CASE("entry runner classifies thrown errors") {
    CorpusEntry bad{"bad", "test", "", [](EntryReport&) { throw InputError("nope"); }, {}};
    auto r = run_entry(bad);
    CHECK(r.error_code == 2);
    CHECK_FALSE(r.passed);
    CorpusEntry broken{"broken", "test", "", [](EntryReport&) { throw InternalError("invariant"); }, {}};
    CHECK(run_entry(broken).error_code == 3);
}

TEST_CASE("exported documents load back into equal instances") {
    for (const auto& e : entries()) {
        if (e.kind != "bundle-finite") continue;
        INFO(e.name);
        auto docs = e.documents();
        auto x = share(io::complex_from_json(io::Node(docs.at("complex.json"), "")));
        auto ext = std::get<FiniteExtension>(io::extension_from_json(io::Node(docs.at("extension.json"), "")));
        auto t = io::transitions_from_json(io::Node(docs.at("transitions.json"), ""), x, ext);
        CHECK(validate_transition(t).valid());
        CHECK(io::transitions_to_json(t, io::base_group_name(ext)) == docs.at("transitions.json"));
    }
}
