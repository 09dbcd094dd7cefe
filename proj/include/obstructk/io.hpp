#pragma once

#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "json.hpp"
#include "obstructk/cech.hpp"
#include "obstructk/cochain.hpp"
#include "obstructk/cohomology.hpp"
#include "obstructk/complex.hpp"
#include "obstructk/deligne.hpp"
#include "obstructk/errors.hpp"
#include "obstructk/exact_sequence.hpp"
#include "obstructk/extensions.hpp"
#include "obstructk/groups.hpp"
#include "obstructk/lie.hpp"
#include "obstructk/spaces.hpp"

namespace obstructk::io {

using json = nlohmann::json;

/// Document does not match the expected shape; `path` is a JSON pointer to the field.
class SchemaError : public InputError {
  public:
    SchemaError(std::string path, const std::string& msg)
        : InputError("schema error at " + (path.empty() ? std::string("/") : path) + ": " + msg), path_(std::move(path)) {}
    const std::string& path() const { return path_; }

  private:
    std::string path_;
};

/// Read-only view of a JSON value that remembers where it came from.
class Node {
  public:
    Node(const json& j, std::string path) : j_(&j), path_(std::move(path)) {}

    const json& raw() const { return *j_; }
    const std::string& path() const { return path_; }
    [[noreturn]] void fail(const std::string& msg) const { throw SchemaError(path_, msg); }

    bool has(const std::string& key) const { return j_->is_object() && j_->contains(key); }
    Node at(const std::string& key) const {
        if (!j_->is_object()) fail("expected an object");
        auto it = j_->find(key);
        if (it == j_->end()) throw SchemaError(path_ + "/" + key, "missing field");
        return {*it, path_ + "/" + key};
    }
    std::optional<Node> find(const std::string& key) const {
        if (!has(key)) return std::nullopt;
        return at(key);
    }
    std::vector<Node> items() const {
        if (!j_->is_array()) fail("expected an array");
        std::vector<Node> out;
        for (std::size_t i = 0; i < j_->size(); ++i) out.emplace_back((*j_)[i], path_ + "/" + std::to_string(i));
        return out;
    }
    std::string str() const {
        if (!j_->is_string()) fail("expected a string");
        return j_->get<std::string>();
    }
    long integer() const {
        if (!j_->is_number_integer()) fail("expected an integer");
        return j_->get<long>();
    }
    bool boolean() const {
        if (!j_->is_boolean()) fail("expected a boolean");
        return j_->get<bool>();
    }
    /// Rationals are "p/q" strings; plain JSON integers are accepted, floats are not.
    Rational rational() const {
        if (j_->is_number_integer()) return Rational(j_->get<long>());
        if (!j_->is_string()) fail("expected a rational as a \"p/q\" string");
        try {
            return parse_rational(j_->get<std::string>());
        } catch (const InputError& e) {
            fail(e.what());
        }
    }
    std::vector<int> int_list() const {
        std::vector<int> out;
        for (const auto& n : items()) out.push_back(static_cast<int>(n.integer()));
        return out;
    }
    std::vector<Rational> rational_list() const {
        std::vector<Rational> out;
        for (const auto& n : items()) out.push_back(n.rational());
        return out;
    }

  private:
    const json* j_;
    std::string path_;
};

inline json parse_text(const std::string& text, const std::string& origin = "document") {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw InputError(origin + ": malformed JSON: " + e.what());
    }
}

inline json read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_text(ss.str(), path);
}

/// Canonical text: two-space indent, keys sorted, trailing newline.
inline std::string emit(const json& j) { return j.dump(2) + "\n"; }

inline json rat(const Rational& q) { return to_string(q); }
inline json rat_list(const std::vector<Rational>& v) {
    json a = json::array();
    for (const auto& x : v) a.push_back(rat(x));
    return a;
}
inline json int_list(const std::vector<Integer>& v) {
    json a = json::array();
    for (const auto& x : v) a.push_back(to_string(x));
    return a;
}

// ---------------------------------------------------------------- complexes

inline json complex_to_json(const SimplicialComplex& x) {
    json j;
    j["vertices"] = x.vertices();
    j["maximal_simplices"] = x.maximal_simplices();
    return j;
}

/// "maximal_simplices" is a generating list completed silently; "simplices" is meant to be
/// closed, and every face the closure has to add is reported as a warning.
inline SimplicialComplex complex_from_json(const Node& n, std::vector<std::string>* warnings = nullptr) {
    if (n.raw().is_string()) {
        auto s = n.str();
        if (s.rfind("builtin:", 0) == 0) return spaces::by_name(s.substr(8));
        n.fail("expected a complex object or \"builtin:<name>\"");
    }
    const bool generating = n.has("maximal_simplices");
    if (generating && n.has("simplices")) n.fail("give either \"simplices\" or \"maximal_simplices\", not both");
    const Node list = n.at(generating ? "maximal_simplices" : "simplices");
    std::vector<int> vertices;
    if (auto v = n.find("vertices")) vertices = v->int_list();
    std::vector<Simplex> gens;
    for (const auto& s : list.items()) {
        auto t = s.int_list();
        if (t.empty()) s.fail("empty simplex");
        gens.push_back(t);
    }
    std::vector<std::string> local;
    SimplicialComplex x;
    try {
        x = SimplicialComplex::from_simplices(vertices, gens, &local);
    } catch (const InputError& e) {
        throw SchemaError(list.path(), e.what());
    }
    if (!warnings) return x;
    for (auto& w : local) {
        if (!generating && w.rfind("non-maximal", 0) == 0) continue;
        if (!n.has("vertices") && w.rfind("vertex ", 0) == 0) continue;
        warnings->push_back(std::move(w));
    }
    if (!generating) {
        std::set<Simplex> listed;
        for (auto g : gens) {
            std::sort(g.begin(), g.end());
            listed.insert(g);
        }
        std::vector<Simplex> added;
        for (int q = 1; q <= x.dimension(); ++q)
            for (const auto& s : x.simplices(q))
                if (!listed.count(s)) added.push_back(s);
        if (!added.empty()) {
            std::string faces;
            for (std::size_t i = 0; i < added.size() && i < 8; ++i) faces += " " + format_simplex(added[i]);
            if (added.size() > 8) faces += " ...";
            warnings->push_back("simplex list is not closed; closure added " + std::to_string(added.size()) +
                                " face(s):" + faces);
        }
    }
    return x;
}

/// `source` is a file path or "builtin:<name>".
inline SimplicialComplex load_complex(const std::string& source, std::vector<std::string>* warnings = nullptr) {
    if (source.rfind("builtin:", 0) == 0) return spaces::by_name(source.substr(8));
    auto j = read_file(source);
    return complex_from_json(Node(j, ""), warnings);
}

// ---------------------------------------------------------------- cochains and cohomology

inline json cochain_to_json(const Cochain& c) {
    json j;
    j["degree"] = c.degree();
    j["coefficient"] = c.coefficient().name();
    json vals = json::array();
    const auto& sx = c.complex().simplices(c.degree());
    for (std::size_t i = 0; i < c.size(); ++i) {
        auto v = c.at(i);
        bool nz = false;
        for (const auto& x : v) nz = nz || x != 0;
        if (!nz) continue;
        json e;
        e["simplex"] = sx[i];
        if (c.width() == 1)
            e["value"] = rat(v[0]);
        else
            e["value"] = rat_list(std::vector<Rational>(v.begin(), v.end()));
        vals.push_back(e);
    }
    j["values"] = vals;
    return j;
}

inline Cochain cochain_from_json(const Node& n, const ComplexPtr& x) {
    const int degree = static_cast<int>(n.at("degree").integer());
    if (degree < 0) n.at("degree").fail("negative degree");
    CoefficientSystem coeff = CoefficientSystem::integers();
    try {
        coeff = CoefficientSystem::parse(n.at("coefficient").str());
    } catch (const SchemaError&) {
        throw;
    } catch (const InputError& e) {
        n.at("coefficient").fail(e.what());
    }
    Cochain c(x, degree, coeff);
    for (const auto& e : n.at("values").items()) {
        auto s = e.at("simplex").int_list();
        std::sort(s.begin(), s.end());
        if (static_cast<int>(s.size()) != degree + 1) e.at("simplex").fail("simplex has the wrong dimension");
        auto idx = x->index_of(s);
        if (!idx) e.at("simplex").fail("simplex " + format_simplex(s) + " is not in the complex");
        auto raw = e.at("simplex").int_list();
        // Odd reorderings flip the sign of the value.
        int sign = 1;
        for (std::size_t a = 0; a < raw.size(); ++a)
            for (std::size_t b = a + 1; b < raw.size(); ++b)
                if (raw[a] > raw[b]) sign = -sign;
        auto put = [&](const Node& v, std::size_t comp) {
            Rational val = v.rational() * sign;
            if (!coeff.admits(val)) v.fail("value " + to_string(val) + " is not in " + coeff.name());
            c.set(*idx, val, comp);
        };
        auto v = e.at("value");
        if (coeff.width() == 1) {
            put(v, 0);
        } else {
            auto comps = v.items();
            if (comps.size() != coeff.width()) v.fail("expected " + std::to_string(coeff.width()) + " components");
            for (std::size_t k = 0; k < comps.size(); ++k) put(comps[k], k);
        }
    }
    return c;
}

inline json group_to_json(const CohomologyGroup& g) {
    json j;
    j["degree"] = g.degree;
    j["coefficient"] = g.coefficient.name();
    j["free_rank"] = g.free_rank;
    j["torsion"] = int_list(g.torsion);
    j["description"] = g.describe();
    json gens = json::array();
    for (const auto& c : g.generators) gens.push_back(cochain_to_json(c));
    j["generators"] = gens;
    return j;
}

inline json class_to_json(const CohomologyClass& c) {
    json j;
    j["group"] = c.group->describe();
    j["degree"] = c.group->degree;
    j["coefficient"] = c.group->coefficient.name();
    j["free_coords"] = rat_list(c.free_coords);
    j["torsion_coords"] = int_list(c.torsion_coords);
    j["zero"] = c.is_zero();
    auto ord = c.order();
    j["order"] = ord ? json(to_string(*ord)) : json("infinite");
    j["witness"] = c.witness ? cochain_to_json(*c.witness) : json(nullptr);
    return j;
}

// ---------------------------------------------------------------- groups and extensions

inline FiniteGroup finite_group_from_json(const Node& n) {
    if (n.raw().is_string()) {
        try {
            return groups::by_name(n.str());
        } catch (const InputError& e) {
            n.fail(e.what());
        }
    }
    std::vector<std::string> names;
    for (const auto& e : n.at("elements").items()) names.push_back(e.str());
    std::vector<std::vector<int>> table;
    for (const auto& row : n.at("table").items()) table.push_back(row.int_list());
    std::string name = n.has("name") ? n.at("name").str() : "G";
    try {
        return FiniteGroup(name, names, table);
    } catch (const InputError& e) {
        n.fail(e.what());
    }
}

inline json finite_group_to_json(const FiniteGroup& g) {
    json j;
    j["name"] = g.name();
    j["elements"] = g.element_names();
    j["table"] = g.table();
    return j;
}

using AnyExtension = std::variant<FiniteExtension, CircleExtension, SpinExtension<Rational>>;

inline AnyExtension extension_from_json(const Node& n) {
    const std::string kind = n.at("kind").str();
    try {
        if (kind == "builtin") {
            const std::string name = n.at("name").str();
            if (name == "Q8/V4") return extensions::q8_over_v4();
            if (name == "D4/V4") return extensions::d4_over_v4();
            if (name == "Z4/Z2") return extensions::z4_over_z2();
            n.at("name").fail("unknown built-in extension '" + name + "'");
        }
        if (kind == "split") {
            auto base = finite_group_from_json(n.at("base"));
            return extensions::split(static_cast<int>(n.at("n").integer()), base);
        }
        if (kind == "circle") return CircleExtension(n.has("section_offset") ? n.at("section_offset").rational() : 0);
        if (kind == "spin") return SpinExtension<Rational>{};
        if (kind == "finite") {
            auto total = std::make_shared<const FiniteGroup>(finite_group_from_json(n.at("total")));
            auto base = std::make_shared<const FiniteGroup>(finite_group_from_json(n.at("base")));
            std::vector<int> project(total->size(), -1), section(base->size(), -1), embed;
            auto pj = n.at("project");
            if (!pj.raw().is_object()) pj.fail("expected an object mapping total elements to base elements");
            for (auto it = pj.raw().begin(); it != pj.raw().end(); ++it) {
                Node v(it.value(), pj.path() + "/" + it.key());
                project[total->index_of(it.key())] = base->index_of(v.str());
            }
            for (const auto& e : n.at("embed").items()) embed.push_back(total->index_of(e.str()));
            auto sj = n.at("section");
            if (!sj.raw().is_object()) sj.fail("expected an object mapping base elements to total elements");
            for (auto it = sj.raw().begin(); it != sj.raw().end(); ++it) {
                Node v(it.value(), sj.path() + "/" + it.key());
                section[base->index_of(it.key())] = total->index_of(v.str());
            }
            for (int p : project)
                if (p < 0) pj.fail("projection table is incomplete");
            for (int s : section)
                if (s < 0) sj.fail("section table is incomplete");
            return FiniteExtension(n.has("name") ? n.at("name").str() : "extension", total, base, project, embed,
                                   section);
        }
    } catch (const SchemaError&) {
        throw;
    } catch (const InputError& e) {
        n.fail(e.what());
    }
    n.at("kind").fail("unknown extension kind '" + kind + "'");
}

inline json extension_to_json(const AnyExtension& ext) {
    return std::visit(
        [](const auto& e) -> json {
            using E = std::decay_t<decltype(e)>;
            json j;
            if constexpr (std::is_same_v<E, FiniteExtension>) {
                j["kind"] = "finite";
                j["name"] = e.name();
                j["total"] = finite_group_to_json(e.total_group());
                j["base"] = finite_group_to_json(e.base_group());
                json p, s, em = json::array();
                for (int a = 0; a < e.total_group().size(); ++a)
                    p[e.total_group().element_name(a)] = e.base_group().element_name(e.project_table()[a]);
                for (int g = 0; g < e.base_group().size(); ++g)
                    s[e.base_group().element_name(g)] = e.total_group().element_name(e.section_table()[g]);
                for (int z : e.embed_table()) em.push_back(e.total_group().element_name(z));
                j["project"] = p;
                j["section"] = s;
                j["embed"] = em;
            } else if constexpr (std::is_same_v<E, CircleExtension>) {
                j["kind"] = "circle";
                j["section_offset"] = rat(e.offset());
            } else {
                j["kind"] = "spin";
            }
            return j;
        },
        ext);
}

/// Name under which transition documents refer to the base group.
inline std::string base_group_name(const FiniteExtension& e) { return e.base_group().name(); }
inline std::string base_group_name(const CircleExtension&) { return "Q/Z"; }
inline std::string base_group_name(const SpinExtension<Rational>&) { return "SO3"; }

// Base-group element codecs.
inline int element_from_json(const Node& n, const FiniteGroupOps& g) {
    if (!n.raw().is_string()) n.fail("expected an element name");
    try {
        return g.group->index_of(n.str());
    } catch (const InputError& e) {
        n.fail(e.what());
    }
}
inline json element_to_json(int a, const FiniteGroupOps& g) { return g.group->element_name(a); }

inline Rational element_from_json(const Node& n, const CircleGroup&) { return frac(n.rational()); }
inline json element_to_json(const Rational& a, const CircleGroup&) { return rat(a); }

/// Rotation as a unit quaternion [a, b, c, d] or {"matrix": 3x3}.
inline Quaternion<Rational> element_from_json(const Node& n, const RotationGroup<Rational>&) {
    Quaternion<Rational> q;
    if (n.raw().is_object()) {
        auto rows = n.at("matrix").items();
        if (rows.size() != 3) n.at("matrix").fail("expected 3 rows");
        Matrix<Rational> m(3, 3);
        for (std::size_t r = 0; r < 3; ++r) {
            auto row = rows[r].rational_list();
            if (row.size() != 3) rows[r].fail("expected 3 entries");
            for (std::size_t c = 0; c < 3; ++c) m(r, c) = row[c];
        }
        if (!(m.transpose() * m == Matrix<Rational>::identity(3))) n.fail("matrix is not orthogonal");
        auto found = quaternion_from_rotation(m);
        if (!found) n.fail("rotation has no rational quaternion");
        q = *found;
        if (!(q.rotation_matrix() == m)) n.fail("matrix is not a rotation (determinant -1)");
    } else {
        auto v = n.rational_list();
        if (v.size() != 4) n.fail("expected a quaternion [a, b, c, d]");
        q = {v[0], v[1], v[2], v[3]};
        if (q.norm2() != 1) n.fail("quaternion is not a unit quaternion");
    }
    return canonical_sign(q);
}
inline json element_to_json(const Quaternion<Rational>& q, const RotationGroup<Rational>&) {
    auto c = canonical_sign(q);
    return rat_list({c.a, c.b, c.c, c.d});
}

template <class T>
json total_to_json(const T& a, const FiniteExtension& e) {
    return e.total_name(a);
}
inline json total_to_json(const Rational& a, const CircleExtension&) { return rat(a); }
inline json total_to_json(const Quaternion<Rational>& q, const SpinExtension<Rational>&) {
    return rat_list({q.a, q.b, q.c, q.d});
}

template <class Ext>
TransitionData<typename Ext::BaseGroup> transitions_from_json(const Node& n, const ComplexPtr& x, const Ext& ext) {
    TransitionData<typename Ext::BaseGroup> t{x, ext.base()};
    const std::string mode = n.at("mode").str();
    if (mode == "constant")
        t.mode = TransitionMode::Constant;
    else if (mode == "vertex-sampled")
        t.mode = TransitionMode::VertexSampled;
    else
        n.at("mode").fail("mode must be \"constant\" or \"vertex-sampled\"");
    const std::string gname = n.at("group").str();
    if (gname != base_group_name(ext))
        n.at("group").fail("group '" + gname + "' does not match the extension base '" + base_group_name(ext) + "'");
    const auto& g = ext.base();
    for (const auto& e : n.at("g").items()) {
        auto edge = e.at("edge").int_list();
        if (edge.size() != 2) e.at("edge").fail("an edge has two vertices");
        Edge key{edge[0], edge[1]};
        if (t.mode == TransitionMode::Constant) {
            auto v = element_from_json(e.at("value"), g);
            if (t.constant.count(key)) e.fail("duplicate entry for edge " + format_simplex(edge));
            t.constant[key] = v;
            auto rev = t.constant.find({edge[1], edge[0]});
            if (rev != t.constant.end() && !g.equal(rev->second, g.inv(v)))
                e.fail("antisymmetry violated on edge " + format_simplex(edge) + ": g_ji is not the inverse of g_ij");
        } else {
            auto& m = t.sampled[key];
            for (const auto& s : e.at("samples").items()) {
                auto site = s.at("site").int_list();
                std::sort(site.begin(), site.end());
                auto v = element_from_json(s.at("value"), g);
                m[site] = v;
                auto rev = t.sampled.find({edge[1], edge[0]});
                if (rev != t.sampled.end() && rev->second.count(site) && !g.equal(rev->second.at(site), g.inv(v)))
                    s.fail("antisymmetry violated on edge " + format_simplex(edge) + " at site " + format_simplex(site));
            }
        }
    }
    return t;
}

template <class Group>
json transitions_to_json(const TransitionData<Group>& t, const std::string& group_name) {
    json j;
    j["mode"] = mode_name(t.mode);
    j["group"] = group_name;
    json g = json::array();
    if (t.mode == TransitionMode::Constant) {
        for (const auto& [e, v] : t.constant) g.push_back({{"edge", {e.first, e.second}}, {"value", element_to_json(v, t.group)}});
    } else {
        for (const auto& [e, m] : t.sampled) {
            json samples = json::array();
            for (const auto& [site, v] : m) samples.push_back({{"site", site}, {"value", element_to_json(v, t.group)}});
            g.push_back({{"edge", {e.first, e.second}}, {"samples", samples}});
        }
    }
    j["g"] = g;
    return j;
}

inline json transition_report_to_json(const TransitionReport& r) {
    json j;
    j["valid"] = r.valid();
    json v = json::array();
    for (const auto& x : r.violations) {
        json e{{"kind", x.kind}, {"simplex", x.simplex}, {"detail", x.detail}};
        if (x.site) e["site"] = *x.site;
        v.push_back(e);
    }
    j["violations"] = v;
    return j;
}

template <class Ext>
json obstruction_to_json(const ObstructionResult<Ext>& r, const Ext& ext) {
    json j;
    j["extension"] = ext.name();
    j["complex"] = complex_to_json(r.h.complex());
    j["h"] = cochain_to_json(r.h);
    j["class2"] = class_to_json(r.class2);
    json lifts = json::array();
    for (const auto& [e, v] : r.lifts) lifts.push_back({{"edge", {e.first, e.second}}, {"value", total_to_json(v, ext)}});
    for (const auto& [e, m] : r.sampled_lifts) {
        json samples = json::array();
        for (const auto& [site, v] : m) samples.push_back({{"site", site}, {"value", total_to_json(v, ext)}});
        lifts.push_back({{"edge", {e.first, e.second}}, {"root", r.roots.at(e)}, {"samples", samples}});
    }
    j["lifts"] = lifts;
    json rep = json::array();
    for (const auto& t : r.constancy_report)
        rep.push_back({{"triple", t.triple}, {"sites", t.sites}, {"constant", t.constant}, {"value", rat(t.value)}});
    j["constancy_report"] = rep;
    j["conventions"] = {{"orientation", "ascending vertex order, sign (-1)^i for the i-th face"},
                        {"spanning_tree", "breadth-first over sample sites from the edge itself"},
                        {"h_storage", "i<j<k, h = fiber(lift_ij lift_jk lift_ik^-1)"}};
    return j;
}

template <class Ext>
json lift_search_to_json(const LiftSearchResult<typename Ext::Total>& r, const Ext& ext) {
    json j;
    j["status"] = status_name(r.status);
    j["search_space"] = to_string(r.search_space);
    j["budget"] = to_string(r.budget);
    j["nodes_visited"] = r.nodes_visited;
    j["pruned"] = r.pruned;
    json tw = json::array();
    for (const auto& [e, z] : r.twists)
        tw.push_back({{"edge", {e.first, e.second}}, {"twist", rat(z)}, {"lift", total_to_json(r.lifted.at(e), ext)}});
    j["twists"] = tw;
    return j;
}

// ---------------------------------------------------------------- sequences and the chase

inline ShortExactCoefficients sequence_from_json(const Node& n) {
    const std::string kind = n.at("kind").str();
    try {
        if (kind == "exponential")
            return ShortExactCoefficients::exponential(n.has("section_offset") ? n.at("section_offset").rational() : 0);
        if (kind == "multiplication")
            return ShortExactCoefficients::multiplication(n.at("n").integer(),
                                                          n.has("section_offset") ? n.at("section_offset").integer() : 0);
        if (kind == "mod-chain") return ShortExactCoefficients::mod_chain(n.at("m").integer(), n.at("n").integer());
    } catch (const SchemaError&) {
        throw;
    } catch (const InputError& e) {
        n.fail(e.what());
    }
    n.at("kind").fail("unknown sequence kind '" + kind + "'");
}

inline json triple_to_json(const DeligneTriple& t) {
    return {{"complex", complex_to_json(t.h.complex())},
            {"h", cochain_to_json(t.h)},
            {"alpha", cochain_to_json(t.alpha)},
            {"beta", cochain_to_json(t.beta)},
            {"omega", cochain_to_json(t.omega)},
            {"degenerate", t.degenerate}};
}

inline DeligneTriple triple_from_json(const Node& n) {
    auto x = share(complex_from_json(n.at("complex")));
    return {cochain_from_json(n.at("h"), x), cochain_from_json(n.at("alpha"), x), cochain_from_json(n.at("beta"), x),
            cochain_from_json(n.at("omega"), x), n.at("degenerate").boolean()};
}

inline json three_class_to_json(const ThreeClassReport& r) {
    return {{"integral_class", class_to_json(r.integral_class)},
            {"torsion_order", r.torsion_order ? json(to_string(*r.torsion_order)) : json("infinite")},
            {"rational_class", class_to_json(r.rational_class)},
            {"rational_witness", r.rational_witness ? cochain_to_json(*r.rational_witness) : json(nullptr)}};
}

inline json coordinates_to_json(const ClassCoordinates& c) {
    return {{"free", rat_list(c.free)}, {"torsion", int_list(c.torsion)}};
}

inline json chase_to_json(const ChaseOutput& c) {
    json j{{"triple", triple_to_json(c.triple)}, {"report", three_class_to_json(c.report)}, {"class2", class_to_json(c.class2)}};
    if (c.routes)
        j["route_agreement"] = {{"agree", c.routes->agree()},
                                {"via_form", coordinates_to_json(c.routes->via_form)},
                                {"via_class", coordinates_to_json(c.routes->via_class)}};
    else
        j["route_agreement"] = nullptr;
    return j;
}

inline json deligne_report_to_json(const DeligneReport& r) {
    json conds = json::array();
    for (std::size_t i = 0; i < r.conditions.size(); ++i) {
        const auto& c = r.conditions[i];
        conds.push_back({{"index", i + 1}, {"name", c.name}, {"passed", c.passed}, {"simplices", c.simplices}, {"detail", c.detail}});
    }
    return {{"valid", r.valid()}, {"conditions", conds}};
}

// ---------------------------------------------------------------- Lie algebras

inline json matrix_to_json(const RationalMatrix& m) {
    json rows = json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(rat(m(r, c)));
        rows.push_back(row);
    }
    return rows;
}

inline RationalMatrix matrix_from_json(const Node& n, std::size_t rows, std::size_t cols) {
    auto rs = n.items();
    if (rs.size() != rows) n.fail("expected " + std::to_string(rows) + " rows");
    RationalMatrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
        auto v = rs[r].rational_list();
        if (v.size() != cols) rs[r].fail("expected " + std::to_string(cols) + " entries");
        for (std::size_t c = 0; c < cols; ++c) m(r, c) = v[c];
    }
    return m;
}

/// {"dim": d, "brackets": [{"i":0,"j":1,"value":[...]}]} or a built-in name.
inline LieAlgebra lie_from_json(const Node& n) {
    try {
        if (n.raw().is_string()) return lie::by_name(n.str());
        const auto d = static_cast<std::size_t>(n.at("dim").integer());
        std::vector<std::tuple<std::size_t, std::size_t, RationalVector>> br;
        for (const auto& b : n.at("brackets").items())
            br.emplace_back(static_cast<std::size_t>(b.at("i").integer()), static_cast<std::size_t>(b.at("j").integer()),
                            b.at("value").rational_list());
        return LieAlgebra::from_brackets(n.has("name") ? n.at("name").str() : "L", d, br);
    } catch (const SchemaError&) {
        throw;
    } catch (const InputError& e) {
        n.fail(e.what());
    }
}

inline json lie_to_json(const LieAlgebra& L) {
    json br = json::array();
    for (std::size_t i = 0; i < L.dim(); ++i)
        for (std::size_t j = i + 1; j < L.dim(); ++j)
            if (!is_zero(L.bracket_basis(i, j))) br.push_back({{"i", i}, {"j", j}, {"value", rat_list(L.bracket_basis(i, j))}});
    return {{"name", L.name()}, {"dim", L.dim()}, {"brackets", br}};
}

/// {"builtin": "ad(heis3)" | "id(sl2)"} or explicit {"m", "n", "mu", "eta"}.
inline CrossedModuleLie xmod_from_json(const Node& n) {
    if (auto b = n.find("builtin")) {
        const std::string name = b->str();
        try {
            if (name.rfind("ad(", 0) == 0 && name.back() == ')')
                return xmod::adjoint(lie::by_name(name.substr(3, name.size() - 4)));
            if (name.rfind("id(", 0) == 0 && name.back() == ')')
                return xmod::identity(lie::by_name(name.substr(3, name.size() - 4)));
        } catch (const InputError& e) {
            b->fail(e.what());
        }
        b->fail("unknown built-in crossed module '" + name + "'");
    }
    auto m = lie_from_json(n.at("m"));
    auto nn = lie_from_json(n.at("n"));
    auto mu = matrix_from_json(n.at("mu"), nn.dim(), m.dim());
    std::vector<RationalMatrix> eta;
    auto es = n.at("eta").items();
    if (es.size() != nn.dim()) n.at("eta").fail("expected one matrix per basis element of n");
    for (const auto& e : es) eta.push_back(matrix_from_json(e, m.dim(), m.dim()));
    return {n.has("name") ? n.at("name").str() : "crossed-module", m, nn, mu, eta};
}

inline json xmod_to_json(const CrossedModuleLie& cm) {
    json eta = json::array();
    for (const auto& e : cm.eta) eta.push_back(matrix_to_json(e));
    return {{"name", cm.name}, {"m", lie_to_json(cm.m)}, {"n", lie_to_json(cm.n)}, {"mu", matrix_to_json(cm.mu)}, {"eta", eta}};
}

inline json ce_cochain_to_json(const CECochain& c) {
    json vals = json::array();
    for (std::size_t i = 0; i < c.size(); ++i)
        if (!is_zero(c.at(i))) vals.push_back({{"args", c.subsets()[i]}, {"value", rat_list(c.at(i))}});
    return {{"degree", c.degree()}, {"dim_g", c.dim_g()}, {"dim_v", c.dim_v()}, {"values", vals}};
}

}  // namespace obstructk::io
