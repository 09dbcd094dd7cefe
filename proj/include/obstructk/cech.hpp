#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "obstructk/cochain.hpp"
#include "obstructk/cohomology.hpp"
#include "obstructk/complex.hpp"
#include "obstructk/errors.hpp"
#include "obstructk/extensions.hpp"

namespace obstructk {

enum class TransitionMode { Constant, VertexSampled };

inline std::string mode_name(TransitionMode m) { return m == TransitionMode::Constant ? "constant" : "vertex-sampled"; }

using Edge = std::pair<int, int>;

/// Transition functions g_ij on the star cover.
///
/// Constant mode stores one element per ordered pair. Sampled mode stores one element per
/// sample site of U_ij, the sites being the simplices that contain the edge {i, j}.
/// A pair may be given in either order; the missing order is filled in by inversion.
template <class Group>
struct TransitionData {
    using Element = typename Group::Element;

    ComplexPtr complex;
    Group group;
    TransitionMode mode = TransitionMode::Constant;
    std::map<Edge, Element> constant;
    std::map<Edge, std::map<Simplex, Element>> sampled;

    /// g_ij (Constant mode).
    Element value(int i, int j) const {
        if (auto it = constant.find({i, j}); it != constant.end()) return it->second;
        if (auto it = constant.find({j, i}); it != constant.end()) return group.inv(it->second);
        throw InputError("no transition value for edge " + format_simplex({i, j}));
    }

    /// g_ij at a sample site (Sampled mode).
    Element value(int i, int j, const Simplex& site) const {
        auto lookup = [&](int a, int b) -> std::optional<Element> {
            auto it = sampled.find({a, b});
            if (it == sampled.end()) return std::nullopt;
            auto jt = it->second.find(site);
            if (jt == it->second.end()) return std::nullopt;
            return jt->second;
        };
        if (auto v = lookup(i, j)) return *v;
        if (auto v = lookup(j, i)) return group.inv(*v);
        throw InputError("no transition sample for edge " + format_simplex({i, j}) + " at " + format_simplex(site));
    }

    /// Sites of U_ij, ascending.
    std::vector<Simplex> sites(int i, int j) const {
        auto s = complex->cofaces(Simplex{std::min(i, j), std::max(i, j)});
        std::sort(s.begin(), s.end());
        return s;
    }

    std::vector<Edge> keys() const {
        std::vector<Edge> out;
        if (mode == TransitionMode::Constant)
            for (const auto& [e, v] : constant) out.push_back(e);
        else
            for (const auto& [e, v] : sampled) out.push_back(e);
        return out;
    }
};

struct TransitionViolation {
    std::string kind;  // unknown-edge, missing, unknown-site, antisymmetry, cocycle
    Simplex simplex;
    std::optional<Simplex> site;
    std::string detail;

    std::string describe() const {
        std::string out = kind + " at " + format_simplex(simplex);
        if (site) out += " (site " + format_simplex(*site) + ")";
        if (!detail.empty()) out += ": " + detail;
        return out;
    }
};

struct TransitionReport {
    std::vector<TransitionViolation> violations;
    bool valid() const { return violations.empty(); }
};

template <class Group>
TransitionReport validate_transition(const TransitionData<Group>& t) {
    TransitionReport rep;
    const auto& x = *t.complex;
    const auto& g = t.group;
    auto add = [&](std::string kind, Simplex s, std::optional<Simplex> site, std::string detail) {
        rep.violations.push_back({std::move(kind), std::move(s), std::move(site), std::move(detail)});
    };
    auto is_edge = [&](const Edge& e) { return e.first != e.second && x.contains(Simplex{std::min(e.first, e.second), std::max(e.first, e.second)}); };

    for (const auto& e : t.keys())
        if (!is_edge(e)) add("unknown-edge", {e.first, e.second}, std::nullopt, "pair is not an edge of the complex");

    // Per-edge presence, site coverage and antisymmetry.
    std::set<Simplex> bad_edges;
    for (const auto& edge : x.simplices(1)) {
        const int i = edge[0], j = edge[1];
        if (t.mode == TransitionMode::Constant) {
            auto a = t.constant.find({i, j}), b = t.constant.find({j, i});
            if (a == t.constant.end() && b == t.constant.end()) {
                add("missing", edge, std::nullopt, "no transition value");
                bad_edges.insert(edge);
            } else if (a != t.constant.end() && b != t.constant.end() &&
                       !g.equal(b->second, g.inv(a->second))) {
                add("antisymmetry", edge, std::nullopt,
                    "g_ji = " + g.element_name(b->second) + " but g_ij^-1 = " + g.element_name(g.inv(a->second)));
                bad_edges.insert(edge);
            }
        } else {
            auto a = t.sampled.find({i, j}), b = t.sampled.find({j, i});
            const auto sites = t.sites(i, j);
            const std::set<Simplex> site_set(sites.begin(), sites.end());
            for (auto it : {a, b}) {
                if (it == t.sampled.end()) continue;
                for (const auto& [s, v] : it->second)
                    if (!site_set.count(s)) {
                        add("unknown-site", edge, s, "not a simplex containing the edge");
                        bad_edges.insert(edge);
                    }
            }
            for (const auto& s : sites) {
                bool has_a = a != t.sampled.end() && a->second.count(s);
                bool has_b = b != t.sampled.end() && b->second.count(s);
                if (!has_a && !has_b) {
                    add("missing", edge, s, "no sample at this site");
                    bad_edges.insert(edge);
                } else if (has_a && has_b && !g.equal(b->second.at(s), g.inv(a->second.at(s)))) {
                    add("antisymmetry", edge, s, "g_ji is not the inverse of g_ij");
                    bad_edges.insert(edge);
                }
            }
        }
    }

    // Cocycle condition g_ij g_jk g_ki = e on every triangle.
    for (const auto& tri : x.simplices(2)) {
        const int i = tri[0], j = tri[1], k = tri[2];
        if (bad_edges.count({i, j}) || bad_edges.count({j, k}) || bad_edges.count({i, k})) continue;
        if (t.mode == TransitionMode::Constant) {
            auto p = g.mul(g.mul(t.value(i, j), t.value(j, k)), t.value(k, i));
            if (!g.equal(p, g.identity())) add("cocycle", tri, std::nullopt, "g_ij g_jk g_ki = " + g.element_name(p));
        } else {
            for (const auto& s : x.cofaces(tri)) {
                auto p = g.mul(g.mul(t.value(i, j, s), t.value(j, k, s)), t.value(k, i, s));
                if (!g.equal(p, g.identity())) add("cocycle", tri, s, "g_ij g_jk g_ki = " + g.element_name(p));
            }
        }
    }
    return rep;
}

/// Per-triple record of the sampled defect.
struct TripleRecord {
    Simplex triple;
    std::size_t sites = 0;
    bool constant = true;
    Rational value = 0;
};

template <class Ext>
struct ObstructionResult {
    using Total = typename Ext::Total;

    Cochain h;                                           // degree 2 over the fiber, stored for i<j<k
    std::map<Edge, Total> lifts;                         // Constant mode, i<j
    std::map<Edge, std::map<Simplex, Total>> sampled_lifts;  // Sampled mode, i<j
    std::map<Edge, Simplex> roots;                       // spanning-tree roots used (Sampled mode)
    GroupPtr group;                                      // H^2(nerve; fiber)
    CohomologyClass class2;
    std::vector<TripleRecord> constancy_report;
};

struct LiftOptions {
    /// When set, each spanning tree is rooted at a pseudo-randomly chosen site instead of the edge itself.
    std::optional<std::uint64_t> root_seed;
};

namespace detail {

inline std::size_t pick_root(const std::vector<Simplex>& sites, const Edge& e, const LiftOptions& opt) {
    if (!opt.root_seed) {
        // The edge itself: the site spanned by the two minimal vertices.
        return static_cast<std::size_t>(
            std::find(sites.begin(), sites.end(), Simplex{e.first, e.second}) - sites.begin());
    }
    std::uint64_t h = *opt.root_seed * 0x9e3779b97f4a7c15ULL + static_cast<std::uint64_t>(e.first) * 1000003ULL +
                      static_cast<std::uint64_t>(e.second);
    h ^= h >> 33;
    h *= 0xff51afd7ed558ccdULL;
    h ^= h >> 33;
    return static_cast<std::size_t>(h % sites.size());
}

inline bool adjacent_sites(const Simplex& a, const Simplex& b) {
    if (a.size() + 1 == b.size()) return contains_all(b, a);
    if (b.size() + 1 == a.size()) return contains_all(a, b);
    return false;
}

}  // namespace detail

/// Lifts the transition data to the extension and returns the defect cocycle h with its class.
template <class Ext>
ObstructionResult<Ext> compute_obstruction(const TransitionData<typename Ext::BaseGroup>& t, const Ext& ext,
                                           const LiftOptions& opt = {}) {
    auto rep = validate_transition(t);
    if (!rep.valid()) throw InputError("invalid transition data: " + rep.violations.front().describe());
    using Total = typename Ext::Total;
    const auto& x = *t.complex;
    ObstructionResult<Ext> out{Cochain(t.complex, 2, ext.fiber_coefficient()), {}, {}, {}, {}, {}, {}};

    auto defect = [&](const Total& a, const Total& b, const Total& c, const Simplex& tri) {
        // a b c^-1 with a = g^_ij, b = g^_jk, c = g^_ik
        Total p = ext.mul(ext.mul(a, b), ext.inv(c));
        auto z = ext.fiber_coordinate(p);
        if (!z) throw InternalError("lifted triple product leaves the fiber on " + format_simplex(tri));
        return *z;
    };

    if (t.mode == TransitionMode::Constant) {
        for (const auto& e : x.simplices(1)) out.lifts[{e[0], e[1]}] = ext.section_lift(t.value(e[0], e[1]));
        const auto& tris = x.simplices(2);
        for (std::size_t n = 0; n < tris.size(); ++n) {
            const auto& s = tris[n];
            out.h.set(n, defect(out.lifts.at({s[0], s[1]}), out.lifts.at({s[1], s[2]}), out.lifts.at({s[0], s[2]}), s));
        }
    } else {
        for (const auto& e : x.simplices(1)) {
            const Edge key{e[0], e[1]};
            const auto sites = t.sites(e[0], e[1]);
            const std::size_t root = detail::pick_root(sites, key, opt);
            out.roots[key] = sites[root];
            auto& lifted = out.sampled_lifts[key];
            lifted[sites[root]] = ext.section_lift(t.value(e[0], e[1], sites[root]));
            std::deque<std::size_t> queue{root};
            std::vector<bool> seen(sites.size(), false);
            seen[root] = true;
            while (!queue.empty()) {
                std::size_t a = queue.front();
                queue.pop_front();
                for (std::size_t b = 0; b < sites.size(); ++b) {
                    if (seen[b] || !detail::adjacent_sites(sites[a], sites[b])) continue;
                    seen[b] = true;
                    lifted[sites[b]] = ext.nearest_lift(lifted.at(sites[a]), t.value(e[0], e[1], sites[b]));
                    queue.push_back(b);
                }
            }
            if (std::find(seen.begin(), seen.end(), false) != seen.end())
                throw InternalError("sample sites of " + format_simplex(e) + " are not connected");
        }
        const auto& tris = x.simplices(2);
        for (std::size_t n = 0; n < tris.size(); ++n) {
            const auto& s = tris[n];
            TripleRecord rec{s, 0, true, 0};
            std::optional<Rational> first;
            for (const auto& site : x.cofaces(s)) {
                Rational v = defect(out.sampled_lifts.at({s[0], s[1]}).at(site),
                                    out.sampled_lifts.at({s[1], s[2]}).at(site),
                                    out.sampled_lifts.at({s[0], s[2]}).at(site), s);
                ++rec.sites;
                if (!first) {
                    first = v;
                } else if (*first != v) {
                    rec.constant = false;
                    throw CoverTooCoarseError(s, "defect " + to_string(*first) + " at " +
                                                     format_simplex(x.cofaces(s).front()) + " but " + to_string(v) +
                                                     " at " + format_simplex(site));
                }
            }
            rec.value = *first;
            out.h.set(n, *first);
            out.constancy_report.push_back(rec);
        }
    }

    if (x.dimension() >= 2)
        if (auto bad = coboundary(out.h).first_support())
            throw InternalError("obstruction cochain is not closed at " + format_simplex(*bad));
    out.group = cohomology_group(t.complex, ext.fiber_coefficient(), 2);
    out.class2 = classify_cocycle(out.h, out.group);
    return out;
}

enum class LiftSearchStatus { Found, Exhausted, Truncated };

inline std::string status_name(LiftSearchStatus s) {
    switch (s) {
        case LiftSearchStatus::Found: return "found";
        case LiftSearchStatus::Exhausted: return "exhausted";
        case LiftSearchStatus::Truncated: return "truncated";
    }
    return "?";
}

template <class Total>
struct LiftSearchResult {
    using Status = LiftSearchStatus;
    Status status = Status::Exhausted;
    std::map<Edge, Rational> twists;  // Found: fiber twist per edge i<j
    std::map<Edge, Total> lifted;     // Found: embed(twist) * section_lift(g_ij)
    Integer search_space = 0;         // |Z|^#edges
    Integer budget = 0;
    std::uint64_t nodes_visited = 0;  // partial assignments examined
    std::uint64_t pruned = 0;         // subtrees cut by a failing triangle

    bool found() const { return status == Status::Found; }
};

inline constexpr std::uint64_t default_search_budget = std::uint64_t{1} << 24;

/// Exhaustive search for fiber twists x_ij making every triangle product trivial in the total group.
///
/// Assignments are enumerated in lexicographic order (edges ascending, fiber values ascending);
/// the first solution in that order is returned.
template <class Ext>
LiftSearchResult<typename Ext::Total> brute_force_lift_search(const TransitionData<typename Ext::BaseGroup>& t,
                                                              const Ext& ext,
                                                              std::uint64_t budget = default_search_budget) {
    using Total = typename Ext::Total;
    using Result = LiftSearchResult<Total>;
    if (t.mode != TransitionMode::Constant) throw InputError("lift search needs constant-mode transition data");
    const auto fiber = ext.fiber_elements();
    if (fiber.empty()) throw InputError("lift search needs a finite fiber");
    auto rep = validate_transition(t);
    if (!rep.valid()) throw InputError("invalid transition data: " + rep.violations.front().describe());

    const auto& x = *t.complex;
    const auto& edges = x.simplices(1);
    Result res;
    res.budget = Integer(budget);
    res.search_space = 1;
    for (std::size_t e = 0; e < edges.size(); ++e) res.search_space *= Integer(fiber.size());
    if (res.search_space > res.budget) {
        res.status = Result::Status::Truncated;
        return res;
    }

    std::vector<Total> base_lift, fiber_total;
    for (const auto& e : edges) base_lift.push_back(ext.section_lift(t.value(e[0], e[1])));
    for (const auto& z : fiber) fiber_total.push_back(ext.embed(z));

    // Triangles are checked when their last edge (in edge order) is assigned.
    struct Tri {
        std::size_t ij, jk, ik;
    };
    std::vector<std::vector<Tri>> closing(edges.size());
    for (const auto& s : x.simplices(2)) {
        Tri tr{*x.index_of({s[0], s[1]}), *x.index_of({s[1], s[2]}), *x.index_of({s[0], s[2]})};
        closing[std::max({tr.ij, tr.jk, tr.ik})].push_back(tr);
    }

    std::vector<std::size_t> choice(edges.size(), 0);
    std::vector<Total> current(edges.size());
    auto ok_at = [&](std::size_t e) {
        for (const auto& tr : closing[e]) {
            Total p = ext.mul(ext.mul(current[tr.ij], current[tr.jk]), ext.inv(current[tr.ik]));
            if (!ext.total_equal(p, ext.identity())) return false;
        }
        return true;
    };

    // Iterative depth-first search.
    std::size_t depth = 0;
    bool found = edges.empty();
    if (!edges.empty()) {
        choice[0] = 0;
        while (true) {
            if (choice[depth] == fiber.size()) {
                if (depth == 0) break;
                --depth;
                ++choice[depth];
                continue;
            }
            ++res.nodes_visited;
            current[depth] = ext.mul(fiber_total[choice[depth]], base_lift[depth]);
            if (!ok_at(depth)) {
                ++res.pruned;
                ++choice[depth];
                continue;
            }
            if (depth + 1 == edges.size()) {
                found = true;
                break;
            }
            ++depth;
            choice[depth] = 0;
        }
    }
    if (!found) {
        res.status = Result::Status::Exhausted;
        return res;
    }
    res.status = Result::Status::Found;
    for (std::size_t e = 0; e < edges.size(); ++e) {
        Edge key{edges[e][0], edges[e][1]};
        res.twists[key] = fiber[choice[e]];
        res.lifted[key] = ext.mul(fiber_total[choice[e]], base_lift[e]);
    }
    return res;
}

}  // namespace obstructk
