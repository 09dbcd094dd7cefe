#pragma once

#include <algorithm>
#include <cstddef>
#include <iterator>
#include <map>
#include <optional>
#include <memory>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "obstructk/errors.hpp"

namespace obstructk {

/// Strictly ascending vertex tuple; the ascending order is the orientation.
using Simplex = std::vector<int>;

/// Face of `s` with the vertex at position `i` removed. Its incidence sign is (-1)^i.
inline Simplex drop_vertex(const Simplex& s, std::size_t i) {
    Simplex f;
    f.reserve(s.size() - 1);
    for (std::size_t k = 0; k < s.size(); ++k)
        if (k != i) f.push_back(s[k]);
    return f;
}

inline bool contains_all(const Simplex& big, const Simplex& small) {
    return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

/// Finite abstract simplicial complex, closed under faces.
///
/// Simplices of each dimension are stored in lexicographic order; that order
/// defines the coordinate order of every cochain space.
class SimplicialComplex {
  public:
    SimplicialComplex() = default;

    /// Builds the closure of the given simplices. Vertex tuples are sorted;
    /// repeated vertices inside a tuple are rejected.
    static SimplicialComplex from_simplices(std::vector<int> vertices, const std::vector<Simplex>& generators,
                                            std::vector<std::string>* warnings = nullptr) {
        SimplicialComplex x;
        std::set<int> vset(vertices.begin(), vertices.end());
        if (vset.size() != vertices.size() && warnings) warnings->push_back("duplicate vertex labels removed");
        std::set<Simplex> all;
        std::set<Simplex> listed;
        for (auto s : generators) {
            if (s.empty()) throw InputError("empty simplex in simplex list");
            std::sort(s.begin(), s.end());
            if (std::adjacent_find(s.begin(), s.end()) != s.end())
                throw InputError("simplex " + format_simplex(s) + " repeats a vertex");
            listed.insert(s);
            for (int v : s)
                if (!vset.count(v)) {
                    if (warnings) warnings->push_back("vertex " + std::to_string(v) + " added from simplex list");
                    vset.insert(v);
                }
            add_closure(s, all);
        }
        for (int v : vset) all.insert(Simplex{v});
        if (warnings) {
            for (const auto& s : listed) {
                bool maximal = true;
                for (const auto& t : listed)
                    if (t.size() > s.size() && contains_all(t, s)) {
                        maximal = false;
                        break;
                    }
                if (!maximal) warnings->push_back("non-maximal simplex " + format_simplex(s) + " listed");
            }
        }
        x.vertices_.assign(vset.begin(), vset.end());
        for (const auto& s : all) {
            std::size_t d = s.size() - 1;
            if (x.by_dim_.size() <= d) x.by_dim_.resize(d + 1);
            x.by_dim_[d].push_back(s);
        }
        x.build_index();
        return x;
    }

    static SimplicialComplex from_simplices(const std::vector<Simplex>& generators) {
        std::vector<int> vs;
        for (const auto& s : generators) vs.insert(vs.end(), s.begin(), s.end());
        std::sort(vs.begin(), vs.end());
        vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
        return from_simplices(vs, generators);
    }

    const std::vector<int>& vertices() const { return vertices_; }

    /// Highest simplex dimension; -1 for the empty complex.
    int dimension() const { return static_cast<int>(by_dim_.size()) - 1; }

    /// Simplices of dimension q (empty for q outside [0, dim]).
    const std::vector<Simplex>& simplices(int q) const {
        static const std::vector<Simplex> none;
        if (q < 0 || q > dimension()) return none;
        return by_dim_[static_cast<std::size_t>(q)];
    }
    std::size_t count(int q) const { return simplices(q).size(); }

    std::optional<std::size_t> index_of(const Simplex& s) const {
        if (s.empty()) return std::nullopt;
        int q = static_cast<int>(s.size()) - 1;
        if (q > dimension()) return std::nullopt;
        const auto& idx = index_[static_cast<std::size_t>(q)];
        auto it = idx.find(s);
        if (it == idx.end()) return std::nullopt;
        return it->second;
    }
    bool contains(const Simplex& s) const { return index_of(s).has_value(); }

    /// Simplices that are not faces of any other simplex, in canonical order.
    std::vector<Simplex> maximal_simplices() const {
        std::set<Simplex> non_max;
        for (int q = 1; q <= dimension(); ++q)
            for (const auto& s : simplices(q))
                for (std::size_t i = 0; i < s.size(); ++i) non_max.insert(drop_vertex(s, i));
        std::vector<Simplex> out;
        for (int q = 0; q <= dimension(); ++q)
            for (const auto& s : simplices(q))
                if (!non_max.count(s)) out.push_back(s);
        std::sort(out.begin(), out.end());
        return out;
    }

    /// Simplices having `s` as a face (including `s`), i.e. the open star of `s`.
    std::vector<Simplex> cofaces(const Simplex& s) const {
        std::vector<Simplex> out;
        for (int q = static_cast<int>(s.size()) - 1; q <= dimension(); ++q)
            for (const auto& t : simplices(q))
                if (contains_all(t, s)) out.push_back(t);
        return out;
    }

    long euler_characteristic() const {
        long chi = 0;
        for (int q = 0; q <= dimension(); ++q) chi += (q % 2 ? -1L : 1L) * static_cast<long>(count(q));
        return chi;
    }

    /// Pure of dimension d with every (d-1)-simplex in at most two d-simplices.
    bool is_pseudomanifold() const {
        int d = dimension();
        if (d <= 0) return true;
        std::map<Simplex, int> incidence;
        for (const auto& s : simplices(d))
            for (std::size_t i = 0; i < s.size(); ++i) ++incidence[drop_vertex(s, i)];
        for (const auto& [face, n] : incidence)
            if (n > 2) return false;
        for (const auto& m : maximal_simplices())
            if (static_cast<int>(m.size()) - 1 != d) return false;
        return true;
    }

    /// Relabels vertices through `relabel` (must be injective on the vertex set).
    SimplicialComplex relabeled(const std::map<int, int>& relabel) const {
        std::vector<int> vs;
        for (int v : vertices_) vs.push_back(relabel.at(v));
        std::vector<Simplex> gens;
        for (auto s : maximal_simplices()) {
            for (auto& v : s) v = relabel.at(v);
            gens.push_back(s);
        }
        return from_simplices(vs, gens);
    }

    friend bool operator==(const SimplicialComplex& a, const SimplicialComplex& b) {
        return a.vertices_ == b.vertices_ && a.by_dim_ == b.by_dim_;
    }

  private:
    static void add_closure(const Simplex& s, std::set<Simplex>& out) {
        if (!out.insert(s).second) return;
        if (s.size() == 1) return;
        for (std::size_t i = 0; i < s.size(); ++i) add_closure(drop_vertex(s, i), out);
    }

    void build_index() {
        index_.assign(by_dim_.size(), {});
        for (std::size_t q = 0; q < by_dim_.size(); ++q)
            for (std::size_t i = 0; i < by_dim_[q].size(); ++i) index_[q][by_dim_[q][i]] = i;
    }

    std::vector<int> vertices_;
    std::vector<std::vector<Simplex>> by_dim_;
    std::vector<std::map<Simplex, std::size_t>> index_;
};

using ComplexPtr = std::shared_ptr<const SimplicialComplex>;

inline ComplexPtr share(SimplicialComplex x) { return std::make_shared<const SimplicialComplex>(std::move(x)); }

/// Ordered product X x Y: vertex (x, y) is labelled rank(x) * |V(Y)| + rank(y),
/// and each product of simplices is triangulated by its monotone staircase chains.
inline SimplicialComplex product(const SimplicialComplex& x, const SimplicialComplex& y) {
    const auto& xv = x.vertices();
    const auto& yv = y.vertices();
    std::map<int, int> xrank, yrank;
    for (std::size_t i = 0; i < xv.size(); ++i) xrank[xv[i]] = static_cast<int>(i);
    for (std::size_t i = 0; i < yv.size(); ++i) yrank[yv[i]] = static_cast<int>(i);
    const int ny = static_cast<int>(yv.size());
    std::vector<Simplex> gens;
    for (const auto& s : x.maximal_simplices())
        for (const auto& t : y.maximal_simplices()) {
            // Monotone lattice paths from (0,0) to (|s|-1, |t|-1).
            const std::size_t a = s.size() - 1, b = t.size() - 1;
            std::vector<bool> steps(a + b, false);
            std::fill(steps.begin() + static_cast<long>(b), steps.end(), true);  // true = step in s
            do {
                Simplex chain;
                std::size_t i = 0, j = 0;
                chain.push_back(xrank[s[i]] * ny + yrank[t[j]]);
                for (bool in_s : steps) {
                    if (in_s) ++i; else ++j;
                    chain.push_back(xrank[s[i]] * ny + yrank[t[j]]);
                }
                gens.push_back(chain);
            } while (std::next_permutation(steps.begin(), steps.end()));
        }
    std::vector<int> vs;
    for (int i = 0; i < static_cast<int>(xv.size()) * ny; ++i) vs.push_back(i);
    return SimplicialComplex::from_simplices(vs, gens);
}

/// Open-star cover of a complex: U_v is the set of simplices having v as a vertex.
/// U_{v0..vq} is nonempty exactly when {v0..vq} is a simplex, so the nerve is X.
class StarCover {
  public:
    explicit StarCover(ComplexPtr complex) : complex_(std::move(complex)) {
        for (int v : complex_->vertices()) {
            auto st = complex_->cofaces(Simplex{v});
            std::sort(st.begin(), st.end());
            stars_[v] = std::move(st);
        }
    }

    const SimplicialComplex& complex() const { return *complex_; }
    std::size_t size() const { return stars_.size(); }
    const std::vector<Simplex>& star(int v) const { return stars_.at(v); }

    /// Simplices shared by the stars of all vertices of `index_set` (ascending).
    std::vector<Simplex> intersection(const Simplex& index_set) const {
        if (index_set.empty()) return {};
        std::vector<Simplex> acc = stars_.at(index_set.front());
        for (std::size_t k = 1; k < index_set.size() && !acc.empty(); ++k) {
            const auto& other = stars_.at(index_set[k]);
            std::vector<Simplex> next;
            std::set_intersection(acc.begin(), acc.end(), other.begin(), other.end(), std::back_inserter(next));
            acc = std::move(next);
        }
        return acc;
    }

    /// Nerve computed from the intersections alone (without consulting the simplex list).
    SimplicialComplex nerve() const {
        std::vector<Simplex> found;
        std::vector<int> vs;
        for (const auto& [v, st] : stars_) vs.push_back(v);
        std::vector<Simplex> frontier;
        for (int v : vs) frontier.push_back({v});
        while (!frontier.empty()) {
            std::vector<Simplex> next;
            for (const auto& s : frontier) {
                found.push_back(s);
                for (int v : vs) {
                    if (v <= s.back()) continue;
                    Simplex t = s;
                    t.push_back(v);
                    if (!intersection(t).empty()) next.push_back(t);
                }
            }
            frontier = std::move(next);
        }
        return SimplicialComplex::from_simplices(vs, found);
    }

  private:
    ComplexPtr complex_;
    std::map<int, std::vector<Simplex>> stars_;
};

inline StarCover star_nerve(ComplexPtr x) {
    if (x->vertices().empty()) throw InputError("star cover of an empty complex");
    return StarCover(std::move(x));
}

}  // namespace obstructk
