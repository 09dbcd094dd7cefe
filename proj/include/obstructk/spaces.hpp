#pragma once

#include <string>
#include <vector>

#include "obstructk/complex.hpp"

namespace obstructk::spaces {

inline SimplicialComplex point() { return SimplicialComplex::from_simplices({{0}}); }

/// A single closed 2-simplex.
inline SimplicialComplex triangle() { return SimplicialComplex::from_simplices({{0, 1, 2}}); }

/// Boundary of a triangle.
inline SimplicialComplex circle() { return SimplicialComplex::from_simplices({{0, 1}, {1, 2}, {0, 2}}); }

/// Octahedral 2-sphere: poles 0 and 5, equator 1-2-3-4.
inline SimplicialComplex octahedron() {
    std::vector<Simplex> t;
    const int eq[4] = {1, 2, 3, 4};
    for (int m = 0; m < 4; ++m) {
        int a = eq[m], b = eq[(m + 1) % 4];
        t.push_back({0, a, b});
        t.push_back({5, a, b});
    }
    return SimplicialComplex::from_simplices(t);
}

/// Seven-vertex torus: triangles {i, i+1, i+3} and {i, i+2, i+3} mod 7.
inline SimplicialComplex torus() {
    std::vector<Simplex> t;
    for (int i = 0; i < 7; ++i) {
        t.push_back({i, (i + 1) % 7, (i + 3) % 7});
        t.push_back({i, (i + 2) % 7, (i + 3) % 7});
    }
    return SimplicialComplex::from_simplices(t);
}

/// Six-vertex real projective plane (hemi-icosahedron).
inline SimplicialComplex projective_plane() {
    return SimplicialComplex::from_simplices({{1, 2, 3}, {1, 2, 4}, {1, 3, 5}, {1, 4, 6}, {1, 5, 6},
                                              {2, 3, 6}, {2, 4, 5}, {2, 5, 6}, {3, 4, 5}, {3, 4, 6}});
}

/// Boundary of the 4-simplex.
inline SimplicialComplex three_sphere() {
    std::vector<Simplex> t;
    for (int skip = 0; skip < 5; ++skip) {
        Simplex s;
        for (int v = 0; v < 5; ++v)
            if (v != skip) s.push_back(v);
        t.push_back(s);
    }
    return SimplicialComplex::from_simplices(t);
}

/// RP^2 x S^1 as the ordered product of the six-vertex RP^2 and the three-vertex circle (18 vertices).
inline SimplicialComplex projective_plane_times_circle() { return product(projective_plane(), circle()); }

struct NamedSpace {
    std::string name;
    SimplicialComplex (*build)();
};

inline const std::vector<NamedSpace>& catalog() {
    static const std::vector<NamedSpace> spaces = {
        {"point", point},
        {"triangle", triangle},
        {"circle", circle},
        {"octahedron", octahedron},
        {"torus", torus},
        {"rp2", projective_plane},
        {"s3", three_sphere},
        {"rp2xs1", projective_plane_times_circle},
    };
    return spaces;
}

inline SimplicialComplex by_name(const std::string& name) {
    for (const auto& s : catalog())
        if (s.name == name) return s.build();
    throw InputError("unknown built-in space '" + name + "'");
}

}  // namespace obstructk::spaces
