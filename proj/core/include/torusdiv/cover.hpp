#pragma once

#include <torusdiv/geom.hpp>

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace torusdiv::cover {

using geom::Complex;

// A fundamental-domain index in Z^n under the standard generators: the cube
// it names spans [v, v+1]^n.
struct LatticePoint {
    std::vector<long long> coords;

    int n() const { return static_cast<int>(coords.size()); }
    long long word_norm() const;
    std::vector<int> support() const;  // axes (0-based) with nonzero coordinate
    bool operator==(const LatticePoint& o) const { return coords == o.coords; }
    bool operator<(const LatticePoint& o) const { return coords < o.coords; }
};

// (p, q): number of nonzero coordinates and its complement.
std::pair<int, int> rank(const LatticePoint& v);

struct LatticeBall {
    int n = 0;
    int k = 0;
    std::vector<LatticePoint> members;  // lexicographic order
    bool contains(const LatticePoint& v) const;
};

// All v with word_norm(v) <= k.
LatticeBall ball(int n, int k);

// A unit cube face on the sphere S(k): cube is in the ball, cube + sign *
// e_axis is not.  axis is 1-based, sign is +1 or -1.
struct ExposedFace {
    LatticePoint cube;
    int axis = 0;
    int sign = 0;
};

// Brute-force enumeration over the ball, ordered by (cube lexicographic,
// axis ascending, sign - then +).  Requires k >= 1.
std::vector<ExposedFace> exposed_faces(int n, int k);

// S(k) refined into typed tiles directly from the glued-boundary structure:
// support-direction faces split by the star of the outer corner into (p-1)!
// tiles of type (p,q) each; zero-axis faces split by the full chain
// decomposition of the support cube into p! tiles of type (p+1,q-1).
// Geometry stays in ambient Z^n coordinates.  k=0 returns the initial
// sphere.  Built without any reference to subdivision templates.
struct RefinedSphereTiling {
    int n = 0;
    int k = 0;
    Complex complex;
    std::vector<ExposedFace> faces;
    std::map<std::string, size_t> owner;  // cell id -> index into faces
};

RefinedSphereTiling refine_exposed(int n, int k);

}  // namespace torusdiv::cover
