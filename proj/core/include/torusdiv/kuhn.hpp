#pragma once

#include <cstddef>
#include <utility>
#include <vector>

namespace torusdiv::kuhn {

// Cube vertices are 0/1 coordinate vectors of length p.
using CubeVertex = std::vector<int>;

struct Permutation {
    std::vector<int> sigma;  // an arrangement of 1..p
    int size() const { return static_cast<int>(sigma.size()); }
};

// One simplex of the standard triangulation of I^p: the increasing vertex
// chain 0, e_sigma(1), e_sigma(1)+e_sigma(2), ..., all-ones.
struct KuhnSimplex {
    Permutation sigma;
    std::vector<CubeVertex> chain;  // p+1 vertices
};

// All p! chain simplices, enumerated with sigma in lexicographic order.
// p must be >= 1; p > 7 requires allow_large (the count is p!).
std::vector<KuhnSimplex> kuhn_triangulation(int p, bool allow_large = false);

// The point map v -> all_ones - v.
struct AntipodalInvolution {
    int p = 0;
    CubeVertex operator()(const CubeVertex& v) const;
};
AntipodalInvolution antipodal_involution(int p);

// Index permutation induced on kuhn_triangulation(p) by the involution:
// out[i] is the index of the simplex whose vertex set is the image of
// simplex i's vertex set.
std::vector<int> kuhn_simplex_permutation(int p, bool allow_large = false);

enum class Corner { origin, all_ones };

struct StarFacet {
    int axis = 0;  // cube facet {x_axis = side}
    int side = 0;
    // (p-1)-simplices of the facet, induced by restricting the ambient
    // triangulation; each is a vertex chain of p cube vertices.
    std::vector<std::vector<CubeVertex>> simplices;
};

// The closed star of a main-diagonal corner in the triangulated boundary of
// I^p: the p facets containing the corner, each carrying its (p-1)! induced
// simplices, p! boundary simplices in total.
struct VertexStar {
    int p = 0;
    Corner corner = Corner::origin;
    std::vector<StarFacet> facets;
    size_t simplex_count() const;
};

VertexStar vertex_star(int p, Corner corner, bool allow_large = false);

// The bijection from origin-star simplices to all-ones-star simplices induced
// by the involution.  Construction verifies it is a bijection preserving the
// face relation (pairwise vertex-set intersection sizes) and throws if not.
struct StarIsomorphism {
    int p = 0;
    // image[f][s] = (facet, simplex) position in the all-ones star of the
    // image of simplex s of facet f of the origin star.
    std::vector<std::vector<std::pair<int, int>>> image;
};

StarIsomorphism star_isomorphism(int p, bool allow_large = false);

}  // namespace torusdiv::kuhn
