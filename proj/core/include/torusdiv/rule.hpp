#pragma once

#include <torusdiv/geom.hpp>

#include <string>
#include <vector>

namespace torusdiv::rule {

using geom::Complex;
using geom::Point;
using torusdiv::Rational;

// ---------------------------------------------------------------------------
// Tile types and realized tiles
// ---------------------------------------------------------------------------

// A tile is a (p-1)-simplex cross a q-cube with p + q = n.  Its cell has
// dimension n-1 and nominal volume 1/(p-1)!.
struct TileType {
    int n = 0;
    int p = 0;
    int q = 0;
    bool operator==(const TileType& o) const { return n == o.n && p == o.p && q == o.q; }
    std::string label() const;  // "p,q"
};

TileType tile_type(int n, int p);
TileType parse_type_label(int n, const std::string& label);

// Concrete realization state of one tile: a chain of p cube-corner frames.
// frames[m] holds the 2^q corners (by axis bitmask) of the fiber cube over
// chain vertex m.  Every frame is an affine embedding of [0,1]^q; frame 0's
// zero corner is the tile's anchor and frame p-1 sits at the chain apex (the
// center vertex of the next gluing star).
struct Tile {
    std::string id;
    TileType type;
    std::vector<std::vector<Point>> frames;

    const Point& corner(int m, unsigned mask) const { return frames[static_cast<size_t>(m)][mask]; }
    const Point& anchor_point() const { return frames[0][0]; }
    // Multilinear evaluation of frame m at a parameter point in [0,1]^q
    // (exact, and equal to the affine evaluation for affine frames).
    Point frame_eval(int m, const std::vector<Rational>& param) const;
};

// The model tile Delta^(p-1) x I^q in R^(n-1): ascending chain over the
// leading p-1 axes, unit fiber cube on the trailing q axes.
Tile model_tile(TileType t);

// Model cell with its staircase underbelly, in a single-cell complex of
// ambient dimension n-1.  The cell's anchor is the chain-start corner.
Complex tile_realization(TileType t);

// Appends the tile's cell (staircase underbelly over its frames) to c.
void add_tile_cell(Complex& c, const Tile& t);

// Reconstructs the frame chain of a cell from its stored staircase simplices
// (their order and vertex order follow geom::staircase_labels).  Validates
// consistency, the affine-frame property, and that the recorded anchor is
// frame 0's zero corner.
Tile tile_from_cell(const Complex& c, const geom::PLCell& cell, int n);

// ---------------------------------------------------------------------------
// Subdivision
// ---------------------------------------------------------------------------

// The children of one subdivision step applied to a tile: for q = 0 the tile
// itself (identity); otherwise 1 inner child of type (p,q) followed by 2q
// flank children of type (p+1,q-1) ordered by (fiber axis, side 0 then 1).
// Child ids extend t.id with "." + child index (q = 0 keeps the id).
std::vector<Tile> subdivide_tile(const Tile& t);

// Identifies a facet of a (p,q) tile: either a fiber-cube facet {axis,side}
// or a chain-vertex drop (p >= 2 only).
struct FacetKey {
    bool cube = true;
    int axis = -1;
    int side = 0;
    int drop = -1;
    bool operator==(const FacetKey& o) const {
        return cube == o.cube && axis == o.axis && side == o.side && drop == o.drop;
    }
};

// Vertex frames of a tile facet, keeping the wall's own chain/fiber
// structure: a chain of frames over the facet's fiber axes.
std::vector<std::vector<Point>> facet_frames(const Tile& t, const FacetKey& f);
std::vector<FacetKey> facet_keys(TileType t);

struct TraceEntry {
    FacetKey parent_facet;
    // Child facets covering the parent facet; child index 0 is the inner
    // tile, 1..2q the flanks in template order.
    std::vector<std::pair<int, FacetKey>> cover;
};

struct Template {
    TileType parent;
    Tile inner;                       // type (p,q), exact model coordinates
    std::vector<Tile> flanks;         // 2q tiles of type (p+1,q-1)
    std::vector<TraceEntry> boundary_trace;
    bool identity = false;            // q = 0
    std::vector<Tile> children() const;
};

// Builds the subdivision template for tile type (n,p) by subdividing the
// model tile and recording, facet by facet, which child facets cover each
// parent facet.
Template build_template(int n, int p);

struct SubdivisionRule {
    int n = 0;
    std::vector<Template> templates;  // templates[p-1]
};

SubdivisionRule make_subdivision_rule(int n);

// One subdivision step on a closed complex whose cells carry tile types of
// r.  Throws if a cell's anchor is missing or inconsistent with its stored
// structure, and if the children of adjacent cells fail to agree on shared
// boundary faces (which would signal a template bug).
Complex subdivide(const Complex& c, const SubdivisionRule& r);

Complex iterate(const Complex& c, const SubdivisionRule& r, int k);

// ---------------------------------------------------------------------------
// Count dynamics
// ---------------------------------------------------------------------------

struct CountVector {
    std::vector<long long> counts;  // counts[p-1] = number of tiles with that p
    bool operator==(const CountVector& o) const { return counts == o.counts; }
};

CountVector count_vector(const Complex& c, int n);

// Lower-bidiagonal child-count matrix: M[p-1][p-1] = 1 and
// M[p][p-1] = 2(n-p); column p sums to 1 + 2q.
struct TransitionMatrix {
    int n = 0;
    std::vector<std::vector<long long>> m;
    CountVector apply(const CountVector& v) const;
    CountVector apply_power(const CountVector& v, int k) const;
};

TransitionMatrix transition_matrix(int n);

// ---------------------------------------------------------------------------
// The homotopy and the initial sphere
// ---------------------------------------------------------------------------

// The straight-line homotopy f_t(x,y,z) = (x, y, z*(1 + (sum(x)-1)*t/2)) on
// C = Delta^(p-1) x I^(q-1) x I, with pt = (x_1..x_{p-1}, y_1..y_{q-1}, z).
// Requires q >= 1, t in [0,1], and pt in C.
Point homotopy_ft(int p, int q, const Rational& t, const Point& pt);

// The boundary of the unit n-cube as 2n cells of type (1, n-1), one per
// facet, ids "0".."2n-1" ordered by (axis, side).  Closed, canonicalized.
Complex initial_sphere(int n);

}  // namespace torusdiv::rule
