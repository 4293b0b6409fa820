#pragma once

#include <torusdiv/rational.hpp>

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace torusdiv::geom {

using torusdiv::Integer;
using torusdiv::Rational;

// ---------------------------------------------------------------------------
// Points and simplices
// ---------------------------------------------------------------------------

struct Point {
    std::vector<Rational> coords;

    Point() = default;
    explicit Point(std::vector<Rational> c) : coords(std::move(c)) {}

    int dim() const { return static_cast<int>(coords.size()); }
    const Rational& operator[](int i) const { return coords[static_cast<size_t>(i)]; }
    Rational& operator[](int i) { return coords[static_cast<size_t>(i)]; }

    bool operator==(const Point& o) const { return coords == o.coords; }
    bool operator!=(const Point& o) const { return !(*this == o); }
    bool operator<(const Point& o) const;  // lexicographic, exact
};

// A geometric d-simplex given by an ordered list of d+1 points, all with the
// same ambient dimension.  Vertex order is meaningful (it fixes orientation
// and is preserved through serialization).
struct Simplex {
    std::vector<Point> vertices;

    int dim() const { return static_cast<int>(vertices.size()) - 1; }
    int ambient_dim() const { return vertices.empty() ? 0 : vertices.front().dim(); }

    // True when the affine span of the vertices has dimension < dim().
    bool degenerate() const;

    // +1 / -1 for a nondegenerate simplex (sign of the edge-matrix
    // determinant, after dropping ambient axes on which the simplex is
    // constant), 0 for a degenerate one.
    int orientation() const;
};

// Validates shape (nonempty, matching ambient dimensions) and returns the
// simplex.  Degeneracy is allowed here; complexes reject it at insertion.
Simplex affine_simplex(const std::vector<Point>& points);

// Exact d-volume.  The natural case is ambient_dim == dim ( |det|/d! ).  A
// simplex embedded in a higher-dimensional space is accepted when it is flat
// along coordinate axes: axes on which all vertices agree are dropped first.
// Anything still non-square after that is rejected.
Rational simplex_volume(const Simplex& s);

// ---------------------------------------------------------------------------
// Staircase product triangulation
// ---------------------------------------------------------------------------

// Label of one vertex of a staircase simplex inside a product
// (chain of a+1 frames) x (cube with b axes): frame index m in [0,a] and a
// bitmask over the b cube axes.
struct StairLabel {
    int m = 0;
    unsigned mask = 0;
    bool operator==(const StairLabel& o) const { return m == o.m && mask == o.mask; }
};

// The canonical combinatorial staircase triangulation of Delta^a x I^b:
// (a+b)!/a! simplices, each listed as a+b+1 labels along a monotone path from
// (0, 0) to (a, full mask).  Enumeration order is fixed (cube-axis
// permutations in lexicographic order, then interleaving patterns in
// increasing bitmask order) and is relied upon everywhere a cell's stored
// simplex list is mapped back to its frame structure.
std::vector<std::vector<StairLabel>> staircase_labels(int a, int b);

// Realizes staircase_labels(frames.size()-1, b) on concrete frame points.
// frames[m] holds the 2^b cube corners of frame m, indexed by corner bitmask.
std::vector<Simplex> chain_cell_simplices(const std::vector<std::vector<Point>>& frames, int b);

// Staircase triangulation of the model product Delta^a x I^b inside
// R^(a+b): the chain simplex over vertices 0, e1, e1+e2, ... times the unit
// cube on the trailing b axes.  (a+b)!/a! simplices of volume summing to
// 1/a!.  Boundary facets restrict to the canonical triangulations of the
// factor products.
std::vector<Simplex> product_triangulate(int a, int b);

// ---------------------------------------------------------------------------
// Cells and complexes
// ---------------------------------------------------------------------------

// A piecewise-linear cell: a labeled union of top-dimensional simplices whose
// vertices live in the owning complex's shared pool.  Each inner vector is
// one simplex as an ordered list of pool indices; list order follows
// staircase_labels enumeration for cells built from frame chains.
struct PLCell {
    std::string id;
    std::string type_label;
    int anchor = -1;  // pool index of the distinguished corner vertex
    std::vector<std::vector<int>> simplices;
};

struct Gluing {
    int cell_a = -1;
    int cell_b = -1;
    std::vector<int> face;  // shared (d-1)-simplex, sorted pool indices
    bool operator<(const Gluing& o) const;
    bool operator==(const Gluing& o) const {
        return cell_a == o.cell_a && cell_b == o.cell_b && face == o.face;
    }
};

class Complex {
public:
    Complex() = default;
    explicit Complex(int ambient_dim) : ambient_dim_(ambient_dim) {}

    int ambient_dim() const { return ambient_dim_; }
    const std::vector<Point>& vertices() const { return vertices_; }
    const std::vector<PLCell>& cells() const { return cells_; }
    const std::vector<Gluing>& gluings() const { return gluings_; }

    // Index of p in the pool, inserting it if new.
    int vertex_index(const Point& p);
    // Lookup without insertion; -1 when absent.
    int find_vertex(const Point& p) const;

    // Adds a cell whose simplices are given as point lists.  Points are
    // deduplicated into the pool; degenerate simplices and dimension
    // mismatches are rejected.
    void add_cell(const std::string& id, const std::string& type_label,
                  const Point& anchor, const std::vector<std::vector<Point>>& simplices);

    // Adds a cell already expressed in pool indices (used by parsing).
    void add_cell_indexed(PLCell cell);

    const PLCell* cell_by_id(const std::string& id) const;

    // Populates gluings(): one entry per (d-1)-simplex shared by two distinct
    // cells.  Also caches the facet incidence counts used by
    // closure_witness().
    void build_adjacency();

    // Empty when every (d-1)-simplex of the pooled top simplices occurs in
    // exactly two of them; otherwise a description of one offending facet.
    // Requires build_adjacency() to have run.
    std::optional<std::string> closure_witness() const;
    bool is_closed() const { return !closure_witness().has_value(); }

    // Neighbor multiplicity per cell: how many (d-1)-simplices each pair of
    // distinct cells shares.  Requires build_adjacency().
    std::vector<std::map<int, int>> adjacency_multiplicity() const;

    // Rewrites the complex into its canonical form: vertex pool sorted
    // lexicographically, cells sorted by id, gluings normalized and sorted.
    // Simplex vertex order inside each cell is preserved.
    void canonicalize();

    Rational cell_volume(const PLCell& cell) const;
    Simplex simplex_at(const std::vector<int>& vertex_indices) const;

private:
    int ambient_dim_ = 0;
    std::vector<Point> vertices_;
    std::map<Point, int> index_;
    std::vector<PLCell> cells_;
    std::vector<Gluing> gluings_;
    bool adjacency_built_ = false;
    std::vector<std::pair<std::vector<int>, int>> facet_counts_;  // facet -> count
};

// ---------------------------------------------------------------------------
// Invariants of complexes
// ---------------------------------------------------------------------------

// Euler characteristic of the union of all cells' simplicial face lattices:
// faces of every dimension are pooled across cells, identified by their
// vertex sets, and counted with alternating signs.
long long euler_characteristic(const Complex& c);

enum class IsoOutcome { isomorphic, non_isomorphic, undecided };

struct IsoResult {
    IsoOutcome outcome = IsoOutcome::undecided;
    // For isomorphic: mapping[i] = index in c2 of the image of c1's cell i.
    std::vector<int> mapping;
};

// Decides whether two complexes are isomorphic as labeled adjacency
// structures: a bijection of cells preserving type_label and, for every pair
// of cells, the number of shared (d-1)-simplices.  Color refinement first,
// then exhaustive backtracking.  A non-negative budget (seconds) may cause an
// undecided outcome; budget < 0 means unlimited.
IsoResult labeled_isomorphic(const Complex& c1, const Complex& c2, double budget_seconds = -1.0);

}  // namespace torusdiv::geom
