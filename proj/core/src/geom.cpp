#include <torusdiv/geom.hpp>

#include <algorithm>
#include <bit>
#include <chrono>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace torusdiv::geom {

bool Point::operator<(const Point& o) const {
    if (coords.size() != o.coords.size()) return coords.size() < o.coords.size();
    for (size_t i = 0; i < coords.size(); ++i) {
        if (coords[i] != o.coords[i]) return coords[i] < o.coords[i];
    }
    return false;
}

namespace {

// Exact determinant by Gaussian elimination with column pivoting.
Rational determinant(std::vector<std::vector<Rational>> m) {
    const size_t n = m.size();
    Rational det = 1;
    for (size_t col = 0; col < n; ++col) {
        size_t pivot = col;
        while (pivot < n && m[pivot][col] == 0) ++pivot;
        if (pivot == n) return Rational(0);
        if (pivot != col) {
            std::swap(m[pivot], m[col]);
            det = -det;
        }
        det *= m[col][col];
        for (size_t row = col + 1; row < n; ++row) {
            if (m[row][col] == 0) continue;
            const Rational f = m[row][col] / m[col][col];
            for (size_t c = col; c < n; ++c) m[row][c] -= f * m[col][c];
        }
    }
    return det;
}

size_t matrix_rank(std::vector<std::vector<Rational>> m) {
    if (m.empty()) return 0;
    const size_t rows = m.size(), cols = m[0].size();
    size_t rank = 0;
    for (size_t col = 0; col < cols && rank < rows; ++col) {
        size_t pivot = rank;
        while (pivot < rows && m[pivot][col] == 0) ++pivot;
        if (pivot == rows) continue;
        std::swap(m[pivot], m[rank]);
        for (size_t row = rank + 1; row < rows; ++row) {
            if (m[row][col] == 0) continue;
            const Rational f = m[row][col] / m[rank][col];
            for (size_t c = col; c < cols; ++c) m[row][c] -= f * m[rank][c];
        }
        ++rank;
    }
    return rank;
}

// Rows = edge vectors v_i - v_0 of the simplex.
std::vector<std::vector<Rational>> edge_matrix(const Simplex& s) {
    std::vector<std::vector<Rational>> m;
    const int d = s.dim();
    const int amb = s.ambient_dim();
    m.reserve(static_cast<size_t>(d));
    for (int i = 1; i <= d; ++i) {
        std::vector<Rational> row(static_cast<size_t>(amb));
        for (int c = 0; c < amb; ++c) row[static_cast<size_t>(c)] = s.vertices[static_cast<size_t>(i)][c] - s.vertices[0][c];
        m.push_back(std::move(row));
    }
    return m;
}

// Drops ambient axes on which every vertex agrees; returns edge matrix
// restricted to the remaining axes.
std::vector<std::vector<Rational>> reduced_edge_matrix(const Simplex& s) {
    const int amb = s.ambient_dim();
    std::vector<int> keep;
    for (int c = 0; c < amb; ++c) {
        bool constant = true;
        for (size_t i = 1; i < s.vertices.size() && constant; ++i) {
            if (s.vertices[i][c] != s.vertices[0][c]) constant = false;
        }
        if (!constant) keep.push_back(c);
    }
    std::vector<std::vector<Rational>> m;
    for (size_t i = 1; i < s.vertices.size(); ++i) {
        std::vector<Rational> row;
        row.reserve(keep.size());
        for (int c : keep) row.push_back(s.vertices[i][c] - s.vertices[0][c]);
        m.push_back(std::move(row));
    }
    return m;
}

}  // namespace

bool Simplex::degenerate() const {
    if (vertices.empty()) return true;
    const int d = dim();
    if (d == 0) return false;
    auto m = edge_matrix(*this);
    return matrix_rank(std::move(m)) < static_cast<size_t>(d);
}

int Simplex::orientation() const {
    if (degenerate()) return 0;
    const int d = dim();
    if (d == 0) return 1;
    auto m = reduced_edge_matrix(*this);
    if (m[0].size() != static_cast<size_t>(d)) {
        throw std::domain_error("orientation: simplex is not axis-flat in its ambient space");
    }
    const Rational det = determinant(std::move(m));
    return det > 0 ? 1 : (det < 0 ? -1 : 0);
}

Simplex affine_simplex(const std::vector<Point>& points) {
    if (points.empty()) throw std::invalid_argument("affine_simplex: no vertices");
    const int amb = points.front().dim();
    for (const Point& p : points) {
        if (p.dim() != amb) throw std::invalid_argument("affine_simplex: mixed ambient dimensions");
    }
    if (static_cast<int>(points.size()) > amb + 1) {
        throw std::invalid_argument("affine_simplex: more vertices than ambient dimension allows");
    }
    Simplex s;
    s.vertices = points;
    return s;
}

Rational simplex_volume(const Simplex& s) {
    const int d = s.dim();
    if (d == 0) return Rational(1);
    auto m = reduced_edge_matrix(s);
    if (m[0].size() != static_cast<size_t>(d)) {
        throw std::domain_error("simplex_volume: simplex is not axis-flat in its ambient space");
    }
    Rational det = determinant(std::move(m));
    if (det < 0) det = -det;
    return det / Rational(factorial(d));
}

// ---------------------------------------------------------------------------
// Staircase triangulation
// ---------------------------------------------------------------------------

std::vector<std::vector<StairLabel>> staircase_labels(int a, int b) {
    if (a < 0 || b < 0) throw std::invalid_argument("staircase_labels: negative factor dimension");
    std::vector<std::vector<StairLabel>> out;
    std::vector<int> perm(static_cast<size_t>(b));
    std::iota(perm.begin(), perm.end(), 0);
    const int steps = a + b;
    do {
        // Interleavings of a chain steps and b cube flips, as bit patterns
        // over the step sequence (set bit = cube flip), in increasing order.
        for (unsigned pattern = 0; pattern < (1u << steps); ++pattern) {
            if (std::popcount(pattern) != b) continue;
            std::vector<StairLabel> simplex;
            simplex.reserve(static_cast<size_t>(steps) + 1);
            StairLabel cur;
            simplex.push_back(cur);
            int flips = 0;
            for (int i = 0; i < steps; ++i) {
                if (pattern >> i & 1u) {
                    cur.mask |= 1u << perm[static_cast<size_t>(flips++)];
                } else {
                    cur.m += 1;
                }
                simplex.push_back(cur);
            }
            out.push_back(std::move(simplex));
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

std::vector<Simplex> chain_cell_simplices(const std::vector<std::vector<Point>>& frames, int b) {
    if (frames.empty()) throw std::invalid_argument("chain_cell_simplices: empty frame chain");
    const size_t corners = 1u << b;
    for (const auto& f : frames) {
        if (f.size() != corners) throw std::invalid_argument("chain_cell_simplices: bad frame size");
    }
    const int a = static_cast<int>(frames.size()) - 1;
    std::vector<Simplex> out;
    for (const auto& labels : staircase_labels(a, b)) {
        std::vector<Point> pts;
        pts.reserve(labels.size());
        for (const StairLabel& l : labels) pts.push_back(frames[static_cast<size_t>(l.m)][l.mask]);
        out.push_back(affine_simplex(pts));
    }
    return out;
}

std::vector<Simplex> product_triangulate(int a, int b) {
    if (a < 0 || b < 0) throw std::invalid_argument("product_triangulate: negative factor dimension");
    const int amb = a + b;
    std::vector<std::vector<Point>> frames(static_cast<size_t>(a) + 1);
    for (int m = 0; m <= a; ++m) {
        frames[static_cast<size_t>(m)].resize(1u << b);
        for (unsigned mask = 0; mask < (1u << b); ++mask) {
            std::vector<Rational> c(static_cast<size_t>(amb));
            for (int i = 0; i < m; ++i) c[static_cast<size_t>(i)] = 1;
            for (int i = 0; i < b; ++i) {
                if (mask >> i & 1u) c[static_cast<size_t>(a + i)] = 1;
            }
            frames[static_cast<size_t>(m)][mask] = Point(std::move(c));
        }
    }
    return chain_cell_simplices(frames, b);
}

// ---------------------------------------------------------------------------
// Complex
// ---------------------------------------------------------------------------

bool Gluing::operator<(const Gluing& o) const {
    if (cell_a != o.cell_a) return cell_a < o.cell_a;
    if (cell_b != o.cell_b) return cell_b < o.cell_b;
    return face < o.face;
}

int Complex::vertex_index(const Point& p) {
    if (p.dim() != ambient_dim_) throw std::invalid_argument("vertex_index: wrong ambient dimension");
    auto it = index_.find(p);
    if (it != index_.end()) return it->second;
    const int id = static_cast<int>(vertices_.size());
    vertices_.push_back(p);
    index_.emplace(p, id);
    return id;
}

int Complex::find_vertex(const Point& p) const {
    auto it = index_.find(p);
    return it == index_.end() ? -1 : it->second;
}

void Complex::add_cell(const std::string& id, const std::string& type_label,
                       const Point& anchor, const std::vector<std::vector<Point>>& simplices) {
    if (cell_by_id(id)) throw std::invalid_argument("add_cell: duplicate cell id " + id);
    PLCell cell;
    cell.id = id;
    cell.type_label = type_label;
    for (const auto& pts : simplices) {
        Simplex s = affine_simplex(pts);
        if (s.degenerate()) {
            throw std::invalid_argument("add_cell: degenerate simplex in cell " + id);
        }
        std::vector<int> ix;
        ix.reserve(pts.size());
        for (const Point& p : pts) ix.push_back(vertex_index(p));
        cell.simplices.push_back(std::move(ix));
    }
    cell.anchor = vertex_index(anchor);
    cells_.push_back(std::move(cell));
    adjacency_built_ = false;
}

void Complex::add_cell_indexed(PLCell cell) {
    if (cell_by_id(cell.id)) throw std::invalid_argument("add_cell: duplicate cell id " + cell.id);
    const int pool = static_cast<int>(vertices_.size());
    if (cell.anchor < 0 || cell.anchor >= pool) {
        throw std::invalid_argument("add_cell: anchor index out of range in cell " + cell.id);
    }
    for (const auto& ix : cell.simplices) {
        std::vector<Point> pts;
        for (int v : ix) {
            if (v < 0 || v >= pool) throw std::invalid_argument("add_cell: vertex index out of range in cell " + cell.id);
            pts.push_back(vertices_[static_cast<size_t>(v)]);
        }
        if (affine_simplex(pts).degenerate()) {
            throw std::invalid_argument("add_cell: degenerate simplex in cell " + cell.id);
        }
    }
    cells_.push_back(std::move(cell));
    adjacency_built_ = false;
}

const PLCell* Complex::cell_by_id(const std::string& id) const {
    for (const PLCell& c : cells_) {
        if (c.id == id) return &c;
    }
    return nullptr;
}

void Complex::build_adjacency() {
    std::map<std::vector<int>, std::vector<int>> owners;  // facet -> incident cells (with repeats)
    for (size_t ci = 0; ci < cells_.size(); ++ci) {
        for (const auto& simplex : cells_[ci].simplices) {
            if (simplex.size() < 2) continue;  // 0-dimensional tops have no facets
            for (size_t drop = 0; drop < simplex.size(); ++drop) {
                std::vector<int> facet;
                facet.reserve(simplex.size() - 1);
                for (size_t i = 0; i < simplex.size(); ++i) {
                    if (i != drop) facet.push_back(simplex[i]);
                }
                std::sort(facet.begin(), facet.end());
                owners[std::move(facet)].push_back(static_cast<int>(ci));
            }
        }
    }
    gluings_.clear();
    facet_counts_.clear();
    facet_counts_.reserve(owners.size());
    for (const auto& [facet, incident] : owners) {
        facet_counts_.emplace_back(facet, static_cast<int>(incident.size()));
        if (incident.size() == 2 && incident[0] != incident[1]) {
            Gluing g;
            g.cell_a = std::min(incident[0], incident[1]);
            g.cell_b = std::max(incident[0], incident[1]);
            g.face = facet;
            gluings_.push_back(std::move(g));
        }
    }
    std::sort(gluings_.begin(), gluings_.end());
    adjacency_built_ = true;
}

std::optional<std::string> Complex::closure_witness() const {
    if (!adjacency_built_) throw std::logic_error("closure_witness: build_adjacency not run");
    for (const auto& [facet, count] : facet_counts_) {
        if (count != 2) {
            std::ostringstream os;
            os << "facet {";
            for (size_t i = 0; i < facet.size(); ++i) os << (i ? "," : "") << facet[i];
            os << "} incident to " << count << " top simplices (expected 2)";
            return os.str();
        }
    }
    return std::nullopt;
}

std::vector<std::map<int, int>> Complex::adjacency_multiplicity() const {
    if (!adjacency_built_) throw std::logic_error("adjacency_multiplicity: build_adjacency not run");
    std::vector<std::map<int, int>> mult(cells_.size());
    for (const Gluing& g : gluings_) {
        mult[static_cast<size_t>(g.cell_a)][g.cell_b] += 1;
        mult[static_cast<size_t>(g.cell_b)][g.cell_a] += 1;
    }
    return mult;
}

void Complex::canonicalize() {
    // Vertex pool in lexicographic coordinate order.
    std::vector<int> order(vertices_.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int x, int y) {
        return vertices_[static_cast<size_t>(x)] < vertices_[static_cast<size_t>(y)];
    });
    std::vector<int> remap(vertices_.size());
    std::vector<Point> sorted;
    sorted.reserve(vertices_.size());
    for (size_t newid = 0; newid < order.size(); ++newid) {
        remap[static_cast<size_t>(order[newid])] = static_cast<int>(newid);
        sorted.push_back(vertices_[static_cast<size_t>(order[newid])]);
    }
    vertices_ = std::move(sorted);
    index_.clear();
    for (size_t i = 0; i < vertices_.size(); ++i) index_.emplace(vertices_[i], static_cast<int>(i));
    for (PLCell& cell : cells_) {
        cell.anchor = remap[static_cast<size_t>(cell.anchor)];
        for (auto& simplex : cell.simplices) {
            for (int& v : simplex) v = remap[static_cast<size_t>(v)];
        }
    }
    std::sort(cells_.begin(), cells_.end(), [](const PLCell& a, const PLCell& b) { return a.id < b.id; });
    const bool had_adjacency = adjacency_built_;
    adjacency_built_ = false;
    gluings_.clear();
    facet_counts_.clear();
    if (had_adjacency) build_adjacency();
}

Rational Complex::cell_volume(const PLCell& cell) const {
    Rational total = 0;
    for (const auto& ix : cell.simplices) total += simplex_volume(simplex_at(ix));
    return total;
}

Simplex Complex::simplex_at(const std::vector<int>& vertex_indices) const {
    std::vector<Point> pts;
    pts.reserve(vertex_indices.size());
    for (int v : vertex_indices) pts.push_back(vertices_.at(static_cast<size_t>(v)));
    return affine_simplex(pts);
}

// ---------------------------------------------------------------------------
// Euler characteristic
// ---------------------------------------------------------------------------

namespace {

struct VecHash {
    size_t operator()(const std::vector<int>& v) const {
        size_t h = 1469598103934665603ull;
        for (int x : v) {
            h ^= static_cast<size_t>(x) + 0x9e3779b97f4a7c15ull;
            h *= 1099511628211ull;
        }
        return h;
    }
};

}  // namespace

long long euler_characteristic(const Complex& c) {
    std::unordered_set<std::vector<int>, VecHash> seen;
    std::vector<long long> by_dim;
    for (const PLCell& cell : c.cells()) {
        for (const auto& simplex : cell.simplices) {
            std::vector<int> verts = simplex;
            std::sort(verts.begin(), verts.end());
            const size_t nv = verts.size();
            for (unsigned mask = 1; mask < (1u << nv); ++mask) {
                std::vector<int> face;
                for (size_t i = 0; i < nv; ++i) {
                    if (mask >> i & 1u) face.push_back(verts[i]);
                }
                const size_t d = face.size() - 1;
                if (seen.insert(std::move(face)).second) {
                    if (by_dim.size() <= d) by_dim.resize(d + 1, 0);
                    by_dim[d] += 1;
                }
            }
        }
    }
    long long chi = 0;
    for (size_t d = 0; d < by_dim.size(); ++d) chi += (d % 2 == 0) ? by_dim[d] : -by_dim[d];
    return chi;
}

// ---------------------------------------------------------------------------
// Labeled isomorphism
// ---------------------------------------------------------------------------

namespace {

struct IsoContext {
    const std::vector<std::map<int, int>>* n1;
    const std::vector<std::map<int, int>>* n2;
    std::vector<int> order;               // cells of c1 in assignment order
    std::vector<std::vector<int>> pools;  // per color of c2: member cells
    std::vector<int> col1, col2;
    std::vector<int> mapping;             // c1 cell -> c2 cell or -1
    std::vector<char> used;               // c2 cell already an image
    std::chrono::steady_clock::time_point deadline;
    bool has_deadline = false;
    bool timed_out = false;
    long long ticks = 0;

    bool out_of_time() {
        if (!has_deadline) return false;
        if (ticks++ % 256 == 0 && std::chrono::steady_clock::now() > deadline) timed_out = true;
        return timed_out;
    }

    bool assign(size_t depth) {
        if (out_of_time()) return false;
        if (depth == order.size()) return true;
        const int i = order[depth];
        // Candidates must match color, be unused, and agree with every
        // already-mapped neighbor on shared-facet multiplicity.
        std::vector<int> cands;
        bool first = true;
        for (const auto& [u, m] : (*n1)[static_cast<size_t>(i)]) {
            if (mapping[static_cast<size_t>(u)] < 0) continue;
            const int mu = mapping[static_cast<size_t>(u)];
            std::vector<int> next;
            if (first) {
                for (const auto& [j, mj] : (*n2)[static_cast<size_t>(mu)]) {
                    if (mj == m && !used[static_cast<size_t>(j)] && col2[static_cast<size_t>(j)] == col1[static_cast<size_t>(i)]) {
                        next.push_back(j);
                    }
                }
                first = false;
            } else {
                for (int j : cands) {
                    auto it = (*n2)[static_cast<size_t>(mu)].find(j);
                    if (it != (*n2)[static_cast<size_t>(mu)].end() && it->second == m) next.push_back(j);
                }
            }
            cands = std::move(next);
            if (cands.empty()) return false;
        }
        if (first) {
            for (int j : pools[static_cast<size_t>(col1[static_cast<size_t>(i)])]) {
                if (!used[static_cast<size_t>(j)]) cands.push_back(j);
            }
        }
        for (int j : cands) {
            mapping[static_cast<size_t>(i)] = j;
            used[static_cast<size_t>(j)] = 1;
            if (assign(depth + 1)) return true;
            used[static_cast<size_t>(j)] = 0;
            mapping[static_cast<size_t>(i)] = -1;
            if (timed_out) return false;
        }
        return false;
    }
};

}  // namespace

IsoResult labeled_isomorphic(const Complex& c1, const Complex& c2, double budget_seconds) {
    IsoResult result;
    const size_t n = c1.cells().size();
    if (n != c2.cells().size()) {
        result.outcome = IsoOutcome::non_isomorphic;
        return result;
    }
    if (n == 0) {
        result.outcome = IsoOutcome::isomorphic;
        return result;
    }
    Complex a = c1, b = c2;
    a.build_adjacency();
    b.build_adjacency();
    const auto n1 = a.adjacency_multiplicity();
    const auto n2 = b.adjacency_multiplicity();

    // Joint color refinement on (type_label, neighbor color multiset).
    std::vector<int> col1(n), col2(n);
    {
        std::map<std::string, int> type_ids;
        for (size_t i = 0; i < n; ++i) col1[i] = type_ids.emplace(a.cells()[i].type_label, static_cast<int>(type_ids.size())).first->second;
        for (size_t i = 0; i < n; ++i) {
            auto it = type_ids.find(b.cells()[i].type_label);
            if (it == type_ids.end()) {
                result.outcome = IsoOutcome::non_isomorphic;
                return result;
            }
            col2[i] = it->second;
        }
    }
    size_t classes = 0;
    for (;;) {
        using Key = std::pair<int, std::vector<std::pair<int, int>>>;
        std::map<Key, int> next_ids;
        auto refine = [&](const std::vector<std::map<int, int>>& nbr, std::vector<int>& col) {
            std::vector<int> out(n);
            for (size_t i = 0; i < n; ++i) {
                Key key{col[i], {}};
                for (const auto& [u, m] : nbr[i]) key.second.emplace_back(col[static_cast<size_t>(u)], m);
                std::sort(key.second.begin(), key.second.end());
                out[i] = next_ids.emplace(std::move(key), static_cast<int>(next_ids.size())).first->second;
            }
            return out;
        };
        std::vector<int> new1 = refine(n1, col1);
        std::vector<int> new2 = refine(n2, col2);
        const size_t new_classes = next_ids.size();
        col1 = std::move(new1);
        col2 = std::move(new2);
        if (new_classes == classes) break;
        classes = new_classes;
    }
    std::vector<int> hist1(classes, 0), hist2(classes, 0);
    for (size_t i = 0; i < n; ++i) {
        hist1[static_cast<size_t>(col1[i])]++;
        hist2[static_cast<size_t>(col2[i])]++;
    }
    if (hist1 != hist2) {
        result.outcome = IsoOutcome::non_isomorphic;
        return result;
    }

    IsoContext ctx;
    ctx.n1 = &n1;
    ctx.n2 = &n2;
    ctx.col1 = col1;
    ctx.col2 = col2;
    ctx.mapping.assign(n, -1);
    ctx.used.assign(n, 0);
    ctx.pools.assign(classes, {});
    for (size_t j = 0; j < n; ++j) ctx.pools[static_cast<size_t>(col2[j])].push_back(static_cast<int>(j));
    if (budget_seconds >= 0) {
        ctx.has_deadline = true;
        ctx.deadline = std::chrono::steady_clock::now() +
                       std::chrono::microseconds(static_cast<long long>(budget_seconds * 1e6));
    }

    // Assignment order: breadth-first from a cell in a rarest color class,
    // frontier sorted by (class size, color).  Unreached components restart
    // the same way.
    std::vector<char> queued(n, 0);
    auto class_size = [&](int i) { return hist1[static_cast<size_t>(col1[static_cast<size_t>(i)])]; };
    std::vector<int> frontier;
    auto push_best_unqueued = [&]() {
        int best = -1;
        for (size_t i = 0; i < n; ++i) {
            if (queued[i]) continue;
            if (best < 0 || class_size(static_cast<int>(i)) < class_size(best) ||
                (class_size(static_cast<int>(i)) == class_size(best) && col1[i] < col1[static_cast<size_t>(best)])) {
                best = static_cast<int>(i);
            }
        }
        if (best >= 0) {
            frontier.push_back(best);
            queued[static_cast<size_t>(best)] = 1;
        }
    };
    push_best_unqueued();
    size_t head = 0;
    while (ctx.order.size() < n) {
        if (head == frontier.size()) {
            push_best_unqueued();
            continue;
        }
        const int i = frontier[head++];
        ctx.order.push_back(i);
        std::vector<int> nbrs;
        for (const auto& [u, m] : n1[static_cast<size_t>(i)]) {
            (void)m;
            if (!queued[static_cast<size_t>(u)]) nbrs.push_back(u);
        }
        std::sort(nbrs.begin(), nbrs.end(), [&](int x, int y) {
            if (class_size(x) != class_size(y)) return class_size(x) < class_size(y);
            if (col1[static_cast<size_t>(x)] != col1[static_cast<size_t>(y)]) return col1[static_cast<size_t>(x)] < col1[static_cast<size_t>(y)];
            return x < y;
        });
        for (int u : nbrs) {
            frontier.push_back(u);
            queued[static_cast<size_t>(u)] = 1;
        }
    }

    const bool found = ctx.assign(0);
    if (ctx.timed_out) {
        result.outcome = IsoOutcome::undecided;
        return result;
    }
    if (!found) {
        result.outcome = IsoOutcome::non_isomorphic;
        return result;
    }
    result.outcome = IsoOutcome::isomorphic;
    result.mapping = std::move(ctx.mapping);
    return result;
}

}  // namespace torusdiv::geom
