#include <torusdiv/rule.hpp>

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace torusdiv::rule {

std::string TileType::label() const {
    return std::to_string(p) + "," + std::to_string(q);
}

TileType tile_type(int n, int p) {
    if (n < 1 || p < 1 || p > n) throw std::invalid_argument("tile_type: need 1 <= p <= n");
    return TileType{n, p, n - p};
}

TileType parse_type_label(int n, const std::string& label) {
    const auto comma = label.find(',');
    if (comma == std::string::npos) throw std::invalid_argument("type label: expected \"p,q\", got " + label);
    int p = 0, q = 0;
    try {
        p = std::stoi(label.substr(0, comma));
        q = std::stoi(label.substr(comma + 1));
    } catch (const std::exception&) {
        throw std::invalid_argument("type label: expected \"p,q\", got " + label);
    }
    if (p < 1 || q < 0 || p + q != n) {
        throw std::invalid_argument("type label " + label + " invalid for n=" + std::to_string(n));
    }
    return TileType{n, p, q};
}

Point Tile::frame_eval(int m, const std::vector<Rational>& param) const {
    const int q = type.q;
    if (static_cast<int>(param.size()) != q) throw std::invalid_argument("frame_eval: wrong parameter dimension");
    const auto& frame = frames[static_cast<size_t>(m)];
    const int amb = frame[0].dim();
    Point out;
    out.coords.assign(static_cast<size_t>(amb), Rational(0));
    for (unsigned mask = 0; mask < frame.size(); ++mask) {
        Rational w = 1;
        for (int j = 0; j < q; ++j) {
            w *= (mask >> j & 1u) ? param[static_cast<size_t>(j)] : Rational(1) - param[static_cast<size_t>(j)];
        }
        if (w == 0) continue;
        for (int c = 0; c < amb; ++c) out[c] += w * frame[mask][c];
    }
    return out;
}

Tile model_tile(TileType t) {
    const int p = t.p, q = t.q, amb = t.n - 1;
    Tile tile;
    tile.id = "model";
    tile.type = t;
    tile.frames.resize(static_cast<size_t>(p));
    for (int m = 0; m < p; ++m) {
        auto& frame = tile.frames[static_cast<size_t>(m)];
        frame.resize(1u << q);
        for (unsigned mask = 0; mask < (1u << q); ++mask) {
            std::vector<Rational> c(static_cast<size_t>(amb));
            for (int i = 0; i < m; ++i) c[static_cast<size_t>(i)] = 1;  // chain vertex e_1+..+e_m
            for (int j = 0; j < q; ++j) {
                if (mask >> j & 1u) c[static_cast<size_t>(p - 1 + j)] = 1;
            }
            frame[mask] = Point(std::move(c));
        }
    }
    return tile;
}

void add_tile_cell(Complex& c, const Tile& t) {
    const auto simplices = geom::chain_cell_simplices(t.frames, t.type.q);
    std::vector<std::vector<Point>> as_points;
    as_points.reserve(simplices.size());
    for (const auto& s : simplices) as_points.push_back(s.vertices);
    c.add_cell(t.id, t.type.label(), t.anchor_point(), as_points);
}

Complex tile_realization(TileType t) {
    Complex c(t.n - 1);
    Tile m = model_tile(t);
    add_tile_cell(c, m);
    return c;
}

Tile tile_from_cell(const Complex& c, const geom::PLCell& cell, int n) {
    const TileType type = parse_type_label(n, cell.type_label);
    const int p = type.p, q = type.q;
    const auto labels = geom::staircase_labels(p - 1, q);
    if (cell.simplices.size() != labels.size()) {
        throw std::invalid_argument("cell " + cell.id + ": simplex count does not match its tile type");
    }
    Tile tile;
    tile.id = cell.id;
    tile.type = type;
    tile.frames.assign(static_cast<size_t>(p), std::vector<Point>(1u << q));
    std::vector<std::vector<char>> seen(static_cast<size_t>(p), std::vector<char>(1u << q, 0));
    for (size_t si = 0; si < labels.size(); ++si) {
        if (cell.simplices[si].size() != labels[si].size()) {
            throw std::invalid_argument("cell " + cell.id + ": simplex arity does not match its tile type");
        }
        for (size_t pos = 0; pos < labels[si].size(); ++pos) {
            const auto [m, mask] = labels[si][pos];
            const Point& pt = c.vertices().at(static_cast<size_t>(cell.simplices[si][pos]));
            auto& slot = tile.frames[static_cast<size_t>(m)][mask];
            if (!seen[static_cast<size_t>(m)][mask]) {
                slot = pt;
                seen[static_cast<size_t>(m)][mask] = 1;
            } else if (slot != pt) {
                throw std::invalid_argument("cell " + cell.id + ": inconsistent staircase structure");
            }
        }
    }
    // Frames must be affine embeddings of the fiber cube.
    for (int m = 0; m < p; ++m) {
        const auto& frame = tile.frames[static_cast<size_t>(m)];
        const int amb = frame[0].dim();
        for (unsigned mask = 0; mask < (1u << q); ++mask) {
            for (int cix = 0; cix < amb; ++cix) {
                Rational expect = frame[0][cix];
                for (int j = 0; j < q; ++j) {
                    if (mask >> j & 1u) expect += frame[1u << j][cix] - frame[0][cix];
                }
                if (expect != frame[mask][cix]) {
                    throw std::invalid_argument("cell " + cell.id + ": fiber frame is not affine");
                }
            }
        }
    }
    if (cell.anchor < 0) {
        throw std::invalid_argument("cell " + cell.id + ": anchor missing");
    }
    if (c.vertices().at(static_cast<size_t>(cell.anchor)) != tile.anchor_point()) {
        throw std::invalid_argument("cell " + cell.id + ": anchor missing or not the chain-start corner");
    }
    return tile;
}

namespace {

// Insert bit eps at position zeta.
unsigned insert_bit(unsigned mask, int zeta, int eps) {
    const unsigned low = mask & ((1u << zeta) - 1u);
    const unsigned high = mask >> zeta;
    return low | (static_cast<unsigned>(eps) << zeta) | (high << (zeta + 1));
}

// Parameter point c + (corner - c)/2 of the fiber cube, c = center.
std::vector<Rational> shrunk_param(unsigned mask, int q) {
    std::vector<Rational> param(static_cast<size_t>(q));
    for (int j = 0; j < q; ++j) {
        param[static_cast<size_t>(j)] = (mask >> j & 1u) ? Rational(3, 4) : Rational(1, 4);
    }
    return param;
}

}  // namespace

std::vector<Tile> subdivide_tile(const Tile& t) {
    const int p = t.type.p, q = t.type.q;
    if (q == 0) return {t};

    std::vector<Tile> children;
    children.reserve(1 + static_cast<size_t>(2 * q));

    // Inner child (p,q): the apex fiber shrinks toward its center and
    // becomes the new chain start; the rest of the chain shifts up.
    {
        Tile inner;
        inner.id = t.id + ".0";
        inner.type = t.type;
        inner.frames.resize(static_cast<size_t>(p));
        auto& f0 = inner.frames[0];
        f0.resize(1u << q);
        for (unsigned mask = 0; mask < (1u << q); ++mask) {
            f0[mask] = t.frame_eval(p - 1, shrunk_param(mask, q));
        }
        for (int m = 0; m + 1 < p; ++m) inner.frames[static_cast<size_t>(m) + 1] = t.frames[static_cast<size_t>(m)];
        children.push_back(std::move(inner));
    }

    // Flank children (p+1,q-1), one per fiber-cube facet, ordered by
    // (axis, side 0 then 1).  The new chain starts at the dragged vertex
    // frame (the collapsed cone image on that facet) and continues with the
    // parent chain restricted to the facet.
    for (int zeta = 0; zeta < q; ++zeta) {
        for (int eps = 0; eps < 2; ++eps) {
            Tile flank;
            flank.id = t.id + "." + std::to_string(1 + 2 * zeta + eps);
            flank.type = TileType{t.type.n, p + 1, q - 1};
            flank.frames.resize(static_cast<size_t>(p) + 1);
            const unsigned sub = 1u << (q - 1);
            auto& dragged = flank.frames[0];
            dragged.resize(sub);
            for (unsigned mask = 0; mask < sub; ++mask) {
                dragged[mask] = t.frame_eval(p - 1, shrunk_param(insert_bit(mask, zeta, eps), q));
            }
            for (int m = 0; m < p; ++m) {
                auto& fr = flank.frames[static_cast<size_t>(m) + 1];
                fr.resize(sub);
                for (unsigned mask = 0; mask < sub; ++mask) {
                    fr[mask] = t.corner(m, insert_bit(mask, zeta, eps));
                }
            }
            children.push_back(std::move(flank));
        }
    }
    return children;
}

std::vector<FacetKey> facet_keys(TileType t) {
    std::vector<FacetKey> keys;
    for (int zeta = 0; zeta < t.q; ++zeta) {
        for (int side = 0; side < 2; ++side) {
            FacetKey k;
            k.cube = true;
            k.axis = zeta;
            k.side = side;
            keys.push_back(k);
        }
    }
    if (t.p >= 2) {
        for (int j = 0; j < t.p; ++j) {
            FacetKey k;
            k.cube = false;
            k.drop = j;
            keys.push_back(k);
        }
    }
    return keys;
}

std::vector<std::vector<Point>> facet_frames(const Tile& t, const FacetKey& f) {
    const int p = t.type.p, q = t.type.q;
    std::vector<std::vector<Point>> out;
    if (f.cube) {
        out.resize(static_cast<size_t>(p));
        const unsigned sub = 1u << (q - 1);
        for (int m = 0; m < p; ++m) {
            out[static_cast<size_t>(m)].resize(sub);
            for (unsigned mask = 0; mask < sub; ++mask) {
                out[static_cast<size_t>(m)][mask] = t.corner(m, insert_bit(mask, f.axis, f.side));
            }
        }
    } else {
        if (p < 2) throw std::invalid_argument("facet_frames: chain drop needs p >= 2");
        for (int m = 0; m < p; ++m) {
            if (m != f.drop) out.push_back(t.frames[static_cast<size_t>(m)]);
        }
    }
    return out;
}

std::vector<Tile> Template::children() const {
    std::vector<Tile> out;
    out.push_back(inner);
    out.insert(out.end(), flanks.begin(), flanks.end());
    return out;
}

namespace {

std::vector<Point> facet_points(const Tile& t, const FacetKey& f) {
    std::vector<Point> pts;
    for (const auto& frame : facet_frames(t, f)) {
        for (const Point& p : frame) pts.push_back(p);
    }
    return pts;
}

// Does every point satisfy the model-coordinate equation of the parent
// facet?  Chain coordinates are x_1..x_{p-1} = coords 0..p-2, fiber
// coordinates follow.
bool on_parent_facet(const std::vector<Point>& pts, const FacetKey& f, int p) {
    for (const Point& pt : pts) {
        if (f.cube) {
            if (pt[p - 1 + f.axis] != Rational(f.side)) return false;
        } else if (f.drop == 0) {
            if (pt[0] != 1) return false;
        } else if (f.drop == p - 1) {
            if (pt[p - 2] != 0) return false;
        } else {
            if (pt[f.drop - 1] != pt[f.drop]) return false;
        }
    }
    return true;
}

}  // namespace

Template build_template(int n, int p) {
    const TileType type = tile_type(n, p);
    Template tpl;
    tpl.parent = type;
    Tile parent = model_tile(type);
    parent.id = "t";
    if (type.q == 0) {
        tpl.identity = true;
        tpl.inner = parent;
        return tpl;
    }
    auto children = subdivide_tile(parent);
    tpl.inner = children[0];
    tpl.flanks.assign(children.begin() + 1, children.end());

    // Assign every child facet that lies on the parent boundary to the
    // parent facet containing it.
    for (const FacetKey& pf : facet_keys(type)) {
        TraceEntry entry;
        entry.parent_facet = pf;
        for (size_t ci = 0; ci < children.size(); ++ci) {
            for (const FacetKey& cf : facet_keys(children[ci].type)) {
                if (on_parent_facet(facet_points(children[ci], cf), pf, p)) {
                    entry.cover.emplace_back(static_cast<int>(ci), cf);
                }
            }
        }
        tpl.boundary_trace.push_back(std::move(entry));
    }
    return tpl;
}

SubdivisionRule make_subdivision_rule(int n) {
    if (n < 1) throw std::invalid_argument("make_subdivision_rule: n must be >= 1");
    SubdivisionRule r;
    r.n = n;
    for (int p = 1; p <= n; ++p) r.templates.push_back(build_template(n, p));
    return r;
}

Complex subdivide(const Complex& c, const SubdivisionRule& r) {
    Complex out(c.ambient_dim());
    for (const auto& cell : c.cells()) {
        const TileType type = parse_type_label(r.n, cell.type_label);
        if (type.q == 0) {
            // Identity template: the cell persists unchanged, id included.
            std::vector<std::vector<Point>> as_points;
            for (const auto& ix : cell.simplices) as_points.push_back(c.simplex_at(ix).vertices);
            out.add_cell(cell.id, cell.type_label, c.vertices().at(static_cast<size_t>(cell.anchor)), as_points);
            continue;
        }
        const Tile tile = tile_from_cell(c, cell, r.n);
        for (const Tile& child : subdivide_tile(tile)) add_tile_cell(out, child);
    }
    out.canonicalize();
    out.build_adjacency();
    if (auto witness = out.closure_witness()) {
        throw std::runtime_error("subdivide: boundary traces of adjacent cells disagree: " + *witness);
    }
    return out;
}

Complex iterate(const Complex& c, const SubdivisionRule& r, int k) {
    if (k < 0) throw std::invalid_argument("iterate: k must be >= 0");
    Complex cur = c;
    for (int i = 0; i < k; ++i) cur = subdivide(cur, r);
    return cur;
}

CountVector count_vector(const Complex& c, int n) {
    CountVector v;
    v.counts.assign(static_cast<size_t>(n), 0);
    for (const auto& cell : c.cells()) {
        const TileType t = parse_type_label(n, cell.type_label);
        v.counts[static_cast<size_t>(t.p) - 1] += 1;
    }
    return v;
}

CountVector TransitionMatrix::apply(const CountVector& v) const {
    CountVector out;
    out.counts.assign(static_cast<size_t>(n), 0);
    for (int i = 0; i < n; ++i) {
        long long s = 0;
        for (int j = 0; j < n; ++j) s += m[static_cast<size_t>(i)][static_cast<size_t>(j)] * v.counts[static_cast<size_t>(j)];
        out.counts[static_cast<size_t>(i)] = s;
    }
    return out;
}

CountVector TransitionMatrix::apply_power(const CountVector& v, int k) const {
    CountVector cur = v;
    for (int i = 0; i < k; ++i) cur = apply(cur);
    return cur;
}

TransitionMatrix transition_matrix(int n) {
    if (n < 1) throw std::invalid_argument("transition_matrix: n must be >= 1");
    TransitionMatrix t;
    t.n = n;
    t.m.assign(static_cast<size_t>(n), std::vector<long long>(static_cast<size_t>(n), 0));
    for (int p = 1; p <= n; ++p) {
        t.m[static_cast<size_t>(p) - 1][static_cast<size_t>(p) - 1] = 1;
        if (p + 1 <= n) t.m[static_cast<size_t>(p)][static_cast<size_t>(p) - 1] = 2 * (n - p);
    }
    return t;
}

Point homotopy_ft(int p, int q, const Rational& t, const Point& pt) {
    if (p < 1 || q < 1) throw std::invalid_argument("homotopy_ft: need p >= 1 and q >= 1");
    if (t < 0 || t > 1) throw std::domain_error("homotopy_ft: t outside [0,1]");
    const int dim = (p - 1) + (q - 1) + 1;
    if (pt.dim() != dim) throw std::domain_error("homotopy_ft: point has wrong dimension");
    Rational xsum = 0;
    for (int i = 0; i < p - 1; ++i) {
        if (pt[i] < 0) throw std::domain_error("homotopy_ft: point outside C (x < 0)");
        xsum += pt[i];
    }
    if (xsum > 1) throw std::domain_error("homotopy_ft: point outside C (sum x > 1)");
    for (int i = p - 1; i < dim; ++i) {  // y coordinates and z
        if (pt[i] < 0 || pt[i] > 1) throw std::domain_error("homotopy_ft: point outside C (unit box)");
    }
    Point out = pt;
    const Rational z = pt[dim - 1];
    out[dim - 1] = z * (Rational(1) + (xsum - 1) * t / 2);
    return out;
}

Complex initial_sphere(int n) {
    if (n < 1) throw std::invalid_argument("initial_sphere: n must be >= 1");
    Complex c(n);
    const int q = n - 1;
    for (int axis = 0; axis < n; ++axis) {
        for (int side = 0; side < 2; ++side) {
            Tile t;
            t.id = std::to_string(2 * axis + side);
            t.type = TileType{n, 1, q};
            t.frames.resize(1);
            auto& frame = t.frames[0];
            frame.resize(1u << q);
            std::vector<int> fiber_axes;
            for (int a = 0; a < n; ++a) {
                if (a != axis) fiber_axes.push_back(a);
            }
            for (unsigned mask = 0; mask < (1u << q); ++mask) {
                std::vector<Rational> coords(static_cast<size_t>(n));
                coords[static_cast<size_t>(axis)] = side;
                for (int j = 0; j < q; ++j) {
                    if (mask >> j & 1u) coords[static_cast<size_t>(fiber_axes[static_cast<size_t>(j)])] = 1;
                }
                frame[mask] = Point(std::move(coords));
            }
            add_tile_cell(c, t);
        }
    }
    c.canonicalize();
    c.build_adjacency();
    if (n >= 2 && !c.is_closed()) throw std::logic_error("initial_sphere: construction not closed");
    return c;
}

}  // namespace torusdiv::rule
