#include <torusdiv/cover.hpp>

#include <torusdiv/kuhn.hpp>
#include <torusdiv/rule.hpp>

#include <algorithm>
#include <stdexcept>

namespace torusdiv::cover {

using geom::Point;
using torusdiv::Rational;

long long LatticePoint::word_norm() const {
    long long s = 0;
    for (long long c : coords) s += c < 0 ? -c : c;
    return s;
}

std::vector<int> LatticePoint::support() const {
    std::vector<int> out;
    for (size_t i = 0; i < coords.size(); ++i) {
        if (coords[i] != 0) out.push_back(static_cast<int>(i));
    }
    return out;
}

std::pair<int, int> rank(const LatticePoint& v) {
    const int p = static_cast<int>(v.support().size());
    return {p, v.n() - p};
}

bool LatticeBall::contains(const LatticePoint& v) const {
    return v.n() == n && v.word_norm() <= k;
}

LatticeBall ball(int n, int k) {
    if (n < 1 || k < 0) throw std::invalid_argument("ball: need n >= 1 and k >= 0");
    LatticeBall b;
    b.n = n;
    b.k = k;
    LatticePoint v;
    v.coords.assign(static_cast<size_t>(n), -static_cast<long long>(k));
    for (;;) {
        if (v.word_norm() <= k) b.members.push_back(v);
        int axis = n - 1;
        while (axis >= 0 && v.coords[static_cast<size_t>(axis)] == k) {
            v.coords[static_cast<size_t>(axis)] = -static_cast<long long>(k);
            --axis;
        }
        if (axis < 0) break;
        v.coords[static_cast<size_t>(axis)] += 1;
    }
    return b;
}

std::vector<ExposedFace> exposed_faces(int n, int k) {
    if (k < 1) throw std::invalid_argument("exposed_faces: k must be >= 1");
    const LatticeBall b = ball(n, k);
    std::vector<ExposedFace> out;
    for (const LatticePoint& v : b.members) {
        for (int axis = 1; axis <= n; ++axis) {
            for (int sign : {-1, +1}) {
                LatticePoint w = v;
                w.coords[static_cast<size_t>(axis) - 1] += sign;
                if (!b.contains(w)) {
                    ExposedFace f;
                    f.cube = v;
                    f.axis = axis;
                    f.sign = sign;
                    out.push_back(std::move(f));
                }
            }
        }
    }
    return out;
}

namespace {

// Outer corner of the cube [v, v+1]^n: the corner farthest from the origin
// on support axes (v_i + 1 when v_i > 0, else v_i; zero axes stay at v_i).
std::vector<long long> outer_corner(const LatticePoint& v) {
    std::vector<long long> o(v.coords.size());
    for (size_t i = 0; i < v.coords.size(); ++i) {
        o[i] = v.coords[i] > 0 ? v.coords[i] + 1 : v.coords[i];
    }
    return o;
}

struct FaceContext {
    const LatticePoint* cube;
    std::vector<long long> outer;
    std::vector<int> supp;
    std::vector<int> fiber_axes;   // ambient axes carrying the fiber cube
    int fixed_axis = -1;           // ambient axis the face is constant on
    long long fixed_value = 0;
};

// Lattice coordinate of star-cube vertex u (0/1 over support axes, 1 = outer
// end) combined with fiber corner mask, as an exact point on the face.
Point embed(const FaceContext& fc, const std::vector<int>& u, unsigned mask) {
    const int n = fc.cube->n();
    std::vector<Rational> coords(static_cast<size_t>(n));
    for (int a = 0; a < n; ++a) coords[static_cast<size_t>(a)] = Rational(fc.cube->coords[static_cast<size_t>(a)]);
    for (size_t j = 0; j < fc.supp.size(); ++j) {
        const size_t axis = static_cast<size_t>(fc.supp[j]);
        const long long o = fc.outer[axis];
        const long long inner = o - (fc.cube->coords[axis] > 0 ? 1 : -1);
        coords[axis] = Rational(u[j] ? o : inner);
    }
    for (size_t j = 0; j < fc.fiber_axes.size(); ++j) {
        coords[static_cast<size_t>(fc.fiber_axes[j])] = Rational((mask >> j) & 1u);
    }
    if (fc.fixed_axis >= 0) coords[static_cast<size_t>(fc.fixed_axis)] = Rational(fc.fixed_value);
    return Point(std::move(coords));
}

// Builds a tile whose chain descends from the outer corner through the given
// ascending star chain (chain.back() must be the all-ones star vertex).
rule::Tile make_tile(const FaceContext& fc, const std::string& id, int n,
                     const std::vector<std::vector<int>>& star_chain) {
    rule::Tile t;
    t.id = id;
    const int chain_len = static_cast<int>(star_chain.size());
    const int q = static_cast<int>(fc.fiber_axes.size());
    t.type = rule::TileType{n, chain_len, q};
    t.frames.resize(static_cast<size_t>(chain_len));
    for (int m = 0; m < chain_len; ++m) {
        auto& frame = t.frames[static_cast<size_t>(m)];
        frame.resize(1u << q);
        const auto& u = star_chain[static_cast<size_t>(chain_len - 1 - m)];  // descend from outer
        for (unsigned mask = 0; mask < (1u << q); ++mask) frame[mask] = embed(fc, u, mask);
    }
    return t;
}

}  // namespace

RefinedSphereTiling refine_exposed(int n, int k) {
    if (n < 1 || k < 0) throw std::invalid_argument("refine_exposed: need n >= 1 and k >= 0");
    RefinedSphereTiling out;
    out.n = n;
    out.k = k;
    if (k == 0) {
        out.complex = rule::initial_sphere(n);
        return out;
    }
    out.faces = exposed_faces(n, k);
    out.complex = Complex(n);

    for (size_t fi = 0; fi < out.faces.size(); ++fi) {
        const ExposedFace& face = out.faces[fi];
        const LatticePoint& v = face.cube;
        if (v.word_norm() != k) {
            throw std::logic_error("refine_exposed: interior cube claims an exposed face");
        }
        const auto [p, q] = rank(v);
        FaceContext fc;
        fc.cube = &v;
        fc.outer = outer_corner(v);
        fc.supp = v.support();
        const int a = face.axis - 1;
        const bool support_face = v.coords[static_cast<size_t>(a)] != 0;

        std::vector<rule::Tile> tiles;
        if (support_face) {
            // One of the p outward faces: fixed on axis a at the outer value,
            // fiber over all zero axes, chains from the outer-corner star.
            fc.fixed_axis = -1;
            for (int axis = 0; axis < n; ++axis) {
                if (v.coords[static_cast<size_t>(axis)] == 0) fc.fiber_axes.push_back(axis);
            }
            int star_axis = -1;
            for (size_t j = 0; j < fc.supp.size(); ++j) {
                if (fc.supp[j] == a) star_axis = static_cast<int>(j);
            }
            const auto star = kuhn::vertex_star(p, kuhn::Corner::all_ones, true);
            const auto& facet = star.facets[static_cast<size_t>(star_axis)];
            for (size_t si = 0; si < facet.simplices.size(); ++si) {
                tiles.push_back(make_tile(fc, std::to_string(fi) + "." + std::to_string(si), n,
                                          facet.simplices[si]));
            }
        } else {
            // One of the 2q zero-axis faces: fiber over the remaining zero
            // axes, chains through the whole support cube.
            fc.fixed_axis = a;
            fc.fixed_value = face.sign > 0 ? 1 : 0;
            for (int axis = 0; axis < n; ++axis) {
                if (axis != a && v.coords[static_cast<size_t>(axis)] == 0) fc.fiber_axes.push_back(axis);
            }
            const auto tri = kuhn::kuhn_triangulation(p, true);
            for (size_t si = 0; si < tri.size(); ++si) {
                tiles.push_back(make_tile(fc, std::to_string(fi) + "." + std::to_string(si), n,
                                          tri[si].chain));
            }
        }
        for (const rule::Tile& t : tiles) {
            rule::add_tile_cell(out.complex, t);
            out.owner.emplace(t.id, fi);
        }
    }

    out.complex.canonicalize();
    out.complex.build_adjacency();
    if (n >= 2) {
        if (auto witness = out.complex.closure_witness()) {
            throw std::logic_error("refine_exposed: tiling is not closed: " + *witness);
        }
    }
    return out;
}

}  // namespace torusdiv::cover
