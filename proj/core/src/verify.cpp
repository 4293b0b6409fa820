#include <torusdiv/verify.hpp>

#include <torusdiv/cover.hpp>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <tuple>
#include <utility>

namespace torusdiv::verify {

namespace {

using geom::Point;
using rule::FacetKey;
using rule::Template;
using rule::Tile;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

template <class Body>
CheckReport timed_check(std::string name, std::map<std::string, long long> params, Body&& body) {
    CheckReport r;
    r.name = std::move(name);
    r.params = std::move(params);
    auto t0 = Clock::now();
    try {
        body(r);
    } catch (const std::exception& e) {
        r.status = Status::fail;
        r.witness = std::string("exception: ") + e.what();
    }
    r.seconds = seconds_since(t0);
    if (r.status == Status::fail && r.witness.empty()) r.witness = "unspecified failure";
    return r;
}

Rational tile_volume(const Tile& t) {
    Rational v = 0;
    for (const auto& s : geom::chain_cell_simplices(t.frames, t.type.q)) v += geom::simplex_volume(s);
    return v;
}

std::string facet_name(const FacetKey& f) {
    std::ostringstream os;
    if (f.cube)
        os << "cube-facet(axis=" << f.axis << ",side=" << f.side << ")";
    else
        os << "chain-drop(" << f.drop << ")";
    return os.str();
}

std::string counts_str(const rule::CountVector& v) {
    std::ostringstream os;
    os << "[";
    for (size_t i = 0; i < v.counts.size(); ++i) {
        if (i) os << ", ";
        os << v.counts[i];
    }
    os << "]";
    return os.str();
}

using FacetTuple = std::tuple<bool, int, int, int>;

FacetTuple facet_tuple(const FacetKey& f) { return {f.cube, f.axis, f.side, f.drop}; }

// Vertex set of a tile facet, as a sorted point list (the key under which two
// facets count as the same wall).
std::vector<Point> facet_vertex_set(const std::vector<std::vector<Point>>& frames) {
    std::vector<Point> pts;
    for (const auto& fr : frames)
        for (const auto& pt : fr) pts.push_back(pt);
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return pts;
}

// Membership in the model cell Delta^(p-1) x I^q: descending chain
// coordinates in [0,1] on the leading p-1 axes, fiber box on the rest.
bool in_model_cell(const Point& c, int p, int q) {
    Rational prev = 1;
    for (int i = 0; i + 1 < p; ++i) {
        if (c[i] > prev) return false;
        prev = c[i];
    }
    if (prev < 0) return false;
    for (int i = p - 1; i < p - 1 + q; ++i)
        if (c[i] < 0 || c[i] > 1) return false;
    return true;
}

bool well_formed_tile(const Tile& t, int ambient) {
    if (static_cast<int>(t.frames.size()) != t.type.p) return false;
    for (const auto& fr : t.frames) {
        if (fr.size() != (size_t{1} << t.type.q)) return false;
        for (const auto& pt : fr)
            if (pt.dim() != ambient) return false;
    }
    return true;
}

}  // namespace

CheckReport check_template_data(const Template& tpl) {
    const int n = tpl.parent.n;
    const int p = tpl.parent.p;
    const int q = tpl.parent.q;
    return timed_check("check_template", {{"n", n}, {"p", p}}, [&](CheckReport& r) {
        auto fail = [&](std::string w) {
            r.status = Status::fail;
            r.witness = std::move(w);
        };
        const int ambient = n - 1;
        const Tile parent_tile = rule::model_tile(tpl.parent);

        if (q == 0) {
            if (!tpl.identity) return fail("q=0 template must be the identity");
            if (!tpl.flanks.empty() || !(tpl.inner.frames == parent_tile.frames) ||
                !(tpl.inner.type == tpl.parent) || !tpl.boundary_trace.empty())
                return fail("identity template must keep the tile unchanged");
            r.status = Status::pass;
            return;
        }
        if (tpl.identity) return fail("q>0 template marked as identity");

        // Child counts and types: one inner (p,q) and 2q flanks (p+1,q-1).
        if (!(tpl.inner.type == tpl.parent))
            return fail("inner child type " + tpl.inner.type.label() + " != parent type " +
                        tpl.parent.label());
        if (static_cast<int>(tpl.flanks.size()) != 2 * q)
            return fail("expected " + std::to_string(2 * q) + " flank children, found " +
                        std::to_string(tpl.flanks.size()));
        const rule::TileType flank_type = rule::tile_type(n, p + 1);
        for (const auto& f : tpl.flanks)
            if (!(f.type == flank_type))
                return fail("flank child type " + f.type.label() + " != expected " +
                            flank_type.label());
        const std::vector<Tile> children = tpl.children();
        std::set<std::string> ids;
        for (const auto& c : children) {
            if (!well_formed_tile(c, ambient)) return fail("malformed child tile " + c.id);
            if (!ids.insert(c.id).second) return fail("duplicate child id " + c.id);
        }

        // Exact volume additivity to the parent volume 1/(p-1)!.
        const Rational expected_vol = Rational(1) / Rational(factorial(p - 1));
        if (tile_volume(parent_tile) != expected_vol)
            return fail("parent volume " + rat_str(tile_volume(parent_tile)) + " != " +
                        rat_str(expected_vol));
        Rational child_sum = 0;
        for (const auto& c : children) child_sum += tile_volume(c);
        if (child_sum != expected_vol)
            return fail("children volumes sum to " + rat_str(child_sum) + ", expected " +
                        rat_str(expected_vol));

        // Vertexwise containment of every child in the model parent cell.
        for (const auto& c : children)
            for (const auto& fr : c.frames)
                for (const auto& pt : fr)
                    if (!in_model_cell(pt, p, q))
                        return fail("child " + c.id + " has a vertex outside the parent cell");

        // Boundary trace: every parent facet exactly once.
        const std::vector<FacetKey> parent_facets = rule::facet_keys(tpl.parent);
        std::map<FacetTuple, const rule::TraceEntry*> by_facet;
        for (const auto& entry : tpl.boundary_trace)
            if (!by_facet.emplace(facet_tuple(entry.parent_facet), &entry).second)
                return fail("duplicate trace entry for " + facet_name(entry.parent_facet));
        if (by_facet.size() != parent_facets.size())
            return fail("boundary trace has " + std::to_string(by_facet.size()) +
                        " facets, parent has " + std::to_string(parent_facets.size()));

        std::set<std::pair<int, FacetTuple>> traced;
        auto mark_traced = [&](int child, const FacetKey& f) -> bool {
            return traced.insert({child, facet_tuple(f)}).second;
        };

        for (const auto& pf : parent_facets) {
            auto it = by_facet.find(facet_tuple(pf));
            if (it == by_facet.end()) return fail(facet_name(pf) + " missing from boundary trace");
            const auto& cover = it->second->cover;
            const auto wall = rule::facet_frames(parent_tile, pf);

            if (pf.cube) {
                // Fiber-cube facet: covered whole by the matching flank's
                // leading chain drop, with identical wall structure.
                const int flank_index = 1 + 2 * pf.axis + pf.side;
                const FacetKey child_facet{false, -1, 0, 0};
                if (cover.size() != 1 || cover[0].first != flank_index ||
                    !(cover[0].second == child_facet))
                    return fail(facet_name(pf) + " is not covered by exactly the matching flank");
                if (!(rule::facet_frames(children[static_cast<size_t>(flank_index)], child_facet) ==
                      wall))
                    return fail(facet_name(pf) + " cover does not reproduce the parent wall");
                if (!mark_traced(flank_index, child_facet)) return fail("facet traced twice");
            } else if (pf.drop == p - 1) {
                // Apex drop: covered whole by the inner child's leading drop.
                const FacetKey child_facet{false, -1, 0, 0};
                if (cover.size() != 1 || cover[0].first != 0 || !(cover[0].second == child_facet))
                    return fail(facet_name(pf) + " is not covered by exactly the inner child");
                if (!(rule::facet_frames(children[0], child_facet) == wall))
                    return fail(facet_name(pf) + " cover does not reproduce the parent wall");
                if (!mark_traced(0, child_facet)) return fail("facet traced twice");
            } else {
                // Middle chain drop: the cover must be exactly the standalone
                // subdivision of the wall tile (the wall lemma).
                Tile wall_tile;
                wall_tile.id = "wall";
                wall_tile.type = rule::tile_type(n - 1, p - 1);
                wall_tile.frames = wall;
                const std::vector<Tile> wall_children = rule::subdivide_tile(wall_tile);
                if (cover.size() != wall_children.size())
                    return fail(facet_name(pf) + " cover size " + std::to_string(cover.size()) +
                                " != wall subdivision size " +
                                std::to_string(wall_children.size()));
                const FacetKey child_facet{false, -1, 0, pf.drop + 1};
                for (size_t i = 0; i < cover.size(); ++i) {
                    if (cover[i].first != static_cast<int>(i) || !(cover[i].second == child_facet))
                        return fail(facet_name(pf) + " cover entry " + std::to_string(i) +
                                    " is not child " + std::to_string(i) + "'s " +
                                    facet_name(child_facet));
                    if (!(rule::facet_frames(children[i], child_facet) == wall_children[i].frames))
                        return fail(facet_name(pf) + " refinement disagrees with the wall tile's " +
                                    "own subdivision at child " + std::to_string(i));
                    if (!mark_traced(static_cast<int>(i), child_facet))
                        return fail("facet traced twice");
                }
            }
        }

        // Opposite fiber facets must carry the same cover structure, so glued
        // neighbors refine shared walls identically.
        for (int axis = 0; axis < q; ++axis) {
            const auto& c0 = by_facet.at({true, axis, 0, -1})->cover;
            const auto& c1 = by_facet.at({true, axis, 1, -1})->cover;
            if (c0.size() != c1.size()) return fail("opposite facet covers differ in size");
            for (size_t i = 0; i < c0.size(); ++i)
                if (!(c0[i].second == c1[i].second))
                    return fail("opposite facet covers differ in structure on axis " +
                                std::to_string(axis));
        }

        // Every untraced child facet must be an interior wall shared by
        // exactly two children.
        std::map<std::vector<Point>, int> interior;
        for (size_t ci = 0; ci < children.size(); ++ci)
            for (const auto& fk : rule::facet_keys(children[ci].type)) {
                if (traced.count({static_cast<int>(ci), facet_tuple(fk)})) continue;
                interior[facet_vertex_set(rule::facet_frames(children[ci], fk))] += 1;
            }
        for (const auto& [verts, cnt] : interior)
            if (cnt != 2)
                return fail("an interior child wall is shared by " + std::to_string(cnt) +
                            " children instead of 2");

        r.status = Status::pass;
    });
}

CheckReport check_template(int n, int p) {
    if (n < 1 || p < 1 || p > n)
        throw std::invalid_argument("check_template: need 1 <= p <= n");
    return check_template_data(rule::build_template(n, p));
}

CheckReport check_counts(int n, int k) {
    if (n < 1 || k < 0) throw std::invalid_argument("check_counts: need n >= 1, k >= 0");
    return timed_check("check_counts", {{"n", n}, {"k", k}}, [&](CheckReport& r) {
        const auto engine =
            rule::iterate(rule::initial_sphere(n), rule::make_subdivision_rule(n), k);
        const auto engine_counts = rule::count_vector(engine, n);

        const auto tiling = cover::refine_exposed(n, k);
        const auto oracle_counts = rule::count_vector(tiling.complex, n);

        rule::CountVector initial;
        initial.counts.assign(static_cast<size_t>(n), 0);
        initial.counts[0] = 2LL * n;
        const auto matrix_counts = rule::transition_matrix(n).apply_power(initial, k);

        if (!(engine_counts == matrix_counts)) {
            r.status = Status::fail;
            r.witness = "subdivision counts " + counts_str(engine_counts) +
                        " != matrix prediction " + counts_str(matrix_counts);
            return;
        }
        if (!(oracle_counts == matrix_counts)) {
            r.status = Status::fail;
            r.witness = "lattice tiling counts " + counts_str(oracle_counts) +
                        " != matrix prediction " + counts_str(matrix_counts);
            return;
        }
        r.status = Status::pass;
    });
}

CheckReport check_isomorphism(int n, int k, double budget_seconds) {
    if (n < 1 || k < 0) throw std::invalid_argument("check_isomorphism: need n >= 1, k >= 0");
    return timed_check("check_isomorphism", {{"n", n}, {"k", k}}, [&](CheckReport& r) {
        const auto engine =
            rule::iterate(rule::initial_sphere(n), rule::make_subdivision_rule(n), k);
        const auto tiling = cover::refine_exposed(n, k);
        const auto result = geom::labeled_isomorphic(engine, tiling.complex, budget_seconds);
        switch (result.outcome) {
            case geom::IsoOutcome::isomorphic:
                r.status = Status::pass;
                r.mapping = result.mapping;
                break;
            case geom::IsoOutcome::non_isomorphic:
                r.status = Status::fail;
                r.witness = "no type- and adjacency-preserving bijection exists";
                break;
            case geom::IsoOutcome::undecided:
                r.status = Status::skip;
                break;
        }
    });
}

CheckReport check_euler(int n, int k) {
    if (n < 1 || k < 0) throw std::invalid_argument("check_euler: need n >= 1, k >= 0");
    return timed_check("check_euler", {{"n", n}, {"k", k}}, [&](CheckReport& r) {
        auto engine = rule::iterate(rule::initial_sphere(n), rule::make_subdivision_rule(n), k);
        engine.build_adjacency();
        if (auto w = engine.closure_witness()) {
            r.status = Status::fail;
            r.witness = "subdivided complex is not closed: " + *w;
            return;
        }
        auto tiling = cover::refine_exposed(n, k);
        tiling.complex.build_adjacency();
        if (auto w = tiling.complex.closure_witness()) {
            r.status = Status::fail;
            r.witness = "lattice tiling is not closed: " + *w;
            return;
        }
        const long long expected = (n % 2 == 1) ? 2 : 0;
        const long long chi_engine = geom::euler_characteristic(engine);
        if (chi_engine != expected) {
            r.status = Status::fail;
            r.witness = "subdivided complex has Euler characteristic " +
                        std::to_string(chi_engine) + ", expected " + std::to_string(expected);
            return;
        }
        const long long chi_oracle = geom::euler_characteristic(tiling.complex);
        if (chi_oracle != expected) {
            r.status = Status::fail;
            r.witness = "lattice tiling has Euler characteristic " + std::to_string(chi_oracle) +
                        ", expected " + std::to_string(expected);
            return;
        }
        r.status = Status::pass;
    });
}

std::vector<CheckReport> run_suite(int max_n, int max_k, const SuiteOptions& options) {
    if (max_n < 1 || max_k < 0) throw std::invalid_argument("run_suite: need max_n >= 1, max_k >= 0");
    std::vector<CheckReport> out;
    if (options.templates)
        for (int n = 1; n <= max_n; ++n)
            for (int p = 1; p <= n; ++p) out.push_back(check_template(n, p));
    if (options.counts)
        for (int n = 1; n <= max_n; ++n)
            for (int k = 0; k <= max_k; ++k) out.push_back(check_counts(n, k));
    if (options.euler)
        for (int n = 1; n <= max_n; ++n)
            for (int k = 0; k <= max_k; ++k) out.push_back(check_euler(n, k));
    if (options.iso)
        for (int n = 1; n <= max_n; ++n)
            for (int k = 0; k <= max_k; ++k)
                out.push_back(check_isomorphism(n, k, options.budget_seconds));
    return out;
}

bool all_passed(const std::vector<CheckReport>& reports) {
    for (const auto& r : reports)
        if (r.status == Status::fail) return false;
    return true;
}

std::string format_report(const CheckReport& r) {
    std::ostringstream os;
    switch (r.status) {
        case Status::pass: os << "PASS"; break;
        case Status::fail: os << "FAIL"; break;
        case Status::skip: os << "SKIP"; break;
    }
    os << " " << r.name;
    for (const char* key : {"n", "k", "p"}) {
        auto it = r.params.find(key);
        if (it != r.params.end()) os << " " << key << "=" << it->second;
    }
    for (const auto& [key, value] : r.params)
        if (key != "n" && key != "k" && key != "p") os << " " << key << "=" << value;
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3f", r.seconds);
    os << " (" << buf << "s)";
    if (!r.witness.empty()) os << ": " << r.witness;
    return os.str();
}

}  // namespace torusdiv::verify
