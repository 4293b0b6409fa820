#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <torusdiv/geom.hpp>

#include <bit>
#include <set>
#include <vector>

using namespace torusdiv;
using geom::Complex;
using geom::Point;
using geom::Simplex;

namespace {

Point pt(std::vector<long long> xs) {
    Point p;
    for (long long x : xs) p.coords.push_back(Rational(x));
    return p;
}

Point ptr(std::vector<Rational> xs) { return Point(std::move(xs)); }

// A hollow triangle: three edge cells in the plane.
Complex triangle_loop() {
    Complex c(2);
    c.add_cell("a", "e", pt({0, 0}), {{pt({0, 0}), pt({1, 0})}});
    c.add_cell("b", "e", pt({1, 0}), {{pt({1, 0}), pt({0, 1})}});
    c.add_cell("c", "e", pt({0, 1}), {{pt({0, 1}), pt({0, 0})}});
    c.build_adjacency();
    return c;
}

}  // namespace

TEST_CASE("rational helpers") {
    CHECK(rat_str(rat(3, 6)) == "1/2");
    CHECK(rat_str(Rational(5)) == "5/1");
    CHECK(rat_parse("-7/2") == rat(-7, 2));
    CHECK(rat_parse("4") == Rational(4));
    CHECK_THROWS_AS(rat_parse("x/y"), std::invalid_argument);
    CHECK(is_dyadic(rat(3, 8)));
    CHECK(!is_dyadic(rat(1, 3)));
    CHECK(rat_dyadic_decimal(rat(3, 8)) == "0.375");
    CHECK(rat_dyadic_decimal(rat(-5, 4)) == "-1.25");
    CHECK(rat_dyadic_decimal(Rational(7)) == "7");
    CHECK_THROWS_AS(rat_dyadic_decimal(rat(1, 3)), std::domain_error);
    CHECK(factorial(0) == 1);
    CHECK(factorial(6) == 720);
}

TEST_CASE("point ordering is lexicographic and exact") {
    CHECK(pt({0, 1}) < pt({1, 0}));
    CHECK(ptr({rat(1, 3), Rational(0)}) < ptr({rat(1, 2), Rational(-5)}));
    CHECK(!(pt({1, 0}) < pt({1, 0})));
}

TEST_CASE("simplex volume, degeneracy, orientation") {
    Simplex seg = geom::affine_simplex({pt({0}), pt({1})});
    CHECK(geom::simplex_volume(seg) == 1);

    Simplex tri = geom::affine_simplex({pt({0, 0}), pt({1, 0}), pt({0, 1})});
    CHECK(tri.dim() == 2);
    CHECK(!tri.degenerate());
    CHECK(geom::simplex_volume(tri) == rat(1, 2));
    CHECK(tri.orientation() == 1);

    Simplex tri_flipped = geom::affine_simplex({pt({0, 0}), pt({0, 1}), pt({1, 0})});
    CHECK(tri_flipped.orientation() == -1);

    // Flat along a coordinate axis: the constant axis is dropped.
    Simplex flat = geom::affine_simplex({pt({0, 0, 5}), pt({1, 0, 5}), pt({0, 1, 5})});
    CHECK(geom::simplex_volume(flat) == rat(1, 2));

    // Tilted into 3-space without a constant axis: no exact volume here.
    Simplex tilted = geom::affine_simplex({pt({0, 0, 0}), pt({1, 0, 1}), pt({0, 1, 0})});
    CHECK_THROWS_AS(geom::simplex_volume(tilted), std::domain_error);

    Simplex degen = geom::affine_simplex({pt({0, 0}), pt({1, 1}), pt({2, 2})});
    CHECK(degen.degenerate());
    CHECK(degen.orientation() == 0);

    CHECK_THROWS_AS(geom::affine_simplex({pt({0}), pt({1}), pt({2})}), std::invalid_argument);
}

TEST_CASE("staircase label enumeration") {
    // (a+b)!/a! monotone paths.
    CHECK(geom::staircase_labels(0, 0).size() == 1);
    CHECK(geom::staircase_labels(2, 0).size() == 1);
    CHECK(geom::staircase_labels(0, 2).size() == 2);
    CHECK(geom::staircase_labels(1, 1).size() == 2);
    CHECK(geom::staircase_labels(2, 2).size() == 12);
    CHECK(geom::staircase_labels(1, 3).size() == 24);

    for (const auto& path : geom::staircase_labels(2, 2)) {
        REQUIRE(path.size() == 5);
        CHECK(path.front().m == 0);
        CHECK(path.front().mask == 0u);
        CHECK(path.back().m == 2);
        CHECK(path.back().mask == 3u);
        for (size_t i = 1; i < path.size(); ++i) {
            // Each step either advances the chain or sets one new cube bit.
            const bool chain_step =
                path[i].m == path[i - 1].m + 1 && path[i].mask == path[i - 1].mask;
            const bool cube_step = path[i].m == path[i - 1].m &&
                                   std::popcount(path[i].mask) ==
                                       std::popcount(path[i - 1].mask) + 1 &&
                                   (path[i].mask & path[i - 1].mask) == path[i - 1].mask;
            CHECK((chain_step || cube_step));
        }
    }

    // The enumeration order itself is part of the contract: cells recover
    // their frame chains from it.
    const auto once = geom::staircase_labels(1, 2);
    const auto again = geom::staircase_labels(1, 2);
    REQUIRE(once.size() == 6);
    for (size_t i = 0; i < once.size(); ++i) CHECK(once[i] == again[i]);
    CHECK(once[0][0] == geom::StairLabel{0, 0u});
}

TEST_CASE("product triangulation volumes") {
    struct Case {
        int a, b;
        size_t count;
        Rational total;
    };
    const Case cases[] = {
        {0, 0, 1, Rational(1)}, {1, 0, 1, Rational(1)},     {0, 3, 6, Rational(1)},
        {1, 1, 2, Rational(1)}, {2, 1, 3, rat(1, 2)},       {2, 2, 12, rat(1, 2)},
        {3, 0, 1, rat(1, 6)},   {3, 1, 4, rat(1, 6)},
    };
    for (const auto& cs : cases) {
        const auto tris = geom::product_triangulate(cs.a, cs.b);
        CHECK(tris.size() == cs.count);
        Rational total = 0;
        for (const auto& s : tris) {
            CHECK(s.dim() == cs.a + cs.b);
            CHECK(!s.degenerate());
            total += geom::simplex_volume(s);
        }
        CHECK(total == cs.total);
    }
}

TEST_CASE("complex construction and adjacency") {
    Complex c(2);
    c.add_cell("sq", "s", pt({0, 0}),
               {{pt({0, 0}), pt({1, 0}), pt({1, 1})}, {pt({0, 0}), pt({1, 1}), pt({0, 1})}});
    CHECK(c.vertices().size() == 4);  // shared corners dedupe into the pool
    CHECK(c.cells().size() == 1);
    CHECK(c.cell_by_id("sq") != nullptr);
    CHECK(c.cell_by_id("nope") == nullptr);
    CHECK(c.cell_volume(c.cells()[0]) == 1);

    CHECK_THROWS_AS(
        c.add_cell("bad", "s", pt({0, 0}), {{pt({0, 0}), pt({1, 1}), pt({2, 2})}}),
        std::invalid_argument);
    CHECK_THROWS_AS(c.add_cell("sq", "s", pt({0, 0}), {{pt({0, 0}), pt({1, 0}), pt({0, 1})}}),
                    std::invalid_argument);

    c.build_adjacency();
    CHECK(c.gluings().empty());  // the shared diagonal is internal to one cell
    auto witness = c.closure_witness();
    REQUIRE(witness.has_value());  // a disc has exposed boundary edges

    Complex loop = triangle_loop();
    CHECK(loop.is_closed());
    CHECK(loop.gluings().size() == 3);
    const auto mult = loop.adjacency_multiplicity();
    for (const auto& row : mult) {
        size_t total = 0;
        for (const auto& [other, cnt] : row) total += static_cast<size_t>(cnt);
        CHECK(total == 2);  // each edge meets its two neighbors once each
    }
}

TEST_CASE("canonicalize sorts the pool and keeps structure") {
    Complex c(1);
    c.add_cell("b", "e", pt({2}), {{pt({2}), pt({1})}});
    c.add_cell("a", "e", pt({1}), {{pt({0}), pt({1})}});
    c.build_adjacency();
    c.canonicalize();
    CHECK(c.cells()[0].id == "a");
    CHECK(c.cells()[1].id == "b");
    for (size_t i = 1; i < c.vertices().size(); ++i) CHECK(c.vertices()[i - 1] < c.vertices()[i]);
    // Cell "b" still spans {1,2} and its anchor still sits at coordinate 2.
    const auto& b = *c.cell_by_id("b");
    CHECK(c.vertices()[static_cast<size_t>(b.anchor)] == pt({2}));
    CHECK(c.vertices()[static_cast<size_t>(b.simplices[0][0])] == pt({2}));
    // Canonical form is idempotent.
    Complex d = c;
    d.canonicalize();
    CHECK(d.vertices() == c.vertices());
}

TEST_CASE("euler characteristic pools faces across cells") {
    // One square cell and the same square as two triangle cells agree.
    Complex one(2);
    one.add_cell("sq", "s", pt({0, 0}),
                 {{pt({0, 0}), pt({1, 0}), pt({1, 1})}, {pt({0, 0}), pt({1, 1}), pt({0, 1})}});
    CHECK(geom::euler_characteristic(one) == 1);  // disc: 4 - 5 + 2

    Complex two(2);
    two.add_cell("t1", "t", pt({0, 0}), {{pt({0, 0}), pt({1, 0}), pt({1, 1})}});
    two.add_cell("t2", "t", pt({0, 0}), {{pt({0, 0}), pt({1, 1}), pt({0, 1})}});
    CHECK(geom::euler_characteristic(two) == 1);

    CHECK(geom::euler_characteristic(triangle_loop()) == 0);  // circle
}

TEST_CASE("labeled isomorphism on small graphs") {
    Complex a = triangle_loop();

    // The same loop, translated and with different ids.
    Complex b(2);
    b.add_cell("x", "e", pt({5, 0}), {{pt({5, 0}), pt({6, 0})}});
    b.add_cell("y", "e", pt({6, 0}), {{pt({6, 0}), pt({5, 1})}});
    b.add_cell("z", "e", pt({5, 1}), {{pt({5, 1}), pt({5, 0})}});
    b.build_adjacency();

    auto res = geom::labeled_isomorphic(a, b);
    REQUIRE(res.outcome == geom::IsoOutcome::isomorphic);
    REQUIRE(res.mapping.size() == 3);
    std::set<int> image(res.mapping.begin(), res.mapping.end());
    CHECK(image.size() == 3);

    // Type labels must match.
    Complex c(2);
    c.add_cell("x", "OTHER", pt({5, 0}), {{pt({5, 0}), pt({6, 0})}});
    c.add_cell("y", "e", pt({6, 0}), {{pt({6, 0}), pt({5, 1})}});
    c.add_cell("z", "e", pt({5, 1}), {{pt({5, 1}), pt({5, 0})}});
    c.build_adjacency();
    CHECK(geom::labeled_isomorphic(a, c).outcome == geom::IsoOutcome::non_isomorphic);

    // Different cell counts are rejected immediately.
    Complex d(2);
    d.add_cell("x", "e", pt({5, 0}), {{pt({5, 0}), pt({6, 0})}});
    d.build_adjacency();
    CHECK(geom::labeled_isomorphic(a, d).outcome == geom::IsoOutcome::non_isomorphic);

    // A zero budget runs out before the search finishes.
    CHECK(geom::labeled_isomorphic(a, b, 0.0).outcome == geom::IsoOutcome::undecided);
}
