#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <torusdiv/cover.hpp>
#include <torusdiv/io.hpp>
#include <torusdiv/rule.hpp>

#include <json.hpp>

#include <string>

using namespace torusdiv;
using io::ComplexDocument;

namespace {

ComplexDocument engine_doc(int n, int k) {
    ComplexDocument doc;
    doc.n = n;
    doc.k = k;
    doc.complex = rule::iterate(rule::initial_sphere(n), rule::make_subdivision_rule(n), k);
    return doc;
}

}  // namespace

TEST_CASE("document layout") {
    const auto text = io::serialize(engine_doc(2, 1));
    const auto j = nlohmann::json::parse(text);
    CHECK(j.at("version") == "1");
    CHECK(j.at("n") == 2);
    CHECK(j.at("k") == 1);
    CHECK(j.at("vertices").is_array());
    REQUIRE(j.at("tiles").size() == 12);
    // Tiles sorted by id; every tile carries type, anchor, simplices.
    std::string prev;
    for (const auto& t : j.at("tiles")) {
        const std::string id = t.at("id");
        CHECK(prev < id);
        prev = id;
        CHECK(t.at("type").contains("p"));
        CHECK(t.at("type").contains("q"));
        CHECK(t.at("anchor").is_number_integer());
        CHECK(t.at("simplices").is_array());
    }
    // Coordinates serialize as exact fraction strings.
    CHECK(j.at("vertices").at(0).at(0).is_string());
    const std::string c0 = j.at("vertices").at(0).at(0);
    CHECK(c0.find('/') != std::string::npos);
    CHECK(j.at("adjacency").size() > 0);
}

TEST_CASE("round trip preserves geometry and structure") {
    for (const auto& doc : {engine_doc(2, 2), engine_doc(3, 1)}) {
        const auto text = io::serialize(doc);
        const auto back = io::parse(text);
        CHECK(back.n == doc.n);
        CHECK(back.k == doc.k);

        // Identical vertex coordinates, in the same canonical order.
        geom::Complex canon = doc.complex;
        canon.canonicalize();
        REQUIRE(back.complex.vertices().size() == canon.vertices().size());
        for (size_t i = 0; i < canon.vertices().size(); ++i)
            CHECK(back.complex.vertices()[i] == canon.vertices()[i]);

        const auto iso = geom::labeled_isomorphic(back.complex, doc.complex);
        CHECK(iso.outcome == geom::IsoOutcome::isomorphic);

        // Serialization is a fixed point after one round.
        CHECK(io::serialize(back) == text);
    }
}

TEST_CASE("serialization is byte-deterministic") {
    const auto a = io::serialize(engine_doc(2, 3));
    const auto b = io::serialize(engine_doc(2, 3));
    CHECK(a == b);

    ComplexDocument oracle;
    oracle.n = 3;
    oracle.k = 1;
    oracle.complex = cover::refine_exposed(3, 1).complex;
    ComplexDocument oracle2;
    oracle2.n = 3;
    oracle2.k = 1;
    oracle2.complex = cover::refine_exposed(3, 1).complex;
    CHECK(io::serialize(oracle) == io::serialize(oracle2));
}

TEST_CASE("malformed documents are rejected") {
    const auto good = io::serialize(engine_doc(2, 0));
    CHECK_THROWS_AS(io::parse("not json"), std::invalid_argument);
    CHECK_THROWS_AS(io::parse("{}"), std::invalid_argument);

    auto j = nlohmann::ordered_json::parse(good);
    j["version"] = "2";
    CHECK_THROWS_AS(io::parse(j.dump()), std::invalid_argument);

    j = nlohmann::ordered_json::parse(good);
    j["tiles"][0]["simplices"][0][0] = 10000;
    CHECK_THROWS_AS(io::parse(j.dump()), std::invalid_argument);

    j = nlohmann::ordered_json::parse(good);
    REQUIRE(j["adjacency"].size() > 0);
    j["adjacency"].erase(0);
    CHECK_THROWS_AS(io::parse(j.dump()), std::invalid_argument);

    j = nlohmann::ordered_json::parse(good);
    j["vertices"][1] = j["vertices"][0];
    CHECK_THROWS_AS(io::parse(j.dump()), std::invalid_argument);
}

TEST_CASE("OFF export") {
    ComplexDocument doc;
    doc.n = 2;
    doc.k = 0;
    doc.complex = rule::initial_sphere(2);
    CHECK(io::to_off(doc) ==
          "OFF\n"
          "4 4 0\n"
          "0 0 0\n"
          "0 1 0\n"
          "1 0 0\n"
          "1 1 0\n"
          "2 0 1\n"
          "2 2 3\n"
          "2 0 2\n"
          "2 1 3\n");

    // Subdivided coordinates stay dyadic, so they export exactly.
    const auto off = io::to_off(engine_doc(3, 2));
    CHECK(off.substr(0, 4) == "OFF\n");

    ComplexDocument too_big;
    too_big.n = 4;
    too_big.k = 0;
    too_big.complex = rule::initial_sphere(4);
    CHECK_THROWS_AS(io::to_off(too_big), std::invalid_argument);
}

TEST_CASE("DOT export") {
    ComplexDocument doc;
    doc.n = 2;
    doc.k = 0;
    doc.complex = rule::initial_sphere(2);
    CHECK(io::to_dot(doc) ==
          "graph complex {\n"
          "  \"0\" [type=\"1,1\"];\n"
          "  \"1\" [type=\"1,1\"];\n"
          "  \"2\" [type=\"1,1\"];\n"
          "  \"3\" [type=\"1,1\"];\n"
          "  \"0\" -- \"2\";\n"
          "  \"0\" -- \"3\";\n"
          "  \"1\" -- \"2\";\n"
          "  \"1\" -- \"3\";\n"
          "}\n");
}
