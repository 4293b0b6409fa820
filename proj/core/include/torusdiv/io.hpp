#pragma once

#include <torusdiv/geom.hpp>

#include <string>

namespace torusdiv::io {

// A complex together with the parameters that produced it.  The JSON layout
// is versioned ("1"): vertex coordinates as exact "num/den" strings, tiles
// sorted by id with their type, anchor index and simplex index lists, and the
// adjacency as sorted id pairs.
struct ComplexDocument {
    std::string version = "1";
    int n = 0;
    int k = 0;
    geom::Complex complex;
};

// Canonicalizes a copy of the complex and renders it as JSON.  Output is
// byte-deterministic: equal documents serialize to equal strings.
std::string serialize(const ComplexDocument& doc);

// Inverse of serialize.  Throws std::invalid_argument on malformed input,
// unknown versions, duplicate vertices, bad indices, or an adjacency list
// that does not match the stored simplices.
ComplexDocument parse(const std::string& text);

// Geomview OFF rendering (ambient dimension <= 3; coordinates are padded to
// three axes and must be dyadic so they print exactly).
std::string to_off(const ComplexDocument& doc);

// Graphviz rendering of the tile adjacency graph; nodes carry their tile
// type as an attribute.
std::string to_dot(const ComplexDocument& doc);

}  // namespace torusdiv::io
