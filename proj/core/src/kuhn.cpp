#include <torusdiv/kuhn.hpp>

#include <algorithm>
#include <bit>
#include <map>
#include <numeric>
#include <stdexcept>

namespace torusdiv::kuhn {

namespace {

constexpr int kDefaultCap = 7;

void check_p(int p, bool allow_large, const char* who) {
    if (p < 1) throw std::invalid_argument(std::string(who) + ": p must be >= 1");
    if (p > kDefaultCap && !allow_large) {
        throw std::invalid_argument(std::string(who) + ": p > 7 requires allow_large");
    }
}

unsigned vertex_bits(const CubeVertex& v) {
    unsigned bits = 0;
    for (size_t i = 0; i < v.size(); ++i) {
        if (v[i]) bits |= 1u << i;
    }
    return bits;
}

}  // namespace

std::vector<KuhnSimplex> kuhn_triangulation(int p, bool allow_large) {
    check_p(p, allow_large, "kuhn_triangulation");
    std::vector<int> sigma(static_cast<size_t>(p));
    std::iota(sigma.begin(), sigma.end(), 1);
    std::vector<KuhnSimplex> out;
    do {
        KuhnSimplex s;
        s.sigma.sigma = sigma;
        CubeVertex v(static_cast<size_t>(p), 0);
        s.chain.push_back(v);
        for (int axis : sigma) {
            v[static_cast<size_t>(axis - 1)] = 1;
            s.chain.push_back(v);
        }
        out.push_back(std::move(s));
    } while (std::next_permutation(sigma.begin(), sigma.end()));
    return out;
}

CubeVertex AntipodalInvolution::operator()(const CubeVertex& v) const {
    if (static_cast<int>(v.size()) != p) throw std::invalid_argument("antipodal: wrong dimension");
    CubeVertex out(v.size());
    for (size_t i = 0; i < v.size(); ++i) out[i] = 1 - v[i];
    return out;
}

AntipodalInvolution antipodal_involution(int p) {
    if (p < 1) throw std::invalid_argument("antipodal_involution: p must be >= 1");
    return AntipodalInvolution{p};
}

std::vector<int> kuhn_simplex_permutation(int p, bool allow_large) {
    check_p(p, allow_large, "kuhn_simplex_permutation");
    const auto tri = kuhn_triangulation(p, allow_large);
    // The image of the sigma chain is the reversed-sigma chain, but recover
    // it by explicit vertex-set matching so the test really exercises the map.
    std::map<std::vector<unsigned>, int> by_vertex_set;
    for (size_t i = 0; i < tri.size(); ++i) {
        std::vector<unsigned> key;
        key.reserve(tri[i].chain.size());
        for (const CubeVertex& v : tri[i].chain) key.push_back(vertex_bits(v));
        std::sort(key.begin(), key.end());
        by_vertex_set.emplace(std::move(key), static_cast<int>(i));
    }
    const auto inv = antipodal_involution(p);
    std::vector<int> out(tri.size(), -1);
    for (size_t i = 0; i < tri.size(); ++i) {
        std::vector<unsigned> key;
        key.reserve(tri[i].chain.size());
        for (const CubeVertex& v : tri[i].chain) key.push_back(vertex_bits(inv(v)));
        std::sort(key.begin(), key.end());
        auto it = by_vertex_set.find(key);
        if (it == by_vertex_set.end()) {
            throw std::logic_error("kuhn_simplex_permutation: image is not a triangulation simplex");
        }
        out[i] = it->second;
    }
    return out;
}

size_t VertexStar::simplex_count() const {
    size_t n = 0;
    for (const StarFacet& f : facets) n += f.simplices.size();
    return n;
}

VertexStar vertex_star(int p, Corner corner, bool allow_large) {
    check_p(p, allow_large, "vertex_star");
    const int side = corner == Corner::origin ? 0 : 1;
    const auto tri = kuhn_triangulation(p, allow_large);
    VertexStar star;
    star.p = p;
    star.corner = corner;
    for (int axis = 0; axis < p; ++axis) {
        StarFacet facet;
        facet.axis = axis;
        facet.side = side;
        // Induced triangulation: restrict each ambient simplex to the facet
        // and keep the full-dimensional restrictions.
        for (const KuhnSimplex& s : tri) {
            std::vector<CubeVertex> restricted;
            for (const CubeVertex& v : s.chain) {
                if (v[static_cast<size_t>(axis)] == side) restricted.push_back(v);
            }
            if (restricted.size() == static_cast<size_t>(p)) {
                facet.simplices.push_back(std::move(restricted));
            }
        }
        star.facets.push_back(std::move(facet));
    }
    return star;
}

StarIsomorphism star_isomorphism(int p, bool allow_large) {
    check_p(p, allow_large, "star_isomorphism");
    const VertexStar s0 = vertex_star(p, Corner::origin, allow_large);
    const VertexStar s1 = vertex_star(p, Corner::all_ones, allow_large);
    const auto inv = antipodal_involution(p);

    std::map<std::vector<unsigned>, std::pair<int, int>> target;
    for (size_t f = 0; f < s1.facets.size(); ++f) {
        for (size_t s = 0; s < s1.facets[f].simplices.size(); ++s) {
            std::vector<unsigned> key;
            for (const CubeVertex& v : s1.facets[f].simplices[s]) key.push_back(vertex_bits(v));
            std::sort(key.begin(), key.end());
            target.emplace(std::move(key), std::make_pair(static_cast<int>(f), static_cast<int>(s)));
        }
    }

    StarIsomorphism iso;
    iso.p = p;
    std::vector<char> hit(s1.simplex_count(), 0);
    const size_t per_facet = s1.facets.empty() ? 0 : s1.facets[0].simplices.size();
    for (const StarFacet& facet : s0.facets) {
        std::vector<std::pair<int, int>> row;
        for (const auto& simplex : facet.simplices) {
            std::vector<unsigned> key;
            for (const CubeVertex& v : simplex) key.push_back(vertex_bits(inv(v)));
            std::sort(key.begin(), key.end());
            auto it = target.find(key);
            if (it == target.end()) {
                throw std::logic_error("star_isomorphism: image simplex missing from opposite star");
            }
            const size_t flat = static_cast<size_t>(it->second.first) * per_facet + static_cast<size_t>(it->second.second);
            if (hit[flat]) throw std::logic_error("star_isomorphism: image simplex hit twice");
            hit[flat] = 1;
            row.push_back(it->second);
        }
        iso.image.push_back(std::move(row));
    }

    // Face-relation check: vertex-set intersection sizes of every simplex
    // pair must be preserved by the map.
    std::vector<unsigned long long> mask0, mask1;
    auto chain_mask = [](const std::vector<CubeVertex>& chain) {
        unsigned long long m = 0;
        for (const CubeVertex& v : chain) m |= 1ull << vertex_bits(v);
        return m;
    };
    std::vector<std::pair<int, int>> flat_image;
    for (size_t f = 0; f < s0.facets.size(); ++f) {
        for (size_t s = 0; s < s0.facets[f].simplices.size(); ++s) {
            mask0.push_back(chain_mask(s0.facets[f].simplices[s]));
            const auto [tf, ts] = iso.image[f][s];
            mask1.push_back(chain_mask(s1.facets[static_cast<size_t>(tf)].simplices[static_cast<size_t>(ts)]));
        }
    }
    if (p <= 6) {  // 2^p cube vertices must fit the 64-bit masks
        for (size_t i = 0; i < mask0.size(); ++i) {
            for (size_t j = i + 1; j < mask0.size(); ++j) {
                const int before = std::popcount(mask0[i] & mask0[j]);
                const int after = std::popcount(mask1[i] & mask1[j]);
                if (before != after) {
                    throw std::logic_error("star_isomorphism: face relation not preserved");
                }
            }
        }
    } else {
        // Wide masks for p = 7 and above.
        auto wide_mask = [](const std::vector<CubeVertex>& chain) {
            std::pair<unsigned long long, unsigned long long> m{0, 0};
            for (const CubeVertex& v : chain) {
                unsigned b = 0;
                for (size_t i = 0; i < v.size(); ++i) {
                    if (v[i]) b |= 1u << i;
                }
                if (b < 64) m.first |= 1ull << b;
                else m.second |= 1ull << (b - 64);
            }
            return m;
        };
        std::vector<std::pair<unsigned long long, unsigned long long>> w0, w1;
        for (size_t f = 0; f < s0.facets.size(); ++f) {
            for (size_t s = 0; s < s0.facets[f].simplices.size(); ++s) {
                w0.push_back(wide_mask(s0.facets[f].simplices[s]));
                const auto [tf, ts] = iso.image[f][s];
                w1.push_back(wide_mask(s1.facets[static_cast<size_t>(tf)].simplices[static_cast<size_t>(ts)]));
            }
        }
        for (size_t i = 0; i < w0.size(); ++i) {
            for (size_t j = i + 1; j < w0.size(); ++j) {
                const int before = std::popcount(w0[i].first & w0[j].first) + std::popcount(w0[i].second & w0[j].second);
                const int after = std::popcount(w1[i].first & w1[j].first) + std::popcount(w1[i].second & w1[j].second);
                if (before != after) {
                    throw std::logic_error("star_isomorphism: face relation not preserved");
                }
            }
        }
    }
    return iso;
}

}  // namespace torusdiv::kuhn
