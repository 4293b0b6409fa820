#include <torusdiv/io.hpp>

#include <json.hpp>

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace torusdiv::io {

namespace {

using json = nlohmann::ordered_json;

std::pair<int, int> split_type_label(const std::string& label) {
    const auto comma = label.find(',');
    if (comma == std::string::npos) throw std::invalid_argument("bad tile type label: " + label);
    try {
        const int p = std::stoi(label.substr(0, comma));
        const int q = std::stoi(label.substr(comma + 1));
        return {p, q};
    } catch (const std::exception&) {
        throw std::invalid_argument("bad tile type label: " + label);
    }
}

std::set<std::pair<std::string, std::string>> adjacency_pairs(const geom::Complex& c) {
    std::set<std::pair<std::string, std::string>> pairs;
    for (const auto& g : c.gluings()) {
        std::string a = c.cells()[static_cast<size_t>(g.cell_a)].id;
        std::string b = c.cells()[static_cast<size_t>(g.cell_b)].id;
        if (b < a) std::swap(a, b);
        pairs.insert({std::move(a), std::move(b)});
    }
    return pairs;
}

}  // namespace

std::string serialize(const ComplexDocument& doc) {
    geom::Complex c = doc.complex;
    c.canonicalize();
    c.build_adjacency();

    json j;
    j["version"] = doc.version;
    j["n"] = doc.n;
    j["k"] = doc.k;

    json verts = json::array();
    for (const auto& v : c.vertices()) {
        json row = json::array();
        for (const auto& coord : v.coords) row.push_back(rat_str(coord));
        verts.push_back(std::move(row));
    }
    j["vertices"] = std::move(verts);

    json tiles = json::array();
    for (const auto& cell : c.cells()) {
        const auto [p, q] = split_type_label(cell.type_label);
        json jt;
        jt["id"] = cell.id;
        jt["type"] = json{{"p", p}, {"q", q}};
        jt["anchor"] = cell.anchor;
        jt["simplices"] = cell.simplices;
        tiles.push_back(std::move(jt));
    }
    j["tiles"] = std::move(tiles);

    json adj = json::array();
    for (const auto& [a, b] : adjacency_pairs(c)) adj.push_back(json::array({a, b}));
    j["adjacency"] = std::move(adj);

    return j.dump(2) + "\n";
}

ComplexDocument parse(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("document is not valid JSON: ") + e.what());
    }
    try {
        ComplexDocument doc;
        doc.version = j.at("version").get<std::string>();
        if (doc.version != "1")
            throw std::invalid_argument("unsupported document version: " + doc.version);
        doc.n = j.at("n").get<int>();
        doc.k = j.at("k").get<int>();
        if (doc.n < 1 || doc.k < 0) throw std::invalid_argument("document has n < 1 or k < 0");

        const auto& verts = j.at("vertices");
        const int ambient = verts.empty() ? doc.n : static_cast<int>(verts.at(0).size());
        geom::Complex c(ambient);
        for (const auto& row : verts) {
            geom::Point pt;
            for (const auto& entry : row) pt.coords.push_back(rat_parse(entry.get<std::string>()));
            if (c.find_vertex(pt) != -1) throw std::invalid_argument("duplicate vertex in document");
            c.vertex_index(pt);
        }

        for (const auto& jt : j.at("tiles")) {
            geom::PLCell cell;
            cell.id = jt.at("id").get<std::string>();
            const int p = jt.at("type").at("p").get<int>();
            const int q = jt.at("type").at("q").get<int>();
            if (p < 1 || q < 0) throw std::invalid_argument("bad tile type in document");
            cell.type_label = std::to_string(p) + "," + std::to_string(q);
            cell.anchor = jt.at("anchor").get<int>();
            cell.simplices = jt.at("simplices").get<std::vector<std::vector<int>>>();
            c.add_cell_indexed(std::move(cell));
        }

        c.build_adjacency();
        std::set<std::pair<std::string, std::string>> listed;
        for (const auto& pair : j.at("adjacency")) {
            if (pair.size() != 2) throw std::invalid_argument("bad adjacency pair");
            std::string a = pair.at(0).get<std::string>();
            std::string b = pair.at(1).get<std::string>();
            if (!c.cell_by_id(a) || !c.cell_by_id(b))
                throw std::invalid_argument("adjacency references unknown tile id");
            if (b < a) std::swap(a, b);
            if (!listed.insert({std::move(a), std::move(b)}).second)
                throw std::invalid_argument("duplicate adjacency pair");
        }
        if (listed != adjacency_pairs(c))
            throw std::invalid_argument("adjacency list does not match the stored simplices");

        doc.complex = std::move(c);
        return doc;
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("malformed document: ") + e.what());
    }
}

std::string to_off(const ComplexDocument& doc) {
    geom::Complex c = doc.complex;
    if (c.ambient_dim() > 3)
        throw std::invalid_argument("to_off: ambient dimension " +
                                    std::to_string(c.ambient_dim()) + " exceeds 3");
    c.canonicalize();
    size_t faces = 0;
    for (const auto& cell : c.cells()) faces += cell.simplices.size();

    std::ostringstream os;
    os << "OFF\n" << c.vertices().size() << " " << faces << " 0\n";
    for (const auto& v : c.vertices()) {
        for (int i = 0; i < 3; ++i) {
            if (i) os << " ";
            os << (i < v.dim() ? rat_dyadic_decimal(v[i]) : "0");
        }
        os << "\n";
    }
    for (const auto& cell : c.cells())
        for (const auto& simplex : cell.simplices) {
            os << simplex.size();
            for (int v : simplex) os << " " << v;
            os << "\n";
        }
    return os.str();
}

std::string to_dot(const ComplexDocument& doc) {
    geom::Complex c = doc.complex;
    c.canonicalize();
    c.build_adjacency();
    std::ostringstream os;
    os << "graph complex {\n";
    for (const auto& cell : c.cells())
        os << "  \"" << cell.id << "\" [type=\"" << cell.type_label << "\"];\n";
    for (const auto& [a, b] : adjacency_pairs(c)) os << "  \"" << a << "\" -- \"" << b << "\";\n";
    os << "}\n";
    return os.str();
}

}  // namespace torusdiv::io
