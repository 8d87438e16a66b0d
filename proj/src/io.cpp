#include "dimerlab/io.hpp"

#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

namespace dimerlab {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorCode::MalformedInput, "cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string graph_to_json(const PlaneBipartiteGraph& g) {
    // dense renumbering of the alive part; dart 2e' tails at the black end
    std::map<int, int> vmap;
    for (int v : g.alive_vertices()) {
        int nv = (int)vmap.size();
        vmap[v] = nv;
    }
    std::map<int, int> hmap;  // old dart -> new dart
    nlohmann::json jedges = nlohmann::json::array();
    for (int e : g.alive_edges()) {
        int hb = g.black_halfedge(e);
        int ne = (int)jedges.size();
        hmap[hb] = 2 * ne;
        hmap[hb ^ 1] = 2 * ne + 1;
        jedges.push_back({2 * ne, 2 * ne + 1, vmap.at(g.black_end(e)), vmap.at(g.white_end(e))});
    }
    nlohmann::json j;
    auto& verts = j["vertices"] = nlohmann::json::array();
    auto& rots = j["rotations"] = nlohmann::json::object();
    for (auto [v, nv] : vmap) {
        verts.push_back({{"id", nv}, {"color", std::string(1, g.color[v])}});
        nlohmann::json r = nlohmann::json::array();
        for (int h : g.rot[v]) r.push_back(hmap.at(h));
        rots[std::to_string(nv)] = std::move(r);
    }
    j["edges"] = std::move(jedges);
    if (g.outerIdx >= 0 && !g.faces[g.outerIdx].boundary.empty())
        j["outer"] = hmap.at(g.faces[g.outerIdx].boundary.front());
    return j.dump(2) + "\n";
}

PlaneBipartiteGraph graph_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const std::exception& e) {
        fail(ErrorCode::MalformedInput, std::string("bad graph json: ") + e.what());
    }
    if (!j.is_object() || !j.contains("vertices") || !j.contains("edges") ||
        !j.contains("rotations"))
        fail(ErrorCode::MalformedInput, "graph json needs vertices/edges/rotations");
    int nv = (int)j["vertices"].size();
    std::vector<char> colors(nv, 0);
    for (const auto& jv : j["vertices"]) {
        if (!jv.contains("id") || !jv.contains("color"))
            fail(ErrorCode::MalformedInput, "vertex entry needs id and color");
        int id = jv["id"].get<int>();
        std::string c = jv["color"].get<std::string>();
        if (id < 0 || id >= nv || colors[id] != 0 || (c != "b" && c != "w"))
            fail(ErrorCode::MalformedInput, "bad vertex entry");
        colors[id] = c[0];
    }
    int ne = (int)j["edges"].size();
    std::vector<std::pair<int, int>> edges(ne);
    std::vector<bool> seen(ne, false);
    for (const auto& je : j["edges"]) {
        if (!je.is_array() || je.size() != 4)
            fail(ErrorCode::MalformedInput, "edge entry must be [he, twin, black, white]");
        int he = je[0].get<int>(), tw = je[1].get<int>();
        int b = je[2].get<int>(), w = je[3].get<int>();
        if (he < 0 || he % 2 != 0 || he / 2 >= ne || tw != he + 1 || seen[he / 2] ||
            b < 0 || b >= nv || w < 0 || w >= nv)
            fail(ErrorCode::MalformedInput, "bad edge entry");
        seen[he / 2] = true;
        edges[he / 2] = {b, w};
    }
    std::vector<std::vector<int>> rotations(nv);
    for (auto it = j["rotations"].begin(); it != j["rotations"].end(); ++it) {
        int v = -1;
        try {
            v = std::stoi(it.key());
        } catch (const std::exception&) {
            fail(ErrorCode::MalformedInput, "rotation key must be a vertex id");
        }
        if (v < 0 || v >= nv) fail(ErrorCode::MalformedInput, "rotation key out of range");
        for (const auto& jh : it.value()) {
            int h = jh.get<int>();
            if (h < 0 || h >= 2 * ne) fail(ErrorCode::MalformedInput, "rotation dart out of range");
            rotations[v].push_back(h);
        }
    }
    std::optional<int> outer;
    if (j.contains("outer")) {
        int h = j["outer"].get<int>();
        if (h < 0 || h >= 2 * ne) fail(ErrorCode::MalformedInput, "outer dart out of range");
        outer = h;
    }
    return build_graph(colors, edges, rotations, outer);
}

}  // namespace dimerlab
