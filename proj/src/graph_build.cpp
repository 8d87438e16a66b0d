#include <algorithm>
#include <cassert>
#include <map>
#include <queue>
#include <set>
#include <sstream>

#include "dimerlab/graph.hpp"

namespace dimerlab {

int PlaneBipartiteGraph::vertex_count() const {
    int n = 0;
    for (char c : color) n += c != 0;
    return n;
}

int PlaneBipartiteGraph::edge_count() const {
    int n = 0;
    for (size_t h = 0; h < head.size(); h += 2) n += head[h] >= 0;
    return n;
}

std::vector<int> PlaneBipartiteGraph::alive_edges() const {
    std::vector<int> r;
    for (size_t h = 0; h < head.size(); h += 2)
        if (head[h] >= 0) r.push_back((int)h / 2);
    return r;
}

std::vector<int> PlaneBipartiteGraph::alive_vertices() const {
    std::vector<int> r;
    for (size_t v = 0; v < color.size(); ++v)
        if (color[v]) r.push_back((int)v);
    return r;
}

int PlaneBipartiteGraph::black_end(int e) const {
    int a = head[2 * e], b = head[2 * e + 1];
    return color[a] == 'b' ? a : b;
}

int PlaneBipartiteGraph::white_end(int e) const {
    int a = head[2 * e], b = head[2 * e + 1];
    return color[a] == 'w' ? a : b;
}

int PlaneBipartiteGraph::black_halfedge(int e) const {
    // the half-edge whose tail is black, i.e. whose head is white
    return color[head[2 * e]] == 'w' ? 2 * e : 2 * e + 1;
}

int PlaneBipartiteGraph::rot_position(int v, int h) const {
    for (size_t i = 0; i < rot[v].size(); ++i)
        if (rot[v][i] == h) return (int)i;
    return -1;
}

int PlaneBipartiteGraph::rot_successor(int v, int h) const {
    int p = rot_position(v, h);
    if (p < 0) fail(ErrorCode::MalformedRotation,
                    "half-edge " + std::to_string(h) + " missing at vertex " + std::to_string(v));
    return rot[v][(p + 1) % rot[v].size()];
}

int PlaneBipartiteGraph::face_index_of_label(int label) const {
    for (size_t i = 0; i < faces.size(); ++i)
        if (faces[i].label == label) return (int)i;
    return -1;
}

const FaceRec& PlaneBipartiteGraph::face_by_label(int label) const {
    int i = face_index_of_label(label);
    if (i < 0) fail(ErrorCode::PatternMismatch, "no face with label " + std::to_string(label));
    return faces[i];
}

std::vector<int> PlaneBipartiteGraph::inner_face_labels() const {
    std::vector<int> r;
    for (size_t i = 0; i < faces.size(); ++i)
        if (!is_outer((int)i)) r.push_back(faces[i].label);
    std::sort(r.begin(), r.end());
    return r;
}

std::vector<int> PlaneBipartiteGraph::face_edges(int faceIdx) const {
    std::set<int> es;
    for (int h : faces[faceIdx].boundary) es.insert(h / 2);
    return {es.begin(), es.end()};
}

bool PlaneBipartiteGraph::face_adjacent_to_outer(int faceIdx) const {
    if (is_outer(faceIdx)) return false;
    for (int h : faces[faceIdx].boundary)
        if (faceOf[twin(h)] == outerIdx) return true;
    return false;
}

namespace detail {

// Face orbits in ascending order of their smallest half-edge.
std::vector<std::vector<int>> face_orbits(const PlaneBipartiteGraph& g) {
    std::vector<std::vector<int>> orbits;
    std::vector<char> seen(g.head.size(), 0);
    for (int h = 0; h < (int)g.head.size(); ++h) {
        if (!g.halfedge_alive(h) || seen[h]) continue;
        std::vector<int> orbit;
        int x = h;
        do {
            if (seen[x])
                fail(ErrorCode::MalformedRotation, "face walk revisits a half-edge");
            seen[x] = 1;
            orbit.push_back(x);
            x = g.next_in_face(x);
        } while (x != h);
        orbits.push_back(std::move(orbit));
    }
    return orbits;
}

void assign_face_indices(PlaneBipartiteGraph& g, std::vector<std::vector<int>> orbits) {
    g.faces.clear();
    g.faceOf.assign(g.head.size(), -1);
    for (auto& orbit : orbits) {
        FaceRec f;
        f.boundary = std::move(orbit);
        g.faces.push_back(std::move(f));
    }
    for (size_t i = 0; i < g.faces.size(); ++i)
        for (int h : g.faces[i].boundary) g.faceOf[h] = (int)i;
}

int pick_outer(const PlaneBipartiteGraph& g, std::optional<int> outerHint) {
    if (outerHint) {
        if (!g.halfedge_alive(*outerHint))
            fail(ErrorCode::MalformedInput, "outer face hint is a dead half-edge");
        return g.faceOf[*outerHint];
    }
    int best = 0;
    for (size_t i = 1; i < g.faces.size(); ++i)
        if (g.faces[i].boundary.size() > g.faces[best].boundary.size()) best = (int)i;
    return best;
}

// Recompute faces after an edit, carrying labels over from oldFaceLabelOf
// (a copy of label-of-half-edge taken before the edit).  `consumed` labels
// are dropped; faces containing a half-edge listed in `forced` take that
// label outright (used by the square move and bigon insertion).
void recompute_faces_inherit(PlaneBipartiteGraph& g,
                             const std::vector<int>& oldFaceLabelOf,
                             int oldOuterLabel,
                             const std::set<int>& consumed,
                             const std::vector<std::pair<int, int>>& forced) {
    assign_face_indices(g, face_orbits(g));
    for (auto& f : g.faces) {
        int label = -1;
        for (auto& [h, forcedLabel] : forced) {
            if (g.faceOf[h] == (int)(&f - g.faces.data())) {
                label = forcedLabel;
                break;
            }
        }
        if (label < 0) {
            std::set<int> inherited;
            for (int h : f.boundary) {
                if (h < (int)oldFaceLabelOf.size() && oldFaceLabelOf[h] >= 0 &&
                    !consumed.count(oldFaceLabelOf[h]))
                    inherited.insert(oldFaceLabelOf[h]);
            }
            if (inherited.size() > 1)
                fail(ErrorCode::PatternMismatch, "face labels merged unexpectedly");
            if (inherited.size() == 1) label = *inherited.begin();
        }
        if (label < 0) label = g.nextLabel++;
        f.label = label;
        g.nextLabel = std::max(g.nextLabel, label + 1);
    }
    g.outerIdx = g.face_index_of_label(oldOuterLabel);
    if (g.outerIdx < 0)
        fail(ErrorCode::PatternMismatch, "outer face vanished during a move");
}

std::vector<int> face_label_of_halfedge(const PlaneBipartiteGraph& g) {
    std::vector<int> r(g.head.size(), -1);
    for (size_t h = 0; h < g.head.size(); ++h)
        if (g.faceOf[h] >= 0) r[h] = g.faces[g.faceOf[h]].label;
    return r;
}

void check_structure(const PlaneBipartiteGraph& g) {
    // rotations cover exactly the outgoing half-edges, once each
    std::vector<int> tally(g.head.size(), 0);
    for (size_t v = 0; v < g.color.size(); ++v) {
        if (!g.color[v]) continue;
        for (int h : g.rot[v]) {
            if (!g.halfedge_alive(h) || g.tail(h) != (int)v)
                fail(ErrorCode::MalformedRotation,
                     "rotation at vertex " + std::to_string(v) + " lists half-edge " +
                         std::to_string(h) + " which does not leave it");
            tally[h]++;
        }
    }
    for (size_t h = 0; h < g.head.size(); ++h) {
        if (!g.halfedge_alive((int)h)) continue;
        if (tally[h] != 1)
            fail(ErrorCode::MalformedRotation,
                 "half-edge " + std::to_string(h) + " appears " + std::to_string(tally[h]) +
                     " times in rotations");
        if (g.color[g.head[h]] == g.color[g.head[h ^ 1]])
            fail(ErrorCode::NotBipartite,
                 "edge " + std::to_string(h / 2) + " joins two vertices of the same color");
    }
    // connectivity
    auto verts = g.alive_vertices();
    if (!verts.empty()) {
        std::set<int> seen{verts[0]};
        std::queue<int> q;
        q.push(verts[0]);
        while (!q.empty()) {
            int v = q.front();
            q.pop();
            for (int h : g.rot[v]) {
                int u = g.head[h];
                if (seen.insert(u).second) q.push(u);
            }
        }
        if (seen.size() != verts.size())
            fail(ErrorCode::Disconnected, "graph is not connected");
    }
    // Euler check (planarity of the rotation system)
    int V = g.vertex_count(), E = g.edge_count(), F = (int)g.faces.size();
    if (V > 0 && V - E + F != 2)
        fail(ErrorCode::MalformedRotation,
             "rotation system is not planar: V-E+F = " + std::to_string(V - E + F));
}

}  // namespace detail

void recompute_faces(PlaneBipartiteGraph& g) {
    detail::assign_face_indices(g, detail::face_orbits(g));
}

PlaneBipartiteGraph build_graph(const std::vector<char>& colors,
                                const std::vector<std::pair<int, int>>& edges,
                                const std::vector<std::vector<int>>& rotations,
                                std::optional<int> outerHint) {
    PlaneBipartiteGraph g;
    g.color = colors;
    for (size_t v = 0; v < colors.size(); ++v)
        if (colors[v] != 'b' && colors[v] != 'w')
            fail(ErrorCode::MalformedInput, "vertex " + std::to_string(v) + " has no color");
    g.head.assign(2 * edges.size(), -1);
    for (size_t e = 0; e < edges.size(); ++e) {
        auto [blk, wht] = edges[e];
        if (blk < 0 || blk >= (int)colors.size() || wht < 0 || wht >= (int)colors.size())
            fail(ErrorCode::MalformedInput, "edge endpoint out of range");
        if (colors[blk] != 'b' || colors[wht] != 'w')
            fail(ErrorCode::NotBipartite,
                 "edge " + std::to_string(e) + " does not join black to white");
        g.head[2 * e] = wht;      // 2e points black -> white
        g.head[2 * e + 1] = blk;  // its twin points white -> black
    }
    if (rotations.size() != colors.size())
        fail(ErrorCode::MalformedRotation, "rotation list has wrong length");
    g.rot = rotations;
    recompute_faces(g);
    detail::check_structure(g);
    g.outerIdx = detail::pick_outer(g, outerHint);
    // labels: outer face 0, inner faces 1.. in discovery order
    int next = 1;
    for (size_t i = 0; i < g.faces.size(); ++i)
        g.faces[i].label = g.is_outer((int)i) ? 0 : next++;
    g.nextLabel = next;
    return g;
}

PlaneBipartiteGraph build_graph_from_edge_orders(
    const std::vector<char>& colors,
    const std::vector<std::pair<int, int>>& edges,
    const std::vector<std::vector<int>>& edgeOrders,
    std::optional<int> outerHintEdgeSide) {
    std::vector<std::vector<int>> rotations(colors.size());
    for (size_t v = 0; v < edgeOrders.size(); ++v)
        for (int e : edgeOrders[v]) {
            if (e < 0 || e >= (int)edges.size())
                fail(ErrorCode::MalformedInput, "edge order lists unknown edge");
            rotations[v].push_back(colors[v] == 'b' ? 2 * e : 2 * e + 1);
        }
    return build_graph(colors, edges, rotations, outerHintEdgeSide);
}

StarCertificate check_property_star(const PlaneBipartiteGraph& g) {
    StarCertificate cert;
    int nb = 0, nw = 0;
    for (char c : g.color) {
        nb += c == 'b';
        nw += c == 'w';
    }
    if (nb != nw) {
        cert.detail = "color classes have different sizes";
        return cert;
    }

    auto edgesOf = [&](int v) { return g.rot[v]; };
    // search for a perfect matching extending `used` (vertex -> matched flag)
    std::vector<char> matched(g.color.size(), 0);
    auto verts = g.alive_vertices();
    std::function<bool(size_t)> extend = [&](size_t vi) -> bool {
        while (vi < verts.size() && matched[verts[vi]]) ++vi;
        if (vi == verts.size()) return true;
        int v = verts[vi];
        for (int h : edgesOf(v)) {
            int u = g.head[h];
            if (matched[u]) continue;
            matched[v] = matched[u] = 1;
            if (extend(vi + 1)) {
                matched[v] = matched[u] = 0;
                return true;
            }
            matched[v] = matched[u] = 0;
        }
        return false;
    };

    for (int e : g.alive_edges()) {
        std::fill(matched.begin(), matched.end(), 0);
        matched[g.black_end(e)] = matched[g.white_end(e)] = 1;
        if (!extend(0)) {
            cert.witnessEdge = e;
            cert.detail = "edge " + std::to_string(e) + " lies in no perfect matching";
            return cert;
        }
    }
    // Independent cross-check: each inner face must be up-flippable in some
    // matching, i.e. some matching contains all its white->black edges.
    for (size_t fi = 0; fi < g.faces.size(); ++fi) {
        if (g.is_outer((int)fi)) continue;
        std::fill(matched.begin(), matched.end(), 0);
        bool clash = false;
        for (int e : g.face_edges((int)fi)) {
            if (classify_edge(g, (int)fi, e) != EdgeClass::WhiteBlack) continue;
            int b = g.black_end(e), w = g.white_end(e);
            if (matched[b] || matched[w]) clash = true;
            matched[b] = matched[w] = 1;
        }
        if (clash || !extend(0))
            fail(ErrorCode::MismatchReport,
                 "face " + std::to_string(g.faces[fi].label) +
                     " is never up-flippable although every edge is matchable");
    }
    cert.holds = true;
    cert.detail = "every edge lies in a perfect matching";
    return cert;
}

EdgeClass classify_edge(const PlaneBipartiteGraph& g, int faceIdx, int e) {
    if (g.is_outer(faceIdx))
        fail(ErrorCode::EdgeNotOnFace, "classify_edge on the outer face");
    for (int h : g.faces[faceIdx].boundary) {
        if (h / 2 != e) continue;
        // Clockwise is the reverse of this walk; reversing traverses twin(h),
        // which meets head(h) first.
        return g.color[g.head[h]] == 'b' ? EdgeClass::BlackWhite : EdgeClass::WhiteBlack;
    }
    fail(ErrorCode::EdgeNotOnFace,
         "edge " + std::to_string(e) + " not on face index " + std::to_string(faceIdx));
}

namespace {

Quiver quiver_impl(const PlaneBipartiteGraph& g, bool extended) {
    std::vector<int> labels = g.inner_face_labels();
    if (extended) {
        labels.push_back(g.outer_label());
        std::sort(labels.begin(), labels.end());
    }
    Quiver q = Quiver::make((int)labels.size(), (int)labels.size(), labels);
    auto idx = [&](int label) {
        return (int)(std::lower_bound(labels.begin(), labels.end(), label) - labels.begin());
    };
    for (int e : g.alive_edges()) {
        int h = g.black_halfedge(e);
        int fLeft = g.faceOf[h], fRight = g.faceOf[g.twin(h)];
        if (fLeft == fRight) continue;
        if (!extended && (g.is_outer(fLeft) || g.is_outer(fRight))) continue;
        // crossing the edge with the white vertex on the right means going
        // from the face right of black->white to the face left of it
        int from = idx(g.faces[fRight].label), to = idx(g.faces[fLeft].label);
        q.b[from][to] += 1;
        q.b[to][from] -= 1;
    }
    q.validate();
    return q;
}

}  // namespace

Quiver dual_quiver(const PlaneBipartiteGraph& g) { return quiver_impl(g, false); }
Quiver extended_dual_quiver(const PlaneBipartiteGraph& g) { return quiver_impl(g, true); }

std::string canonical_string(const PlaneBipartiteGraph& g) {
    // Breadth-first renumbering from each root half-edge; the traversal order
    // is generated by twin() and rotation-successor, which together reach the
    // whole connected map.  The minimum encoding over roots is canonical for
    // colored oriented maps.
    std::string best;
    for (size_t root = 0; root < g.head.size(); ++root) {
        if (!g.halfedge_alive((int)root)) continue;
        std::map<int, int> id;
        std::vector<int> order;
        id[(int)root] = 0;
        order.push_back((int)root);
        for (size_t i = 0; i < order.size(); ++i) {
            int h = order[i];
            for (int nxt : {g.twin(h), g.rot_successor(g.tail(h), h)}) {
                if (!id.count(nxt)) {
                    id[nxt] = (int)order.size();
                    order.push_back(nxt);
                }
            }
        }
        std::ostringstream enc;
        for (int h : order)
            enc << id[g.twin(h)] << ',' << id[g.rot_successor(g.tail(h), h)] << ','
                << g.color[g.tail(h)] << ';';
        std::string s = enc.str();
        if (best.empty() || s < best) best = std::move(s);
    }
    return best;
}

std::string graph_to_dot(const PlaneBipartiteGraph& g) {
    std::ostringstream out;
    out << "graph G {\n  node [style=filled];\n";
    for (int v : g.alive_vertices())
        out << "  v" << v << " [fillcolor=" << (g.color[v] == 'b' ? "black, fontcolor=white" : "white")
            << "];\n";
    for (int e : g.alive_edges())
        out << "  v" << g.black_end(e) << " -- v" << g.white_end(e) << " [label=\"e" << e
            << "\"];\n";
    out << "}\n";
    return out.str();
}

}  // namespace dimerlab
