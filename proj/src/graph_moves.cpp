#include <algorithm>
#include <cassert>
#include <set>

#include "dimerlab/graph.hpp"

namespace dimerlab {

namespace detail {
std::vector<std::vector<int>> face_orbits(const PlaneBipartiteGraph& g);
void recompute_faces_inherit(PlaneBipartiteGraph& g,
                             const std::vector<int>& oldFaceLabelOf,
                             int oldOuterLabel,
                             const std::set<int>& consumed,
                             const std::vector<std::pair<int, int>>& forced);
std::vector<int> face_label_of_halfedge(const PlaneBipartiteGraph& g);
void check_structure(const PlaneBipartiteGraph& g);
}  // namespace detail

namespace {

void kill_halfedge_pair(PlaneBipartiteGraph& g, int h) {
    g.head[h] = g.head[h ^ 1] = -1;
}

void erase_from_rot(std::vector<int>& r, int h) {
    r.erase(std::find(r.begin(), r.end(), h));
}

// replace the single entry h in r with the sequence repl
void replace_in_rot(std::vector<int>& r, int h, const std::vector<int>& repl) {
    auto it = std::find(r.begin(), r.end(), h);
    if (it == r.end()) fail(ErrorCode::PatternMismatch, "rotation entry missing");
    size_t pos = it - r.begin();
    r.erase(it);
    r.insert(r.begin() + pos, repl.begin(), repl.end());
}

int new_vertex(PlaneBipartiteGraph& g, char c) {
    g.color.push_back(c);
    g.rot.emplace_back();
    return (int)g.color.size() - 1;
}

// appends a twin pair tail->head / head->tail, returns the first id
int new_halfedge_pair(PlaneBipartiteGraph& g, int tailV, int headV) {
    int h = (int)g.head.size();
    g.head.push_back(headV);
    g.head.push_back(tailV);
    return h;
}

MoveResult do_econtract(const PlaneBipartiteGraph& g, int v) {
    if (v < 0 || v >= (int)g.color.size() || !g.vertex_alive(v))
        fail(ErrorCode::PatternMismatch, "E-contract at dead vertex");
    if (g.degree(v) != 2)
        fail(ErrorCode::DegreeViolation, "E-contract needs a degree-2 vertex");
    int h1 = g.rot[v][0], h2 = g.rot[v][1];
    int b1 = g.head[h1], b2 = g.head[h2];
    if (b1 == b2)
        fail(ErrorCode::PatternMismatch, "E-contract with coincident neighbors (bigon)");
    if (g.degree(b1) == 1 && g.degree(b2) == 1)
        fail(ErrorCode::DegreeViolation, "contracting a bare path");

    auto oldLabels = detail::face_label_of_halfedge(g);
    int oldOuter = g.outer_label();
    PlaneBipartiteGraph ng = g;

    // b2's remaining half-edges, starting after its edge to v
    std::vector<int> block;
    {
        int start = ng.rot_position(b2, g.twin(h2));
        int d = ng.degree(b2);
        for (int i = 1; i < d; ++i) block.push_back(ng.rot[b2][(start + i) % d]);
    }
    for (int x : block) ng.head[x ^ 1] = b1;
    replace_in_rot(ng.rot[b1], g.twin(h1), block);
    kill_halfedge_pair(ng, h1);
    kill_halfedge_pair(ng, h2);
    ng.color[v] = ng.color[b2] = 0;
    ng.rot[v].clear();
    ng.rot[b2].clear();

    detail::recompute_faces_inherit(ng, oldLabels, oldOuter, {}, {});
    detail::check_structure(ng);
    MoveRecord inv{MoveKind::EUncontract};
    inv.vertex = b1;
    inv.block = block;
    return {std::move(ng), {inv}};
}

MoveResult do_euncontract(const PlaneBipartiteGraph& g, int v, const std::vector<int>& block) {
    if (v < 0 || v >= (int)g.color.size() || !g.vertex_alive(v))
        fail(ErrorCode::PatternMismatch, "E-uncontract at dead vertex");
    int d = g.degree(v), k = (int)block.size();
    if (k == 0 || k >= d)
        fail(ErrorCode::DegreeViolation, "E-uncontract block must be a proper nonempty subset");
    int start = g.rot_position(v, block[0]);
    if (start < 0) fail(ErrorCode::PatternMismatch, "block not at vertex");
    for (int i = 0; i < k; ++i)
        if (g.rot[v][(start + i) % d] != block[i])
            fail(ErrorCode::PatternMismatch, "E-uncontract block not contiguous in rotation");

    auto oldLabels = detail::face_label_of_halfedge(g);
    int oldOuter = g.outer_label();
    PlaneBipartiteGraph ng = g;

    char c = ng.color[v];
    int v2 = new_vertex(ng, c);
    int m = new_vertex(ng, c == 'b' ? 'w' : 'b');
    int ha = new_halfedge_pair(ng, v, m);    // ha: v->m, ha^1: m->v
    int hb = new_halfedge_pair(ng, m, v2);   // hb: m->v2, hb^1: v2->m

    for (int x : block) ng.head[x ^ 1] = v2;
    // rotate so the block is a prefix, then swap it for the new edge to m
    std::vector<int> r = ng.rot[v];
    std::rotate(r.begin(), r.begin() + start, r.end());
    std::vector<int> keep(r.begin() + k, r.end());
    ng.rot[v] = {ha};
    ng.rot[v].insert(ng.rot[v].end(), keep.begin(), keep.end());
    ng.rot[v2] = block;
    ng.rot[v2].push_back(hb ^ 1);
    ng.rot[m] = {ha ^ 1, hb};

    detail::recompute_faces_inherit(ng, oldLabels, oldOuter, {}, {});
    detail::check_structure(ng);
    MoveRecord inv{MoveKind::EContract};
    inv.vertex = m;
    return {std::move(ng), {inv}};
}

MoveResult do_square(const PlaneBipartiteGraph& g0, int faceLabel) {
    PlaneBipartiteGraph cur = g0;
    // normalize: every corner of the face trivalent
    for (;;) {
        int fi = cur.face_index_of_label(faceLabel);
        if (fi < 0) fail(ErrorCode::PatternMismatch, "no such face");
        if (cur.is_outer(fi)) fail(ErrorCode::PatternMismatch, "square move at outer face");
        const auto& bd = cur.faces[fi].boundary;
        if (bd.size() != 4)
            fail(ErrorCode::PatternMismatch, "face " + std::to_string(faceLabel) + " is not a square");
        int corners[4];
        for (int i = 0; i < 4; ++i) {
            corners[i] = cur.tail(bd[i]);
            if (cur.degree(corners[i]) < 3)
                fail(ErrorCode::DegreeViolation, "square corner has degree < 3");
        }
        // corners with extra edges: split off a trivalent corner
        int bigCorner = -1, hIn = -1, hOut = -1;
        for (int i = 0; i < 4 && bigCorner < 0; ++i) {
            if (cur.degree(corners[i]) > 3) {
                bigCorner = corners[i];
                hIn = bd[(i + 3) % 4];
                hOut = bd[i];
            }
        }
        if (bigCorner >= 0) {
            cur = do_euncontract(cur, bigCorner, {cur.twin(hIn), hOut}).graph;
            continue;
        }
        // a corner whose external edge runs straight to another corner (a
        // bigon beside the square): subdivide by splitting off the external
        int pinch = -1, ext = -1;
        for (int i = 0; i < 4 && pinch < 0; ++i) {
            for (int h : cur.rot[corners[i]]) {
                if (h == cur.twin(bd[(i + 3) % 4]) || h == bd[i]) continue;
                for (int j = 0; j < 4; ++j)
                    if (cur.head[h] == corners[j]) {
                        pinch = corners[i];
                        ext = h;
                    }
            }
        }
        if (pinch < 0) break;
        cur = do_euncontract(cur, pinch, {ext}).graph;
    }

    int fi = cur.face_index_of_label(faceLabel);
    const auto bd = cur.faces[fi].boundary;
    int corner[4], ext[4], u[4];
    for (int i = 0; i < 4; ++i) corner[i] = cur.tail(bd[i]);
    std::set<int> cornerSet(corner, corner + 4);
    if (cornerSet.size() != 4)
        fail(ErrorCode::PatternMismatch, "square face boundary is not a simple cycle");
    for (int i = 0; i < 4; ++i) {
        for (int h : cur.rot[corner[i]])
            if (h != cur.twin(bd[(i + 3) % 4]) && h != bd[i]) ext[i] = h;
        u[i] = cur.head[ext[i]];
        if (cornerSet.count(u[i]))
            fail(ErrorCode::PatternMismatch,
                 "square move blocked: face has a double border (excluded under property (*))");
    }

    auto oldLabels = detail::face_label_of_halfedge(cur);
    int oldOuter = cur.outer_label();
    PlaneBipartiteGraph ng = cur;
    int s[4];
    for (int i = 0; i < 4; ++i) s[i] = new_halfedge_pair(ng, u[i], u[(i + 1) % 4]);
    for (int i = 0; i < 4; ++i) {
        // the corner of the new square at u[i]: predecessor edge then successor edge
        replace_in_rot(ng.rot[u[i]], cur.twin(ext[i]), {ng.twin(s[(i + 3) % 4]), s[i]});
    }
    for (int i = 0; i < 4; ++i) {
        kill_halfedge_pair(ng, bd[i]);
        kill_halfedge_pair(ng, ext[i]);
        ng.color[corner[i]] = 0;
        ng.rot[corner[i]].clear();
    }
    detail::recompute_faces_inherit(ng, oldLabels, oldOuter, {}, {{s[0], faceLabel}});
    detail::check_structure(ng);
    MoveRecord inv{MoveKind::Square};
    inv.face = faceLabel;
    return {std::move(ng), {inv}};
}

MoveResult do_bigon(const PlaneBipartiteGraph& g, int faceLabel) {
    int fi = g.face_index_of_label(faceLabel);
    if (fi < 0) fail(ErrorCode::PatternMismatch, "no such face");
    if (g.is_outer(fi)) fail(ErrorCode::PatternMismatch, "bigon removal at outer face");
    const auto& bd = g.faces[fi].boundary;
    if (bd.size() != 2) fail(ErrorCode::PatternMismatch, "face is not a bigon");
    int ep = bd[0] / 2, eq = bd[1] / 2;
    int keep = std::min(ep, eq), drop = std::max(ep, eq);
    int b = g.black_end(keep);
    if (g.degree(b) < 2 || g.degree(g.white_end(keep)) < 2)
        fail(ErrorCode::DegreeViolation, "bigon endpoints must have degree at least 2");
    int hKeep = g.black_halfedge(keep), hDrop = g.black_halfedge(drop);
    int side = g.rot_successor(b, hKeep) == hDrop ? 0 : 1;

    auto oldLabels = detail::face_label_of_halfedge(g);
    int oldOuter = g.outer_label();
    PlaneBipartiteGraph ng = g;
    erase_from_rot(ng.rot[ng.tail(2 * drop)], 2 * drop);
    erase_from_rot(ng.rot[ng.tail(2 * drop + 1)], 2 * drop + 1);
    kill_halfedge_pair(ng, 2 * drop);
    detail::recompute_faces_inherit(ng, oldLabels, oldOuter, {faceLabel}, {});
    detail::check_structure(ng);
    MoveRecord inv{MoveKind::BigonAdd};
    inv.edge = keep;
    inv.side = side;
    return {std::move(ng), {inv}};
}

MoveResult do_bigon_add(const PlaneBipartiteGraph& g, int e, int side) {
    if (!g.edge_alive(e)) fail(ErrorCode::PatternMismatch, "no such edge");
    auto oldLabels = detail::face_label_of_halfedge(g);
    int oldOuter = g.outer_label();
    PlaneBipartiteGraph ng = g;
    int b = ng.black_end(e), w = ng.white_end(e);
    int hb = ng.black_halfedge(e), hw = ng.twin(hb);
    int n0 = new_halfedge_pair(ng, b, w);  // n0: b->w, n0^1: w->b
    auto insert_at = [&](std::vector<int>& r, int anchor, int h, bool after) {
        auto it = std::find(r.begin(), r.end(), anchor);
        if (after) ++it;
        r.insert(it, h);
    };
    int bigonHe;
    if (side == 0) {
        insert_at(ng.rot[b], hb, n0, true);
        insert_at(ng.rot[w], hw, n0 ^ 1, false);
        bigonHe = n0;
    } else {
        insert_at(ng.rot[b], hb, n0, false);
        insert_at(ng.rot[w], hw, n0 ^ 1, true);
        bigonHe = n0 ^ 1;
    }
    int freshLabel = ng.nextLabel++;
    detail::recompute_faces_inherit(ng, oldLabels, oldOuter, {}, {{bigonHe, freshLabel}});
    detail::check_structure(ng);
    MoveRecord inv{MoveKind::Bigon};
    inv.face = freshLabel;
    return {std::move(ng), {inv}};
}

}  // namespace

MoveResult apply_move(const PlaneBipartiteGraph& g, const MoveRecord& m) {
    switch (m.kind) {
        case MoveKind::EContract: return do_econtract(g, m.vertex);
        case MoveKind::EUncontract: return do_euncontract(g, m.vertex, m.block);
        case MoveKind::Square: return do_square(g, m.face);
        case MoveKind::Bigon: return do_bigon(g, m.face);
        case MoveKind::BigonAdd: return do_bigon_add(g, m.edge, m.side);
    }
    fail(ErrorCode::PatternMismatch, "unknown move kind");
}

bool is_single_edge(const PlaneBipartiteGraph& g) {
    return g.edge_count() == 1 && g.vertex_count() == 2;
}

PlaneBipartiteGraph contract_all(const PlaneBipartiteGraph& g, std::vector<MoveRecord>* trace) {
    PlaneBipartiteGraph cur = g;
    for (;;) {
        if (cur.edge_count() <= 1) return cur;
        int pick = -1;
        for (int v : cur.alive_vertices()) {
            if (cur.degree(v) != 2) continue;
            if (cur.head[cur.rot[v][0]] == cur.head[cur.rot[v][1]]) continue;  // bigon
            pick = v;
            break;
        }
        if (pick < 0) return cur;
        MoveRecord m{MoveKind::EContract};
        m.vertex = pick;
        if (trace) trace->push_back(m);
        cur = apply_move(cur, m).graph;
    }
}

namespace {

int find_inner_bigon(const PlaneBipartiteGraph& g) {
    int best = -1;
    for (size_t i = 0; i < g.faces.size(); ++i) {
        if (g.is_outer((int)i) || g.faces[i].boundary.size() != 2) continue;
        if (best < 0 || g.faces[i].label < best) best = g.faces[i].label;
    }
    return best;
}

std::vector<int> square_candidates(const PlaneBipartiteGraph& g) {
    std::vector<std::pair<int, int>> cand;  // (priority, label)
    for (size_t i = 0; i < g.faces.size(); ++i) {
        if (g.is_outer((int)i) || g.faces[i].boundary.size() != 4) continue;
        cand.push_back({g.face_adjacent_to_outer((int)i) ? 0 : 1, g.faces[i].label});
    }
    std::sort(cand.begin(), cand.end());
    std::vector<int> r;
    for (auto& [p, l] : cand) r.push_back(l);
    return r;
}

bool square_dfs(const PlaneBipartiteGraph& g, int depth, std::vector<int>& path,
                std::set<std::string>& visited) {
    for (int f : square_candidates(g)) {
        PlaneBipartiteGraph child;
        try {
            child = contract_all(apply_move(g, MoveRecord{MoveKind::Square, f}).graph);
        } catch (const Error&) {
            continue;  // degenerate square, not movable
        }
        path.push_back(f);
        if (is_single_edge(child) || find_inner_bigon(child) >= 0) return true;
        if (depth > 1) {
            std::string key = canonical_string(child) + "@" + std::to_string(depth);
            if (visited.insert(key).second && square_dfs(child, depth - 1, path, visited))
                return true;
        }
        path.pop_back();
    }
    return false;
}

std::vector<int> search_squares(const PlaneBipartiteGraph& g, int depthCap) {
    for (int depth = 1; depth <= depthCap; ++depth) {
        std::set<std::string> visited;
        std::vector<int> path;
        if (square_dfs(g, depth, path, visited)) return path;
    }
    return {};
}

}  // namespace

ReductionSequence find_reduction_sequence(const PlaneBipartiteGraph& g, int depthCap) {
    ReductionSequence rs;
    PlaneBipartiteGraph cur = g;
    for (int guard = 0; guard < 100000; ++guard) {
        cur = contract_all(cur, &rs.fullTrace);
        if (is_single_edge(cur)) return rs;
        int bigon = find_inner_bigon(cur);
        if (bigon >= 0) {
            MoveRecord m{MoveKind::Bigon, bigon};
            cur = apply_move(cur, m).graph;
            rs.faces.push_back(bigon);
            rs.fullTrace.push_back(m);
            continue;
        }
        std::vector<int> prefix = search_squares(cur, depthCap);
        if (prefix.empty())
            fail(ErrorCode::SearchExhausted,
                 "no square-move sequence within depth cap " + std::to_string(depthCap));
        for (int f : prefix) {
            cur = contract_all(cur, &rs.fullTrace);
            MoveRecord m{MoveKind::Square, f};
            cur = apply_move(cur, m).graph;
            rs.faces.push_back(f);
            rs.fullTrace.push_back(m);
        }
    }
    fail(ErrorCode::SearchExhausted, "reduction did not terminate");
}

PlaneBipartiteGraph replay_reduction(const PlaneBipartiteGraph& g,
                                     const std::vector<int>& faceLabels) {
    PlaneBipartiteGraph cur = g;
    for (int label : faceLabels) {
        cur = contract_all(cur);
        int fi = cur.face_index_of_label(label);
        if (fi < 0)
            fail(ErrorCode::PatternMismatch,
                 "reduction sequence names missing face " + std::to_string(label));
        size_t len = cur.faces[fi].boundary.size();
        MoveKind kind;
        if (len == 2) kind = MoveKind::Bigon;
        else if (len == 4) kind = MoveKind::Square;
        else
            fail(ErrorCode::PatternMismatch,
                 "face " + std::to_string(label) + " is neither bigon nor square when reached");
        cur = apply_move(cur, MoveRecord{kind, label}).graph;
    }
    return contract_all(cur);
}

}  // namespace dimerlab
