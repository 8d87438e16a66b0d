#include "dimerlab/generate.hpp"

namespace dimerlab {

PlaneBipartiteGraph single_edge_graph() {
    return build_graph({'b', 'w'}, {{0, 1}}, {{0}, {1}});
}

namespace {

bool try_random_uncontract(PlaneBipartiteGraph& g, std::mt19937& rng) {
    auto vs = g.alive_vertices();
    std::vector<int> cand;
    for (int v : vs)
        if (g.degree(v) >= 2) cand.push_back(v);
    if (cand.empty()) return false;
    int v = cand[rng() % cand.size()];
    int d = g.degree(v);
    int start = (int)(rng() % d);
    int len = 1 + (int)(rng() % (d - 1));
    std::vector<int> block;
    for (int i = 0; i < len; ++i) block.push_back(g.rot[v][(start + i) % d]);
    MoveRecord m{MoveKind::EUncontract};
    m.vertex = v;
    m.block = block;
    g = apply_move(g, m).graph;
    return true;
}

bool try_random_square(PlaneBipartiteGraph& g, std::mt19937& rng) {
    std::vector<int> sq;
    for (size_t i = 0; i < g.faces.size(); ++i)
        if (!g.is_outer((int)i) && g.faces[i].boundary.size() == 4)
            sq.push_back(g.faces[i].label);
    if (sq.empty()) return false;
    MoveRecord m{MoveKind::Square, sq[rng() % sq.size()]};
    try {
        g = apply_move(g, m).graph;
    } catch (const Error&) {
        return false;
    }
    return true;
}

}  // namespace

PlaneBipartiteGraph random_star_graph(std::mt19937& rng, int targetInnerFaces, int maxEdges) {
    PlaneBipartiteGraph g = single_edge_graph();
    int guard = 0;
    while ((int)g.inner_face_labels().size() < targetInnerFaces && ++guard < 10000) {
        if (g.edge_count() + 3 > maxEdges) break;
        int roll = (int)(rng() % 10);
        if (roll < 4) {
            auto edges = g.alive_edges();
            MoveRecord m{MoveKind::BigonAdd};
            m.edge = edges[rng() % edges.size()];
            m.side = (int)(rng() % 2);
            g = apply_move(g, m).graph;
        } else if (roll < 8) {
            try_random_uncontract(g, rng);
        } else {
            try_random_square(g, rng);
        }
    }
    // a little extra mixing so bigons are not all nested the same way
    for (int i = 0; i < 4; ++i) {
        if (g.edge_count() + 2 > maxEdges) break;
        try_random_uncontract(g, rng);
        try_random_square(g, rng);
    }
    return g;
}

}  // namespace dimerlab
