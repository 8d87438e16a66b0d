#pragma once

// Bipartite plane graphs as combinatorial maps (rotation systems).
// Half-edges come in twin pairs h <-> h^1; edge id is h/2.  rot[v] lists the
// outgoing half-edges of v in counterclockwise order.  Faces are orbits of
// h -> rotation successor of twin(h) at its head, traversed with the face on
// the left.  Inner faces are therefore walked counterclockwise; "clockwise"
// below always means the reverse walk.

#include <optional>
#include <string>
#include <vector>

#include "dimerlab/errors.hpp"
#include "dimerlab/quiver.hpp"

namespace dimerlab {

struct FaceRec {
    std::vector<int> boundary;  // half-edges, face on the left
    int label = -1;             // persistent across moves; outer face keeps its label
};

struct PlaneBipartiteGraph {
    std::vector<char> color;            // per vertex: 'b', 'w', or 0 when deleted
    std::vector<std::vector<int>> rot;  // per vertex, ccw outgoing half-edges
    std::vector<int> head;              // per half-edge, head vertex; -1 when deleted

    // Derived by recompute_faces().
    std::vector<FaceRec> faces;
    std::vector<int> faceOf;  // per half-edge
    int outerIdx = -1;
    int nextLabel = 0;  // label allocator for faces created by degenerate moves

    int twin(int h) const { return h ^ 1; }
    int tail(int h) const { return head[h ^ 1]; }
    bool vertex_alive(int v) const { return color[v] != 0; }
    bool halfedge_alive(int h) const { return h >= 0 && h < (int)head.size() && head[h] >= 0; }
    int degree(int v) const { return (int)rot[v].size(); }
    int edge_of(int h) const { return h / 2; }
    bool edge_alive(int e) const { return halfedge_alive(2 * e); }

    int vertex_count() const;
    int edge_count() const;
    std::vector<int> alive_edges() const;
    std::vector<int> alive_vertices() const;

    // Endpoints of an edge by color.
    int black_end(int e) const;
    int white_end(int e) const;
    // The half-edge of e whose tail is black.
    int black_halfedge(int e) const;

    int rot_position(int v, int h) const;       // index in rot[v], -1 if absent
    int rot_successor(int v, int h) const;      // cyclic successor of h in rot[v]
    int next_in_face(int h) const { return rot_successor(head[h], twin(h)); }

    int face_index_of_label(int label) const;   // -1 if absent
    const FaceRec& face_by_label(int label) const;
    bool is_outer(int faceIdx) const { return faceIdx == outerIdx; }
    std::vector<int> inner_face_labels() const;  // sorted ascending
    int outer_label() const { return faces[outerIdx].label; }

    // Edges on the boundary of a face (deduplicated, sorted).
    std::vector<int> face_edges(int faceIdx) const;
    bool face_adjacent_to_outer(int faceIdx) const;
};

enum class EdgeClass { BlackWhite, WhiteBlack };

enum class MoveKind { EContract, EUncontract, Square, Bigon, BigonAdd };

struct MoveRecord {
    MoveKind kind;
    int face = -1;    // face label, for Square / Bigon
    int vertex = -1;  // EContract: the degree-2 middle; EUncontract: vertex to split
    std::vector<int> block;  // EUncontract: contiguous rotation block moved to the new vertex
    int edge = -1;    // BigonAdd: edge to duplicate
    int side = 0;     // BigonAdd: which side of the edge gets the new bigon face
};

struct MoveResult {
    PlaneBipartiteGraph graph;
    std::vector<MoveRecord> inverse;  // replay in order to undo (up to isomorphism)
};

struct ReductionSequence {
    std::vector<int> faces;             // labels of (S)/(B) faces, in order
    std::vector<MoveRecord> fullTrace;  // including interleaved (E) contractions
};

struct StarCertificate {
    bool holds = false;
    int witnessEdge = -1;  // an edge in no perfect matching, when !holds
    std::string detail;
};

// rotations[v] lists half-edge ids (2e: black->white tail at black endpoint of
// edge e, 2e+1 the reverse).  outerHint: a half-edge on the outer face.
PlaneBipartiteGraph build_graph(const std::vector<char>& colors,
                                const std::vector<std::pair<int, int>>& edges,
                                const std::vector<std::vector<int>>& rotations,
                                std::optional<int> outerHint = std::nullopt);

// Convenience: derives rotations from per-vertex neighbor order given as edge
// ids (ccw).  Useful for fixtures.
PlaneBipartiteGraph build_graph_from_edge_orders(
    const std::vector<char>& colors,
    const std::vector<std::pair<int, int>>& edges,
    const std::vector<std::vector<int>>& edgeOrders,
    std::optional<int> outerHintEdgeSide = std::nullopt);

void recompute_faces(PlaneBipartiteGraph& g);  // fresh labels (initial build)

StarCertificate check_property_star(const PlaneBipartiteGraph& g);

EdgeClass classify_edge(const PlaneBipartiteGraph& g, int faceIdx, int e);

MoveResult apply_move(const PlaneBipartiteGraph& g, const MoveRecord& m);

// Contract every degree-2 vertex (with distinct neighbors); appends the moves
// performed to trace if given.
PlaneBipartiteGraph contract_all(const PlaneBipartiteGraph& g,
                                 std::vector<MoveRecord>* trace = nullptr);

ReductionSequence find_reduction_sequence(const PlaneBipartiteGraph& g, int depthCap = 12);

// Replays an S/B face-label sequence (with automatic E-contractions before
// each move); throws PatternMismatch if the sequence is invalid.  Returns the
// final graph, which callers typically check is a single edge.
PlaneBipartiteGraph replay_reduction(const PlaneBipartiteGraph& g,
                                     const std::vector<int>& faceLabels);

bool is_single_edge(const PlaneBipartiteGraph& g);

Quiver dual_quiver(const PlaneBipartiteGraph& g);
Quiver extended_dual_quiver(const PlaneBipartiteGraph& g);

// Canonical form of the rooted oriented map, minimized over roots; equal
// strings iff the maps are isomorphic as colored oriented maps.
std::string canonical_string(const PlaneBipartiteGraph& g);

std::string graph_to_dot(const PlaneBipartiteGraph& g);

}  // namespace dimerlab
