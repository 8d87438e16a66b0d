#pragma once

// Plabic graphs in a disk, almost-perfect matchings with a fixed boundary,
// the pruned graph H of matched edges, and the symbolic verification that
// twisted Pluecker formulas decompose as cluster monomials.

#include <map>
#include <string>
#include <vector>

#include "dimerlab/cluster.hpp"
#include "dimerlab/graph.hpp"
#include "dimerlab/laurent.hpp"
#include "dimerlab/quiver.hpp"

namespace dimerlab {

// Boundary vertices are 0..n-1 counterclockwise around the disk, all black,
// each adjacent to at most one internal vertex; internal vertices follow.
// The disk boundary arcs (a, a+1 mod n) are part of the embedded map but are
// not real edges: matchings never use them and faces may contain them.
// Half-edge ids: real edge e has darts 2e (tail at the black end) and 2e+1;
// arc a has darts 2E+2a (from a to a+1) and 2E+2a+1.
struct PlabicGraph {
    int n = 0, k = 0;  // type (k, n)
    std::vector<char> color;                // all vertices; 0..n-1 are 'b'
    std::vector<std::pair<int, int>> edges; // real edges only
    std::vector<std::vector<int>> rot;      // ccw outgoing darts, arcs included
    bool reducedAsserted = false;

    struct Face {
        std::vector<int> darts;  // boundary walk
        std::vector<int> edges;  // real edge ids, sorted, deduplicated
        std::vector<int> arcs;   // arc ids on the boundary
        std::vector<int> vertices;
        int whiteCount = 0;      // w_f
        bool frozen = false;     // touches the disk boundary
    };
    std::vector<Face> faces;  // mutable faces first; face id = quiver label
    int nMutableFaces = 0;
    std::vector<int> faceOfDart;

    int edge_count() const { return (int)edges.size(); }
    int face_count() const { return (int)faces.size(); }
    int dart_head(int h) const;
    int dart_tail(int h) const { return dart_head(h ^ 1); }
    // The unique real edge at boundary vertex a, or -1.
    int pendant_edge(int a) const;
};

// internalColors[i] colors vertex n+i; internalEdgeOrders[i] lists its
// incident edges counterclockwise.  Boundary rotations and arcs are derived.
PlabicGraph build_plabic(int n, const std::string& internalColors,
                         const std::vector<std::pair<int, int>>& edges,
                         const std::vector<std::vector<int>>& internalEdgeOrders,
                         bool reducedAsserted = false);

// Q^fr_G: one vertex per face, faces touching the disk boundary frozen.
// Arrows cross each real edge with the white end on the right, as for plane
// graphs; frozen-frozen pairs carry no arrows.
Quiver plabic_quiver(const PlabicGraph& G);

// Seed over Q^fr_G whose cluster is the formal face variables x{faceId}.
Seed plabic_seed(const PlabicGraph& G);

// h_f = w_f - |M cap f| - 1 over all faces, in face-id order.  M is a mask
// over real edge ids.
std::vector<int> plabic_h_vector(const PlabicGraph& G, uint64_t M);

// bd_f(J) per face: boundary labels j in J (1-based) whose arc (j-1, j) lies
// on f, skipping lollipop vertices.
std::vector<int> bd_vector(const PlabicGraph& G, const std::vector<int>& J);

struct ApmLattice {
    std::vector<uint64_t> matchings;  // masks over real edge ids, sorted
    struct Cover {
        int lower, upper;
        int face;  // face id flipped up
    };
    std::vector<Cover> covers;
    int bottom = -1;  // index of the unique minimum, -1 when empty / not unique
};

// All almost-perfect matchings with boundary exactly J (1-based labels).
ApmLattice enumerate_apm(const PlabicGraph& G, const std::vector<int>& J);

struct PrunedComponent {
    PlaneBipartiteGraph g;
    std::vector<int> edgeToPlabic;   // component edge id -> plabic edge id
    std::map<int, int> faceToPlabic; // inner face label -> plabic face id
};

struct PrunedGraph {
    std::vector<PrunedComponent> components;
    uint64_t edgeMask = 0;            // surviving edges of G
    std::vector<uint64_t> matchings;  // of H, as masks over plabic edges
};

// Deletes boundary vertices, internal vertices adjacent to J, and edges in no
// matching with boundary J; every component must have property (*) and every
// inner component face must be a face of G.  MismatchReport otherwise.
PrunedGraph build_H(const PlabicGraph& G, const std::vector<int>& J);

struct TwistFormulaResult {
    std::vector<int> J;
    bool vanishing = false;   // no matching with boundary J
    LaurentPoly laurent;      // x^{bd(J)} * sum over matchings of x^{h_M}
    LaurentPoly bdMonomial;
    // Filled by verify_plucker_cluster_monomial: mutable cluster variables
    // with multiplicities, and a Laurent monomial in frozen variables.
    std::vector<std::pair<LaurentPoly, int>> clusterFactors;
    LaurentPoly frozenFactor;
};

TwistFormulaResult twist_formula(const PlabicGraph& G, const std::vector<int>& J);

struct PlabicReport {
    bool ok = false;
    bool vanishing = false;
    bool uniqueMatching = false;
    TwistFormulaResult twist;
    std::string detail;
};

// Recomputes the twist sum through the pruned graph H, obtains one cluster
// variable per component by mutating the plabic seed along its reduction
// sequence, and certifies that the twist formula is their product times a
// monomial with nonnegative mutable exponents and a frozen Laurent monomial.
PlabicReport verify_plucker_cluster_monomial(const PlabicGraph& G,
                                             const std::vector<int>& J,
                                             int depthCap = 12);

std::string plabic_to_json(const PlabicGraph& G);
PlabicGraph plabic_from_json(const std::string& text);

}  // namespace dimerlab
