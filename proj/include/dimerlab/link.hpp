#pragma once

// Oriented link diagrams from PD codes, their face-crossing incidence graphs,
// Kauffman states and the clock lattice, the Alexander polynomial by state
// sum and by dimer specialization, connect sums, and the 2-bridge family
// (flock graphs and snake graphs).

#include <array>
#include <map>
#include <string>
#include <vector>

#include "dimerlab/dimer.hpp"
#include "dimerlab/graph.hpp"
#include "dimerlab/laurent.hpp"

namespace dimerlab {

// PD convention: X[a,b,c,d] lists the segments counterclockwise starting from
// the incoming under-strand, so slot 0 is under-in and slot 2 under-out.  The
// over-strand enters at slot overIn (1 or 3).
struct CrossingRec {
    std::array<int, 4> seg{};
    int overIn = 1;
};

struct SegmentRec {
    int id = -1;
    int tailCrossing = -1, tailSlot = -1;  // the end the segment leaves from
    int headCrossing = -1, headSlot = -1;  // the end it arrives at
};

struct LinkDiagram {
    std::vector<CrossingRec> crossings;
    std::vector<SegmentRec> segments;  // ascending by id
    // corner k of a crossing sits between slots k and k+1 (ccw)
    std::vector<std::array<int, 4>> regionOfCorner;
    // per region, its (crossing, corner) incidences in ccw order around the region
    std::vector<std::vector<std::pair<int, int>>> regionCorners;

    int crossing_count() const { return (int)crossings.size(); }
    int region_count() const { return (int)regionCorners.size(); }
    const SegmentRec& segment(int id) const;
    // the two regions flanking a segment (the absent ones when truncating there)
    std::array<int, 2> segment_regions(int id) const;
};

// Orientations are read off the crossing data (slots 0 and overIn come in);
// regions are traced on the 4-valent map.  MalformedPD, InconsistentOrientation.
LinkDiagram build_diagram(std::vector<CrossingRec> crossings);

// "X[a,b,c,d] X[...] ..."; per-component orientation inferred from segment
// labels increasing cyclically.  An optional ":1"/":3" suffix pins the slot
// where the over-strand enters, for crossings where inference is ambiguous.
LinkDiagram parse_pd(const std::string& text);
std::string pd_string(const LinkDiagram& L);

// Relabels segments 1..2n consecutively along each oriented component.  When
// pinSegment >= 0, component order and starting points are chosen so that it
// ends up labeled pinLabel (MismatchReport if impossible).
LinkDiagram canonical_labels(const LinkDiagram& L, std::map<int, int>* oldToNew = nullptr,
                             int pinSegment = -1, int pinLabel = -1);

struct DiagramCertificate {
    bool connected = false;
    bool primeLike = false;   // no 2-segment cut with crossings on both sides
    bool noNugatory = false;  // no crossing is a cut vertex of the 4-valent map
    bool noCurl = false;      // no crossing sees the same segment twice
    std::string witness;      // first failure, empty when all pass
    bool all_pass() const { return connected && primeLike && noNugatory && noCurl; }
};
DiagramCertificate validate_diagram(const LinkDiagram& L);

// under-to-over: exits an undercrossing and enters an overcrossing, etc.
enum class SegmentClass { UnderToOver, OverToUnder, Same };
SegmentClass classify_segment(const LinkDiagram& L, int segId);

// G_L: black vertex per crossing (vertex c), white per region (vertex n + r),
// edge 4c + k joining crossing c to the region at its corner k.  Every face is
// a square and carries a unique segment.
struct FaceCrossingGraph {
    PlaneBipartiteGraph g;
    int nCrossings = 0;
    std::map<int, int> faceOfSegment, segmentOfFace;  // face label <-> segment id
};
FaceCrossingGraph face_crossing_graph(const LinkDiagram& L);

// G_{L,i}: G_L minus the two whites flanking segment i.
struct TruncatedGraph {
    PlaneBipartiteGraph g;
    std::map<int, int> faceOfSegment, segmentOfFace;  // inner faces only
    std::vector<std::pair<int, int>> cornerOfEdge;    // edge id -> (crossing, corner)
    std::vector<int> crossingOfBlack;                 // black vertex -> crossing
};
TruncatedGraph truncated_graph(const LinkDiagram& L, int segId);  // Disconnected if it splits
std::vector<TruncatedGraph> truncated_components(const LinkDiagram& L, int segId);

struct ClockLatticeReport {
    int stateCount = 0, matchingCount = 0, coverCount = 0;
    bool isomorphic = false;  // states match matchings and covers are clock moves
    std::string json;
};
ClockLatticeReport kauffman_states(const LinkDiagram& L, int segId);

// Sum over Kauffman states of (-1)^{black holes} times the corner weights,
// enumerated directly on the diagram (no dimer machinery).
LaurentPoly alexander_state_sum(const LinkDiagram& L, int segId);

struct AlexanderReport {
    LaurentPoly specialized;  // D_{G_{L,i}} with y_j -> {-t, -1/t, -1} by SegmentClass
    LaurentPoly stateSum;
    bool exact = false;  // specialized * weight(0-hat) == stateSum, term by term
};
// Throws SpecializationMismatch when the exact identity fails.
AlexanderReport alexander_from_dimer(const LinkDiagram& L, int segId);

// Splices L2 into a region flanking segment i1 of L1, joining i1 to i2.
// L2's labels are shifted above L1's; the two bridge arcs keep labels i1 and
// the shifted i2.  SegmentNotExterior on empty summands or unknown segments.
LinkDiagram connect_sum(const LinkDiagram& L1, int i1, const LinkDiagram& L2, int i2);

struct ConnectSumReport {
    bool graphsMatch = false;  // truncation of the sum = disjoint union of truncations
    bool polyFactors = false;  // D multiplies under the segment-variable partition
    std::string detail;
};
ConnectSumReport connect_sum_check(const LinkDiagram& L1, int i1, const LinkDiagram& L2,
                                   int i2);

// Rebuilds an alternating diagram whose face-crossing graph is g (all faces of
// g must be squares).  Segment ids are the face labels of g; the mirror choice
// is fixed by a checkerboard coloring of the whites.
LinkDiagram diagram_from_face_crossing(const PlaneBipartiteGraph& g);

// The standard 2-bridge diagram C(alpha) and its distinguished bottom segment.
struct TwoBridge {
    LinkDiagram diagram;  // canonical labels
    int lowerSegment = -1;
};
TwoBridge two_bridge(const std::vector<int>& alpha);

// G_{C(alpha), lower}: the birdwing flock, built directly.
PlaneBipartiteGraph flock_graph(const std::vector<int>& alpha);

// alpha_1 minuses then alpha_2 pluses and so on; length sum(alpha).
std::string snake_sign_sequence(const std::vector<int>& alpha);
PlaneBipartiteGraph snake_graph(const std::vector<int>& alpha);

struct FlockSnakeReport {
    bool ok = false;
    int matchingCount = 0;
    bool reversed = false;  // the face bijection runs the path orders oppositely
    std::string detail;
};
// Contracts both graphs to their normal forms, matches faces along the type-A
// path order of the dual quivers, and certifies the lattice isomorphism.
FlockSnakeReport flock_snake_equivalence(const std::vector<int>& alpha);

struct SegmentClusterCheck {
    int segment = -1;
    bool fMatch = false, gMatch = false, expansionMatch = false, dMatch = false;
    std::vector<int> sequence;  // mutation labels, in G_L face labels
    bool all() const { return fMatch && gMatch && expansionMatch && dMatch; }
};
struct LinkClusterReport {
    bool ok = false;
    std::vector<SegmentClusterCheck> segments;
};
// For each segment i, locates z_i in the cluster algebra of the extended dual
// quiver of G_L via the reduction sequence of G_{L,i} and checks its
// F-polynomial, g-vector, matching expansion, and d-vector.
LinkClusterReport link_cluster_check(const LinkDiagram& L, int depthCap = 12);

}  // namespace dimerlab
