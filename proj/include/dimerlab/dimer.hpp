#pragma once

// Perfect matchings of a plane bipartite graph, the flip lattice, heights and
// the dimer face polynomial.  Matchings are bitmasks over model.edges (desk
// scale: at most 64 live edges).

#include <cstdint>
#include <vector>

#include "dimerlab/graph.hpp"
#include "dimerlab/laurent.hpp"

namespace dimerlab {

struct DimerModel {
    PlaneBipartiteGraph g;
    std::vector<int> edges;        // alive edge ids, ascending; mask bit i = edges[i]
    std::vector<int> innerLabels;  // sorted; index order for height/h vectors
    std::vector<uint64_t> matchings;  // all perfect matchings, lex order on edge sets
};

DimerModel build_dimer_model(const PlaneBipartiteGraph& g);

int edge_bit(const DimerModel& m, int e);  // index into mask, -1 if absent

// Face flips.  A face flips down when the matching contains all its
// black-white edges, up when it contains all white-black edges.
bool flip_applicable(const DimerModel& m, uint64_t M, int faceLabel, bool up);
uint64_t flip(const DimerModel& m, uint64_t M, int faceLabel, bool up);

// The unique matching with no down-flippable face; NonUniqueMinimum when the
// sink is not unique (which signals a property-(*) violation).
uint64_t minimal_matching(const DimerModel& m);

struct DimerLattice {
    struct Cover {
        int lower, upper;  // indices into elements
        int faceLabel;
    };
    std::vector<uint64_t> elements;  // same order as model.matchings
    std::vector<Cover> covers;
    int bottom = -1;
};

DimerLattice build_lattice(const DimerModel& m);

// Height via a dual walk to the outer face (computed on two different BFS
// trees, which must agree).  Entries follow model.innerLabels.
std::vector<int> height(const DimerModel& m, uint64_t M);
// Independent oracle: signed winding of the cycles of M triangle 0-hat.
std::vector<int> height_by_winding(const DimerModel& m, uint64_t M);
// Height relative to an arbitrary base matching (dual-walk route).
std::vector<int> height_relative(const DimerModel& m, uint64_t M, uint64_t base);

// Product of y_f along a saturated chain bottom -> M; computed along two
// different chains, which must agree.
LaurentPoly multivariate_rank(const DimerModel& m, uint64_t M);

// Sum over matchings of y^height; all coefficients 1.
LaurentPoly dimer_face_polynomial(const DimerModel& m);
// Same polynomial via saturated chains in the lattice.
LaurentPoly dimer_face_polynomial_by_chains(const DimerModel& m);

// h_M: per inner face, |f|/2 - |M cap f| - 1.  M may be any edge subset.
std::vector<int> h_vector(const DimerModel& m, uint64_t M);

// Z_G in edge variables z_e, and the face-to-edge substitution applied to a
// polynomial in the y_f (times the 0-hat monomial); the two must agree.
LaurentPoly partition_function(const DimerModel& m);
LaurentPoly edge_substitution(const DimerModel& m, const LaurentPoly& faceDimerPoly);

// Arbitrary graphs: prune edges in no matching, split into components, take
// the product of component polynomials.  Inner labels are offset per
// component so variables stay distinct.
struct GeneralDimer {
    std::vector<DimerModel> components;
    LaurentPoly poly;
};
GeneralDimer dimer_face_polynomial_general(const PlaneBipartiteGraph& g);

std::string lattice_to_dot(const DimerModel& m, const DimerLattice& lat);
std::string lattice_to_json(const DimerModel& m, const DimerLattice& lat);

}  // namespace dimerlab
