#pragma once

// The affine map from Newton(D_G) onto the perfect matching polytope, exact
// rational hull membership, and elementary subgraphs vs. polytope faces.

#include <string>
#include <vector>

#include "dimerlab/dimer.hpp"

namespace dimerlab {

struct AffineMatchingMap {
    // rows follow model.edges, columns model.innerLabels
    std::vector<std::vector<int>> A;
    std::vector<int> base;  // indicator vector of the bottom matching
};

AffineMatchingMap psi(const DimerModel& m);

struct PolyReport {
    bool ok = false;
    std::string detail;
};

// Checks psi(height(M)) = chi_M for every matching and that the columns of A
// are linearly independent over the rationals.
PolyReport verify_affine_iso(const DimerModel& m);

// Exact membership of an integer point in the convex hull of integer points.
bool in_convex_hull(const std::vector<std::vector<int>>& verts, const std::vector<int>& p);

struct LatticePointReport {
    bool ok = false;
    int supportPoints = 0, boxPoints = 0, hullMembers = 0;
    std::string json;
};

// Every integer point of Newton(D_G) must be a support point of D_G.
LatticePointReport lattice_points_are_vertices(const DimerModel& m, int maxFaces = 6);

// All distinct unions of perfect matchings, as edge masks sorted ascending.
std::vector<uint64_t> elementary_subgraphs(const DimerModel& m);

// Number of nonempty faces of PM(G), by brute-force supporting-hyperplane
// tests over vertex subsets; TooLarge beyond 12 matchings.
int pm_polytope_face_count(const DimerModel& m);

}  // namespace dimerlab
