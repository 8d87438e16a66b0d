#pragma once

// Random graphs with property (*), grown from a single edge by the inverse
// moves (bigon insertion, vertex splitting) plus occasional square moves for
// mixing.  Every output therefore has a reduction sequence by construction.

#include <random>

#include "dimerlab/graph.hpp"

namespace dimerlab {

PlaneBipartiteGraph random_star_graph(std::mt19937& rng, int targetInnerFaces,
                                      int maxEdges = 60);

PlaneBipartiteGraph single_edge_graph();

}  // namespace dimerlab
