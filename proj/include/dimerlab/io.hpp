#pragma once

// Line-oriented JSON for plane bipartite graphs, plus small file helpers for
// the command-line tool.

#include <string>

#include "dimerlab/graph.hpp"

namespace dimerlab {

// {"vertices": [{"id", "color"}], "rotations": {"0": [halfedges]},
//  "edges": [[he, heTwin, black, white]], "outer": halfedge}
// Vertices and edges are renumbered densely on export.
std::string graph_to_json(const PlaneBipartiteGraph& g);
PlaneBipartiteGraph graph_from_json(const std::string& text);

std::string read_file(const std::string& path);  // MalformedInput on failure

}  // namespace dimerlab
