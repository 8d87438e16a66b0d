#pragma once

// Quivers as skew-symmetric integer matrices.  Parallel arrows are collapsed
// to signed counts, so 2-cycle cancellation is built into the representation.

#include <string>
#include <vector>

#include "dimerlab/errors.hpp"

namespace dimerlab {

struct Quiver {
    int n = 0;         // total vertex count
    int nMutable = 0;  // vertices [0, nMutable) are mutable
    std::vector<std::vector<int>> b;  // b[i][j] = #(i->j) - #(j->i)
    std::vector<int> labels;          // external ids (face labels); framed copies reuse them

    static Quiver make(int n, int nMutable, std::vector<int> labels = {});

    int indexOfLabel(int label) const;  // -1 if absent; searches mutables first
    bool operator==(const Quiver& o) const { return b == o.b && nMutable == o.nMutable; }

    void validate() const;  // skew-symmetry, zero diagonal
};

Quiver mutate_quiver(const Quiver& q, int k);

// Deletes a vertex (row and column k); k must be mutable.
Quiver remove_vertex(const Quiver& q, int k);

// Principal-coefficient framing: drop old frozen vertices, append one frozen
// vertex j' per mutable j with a single arrow j' -> j.
Quiver frame(const Quiver& q);

std::string quiver_to_json(const Quiver& q);
Quiver quiver_from_json(const std::string& text);
std::string quiver_to_dot(const Quiver& q);

}  // namespace dimerlab
