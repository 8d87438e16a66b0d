#include "dimerlab/quiver.hpp"

#include <algorithm>
#include <sstream>

#include <json.hpp>

namespace dimerlab {

Quiver Quiver::make(int n, int nMutable, std::vector<int> labels) {
    Quiver q;
    q.n = n;
    q.nMutable = nMutable;
    q.b.assign(n, std::vector<int>(n, 0));
    if (labels.empty()) {
        labels.resize(n);
        for (int i = 0; i < n; ++i) labels[i] = i;
    }
    q.labels = std::move(labels);
    if ((int)q.labels.size() != n)
        fail(ErrorCode::MalformedInput, "quiver label list has wrong length");
    return q;
}

int Quiver::indexOfLabel(int label) const {
    for (int i = 0; i < nMutable; ++i)
        if (labels[i] == label) return i;
    for (int i = nMutable; i < n; ++i)
        if (labels[i] == label) return i;
    return -1;
}

void Quiver::validate() const {
    for (int i = 0; i < n; ++i) {
        if (b[i][i] != 0) fail(ErrorCode::MalformedInput, "quiver has a loop");
        for (int j = 0; j < n; ++j)
            if (b[i][j] != -b[j][i])
                fail(ErrorCode::MalformedInput, "quiver matrix not skew-symmetric");
    }
}

Quiver mutate_quiver(const Quiver& q, int k) {
    if (k < 0 || k >= q.nMutable)
        fail(ErrorCode::FrozenVertex, "mutation at non-mutable vertex " + std::to_string(k));
    Quiver r = q;
    for (int i = 0; i < q.n; ++i) {
        for (int j = 0; j < q.n; ++j) {
            if (i == k || j == k) {
                r.b[i][j] = -q.b[i][j];
            } else if (q.b[i][k] > 0 && q.b[k][j] > 0) {
                r.b[i][j] = q.b[i][j] + q.b[i][k] * q.b[k][j];
            } else if (q.b[i][k] < 0 && q.b[k][j] < 0) {
                r.b[i][j] = q.b[i][j] - q.b[i][k] * q.b[k][j];
            }
        }
    }
    return r;
}

Quiver remove_vertex(const Quiver& q, int k) {
    if (k < 0 || k >= q.nMutable)
        fail(ErrorCode::FrozenVertex, "cannot delete frozen vertex " + std::to_string(k));
    Quiver r = Quiver::make(q.n - 1, q.nMutable - 1);
    for (int i = 0, ii = 0; i < q.n; ++i) {
        if (i == k) continue;
        r.labels[ii] = q.labels[i];
        for (int j = 0, jj = 0; j < q.n; ++j) {
            if (j == k) continue;
            r.b[ii][jj++] = q.b[i][j];
        }
        ++ii;
    }
    return r;
}

Quiver frame(const Quiver& q) {
    int r = q.nMutable;
    Quiver f = Quiver::make(2 * r, r);
    for (int i = 0; i < r; ++i) {
        f.labels[i] = q.labels[i];
        f.labels[r + i] = q.labels[i];  // the primed copy of vertex i
        for (int j = 0; j < r; ++j) f.b[i][j] = q.b[i][j];
        f.b[r + i][i] = 1;
        f.b[i][r + i] = -1;
    }
    return f;
}

std::string quiver_to_json(const Quiver& q) {
    nlohmann::json j;
    j["n"] = q.n;
    j["mutable"] = q.nMutable;
    j["matrix"] = q.b;
    j["labels"] = q.labels;
    return j.dump();
}

Quiver quiver_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const std::exception& e) {
        fail(ErrorCode::MalformedInput, std::string("bad quiver JSON: ") + e.what());
    }
    Quiver q;
    try {
        q.n = j.at("n").get<int>();
        q.nMutable = j.at("mutable").get<int>();
        q.b = j.at("matrix").get<std::vector<std::vector<int>>>();
        if (j.contains("labels")) q.labels = j.at("labels").get<std::vector<int>>();
    } catch (const std::exception& e) {
        fail(ErrorCode::MalformedInput, std::string("bad quiver JSON: ") + e.what());
    }
    if (q.labels.empty()) {
        q.labels.resize(q.n);
        for (int i = 0; i < q.n; ++i) q.labels[i] = i;
    }
    if ((int)q.b.size() != q.n || q.nMutable < 0 || q.nMutable > q.n ||
        (int)q.labels.size() != q.n)
        fail(ErrorCode::MalformedInput, "quiver JSON dimensions inconsistent");
    for (auto& row : q.b)
        if ((int)row.size() != q.n)
            fail(ErrorCode::MalformedInput, "quiver JSON matrix not square");
    q.validate();
    return q;
}

std::string quiver_to_dot(const Quiver& q) {
    std::ostringstream out;
    out << "digraph Q {\n";
    for (int i = 0; i < q.n; ++i) {
        out << "  v" << i << " [label=\"" << q.labels[i]
            << (i >= q.nMutable ? "'" : "") << "\""
            << (i >= q.nMutable ? ", shape=box" : "") << "];\n";
    }
    for (int i = 0; i < q.n; ++i)
        for (int j = 0; j < q.n; ++j)
            if (q.b[i][j] > 0)
                out << "  v" << i << " -> v" << j
                    << (q.b[i][j] > 1 ? " [label=\"" + std::to_string(q.b[i][j]) + "\"]" : "")
                    << ";\n";
    out << "}\n";
    return out.str();
}

}  // namespace dimerlab
