#include "dimerlab/polytope.hpp"

#include <algorithm>
#include <set>

#include <boost/multiprecision/cpp_int.hpp>
#include <json.hpp>

namespace dimerlab {

namespace {

// boost::rational<cpp_int> blows the stack on mixed comparisons, use this instead
using Rat = boost::multiprecision::cpp_rational;

// Phase-1 simplex with Bland's rule: is {x >= 0 : M x = rhs} nonempty?
bool standard_form_feasible(std::vector<std::vector<Rat>> M, std::vector<Rat> rhs) {
    size_t m = M.size();
    if (m == 0) return true;
    size_t n = M[0].size();
    for (size_t i = 0; i < m; ++i)
        if (rhs[i] < 0) {
            rhs[i] = -rhs[i];
            for (auto& x : M[i]) x = -x;
        }
    // append one artificial variable per row
    std::vector<std::vector<Rat>> T(m, std::vector<Rat>(n + m, Rat(0)));
    std::vector<size_t> basis(m);
    for (size_t i = 0; i < m; ++i) {
        for (size_t j = 0; j < n; ++j) T[i][j] = M[i][j];
        T[i][n + i] = 1;
        basis[i] = n + i;
    }
    auto cost = [&](size_t j) { return j >= n ? Rat(1) : Rat(0); };
    for (int guard = 0; guard < 100000; ++guard) {
        // reduced costs r_j = c_j - c_B . column_j
        size_t enter = SIZE_MAX;
        for (size_t j = 0; j < n + m && enter == SIZE_MAX; ++j) {
            Rat r = cost(j);
            for (size_t i = 0; i < m; ++i)
                if (cost(basis[i]) != 0) r -= T[i][j];
            if (r < 0) enter = j;  // Bland: first improving column
        }
        if (enter == SIZE_MAX) break;
        size_t leave = SIZE_MAX;
        Rat best(0);
        for (size_t i = 0; i < m; ++i) {
            if (T[i][enter] <= 0) continue;
            Rat ratio = rhs[i] / T[i][enter];
            if (leave == SIZE_MAX || ratio < best ||
                (ratio == best && basis[i] < basis[leave])) {
                leave = i;
                best = ratio;
            }
        }
        if (leave == SIZE_MAX) fail(ErrorCode::MismatchReport, "phase-1 simplex unbounded");
        Rat piv = T[leave][enter];
        for (auto& x : T[leave]) x /= piv;
        rhs[leave] /= piv;
        for (size_t i = 0; i < m; ++i) {
            if (i == leave || T[i][enter] == 0) continue;
            Rat f = T[i][enter];
            for (size_t j = 0; j < n + m; ++j) T[i][j] -= f * T[leave][j];
            rhs[i] -= f * rhs[leave];
        }
        basis[leave] = enter;
    }
    Rat objective(0);
    for (size_t i = 0; i < m; ++i)
        if (cost(basis[i]) != 0) objective += rhs[i];
    return objective == 0;
}

int rational_rank(const std::vector<std::vector<int>>& A) {
    if (A.empty()) return 0;
    size_t rows = A.size(), cols = A[0].size();
    std::vector<std::vector<Rat>> M(rows, std::vector<Rat>(cols));
    for (size_t i = 0; i < rows; ++i)
        for (size_t j = 0; j < cols; ++j) M[i][j] = A[i][j];
    int rank = 0;
    for (size_t c = 0; c < cols; ++c) {
        size_t piv = rows;
        for (size_t r = rank; r < rows; ++r)
            if (M[r][c] != 0) {
                piv = r;
                break;
            }
        if (piv == rows) continue;
        std::swap(M[piv], M[(size_t)rank]);
        for (size_t r = 0; r < rows; ++r) {
            if ((int)r == rank || M[r][c] == 0) continue;
            Rat f = M[r][c] / M[rank][c];
            for (size_t j = c; j < cols; ++j) M[r][j] -= f * M[rank][j];
        }
        ++rank;
    }
    return rank;
}

std::vector<int> chi(const DimerModel& m, uint64_t M) {
    std::vector<int> v(m.edges.size(), 0);
    for (size_t i = 0; i < m.edges.size(); ++i) v[i] = (int)(M >> i & 1);
    return v;
}

}  // namespace

AffineMatchingMap psi(const DimerModel& m) {
    AffineMatchingMap map;
    map.A.assign(m.edges.size(), std::vector<int>(m.innerLabels.size(), 0));
    for (size_t c = 0; c < m.innerLabels.size(); ++c) {
        int fi = m.g.face_index_of_label(m.innerLabels[c]);
        for (int e : m.g.face_edges(fi)) {
            int sign = classify_edge(m.g, fi, e) == EdgeClass::BlackWhite ? 1 : -1;
            map.A[edge_bit(m, e)][c] = sign;
        }
    }
    map.base = chi(m, minimal_matching(m));
    return map;
}

PolyReport verify_affine_iso(const DimerModel& m) {
    PolyReport rep;
    auto map = psi(m);
    if (rational_rank(map.A) != (int)m.innerLabels.size()) {
        rep.detail = "columns of A are linearly dependent";
        return rep;
    }
    for (uint64_t M : m.matchings) {
        auto h = height(m, M);
        auto cm = chi(m, M);
        for (size_t r = 0; r < m.edges.size(); ++r) {
            int val = map.base[r];
            for (size_t c = 0; c < h.size(); ++c) val += map.A[r][c] * h[c];
            if (val != cm[r]) {
                rep.detail = "psi(height(M)) != chi_M at edge " + std::to_string(m.edges[r]);
                return rep;
            }
        }
    }
    rep.ok = true;
    rep.detail = "affine isomorphism verified on " + std::to_string(m.matchings.size()) +
                 " matchings";
    return rep;
}

bool in_convex_hull(const std::vector<std::vector<int>>& verts, const std::vector<int>& p) {
    if (verts.empty()) return false;
    size_t d = p.size(), k = verts.size();
    // lambda >= 0 with V^T lambda = p and sum lambda = 1
    std::vector<std::vector<Rat>> M(d + 1, std::vector<Rat>(k));
    std::vector<Rat> rhs(d + 1);
    for (size_t i = 0; i < d; ++i) {
        for (size_t j = 0; j < k; ++j) M[i][j] = verts[j][i];
        rhs[i] = p[i];
    }
    for (size_t j = 0; j < k; ++j) M[d][j] = 1;
    rhs[d] = 1;
    return standard_form_feasible(M, rhs);
}

LatticePointReport lattice_points_are_vertices(const DimerModel& m, int maxFaces) {
    if ((int)m.innerLabels.size() > maxFaces)
        fail(ErrorCode::TooLarge, "too many faces for box enumeration");
    LatticePointReport rep;
    std::set<std::vector<int>> support;
    std::vector<std::vector<int>> verts;
    for (uint64_t M : m.matchings) {
        auto h = height(m, M);
        if (support.insert(h).second) verts.push_back(h);
    }
    rep.supportPoints = (int)support.size();
    size_t d = m.innerLabels.size();
    std::vector<int> lo(d, 0), hi(d, 0);
    for (auto& v : verts)
        for (size_t i = 0; i < d; ++i) {
            lo[i] = std::min(lo[i], v[i]);
            hi[i] = std::max(hi[i], v[i]);
        }
    std::vector<int> p = lo;
    bool ok = true;
    for (;;) {
        ++rep.boxPoints;
        if (in_convex_hull(verts, p)) {
            ++rep.hullMembers;
            if (!support.count(p)) ok = false;
        }
        size_t i = 0;
        while (i < d && p[i] == hi[i]) {
            p[i] = lo[i];
            ++i;
        }
        if (i == d) break;
        ++p[i];
    }
    rep.ok = ok;
    nlohmann::json j;
    j["supportPoints"] = rep.supportPoints;
    j["boxPoints"] = rep.boxPoints;
    j["hullMembers"] = rep.hullMembers;
    j["verdict"] = ok ? "pass" : "fail";
    rep.json = j.dump();
    return rep;
}

std::vector<uint64_t> elementary_subgraphs(const DimerModel& m) {
    std::set<uint64_t> unions(m.matchings.begin(), m.matchings.end());
    // close under pairwise union with the generators
    for (bool grew = true; grew;) {
        grew = false;
        std::vector<uint64_t> cur(unions.begin(), unions.end());
        for (uint64_t u : cur)
            for (uint64_t M : m.matchings) grew |= unions.insert(u | M).second;
    }
    return {unions.begin(), unions.end()};
}

int pm_polytope_face_count(const DimerModel& m) {
    size_t k = m.matchings.size();
    if (k > 12) fail(ErrorCode::TooLarge, "too many matchings for face enumeration");
    size_t d = m.edges.size();
    std::vector<std::vector<int>> verts;
    for (uint64_t M : m.matchings) verts.push_back(chi(m, M));
    int faces = 0;
    for (uint64_t S = 1; S < (1ull << k); ++S) {
        // feasibility of: c.v = t on S, c.v <= t - 1 off S (c, t free)
        // variables: c+ (d), c- (d), t+, t-, slack per off-vertex
        size_t off = k - (size_t)__builtin_popcountll(S);
        size_t n = 2 * d + 2 + off;
        std::vector<std::vector<Rat>> M;
        std::vector<Rat> rhs;
        size_t slack = 2 * d + 2;
        for (size_t j = 0; j < k; ++j) {
            std::vector<Rat> row(n, Rat(0));
            for (size_t i = 0; i < d; ++i) {
                row[i] = verts[j][i];
                row[d + i] = -verts[j][i];
            }
            row[2 * d] = -1;
            row[2 * d + 1] = 1;
            if (S >> j & 1) {
                rhs.push_back(0);
            } else {
                row[slack++] = 1;
                rhs.push_back(-1);
            }
            M.push_back(std::move(row));
        }
        if (standard_form_feasible(M, rhs)) ++faces;
    }
    return faces;
}

}  // namespace dimerlab
