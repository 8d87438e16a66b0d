#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>
#include <vector>

#include "dimerlab/dimer.hpp"
#include "dimerlab/plabic.hpp"

using namespace dimerlab;

namespace {

std::string fixture(const std::string& name) {
    std::ifstream in(std::string(DIMERLAB_SOURCE_DIR) + "/data/plabic/" + name);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// square a(b) b(w) c(b) d(w); a and c reach the boundary through extra
// whites, b and d directly
PlabicGraph gr24() {
    return build_plabic(4, "bwbwww",
                        {{4, 5}, {5, 6}, {6, 7}, {7, 4}, {4, 8}, {8, 0},
                         {5, 1}, {6, 9}, {9, 2}, {7, 3}},
                        {{3, 4, 0}, {1, 0, 6}, {7, 2, 1}, {9, 3, 2}, {4, 5}, {7, 8}},
                        true);
}

// two squares sharing a vertical edge; the top cell of the (2,5) Grassmannian
PlabicGraph gr25() {
    return build_plabic(5, "bwbwbwww",
                        {{5, 6}, {6, 9}, {9, 8}, {8, 5}, {6, 7}, {7, 10}, {10, 9},
                         {5, 11}, {11, 0}, {8, 1}, {10, 2}, {7, 12}, {12, 3}, {6, 4}},
                        {{0, 7, 3}, {4, 13, 0, 1}, {11, 4, 5}, {2, 3, 9}, {6, 1, 2},
                         {5, 6, 10}, {7, 8}, {11, 12}},
                        true);
}

// two squares with no shared face: the mutable part of the quiver is two
// isolated vertices, and some boundary subsets are unreachable
PlabicGraph gr25_two_squares() {
    return build_plabic(5, "bwbwwbwbww",
                        {{5, 6}, {6, 7}, {7, 8}, {8, 5}, {5, 9}, {9, 0}, {6, 1}, {8, 4},
                         {10, 11}, {11, 12}, {12, 13}, {13, 10}, {10, 14}, {14, 3}, {11, 2}},
                        {{3, 4, 0}, {1, 0, 6}, {2, 1}, {7, 3, 2}, {4, 5},
                         {12, 11, 8}, {8, 9, 14}, {10, 9}, {10, 11}, {12, 13}},
                        true);
}

// one white attached to boundary vertices 1 and 2 only; type (1, 4)
PlabicGraph lens14() {
    return build_plabic(4, "w", {{4, 0}, {4, 1}}, {{1, 0}}, true);
}

std::vector<std::vector<int>> all_boundaries(const PlabicGraph& G) {
    std::vector<std::vector<int>> out;
    std::vector<int> J;
    std::function<void(int)> rec = [&](int next) {
        if ((int)J.size() == G.k) {
            out.push_back(J);
            return;
        }
        for (int x = next; x <= G.n; ++x) {
            J.push_back(x);
            rec(x + 1);
            J.pop_back();
        }
    };
    rec(1);
    return out;
}

// oracle: almost perfect matchings by raw subset enumeration
std::set<uint64_t> brute_apm(const PlabicGraph& G, const std::vector<int>& J) {
    std::set<int> want(J.begin(), J.end());
    std::set<uint64_t> out;
    int E = G.edge_count(), V = (int)G.color.size();
    for (uint64_t M = 0; M < (1ull << E); ++M) {
        std::vector<int> deg(V, 0);
        for (int e = 0; e < E; ++e)
            if (M >> e & 1) {
                ++deg[G.edges[e].first];
                ++deg[G.edges[e].second];
            }
        bool good = true;
        for (int v = G.n; v < V && good; ++v) good = deg[v] == 1;
        for (int a = 0; a < G.n && good; ++a) {
            if (deg[a] > 1) good = false;
            if ((deg[a] == 1) != (want.count(a + 1) > 0)) good = false;
        }
        if (good) out.insert(M);
    }
    return out;
}

}  // namespace

TEST_CASE("plabic fixtures: type, faces, quiver") {
    auto G = gr24();
    CHECK(G.k == 2);
    CHECK(G.n == 4);
    CHECK(G.face_count() == 5);
    CHECK(G.nMutableFaces == 1);
    CHECK(G.faces[0].edges == std::vector<int>{0, 1, 2, 3});
    for (int f = 1; f < 5; ++f) {
        CHECK(G.faces[f].frozen);
        CHECK(G.faces[f].arcs.size() == 1);
        CHECK(G.faces[f].whiteCount == 2);
    }
    auto q = plabic_quiver(G);
    CHECK(q.n == 5);
    CHECK(q.nMutable == 1);
    // the square sees all four frozen faces, with alternating orientations
    int plus = 0, minus = 0;
    for (int j = 1; j < 5; ++j) {
        plus += q.b[0][j] == 1;
        minus += q.b[0][j] == -1;
    }
    CHECK(plus == 2);
    CHECK(minus == 2);

    auto G5 = gr25();
    CHECK(G5.k == 2);
    CHECK(G5.face_count() == 7);
    CHECK(G5.nMutableFaces == 2);
    auto q5 = plabic_quiver(G5);
    CHECK(q5.b[0][1] + q5.b[1][0] == 0);
    CHECK(std::abs(q5.b[0][1]) == 1);  // the two squares are adjacent

    auto G5b = gr25_two_squares();
    CHECK(G5b.k == 2);
    CHECK(G5b.face_count() == 6);
    CHECK(G5b.nMutableFaces == 2);
    CHECK(plabic_quiver(G5b).b[0][1] == 0);  // and here they are not

    auto L = lens14();
    CHECK(L.k == 1);
    CHECK(L.face_count() == 2);
    CHECK(L.nMutableFaces == 0);
}

TEST_CASE("plabic validation errors") {
    CHECK_THROWS_AS(build_plabic(4, "w", {{0, 1}}, {{}}, false), Error);  // bd-bd edge
    CHECK_THROWS_AS(build_plabic(4, "ww", {{4, 5}, {4, 0}, {5, 1}}, {{0, 1}, {0, 2}}, false),
                    Error);  // white-white edge
    CHECK_THROWS_AS(build_plabic(4, "w", {{4, 0}, {4, 0}}, {{0, 1}}, false),
                    Error);  // boundary vertex with two internal edges
    CHECK_THROWS_AS(
        build_plabic(4, "wb", {{4, 0}, {5, 4}}, {{0, 1}, {1}}, false),
        Error);  // internal leaf away from the boundary
    CHECK_THROWS_AS(
        build_plabic(4, "wbw", {{4, 0}, {5, 6}}, {{0}, {1}, {1}}, false),
        Error);  // floating internal component
    CHECK_THROWS_AS(build_plabic(4, "w", {{4, 0}}, {{0, 0}}, false), Error);  // bad order
    try {
        build_plabic(4, "w", {{0, 1}}, {{}}, false);
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::MalformedInput);
    }
}

TEST_CASE("almost perfect matchings against subset enumeration") {
    std::vector<PlabicGraph> gs{gr24(), gr25(), gr25_two_squares(), lens14()};
    for (const auto& G : gs) {
        int achievable = 0;
        for (const auto& J : all_boundaries(G)) {
            auto lat = enumerate_apm(G, J);
            auto oracle = brute_apm(G, J);
            REQUIRE(std::set<uint64_t>(lat.matchings.begin(), lat.matchings.end()) == oracle);
            if (!lat.matchings.empty()) {
                ++achievable;
                CHECK(lat.bottom >= 0);  // unique minimum in the flip order
            }
        }
        CHECK(achievable > 0);
    }
    // boundary sets of the wrong size are rejected
    CHECK_THROWS_AS(enumerate_apm(gr24(), {1}), Error);
    CHECK_THROWS_AS(enumerate_apm(gr24(), {1, 7}), Error);
}

TEST_CASE("flip lattices per boundary") {
    auto G = gr24();
    auto lat = enumerate_apm(G, {1, 3});
    REQUIRE(lat.matchings.size() == 2);  // the square flips
    CHECK(lat.covers.size() == 1);
    CHECK(lat.covers[0].face == 0);
    CHECK(lat.covers[0].lower == lat.bottom);
    CHECK(enumerate_apm(G, {1, 2}).matchings.size() == 1);

    // top (2,5) cell: the double square gives a 3-chain at J = {1, 4}
    auto lat5 = enumerate_apm(gr25(), {1, 4});
    CHECK(lat5.matchings.size() == 3);
    CHECK(lat5.covers.size() == 2);

    // disjoint squares: 2 x 2 grid of matchings at J = {1, 4}
    auto latb = enumerate_apm(gr25_two_squares(), {1, 4});
    CHECK(latb.matchings.size() == 4);
    CHECK(latb.covers.size() == 4);
}

TEST_CASE("twist formula by hand on the (2,4) fixture") {
    auto G = gr24();
    auto res = twist_formula(G, {1, 3});
    // the two matchings are {pendants, square evens} and {pendants, square
    // odds}; per face h = w_f - |M cap f| - 1 gives the two monomials below,
    // and bd(J) contributes the faces holding arcs (4,1) and (2,3)
    CHECK(res.laurent.to_string() == "x0^-1 + x0^-1*x1^-1*x2*x3^-1*x4");
    CHECK(res.bdMonomial.to_string() == "x2*x4");
    CHECK(!res.vanishing);
    auto lone = twist_formula(G, {1, 2});
    CHECK(lone.laurent.term_count() == 1);
}

TEST_CASE("pruned graph H") {
    auto G = gr24();
    auto H = build_H(G, {1, 3});
    REQUIRE(H.components.size() == 1);
    CHECK(H.components[0].g.edge_count() == 4);  // the bare square survives
    REQUIRE(H.components[0].faceToPlabic.size() == 1);
    CHECK(H.components[0].faceToPlabic.begin()->second == 0);
    CHECK(H.matchings.size() == 2);

    // disjoint squares survive independently
    auto Hb = build_H(gr25_two_squares(), {1, 4});
    CHECK(Hb.components.size() == 2);
    for (const auto& pc : Hb.components) CHECK(pc.faceToPlabic.size() == 1);
    CHECK(Hb.matchings.size() == 4);

    // unique-matching boundaries prune H down to single edges
    auto Hu = build_H(G, {1, 2});
    CHECK(Hu.matchings.size() == 1);
    for (const auto& pc : Hu.components) {
        CHECK(pc.g.edge_count() == 1);
        CHECK(pc.faceToPlabic.empty());
    }

    CHECK_THROWS_AS(build_H(gr25_two_squares(), {1, 2}), Error);  // vanishing J
}

TEST_CASE("apm lattice is the product of the component dimer lattices") {
    for (const auto& G : {gr24(), gr25(), gr25_two_squares()}) {
        for (const auto& J : all_boundaries(G)) {
            auto lat = enumerate_apm(G, J);
            if (lat.matchings.size() < 2) continue;
            auto H = build_H(G, J);
            size_t total = 1, covers = 0;
            std::vector<size_t> sizes, covercounts;
            for (const auto& pc : H.components) {
                auto model = build_dimer_model(pc.g);
                auto dl = build_lattice(model);
                sizes.push_back(dl.elements.size());
                covercounts.push_back(dl.covers.size());
                total *= dl.elements.size();
            }
            for (size_t i = 0; i < sizes.size(); ++i) {
                size_t rest = 1;
                for (size_t j = 0; j < sizes.size(); ++j)
                    if (j != i) rest *= sizes[j];
                covers += covercounts[i] * rest;
            }
            CHECK(lat.matchings.size() == total);
            CHECK(lat.covers.size() == covers);
        }
    }
}

TEST_CASE("twisted Pluecker coordinates are cluster monomials") {
    int vanished = 0, unique = 0, mutated = 0;
    for (const auto& G : {gr24(), gr25(), gr25_two_squares(), lens14()}) {
        for (const auto& J : all_boundaries(G)) {
            auto rep = verify_plucker_cluster_monomial(G, J);
            CHECK(rep.ok);
            CHECK(rep.vanishing == enumerate_apm(G, J).matchings.empty());
            vanished += rep.vanishing;
            unique += rep.uniqueMatching;
            mutated += !rep.vanishing && !rep.uniqueMatching;
            if (rep.ok && !rep.vanishing) {
                // rebuild the monomial product and compare with the twist sum
                LaurentPoly prod = rep.twist.frozenFactor;
                for (auto& [z, m] : rep.twist.clusterFactors) prod = prod * z.pow(m);
                CHECK(prod == rep.twist.laurent);
            }
        }
    }
    // 4 dead boundaries on the disjoint squares, 2 on the lens
    CHECK(vanished == 6);
    CHECK(unique > 0);
    CHECK(mutated > 0);
}

TEST_CASE("compatibility of the component cluster variables") {
    auto rep = verify_plucker_cluster_monomial(gr25_two_squares(), {1, 4});
    REQUIRE(rep.ok);
    REQUIRE(rep.twist.clusterFactors.size() == 2);
    // the two variables live on disjoint induced subquivers: their mutable
    // supports do not overlap
    for (int f = 0; f < 2; ++f) {
        auto a = rep.twist.clusterFactors[0].first.min_exponents();
        auto b = rep.twist.clusterFactors[1].first.min_exponents();
        CHECK(!(a[f] != 0 && b[f] != 0));
    }
    CHECK(rep.twist.clusterFactors[0].first.term_count() == 2);
    CHECK(rep.twist.clusterFactors[1].first.term_count() == 2);

    // the adjacent double square instead yields a single three-term variable
    auto rep5 = verify_plucker_cluster_monomial(gr25(), {1, 4});
    REQUIRE(rep5.ok);
    REQUIRE(rep5.twist.clusterFactors.size() == 1);
    CHECK(rep5.twist.clusterFactors[0].first.term_count() == 3);
}

TEST_CASE("reducedness must be asserted") {
    auto G = gr24();
    G.reducedAsserted = false;
    try {
        verify_plucker_cluster_monomial(G, {1, 3});
        FAIL("expected NotReducedAsserted");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NotReducedAsserted);
    }
}

TEST_CASE("plabic json roundtrip and fixtures on disk") {
    for (auto [G, file] : {std::pair{gr24(), "gr24.json"}, {gr25(), "gr25.json"},
                           {gr25_two_squares(), "gr25_two_squares.json"}}) {
        auto back = plabic_from_json(plabic_to_json(G));
        CHECK(back.n == G.n);
        CHECK(back.k == G.k);
        CHECK(back.face_count() == G.face_count());
        CHECK(back.nMutableFaces == G.nMutableFaces);
        CHECK(plabic_quiver(back).b == plabic_quiver(G).b);

        auto disk = plabic_from_json(fixture(file));
        CHECK(disk.face_count() == G.face_count());
        CHECK(disk.reducedAsserted);
        CHECK(plabic_quiver(disk).b == plabic_quiver(G).b);
    }
    CHECK_THROWS_AS(plabic_from_json("{"), Error);
    CHECK_THROWS_AS(plabic_from_json("{\"n\":3}"), Error);
}
