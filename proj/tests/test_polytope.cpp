#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>
#include <random>

#include "dimerlab/generate.hpp"
#include "dimerlab/polytope.hpp"

using namespace dimerlab;

namespace {

PlaneBipartiteGraph four_cycle() {
    return build_graph({'b', 'w', 'b', 'w'},
                       {{0, 1}, {2, 1}, {2, 3}, {0, 3}},
                       {{0, 6}, {1, 3}, {2, 4}, {5, 7}});
}

PlaneBipartiteGraph bigon() {
    return build_graph({'b', 'w'}, {{0, 1}, {0, 1}}, {{0, 2}, {3, 1}});
}

PlaneBipartiteGraph domino() {
    return build_graph_from_edge_orders(
        {'b', 'w', 'b', 'w', 'b', 'w'},
        {{0, 1}, {2, 1}, {2, 5}, {4, 5}, {0, 3}, {4, 1}, {4, 3}},
        {{0, 4}, {1, 0, 5}, {1, 2}, {4, 6}, {3, 5, 6}, {3, 2}});
}

}  // namespace

TEST_CASE("psi on the small fixtures") {
    auto m4 = build_dimer_model(four_cycle());
    auto map4 = psi(m4);
    REQUIRE(map4.A.size() == 4);
    int plus = 0, minus = 0;
    for (auto& row : map4.A) {
        REQUIRE(row.size() == 1);
        plus += row[0] == 1;
        minus += row[0] == -1;
    }
    CHECK(plus == 2);  // alternating +-+- around the square, up to edge order
    CHECK(minus == 2);
    CHECK(verify_affine_iso(m4).ok);

    auto mb = build_dimer_model(bigon());
    auto mapb = psi(mb);
    REQUIRE(mapb.A.size() == 2);
    CHECK(mapb.A[0][0] + mapb.A[1][0] == 0);
    CHECK(mapb.A[0][0] != 0);
    CHECK(verify_affine_iso(mb).ok);
}

TEST_CASE("affine isomorphism on random graphs") {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 15; ++trial) {
        auto g = random_star_graph(rng, 3 + trial % 4, 22);
        auto m = build_dimer_model(g);
        if (m.matchings.size() > 150) continue;
        auto rep = verify_affine_iso(m);
        CHECK(rep.ok);
    }
}

TEST_CASE("exact hull membership oracle") {
    // segment {0,1}: both endpoints in, 2 out
    CHECK(in_convex_hull({{0}, {1}}, {0}));
    CHECK(in_convex_hull({{0}, {1}}, {1}));
    CHECK_FALSE(in_convex_hull({{0}, {1}}, {2}));
    // staircase of 1 + y1 + y1 y2: the point (0,1) lies outside
    std::vector<std::vector<int>> tri{{0, 0}, {1, 0}, {1, 1}};
    CHECK_FALSE(in_convex_hull(tri, {0, 1}));
    CHECK(in_convex_hull(tri, {1, 0}));
    // interior rational point of a square needs exact arithmetic; the integer
    // center of a doubled square is a member but not a vertex
    std::vector<std::vector<int>> sq{{0, 0}, {2, 0}, {0, 2}, {2, 2}};
    CHECK(in_convex_hull(sq, {1, 1}));
}

TEST_CASE("lattice points of Newton(D_G) are vertices") {
    auto repb = lattice_points_are_vertices(build_dimer_model(bigon()));
    CHECK(repb.ok);
    CHECK(repb.supportPoints == 2);
    CHECK(repb.boxPoints == 2);
    CHECK(repb.hullMembers == 2);
    auto parsed = nlohmann::json::parse(repb.json);
    CHECK(parsed["verdict"] == "pass");

    auto repd = lattice_points_are_vertices(build_dimer_model(domino()));
    CHECK(repd.ok);
    CHECK(repd.supportPoints == 3);
    CHECK(repd.boxPoints == 4);
    CHECK(repd.hullMembers == 3);  // (0,1) is outside the staircase

    std::mt19937 rng(1234);
    int done = 0;
    for (int trial = 0; trial < 30 && done < 8; ++trial) {
        auto g = random_star_graph(rng, 3 + trial % 4, 20);
        auto m = build_dimer_model(g);
        if (m.innerLabels.size() > 5 || m.matchings.size() > 60) continue;
        CHECK(lattice_points_are_vertices(m).ok);
        ++done;
    }
    CHECK(done == 8);
}

TEST_CASE("elementary subgraphs against polytope faces") {
    auto mb = build_dimer_model(bigon());
    CHECK(elementary_subgraphs(mb).size() == 3);
    CHECK(pm_polytope_face_count(mb) == 3);

    auto m4 = build_dimer_model(four_cycle());
    CHECK(elementary_subgraphs(m4).size() == 3);
    CHECK(pm_polytope_face_count(m4) == 3);

    auto md = build_dimer_model(domino());
    CHECK(elementary_subgraphs(md).size() == pm_polytope_face_count(md));

    std::mt19937 rng(555);
    int done = 0;
    for (int trial = 0; trial < 40 && done < 5; ++trial) {
        auto g = random_star_graph(rng, 3 + trial % 3, 18);
        auto m = build_dimer_model(g);
        if (m.innerLabels.size() > 5 || m.matchings.size() > 9) continue;
        CHECK((int)elementary_subgraphs(m).size() == pm_polytope_face_count(m));
        ++done;
    }
    CHECK(done == 5);
}
