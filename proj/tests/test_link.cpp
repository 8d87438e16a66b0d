#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <functional>
#include <set>
#include <sstream>

#include "dimerlab/dimer.hpp"
#include "dimerlab/link.hpp"

using namespace dimerlab;

namespace {

std::string fixture(const std::string& name) {
    std::ifstream in(std::string(DIMERLAB_SOURCE_DIR) + "/data/links/" + name);
    REQUIRE(in.good());
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

LinkDiagram trefoil() { return parse_pd("X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]"); }
LinkDiagram hopf() { return parse_pd(fixture("hopf.pd")); }

// the continuant p(alpha): determinant of C(alpha), counts Kauffman states
int continuant(const std::vector<int>& alpha) {
    int prev = 0, cur = 1;
    for (int a : alpha) {
        int next = a * cur + prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

LaurentPoly t_poly(const VarTablePtr& vars, std::vector<std::pair<int, int>> terms) {
    int ti = vars->index("t");
    REQUIRE(ti >= 0);
    LaurentPoly p(vars);
    for (auto& [e, c] : terms) {
        Exp exp(vars->size(), 0);
        exp[ti] = e;
        p.add_term(exp, c);
    }
    return p;
}

std::string canon_pd(const LinkDiagram& L) { return pd_string(canonical_labels(L)); }

void all_compositions(int maxSum, const std::function<void(const std::vector<int>&)>& fn) {
    std::vector<int> cur;
    std::function<void(int)> gen = [&](int rem) {
        if (!cur.empty()) fn(cur);
        for (int a = 1; a <= rem; ++a) {
            cur.push_back(a);
            gen(rem - a);
            cur.pop_back();
        }
    };
    gen(maxSum);
}

}  // namespace

TEST_CASE("pd parsing and counts") {
    auto tref = trefoil();
    CHECK(tref.crossing_count() == 3);
    CHECK(tref.segments.size() == 6);
    CHECK(tref.region_count() == 5);

    auto h = parse_pd("X[1,3,2,4] X[3,1,4,2]");
    CHECK(h.crossing_count() == 2);
    CHECK(h.segments.size() == 4);
    CHECK(h.region_count() == 4);

    auto wh = parse_pd(fixture("whitehead.pd"));
    CHECK(wh.crossing_count() == 5);
    CHECK(wh.segments.size() == 10);
    CHECK(wh.region_count() == 7);

    // every segment borders exactly two regions
    for (auto& L : {tref, h, wh})
        for (auto& s : L.segments) {
            auto rs = L.segment_regions(s.id);
            CHECK(rs[0] != rs[1]);
        }
}

TEST_CASE("pd parse errors") {
    CHECK_THROWS_AS(parse_pd("X[1,2,3]"), Error);
    CHECK_THROWS_AS(parse_pd("X[1,2,3,4]"), Error);            // ids appear once
    CHECK_THROWS_AS(parse_pd("X[1,1,1,1] X[2,2,2,2]"), Error);  // not a 4-valent map
    try {
        parse_pd("X[1,2,3]");
        FAIL("expected MalformedPD");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::MalformedPD);
    }
}

TEST_CASE("pd roundtrip") {
    for (auto name : {"trefoil.pd", "hopf.pd", "figure_eight.pd", "whitehead.pd"}) {
        auto L = parse_pd(fixture(name));
        CHECK(canon_pd(parse_pd(pd_string(L))) == canon_pd(L));
    }
}

TEST_CASE("canonical label pinning") {
    auto wh = two_bridge({2, 1, 2});
    auto pinned = canonical_labels(wh.diagram, nullptr, wh.lowerSegment, 7);
    CHECK(kauffman_states(pinned, 7).stateCount == 8);
    // the shipped whitehead fixture is exactly this pinning
    CHECK(pd_string(pinned) + "\n" == fixture("whitehead.pd"));
}

TEST_CASE("diagram certificates") {
    CHECK(validate_diagram(trefoil()).all_pass());
    CHECK(validate_diagram(parse_pd(fixture("whitehead.pd"))).all_pass());

    // a connect sum has a 2-segment cut with crossings on both sides
    auto tt = connect_sum(trefoil(), 1, trefoil(), 2);
    auto cert = validate_diagram(tt);
    CHECK(cert.connected);
    CHECK_FALSE(cert.primeLike);
    CHECK(!cert.witness.empty());

    // C(1) is an unknot with a double curl
    auto curl = two_bridge({1}).diagram;
    CHECK_FALSE(validate_diagram(curl).noCurl);

    // two diagrams in one PD code: not connected
    auto two = parse_pd(
        "X[1,4,2,5] X[3,6,4,1] X[5,2,6,3] X[7,10,8,11] X[9,12,10,7] X[11,8,12,9]");
    CHECK_FALSE(validate_diagram(two).connected);
}

TEST_CASE("segment classes alternate on the trefoil") {
    auto tref = trefoil();
    int uo = 0, ou = 0, same = 0;
    for (auto& s : tref.segments) {
        switch (classify_segment(tref, s.id)) {
            case SegmentClass::UnderToOver: ++uo; break;
            case SegmentClass::OverToUnder: ++ou; break;
            case SegmentClass::Same: ++same; break;
        }
    }
    CHECK(uo == 3);
    CHECK(ou == 3);
    CHECK(same == 0);
}

TEST_CASE("face-crossing graph and truncation") {
    auto tref = trefoil();
    auto GL = face_crossing_graph(tref);
    int blacks = 0, whites = 0;
    for (int v = 0; v < GL.g.vertex_count(); ++v)
        (GL.g.color[v] == 'b' ? blacks : whites)++;
    CHECK(blacks == 3);
    CHECK(whites == 5);  // two more whites than blacks
    CHECK(GL.g.faces.size() == 6);  // faces are segments
    CHECK(GL.faceOfSegment.size() == 6);

    for (auto& s : tref.segments) {
        auto tg = truncated_graph(tref, s.id);
        int b = 0, w = 0;
        for (int v = 0; v < tg.g.vertex_count(); ++v)
            if (tg.g.color[v] == 'b')
                ++b;
            else if (tg.g.color[v] == 'w')
                ++w;
        CHECK(b == 3);
        CHECK(w == 3);  // balanced
        CHECK(check_property_star(tg.g).holds);
    }

    auto wh = parse_pd(fixture("whitehead.pd"));
    auto tg7 = truncated_graph(wh, 7);
    CHECK(check_property_star(tg7.g).holds);
    CHECK((int)build_dimer_model(tg7.g).matchings.size() == 8);
}

TEST_CASE("kauffman states match the dimer lattice") {
    auto wh = parse_pd(fixture("whitehead.pd"));
    auto rep = kauffman_states(wh, 7);
    CHECK(rep.stateCount == 8);
    CHECK(rep.matchingCount == 8);
    CHECK(rep.isomorphic);

    for (auto& s : trefoil().segments) {
        auto r = kauffman_states(trefoil(), s.id);
        CHECK(r.stateCount == 3);
        CHECK(r.stateCount == r.matchingCount);
        CHECK(r.isomorphic);
    }
    CHECK(kauffman_states(hopf(), 1).stateCount == 2);
}

TEST_CASE("alexander by state sum") {
    auto tref = trefoil();
    auto p = alexander_state_sum(tref, 1);
    auto oracle = t_poly(p.vars(), {{-1, 1}, {0, -1}, {1, 1}});  // t - 1 + 1/t
    CHECK(equal_up_to_unit(p, oracle, p.vars()->index("t")).equal);

    auto ph = alexander_state_sum(hopf(), 1);
    auto oh = t_poly(ph.vars(), {{0, -1}, {1, 1}});  // t - 1
    CHECK(equal_up_to_unit(ph, oh, ph.vars()->index("t")).equal);

    // both orientations of the hopf link give the same polynomial up to units
    auto ph2 = alexander_state_sum(parse_pd("X[1,3,2,4] X[3,1,4,2]"), 1);
    CHECK(equal_up_to_unit(ph2, oh, ph2.vars()->index("t")).equal);

    auto pf = alexander_state_sum(parse_pd(fixture("figure_eight.pd")), 1);
    auto of = t_poly(pf.vars(), {{-1, 1}, {0, -3}, {1, 1}});  // t - 3 + 1/t
    CHECK(equal_up_to_unit(pf, of, pf.vars()->index("t")).equal);
}

TEST_CASE("alexander by dimer specialization, exact identity") {
    for (auto name : {"trefoil.pd", "hopf.pd", "figure_eight.pd", "whitehead.pd"}) {
        auto L = parse_pd(fixture(name));
        std::vector<LaurentPoly> specs;
        for (auto& s : L.segments) {
            auto rep = alexander_from_dimer(L, s.id);
            CHECK(rep.exact);
            CHECK(rep.stateSum == alexander_state_sum(L, s.id));
            specs.push_back(rep.specialized);
        }
        // segment independence up to +-t^k
        int ti = specs[0].vars()->index("t");
        for (size_t i = 1; i < specs.size(); ++i)
            CHECK(equal_up_to_unit(specs[0], specs[i], ti).equal);
    }
}

TEST_CASE("connect sums") {
    auto tref = trefoil();
    auto rep = connect_sum_check(tref, 1, tref, 2);
    CHECK(rep.graphsMatch);
    CHECK(rep.polyFactors);

    auto h = hopf();
    auto rep2 = connect_sum_check(tref, 4, h, 1);
    CHECK(rep2.graphsMatch);
    CHECK(rep2.polyFactors);

    // the joined diagram is a valid diagram with the union's crossings
    auto tt = connect_sum(tref, 1, tref, 2);
    CHECK(tt.crossing_count() == 6);
    CHECK(tt.segments.size() == 12);

    // a crossing-free summand has no exterior segment to cut
    CHECK_THROWS_AS(connect_sum(tref, 1, LinkDiagram{}, 1), Error);
    CHECK_THROWS_AS(connect_sum(tref, 99, tref, 1), Error);
    try {
        connect_sum(tref, 1, LinkDiagram{}, 1);
        FAIL("expected SegmentNotExterior");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::SegmentNotExterior);
    }
}

TEST_CASE("two-bridge diagrams") {
    CHECK_THROWS_AS(two_bridge({}), Error);
    CHECK_THROWS_AS(two_bridge({2, 0}), Error);

    // C(3) is the trefoil
    CHECK(canon_pd(two_bridge({3}).diagram) == canon_pd(trefoil()));
    // so is C(2,1), by the continued fraction 2 + 1/1 = 3
    CHECK(canon_pd(two_bridge({2, 1}).diagram) == canon_pd(trefoil()));

    // the state count at the lower segment is the continuant of alpha
    for (auto alpha : std::vector<std::vector<int>>{
             {2}, {3}, {2, 2}, {2, 1, 2}, {3, 3}, {5, 2, 1, 1}, {1, 1, 1, 1, 1}}) {
        auto tb = two_bridge(alpha);
        CHECK(validate_diagram(tb.diagram).connected);
        auto rep = kauffman_states(tb.diagram, tb.lowerSegment);
        CHECK(rep.stateCount == continuant(alpha));
        CHECK(rep.isomorphic);
    }

    // C(2,1,2) is the Whitehead link
    auto wh = two_bridge({2, 1, 2});
    CHECK(wh.diagram.crossing_count() == 5);
    auto p = alexander_state_sum(wh.diagram, wh.lowerSegment);
    // 1 - 3t + 3t^2 - t^3 up to units: its Alexander polynomial
    auto oracle = t_poly(p.vars(), {{0, 1}, {1, -3}, {2, 3}, {3, -1}});
    CHECK(equal_up_to_unit(p, oracle, p.vars()->index("t")).equal);
}

TEST_CASE("flock graphs are the truncations at the lower segment") {
    // the running example: 4 birdwings with 9 crossings and 9 regions kept
    auto fg = flock_graph({5, 2, 1, 1});
    int blacks = 0, whites = 0;
    for (int v = 0; v < fg.vertex_count(); ++v)
        (fg.color[v] == 'b' ? blacks : whites)++;
    CHECK(blacks == 9);
    CHECK(whites == 9);  // 4 hubs + 5 enclosed whites
    CHECK(fg.edge_count() == 25);  // sum of 3a-2 per birdwing + 2 per junction
    CHECK(check_property_star(fg).holds);

    all_compositions(6, [](const std::vector<int>& alpha) {
        auto tb = two_bridge(alpha);
        auto tg = truncated_graph(tb.diagram, tb.lowerSegment);
        CHECK(canonical_string(flock_graph(alpha)) == canonical_string(tg.g));
    });
}

TEST_CASE("snake graphs") {
    CHECK(snake_sign_sequence({5, 2, 1, 1}) == "-----++-+");
    CHECK(snake_sign_sequence({3}) == "---");
    auto sg = snake_graph({5, 2, 1, 1});
    CHECK((int)sg.faces.size() - 1 == 8);  // 8 boxes
    CHECK((int)build_dimer_model(sg).matchings.size() == continuant({5, 2, 1, 1}));
}

TEST_CASE("flock-snake equivalence") {
    auto r2 = flock_snake_equivalence({2});
    CHECK(r2.ok);
    CHECK(r2.matchingCount == 2);  // one square on both sides

    auto r3 = flock_snake_equivalence({3});
    CHECK(r3.ok);
    CHECK(r3.matchingCount == 3);  // D = 1 + y + y y'

    auto rb = flock_snake_equivalence({5, 2, 1, 1});
    CHECK(rb.ok);
    CHECK(rb.matchingCount == 27);

    all_compositions(6, [](const std::vector<int>& alpha) {
        CHECK(flock_snake_equivalence(alpha).ok);
    });
}

TEST_CASE("cluster variables from link diagrams") {
    auto rep = link_cluster_check(trefoil());
    CHECK(rep.ok);
    CHECK(rep.segments.size() == 6);
    for (auto& s : rep.segments) CHECK(s.all());

    CHECK(link_cluster_check(hopf()).ok);

    auto wh = parse_pd(fixture("whitehead.pd"));
    auto repw = link_cluster_check(wh);
    CHECK(repw.ok);
    std::set<int> segs;
    for (auto& s : repw.segments) {
        CHECK(s.all());
        segs.insert(s.segment);
    }
    CHECK(segs.count(7));  // the two projections shown side by side
    CHECK(segs.count(3));
}
