#include "dimerlab/plabic.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>

#include <json.hpp>

#include "dimerlab/dimer.hpp"

namespace dimerlab {

namespace {

int arc_dart(const PlabicGraph& G, int a, bool forward) {
    return 2 * G.edge_count() + 2 * a + (forward ? 0 : 1);
}

bool is_arc_dart(const PlabicGraph& G, int h) { return h >= 2 * G.edge_count(); }

// The dart of real edge e leaving v; dart 2e tails at the black end.
int dart_from(const PlabicGraph& G, int e, int v) {
    int b = G.color[G.edges[e].first] == 'b' ? G.edges[e].first : G.edges[e].second;
    return v == b ? 2 * e : 2 * e + 1;
}

}  // namespace

int PlabicGraph::dart_head(int h) const {
    int E = edge_count();
    if (h < 2 * E) {
        int e = h / 2;
        int b = color[edges[e].first] == 'b' ? edges[e].first : edges[e].second;
        int w = edges[e].first == b ? edges[e].second : edges[e].first;
        return h % 2 == 0 ? w : b;
    }
    int a = (h - 2 * E) / 2;
    return h % 2 == 0 ? (a + 1) % n : a;
}

int PlabicGraph::pendant_edge(int a) const {
    for (int h : rot[a])
        if (!is_arc_dart(*this, h)) return h / 2;
    return -1;
}

PlabicGraph build_plabic(int n, const std::string& internalColors,
                         const std::vector<std::pair<int, int>>& edges,
                         const std::vector<std::vector<int>>& internalEdgeOrders,
                         bool reducedAsserted) {
    if (n < 1) fail(ErrorCode::MalformedInput, "a plabic graph needs boundary vertices");
    PlabicGraph G;
    G.n = n;
    G.edges = edges;
    G.reducedAsserted = reducedAsserted;
    int V = n + (int)internalColors.size();
    G.color.assign(V, 'b');
    for (size_t i = 0; i < internalColors.size(); ++i) {
        char c = internalColors[i];
        if (c != 'b' && c != 'w') fail(ErrorCode::MalformedInput, "colors must be b or w");
        G.color[n + (int)i] = c;
    }

    std::vector<std::vector<int>> incident(V);
    for (size_t e = 0; e < edges.size(); ++e) {
        auto [u, v] = edges[e];
        if (u < 0 || v < 0 || u >= V || v >= V || u == v)
            fail(ErrorCode::MalformedInput, "bad edge endpoints");
        if (u < n && v < n) fail(ErrorCode::MalformedInput, "edge between boundary vertices");
        if (G.color[u] == G.color[v])
            fail(ErrorCode::NotBipartite, "edge " + std::to_string(e) +
                                              " joins two " + G.color[u] + " vertices");
        incident[u].push_back((int)e);
        incident[v].push_back((int)e);
    }
    for (int a = 0; a < n; ++a)
        if (incident[a].size() > 1)
            fail(ErrorCode::DegreeViolation,
                 "boundary vertex " + std::to_string(a + 1) + " has several internal edges");
    for (int v = n; v < V; ++v) {
        if (incident[v].empty())
            fail(ErrorCode::DegreeViolation, "isolated internal vertex " + std::to_string(v));
        if (incident[v].size() == 1) {
            int e = incident[v][0];
            int other = edges[e].first == v ? edges[e].second : edges[e].first;
            if (other >= n)
                fail(ErrorCode::DegreeViolation,
                     "internal leaf " + std::to_string(v) + " not attached to the boundary");
        }
    }
    int blacks = (int)std::count(G.color.begin(), G.color.end(), 'b');
    G.k = n - (blacks - (V - blacks));
    if (G.k < 0 || G.k > n)
        fail(ErrorCode::MalformedInput, "vertex color counts give no valid type (k, n)");

    // connectivity of the disk map (arcs join the boundary circle)
    {
        std::vector<int> comp(V, -1);
        std::vector<int> stack{0};
        comp[0] = 0;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            std::vector<int> nbrs;
            if (v < n) nbrs = {(v + 1) % n, (v + n - 1) % n};
            for (int e : incident[v])
                nbrs.push_back(edges[e].first == v ? edges[e].second : edges[e].first);
            for (int u : nbrs)
                if (comp[u] < 0) {
                    comp[u] = 0;
                    stack.push_back(u);
                }
        }
        if (std::count(comp.begin(), comp.end(), -1))
            fail(ErrorCode::Disconnected, "internal component not attached to the disk");
    }

    // rotations: boundary vertex a sees, counterclockwise, the arc toward
    // a+1, its pendant edge, then the arc toward a-1
    G.rot.assign(V, {});
    for (int a = 0; a < n; ++a) {
        G.rot[a].push_back(arc_dart(G, a, true));
        for (int e : incident[a]) G.rot[a].push_back(dart_from(G, e, a));
        G.rot[a].push_back(arc_dart(G, (a + n - 1) % n, false));
    }
    if ((int)internalEdgeOrders.size() != V - n)
        fail(ErrorCode::MalformedRotation, "one edge order per internal vertex required");
    for (int v = n; v < V; ++v) {
        auto order = internalEdgeOrders[v - n];
        auto sorted = order;
        std::sort(sorted.begin(), sorted.end());
        auto want = incident[v];
        std::sort(want.begin(), want.end());
        if (sorted != want)
            fail(ErrorCode::MalformedRotation,
                 "edge order at vertex " + std::to_string(v) + " does not list its edges");
        for (int e : order) G.rot[v].push_back(dart_from(G, e, v));
    }

    // face tracing: orbits of dart -> rotation successor of its twin
    int H = 2 * (int)edges.size() + 2 * n;
    std::vector<int> rotPos(H, -1), dartVertex(H, -1);
    for (int v = 0; v < V; ++v)
        for (size_t i = 0; i < G.rot[v].size(); ++i) {
            rotPos[G.rot[v][i]] = (int)i;
            dartVertex[G.rot[v][i]] = v;
        }
    for (int h = 0; h < H; ++h)
        if (rotPos[h] < 0) fail(ErrorCode::MalformedRotation, "dart missing from rotations");
    auto next_in_face = [&](int h) {
        int t = h ^ 1;
        int v = dartVertex[t];
        return G.rot[v][(rotPos[t] + 1) % G.rot[v].size()];
    };

    std::vector<int> orbit(H, -1);
    std::vector<std::vector<int>> walks;
    for (int h = 0; h < H; ++h) {
        if (orbit[h] >= 0) continue;
        int id = (int)walks.size();
        walks.push_back({});
        for (int c = h; orbit[c] < 0; c = next_in_face(c)) {
            orbit[c] = id;
            walks[id].push_back(c);
        }
    }
    int exterior = orbit[arc_dart(G, 0, true)];
    for (int h : walks[exterior])
        if (!is_arc_dart(G, h))
            fail(ErrorCode::MalformedRotation, "the outer walk leaves the disk boundary");

    std::vector<PlabicGraph::Face> all;
    std::vector<int> orbitToFace(walks.size(), -1);
    for (int pass = 0; pass < 2; ++pass)  // mutable faces first
        for (size_t i = 0; i < walks.size(); ++i) {
            if ((int)i == exterior) continue;
            bool frozen = std::any_of(walks[i].begin(), walks[i].end(),
                                      [&](int h) { return is_arc_dart(G, h); });
            if (frozen != (pass == 1)) continue;
            PlabicGraph::Face f;
            f.darts = walks[i];
            f.frozen = frozen;
            std::set<int> vs;
            for (int h : walks[i]) {
                vs.insert(dartVertex[h]);
                if (is_arc_dart(G, h))
                    f.arcs.push_back((h - 2 * (int)edges.size()) / 2);
                else
                    f.edges.push_back(h / 2);
            }
            std::sort(f.edges.begin(), f.edges.end());
            f.edges.erase(std::unique(f.edges.begin(), f.edges.end()), f.edges.end());
            std::sort(f.arcs.begin(), f.arcs.end());
            f.arcs.erase(std::unique(f.arcs.begin(), f.arcs.end()), f.arcs.end());
            f.vertices.assign(vs.begin(), vs.end());
            for (int v : f.vertices)
                if (G.color[v] == 'w') ++f.whiteCount;
            orbitToFace[i] = (int)all.size();
            all.push_back(std::move(f));
            if (pass == 0) ++G.nMutableFaces;
        }
    G.faces = std::move(all);
    G.faceOfDart.assign(H, -1);
    for (int h = 0; h < H; ++h)
        if (orbit[h] != exterior) G.faceOfDart[h] = orbitToFace[orbit[h]];
    return G;
}

Quiver plabic_quiver(const PlabicGraph& G) {
    int F = G.face_count();
    std::vector<int> labels(F);
    std::iota(labels.begin(), labels.end(), 0);
    Quiver q = Quiver::make(F, G.nMutableFaces, labels);
    for (int e = 0; e < G.edge_count(); ++e) {
        int to = G.faceOfDart[2 * e], from = G.faceOfDart[2 * e + 1];
        if (from == to) continue;
        if (G.faces[from].frozen && G.faces[to].frozen) continue;
        q.b[from][to] += 1;
        q.b[to][from] -= 1;
    }
    q.validate();
    return q;
}

Seed plabic_seed(const PlabicGraph& G) {
    Seed s;
    s.quiver = plabic_quiver(G);
    s.initial = s.quiver;
    std::vector<std::string> names;
    for (int f = 0; f < G.face_count(); ++f) names.push_back("x" + std::to_string(f));
    s.vars = make_vars(names);
    for (int f = 0; f < G.face_count(); ++f)
        s.cluster.push_back(LaurentPoly::var(s.vars, f));
    return s;
}

std::vector<int> plabic_h_vector(const PlabicGraph& G, uint64_t M) {
    std::vector<int> h(G.face_count());
    for (int f = 0; f < G.face_count(); ++f) {
        int cut = 0;
        for (int e : G.faces[f].edges)
            if (M >> e & 1) ++cut;
        h[f] = G.faces[f].whiteCount - cut - 1;
    }
    return h;
}

std::vector<int> bd_vector(const PlabicGraph& G, const std::vector<int>& J) {
    std::vector<int> bd(G.face_count(), 0);
    for (int j : J) {
        int a = j - 1;  // boundary vertex index of label j
        int e = G.pendant_edge(a);
        if (e >= 0) {
            int v = G.edges[e].first == a ? G.edges[e].second : G.edges[e].first;
            int deg = 0;
            for (int h : G.rot[v])
                if (!is_arc_dart(G, h)) ++deg;
            if (deg == 1) continue;  // lollipop at j
        }
        int arc = (a + G.n - 1) % G.n;  // the arc (j-1, j)
        for (int f = 0; f < G.face_count(); ++f)
            if (std::binary_search(G.faces[f].arcs.begin(), G.faces[f].arcs.end(), arc))
                ++bd[f];
    }
    return bd;
}

namespace {

struct FlipMasks {
    int face;
    uint64_t all = 0, bw = 0, wb = 0;  // by the head color of the face dart
};

std::vector<FlipMasks> flip_masks(const PlabicGraph& G) {
    std::vector<FlipMasks> out;
    for (int f = 0; f < G.nMutableFaces; ++f) {
        FlipMasks fm;
        fm.face = f;
        bool simple = true;
        std::set<int> seen;
        for (int h : G.faces[f].darts) {
            int e = h / 2;
            if (!seen.insert(e).second) simple = false;
            fm.all |= 1ull << e;
            if (G.color[G.dart_head(h)] == 'b')
                fm.bw |= 1ull << e;
            else
                fm.wb |= 1ull << e;
        }
        if (simple && fm.bw && fm.wb) out.push_back(fm);
    }
    return out;
}

std::vector<int> sorted_unique(std::vector<int> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

}  // namespace

ApmLattice enumerate_apm(const PlabicGraph& G, const std::vector<int>& J) {
    if (G.edge_count() > 62) fail(ErrorCode::TooLarge, "more than 62 edges");
    auto j = sorted_unique(J);
    if ((int)j.size() != G.k || j.size() != J.size())
        fail(ErrorCode::MalformedInput, "boundary set must have k distinct labels");
    for (int x : j)
        if (x < 1 || x > G.n) fail(ErrorCode::MalformedInput, "boundary label out of range");

    ApmLattice lat;
    int V = (int)G.color.size();
    std::vector<char> covered(V, 0);
    uint64_t forced = 0;
    bool infeasible = false;
    std::vector<char> inJ(G.n, 0);
    for (int x : j) inJ[x - 1] = 1;
    for (int x : j) {
        int e = G.pendant_edge(x - 1);
        if (e < 0) {
            infeasible = true;
            break;
        }
        int u = G.edges[e].first == x - 1 ? G.edges[e].second : G.edges[e].first;
        if (covered[u]) {  // two chosen boundary vertices share their neighbor
            infeasible = true;
            break;
        }
        covered[u] = 1;
        forced |= 1ull << e;
    }

    if (!infeasible) {
        std::function<void(int, uint64_t)> rec = [&](int v, uint64_t mask) {
            while (v < V && covered[v]) ++v;
            if (v == V) {
                lat.matchings.push_back(mask);
                return;
            }
            for (int h : G.rot[v]) {
                if (is_arc_dart(G, h)) continue;
                int e = h / 2;
                int other = G.edges[e].first == v ? G.edges[e].second : G.edges[e].first;
                if (other < G.n || covered[other]) continue;  // pendants handled above
                covered[v] = covered[other] = 1;
                rec(v + 1, mask | (1ull << e));
                covered[v] = covered[other] = 0;
            }
        };
        rec(G.n, forced);
        std::sort(lat.matchings.begin(), lat.matchings.end());
    }

    auto masks = flip_masks(G);
    std::map<uint64_t, int> index;
    for (size_t i = 0; i < lat.matchings.size(); ++i) index[lat.matchings[i]] = (int)i;
    std::vector<int> sinks;
    for (size_t i = 0; i < lat.matchings.size(); ++i) {
        uint64_t M = lat.matchings[i];
        bool down = false;
        for (const auto& fm : masks) {
            if ((M & fm.all) == fm.bw) down = true;
            if ((M & fm.all) == fm.wb) {
                uint64_t up = (M & ~fm.all) | fm.bw;
                auto it = index.find(up);
                if (it == index.end())
                    fail(ErrorCode::MismatchReport, "flip leaves the matching set");
                lat.covers.push_back({(int)i, it->second, fm.face});
            }
        }
        if (!down) sinks.push_back((int)i);
    }
    if (sinks.size() == 1) lat.bottom = sinks[0];
    return lat;
}

namespace {

// try to embed the component with the given outer hint and identify each
// inner face with a face of G; returns false when some face has no match
bool map_component_faces(const PlabicGraph& G, PrunedComponent& pc) {
    std::map<std::vector<int>, int> byEdges;
    for (int f = 0; f < G.face_count(); ++f)
        if (!G.faces[f].frozen) byEdges[G.faces[f].edges] = f;
    pc.faceToPlabic.clear();
    std::set<int> used;
    for (size_t fi = 0; fi < pc.g.faces.size(); ++fi) {
        if (pc.g.is_outer((int)fi)) continue;
        std::vector<int> es;
        for (int e : pc.g.face_edges((int)fi)) es.push_back(pc.edgeToPlabic[e]);
        std::sort(es.begin(), es.end());
        auto it = byEdges.find(es);
        if (it == byEdges.end() || !used.insert(it->second).second) return false;
        pc.faceToPlabic[pc.g.faces[fi].label] = it->second;
    }
    return true;
}

}  // namespace

PrunedGraph build_H(const PlabicGraph& G, const std::vector<int>& J) {
    auto lat = enumerate_apm(G, J);
    if (lat.matchings.empty())
        fail(ErrorCode::MismatchReport, "no almost perfect matching with this boundary");

    uint64_t unionMask = 0;
    for (uint64_t M : lat.matchings) unionMask |= M;
    int V = (int)G.color.size();
    std::vector<char> deleted(V, 0);
    for (int a = 0; a < G.n; ++a) deleted[a] = 1;
    for (int x : J) {
        int e = G.pendant_edge(x - 1);
        deleted[G.edges[e].first == x - 1 ? G.edges[e].second : G.edges[e].first] = 1;
    }
    PrunedGraph H;
    std::vector<int> surv;
    for (int e = 0; e < G.edge_count(); ++e) {
        if (!(unionMask >> e & 1)) continue;
        if (deleted[G.edges[e].first] || deleted[G.edges[e].second]) continue;
        surv.push_back(e);
        H.edgeMask |= 1ull << e;
    }

    // split surviving edges into connected components
    std::vector<int> parent(V);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) {
        return parent[x] == x ? x : parent[x] = find(parent[x]);
    };
    for (int e : surv) parent[find(G.edges[e].first)] = find(G.edges[e].second);
    std::map<int, std::vector<int>> compEdges;  // root -> plabic edge ids
    for (int e : surv) compEdges[find(G.edges[e].first)].push_back(e);

    for (auto& [root, es] : compEdges) {
        PrunedComponent pc;
        pc.edgeToPlabic = es;  // ascending
        std::map<int, int> vid, eid;
        std::vector<char> colors;
        std::vector<std::pair<int, int>> edges;
        for (size_t i = 0; i < es.size(); ++i) eid[es[i]] = (int)i;
        for (int e : es)
            for (int v : {G.edges[e].first, G.edges[e].second})
                if (!vid.count(v)) {
                    vid[v] = (int)colors.size();
                    colors.push_back(G.color[v]);
                }
        for (int e : es) {
            int u = G.edges[e].first, v = G.edges[e].second;
            if (G.color[u] != 'b') std::swap(u, v);
            edges.push_back({vid.at(u), vid.at(v)});
        }
        std::vector<std::vector<int>> rotations(colors.size());
        for (auto& [v, nv] : vid)
            for (int h : G.rot[v]) {
                if (is_arc_dart(G, h) || !eid.count(h / 2)) continue;
                int ne = eid.at(h / 2);
                rotations[nv].push_back(G.color[v] == 'b' ? 2 * ne : 2 * ne + 1);
            }

        pc.g = build_graph(colors, edges, rotations);
        if (!map_component_faces(G, pc)) {
            bool done = false;
            for (int h = 0; h < 2 * (int)edges.size() && !done; ++h) {
                pc.g = build_graph(colors, edges, rotations, h);
                done = map_component_faces(G, pc);
            }
            if (!done)
                fail(ErrorCode::MismatchReport,
                     "an inner face of the pruned graph is not a face of G");
        }
        auto star = check_property_star(pc.g);
        if (!star.holds)
            fail(ErrorCode::MismatchReport,
                 "pruned component misses property (*): " + star.detail);
        H.components.push_back(std::move(pc));
    }

    // matchings of H, once through the boundary-J matchings of G and once as
    // the product of component dimer models; the two must agree
    std::set<uint64_t> fromApm;
    for (uint64_t M : lat.matchings) fromApm.insert(M & H.edgeMask);
    std::set<uint64_t> fromProduct{0};
    for (const auto& pc : H.components) {
        auto model = build_dimer_model(pc.g);
        std::set<uint64_t> next;
        for (uint64_t base : fromProduct)
            for (uint64_t M : model.matchings) {
                uint64_t mapped = 0;
                for (size_t i = 0; i < model.edges.size(); ++i)
                    if (M >> i & 1) mapped |= 1ull << pc.edgeToPlabic[model.edges[i]];
                next.insert(base | mapped);
            }
        fromProduct = std::move(next);
    }
    if (fromApm != fromProduct)
        fail(ErrorCode::MismatchReport,
             "matchings of the pruned graph disagree with the boundary-J matchings");
    H.matchings.assign(fromApm.begin(), fromApm.end());
    return H;
}

namespace {

LaurentPoly monomial_from(const VarTablePtr& vars, const std::vector<int>& exps) {
    Exp e(vars->size(), 0);
    for (size_t i = 0; i < exps.size(); ++i) e[i] = exps[i];
    return LaurentPoly::monomial(vars, e);
}

TwistFormulaResult twist_impl(const PlabicGraph& G, const std::vector<int>& J,
                              const VarTablePtr& vars) {
    TwistFormulaResult res;
    res.J = sorted_unique(J);
    auto lat = enumerate_apm(G, res.J);
    res.bdMonomial = monomial_from(vars, bd_vector(G, res.J));
    res.laurent = LaurentPoly::zero(vars);
    for (uint64_t M : lat.matchings)
        res.laurent = res.laurent + monomial_from(vars, plabic_h_vector(G, M));
    res.laurent = res.laurent * res.bdMonomial;
    res.vanishing = lat.matchings.empty();
    res.frozenFactor = LaurentPoly::constant(vars, 1);
    return res;
}

}  // namespace

TwistFormulaResult twist_formula(const PlabicGraph& G, const std::vector<int>& J) {
    std::vector<std::string> names;
    for (int f = 0; f < G.face_count(); ++f) names.push_back("x" + std::to_string(f));
    return twist_impl(G, J, make_vars(names));
}

PlabicReport verify_plucker_cluster_monomial(const PlabicGraph& G,
                                             const std::vector<int>& J, int depthCap) {
    if (!G.reducedAsserted)
        fail(ErrorCode::NotReducedAsserted, "caller must assert the graph is reduced");
    PlabicReport rep;
    Seed seed = plabic_seed(G);
    rep.twist = twist_impl(G, J, seed.vars);
    if (rep.twist.vanishing) {
        rep.vanishing = true;
        rep.ok = true;
        rep.detail = "no almost perfect matching; the Pluecker coordinate vanishes";
        return rep;
    }
    auto lat = enumerate_apm(G, rep.twist.J);
    if (lat.bottom < 0) {
        rep.detail = "boundary-J matchings have no unique minimum";
        return rep;
    }

    // the frozen-variable bridge between matchings of G and of H: the number
    // of chosen boundary vertices on each face
    std::vector<int> cJ(G.face_count(), 0);
    for (int x : rep.twist.J)
        for (int f = 0; f < G.face_count(); ++f) {
            const auto& vs = G.faces[f].vertices;
            if (std::binary_search(vs.begin(), vs.end(), x - 1)) ++cJ[f];
        }

    if (lat.matchings.size() == 1) {
        rep.uniqueMatching = true;
        const auto& [e, c] = *rep.twist.laurent.terms().begin();
        for (int f = 0; f < G.nMutableFaces; ++f)
            if (e[f] < 0) {
                rep.detail = "negative mutable exponent in a unique-matching twist";
                return rep;
            }
        for (int f = 0; f < G.nMutableFaces; ++f)
            if (e[f] > 0)
                rep.twist.clusterFactors.push_back({LaurentPoly::var(seed.vars, f), e[f]});
        Exp frozen = e;
        for (int f = 0; f < G.nMutableFaces; ++f) frozen[f] = 0;
        rep.twist.frozenFactor = LaurentPoly::monomial(seed.vars, frozen, c);
        rep.ok = true;
        rep.detail = "unique matching; twist is a Laurent monomial with "
                     "nonnegative mutable exponents";
        return rep;
    }

    auto H = build_H(G, rep.twist.J);
    LaurentPoly sumH = LaurentPoly::zero(seed.vars);
    for (uint64_t M : H.matchings)
        sumH = sumH + monomial_from(seed.vars, plabic_h_vector(G, M));

    // the twist sum over G recomputed through H (dual enumeration routes)
    LaurentPoly viaH = sumH * rep.twist.bdMonomial;
    std::vector<int> negCJ(cJ.size());
    for (size_t i = 0; i < cJ.size(); ++i) negCJ[i] = -cJ[i];
    viaH = viaH * monomial_from(seed.vars, negCJ);
    if (viaH != rep.twist.laurent) {
        rep.detail = "twist sum disagrees between matchings of G and of H";
        return rep;
    }

    // one cluster variable per component with faces, found by its reduction
    // sequence; components must sit in the plabic quiver as induced subquivers
    LaurentPoly product = LaurentPoly::constant(seed.vars, 1);
    std::vector<LaurentPoly> zs;
    for (const auto& pc : H.components) {
        if (pc.faceToPlabic.empty()) continue;
        Quiver sub = dual_quiver(pc.g);
        for (int i = 0; i < sub.n; ++i)
            for (int j = 0; j < sub.n; ++j) {
                int fi = pc.faceToPlabic.at(sub.labels[i]);
                int fj = pc.faceToPlabic.at(sub.labels[j]);
                if (seed.initial.b[fi][fj] != sub.b[i][j]) {
                    rep.detail = "component quiver is not an induced subquiver";
                    return rep;
                }
            }
        auto seq = find_reduction_sequence(pc.g, depthCap).faces;
        std::vector<int> mapped;
        for (int f : seq) mapped.push_back(pc.faceToPlabic.at(f));
        Seed cur = mutate_seed_by_labels(seed, mapped);
        LaurentPoly z = cur.cluster[cur.quiver.indexOfLabel(mapped.back())];
        zs.push_back(z);
        product = product * z;
    }

    LaurentPoly Z = sumH.divide_exact(product);
    if (!Z.is_monomial()) {
        rep.detail = "twist sum over H is not a monomial multiple of the product";
        return rep;
    }
    const auto& [ze, zc] = *Z.terms().begin();
    std::set<int> hFaces;
    for (const auto& pc : H.components)
        for (auto& [l, f] : pc.faceToPlabic) hFaces.insert(f);
    for (int f = 0; f < G.face_count(); ++f) {
        if (ze[f] != 0 && hFaces.count(f)) {
            rep.detail = "correction monomial touches a face of H";
            return rep;
        }
        if (f < G.nMutableFaces && ze[f] < 0) {
            rep.detail = "negative mutable exponent in the correction monomial";
            return rep;
        }
    }

    // the full identity chain, with every factor recomputed symbolically
    LaurentPoly lhs = rep.twist.bdMonomial * monomial_from(seed.vars, negCJ) * Z * product;
    if (lhs != rep.twist.laurent || zc != 1) {
        rep.detail = "cluster decomposition does not reproduce the twist formula";
        return rep;
    }

    for (const auto& z : zs) {
        bool seen = false;
        for (auto& [poly, mult] : rep.twist.clusterFactors)
            if (poly == z) {
                ++mult;
                seen = true;
            }
        if (!seen) rep.twist.clusterFactors.push_back({z, 1});
    }
    for (int f = 0; f < G.nMutableFaces; ++f)
        if (ze[f] > 0)
            rep.twist.clusterFactors.push_back({LaurentPoly::var(seed.vars, f), ze[f]});
    Exp frozen = ze;
    for (int f = 0; f < G.nMutableFaces; ++f) frozen[f] = 0;
    for (int f = 0; f < G.face_count(); ++f) frozen[f] += bd_vector(G, rep.twist.J)[f] - cJ[f];
    rep.twist.frozenFactor = LaurentPoly::monomial(seed.vars, frozen, zc);
    rep.ok = true;
    rep.detail = "twist formula equals a cluster monomial on " +
                 std::to_string(H.components.size()) + " pruned components";
    return rep;
}

std::string plabic_to_json(const PlabicGraph& G) {
    nlohmann::json j;
    j["n"] = G.n;
    j["k"] = G.k;
    j["reduced"] = G.reducedAsserted;
    std::string colors;
    for (size_t v = G.n; v < G.color.size(); ++v) colors.push_back(G.color[v]);
    j["internalColors"] = colors;
    j["edges"] = nlohmann::json::array();
    for (auto& [u, v] : G.edges) j["edges"].push_back({u, v});
    j["edgeOrders"] = nlohmann::json::array();
    for (size_t v = G.n; v < G.color.size(); ++v) {
        std::vector<int> order;
        for (int h : G.rot[v]) order.push_back(h / 2);
        j["edgeOrders"].push_back(order);
    }
    j["frozenFaces"] = nlohmann::json::array();
    for (int f = 0; f < G.face_count(); ++f)
        if (G.faces[f].frozen) j["frozenFaces"].push_back(f);
    return j.dump(2);
}

PlabicGraph plabic_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const std::exception& e) {
        fail(ErrorCode::MalformedInput, std::string("bad plabic JSON: ") + e.what());
    }
    if (!j.contains("n") || !j.contains("internalColors") || !j.contains("edges") ||
        !j.contains("edgeOrders"))
        fail(ErrorCode::MalformedInput, "plabic JSON needs n, internalColors, edges, edgeOrders");
    std::vector<std::pair<int, int>> edges;
    for (auto& e : j["edges"]) edges.push_back({e[0].get<int>(), e[1].get<int>()});
    std::vector<std::vector<int>> orders;
    for (auto& o : j["edgeOrders"]) orders.push_back(o.get<std::vector<int>>());
    PlabicGraph G = build_plabic(j["n"].get<int>(), j["internalColors"].get<std::string>(),
                                 edges, orders, j.value("reduced", false));
    if (j.contains("k") && j["k"].get<int>() != G.k)
        fail(ErrorCode::MalformedInput, "declared k does not match the vertex colors");
    return G;
}

}  // namespace dimerlab
