#include "dimerlab/dimer.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>

#include <json.hpp>

namespace dimerlab {

namespace {

std::vector<uint64_t> enumerate_matchings_impl(const PlaneBipartiteGraph& g,
                                               const std::vector<int>& edges) {
    if (edges.size() > 64) fail(ErrorCode::TooLarge, "more than 64 edges");
    std::map<int, int> bit;
    for (size_t i = 0; i < edges.size(); ++i) bit[edges[i]] = (int)i;
    auto verts = g.alive_vertices();
    std::vector<char> covered(g.color.size(), 0);
    std::vector<uint64_t> out;
    std::vector<int> chosen;  // edge ids, for lex ordering

    std::function<void(size_t, uint64_t)> rec = [&](size_t vi, uint64_t mask) {
        while (vi < verts.size() && covered[verts[vi]]) ++vi;
        if (vi == verts.size()) {
            out.push_back(mask);
            return;
        }
        int v = verts[vi];
        std::vector<int> inc;
        for (int h : g.rot[v]) inc.push_back(h / 2);
        std::sort(inc.begin(), inc.end());
        for (int e : inc) {
            int b = g.black_end(e), w = g.white_end(e);
            int other = b == v ? w : b;
            if (covered[other]) continue;
            covered[v] = covered[other] = 1;
            rec(vi + 1, mask | (1ull << bit[e]));
            covered[v] = covered[other] = 0;
        }
    };
    if (!verts.empty()) rec(0, 0);
    // lex on increasing edge-id lists coincides with comparing low bits first
    std::sort(out.begin(), out.end(), [&](uint64_t a, uint64_t b) {
        std::vector<int> ea, eb;
        for (size_t i = 0; i < edges.size(); ++i) {
            if (a >> i & 1) ea.push_back(edges[i]);
            if (b >> i & 1) eb.push_back(edges[i]);
        }
        return ea < eb;
    });
    return out;
}

std::vector<int> face_edges_of_class(const DimerModel& m, int faceIdx, EdgeClass cls) {
    std::vector<int> out;
    for (int e : m.g.face_edges(faceIdx))
        if (classify_edge(m.g, faceIdx, e) == cls) out.push_back(e);
    return out;
}

uint64_t edge_set_mask(const DimerModel& m, const std::vector<int>& es) {
    uint64_t mask = 0;
    for (int e : es) mask |= 1ull << edge_bit(m, e);
    return mask;
}

int inner_pos(const DimerModel& m, int label) {
    auto it = std::lower_bound(m.innerLabels.begin(), m.innerLabels.end(), label);
    return it != m.innerLabels.end() && *it == label ? (int)(it - m.innerLabels.begin()) : -1;
}

// Height contribution when a dual walk leaves the face left of h by crossing
// its edge: +1 if the symmetric difference traverses twin(h), -1 along h.
// Edges of M \ 0-hat are oriented black to white, edges of 0-hat \ M the
// other way.
int crossing_contribution(const DimerModel& m, uint64_t M, uint64_t zero, int h) {
    int e = h / 2;
    uint64_t bitmask = 1ull << edge_bit(m, e);
    bool inM = M & bitmask, inZ = zero & bitmask;
    if (inM == inZ) return 0;
    int oriented = inM ? m.g.black_halfedge(e) : m.g.twin(m.g.black_halfedge(e));
    return oriented == m.g.twin(h) ? 1 : -1;
}

std::vector<int> height_by_tree(const DimerModel& m, uint64_t M, uint64_t base, bool reversed) {
    const auto& g = m.g;
    // BFS tree on faces from the outer face; parentHe[f] = half-edge with
    // faceOf = f crossed when walking from f toward the root
    std::vector<int> parentHe(g.faces.size(), -1);
    std::vector<char> seen(g.faces.size(), 0);
    std::vector<int> queue{g.outerIdx};
    seen[g.outerIdx] = 1;
    for (size_t qi = 0; qi < queue.size(); ++qi) {
        int f = queue[qi];
        auto bd = g.faces[f].boundary;
        if (reversed) std::reverse(bd.begin(), bd.end());
        for (int h : bd) {
            int nf = g.faceOf[g.twin(h)];
            if (seen[nf]) continue;
            seen[nf] = 1;
            parentHe[nf] = g.twin(h);
            queue.push_back(nf);
        }
    }
    std::vector<int> out(m.innerLabels.size(), 0);
    for (size_t i = 0; i < m.innerLabels.size(); ++i) {
        int f = g.face_index_of_label(m.innerLabels[i]);
        int total = 0;
        while (f != g.outerIdx) {
            total += crossing_contribution(m, M, base, parentHe[f]);
            f = g.faceOf[g.twin(parentHe[f])];
        }
        out[i] = total;
    }
    return out;
}

}  // namespace

DimerModel build_dimer_model(const PlaneBipartiteGraph& g) {
    DimerModel m;
    m.g = g;
    m.edges = g.alive_edges();
    m.innerLabels = g.inner_face_labels();
    m.matchings = enumerate_matchings_impl(g, m.edges);
    return m;
}

int edge_bit(const DimerModel& m, int e) {
    auto it = std::lower_bound(m.edges.begin(), m.edges.end(), e);
    return it != m.edges.end() && *it == e ? (int)(it - m.edges.begin()) : -1;
}

bool flip_applicable(const DimerModel& m, uint64_t M, int faceLabel, bool up) {
    int fi = m.g.face_index_of_label(faceLabel);
    if (fi < 0 || m.g.is_outer(fi)) return false;
    auto need = face_edges_of_class(m, fi, up ? EdgeClass::WhiteBlack : EdgeClass::BlackWhite);
    uint64_t needMask = edge_set_mask(m, need);
    return needMask != 0 && (M & needMask) == needMask;
}

uint64_t flip(const DimerModel& m, uint64_t M, int faceLabel, bool up) {
    if (!flip_applicable(m, M, faceLabel, up))
        fail(ErrorCode::FlipNotApplicable,
             "face " + std::to_string(faceLabel) + " is not " + (up ? "up" : "down") +
                 "-flippable here");
    int fi = m.g.face_index_of_label(faceLabel);
    auto out = face_edges_of_class(m, fi, up ? EdgeClass::WhiteBlack : EdgeClass::BlackWhite);
    auto in = face_edges_of_class(m, fi, up ? EdgeClass::BlackWhite : EdgeClass::WhiteBlack);
    return (M & ~edge_set_mask(m, out)) | edge_set_mask(m, in);
}

uint64_t minimal_matching(const DimerModel& m) {
    std::vector<uint64_t> sinks;
    for (uint64_t M : m.matchings) {
        bool down = false;
        for (int label : m.innerLabels) down = down || flip_applicable(m, M, label, false);
        if (!down) sinks.push_back(M);
    }
    if (sinks.size() != 1)
        fail(ErrorCode::NonUniqueMinimum,
             std::to_string(sinks.size()) + " matchings admit no down-flip");
    return sinks[0];
}

DimerLattice build_lattice(const DimerModel& m) {
    DimerLattice lat;
    lat.elements = m.matchings;
    std::map<uint64_t, int> index;
    for (size_t i = 0; i < lat.elements.size(); ++i) index[lat.elements[i]] = (int)i;
    uint64_t bottom = minimal_matching(m);
    lat.bottom = index.at(bottom);
    for (size_t i = 0; i < lat.elements.size(); ++i)
        for (int label : m.innerLabels)
            if (flip_applicable(m, lat.elements[i], label, true))
                lat.covers.push_back({(int)i, index.at(flip(m, lat.elements[i], label, true)),
                                      label});
    return lat;
}

std::vector<int> height(const DimerModel& m, uint64_t M) {
    uint64_t zero = minimal_matching(m);
    auto a = height_by_tree(m, M, zero, false);
    auto b = height_by_tree(m, M, zero, true);
    if (a != b)
        fail(ErrorCode::MismatchReport, "height differs between two dual walks");
    return a;
}

std::vector<int> height_relative(const DimerModel& m, uint64_t M, uint64_t base) {
    auto a = height_by_tree(m, M, base, false);
    auto b = height_by_tree(m, M, base, true);
    if (a != b)
        fail(ErrorCode::MismatchReport, "relative height differs between two dual walks");
    return a;
}

std::vector<int> height_by_winding(const DimerModel& m, uint64_t M) {
    const auto& g = m.g;
    uint64_t zero = minimal_matching(m);
    uint64_t diff = M ^ zero;
    std::vector<int> out(m.innerLabels.size(), 0);

    // cycles of the symmetric difference are vertex-disjoint: follow them
    std::vector<char> usedEdge(m.edges.size(), 0);
    for (size_t i = 0; i < m.edges.size(); ++i) {
        if (!(diff >> i & 1) || usedEdge[i]) continue;
        // collect this cycle's edges by walking vertex to vertex
        std::vector<int> cycle;
        int e = m.edges[i];
        int v = g.black_end(e);
        int start = v;
        do {
            int bi = edge_bit(m, e);
            usedEdge[bi] = 1;
            cycle.push_back(e);
            int u = g.black_end(e) == v ? g.white_end(e) : g.black_end(e);
            int nextE = -1;
            for (int h : g.rot[u]) {
                int e2 = h / 2;
                int b2 = edge_bit(m, e2);
                if (e2 != e && (diff >> b2 & 1)) nextE = e2;
            }
            if (nextE < 0) fail(ErrorCode::MismatchReport, "symmetric difference not a cycle");
            e = nextE;
            v = u;
        } while (v != start);

        // faces enclosed by this cycle: dual BFS from the outer face that
        // never crosses a cycle edge; unreached faces are inside
        std::set<int> cycEdges(cycle.begin(), cycle.end());
        std::vector<char> outside(g.faces.size(), 0);
        std::vector<int> queue{g.outerIdx};
        outside[g.outerIdx] = 1;
        for (size_t qi = 0; qi < queue.size(); ++qi) {
            for (int h : g.faces[queue[qi]].boundary) {
                if (cycEdges.count(h / 2)) continue;
                int nf = g.faceOf[g.twin(h)];
                if (!outside[nf]) {
                    outside[nf] = 1;
                    queue.push_back(nf);
                }
            }
        }
        // orientation: pick a cycle edge and its half-edge whose face is
        // enclosed; the cycle is clockwise iff it runs along the twin
        int e0 = cycle[0];
        int hEnc = g.faceOf[2 * e0] >= 0 && !outside[g.faceOf[2 * e0]] ? 2 * e0 : 2 * e0 + 1;
        if (outside[g.faceOf[hEnc]])
            fail(ErrorCode::MismatchReport, "cycle encloses nothing");
        bool inM = M >> edge_bit(m, e0) & 1;
        int oriented = inM ? g.black_halfedge(e0) : g.twin(g.black_halfedge(e0));
        int sign = oriented == g.twin(hEnc) ? 1 : -1;
        for (size_t k = 0; k < m.innerLabels.size(); ++k) {
            int fi = g.face_index_of_label(m.innerLabels[k]);
            if (!outside[fi]) out[k] += sign;
        }
    }
    return out;
}

namespace {

VarTablePtr face_vars(const DimerModel& m) {
    std::vector<std::string> names;
    for (int label : m.innerLabels) names.push_back("y" + std::to_string(label));
    return make_vars(names);
}

}  // namespace

LaurentPoly multivariate_rank(const DimerModel& m, uint64_t M) {
    auto vars = face_vars(m);
    uint64_t bottom = minimal_matching(m);
    // walk down to 0-hat twice with opposite tie-breaking; the multisets of
    // face labels used must agree (chain independence)
    Exp exps[2];
    for (int pass = 0; pass < 2; ++pass) {
        Exp e((int)m.innerLabels.size(), 0);
        uint64_t cur = M;
        int guard = 0;
        while (cur != bottom && ++guard < 100000) {
            int pick = -1;
            for (int label : m.innerLabels)
                if (flip_applicable(m, cur, label, false)) {
                    pick = label;
                    if (pass == 0) break;
                }
            if (pick < 0) fail(ErrorCode::NonUniqueMinimum, "stuck above a second sink");
            e[inner_pos(m, pick)] += 1;
            cur = flip(m, cur, pick, false);
        }
        exps[pass] = e;
    }
    if (exps[0] != exps[1])
        fail(ErrorCode::MismatchReport, "saturated chains disagree on the rank monomial");
    return LaurentPoly::monomial(vars, exps[0]);
}

LaurentPoly dimer_face_polynomial(const DimerModel& m) {
    auto vars = face_vars(m);
    LaurentPoly d = LaurentPoly::zero(vars);
    for (uint64_t M : m.matchings) {
        auto h = height(m, M);
        d.add_term(Exp(h.begin(), h.end()), 1);
    }
    if (d.term_count() != m.matchings.size())
        fail(ErrorCode::MismatchReport, "height vectors are not pairwise distinct");
    return d;
}

LaurentPoly dimer_face_polynomial_by_chains(const DimerModel& m) {
    auto vars = face_vars(m);
    LaurentPoly d = LaurentPoly::zero(vars);
    for (uint64_t M : m.matchings) d = d + multivariate_rank(m, M);
    return d;
}

std::vector<int> h_vector(const DimerModel& m, uint64_t M) {
    std::vector<int> out;
    for (int label : m.innerLabels) {
        int fi = m.g.face_index_of_label(label);
        auto es = m.g.face_edges(fi);
        int inM = 0;
        for (int e : es) inM += M >> edge_bit(m, e) & 1;
        out.push_back((int)m.g.faces[fi].boundary.size() / 2 - inM - 1);
    }
    return out;
}

namespace {

VarTablePtr edge_var_table(const DimerModel& m) {
    std::vector<std::string> names;
    for (int e : m.edges) names.push_back("z" + std::to_string(e));
    return make_vars(names);
}

}  // namespace

LaurentPoly partition_function(const DimerModel& m) {
    auto vars = edge_var_table(m);
    LaurentPoly z = LaurentPoly::zero(vars);
    for (uint64_t M : m.matchings) {
        Exp e((int)m.edges.size(), 0);
        for (size_t i = 0; i < m.edges.size(); ++i) e[i] = (int)(M >> i & 1);
        z.add_term(e, 1);
    }
    return z;
}

LaurentPoly edge_substitution(const DimerModel& m, const LaurentPoly& faceDimerPoly) {
    auto target = edge_var_table(m);
    std::vector<std::optional<RationalMono>> images;
    for (size_t vi = 0; vi < faceDimerPoly.vars()->size(); ++vi) {
        const std::string& name = faceDimerPoly.vars()->names[vi];
        int label = std::stoi(name.substr(1));
        int fi = m.g.face_index_of_label(label);
        Exp num((int)m.edges.size(), 0), den((int)m.edges.size(), 0);
        for (int e : m.g.face_edges(fi)) {
            if (classify_edge(m.g, fi, e) == EdgeClass::BlackWhite)
                num[edge_bit(m, e)] += 1;
            else
                den[edge_bit(m, e)] += 1;
        }
        images.push_back(RationalMono{LaurentPoly::monomial(target, num), den});
    }
    LaurentPoly out = substitute(faceDimerPoly, images, target);
    uint64_t zero = minimal_matching(m);
    Exp z0((int)m.edges.size(), 0);
    for (size_t i = 0; i < m.edges.size(); ++i) z0[i] = (int)(zero >> i & 1);
    return out * LaurentPoly::monomial(target, z0);
}

GeneralDimer dimer_face_polynomial_general(const PlaneBipartiteGraph& g) {
    // prune edges lying in no perfect matching
    std::vector<char> matched(g.color.size(), 0);
    auto verts = g.alive_vertices();
    std::function<bool(size_t)> extend = [&](size_t vi) -> bool {
        while (vi < verts.size() && matched[verts[vi]]) ++vi;
        if (vi == verts.size()) return true;
        int v = verts[vi];
        for (int h : g.rot[v]) {
            int u = g.head[h];
            if (matched[u]) continue;
            matched[v] = matched[u] = 1;
            bool ok = extend(vi + 1);
            matched[v] = matched[u] = 0;
            if (ok) return true;
        }
        return false;
    };
    std::set<int> kept;
    for (int e : g.alive_edges()) {
        std::fill(matched.begin(), matched.end(), 0);
        matched[g.black_end(e)] = matched[g.white_end(e)] = 1;
        if (extend(0)) kept.insert(e);
    }

    // connected components of the pruned graph
    std::vector<int> comp(g.color.size(), -1);
    int nComp = 0;
    for (int v : verts) {
        bool hasEdge = false;
        for (int h : g.rot[v]) hasEdge = hasEdge || kept.count(h / 2);
        if (!hasEdge || comp[v] >= 0) continue;
        std::vector<int> queue{v};
        comp[v] = nComp;
        for (size_t qi = 0; qi < queue.size(); ++qi)
            for (int h : g.rot[queue[qi]])
                if (kept.count(h / 2) && comp[g.head[h]] < 0) {
                    comp[g.head[h]] = nComp;
                    queue.push_back(g.head[h]);
                }
        ++nComp;
    }

    GeneralDimer out;
    std::vector<std::string> allNames;
    int labelOffset = 0;
    for (int c = 0; c < nComp; ++c) {
        std::vector<int> vmap(g.color.size(), -1);
        std::vector<char> colors;
        std::vector<std::pair<int, int>> edges;
        std::vector<std::vector<int>> edgeOrders;
        for (int v : verts)
            if (comp[v] == c) {
                vmap[v] = (int)colors.size();
                colors.push_back(g.color[v]);
                edgeOrders.emplace_back();
            }
        std::map<int, int> emap;
        for (int v : verts) {
            if (comp[v] != c) continue;
            for (int h : g.rot[v]) {
                if (!kept.count(h / 2)) continue;
                if (!emap.count(h / 2)) {
                    emap[h / 2] = (int)edges.size();
                    edges.push_back({vmap[g.black_end(h / 2)], vmap[g.white_end(h / 2)]});
                }
                edgeOrders[vmap[v]].push_back(emap[h / 2]);
            }
        }
        auto sub = build_graph_from_edge_orders(colors, edges, edgeOrders);
        // keep component face variables globally distinct
        for (auto& f : sub.faces)
            if (f.label != sub.outer_label()) f.label += labelOffset;
        sub.nextLabel += labelOffset;
        auto model = build_dimer_model(sub);
        labelOffset = sub.nextLabel;
        out.components.push_back(std::move(model));
    }
    for (auto& mc : out.components)
        for (int label : mc.innerLabels) allNames.push_back("y" + std::to_string(label));
    auto vars = make_vars(allNames);
    LaurentPoly prod = LaurentPoly::constant(vars, 1);
    for (auto& mc : out.components) {
        auto d = dimer_face_polynomial(mc);
        LaurentPoly lifted = LaurentPoly::zero(vars);
        for (auto& [e, cf] : d.terms()) {
            Exp le((int)vars->size(), 0);
            for (size_t i = 0; i < mc.innerLabels.size(); ++i)
                le[vars->index("y" + std::to_string(mc.innerLabels[i]))] = e[i];
            lifted.add_term(le, cf);
        }
        prod = prod * lifted;
    }
    out.poly = prod;
    return out;
}

std::string lattice_to_dot(const DimerModel& m, const DimerLattice& lat) {
    std::ostringstream s;
    s << "digraph L {\n  rankdir=BT;\n";
    for (size_t i = 0; i < lat.elements.size(); ++i)
        s << "  m" << i << " [label=\"" << multivariate_rank(m, lat.elements[i]).to_string()
          << "\"];\n";
    for (auto& c : lat.covers)
        s << "  m" << c.lower << " -> m" << c.upper << " [label=\"" << c.faceLabel << "\"];\n";
    s << "}\n";
    return s.str();
}

std::string lattice_to_json(const DimerModel& m, const DimerLattice& lat) {
    nlohmann::json j;
    j["bottom"] = lat.bottom;
    auto& elems = j["elements"] = nlohmann::json::array();
    for (uint64_t M : lat.elements) {
        nlohmann::json node;
        auto& es = node["edges"] = nlohmann::json::array();
        for (size_t i = 0; i < m.edges.size(); ++i)
            if (M >> i & 1) es.push_back(m.edges[i]);
        node["height"] = height(m, M);
        elems.push_back(node);
    }
    auto& cov = j["covers"] = nlohmann::json::array();
    for (auto& c : lat.covers)
        cov.push_back({{"lower", c.lower}, {"upper", c.upper}, {"face", c.faceLabel}});
    return j.dump();
}

}  // namespace dimerlab
