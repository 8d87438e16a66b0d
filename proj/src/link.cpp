#include "dimerlab/link.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <numeric>
#include <optional>
#include <regex>
#include <set>
#include <sstream>

#include <json.hpp>

#include "dimerlab/cluster.hpp"

namespace dimerlab {

namespace {

bool slot_incoming(const CrossingRec& c, int k) { return k == 0 || k == c.overIn; }

int black_hole_corner(const CrossingRec& c) {
    // the corner between the two incoming strand ends
    return c.overIn == 1 ? 0 : 3;
}

// corner weights 1, -1, t, -t counterclockwise from the under-in slot
void accumulate_weight(const CrossingRec& c, int corner, int& texp, int& negs, int& holes) {
    if (corner >= 2) ++texp;
    if (corner % 2 == 1) ++negs;
    if (corner == black_hole_corner(c)) ++holes;
}

struct Dsu {
    std::vector<int> p;
    explicit Dsu(int n) : p(n) { std::iota(p.begin(), p.end(), 0); }
    int find(int x) { return p[x] == x ? x : p[x] = find(p[x]); }
    void unite(int a, int b) { p[find(a)] = find(b); }
};

}  // namespace

const SegmentRec& LinkDiagram::segment(int id) const {
    for (auto& s : segments)
        if (s.id == id) return s;
    fail(ErrorCode::MalformedPD, "unknown segment " + std::to_string(id));
}

std::array<int, 2> LinkDiagram::segment_regions(int id) const {
    auto& s = segment(id);
    int c = s.tailCrossing, k = s.tailSlot;
    return {regionOfCorner[c][(k + 3) % 4], regionOfCorner[c][k]};
}

LinkDiagram build_diagram(std::vector<CrossingRec> crossings) {
    LinkDiagram L;
    L.crossings = std::move(crossings);
    int n = (int)L.crossings.size();
    if (n == 0) fail(ErrorCode::MalformedPD, "diagram has no crossings");

    std::map<int, std::vector<std::pair<int, int>>> occ;  // segment id -> ends
    for (int c = 0; c < n; ++c) {
        auto& cr = L.crossings[c];
        if (cr.overIn != 1 && cr.overIn != 3)
            fail(ErrorCode::MalformedPD, "over-strand must enter at slot 1 or 3");
        for (int k = 0; k < 4; ++k) occ[cr.seg[k]].push_back({c, k});
    }
    for (auto& [sid, ends] : occ) {
        if (ends.size() != 2)
            fail(ErrorCode::MalformedPD,
                 "segment " + std::to_string(sid) + " appears " +
                     std::to_string(ends.size()) + " times");
        bool in0 = slot_incoming(L.crossings[ends[0].first], ends[0].second);
        bool in1 = slot_incoming(L.crossings[ends[1].first], ends[1].second);
        if (in0 == in1)
            fail(ErrorCode::InconsistentOrientation,
                 "segment " + std::to_string(sid) + " has two " +
                     (in0 ? "incoming" : "outgoing") + " ends");
        auto tail = in0 ? ends[1] : ends[0];
        auto head = in0 ? ends[0] : ends[1];
        L.segments.push_back({sid, tail.first, tail.second, head.first, head.second});
    }

    // which segment occupies each end
    std::vector<std::array<int, 4>> endSeg(n, {-1, -1, -1, -1});
    for (int si = 0; si < (int)L.segments.size(); ++si) {
        auto& s = L.segments[si];
        endSeg[s.tailCrossing][s.tailSlot] = si;
        endSeg[s.headCrossing][s.headSlot] = si;
    }

    // trace regions with each region kept on the left: arrive at slot k, leave
    // through slot k-1, passing corner k-1
    int m = (int)L.segments.size();
    std::vector<int> regionOfDart(2 * m, -1);  // dart 2si: tail->head, 2si+1: reverse
    L.regionOfCorner.assign(n, {-1, -1, -1, -1});
    for (int d0 = 0; d0 < 2 * m; ++d0) {
        if (regionOfDart[d0] != -1) continue;
        int r = (int)L.regionCorners.size();
        L.regionCorners.emplace_back();
        int d = d0;
        do {
            regionOfDart[d] = r;
            auto& s = L.segments[d / 2];
            int c = d % 2 == 0 ? s.headCrossing : s.tailCrossing;
            int k = d % 2 == 0 ? s.headSlot : s.tailSlot;
            int corner = (k + 3) % 4;
            L.regionOfCorner[c][corner] = r;
            L.regionCorners[r].push_back({c, corner});
            int k2 = (k + 3) % 4;
            int si = endSeg[c][k2];
            auto& s2 = L.segments[si];
            d = (s2.tailCrossing == c && s2.tailSlot == k2) ? 2 * si : 2 * si + 1;
        } while (d != d0);
    }
    // Euler count per diagram component; disconnected input is legal here and
    // reported by validate_diagram
    std::vector<int> comp(n, -1);
    int ncomp = 0;
    for (int c0 = 0; c0 < n; ++c0) {
        if (comp[c0] != -1) continue;
        std::vector<int> stack{c0};
        comp[c0] = ncomp;
        while (!stack.empty()) {
            int c = stack.back();
            stack.pop_back();
            for (int k = 0; k < 4; ++k) {
                auto& s = L.segments[endSeg[c][k]];
                for (int c2 : {s.tailCrossing, s.headCrossing})
                    if (comp[c2] == -1) {
                        comp[c2] = ncomp;
                        stack.push_back(c2);
                    }
            }
        }
        ++ncomp;
    }
    // each diagram component traces its own sphere, so n_i + 2 regions apiece
    if (L.region_count() != n + 2 * ncomp)
        fail(ErrorCode::MalformedPD, "region count " + std::to_string(L.region_count()) +
                                         " is wrong; diagram is not planar");
    return L;
}

namespace {

// cyclic successor of a label within its sorted component
struct LabelOrder {
    std::map<int, int> nextLabel;

    explicit LabelOrder(const std::vector<std::array<int, 4>>& raw) {
        std::map<int, int> idOf;
        for (auto& x : raw)
            for (int s : x)
                if (!idOf.count(s)) {
                    int id = (int)idOf.size();
                    idOf[s] = id;
                }
        Dsu dsu((int)idOf.size());
        for (auto& x : raw) {
            dsu.unite(idOf[x[0]], idOf[x[2]]);
            dsu.unite(idOf[x[1]], idOf[x[3]]);
        }
        std::map<int, std::vector<int>> comps;
        for (auto& [s, id] : idOf) comps[dsu.find(id)].push_back(s);
        for (auto& [root, labels] : comps) {
            std::sort(labels.begin(), labels.end());
            for (size_t i = 0; i < labels.size(); ++i)
                nextLabel[labels[i]] = labels[(i + 1) % labels.size()];
        }
    }

    int succ(int s) const { return nextLabel.at(s); }
};

}  // namespace

LinkDiagram parse_pd(const std::string& text) {
    static const std::regex cross(
        R"(X\s*\[\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*\](?::([13]))?)");
    std::vector<std::array<int, 4>> raw;
    std::vector<int> pinned;
    for (auto it = std::sregex_iterator(text.begin(), text.end(), cross);
         it != std::sregex_iterator(); ++it) {
        auto& mt = *it;
        raw.push_back({std::stoi(mt[1]), std::stoi(mt[2]), std::stoi(mt[3]),
                       std::stoi(mt[4])});
        pinned.push_back(mt[5].matched ? std::stoi(mt[5]) : 0);
    }
    std::string rest = std::regex_replace(text, cross, " ");
    for (char ch : rest)
        if (!std::isspace((unsigned char)ch))
            fail(ErrorCode::MalformedPD, "unexpected characters in PD text");
    if (raw.empty()) fail(ErrorCode::MalformedPD, "no crossings in PD text");

    LabelOrder order(raw);
    size_t n = raw.size();
    std::vector<int> overIn(n, 0);  // 0 while undetermined
    // per end: +1 incoming, -1 outgoing, 0 unknown
    std::map<std::pair<int, int>, int> status;
    std::map<int, std::vector<std::pair<int, int>>> occ;
    for (size_t c = 0; c < n; ++c) {
        auto& x = raw[c];
        if (order.succ(x[0]) != x[2])
            fail(ErrorCode::InconsistentOrientation,
                 "under-strand labels do not advance at crossing " + std::to_string(c));
        status[{(int)c, 0}] = +1;
        status[{(int)c, 2}] = -1;
        for (int k = 0; k < 4; ++k) occ[x[k]].push_back({(int)c, k});
    }
    auto resolve = [&](size_t c, int dir) {
        overIn[c] = dir;
        status[{(int)c, dir}] = +1;
        status[{(int)c, 4 - dir}] = -1;
    };
    for (size_t c = 0; c < n; ++c) {
        auto& x = raw[c];
        bool fwd = order.succ(x[1]) == x[3], bwd = order.succ(x[3]) == x[1];
        if (pinned[c]) {
            if (!(pinned[c] == 1 ? fwd : bwd))
                fail(ErrorCode::InconsistentOrientation,
                     "over-strand annotation contradicts labels at crossing " +
                         std::to_string(c));
            resolve(c, pinned[c]);
        } else if (fwd && !bwd) {
            resolve(c, 1);
        } else if (bwd && !fwd) {
            resolve(c, 3);
        } else if (!fwd && !bwd) {
            fail(ErrorCode::InconsistentOrientation,
                 "over-strand labels do not advance at crossing " + std::to_string(c));
        }
        // 2-segment components advance both ways; settled by propagation below
    }
    // each segment needs one incoming and one outgoing end
    for (bool changed = true; changed;) {
        changed = false;
        for (size_t c = 0; c < n; ++c) {
            if (overIn[c]) continue;
            for (int k : {1, 3}) {
                auto& ends = occ[raw[c][k]];
                if (ends.size() != 2) continue;  // build_diagram rejects these
                auto other = ends[0] == std::make_pair((int)c, k) ? ends[1] : ends[0];
                int os = status.count(other) ? status[other] : 0;
                if (os == 0) continue;
                resolve(c, os > 0 ? (k == 1 ? 3 : 1) : k);
                changed = true;
                break;
            }
        }
    }
    std::vector<CrossingRec> crs;
    for (size_t c = 0; c < n; ++c)
        crs.push_back({raw[c], overIn[c] ? overIn[c] : 1});
    return build_diagram(std::move(crs));
}

std::string pd_string(const LinkDiagram& L) {
    std::vector<std::array<int, 4>> raw;
    for (auto& c : L.crossings) raw.push_back(c.seg);
    LabelOrder order(raw);
    std::ostringstream out;
    for (size_t c = 0; c < L.crossings.size(); ++c) {
        auto& cr = L.crossings[c];
        if (order.succ(cr.seg[0]) != cr.seg[2])
            fail(ErrorCode::MalformedPD,
                 "labels are not orientation-compatible; relabel with canonical_labels");
        if (c) out << " ";
        out << "X[" << cr.seg[0] << "," << cr.seg[1] << "," << cr.seg[2] << ","
            << cr.seg[3] << "]";
        // annotate when re-parsing would guess the other over-strand direction
        bool fwd = order.succ(cr.seg[1]) == cr.seg[3];
        int inferred = fwd ? 1 : 3;
        if (inferred != cr.overIn) out << ":" << cr.overIn;
    }
    return out.str();
}

LinkDiagram canonical_labels(const LinkDiagram& L, std::map<int, int>* oldToNew,
                             int pinSegment, int pinLabel) {
    // oriented components as cyclic segment-id lists
    std::map<int, int> nextSeg;  // successor along the strand
    for (auto& s : L.segments) {
        auto& cr = L.crossings[s.headCrossing];
        nextSeg[s.id] = cr.seg[(s.headSlot + 2) % 4];
    }
    std::set<int> seen;
    std::vector<std::vector<int>> comps;
    for (auto& s : L.segments) {
        if (seen.count(s.id)) continue;
        std::vector<int> cyc;
        int cur = s.id;
        do {
            cyc.push_back(cur);
            seen.insert(cur);
            cur = nextSeg[cur];
        } while (cur != s.id);
        comps.push_back(cyc);
    }

    auto labelWith = [&](const std::vector<int>& perm,
                         const std::vector<int>& rots) -> std::map<int, int> {
        std::map<int, int> map;
        int next = 1;
        for (size_t p = 0; p < perm.size(); ++p) {
            auto& cyc = comps[perm[p]];
            int rot = rots[perm[p]];
            for (size_t i = 0; i < cyc.size(); ++i)
                map[cyc[(rot + i) % cyc.size()]] = next++;
        }
        return map;
    };

    std::vector<int> perm(comps.size());
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<int> rots(comps.size(), 0);
    std::map<int, int> map;
    if (pinSegment < 0) {
        // components ordered by smallest id, each started at its smallest id
        std::sort(perm.begin(), perm.end(), [&](int a, int b) {
            return *std::min_element(comps[a].begin(), comps[a].end()) <
                   *std::min_element(comps[b].begin(), comps[b].end());
        });
        for (size_t ci = 0; ci < comps.size(); ++ci) {
            auto it = std::min_element(comps[ci].begin(), comps[ci].end());
            rots[ci] = (int)(it - comps[ci].begin());
        }
        map = labelWith(perm, rots);
    } else {
        std::sort(perm.begin(), perm.end());
        bool found = false;
        do {
            int base = 0;
            for (size_t p = 0; p < perm.size() && !found; ++p) {
                auto& cyc = comps[perm[p]];
                int pos = -1;
                for (size_t i = 0; i < cyc.size(); ++i)
                    if (cyc[i] == pinSegment) pos = (int)i;
                if (pos >= 0 && pinLabel > base && pinLabel <= base + (int)cyc.size()) {
                    for (size_t ci = 0; ci < comps.size(); ++ci) rots[ci] = 0;
                    // start so that pinSegment falls on pinLabel
                    rots[perm[p]] = (int)((pos - (pinLabel - base - 1) + cyc.size()) %
                                          cyc.size());
                    map = labelWith(perm, rots);
                    found = true;
                }
                base += (int)cyc.size();
            }
        } while (!found && std::next_permutation(perm.begin(), perm.end()));
        if (!found)
            fail(ErrorCode::MismatchReport,
                 "no component ordering puts segment " + std::to_string(pinSegment) +
                     " at label " + std::to_string(pinLabel));
    }

    std::vector<CrossingRec> crs = L.crossings;
    for (auto& cr : crs)
        for (int& s : cr.seg) s = map.at(s);
    // order crossings by their incoming under-segment (one per crossing)
    std::sort(crs.begin(), crs.end(),
              [](const CrossingRec& a, const CrossingRec& b) { return a.seg[0] < b.seg[0]; });
    if (oldToNew) *oldToNew = map;
    return build_diagram(std::move(crs));
}

DiagramCertificate validate_diagram(const LinkDiagram& L) {
    DiagramCertificate cert;
    int n = L.crossing_count();
    auto note = [&](const std::string& w) {
        if (cert.witness.empty()) cert.witness = w;
    };

    // connectivity of the 4-valent map
    Dsu dsu(n);
    for (auto& s : L.segments) dsu.unite(s.tailCrossing, s.headCrossing);
    cert.connected = true;
    for (int c = 1; c < n; ++c)
        if (dsu.find(c) != dsu.find(0)) cert.connected = false;
    if (!cert.connected) note("diagram is disconnected");

    cert.noCurl = true;
    for (int c = 0; c < n; ++c) {
        auto& cr = L.crossings[c];
        for (int a = 0; a < 4 && cert.noCurl; ++a)
            for (int b = a + 1; b < 4; ++b)
                if (cr.seg[a] == cr.seg[b]) {
                    cert.noCurl = false;
                    note("curl at crossing " + std::to_string(c));
                    break;
                }
    }

    // connectivity with pieces removed, on crossings
    auto connectedWithout = [&](int dropCrossing, int dropSegA, int dropSegB) {
        std::vector<int> comp(n, -1);
        int comps = 0;
        for (int c0 = 0; c0 < n; ++c0) {
            if (c0 == dropCrossing || comp[c0] != -1) continue;
            std::vector<int> stack{c0};
            comp[c0] = comps;
            while (!stack.empty()) {
                int c = stack.back();
                stack.pop_back();
                for (auto& s : L.segments) {
                    if (s.id == dropSegA || s.id == dropSegB) continue;
                    if (s.tailCrossing == dropCrossing || s.headCrossing == dropCrossing)
                        continue;
                    int o = -1;
                    if (s.tailCrossing == c) o = s.headCrossing;
                    if (s.headCrossing == c) o = s.tailCrossing;
                    if (o >= 0 && comp[o] == -1) {
                        comp[o] = comps;
                        stack.push_back(o);
                    }
                }
            }
            ++comps;
        }
        return comps <= 1;
    };

    cert.noNugatory = true;
    if (cert.connected && n >= 2)
        for (int c = 0; c < n && cert.noNugatory; ++c)
            if (!connectedWithout(c, -1, -1)) {
                cert.noNugatory = false;
                note("nugatory crossing " + std::to_string(c));
            }

    cert.primeLike = cert.connected;
    if (cert.connected)
        for (size_t a = 0; a < L.segments.size() && cert.primeLike; ++a)
            for (size_t b = a + 1; b < L.segments.size(); ++b)
                if (!connectedWithout(-1, L.segments[a].id, L.segments[b].id)) {
                    cert.primeLike = false;
                    note("2-segment cut {" + std::to_string(L.segments[a].id) + "," +
                         std::to_string(L.segments[b].id) + "}");
                    break;
                }
    return cert;
}

SegmentClass classify_segment(const LinkDiagram& L, int segId) {
    auto& s = L.segment(segId);
    bool underOut = s.tailSlot == 2;  // exits an undercrossing
    bool underIn = s.headSlot == 0;   // enters an undercrossing
    if (underOut && !underIn) return SegmentClass::UnderToOver;
    if (!underOut && underIn) return SegmentClass::OverToUnder;
    return SegmentClass::Same;
}

FaceCrossingGraph face_crossing_graph(const LinkDiagram& L) {
    int n = L.crossing_count(), R = L.region_count();
    std::vector<char> colors(n, 'b');
    colors.resize(n + R, 'w');
    std::vector<std::pair<int, int>> edges;
    for (int c = 0; c < n; ++c)
        for (int k = 0; k < 4; ++k) edges.push_back({c, n + L.regionOfCorner[c][k]});
    std::vector<std::vector<int>> orders(n + R);
    for (int c = 0; c < n; ++c) orders[c] = {4 * c, 4 * c + 1, 4 * c + 2, 4 * c + 3};
    for (int r = 0; r < R; ++r)
        for (auto& [c, k] : L.regionCorners[r]) orders[n + r].push_back(4 * c + k);

    FaceCrossingGraph out;
    out.g = build_graph_from_edge_orders(colors, edges, orders);
    out.nCrossings = n;
    for (int fi = 0; fi < (int)out.g.faces.size(); ++fi) {
        auto& f = out.g.faces[fi];
        if (f.boundary.size() != 4)
            fail(ErrorCode::MismatchReport, "face-crossing graph has a non-square face");
        int seg = -1;
        for (int h : f.boundary) {
            if (out.g.color[out.g.tail(h)] != 'b') continue;
            int e = h / 2;
            int s = L.crossings[e / 4].seg[e % 4];
            if (seg == -1) seg = s;
            if (seg != s)
                fail(ErrorCode::MismatchReport, "face spans two different segments");
        }
        out.faceOfSegment[seg] = f.label;
        out.segmentOfFace[f.label] = seg;
    }
    if ((int)out.faceOfSegment.size() != 2 * n)
        fail(ErrorCode::MismatchReport, "faces do not biject with segments");
    return out;
}

std::vector<TruncatedGraph> truncated_components(const LinkDiagram& L, int segId) {
    int n = L.crossing_count(), R = L.region_count();
    auto absent = L.segment_regions(segId);
    auto alive = [&](int c, int k) {
        int r = L.regionOfCorner[c][k];
        return r != absent[0] && r != absent[1];
    };

    Dsu dsu(n + R);
    for (int c = 0; c < n; ++c) {
        bool any = false;
        for (int k = 0; k < 4; ++k)
            if (alive(c, k)) {
                dsu.unite(c, n + L.regionOfCorner[c][k]);
                any = true;
            }
        if (!any)
            fail(ErrorCode::MismatchReport,
                 "crossing " + std::to_string(c) + " isolated by truncation");
    }

    std::map<int, int> compOf;  // dsu root -> component index
    for (int c = 0; c < n; ++c)
        if (!compOf.count(dsu.find(c))) {
            int id = (int)compOf.size();
            compOf[dsu.find(c)] = id;
        }

    std::vector<TruncatedGraph> comps(compOf.size());
    for (auto& [root, ci] : compOf) {
        auto& tg = comps[ci];
        std::vector<int> vid(n + R, -1);
        std::vector<char> colors;
        for (int c = 0; c < n; ++c)
            if (dsu.find(c) == root) {
                vid[c] = (int)colors.size();
                colors.push_back('b');
                tg.crossingOfBlack.push_back(c);
            }
        for (int r = 0; r < R; ++r)
            if (r != absent[0] && r != absent[1] && dsu.find(n + r) == root) {
                vid[n + r] = (int)colors.size();
                colors.push_back('w');
            }

        std::vector<std::pair<int, int>> edges;
        std::vector<std::vector<int>> orders(colors.size());
        std::map<std::pair<int, int>, int> edgeOfCorner;
        std::optional<int> hint;
        for (int c = 0; c < n; ++c) {
            if (dsu.find(c) != root) continue;
            for (int k = 0; k < 4; ++k) {
                if (!alive(c, k)) continue;
                int e = (int)edges.size();
                edges.push_back({vid[c], vid[n + L.regionOfCorner[c][k]]});
                orders[vid[c]].push_back(e);
                edgeOfCorner[{c, k}] = e;
                tg.cornerOfEdge.push_back({c, k});
                // the merged outer face sits in the gap left by a deleted corner
                if (!hint && !alive(c, (k + 3) % 4)) hint = 2 * e;
            }
        }
        for (int r = 0; r < R; ++r) {
            if (vid[n + r] < 0) continue;
            for (auto& [c, k] : L.regionCorners[r])
                if (alive(c, k)) orders[vid[n + r]].push_back(edgeOfCorner.at({c, k}));
        }
        tg.g = build_graph_from_edge_orders(colors, edges, orders, hint);

        for (int fi = 0; fi < (int)tg.g.faces.size(); ++fi) {
            if (tg.g.is_outer(fi)) continue;
            auto& f = tg.g.faces[fi];
            int seg = -1;
            for (int h : f.boundary) {
                if (tg.g.color[tg.g.tail(h)] != 'b') continue;
                auto [c, k] = tg.cornerOfEdge[h / 2];
                if (!alive(c, (k + 3) % 4))
                    fail(ErrorCode::MismatchReport, "inner face lost its slot gap");
                int s = L.crossings[c].seg[k];
                if (seg == -1) seg = s;
                if (seg != s)
                    fail(ErrorCode::MismatchReport, "inner face spans two segments");
            }
            tg.faceOfSegment[seg] = f.label;
            tg.segmentOfFace[f.label] = seg;
        }
    }
    return comps;
}

TruncatedGraph truncated_graph(const LinkDiagram& L, int segId) {
    auto comps = truncated_components(L, segId);
    if (comps.size() != 1)
        fail(ErrorCode::Disconnected,
             "truncated graph falls apart; use truncated_components");
    return std::move(comps[0]);
}

namespace {

// enumerate corner choices (crossing -> present region, bijectively) directly
// on the diagram, independent of any dimer machinery
void for_each_state(const LinkDiagram& L, const std::array<int, 2>& absent,
                    const std::function<void(const std::vector<int>&)>& visit) {
    int n = L.crossing_count();
    std::vector<char> used(L.region_count(), 0);
    used[absent[0]] = used[absent[1]] = 1;
    std::vector<int> choice(n, -1);
    std::function<void(int)> rec = [&](int c) {
        if (c == n) {
            visit(choice);
            return;
        }
        for (int k = 0; k < 4; ++k) {
            int r = L.regionOfCorner[c][k];
            if (used[r]) continue;
            used[r] = 1;
            choice[c] = k;
            rec(c + 1);
            used[r] = 0;
        }
        choice[c] = -1;
    };
    rec(0);
}

}  // namespace

LaurentPoly alexander_state_sum(const LinkDiagram& L, int segId) {
    auto tv = make_vars({"t"});
    auto poly = LaurentPoly::zero(tv);
    for_each_state(L, L.segment_regions(segId), [&](const std::vector<int>& choice) {
        int texp = 0, negs = 0, holes = 0;
        for (int c = 0; c < L.crossing_count(); ++c)
            accumulate_weight(L.crossings[c], choice[c], texp, negs, holes);
        poly.add_term({texp}, (negs + holes) % 2 ? -1 : 1);
    });
    return poly;
}

ClockLatticeReport kauffman_states(const LinkDiagram& L, int segId) {
    ClockLatticeReport rep;
    for_each_state(L, L.segment_regions(segId),
                   [&](const std::vector<int>&) { ++rep.stateCount; });

    auto comps = truncated_components(L, segId);
    int matchings = 1;
    int covers = 0;
    bool coversOk = true;
    for (auto& tg : comps) {
        auto m = build_dimer_model(tg.g);
        matchings *= (int)m.matchings.size();
        auto stateOf = [&](uint64_t M) {
            std::vector<int> st(L.crossing_count(), -1);
            for (size_t i = 0; i < m.edges.size(); ++i)
                if (M >> i & 1) {
                    auto [c, k] = tg.cornerOfEdge[m.edges[i]];
                    st[c] = L.regionOfCorner[c][k];
                }
            return st;
        };
        auto lat = build_lattice(m);
        covers += (int)lat.covers.size();
        for (auto& cov : lat.covers) {
            // a clock move transposes the regions at exactly two crossings
            auto lo = stateOf(lat.elements[cov.lower]), hi = stateOf(lat.elements[cov.upper]);
            std::vector<int> diff;
            for (int c = 0; c < L.crossing_count(); ++c)
                if (lo[c] != hi[c]) diff.push_back(c);
            if (diff.size() != 2 || lo[diff[0]] != hi[diff[1]] ||
                lo[diff[1]] != hi[diff[0]])
                coversOk = false;
        }
    }
    rep.matchingCount = matchings;
    rep.coverCount = covers;
    rep.isomorphic = rep.stateCount == rep.matchingCount && coversOk;

    nlohmann::json j;
    j["states"] = rep.stateCount;
    j["matchings"] = rep.matchingCount;
    j["covers"] = rep.coverCount;
    j["isomorphic"] = rep.isomorphic;
    rep.json = j.dump();
    return rep;
}

AlexanderReport alexander_from_dimer(const LinkDiagram& L, int segId) {
    auto tv = make_vars({"t"});
    auto comps = truncated_components(L, segId);
    LaurentPoly spec = LaurentPoly::constant(tv, 1);
    int texp0 = 0, negs0 = 0, holes0 = 0;
    for (auto& tg : comps) {
        auto m = build_dimer_model(tg.g);
        auto D = dimer_face_polynomial(m);
        std::vector<std::optional<RationalMono>> images(D.vars()->size());
        for (size_t vi = 0; vi < D.vars()->size(); ++vi) {
            int label = std::stoi(D.vars()->names[vi].substr(1));
            switch (classify_segment(L, tg.segmentOfFace.at(label))) {
                case SegmentClass::UnderToOver:
                    images[vi] = RationalMono{LaurentPoly::constant(tv, -1), {1}};
                    break;
                case SegmentClass::OverToUnder:
                    images[vi] = RationalMono{LaurentPoly::monomial(tv, {1}, -1), {0}};
                    break;
                case SegmentClass::Same:
                    images[vi] = RationalMono{LaurentPoly::constant(tv, -1), {0}};
                    break;
            }
        }
        spec = spec * substitute(D, images, tv);
        uint64_t M0 = minimal_matching(m);
        for (size_t i = 0; i < m.edges.size(); ++i)
            if (M0 >> i & 1) {
                auto [c, k] = tg.cornerOfEdge[m.edges[i]];
                accumulate_weight(L.crossings[c], k, texp0, negs0, holes0);
            }
    }
    auto w0 = LaurentPoly::monomial(tv, {texp0}, (negs0 + holes0) % 2 ? -1 : 1);

    AlexanderReport rep;
    rep.specialized = spec;
    rep.stateSum = alexander_state_sum(L, segId);
    rep.exact = spec * w0 == rep.stateSum;
    if (!rep.exact)
        fail(ErrorCode::SpecializationMismatch,
             "dimer specialization " + (spec * w0).to_string() + " != state sum " +
                 rep.stateSum.to_string());
    return rep;
}

LinkDiagram connect_sum(const LinkDiagram& L1, int i1, const LinkDiagram& L2, int i2) {
    if (L1.crossings.empty() || L2.crossings.empty())
        fail(ErrorCode::SegmentNotExterior, "summand has no crossings");
    auto check = [](const LinkDiagram& L, int i) {
        for (auto& s : L.segments)
            if (s.id == i) return;
        fail(ErrorCode::SegmentNotExterior, "unknown segment " + std::to_string(i));
    };
    check(L1, i1);
    check(L2, i2);

    int offset = 0;
    for (auto& s : L1.segments) offset = std::max(offset, s.id);
    std::vector<CrossingRec> crs = L1.crossings;
    for (auto& cr : L2.crossings) {
        CrossingRec c = cr;
        for (int& s : c.seg) s += offset;
        crs.push_back(c);
    }
    // splice: the arc out of i1's tail now runs into i2's old head, and vice
    // versa, so the two heads swap labels
    auto& s1 = L1.segment(i1);
    auto& s2 = L2.segment(i2);
    crs[s1.headCrossing].seg[s1.headSlot] = i2 + offset;
    crs[(int)L1.crossings.size() + s2.headCrossing].seg[s2.headSlot] = i1;
    return build_diagram(std::move(crs));
}

namespace {

// D with its face variables renamed to y<segment id>, in the given table
LaurentPoly segment_poly(const TruncatedGraph& tg, const VarTablePtr& target) {
    auto m = build_dimer_model(tg.g);
    auto D = dimer_face_polynomial(m);
    std::vector<std::optional<RationalMono>> images(D.vars()->size());
    Exp none((int)target->size(), 0);
    for (size_t vi = 0; vi < D.vars()->size(); ++vi) {
        int label = std::stoi(D.vars()->names[vi].substr(1));
        int idx = target->index("y" + std::to_string(tg.segmentOfFace.at(label)));
        if (idx < 0) fail(ErrorCode::VarTableMismatch, "segment variable missing");
        images[vi] = RationalMono{LaurentPoly::var(target, idx), none};
    }
    return substitute(D, images, target);
}

}  // namespace

ConnectSumReport connect_sum_check(const LinkDiagram& L1, int i1, const LinkDiagram& L2,
                                   int i2) {
    ConnectSumReport rep;
    auto joined = connect_sum(L1, i1, L2, i2);
    int offset = 0;
    for (auto& s : L1.segments) offset = std::max(offset, s.id);

    auto t1 = truncated_graph(L1, i1);
    // truncate the shifted copy of L2 so face labels carry shifted segment ids
    std::vector<CrossingRec> crs2 = L2.crossings;
    for (auto& cr : crs2)
        for (int& s : cr.seg) s += offset;
    auto L2s = build_diagram(std::move(crs2));
    auto t2 = truncated_graph(L2s, i2 + offset);

    auto comps = truncated_components(joined, i1);
    std::multiset<std::string> got, want{canonical_string(t1.g), canonical_string(t2.g)};
    for (auto& tg : comps) got.insert(canonical_string(tg.g));
    rep.graphsMatch = comps.size() == 2 && got == want;

    std::set<std::string> names;
    auto add = [&](const TruncatedGraph& tg) {
        for (auto& kv : tg.faceOfSegment) names.insert("y" + std::to_string(kv.first));
    };
    for (auto& tg : comps) add(tg);
    add(t1);
    add(t2);
    auto vars = make_vars({names.begin(), names.end()});
    auto lhs = LaurentPoly::constant(vars, 1);
    for (auto& tg : comps) lhs = lhs * segment_poly(tg, vars);
    auto rhs = segment_poly(t1, vars) * segment_poly(t2, vars);
    rep.polyFactors = lhs == rhs;

    std::ostringstream det;
    det << "components=" << comps.size() << " D=" << lhs.to_string();
    rep.detail = det.str();
    return rep;
}

LinkDiagram diagram_from_face_crossing(const PlaneBipartiteGraph& g) {
    std::vector<int> blacks;
    for (int v = 0; v < (int)g.color.size(); ++v) {
        if (!g.vertex_alive(v)) continue;
        if (g.color[v] == 'b') {
            if (g.degree(v) != 4)
                fail(ErrorCode::MalformedPD, "black vertex of degree != 4");
            blacks.push_back(v);
        }
    }
    int n = (int)blacks.size();
    std::map<int, int> crossingOf;
    for (int c = 0; c < n; ++c) crossingOf[blacks[c]] = c;

    // segment label in the gap before each rotation entry
    std::vector<std::array<int, 4>> gapSeg(n);
    std::vector<std::array<int, 4>> gapWhite(n);  // region after the gap
    for (int c = 0; c < n; ++c) {
        int v = blacks[c];
        for (int t = 0; t < 4; ++t) {
            int h = g.rot[v][t];
            gapSeg[c][t] = g.faces[g.faceOf[h]].label;
            gapWhite[c][t] = g.head[h];
        }
    }

    // checkerboard: the two whites of each (square) face get opposite shades
    std::map<int, int> shade;
    std::vector<std::vector<int>> adj;  // pairs of whites sharing a face
    for (auto& f : g.faces) {
        std::set<int> ws;
        for (int h : f.boundary)
            if (g.color[g.head[h]] == 'w') ws.insert(g.head[h]);
        if (f.boundary.size() != 4 || ws.size() != 2)
            fail(ErrorCode::MalformedPD, "not a face-crossing graph: non-square face");
        adj.push_back({*ws.begin(), *std::next(ws.begin())});
    }
    for (bool grew = true; grew;) {
        grew = false;
        for (auto& pr : adj) {
            bool h0 = shade.count(pr[0]), h1 = shade.count(pr[1]);
            if (!h0 && !h1 && shade.empty()) {
                shade[pr[0]] = 0;
                h0 = true;
            }
            if (h0 && !h1) {
                shade[pr[1]] = 1 - shade[pr[0]];
                grew = true;
            } else if (h1 && !h0) {
                shade[pr[0]] = 1 - shade[pr[1]];
                grew = true;
            } else if (h0 && h1 && shade[pr[0]] == shade[pr[1]]) {
                fail(ErrorCode::MalformedPD, "whites admit no checkerboard coloring");
            }
        }
    }

    // orient the strands: each gap is a segment end; opposite gaps are the
    // same strand passing through
    std::map<int, std::vector<std::pair<int, int>>> endsOf;
    for (int c = 0; c < n; ++c)
        for (int t = 0; t < 4; ++t) endsOf[gapSeg[c][t]].push_back({c, t});
    for (auto& [sid, ends] : endsOf)
        if (ends.size() != 2)
            fail(ErrorCode::MalformedPD, "face does not bound exactly two gaps");
    std::vector<std::array<int, 4>> outgoing(n, {-1, -1, -1, -1});
    for (int c0 = 0; c0 < n; ++c0)
        for (int t0 = 0; t0 < 4; ++t0) {
            if (outgoing[c0][t0] != -1) continue;
            int c = c0, t = t0;
            do {
                outgoing[c][t] = 1;
                auto& ends = endsOf[gapSeg[c][t]];
                auto other = ends[0] == std::make_pair(c, t) ? ends[1] : ends[0];
                outgoing[other.first][other.second] = 0;
                c = other.first;
                t = (other.second + 2) % 4;
            } while (!(c == c0 && t == t0));
        }

    std::vector<CrossingRec> crs(n);
    for (int c = 0; c < n; ++c) {
        // the under-strand passes through the gaps that precede shaded regions
        int d = shade.at(gapWhite[c][0]) == shade.begin()->second ? 0 : 1;
        int u = outgoing[c][d] ? d + 2 : d;  // its incoming end
        for (int k = 0; k < 4; ++k) crs[c].seg[k] = gapSeg[c][(u + k) % 4];
        crs[c].overIn = outgoing[c][(u + 1) % 4] ? 3 : 1;
    }
    auto L = build_diagram(std::move(crs));
    int whites = g.vertex_count() - n;
    if (L.region_count() != whites)
        fail(ErrorCode::MismatchReport, "rebuilt diagram has the wrong region count");
    return L;
}

// Flat layout of the birdwing flock for C(alpha): birdwings in a row, blacks
// c_{j,t} left to right, odd-index birdwings pointing down (hub above the
// blacks, enclosed whites below) and even ones up.  Each junction carries two
// edges: hub_j to the near black of birdwing j+1 and hub_{j+1} to the near
// black of birdwing j.
PlaneBipartiteGraph flock_graph(const std::vector<int>& alpha) {
    if (alpha.empty()) fail(ErrorCode::EmptyAlpha, "alpha must be nonempty");
    for (int a : alpha)
        if (a < 1) fail(ErrorCode::EmptyAlpha, "alpha entries must be >= 1");
    int m = (int)alpha.size();
    int total = std::accumulate(alpha.begin(), alpha.end(), 0);

    std::vector<int> blackBase(m + 1);
    for (int j = 1; j <= m; ++j) blackBase[j] = (j == 1 ? 0 : blackBase[j - 1] + alpha[j - 2]);
    auto black = [&](int j, int t) { return blackBase[j] + t; };
    std::vector<char> colors(total, 'b');
    std::vector<int> hub(m + 1);
    for (int j = 1; j <= m; ++j) {
        hub[j] = (int)colors.size();
        colors.push_back('w');
    }
    std::map<std::pair<int, int>, int> wing;  // enclosed whites w_{j,t}, t = 1..k_j
    for (int j = 1; j <= m; ++j)
        for (int t = 1; t < alpha[j - 1]; ++t) {
            wing[{j, t}] = (int)colors.size();
            colors.push_back('w');
        }

    auto down = [&](int j) { return j % 2 == 1; };
    // the neighbor past c_{j,t} on each side: an enclosed white, or the far
    // hub across the junction at the end of the birdwing
    auto leftOf = [&](int j, int t) {
        if (t > 0) return wing.at({j, t});
        return j > 1 ? hub[j - 1] : -1;
    };
    auto rightOf = [&](int j, int t) {
        if (t < alpha[j - 1] - 1) return wing.at({j, t + 1});
        return j < m ? hub[j + 1] : -1;
    };
    // ccw rotations: down blacks (hub, left, right), up blacks (hub, right, left)
    auto blackRot = [&](int j, int t) {
        std::vector<int> r{hub[j]};
        if (down(j)) {
            if (leftOf(j, t) >= 0) r.push_back(leftOf(j, t));
            if (rightOf(j, t) >= 0) r.push_back(rightOf(j, t));
        } else {
            if (rightOf(j, t) >= 0) r.push_back(rightOf(j, t));
            if (leftOf(j, t) >= 0) r.push_back(leftOf(j, t));
        }
        return r;
    };
    // hubs see their row left to right when above it, right to left when below
    std::map<int, std::vector<int>> whiteRot;
    for (int j = 1; j <= m; ++j) {
        auto& wr = whiteRot[hub[j]];
        int k = alpha[j - 1] - 1;
        if (down(j)) {
            if (j > 1) wr.push_back(black(j - 1, alpha[j - 2] - 1));
            for (int t = 0; t <= k; ++t) wr.push_back(black(j, t));
            if (j < m) wr.push_back(black(j + 1, 0));
        } else {
            if (j < m) wr.push_back(black(j + 1, 0));
            for (int t = k; t >= 0; --t) wr.push_back(black(j, t));
            if (j > 1) wr.push_back(black(j - 1, alpha[j - 2] - 1));
        }
    }
    for (auto& [jt, w] : wing) {
        auto [j, t] = jt;
        whiteRot[w] = {black(j, t - 1), black(j, t)};
    }

    // realize edges; no black-white pair repeats, so (black, white) is a key
    std::vector<std::pair<int, int>> edges;
    std::map<std::pair<int, int>, int> edgeAt;
    std::vector<std::vector<int>> orders(colors.size());
    for (int j = 1; j <= m; ++j)
        for (int t = 0; t < alpha[j - 1]; ++t) {
            int b = black(j, t);
            for (int w : blackRot(j, t)) {
                int e = (int)edges.size();
                edges.push_back({b, w});
                orders[b].push_back(e);
                edgeAt[{b, w}] = e;
            }
        }
    for (auto& [w, wr] : whiteRot)
        for (int b : wr) orders[w].push_back(edgeAt.at({b, w}));

    // the outer face borders the edge from the leftmost black up to hub_1, on
    // the side away from the first square
    int outerHint = 2 * edgeAt.at({black(1, 0), hub[1]}) + 1;
    return build_graph_from_edge_orders(colors, edges, orders, outerHint);
}

TwoBridge two_bridge(const std::vector<int>& alpha) {
    if (alpha.empty()) fail(ErrorCode::EmptyAlpha, "alpha must be nonempty");
    for (int a : alpha)
        if (a < 1) fail(ErrorCode::EmptyAlpha, "alpha entries must be >= 1");

    // Plat form: four wires (0 top .. 3 bottom), twist regions left to right,
    // odd-position entries twisting wires (1,2), even ones (0,1).  Wire 3 never
    // crosses anything; it carries the lower segment.
    std::vector<int> parent(2, 0);
    parent[1] = 1;
    std::function<int(int)> find = [&](int x) {
        return parent[x] == x ? x : parent[x] = find(parent[x]);
    };
    auto fresh = [&] {
        parent.push_back((int)parent.size());
        return (int)parent.size() - 1;
    };
    parent.clear();
    int A = fresh(), B = fresh();
    std::array<int, 4> cur{A, A, B, B};
    std::vector<std::array<int, 4>> ports;  // ccw: E-top, W-top, W-bottom, E-bottom
    for (size_t j = 0; j < alpha.size(); ++j) {
        int a = j % 2 == 0 ? 1 : 0;
        for (int t = 0; t < alpha[j]; ++t) {
            int e1 = fresh(), e2 = fresh();
            ports.push_back({e1, cur[a], cur[a + 1], e2});
            cur[a] = e1;
            cur[a + 1] = e2;
        }
    }
    if (alpha.size() % 2 == 1) {  // caps (0,1) and (2,3) on the right
        parent[find(cur[0])] = find(cur[1]);
        parent[find(cur[2])] = find(cur[3]);
    } else {  // cap (1,2); wire 0 wraps around to wire 3
        parent[find(cur[1])] = find(cur[2]);
        parent[find(cur[0])] = find(cur[3]);
    }
    int n = (int)ports.size();
    for (auto& p : ports)
        for (int& s : p) s = find(s);
    int lowerLabel = find(B);

    // trace the regions of the 4-valent map (same walk as build_diagram)
    std::map<int, std::vector<std::pair<int, int>>> occ;
    for (int c = 0; c < n; ++c)
        for (int k = 0; k < 4; ++k) occ[ports[c][k]].push_back({c, k});
    for (auto& [sid, ends] : occ)
        if (ends.size() != 2)
            fail(ErrorCode::MismatchReport, "plat segment without two ends");
    std::vector<std::array<int, 4>> regionOfCorner(n, {-1, -1, -1, -1});
    std::vector<std::vector<std::pair<int, int>>> regionCorners;
    std::map<std::pair<int, int>, int> seenEndFrom;  // (c, k) -> region, as arrival
    for (int c0 = 0; c0 < n; ++c0)
        for (int k0 = 0; k0 < 4; ++k0) {
            if (seenEndFrom.count({c0, k0})) continue;
            int r = (int)regionCorners.size();
            regionCorners.emplace_back();
            int c = c0, k = k0;
            do {
                seenEndFrom[{c, k}] = r;
                int corner = (k + 3) % 4;
                regionOfCorner[c][corner] = r;
                regionCorners[r].push_back({c, corner});
                auto& ends = occ[ports[c][corner]];
                auto other =
                    ends[0] == std::make_pair(c, corner) ? ends[1] : ends[0];
                c = other.first;
                k = other.second;
            } while (!(c == c0 && k == k0));
        }
    if ((int)regionCorners.size() != n + 2)
        fail(ErrorCode::MismatchReport, "plat regions do not close up");

    // face-crossing graph of the plat; its faces are the plat segments
    int R = (int)regionCorners.size();
    std::vector<char> colors(n, 'b');
    colors.resize(n + R, 'w');
    std::vector<std::pair<int, int>> edges;
    for (int c = 0; c < n; ++c)
        for (int k = 0; k < 4; ++k) edges.push_back({c, n + regionOfCorner[c][k]});
    std::vector<std::vector<int>> orders(n + R);
    for (int c = 0; c < n; ++c) orders[c] = {4 * c, 4 * c + 1, 4 * c + 2, 4 * c + 3};
    for (int r = 0; r < R; ++r)
        for (auto& [c, k] : regionCorners[r]) orders[n + r].push_back(4 * c + k);
    auto g = build_graph_from_edge_orders(colors, edges, orders);

    // the face holding the lower plat segment, via the gap rule
    int lowerRaw = -1;
    for (int c = 0; c < n && lowerRaw < 0; ++c)
        for (int k = 0; k < 4; ++k)
            if (ports[c][k] == lowerLabel) {
                lowerRaw = g.faces[g.faceOf[g.black_halfedge(4 * c + k)]].label;
                break;
            }
    if (lowerRaw < 0) fail(ErrorCode::MismatchReport, "lower segment not found");

    auto raw = diagram_from_face_crossing(g);
    TwoBridge out;
    std::map<int, int> map;
    out.diagram = canonical_labels(raw, &map);
    out.lowerSegment = map.at(lowerRaw);
    return out;
}

std::string snake_sign_sequence(const std::vector<int>& alpha) {
    if (alpha.empty()) fail(ErrorCode::EmptyAlpha, "alpha must be nonempty");
    std::string s;
    for (size_t j = 0; j < alpha.size(); ++j) {
        if (alpha[j] < 1) fail(ErrorCode::EmptyAlpha, "alpha entries must be >= 1");
        s.append(alpha[j], j % 2 == 0 ? '-' : '+');
    }
    return s;
}

PlaneBipartiteGraph snake_graph(const std::vector<int>& alpha) {
    std::string signs = snake_sign_sequence(alpha);
    int d = (int)signs.size() - 1;  // number of boxes
    if (d == 0)  // a single crossing leaves nothing but one edge
        return build_graph({'b', 'w'}, {{0, 1}}, {{0}, {1}});

    // place boxes; the labeled edge of box j carries sign s_j
    enum { BOTTOM, LEFT };
    std::vector<std::pair<int, int>> boxes{{0, 0}};
    int labeled = BOTTOM;
    for (int j = 1; j < d; ++j) {
        auto [x, y] = boxes.back();
        bool change = signs[j] != signs[j - 1];
        if (labeled == BOTTOM) {
            if (change) {
                boxes.push_back({x, y + 1});  // glue above, labeled edge stays bottom
            } else {
                boxes.push_back({x + 1, y});
                labeled = LEFT;
            }
        } else {
            if (change) {
                boxes.push_back({x + 1, y});  // glue right, labeled edge stays left
            } else {
                boxes.push_back({x, y + 1});
                labeled = BOTTOM;
            }
        }
    }

    std::map<std::pair<int, int>, int> vid;
    std::vector<char> colors;
    auto vertex = [&](int x, int y) {
        auto it = vid.find({x, y});
        if (it != vid.end()) return it->second;
        int v = (int)colors.size();
        vid[{x, y}] = v;
        colors.push_back((x + y) % 2 == 0 ? 'w' : 'b');
        return v;
    };
    std::set<std::pair<std::pair<int, int>, std::pair<int, int>>> sides;
    for (auto [x, y] : boxes) {
        sides.insert({{x, y}, {x + 1, y}});
        sides.insert({{x, y + 1}, {x + 1, y + 1}});
        sides.insert({{x, y}, {x, y + 1}});
        sides.insert({{x + 1, y}, {x + 1, y + 1}});
    }
    std::vector<std::pair<int, int>> edges;
    std::map<int, std::array<int, 4>> slots;  // per vertex: E, N, W, S edge ids
    for (auto& [a, b] : sides) {
        int u = vertex(a.first, a.second), v = vertex(b.first, b.second);
        int e = (int)edges.size();
        edges.push_back(colors[u] == 'b' ? std::make_pair(u, v) : std::make_pair(v, u));
        auto& su = slots.try_emplace(u, std::array<int, 4>{-1, -1, -1, -1}).first->second;
        auto& sv = slots.try_emplace(v, std::array<int, 4>{-1, -1, -1, -1}).first->second;
        if (b.first == a.first + 1) {  // horizontal
            su[0] = e;  // east of u
            sv[2] = e;  // west of v
        } else {
            su[1] = e;  // north of u
            sv[3] = e;  // south of v
        }
    }
    std::vector<std::vector<int>> orders(colors.size());
    for (auto& [v, sl] : slots)
        for (int dir = 0; dir < 4; ++dir)  // E, N, W, S is ccw
            if (sl[dir] >= 0) orders[v].push_back(sl[dir]);

    // outer face: the one below the bottom edge of the first box, across from
    // the box itself
    int bottomEdge = slots.at(vid.at({0, 0}))[0];
    return build_graph_from_edge_orders(colors, edges, orders, 2 * bottomEdge + 1);
}

namespace {

// vertex order of a quiver whose underlying graph is a simple path
std::optional<std::vector<int>> path_order(const Quiver& q) {
    int n = q.n;
    if (n == 0) return std::vector<int>{};
    std::vector<std::vector<int>> adj(n);
    int pairs = 0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (q.b[i][j] != 0) {
                if (std::abs(q.b[i][j]) > 1) return std::nullopt;
                adj[i].push_back(j);
                adj[j].push_back(i);
                ++pairs;
            }
    if (pairs != n - 1) return std::nullopt;
    for (int i = 0; i < n; ++i)
        if (adj[i].size() > 2) return std::nullopt;
    int start = 0;
    for (int i = 0; i < n; ++i)
        if (adj[i].size() <= 1) start = i;
    std::vector<int> order{start};
    std::vector<char> seen(n, 0);
    seen[start] = 1;
    while ((int)order.size() < n) {
        bool moved = false;
        for (int nb : adj[order.back()])
            if (!seen[nb]) {
                order.push_back(nb);
                seen[nb] = 1;
                moved = true;
                break;
            }
        if (!moved) return std::nullopt;  // disconnected
    }
    return order;
}

}  // namespace

FlockSnakeReport flock_snake_equivalence(const std::vector<int>& alpha) {
    FlockSnakeReport rep;
    auto gF = flock_graph(alpha);
    auto gS = snake_graph(alpha);
    if (canonical_string(contract_all(gF)) != canonical_string(contract_all(gS))) {
        rep.detail = "contracted normal forms differ";
        fail(ErrorCode::MismatchReport, rep.detail);
    }
    auto mF = build_dimer_model(gF);
    auto mS = build_dimer_model(gS);
    rep.matchingCount = (int)mF.matchings.size();
    if (mF.matchings.size() != mS.matchings.size()) {
        rep.detail = "matching counts differ";
        fail(ErrorCode::MismatchReport, rep.detail);
    }

    auto qF = dual_quiver(gF), qS = dual_quiver(gS);
    auto pF = path_order(qF), pS = path_order(qS);
    if (!pF || !pS) {
        rep.detail = "a dual quiver is not an orientation of a path";
        fail(ErrorCode::MismatchReport, rep.detail);
    }

    int r = (int)mF.innerLabels.size();
    auto heightsAndCovers = [&](const DimerModel& m, const std::vector<int>& perm) {
        // heights permuted into the other model's label order
        std::multiset<std::vector<int>> hs;
        std::vector<std::vector<int>> byIndex;
        for (uint64_t M : m.matchings) {
            auto h = height(m, M);
            std::vector<int> v(r);
            for (int a = 0; a < r; ++a) v[a] = h[perm[a]];
            hs.insert(v);
            byIndex.push_back(v);
        }
        auto lat = build_lattice(m);
        std::multiset<std::pair<std::vector<int>, int>> cov;
        for (auto& c : lat.covers) cov.insert({byIndex[c.lower], c.faceLabel});
        return std::make_pair(hs, cov);
    };

    std::vector<int> idPerm(r);
    std::iota(idPerm.begin(), idPerm.end(), 0);
    auto [hF, covF0] = heightsAndCovers(mF, idPerm);
    auto indexOf = [](const std::vector<int>& v, int x) {
        return (int)(std::find(v.begin(), v.end(), x) - v.begin());
    };
    for (int dir = 0; dir < 2; ++dir) {
        std::map<int, int> bij;  // flock face label -> snake face label
        for (int i = 0; i < (int)pF->size(); ++i) {
            int si = dir ? (int)pS->size() - 1 - i : i;
            bij[qF.labels[(*pF)[i]]] = qS.labels[(*pS)[si]];
        }
        std::vector<int> perm(r);
        for (int a = 0; a < r; ++a)
            perm[a] = indexOf(mS.innerLabels, bij.at(mF.innerLabels[a]));
        auto [hS, covS] = heightsAndCovers(mS, perm);
        // map snake cover faces back to flock labels
        std::map<int, int> inv;
        for (auto& [f, s] : bij) inv[s] = f;
        std::multiset<std::pair<std::vector<int>, int>> covS2;
        for (auto& [h, f] : covS) covS2.insert({h, inv.at(f)});
        if (hF == hS && covF0 == covS2) {
            rep.ok = true;
            rep.reversed = dir == 1;
            rep.detail = "lattice isomorphism along the path order";
            return rep;
        }
    }
    rep.detail = "no path-order bijection matches the lattices";
    fail(ErrorCode::MismatchReport, rep.detail);
}

LinkClusterReport link_cluster_check(const LinkDiagram& L, int depthCap) {
    LinkClusterReport rep;
    auto GL = face_crossing_graph(L);
    auto qext = extended_dual_quiver(GL.g);
    rep.ok = true;

    for (auto& sg : L.segments) {
        SegmentClusterCheck item;
        item.segment = sg.id;
        auto tg = truncated_graph(L, sg.id);
        auto model = build_dimer_model(tg.g);
        auto D = dimer_face_polynomial(model);
        int fiLabel = GL.faceOfSegment.at(sg.id);

        auto rs = find_reduction_sequence(tg.g, depthCap);
        if (rs.faces.empty()) {
            // one-crossing truncations have nothing to mutate; D must be 1
            item.fMatch = item.gMatch = item.expansionMatch = item.dMatch = D.is_one();
            rep.segments.push_back(item);
            rep.ok = rep.ok && item.all();
            continue;
        }
        for (int f : rs.faces)
            item.sequence.push_back(GL.faceOfSegment.at(tg.segmentOfFace.at(f)));

        auto sd = mutate_seed_by_labels(framed_seed(qext), item.sequence);
        int v = sd.quiver.indexOfLabel(item.sequence.back());

        // F-polynomial against D, renamed through segments to G_L face labels
        auto F = f_polynomial(sd, v);
        std::vector<std::optional<RationalMono>> images(D.vars()->size());
        Exp none((int)F.vars()->size(), 0);
        for (size_t vi = 0; vi < D.vars()->size(); ++vi) {
            int label = std::stoi(D.vars()->names[vi].substr(1));
            int gl = GL.faceOfSegment.at(tg.segmentOfFace.at(label));
            int idx = F.vars()->index("y" + std::to_string(gl));
            images[vi] = RationalMono{LaurentPoly::var(F.vars(), idx), none};
        }
        item.fMatch = substitute(D, images, F.vars()) == F;

        // g-vector = h over all G_L faces at the bottom matching, minus e_{f_i}
        uint64_t M0 = minimal_matching(model);
        std::set<std::pair<int, int>> matched;
        for (size_t i = 0; i < model.edges.size(); ++i)
            if (M0 >> i & 1) matched.insert(tg.cornerOfEdge[model.edges[i]]);
        auto hOf = [&](int faceLabel, const std::set<std::pair<int, int>>& mset) {
            int fi = GL.g.face_index_of_label(faceLabel);
            int cnt = 0;
            for (int e : GL.g.face_edges(fi))
                if (mset.count({e / 4, e % 4})) ++cnt;
            return 1 - cnt;
        };
        auto gv = g_vector(sd, v);
        item.gMatch = true;
        for (int a = 0; a < (int)qext.labels.size(); ++a) {
            int want = hOf(qext.labels[a], matched) - (qext.labels[a] == fiLabel);
            if (gv[a] != want) item.gMatch = false;
        }

        // expansion: z at y = 1 is the matching generating function
        std::vector<std::string> xnames;
        for (int lb : qext.labels) xnames.push_back("x" + std::to_string(lb));
        auto xv = make_vars(xnames);
        std::vector<std::optional<RationalMono>> toOne(sd.vars->size());
        Exp xnone((int)xv->size(), 0);
        for (size_t vi = 0; vi < sd.vars->size(); ++vi)
            if (sd.vars->names[vi][0] == 'y')
                toOne[vi] = RationalMono{LaurentPoly::constant(xv, 1), xnone};
        auto zfree = substitute(sd.cluster[v], toOne, xv);
        auto expect = LaurentPoly::zero(xv);
        for (uint64_t M : model.matchings) {
            std::set<std::pair<int, int>> ms;
            for (size_t i = 0; i < model.edges.size(); ++i)
                if (M >> i & 1) ms.insert(tg.cornerOfEdge[model.edges[i]]);
            Exp e((int)qext.labels.size(), 0);
            for (int a = 0; a < (int)qext.labels.size(); ++a)
                e[a] = hOf(qext.labels[a], ms) - (qext.labels[a] == fiLabel);
            expect.add_term(e, 1);
        }
        item.expansionMatch = zfree == expect;

        // d-vector: 0 exactly on faces sharing a white with f_i
        auto whitesOf = [&](int faceLabel) {
            std::set<int> ws;
            int fi = GL.g.face_index_of_label(faceLabel);
            for (int h : GL.g.faces[fi].boundary)
                if (GL.g.color[GL.g.head[h]] == 'w') ws.insert(GL.g.head[h]);
            return ws;
        };
        auto wsI = whitesOf(fiLabel);
        auto mins = zfree.min_exponents();
        item.dMatch = true;
        for (int a = 0; a < (int)qext.labels.size(); ++a) {
            auto ws = whitesOf(qext.labels[a]);
            bool shares = false;
            for (int w : ws) shares = shares || wsI.count(w);
            if (-mins[a] != (shares ? 0 : 1)) item.dMatch = false;
        }

        rep.segments.push_back(item);
        rep.ok = rep.ok && item.all();
    }
    if (!rep.ok) fail(ErrorCode::MismatchReport, "link cluster check failed");
    return rep;
}

}  // namespace dimerlab
