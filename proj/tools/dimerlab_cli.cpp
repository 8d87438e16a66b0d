// dimerlab: dimer polynomials, Alexander polynomials, cluster mutation, and
// verification suites from the command line.  Machine JSON goes to stdout,
// human-readable notes to stderr; dimerlab::Error codes become exit codes.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "dimerlab/cluster.hpp"
#include "dimerlab/dimer.hpp"
#include "dimerlab/generate.hpp"
#include "dimerlab/graph.hpp"
#include "dimerlab/io.hpp"
#include "dimerlab/link.hpp"
#include "dimerlab/plabic.hpp"
#include "dimerlab/polytope.hpp"
#include "dimerlab/quiver.hpp"

using namespace dimerlab;
using nlohmann::json;

namespace {

std::vector<int> parse_int_list(const std::string& s) {
    std::vector<int> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) continue;
        try {
            out.push_back(std::stoi(tok));
        } catch (const std::exception&) {
            fail(ErrorCode::MalformedInput, "bad integer list: " + s);
        }
    }
    return out;
}

// File path if it exists, otherwise the argument is taken as inline text.
std::string load_text(const std::string& arg) {
    if (std::ifstream(arg).good()) return read_file(arg);
    return arg;
}

json poly_json(const LaurentPoly& p) { return p.to_string(); }

// ---- dimer-poly ------------------------------------------------------------

int cmd_dimer_poly(const std::string& file, const std::string& format) {
    auto g = graph_from_json(read_file(file));
    auto m = build_dimer_model(g);
    auto D = dimer_face_polynomial(m);
    if (D != dimer_face_polynomial_by_chains(m))
        fail(ErrorCode::MismatchReport, "chain route disagrees with height route");
    if (edge_substitution(m, D) != partition_function(m))
        fail(ErrorCode::MismatchReport, "edge substitution disagrees with Z");
    auto lat = build_lattice(m);
    if (format == "dot") {
        std::cout << lattice_to_dot(m, lat);
        return 0;
    }
    if (format == "json") {
        json j;
        j["polynomial"] = D.to_string();
        j["terms"] = D.term_count();
        j["innerFaces"] = m.innerLabels;
        j["matchings"] = m.matchings.size();
        j["covers"] = lat.covers.size();
        j["lattice"] = json::parse(lattice_to_json(m, lat));
        std::cout << j.dump(2) << "\n";
        return 0;
    }
    std::cout << D.to_string() << "\n";
    std::cerr << m.matchings.size() << " matchings, " << lat.covers.size()
              << " covers, " << m.innerLabels.size() << " inner faces\n";
    return 0;
}

// ---- alexander -------------------------------------------------------------

int cmd_alexander(const std::string& input, int segment, const std::string& method,
                  const std::string& format) {
    auto L = parse_pd(load_text(input));
    json j;
    j["segment"] = segment;
    j["method"] = method;
    LaurentPoly primary;
    if (method == "statesum") {
        primary = alexander_state_sum(L, segment);
        j["stateSum"] = poly_json(primary);
    } else {
        auto rep = alexander_from_dimer(L, segment);
        primary = rep.specialized;
        j["dimer"] = poly_json(rep.specialized);
        j["exact"] = rep.exact;
        if (method == "both") {
            j["stateSum"] = poly_json(rep.stateSum);
            int t = rep.specialized.vars()->index("t");
            auto u = equal_up_to_unit(rep.specialized, rep.stateSum, t);
            j["unit"] = {{"equal", u.equal}, {"sign", u.sign}, {"shift", u.shift}};
            std::cerr << "state sum = " << (u.sign < 0 ? "-" : "") << "t^" << u.shift
                      << " * dimer\n";
        }
    }
    if (format == "json") {
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << primary.to_string() << "\n";
    }
    return 0;
}

// ---- mutate ----------------------------------------------------------------

int cmd_mutate(const std::string& file, const std::string& seqText,
               const std::string& format) {
    auto q = quiver_from_json(read_file(file));
    auto s = mutate_seed_by_labels(framed_seed(q), parse_int_list(seqText));
    json jf = json::object(), jg = json::object();
    for (int v = 0; v < s.quiver.nMutable; ++v) {
        int label = s.quiver.labels[v];
        auto F = f_polynomial(s, v);
        auto gv = g_vector(s, v);
        jf[std::to_string(label)] = F.to_string();
        jg[std::to_string(label)] = gv;
        if (format == "text") {
            std::cout << "label " << label << ": F = " << F.to_string() << ", g = (";
            for (size_t i = 0; i < gv.size(); ++i)
                std::cout << gv[i] << (i + 1 < gv.size() ? "," : "");
            std::cout << ")\n";
        }
    }
    if (format == "json") {
        json j = {{"sequence", parse_int_list(seqText)}, {"F", jf}, {"g", jg}};
        std::cout << j.dump(2) << "\n";
    }
    return 0;
}

// ---- plabic-twist ----------------------------------------------------------

int cmd_plabic_twist(const std::string& file, const std::string& boundary,
                     int depthCap, const std::string& format) {
    auto G = plabic_from_json(read_file(file));
    auto J = parse_int_list(boundary);
    auto rep = verify_plucker_cluster_monomial(G, J, depthCap);
    if (!rep.ok) fail(ErrorCode::MismatchReport, rep.detail);
    json j;
    j["boundary"] = J;
    j["vanishing"] = rep.vanishing;
    j["uniqueMatching"] = rep.uniqueMatching;
    j["twist"] = poly_json(rep.twist.laurent);
    j["bdMonomial"] = poly_json(rep.twist.bdMonomial);
    auto& facs = j["clusterFactors"] = json::array();
    for (const auto& [z, mult] : rep.twist.clusterFactors)
        facs.push_back({{"variable", z.to_string()}, {"multiplicity", mult}});
    j["frozenFactor"] = poly_json(rep.twist.frozenFactor);
    if (format == "json") {
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << rep.twist.laurent.to_string() << "\n";
        std::cerr << "cluster factors: " << rep.twist.clusterFactors.size()
                  << ", frozen part " << rep.twist.frozenFactor.to_string()
                  << (rep.vanishing ? ", vanishing" : "") << "\n";
    }
    return 0;
}

// ---- two-bridge ------------------------------------------------------------

int cmd_two_bridge(const std::string& alphaText, const std::string& format) {
    auto alpha = parse_int_list(alphaText);
    auto tb = two_bridge(alpha);
    auto clock = kauffman_states(tb.diagram, tb.lowerSegment);
    auto alex = alexander_from_dimer(tb.diagram, tb.lowerSegment);
    auto fs = flock_snake_equivalence(alpha);
    if (!clock.isomorphic || !fs.ok)
        fail(ErrorCode::MismatchReport, "clock or flock/snake check failed");
    json j;
    j["alpha"] = alpha;
    j["pd"] = pd_string(tb.diagram);
    j["lowerSegment"] = tb.lowerSegment;
    j["states"] = clock.stateCount;
    j["covers"] = clock.coverCount;
    j["alexander"] = poly_json(alex.specialized);
    j["flockSnake"] = fs.ok;
    if (format == "json") {
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << pd_string(tb.diagram) << "\n";
        std::cerr << "lower segment " << tb.lowerSegment << ", " << clock.stateCount
                  << " states, Alexander " << alex.specialized.to_string() << "\n";
    }
    return 0;
}

// ---- verify ----------------------------------------------------------------

const char* kBigExample =
    R"({"edges":[[0,1,3,4],[2,3,12,13],[4,5,8,9],[6,7,0,4],[8,9,3,9],[10,11,5,1],[12,13,8,2],[14,15,0,2],[16,17,3,2],[18,19,7,1],[20,21,5,13],[22,23,7,6],[24,25,12,4],[26,27,11,2],[28,29,0,6],[30,31,8,9],[32,33,11,10],[34,35,3,10]],"outer":1,"rotations":{"0":[28,6,14],"1":[19,11],"10":[35,33],"11":[26,32],"12":[24,2],"13":[21,3],"2":[27,17,15,13],"3":[34,8,0,16],"4":[1,7,25],"5":[20,10],"6":[29,23],"7":[18,22],"8":[30,12,4],"9":[9,31,5]},"vertices":[{"color":"b","id":0},{"color":"w","id":1},{"color":"w","id":2},{"color":"b","id":3},{"color":"w","id":4},{"color":"b","id":5},{"color":"w","id":6},{"color":"b","id":7},{"color":"b","id":8},{"color":"w","id":9},{"color":"w","id":10},{"color":"b","id":11},{"color":"b","id":12},{"color":"w","id":13}]})";

const char* kTrefoil = "X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]";
const char* kHopf = "X[1,4,2,3]:3 X[4,1,3,2]:3";

PlabicGraph fixture_gr24() {
    return build_plabic(4, "bwbwww",
                        {{4, 5}, {5, 6}, {6, 7}, {7, 4}, {4, 8}, {8, 0}, {5, 1}, {6, 9}, {9, 2}, {7, 3}},
                        {{3, 4, 0}, {1, 0, 6}, {7, 2, 1}, {9, 3, 2}, {4, 5}, {7, 8}}, true);
}

PlabicGraph fixture_gr25() {
    return build_plabic(5, "bwbwbwww",
                        {{5, 6}, {6, 9}, {9, 8}, {8, 5}, {6, 7}, {7, 10}, {10, 9}, {5, 11}, {11, 0}, {8, 1}, {10, 2}, {7, 12}, {12, 3}, {6, 4}},
                        {{0, 7, 3}, {4, 13, 0, 1}, {11, 4, 5}, {2, 3, 9}, {6, 1, 2}, {5, 6, 10}, {7, 8}, {11, 12}}, true);
}

struct SuiteReport {
    json checks = json::array();
    bool allOk = true;
    void add(const std::string& name, bool ok, const std::string& detail = "") {
        json c = {{"check", name}, {"ok", ok}};
        if (!detail.empty()) c["detail"] = detail;
        checks.push_back(c);
        allOk = allOk && ok;
        if (!ok) std::cerr << "FAIL " << name << (detail.empty() ? "" : ": " + detail) << "\n";
    }
};

std::vector<PlaneBipartiteGraph> corpus(uint32_t seed, int n, int maxFaces) {
    std::mt19937 rng(seed);
    std::vector<PlaneBipartiteGraph> out;
    for (int i = 0; i < n; ++i)
        out.push_back(random_star_graph(rng, 2 + i % std::max(1, maxFaces - 1), 40));
    return out;
}

void suite_main_theorem(SuiteReport& rep, uint32_t seed, int n, int maxFaces, int depthCap) {
    auto graphs = corpus(seed, n, maxFaces);
    graphs.push_back(graph_from_json(kBigExample));
    for (size_t i = 0; i < graphs.size(); ++i) {
        std::string name = "main-theorem/" + std::to_string(i);
        try {
            auto r = verify_main_theorem(graphs[i], depthCap);
            rep.add(name, r.ok && r.g == r.h0);
        } catch (const Error& e) {
            rep.add(name, false, e.what());
        }
    }
}

void suite_polytope(SuiteReport& rep, uint32_t seed, int n, int maxFaces) {
    auto graphs = corpus(seed, n, maxFaces);
    for (size_t i = 0; i < graphs.size(); ++i) {
        std::string name = "polytope/" + std::to_string(i);
        try {
            auto m = build_dimer_model(graphs[i]);
            bool ok = verify_affine_iso(m).ok;
            if ((int)m.innerLabels.size() <= 6)
                ok = ok && lattice_points_are_vertices(m).ok;
            rep.add(name, ok);
        } catch (const Error& e) {
            rep.add(name, false, e.what());
        }
    }
}

void suite_link_cluster(SuiteReport& rep, int depthCap) {
    std::vector<std::pair<std::string, LinkDiagram>> links = {
        {"trefoil", parse_pd(kTrefoil)},
        {"hopf", parse_pd(kHopf)},
        {"C(2,2)", two_bridge({2, 2}).diagram},
    };
    for (auto& [name, L] : links) {
        try {
            rep.add("link-cluster/" + name, link_cluster_check(L, depthCap).ok);
        } catch (const Error& e) {
            rep.add("link-cluster/" + name, false, e.what());
        }
    }
}

void suite_plabic(SuiteReport& rep, int depthCap) {
    std::vector<std::pair<std::string, PlabicGraph>> fixtures = {
        {"gr24", fixture_gr24()}, {"gr25", fixture_gr25()}};
    for (auto& [fname, G] : fixtures) {
        // all k-subsets of 1..n
        std::vector<int> J;
        std::vector<int> idx(G.k);
        for (int i = 0; i < G.k; ++i) idx[i] = i + 1;
        bool more = true;
        while (more) {
            J.assign(idx.begin(), idx.end());
            std::string name = "plabic/" + fname + "/";
            for (size_t i = 0; i < J.size(); ++i)
                name += std::to_string(J[i]) + (i + 1 < J.size() ? "," : "");
            try {
                auto r = verify_plucker_cluster_monomial(G, J, depthCap);
                bool vanishesRight = r.vanishing == enumerate_apm(G, J).matchings.empty();
                rep.add(name, r.ok && vanishesRight, r.detail);
            } catch (const Error& e) {
                rep.add(name, false, e.what());
            }
            // next subset
            int i = G.k - 1;
            while (i >= 0 && idx[i] == G.n - (G.k - 1 - i)) --i;
            if (i < 0) {
                more = false;
            } else {
                ++idx[i];
                for (int j = i + 1; j < G.k; ++j) idx[j] = idx[j - 1] + 1;
            }
        }
    }
}

int cmd_verify(const std::string& suite, uint32_t seed, int n, int maxFaces, int depthCap) {
    SuiteReport rep;
    if (suite == "main-theorem" || suite == "all")
        suite_main_theorem(rep, seed, n, maxFaces, depthCap);
    if (suite == "polytope" || suite == "all") suite_polytope(rep, seed, n, maxFaces);
    if (suite == "link-cluster" || suite == "all") suite_link_cluster(rep, depthCap);
    if (suite == "plabic" || suite == "all") suite_plabic(rep, depthCap);
    json j = {{"suite", suite},
              {"seed", seed},
              {"graphs", n},
              {"maxFaces", maxFaces},
              {"ok", rep.allOk},
              {"checks", rep.checks}};
    std::cout << j.dump(2) << "\n";
    std::cerr << (rep.allOk ? "PASS" : "FAIL") << " (" << rep.checks.size() << " checks)\n";
    return rep.allOk ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"dimer polynomials, Alexander polynomials and cluster mutation"};
    app.require_subcommand(1);

    std::string format = "text";
    app.add_option("--format", format, "text, json or dot")
        ->check(CLI::IsMember({"text", "json", "dot"}));

    std::string graphFile;
    auto* dp = app.add_subcommand("dimer-poly", "dimer face polynomial of a graph file");
    dp->add_option("file", graphFile, "graph json file")->required();

    std::string pdInput, method = "dimer";
    int segment = 1;
    auto* al = app.add_subcommand("alexander", "Alexander polynomial of a PD code");
    al->add_option("pd", pdInput, "PD file or inline PD text")->required();
    al->add_option("--segment", segment, "truncation segment");
    al->add_option("--method", method, "dimer, statesum or both")
        ->check(CLI::IsMember({"dimer", "statesum", "both"}));

    std::string quiverFile, seqText;
    auto* mu = app.add_subcommand("mutate", "mutate a framed quiver along labels");
    mu->add_option("file", quiverFile, "quiver json file")->required();
    mu->add_option("sequence", seqText, "comma separated labels, may be empty");

    std::string plabicFile, boundary;
    int depthCap = 12;
    auto* pt = app.add_subcommand("plabic-twist", "twisted Pluecker coordinate as a cluster monomial");
    pt->add_option("file", plabicFile, "plabic json file")->required();
    pt->add_option("--boundary", boundary, "boundary subset, e.g. 1,3")->required();
    pt->add_option("--depth-cap", depthCap, "reduction search depth");

    std::string alphaText;
    auto* tb = app.add_subcommand("two-bridge", "2-bridge link C(alpha)");
    tb->add_option("--alpha", alphaText, "continued fraction entries")->required();

    std::string suite = "all";
    uint32_t seed = 0;
    int nGraphs = 10, maxFaces = 6;
    auto* ve = app.add_subcommand("verify", "run verification suites");
    ve->add_option("--suite", suite, "main-theorem, polytope, link-cluster, plabic or all")
        ->check(CLI::IsMember({"main-theorem", "polytope", "link-cluster", "plabic", "all"}));
    ve->add_option("--graphs", nGraphs, "number of generated graphs");
    ve->add_option("--max-faces", maxFaces, "target inner face bound");
    ve->add_option("--seed", seed, "generator seed");
    ve->add_option("--depth-cap", depthCap, "reduction search depth");

    // --format may follow the subcommand
    for (auto* sub : {dp, al, mu, pt, tb, ve}) sub->fallthrough();

    CLI11_PARSE(app, argc, argv);

    try {
        if (dp->parsed()) return cmd_dimer_poly(graphFile, format);
        if (al->parsed()) return cmd_alexander(pdInput, segment, method, format);
        if (mu->parsed()) return cmd_mutate(quiverFile, seqText, format);
        if (pt->parsed()) return cmd_plabic_twist(plabicFile, boundary, depthCap, format);
        if (tb->parsed()) return cmd_two_bridge(alphaText, format);
        if (ve->parsed()) return cmd_verify(suite, seed, nGraphs, maxFaces, depthCap);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return (int)e.code();
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
