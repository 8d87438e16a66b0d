#include "dimerlab/cluster.hpp"

#include <algorithm>

#include "dimerlab/dimer.hpp"

namespace dimerlab {

namespace {

// rebuild p over an equally-named (or larger) variable table
LaurentPoly retable(const LaurentPoly& p, const VarTablePtr& vars) {
    std::vector<int> map;
    for (auto& n : p.vars()->names) {
        int i = vars->index(n);
        if (i < 0) fail(ErrorCode::VarTableMismatch, "variable " + n + " missing in target");
        map.push_back(i);
    }
    LaurentPoly out = LaurentPoly::zero(vars);
    for (auto& [e, c] : p.terms()) {
        Exp ne((int)vars->size(), 0);
        for (size_t i = 0; i < e.size(); ++i) ne[map[i]] = e[i];
        out.add_term(ne, c);
    }
    return out;
}

}  // namespace

Seed framed_seed(const Quiver& q) {
    Seed s;
    s.quiver = frame(q);
    s.initial = s.quiver;
    int r = s.quiver.nMutable;
    std::vector<std::string> names;
    for (int i = 0; i < r; ++i) names.push_back("x" + std::to_string(s.quiver.labels[i]));
    for (int i = 0; i < r; ++i) names.push_back("y" + std::to_string(s.quiver.labels[i]));
    s.vars = make_vars(names);
    for (int i = 0; i < 2 * r; ++i) s.cluster.push_back(LaurentPoly::var(s.vars, i));
    return s;
}

Seed mutate_seed(const Seed& s, int k) {
    if (k < 0 || k >= s.quiver.nMutable)
        fail(ErrorCode::FrozenVertex, "seed mutation at non-mutable vertex");
    Seed out = s;
    LaurentPoly in = LaurentPoly::constant(s.vars, 1), ex = in;
    for (int i = 0; i < s.quiver.n; ++i) {
        if (s.quiver.b[i][k] > 0) in = in * s.cluster[i].pow(s.quiver.b[i][k]);
        if (s.quiver.b[k][i] > 0) ex = ex * s.cluster[i].pow(s.quiver.b[k][i]);
    }
    out.cluster[k] = (in + ex).divide_exact(s.cluster[k]);
    out.quiver = mutate_quiver(s.quiver, k);
    return out;
}

Seed mutate_seed_by_labels(const Seed& s, const std::vector<int>& labels) {
    Seed cur = s;
    for (int label : labels) {
        int k = cur.quiver.indexOfLabel(label);
        if (k < 0) fail(ErrorCode::VarTableMismatch, "no quiver vertex labeled " +
                                                         std::to_string(label));
        cur = mutate_seed(cur, k);
    }
    return cur;
}

LaurentPoly f_polynomial(const Seed& s, int v) {
    int r = s.initial.nMutable;
    std::vector<std::string> ynames(s.vars->names.begin() + r, s.vars->names.end());
    auto target = make_vars(ynames);
    std::vector<std::optional<RationalMono>> images(s.vars->size());
    Exp none((int)target->size(), 0);
    for (int i = 0; i < r; ++i)
        images[i] = RationalMono{LaurentPoly::constant(target, 1), none};
    return substitute(s.cluster[v], images, target);
}

std::vector<int> g_vector(const Seed& s, int v) {
    int r = s.initial.nMutable;
    std::vector<int> g;
    bool first = true;
    for (auto& [e, c] : s.cluster[v].terms()) {
        std::vector<int> deg(r, 0);
        for (int i = 0; i < r; ++i) {
            deg[i] = e[i];
            for (int j = 0; j < r; ++j) deg[i] -= e[r + j] * s.initial.b[i][j];
        }
        if (first) {
            g = deg;
            first = false;
        } else if (deg != g) {
            fail(ErrorCode::NotHomogeneous, "cluster variable is not g-homogeneous");
        }
    }
    if (first) fail(ErrorCode::NotHomogeneous, "zero cluster variable");
    return g;
}

std::vector<LaurentPoly> exchange_ratios(const Quiver& q, const VarTablePtr& xvars) {
    if ((int)xvars->size() != q.n)
        fail(ErrorCode::VarTableMismatch, "one variable per quiver vertex required");
    std::vector<LaurentPoly> out;
    for (int j = 0; j < q.nMutable; ++j) {
        Exp e(q.n, 0);
        for (int i = 0; i < q.n; ++i) e[i] = q.b[i][j];
        out.push_back(LaurentPoly::monomial(xvars, e));
    }
    return out;
}

MainTheoremReport verify_main_theorem(const PlaneBipartiteGraph& g, int depthCap) {
    MainTheoremReport rep;
    auto model = build_dimer_model(g);
    rep.D = dimer_face_polynomial(model);
    rep.h0 = h_vector(model, minimal_matching(model));

    if (model.innerLabels.empty()) {
        // single-edge graphs: nothing to mutate, D = 1
        rep.F = rep.D;
        rep.ok = rep.D.is_one();
        return rep;
    }

    auto rs = find_reduction_sequence(g, depthCap);
    rep.sequence = rs.faces;
    if (rs.faces.empty()) fail(ErrorCode::SearchExhausted, "empty reduction for a faced graph");

    Seed s = mutate_seed_by_labels(framed_seed(dual_quiver(g)), rs.faces);
    int v = s.quiver.indexOfLabel(rs.faces.back());
    rep.F = retable(f_polynomial(s, v), rep.D.vars());
    rep.g = g_vector(s, v);
    rep.ok = rep.F == rep.D && rep.g == rep.h0;
    return rep;
}

ClusterExpansion cluster_expansion(const PlaneBipartiteGraph& g, int depthCap) {
    auto model = build_dimer_model(g);
    std::vector<std::string> xnames;
    for (int label : model.innerLabels) xnames.push_back("x" + std::to_string(label));
    auto xvars = make_vars(xnames);

    ClusterExpansion out;
    out.z = LaurentPoly::zero(xvars);
    for (uint64_t M : model.matchings) {
        auto h = h_vector(model, M);
        out.z.add_term(Exp(h.begin(), h.end()), 1);
    }

    // cross-check against x^g * F(y^) from the main theorem
    auto rep = verify_main_theorem(g, depthCap);
    if (!rep.ok) fail(ErrorCode::MismatchReport, "main theorem verification failed");
    if (!model.innerLabels.empty()) {
        auto yhat = exchange_ratios(dual_quiver(g), xvars);
        std::vector<std::optional<RationalMono>> images;
        Exp none((int)xvars->size(), 0);
        for (size_t j = 0; j < yhat.size(); ++j) images.push_back(RationalMono{yhat[j], none});
        LaurentPoly viaF = substitute(rep.F, images, xvars);
        viaF = viaF * LaurentPoly::monomial(xvars, Exp(rep.g.begin(), rep.g.end()));
        if (viaF != out.z)
            fail(ErrorCode::MismatchReport, "cluster expansion disagrees with x^g F(y^)");
    }

    Exp lo = out.z.min_exponents();
    for (int d : lo) out.dvector.push_back(-d);
    return out;
}

AdjacentFReport adjacent_f_check(const Quiver& q, int bLabel, const std::vector<int>& seq,
                                 int vLabel) {
    int r = q.nMutable;
    int bIdx = q.indexOfLabel(bLabel);
    if (bIdx < 0 || bIdx >= r) fail(ErrorCode::FrozenVertex, "b must be mutable");

    Seed sA = mutate_seed_by_labels(framed_seed(q), seq);
    int vA = sA.quiver.indexOfLabel(vLabel);
    LaurentPoly F = f_polynomial(sA, vA);
    auto gv = g_vector(sA, vA);

    std::vector<int> seqB{bLabel};
    seqB.insert(seqB.end(), seq.begin(), seq.end());
    Seed sB = mutate_seed_by_labels(framed_seed(mutate_quiver(q, bIdx)), seqB);
    int vB = sB.quiver.indexOfLabel(vLabel);
    LaurentPoly Fp = f_polynomial(sB, vB);
    auto gp = g_vector(sB, vB);

    // working table: the y variables plus t, a placeholder for (1 + y_b)
    std::vector<std::string> names;
    for (int i = 0; i < r; ++i) names.push_back("y" + std::to_string(q.labels[i]));
    names.push_back("t");
    auto tv = make_vars(names);
    int tIdx = r;
    int gb = gv[bIdx], gpb = gp[bIdx];

    AdjacentFReport rep;
    for (int conv : {+1, -1}) {
        auto qab = [&](int a) { return conv > 0 ? q.b[a][bIdx] : q.b[bIdx][a]; };

        // Eq g-mut
        std::vector<int> expect(r);
        bool gOk = true;
        for (int a = 0; a < r; ++a) {
            if (a == bIdx)
                expect[a] = -gb;
            else if (qab(a) >= 0)
                expect[a] = gv[a] + qab(a) * gb - qab(a) * std::min(0, gb);
            else
                expect[a] = gv[a] - qab(a) * std::min(0, gb);
            gOk = gOk && expect[a] == gp[a];
        }
        if (!gOk) continue;

        // Eq adjacent-F, with t = 1 + y_b kept symbolic until the end
        LaurentPoly lhs = retable(F, tv) * LaurentPoly::var(tv, tIdx, std::min(0, gb));
        std::vector<std::optional<RationalMono>> images(Fp.vars()->size());
        Exp none((int)tv->size(), 0);
        for (size_t i = 0; i < Fp.vars()->size(); ++i) {
            int a = q.indexOfLabel(std::stoi(Fp.vars()->names[i].substr(1)));
            Exp e((int)tv->size(), 0);
            if (a == bIdx) {
                e[a] = -1;  // y_b -> y_b^{-1}
            } else {
                e[a] = 1;
                e[tIdx] = qab(a);
                e[bIdx] += std::max(0, -qab(a));
            }
            images[i] = RationalMono{LaurentPoly::monomial(tv, e), none};
        }
        LaurentPoly rhs = substitute(Fp, images, tv);
        {
            // (1 + y_b') = (1 + y_b) / y_b
            Exp e((int)tv->size(), 0);
            e[tIdx] = 1;
            e[bIdx] = -1;
            rhs = rhs * LaurentPoly::monomial(tv, e).pow(std::min(0, gpb));
        }
        int shift = std::min(lhs.min_exponents()[tIdx], rhs.min_exponents()[tIdx]);
        LaurentPoly tpow = LaurentPoly::var(tv, tIdx, -shift);
        lhs = lhs * tpow;
        rhs = rhs * tpow;
        // substitute t = 1 + y_b
        std::vector<std::string> ynames(names.begin(), names.end() - 1);
        auto ytab = make_vars(ynames);
        LaurentPoly onePlus = LaurentPoly::constant(ytab, 1) + LaurentPoly::var(ytab, bIdx);
        std::vector<std::optional<RationalMono>> tImage(tv->size());
        tImage[tIdx] = RationalMono{onePlus, Exp((int)ytab->size(), 0)};
        if (substitute(lhs, tImage, ytab) == substitute(rhs, tImage, ytab)) {
            rep.ok = true;
            rep.convention = conv;
            return rep;
        }
    }
    return rep;
}

}  // namespace dimerlab
