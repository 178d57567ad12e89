#include "parametrix/duality.hpp"

#include <algorithm>

#include "parametrix/linalg.hpp"

namespace parametrix {

namespace {

ModuleRow row_op_mul(const DiffOp &u, const ModuleRow &g) {
    ModuleRow r;
    r.reserve(g.size());
    for (auto &e : g) r.push_back(u * e);
    return r;
}

DiffOp normalize_annihilator(CtxPtr ctx, const DiffOp &p) {
    // clear denominators, remove content, positive leading sign
    Poly lcm(ctx->ncoeffvars(), mpz_class(1));
    for (auto &[mu, c] : p.terms()) {
        Poly g = poly_gcd(lcm, c.den());
        lcm = lcm * c.den().div_exact(g);
    }
    DiffOp r = p.scale(RatFunc(ctx, lcm, Poly(ctx->ncoeffvars(), mpz_class(1))));
    Poly g(ctx->ncoeffvars());
    for (auto &[mu, c] : r.terms()) g = poly_gcd(g, c.num());
    if (!g.is_zero() && !(g.is_constant() && g.constant_value() == 1))
        r = r.scale(RatFunc(ctx, Poly(ctx->ncoeffvars(), mpz_class(1)), g));
    if (r.leading_coeff().num().leading_coeff() < 0) r = r.scale(RatFunc(ctx, mpq_class(-1)));
    return r;
}

} // namespace

std::optional<DiffOp> annihilator_search(const ModuleRow &z, const JanetBasis &B, int max_order) {
    CtxPtr ctx = B.ctx();
    int n = ctx->nvars();
    for (int t = 0; t <= max_order; ++t) {
        // unknown left coefficients a_nu for |nu| <= t; the normal form is
        // K-linear in them because they sit on the left
        std::vector<Mono> nus;
        for (int d = 0; d <= t; ++d)
            for (auto &mu : monomials_of_degree(n, d)) nus.push_back(mu);
        std::vector<ModuleRow> nfs;
        for (auto &nu : nus)
            nfs.push_back(B.normal_form(row_op_mul(DiffOp::d_mono(ctx, nu), z)));
        // columns of the linear system: module terms present in any nf
        std::map<std::pair<int, Mono>, int> index;
        for (auto &nf : nfs)
            for (size_t k = 0; k < nf.size(); ++k)
                for (auto &[mu, c] : nf[k].terms())
                    index.emplace(std::make_pair(static_cast<int>(k), mu), 0);
        int ncols = 0;
        for (auto &[key, idx] : index) idx = ncols++;
        KMatrix M(ctx, ncols, static_cast<int>(nus.size()));
        for (size_t j = 0; j < nus.size(); ++j)
            for (size_t k = 0; k < nfs[j].size(); ++k)
                for (auto &[mu, c] : nfs[j][k].terms())
                    M.at(index.at({static_cast<int>(k), mu}), static_cast<int>(j)) = c;
        auto null = k_nullspace(std::move(M), ctx);
        for (auto &sol : null) {
            DiffOp P(ctx);
            for (size_t j = 0; j < nus.size(); ++j) P.add_term(nus[j], sol[j]);
            if (P.is_zero()) continue;
            if (P.order() < t) continue; // found at a lower bound already
            return normalize_annihilator(ctx, P);
        }
        if (!null.empty() && t == 0) {
            // a zero-order annihilator means z itself reduces to zero
            DiffOp P(ctx);
            P.add_term(Mono(n), null[0][0]);
            if (!P.is_zero()) return normalize_annihilator(ctx, P);
        }
    }
    return std::nullopt;
}

std::optional<DiffOp> annihilator_search(const ModuleRow &z, const OpMatrix &D1, int max_order) {
    JanetBasis B = janet_complete(D1, {}, false);
    return annihilator_search(z, B, max_order);
}

DualityReport double_duality(const OpMatrix &D1, int annihilator_max_order, uint64_t seed) {
    if (D1.is_zero()) throw DimensionError("double duality needs a nonzero operator");
    DualityReport rep;
    rep.witness_max_order = annihilator_max_order;
    rep.D1 = D1;
    rep.adD1 = D1.adjoint();
    rep.adD = generating_cc(rep.adD1);
    rep.D = rep.adD.adjoint();
    rep.D1prime = generating_cc(rep.D);
    // the composition D1 o D must vanish identically
    if (rep.D.cols() > 0 && !rep.D1.compose(rep.D).is_zero())
        throw std::runtime_error("internal: D1 o D is nonzero in the duality diagram");
    JanetBasis BD1 = janet_complete(D1, {}, false);
    for (int i = 0; i < rep.D1prime.rows(); ++i) {
        ModuleRow r = rep.D1prime.row(i);
        ModuleRow nf = BD1.normal_form(r);
        if (row_is_zero(nf)) continue;
        TorsionWitness w;
        w.row = normalize_row_primitive(D1.ctx(), nf, {});
        w.annihilator = annihilator_search(w.row, BD1, annihilator_max_order);
        rep.witnesses.push_back(std::move(w));
    }
    rep.torsion_free = rep.witnesses.empty();
    rep.rank_D1 = differential_rank(D1, 8, seed);
    rep.rank_M = D1.cols() - rep.rank_D1;
    return rep;
}

OpMatrix canonical_parametrization(const OpMatrix &D1, uint64_t seed) {
    DualityReport rep = double_duality(D1, 3, seed);
    if (!rep.torsion_free)
        throw TorsionError("operator presents a module with torsion; no parametrization exists",
                           rep.witnesses);
    return rep.D;
}

CcCheck check_parametrization(const OpMatrix &D, const OpMatrix &D1) {
    return check_cc_generation(D1, D);
}

MinimalSearchResult minimal_parametrization(const OpMatrix &D1, uint64_t seed, long long subset_cap) {
    MinimalSearchResult out;
    DualityReport rep = double_duality(D1, 3, seed);
    if (!rep.torsion_free)
        throw TorsionError("operator presents a module with torsion; no parametrization exists",
                           rep.witnesses);
    out.canonical = rep.D;
    out.target_rank = rep.rank_M;
    int e = rep.D.cols();
    long long rk = rep.rank_M;
    if (rk < 0 || rk > e) return out;
    // enumerate column subsets of the canonical parametrization, lexicographically
    std::vector<int> idx(rk);
    for (long long i = 0; i < rk; ++i) idx[i] = static_cast<int>(i);
    long long seen = 0;
    bool more = rk > 0 || e == 0;
    if (rk == 0) return out;
    while (true) {
        if (++seen > subset_cap) {
            out.enumeration_truncated = true;
            break;
        }
        OpMatrix Dp = rep.D.select_columns(idx);
        if (differential_rank(Dp, 4, seed) == rk) {
            CcCheck chk = check_cc_generation(D1, Dp);
            if (chk.ok()) out.found.push_back({idx, Dp});
        }
        // next combination
        int i = static_cast<int>(rk) - 1;
        while (i >= 0 && idx[i] == e - static_cast<int>(rk) + i) --i;
        if (i < 0) break;
        ++idx[i];
        for (int j = i + 1; j < rk; ++j) idx[j] = idx[j - 1] + 1;
    }
    return out;
}

bool controllability_n1(const OpMatrix &D1, uint64_t seed) {
    if (D1.ctx()->nvars() != 1)
        throw ContextError("controllability test is for one independent variable");
    OpMatrix cc = generating_cc(D1);
    if (cc.rows() != 0) {
        // not formally surjective; decide by the full test
        return double_duality(D1, 3, seed).torsion_free;
    }
    JanetBasis B = janet_complete(D1.adjoint(), {}, false);
    return !B.empty() && B.is_full_module();
}

} // namespace parametrix
