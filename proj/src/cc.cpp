#include "parametrix/cc.hpp"

#include <algorithm>

#include "parametrix/linalg.hpp"

namespace parametrix {

namespace {

ModuleRow row_sub(const ModuleRow &a, const ModuleRow &b) {
    ModuleRow r = a;
    for (size_t i = 0; i < r.size(); ++i) r[i] = r[i] - b[i];
    return r;
}

ModuleRow row_op_mul(const DiffOp &u, const ModuleRow &g) {
    ModuleRow r;
    r.reserve(g.size());
    for (auto &e : g) r.push_back(u * e);
    return r;
}

ModuleRow row_scale(const ModuleRow &a, const RatFunc &f) {
    ModuleRow r;
    r.reserve(a.size());
    for (auto &e : a) r.push_back(e.scale(f));
    return r;
}

// Is r a combination sum q_i s_i with ord(q_i) <= ord(r) - ord(s_i)? This is
// the filtration-respecting redundancy test: higher-order cofactors are not
// allowed to conspire, so generator counts match the graded picture.
bool filtered_member(CtxPtr ctx, const ModuleRow &r, const std::vector<ModuleRow> &others) {
    if (row_is_zero(r)) return true;
    if (others.empty()) return false;
    int n = ctx->nvars(), m = static_cast<int>(r.size());
    int d = row_order(r);
    struct Unknown {
        int row;
        Mono nu;
    };
    std::vector<Unknown> unknowns;
    for (size_t i = 0; i < others.size(); ++i) {
        int oi = row_order(others[i]);
        if (oi < 0 || oi > d) continue;
        for (int e = 0; e <= d - oi; ++e)
            for (auto &nu : monomials_of_degree(n, e)) unknowns.push_back({static_cast<int>(i), nu});
    }
    if (unknowns.empty()) return false;
    std::map<std::pair<int, Mono>, int> cons;
    std::vector<ModuleRow> prolonged;
    prolonged.reserve(unknowns.size());
    for (auto &u : unknowns) {
        ModuleRow pr;
        DiffOp dnu = DiffOp::d_mono(ctx, u.nu);
        for (auto &e : others[u.row]) pr.push_back(dnu * e);
        for (int j = 0; j < m; ++j)
            for (auto &[mu, c] : pr[j].terms()) cons.emplace(std::make_pair(j, mu), 0);
        prolonged.push_back(std::move(pr));
    }
    for (int j = 0; j < m; ++j)
        for (auto &[mu, c] : r[j].terms()) cons.emplace(std::make_pair(j, mu), 0);
    int ncons = 0;
    for (auto &[key, idx] : cons) idx = ncons++;
    KMatrix M(ctx, ncons, static_cast<int>(unknowns.size()));
    for (size_t u = 0; u < unknowns.size(); ++u)
        for (int j = 0; j < m; ++j)
            for (auto &[mu, c] : prolonged[u][j].terms()) {
                int rr = cons.at({j, mu});
                M.at(rr, static_cast<int>(u)) = M.at(rr, static_cast<int>(u)) + c;
            }
    KMatrix Mb(ctx, ncons, static_cast<int>(unknowns.size()) + 1);
    for (int i = 0; i < ncons; ++i)
        for (size_t u = 0; u < unknowns.size(); ++u) Mb.at(i, static_cast<int>(u)) = M.at(i, static_cast<int>(u));
    for (int j = 0; j < m; ++j)
        for (auto &[mu, c] : r[j].terms()) Mb.at(cons.at({j, mu}), static_cast<int>(unknowns.size())) = c;
    return k_rank(std::move(M)) == k_rank(std::move(Mb));
}

} // namespace

ModuleRow normalize_row_primitive(CtxPtr ctx, const ModuleRow &row, const TermOrder &order) {
    if (row_is_zero(row)) return row;
    // clear denominators
    Poly lcm(ctx->ncoeffvars(), mpz_class(1));
    for (auto &e : row)
        for (auto &[mu, c] : e.terms()) {
            Poly g = poly_gcd(lcm, c.den());
            lcm = lcm * c.den().div_exact(g);
        }
    ModuleRow r = row_scale(row, RatFunc(ctx, lcm, Poly(ctx->ncoeffvars(), mpz_class(1))));
    // divide by the gcd of all numerators
    Poly g(ctx->ncoeffvars());
    for (auto &e : r)
        for (auto &[mu, c] : e.terms()) g = poly_gcd(g, c.num());
    if (!g.is_zero() && !(g.is_constant() && g.constant_value() == 1))
        r = row_scale(r, RatFunc(ctx, Poly(ctx->ncoeffvars(), mpz_class(1)), g));
    // sign: leading coefficient of the leading term gets a positive leading monomial
    LeadTerm lt = lead_term(r, order);
    const RatFunc &lc = r[lt.comp].coeff(lt.mu);
    if (lc.num().leading_coeff() < 0) r = row_scale(r, RatFunc(ctx, mpq_class(-1)));
    return r;
}

OpMatrix generating_cc(const OpMatrix &A, const TermOrder &order) {
    CtxPtr ctx = A.ctx();
    int p = A.rows();
    auto rows = matrix_rows(A);
    std::vector<ModuleRow> syz;
    auto unit = [&](int i) {
        ModuleRow e(p, DiffOp(ctx));
        e[i] = DiffOp::one(ctx);
        return e;
    };
    // zero rows contribute unit syzygies
    std::vector<ModuleRow> nonzero_rows;
    for (int i = 0; i < p; ++i) {
        if (row_is_zero(rows[i])) syz.push_back(unit(i));
    }
    JanetBasis B = janet_complete(ctx, rows, order, true);
    const auto &gens = B.gens();
    if (!gens.empty()) {
        // prolongation syzygies: d_v o g - standard representation
        for (size_t i = 0; i < gens.size(); ++i) {
            for (int v = 0; v < ctx->nvars(); ++v) {
                if (gens[i].mult[v]) continue;
                DiffOp dv = DiffOp::d(ctx, v);
                std::vector<DiffOp> cof;
                ModuleRow nf = B.normal_form(row_op_mul(dv, gens[i].row), &cof);
                if (!row_is_zero(nf))
                    throw std::runtime_error("internal: completed basis is not involutive");
                ModuleRow s = row_op_mul(dv, gens[i].expr);
                for (size_t h = 0; h < gens.size(); ++h) {
                    if (cof[h].is_zero()) continue;
                    s = row_sub(s, row_op_mul(cof[h], gens[h].expr));
                }
                if (!row_is_zero(s)) syz.push_back(std::move(s));
            }
        }
        // reconstruction syzygies e_j - V U
        for (int j = 0; j < p; ++j) {
            if (row_is_zero(rows[j])) continue;
            std::vector<DiffOp> cof;
            ModuleRow nf = B.normal_form(rows[j], &cof);
            if (!row_is_zero(nf))
                throw std::runtime_error("internal: original row does not reduce to zero");
            ModuleRow s = unit(j);
            for (size_t h = 0; h < gens.size(); ++h) {
                if (cof[h].is_zero()) continue;
                s = row_sub(s, row_op_mul(cof[h], gens[h].expr));
            }
            if (!row_is_zero(s)) syz.push_back(std::move(s));
        }
    }
    for (auto &s : syz) s = normalize_row_primitive(ctx, s, order);
    // deduplicate
    std::sort(syz.begin(), syz.end(), [&](const ModuleRow &a, const ModuleRow &b) {
        int oa = row_order(a), ob = row_order(b);
        if (oa != ob) return oa < ob;
        LeadTerm la = lead_term(a, order), lb = lead_term(b, order);
        return order.cmp(la.comp, la.mu, lb.comp, lb.mu) < 0;
    });
    syz.erase(std::unique(syz.begin(), syz.end(),
                          [](const ModuleRow &a, const ModuleRow &b) { return a == b; }),
              syz.end());
    // irredundant generating set in the filtered sense: ascending insertion,
    // then a pruning pass against everything kept
    std::vector<ModuleRow> keep;
    for (auto &s : syz) {
        if (filtered_member(ctx, s, keep)) continue;
        keep.push_back(s);
    }
    if (keep.size() > 1) {
        for (size_t i = keep.size(); i-- > 0;) {
            std::vector<ModuleRow> others;
            for (size_t j = 0; j < keep.size(); ++j)
                if (j != i) others.push_back(keep[j]);
            if (filtered_member(ctx, keep[i], others))
                keep.erase(keep.begin() + static_cast<long>(i));
        }
    }
    // display order: solve for the highest leads first
    std::sort(keep.begin(), keep.end(), [&](const ModuleRow &a, const ModuleRow &b) {
        LeadTerm la = lead_term(a, order), lb = lead_term(b, order);
        return order.cmp(la.comp, la.mu, lb.comp, lb.mu) > 0;
    });
    OpMatrix C = rows_to_matrix(ctx, keep, p);
    C.col_labels = A.row_labels;
    for (int i = 0; i < C.rows(); ++i) C.row_labels[i] = "cc" + std::to_string(i + 1);
    return C;
}

OpMatrix fi_presentation(const OpMatrix &A, const TermOrder &order) {
    CtxPtr ctx = A.ctx();
    int q = std::max(A.order(), 0);
    JanetBasis B = janet_complete(A, order, false);
    std::vector<ModuleRow> rows;
    for (auto &g : B.gens())
        if (row_order(g.row) <= q) rows.push_back(normalize_row_primitive(ctx, g.row, order));
    std::sort(rows.begin(), rows.end(), [&](const ModuleRow &a, const ModuleRow &b) {
        LeadTerm la = lead_term(a, order), lb = lead_term(b, order);
        return order.cmp(la.comp, la.mu, lb.comp, lb.mu) > 0;
    });
    OpMatrix P = rows_to_matrix(ctx, rows, A.cols());
    P.col_labels = A.col_labels;
    return P;
}

Resolution free_resolution(const OpMatrix &A, int max_steps, const TermOrder &order) {
    Resolution res;
    if (max_steps < 0) max_steps = A.ctx()->nvars() + 1;
    OpMatrix cur = fi_presentation(A, order);
    res.ops.push_back(cur);
    res.dims.push_back(cur.cols());
    res.dims.push_back(cur.rows());
    for (int step = 0; step < max_steps; ++step) {
        OpMatrix C = generating_cc(cur, order);
        if (C.rows() == 0) {
            res.complete = true;
            return res;
        }
        res.ops.push_back(C);
        res.dims.push_back(C.rows());
        cur = C;
    }
    return res;
}

CcCheck check_cc_generation(const OpMatrix &C_claimed, const OpMatrix &A, const TermOrder &order) {
    CcCheck out;
    OpMatrix comp = C_claimed.compose(A);
    for (int i = 0; i < comp.rows(); ++i) {
        if (!row_is_zero(comp.row(i))) {
            out.verdict = CcVerdict::ClaimedNotCC;
            out.witness_row = i;
            out.witness = comp.row(i);
            return out;
        }
    }
    OpMatrix CCA = generating_cc(A, order);
    JanetBasis BC = janet_complete(C_claimed, order, false);
    for (int i = 0; i < CCA.rows(); ++i) {
        ModuleRow r = CCA.row(i);
        bool inside = BC.empty() ? row_is_zero(r) : BC.contains(r);
        if (!inside) {
            out.verdict = CcVerdict::ClaimedTooSmall;
            out.witness_row = i;
            out.witness = r;
            return out;
        }
    }
    out.verdict = CcVerdict::EqualModules;
    return out;
}

} // namespace parametrix
