#include "parametrix/janet.hpp"

#include <algorithm>
#include <random>
#include <sstream>

#include "parametrix/spencer.hpp"

namespace parametrix {

bool row_is_zero(const ModuleRow &row) {
    for (auto &e : row)
        if (!e.is_zero()) return false;
    return true;
}

int row_order(const ModuleRow &row) {
    int d = -1;
    for (auto &e : row) d = std::max(d, e.order());
    return d;
}

LeadTerm lead_term(const ModuleRow &row, const TermOrder &order) {
    LeadTerm best;
    for (size_t k = 0; k < row.size(); ++k) {
        if (row[k].is_zero()) continue;
        const Mono &mu = row[k].leading_mono();
        if (best.comp < 0 || order.cmp(static_cast<int>(k), mu, best.comp, best.mu) > 0) {
            best.comp = static_cast<int>(k);
            best.mu = mu;
        }
    }
    return best;
}

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

// gather the terms of a row sorted descending
std::vector<std::pair<LeadTerm, RatFunc>> row_terms_desc(const ModuleRow &row, const TermOrder &order) {
    std::vector<std::pair<LeadTerm, RatFunc>> out;
    for (size_t k = 0; k < row.size(); ++k)
        for (auto &[mu, c] : row[k].terms()) out.push_back({{static_cast<int>(k), mu}, c});
    std::sort(out.begin(), out.end(), [&](const auto &a, const auto &b) {
        return order.cmp(a.first.comp, a.first.mu, b.first.comp, b.first.mu) > 0;
    });
    return out;
}

} // namespace

std::vector<ModuleRow> matrix_rows(const OpMatrix &A) {
    std::vector<ModuleRow> rows;
    for (int i = 0; i < A.rows(); ++i) rows.push_back(A.row(i));
    return rows;
}

OpMatrix rows_to_matrix(CtxPtr ctx, const std::vector<ModuleRow> &rows, int ncols) {
    OpMatrix A(ctx, static_cast<int>(rows.size()), ncols);
    for (size_t i = 0; i < rows.size(); ++i) A.set_row(static_cast<int>(i), rows[i]);
    return A;
}

int JanetBasis::max_order() const {
    int q = -1;
    for (auto &g : gens_) q = std::max(q, row_order(g.row));
    return q;
}

// classical Janet assignment, per component: d_v is multiplicative for u iff
// deg_v(u) is maximal within u's group, grouping from d_n downwards
void JanetBasis::assign_multiplicative() {
    int n = ctx_->nvars();
    std::map<int, std::vector<int>> by_comp;
    for (size_t i = 0; i < gens_.size(); ++i) {
        gens_[i].mult.assign(n, true);
        by_comp[gens_[i].lead.comp].push_back(static_cast<int>(i));
    }
    std::function<void(const std::vector<int> &, int)> split = [&](const std::vector<int> &group, int v) {
        if (v < 0 || group.empty()) return;
        uint32_t maxdeg = 0;
        for (int i : group) maxdeg = std::max(maxdeg, gens_[i].lead.mu.e[v]);
        std::map<uint32_t, std::vector<int>> parts;
        for (int i : group) {
            if (gens_[i].lead.mu.e[v] != maxdeg) gens_[i].mult[v] = false;
            parts[gens_[i].lead.mu.e[v]].push_back(i);
        }
        for (auto &[deg, part] : parts) split(part, v - 1);
    };
    for (auto &[comp, group] : by_comp) split(group, n - 1);
}

int JanetBasis::find_reducer(int comp, const Mono &mu, int skip) const {
    for (size_t i = 0; i < gens_.size(); ++i) {
        if (static_cast<int>(i) == skip) continue;
        const JanetGenerator &g = gens_[i];
        if (g.lead.comp != comp) continue;
        if (!g.lead.mu.divides(mu)) continue;
        Mono quot = mu.quotient(g.lead.mu);
        bool ok = true;
        for (size_t v = 0; v < quot.e.size(); ++v)
            if (quot.e[v] > 0 && !g.mult[v]) {
                ok = false;
                break;
            }
        if (ok) return static_cast<int>(i);
    }
    return -1;
}

ModuleRow JanetBasis::normal_form(const ModuleRow &v, std::vector<DiffOp> *cofactors) const {
    if (cofactors) cofactors->assign(gens_.size(), DiffOp(ctx_));
    ModuleRow r = v;
    while (true) {
        bool reduced = false;
        for (auto &[t, c] : row_terms_desc(r, order_)) {
            int gi = find_reducer(t.comp, t.mu);
            if (gi < 0) continue;
            const JanetGenerator &g = gens_[gi];
            DiffOp u = DiffOp::d_mono(ctx_, t.mu.quotient(g.lead.mu)).scale(c);
            r = row_sub(r, row_op_mul(u, g.row));
            if (cofactors) (*cofactors)[gi] = (*cofactors)[gi] + u;
            reduced = true;
            break;
        }
        if (!reduced) break;
    }
    return r;
}

bool JanetBasis::is_full_module() const {
    for (int k = 0; k < ncols_; ++k) {
        ModuleRow e(ncols_, DiffOp(ctx_));
        e[k] = DiffOp::one(ctx_);
        if (!contains(e)) return false;
    }
    return true;
}

void JanetBasis::insert(JanetGenerator g) {
    // keep lc = 1
    RatFunc lc = g.row[g.lead.comp].leading_coeff();
    if (!lc.is_one()) {
        RatFunc inv = lc.inv();
        g.row = row_scale(g.row, inv);
        if (tracked_) g.expr = row_scale(g.expr, inv);
    }
    gens_.push_back(std::move(g));
    assign_multiplicative();
}

void JanetBasis::autoreduce() {
    bool changed = true;
    while (changed) {
        changed = false;
        assign_multiplicative();
        for (size_t i = 0; i < gens_.size(); ++i) {
            // reduce gens_[i] fully against the others
            ModuleRow r = gens_[i].row;
            ModuleRow expr = gens_[i].expr;
            bool touched = false;
            while (true) {
                bool reduced = false;
                for (auto &[t, c] : row_terms_desc(r, order_)) {
                    int gi = find_reducer(t.comp, t.mu, static_cast<int>(i));
                    if (gi < 0) continue;
                    const JanetGenerator &g = gens_[gi];
                    DiffOp u = DiffOp::d_mono(ctx_, t.mu.quotient(g.lead.mu)).scale(c);
                    r = row_sub(r, row_op_mul(u, g.row));
                    if (tracked_) expr = row_sub(expr, row_op_mul(u, g.expr));
                    reduced = true;
                    touched = true;
                    break;
                }
                if (!reduced) break;
            }
            if (!touched) continue;
            changed = true;
            gens_.erase(gens_.begin() + static_cast<long>(i));
            if (!row_is_zero(r)) {
                JanetGenerator g;
                g.row = std::move(r);
                g.lead = lead_term(g.row, order_);
                g.expr = std::move(expr);
                insert(std::move(g));
            } else {
                assign_multiplicative();
            }
            break; // restart the scan with fresh assignments
        }
    }
}

JanetBasis janet_complete(CtxPtr ctx, const std::vector<ModuleRow> &rows, const TermOrder &order,
                          bool track) {
    int ncols = rows.empty() ? 0 : static_cast<int>(rows[0].size());
    JanetBasis B(ctx, ncols, order);
    B.tracked_ = track;
    B.nrows_orig_ = static_cast<int>(rows.size());
    for (size_t i = 0; i < rows.size(); ++i) {
        if (row_is_zero(rows[i])) continue;
        JanetGenerator g;
        g.row = rows[i];
        g.lead = lead_term(g.row, order);
        if (track) {
            g.expr.assign(rows.size(), DiffOp(ctx));
            g.expr[i] = DiffOp::one(ctx);
        }
        B.insert(std::move(g));
    }
    B.autoreduce();
    const int cap = 200000;
    for (int iter = 0; iter < cap; ++iter) {
        B.assign_multiplicative();
        // queue non-multiplicative prolongations, smallest prolonged lead first
        struct Cand {
            int gen, var;
            LeadTerm plead;
        };
        std::vector<Cand> cands;
        for (size_t i = 0; i < B.gens_.size(); ++i)
            for (int v = 0; v < ctx->nvars(); ++v)
                if (!B.gens_[i].mult[v])
                    cands.push_back({static_cast<int>(i), v,
                                     {B.gens_[i].lead.comp, B.gens_[i].lead.mu.times_var(v)}});
        std::sort(cands.begin(), cands.end(), [&](const Cand &a, const Cand &b) {
            int c = order.cmp(a.plead.comp, a.plead.mu, b.plead.comp, b.plead.mu);
            if (c != 0) return c < 0;
            if (a.gen != b.gen) return a.gen < b.gen;
            return a.var < b.var;
        });
        bool progressed = false;
        for (auto &cand : cands) {
            DiffOp dv = DiffOp::d(ctx, cand.var);
            ModuleRow p = row_op_mul(dv, B.gens_[cand.gen].row);
            ModuleRow pexpr;
            if (track) pexpr = row_op_mul(dv, B.gens_[cand.gen].expr);
            std::vector<DiffOp> cof;
            ModuleRow nf = B.normal_form(p, track ? &cof : nullptr);
            if (row_is_zero(nf)) continue;
            JanetGenerator g;
            g.row = std::move(nf);
            g.lead = lead_term(g.row, order);
            if (track) {
                for (size_t h = 0; h < B.gens_.size(); ++h) {
                    if (cof[h].is_zero()) continue;
                    pexpr = row_sub(pexpr, row_op_mul(cof[h], B.gens_[h].expr));
                }
                g.expr = std::move(pexpr);
            }
            B.insert(std::move(g));
            B.autoreduce();
            progressed = true;
            break;
        }
        if (!progressed) return B;
    }
    throw std::runtime_error("janet completion did not terminate within the iteration cap");
}

JanetBasis janet_complete(const OpMatrix &A, const TermOrder &order, bool track) {
    return janet_complete(A.ctx(), matrix_rows(A), order, track);
}

Board JanetBasis::board() const {
    Board b;
    b.n = ctx_->nvars();
    for (auto &g : gens_) {
        BoardRow r;
        r.comp = g.lead.comp;
        r.mu = g.lead.mu;
        r.cls = g.lead.mu.cls();
        r.order = g.lead.mu.deg();
        r.mult = g.mult;
        b.rows.push_back(std::move(r));
    }
    std::sort(b.rows.begin(), b.rows.end(), [this](const BoardRow &x, const BoardRow &y) {
        if (x.cls != y.cls) return x.cls > y.cls;
        return order_.cmp(x.comp, x.mu, y.comp, y.mu) > 0;
    });
    return b;
}

std::string Board::render() const {
    std::ostringstream os;
    for (auto &r : rows) {
        for (int v = 1; v <= n; ++v) {
            if (v > 1) os << " ";
            if (r.mult[v - 1]) os << v;
            else os << ".";
        }
        os << "\n";
    }
    return os.str();
}

std::vector<long long> JanetBasis::principal_counts(int q) const {
    std::vector<long long> beta(ctx_->nvars(), 0);
    for (int k = 0; k < ncols_; ++k)
        for (auto &mu : monomials_of_degree(ctx_->nvars(), q))
            if (find_reducer(k, mu) >= 0) beta[mu.cls() - 1] += 1;
    return beta;
}

Characters JanetBasis::characters() const {
    Characters ch;
    ch.n = ctx_->nvars();
    ch.m = ncols_;
    ch.q = std::max(max_order(), 1);
    ch.beta = principal_counts(ch.q);
    ch.alpha.assign(ch.n, 0);
    for (int i = 1; i <= ch.n; ++i)
        ch.alpha[i - 1] = static_cast<long long>(ch.m) * class_count(ch.n, ch.q, i) - ch.beta[i - 1];
    for (int i = 1; i < ch.n; ++i)
        if (ch.alpha[i - 1] < ch.alpha[i]) ch.monotone_ok = false;
    // classes with solved equations must be consecutive and end at n
    int lo = -1, hi = -1;
    bool gap = false;
    for (int i = 0; i < ch.n; ++i) {
        if (ch.beta[i] > 0) {
            if (lo < 0) lo = i;
            if (hi >= 0 && hi != i - 1) gap = true;
            hi = i;
        }
    }
    if (hi >= 0 && (hi != ch.n - 1 || gap)) ch.chain_ok = false;
    return ch;
}

// ---- system-level involution ----

namespace {

// head-echelonize rows over K so leading terms are pairwise distinct
std::vector<ModuleRow> echelonize_heads(CtxPtr ctx, std::vector<ModuleRow> rows, const TermOrder &order) {
    bool changed = true;
    while (changed) {
        changed = false;
        rows.erase(std::remove_if(rows.begin(), rows.end(), row_is_zero), rows.end());
        for (size_t i = 0; i < rows.size() && !changed; ++i) {
            LeadTerm li = lead_term(rows[i], order);
            for (size_t j = 0; j < i; ++j) {
                LeadTerm lj = lead_term(rows[j], order);
                if (li.comp == lj.comp && li.mu == lj.mu) {
                    RatFunc ci = rows[i][li.comp].coeff(li.mu);
                    RatFunc cj = rows[j][lj.comp].coeff(lj.mu);
                    rows[i] = row_sub(rows[i], row_scale(rows[j], ci / cj));
                    changed = true;
                    break;
                }
            }
        }
    }
    return rows;
}

} // namespace

InvolutionReport system_involution(const OpMatrix &A, const TermOrder &order) {
    InvolutionReport rep;
    CtxPtr ctx = A.ctx();
    int n = ctx->nvars();
    auto rows = echelonize_heads(ctx, matrix_rows(A), order);
    if (rows.empty()) {
        rep.involutive = true;
        return rep;
    }
    int q = -1;
    for (auto &r : rows) q = std::max(q, row_order(r));
    // board with class-based multiplicative variables x1..x_class for rows of
    // top order, none for lower-order rows
    rep.board.n = n;
    std::vector<std::vector<bool>> mult;
    for (auto &r : rows) {
        LeadTerm lt = lead_term(r, order);
        BoardRow br;
        br.comp = lt.comp;
        br.mu = lt.mu;
        br.cls = lt.mu.cls();
        br.order = row_order(r);
        br.mult.assign(n, false);
        if (br.order == q)
            for (int v = 0; v < br.cls; ++v) br.mult[v] = true;
        mult.push_back(br.mult);
        rep.board.rows.push_back(br);
    }
    std::sort(rep.board.rows.begin(), rep.board.rows.end(), [&](const BoardRow &x, const BoardRow &y) {
        if (x.cls != y.cls) return x.cls > y.cls;
        return order.cmp(x.comp, x.mu, y.comp, y.mu) > 0;
    });
    // spans over K inside the order-(q+1) coefficient space
    std::map<std::pair<int, Mono>, int> index;
    int ncols = 0;
    int m = A.cols();
    for (int k = 0; k < m; ++k)
        for (int d = 0; d <= q + 1; ++d)
            for (auto &mu : monomials_of_degree(n, d)) index.emplace(std::make_pair(k, mu), ncols++);
    auto to_vec = [&](const ModuleRow &r) {
        std::vector<RatFunc> v(ncols, RatFunc(ctx));
        for (int k = 0; k < m; ++k)
            for (auto &[mu, c] : r[k].terms()) v[index.at({k, mu})] = v[index.at({k, mu})] + c;
        return v;
    };
    std::vector<std::vector<RatFunc>> all, restricted;
    for (size_t i = 0; i < rows.size(); ++i) {
        all.push_back(to_vec(rows[i]));
        restricted.push_back(all.back());
        for (int v = 0; v < n; ++v) {
            ModuleRow p = row_op_mul(DiffOp::d(ctx, v), rows[i]);
            auto vec = to_vec(p);
            all.push_back(vec);
            if (mult[i][v]) restricted.push_back(vec);
        }
    }
    auto rank_of = [&](std::vector<std::vector<RatFunc>> &vv) {
        KMatrix M(ctx, static_cast<int>(vv.size()), ncols);
        for (size_t i = 0; i < vv.size(); ++i)
            for (int j = 0; j < ncols; ++j) M.at(static_cast<int>(i), j) = vv[i][j];
        return k_rank(std::move(M));
    };
    rep.dim_all = rank_of(all);
    rep.dim_mult = rank_of(restricted);
    rep.involutive = rep.dim_all == rep.dim_mult;
    return rep;
}

// ---- linear coordinate changes ----

namespace {

// substitute x_j -> sum_i S[j][i] x_i in a polynomial (parameters untouched)
RatFunc subst_linear(const RatFunc &f, const std::vector<std::vector<mpq_class>> &S) {
    CtxPtr ctx = f.ctx();
    int n = ctx->nvars();
    int w = ctx->ncoeffvars();
    auto subst_poly = [&](const Poly &p) {
        // work over rational coefficients, clear denominators at the end
        std::map<Mono, mpq_class, MonoLess> acc;
        for (auto &[m, c] : p.terms()) {
            std::map<Mono, mpq_class, MonoLess> term;
            Mono pm(w); // parameter part
            for (int i = n; i < w; ++i) pm.e[i] = m.e[i];
            term[pm] = mpq_class(c);
            for (int j = 0; j < n; ++j) {
                for (uint32_t rep = 0; rep < m.e[j]; ++rep) {
                    std::map<Mono, mpq_class, MonoLess> next;
                    for (auto &[tm, tc] : term) {
                        for (int i = 0; i < n; ++i) {
                            if (S[j][i] == 0) continue;
                            Mono nm = tm.times_var(i);
                            next[nm] += tc * S[j][i];
                        }
                    }
                    term = std::move(next);
                }
            }
            for (auto &[tm, tc] : term) acc[tm] += tc;
        }
        mpz_class lcm(1);
        for (auto &[m2, c2] : acc) {
            c2.canonicalize();
            if (c2 != 0) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), c2.get_den().get_mpz_t());
        }
        Poly out(w);
        for (auto &[m2, c2] : acc) {
            if (c2 == 0) continue;
            out.add_term(m2, mpz_class(c2.get_num() * (lcm / c2.get_den())));
        }
        return std::make_pair(out, lcm);
    };
    auto [np, nd] = subst_poly(f.num());
    auto [dp, dd] = subst_poly(f.den());
    return RatFunc(ctx, np.mul_scalar(dd), dp.mul_scalar(nd));
}

} // namespace

OpMatrix coordinate_change(const OpMatrix &A, const std::vector<std::vector<mpq_class>> &M) {
    CtxPtr ctx = A.ctx();
    int n = ctx->nvars();
    auto Minv = q_invert(M);
    if (Minv.empty()) throw std::runtime_error("coordinate change matrix is singular");
    // d_j -> sum_i M[i][j] dbar_i ; x_j -> sum_i Minv[j][i] xbar_i
    std::vector<DiffOp> dsub;
    for (int j = 0; j < n; ++j) {
        DiffOp s(ctx);
        for (int i = 0; i < n; ++i) {
            if (M[i][j] == 0) continue;
            s = s + DiffOp::d(ctx, i).scale(RatFunc(ctx, M[i][j]));
        }
        dsub.push_back(s);
    }
    OpMatrix out(ctx, A.rows(), A.cols());
    out.row_labels = A.row_labels;
    out.col_labels = A.col_labels;
    for (int r = 0; r < A.rows(); ++r)
        for (int c = 0; c < A.cols(); ++c) {
            DiffOp res(ctx);
            for (auto &[mu, coeff] : A.at(r, c).terms()) {
                DiffOp term(ctx, subst_linear(coeff, Minv));
                for (int j = 0; j < n; ++j)
                    for (uint32_t k = 0; k < mu.e[j]; ++k) term = term * dsub[j];
                res = res + term;
            }
            out.at(r, c) = res;
        }
    return out;
}

// ---- delta-regularization and ranks ----

namespace {

// certificate: the frame's board reproduces the prolonged symbol dimension
bool frame_certified(const JanetBasis &B, const Characters &ch) {
    if (!ch.chain_ok || !ch.monotone_ok) return false;
    DimsCheck dc = dims_check(B, 1);
    return dc.g_closed == dc.g_prolonged;
}

std::vector<std::vector<mpq_class>> random_change(int n, std::mt19937_64 &rng) {
    std::uniform_int_distribution<int> entry(-1, 1);
    for (int attempt = 0; attempt < 100; ++attempt) {
        std::vector<std::vector<mpq_class>> M(n, std::vector<mpq_class>(n, mpq_class(0)));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) M[i][j] = (i == j) ? 1 + entry(rng) : entry(rng);
        if (!q_invert(M).empty()) return M;
    }
    // fall back to the identity
    std::vector<std::vector<mpq_class>> M(n, std::vector<mpq_class>(n, mpq_class(0)));
    for (int i = 0; i < n; ++i) M[i][i] = 1;
    return M;
}

} // namespace

RegularizeResult delta_regularize(const OpMatrix &A, const TermOrder &order, int max_tries,
                                  uint64_t seed) {
    CtxPtr ctx = A.ctx();
    int n = ctx->nvars();
    std::vector<std::vector<mpq_class>> id(n, std::vector<mpq_class>(n, mpq_class(0)));
    for (int i = 0; i < n; ++i) id[i][i] = 1;

    RegularizeResult best;
    bool have = false;
    bool tied = true;
    auto consider = [&](const std::vector<std::vector<mpq_class>> &M, bool is_id) {
        OpMatrix rows = is_id ? A : coordinate_change(A, M);
        JanetBasis B = janet_complete(rows, order, false);
        Characters ch = B.empty() ? Characters{} : B.characters();
        bool cert = !B.empty() && frame_certified(B, ch);
        RegularizeResult cand{rows, M, std::move(B), ch, is_id, cert, false};
        if (!have) {
            best = std::move(cand);
            have = true;
            return;
        }
        auto key = [](const RegularizeResult &r) {
            return std::tuple<int, int, std::vector<long long>>(
                r.certified ? 0 : 1, r.chars.q,
                [&] {
                    std::vector<long long> v(r.chars.beta.rbegin(), r.chars.beta.rend());
                    for (auto &x : v) x = -x;
                    return v;
                }());
        };
        if (key(cand) != key(best)) tied = false;
        if (key(cand) < key(best)) best = std::move(cand);
    };
    consider(id, true);
    if (best.certified) {
        best.all_tied = false;
        return best;
    }
    std::mt19937_64 rng(seed);
    for (int t = 0; t < max_tries; ++t) {
        consider(random_change(n, rng), false);
        if (best.certified && t >= 1) break;
    }
    best.all_tied = tied;
    return best;
}

long long differential_rank(const OpMatrix &A, int max_tries, uint64_t seed) {
    if (A.is_zero()) return 0;
    auto res = delta_regularize(A, {}, max_tries, seed);
    if (res.basis.empty()) return 0;
    if (res.basis.is_full_module()) return A.cols();
    return res.chars.beta_n();
}

long long module_rank(const OpMatrix &A, int max_tries, uint64_t seed) {
    return A.cols() - differential_rank(A, max_tries, seed);
}

DimsCheck dims_check(const JanetBasis &B, int r) {
    DimsCheck dc;
    dc.r = r;
    Characters ch = B.characters();
    dc.q = ch.q;
    for (int i = 1; i <= ch.n; ++i) {
        dc.g_closed += binom_ll(r + i - 1, r) * ch.alpha[i - 1];
        dc.R_closed += binom_ll(r + i, r) * ch.alpha[i - 1];
    }
    // direct prolongation at a generic point
    std::vector<ModuleRow> rows;
    for (auto &g : B.gens()) rows.push_back(g.row);
    OpMatrix A = rows_to_matrix(B.ctx(), rows, B.ncols());
    GenericPoint pt = pick_generic_point(A);
    SymbolSpace g(A, pt);
    dc.g_prolonged = g.dim(dc.q + r);
    dc.R_prolonged = jet_solution_dim(A, dc.q + r, pt);
    // base term dim R_{q-1}: rows of order <= q-1 only
    std::vector<ModuleRow> low;
    for (auto &gg : B.gens())
        if (row_order(gg.row) <= dc.q - 1) low.push_back(gg.row);
    long long dimRqm1;
    if (low.empty()) {
        dimRqm1 = jet_space_dim(ch.n, ch.m, dc.q - 1);
    } else {
        OpMatrix L = rows_to_matrix(B.ctx(), low, B.ncols());
        dimRqm1 = jet_solution_dim(L, dc.q - 1, pt);
    }
    dc.R_closed += dimRqm1;
    return dc;
}

} // namespace parametrix
