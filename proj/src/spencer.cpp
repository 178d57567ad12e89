#include "parametrix/spencer.hpp"

#include <array>
#include <functional>
#include <sstream>

namespace parametrix {

long long binom_ll(long long a, long long b) {
    if (b < 0 || b > a) return 0;
    b = std::min(b, a - b);
    long long r = 1;
    for (long long i = 1; i <= b; ++i) r = r * (a - b + i) / i;
    return r;
}

long long monomial_count(int w, int q) {
    if (q < 0) return 0;
    if (w == 0) return q == 0 ? 1 : 0;
    return binom_ll(q + w - 1, w - 1);
}

long long class_count(int n, int q, int i) {
    if (q <= 0) return 0;
    return monomial_count(n - i + 1, q - 1); // first nonzero exponent at slot i
}

long long jet_space_dim(int n, int m, int q) { return m * binom_ll(n + q, n); }

mpq_class eval_at(const RatFunc &f, const GenericPoint &pt) {
    return f.specialize(pt.params).eval(pt.xs);
}

namespace {

int order_of_row(const std::vector<DiffOp> &row) {
    int d = -1;
    for (auto &e : row) d = std::max(d, e.order());
    return d;
}

GenericPoint candidate_point(const Context &ctx, int salt) {
    // deterministic small rationals, staggered to dodge poles and special loci
    static const int primes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
    GenericPoint pt;
    for (int i = 0; i < ctx.nvars(); ++i)
        pt.xs.push_back(mpq_class(primes[(i + 2 * salt) % 12], 1 + ((i + salt) % 3)));
    int j = 0;
    for (const auto &p : ctx.params()) {
        pt.params[p] = mpq_class(primes[(j + 5 + 3 * salt) % 12], 2 + ((j + salt) % 4));
        ++j;
    }
    return pt;
}

bool point_ok(const OpMatrix &A, const GenericPoint &pt) {
    try {
        for (int i = 0; i < A.rows(); ++i)
            for (int j = 0; j < A.cols(); ++j)
                for (auto &[mu, c] : A.at(i, j).terms()) (void)eval_at(c, pt);
    } catch (const PoleError &) {
        return false;
    } catch (const DivisionByZero &) {
        return false;
    }
    return true;
}

// jet column indexing for |mu| <= q
struct JetIndex {
    std::vector<std::pair<int, Mono>> cols;
    std::map<std::pair<int, Mono>, int> index;

    JetIndex(int n, int m, int q) {
        for (int k = 0; k < m; ++k)
            for (int d = 0; d <= q; ++d)
                for (auto &mono : monomials_of_degree(n, d)) {
                    index.emplace(std::make_pair(k, mono), static_cast<int>(cols.size()));
                    cols.push_back({k, mono});
                }
    }
};

} // namespace

GenericPoint pick_generic_point(const OpMatrix &A, int salt) {
    for (int s = salt; s < salt + 24; ++s) {
        GenericPoint pt = candidate_point(*A.ctx(), s);
        if (point_ok(A, pt)) return pt;
    }
    throw PoleError("no pole-free evaluation point found");
}

QMatrix jet_constraint_matrix(const OpMatrix &A, int q, const GenericPoint &pt) {
    int n = A.ctx()->nvars(), m = A.cols();
    JetIndex ji(n, m, q);
    std::vector<std::vector<mpq_class>> out;
    for (int r = 0; r < A.rows(); ++r) {
        auto row = A.row(r);
        int d = order_of_row(row);
        if (d < 0) continue;
        for (int e = 0; e <= q - d; ++e) {
            for (auto &nu : monomials_of_degree(n, e)) {
                DiffOp pro = DiffOp::d_mono(A.ctx(), nu);
                std::vector<mpq_class> v(ji.cols.size(), mpq_class(0));
                bool nonzero = false;
                for (int k = 0; k < m; ++k) {
                    if (row[k].is_zero()) continue;
                    DiffOp piece = pro * row[k];
                    for (auto &[mu, c] : piece.terms()) {
                        auto it = ji.index.find({k, mu});
                        if (it == ji.index.end()) continue;
                        v[it->second] += eval_at(c, pt);
                        nonzero = true;
                    }
                }
                if (nonzero) out.push_back(std::move(v));
            }
        }
    }
    QMatrix M(static_cast<int>(out.size()), static_cast<int>(ji.cols.size()));
    for (size_t i = 0; i < out.size(); ++i)
        for (size_t j = 0; j < out[i].size(); ++j)
            M.at(static_cast<int>(i), static_cast<int>(j)) = out[i][j];
    return M;
}

long long jet_solution_dim(const OpMatrix &A, int q, const GenericPoint &pt) {
    QMatrix M = jet_constraint_matrix(A, q, pt);
    return jet_space_dim(A.ctx()->nvars(), A.cols(), q) - q_rank(M);
}

SymbolSpace::SymbolSpace(const OpMatrix &A, GenericPoint pt)
  : ctx_(A.ctx()), n_(A.ctx()->nvars()), m_(A.cols()), pt_(std::move(pt)) {
    q0_ = std::max(A.order(), 0);
    for (int r = 0; r < A.rows(); ++r) {
        auto row = A.row(r);
        int d = order_of_row(row);
        if (d < 0) continue;
        Constraint c;
        c.order = d;
        for (int k = 0; k < m_; ++k)
            for (auto &[mu, coeff] : row[k].terms())
                if (mu.deg() == d) c.coeffs[{k, mu}] = eval_at(coeff, pt_);
        if (!c.coeffs.empty()) constraints_.push_back(std::move(c));
    }
}

QMatrix SymbolSpace::constraint_matrix(int t) const {
    auto monos = monomials_of_degree(n_, t);
    std::map<Mono, int, MonoLess> idx;
    for (size_t i = 0; i < monos.size(); ++i) idx.emplace(monos[i], static_cast<int>(i));
    int ncols = static_cast<int>(m_ * monos.size());
    std::vector<std::vector<mpq_class>> rows;
    for (auto &c : constraints_) {
        if (c.order > t) continue;
        for (auto &nu : monomials_of_degree(n_, t - c.order)) {
            std::vector<mpq_class> v(ncols, mpq_class(0));
            for (auto &[key, val] : c.coeffs) {
                Mono shifted = key.second * nu;
                v[key.first * monos.size() + idx.at(shifted)] += val;
            }
            rows.push_back(std::move(v));
        }
    }
    QMatrix M(static_cast<int>(rows.size()), ncols);
    for (size_t i = 0; i < rows.size(); ++i)
        for (int j = 0; j < ncols; ++j) M.at(static_cast<int>(i), j) = rows[i][j];
    return M;
}

long long SymbolSpace::dim(int t) const {
    if (t < 0) return 0;
    return static_cast<long long>(basis(t).size());
}

const std::vector<std::vector<mpq_class>> &SymbolSpace::basis(int t) const {
    auto it = basis_cache_.find(t);
    if (it != basis_cache_.end()) return it->second;
    std::vector<std::vector<mpq_class>> b;
    if (t >= 0) b = q_nullspace(constraint_matrix(t));
    return basis_cache_.emplace(t, std::move(b)).first->second;
}

bool SymbolSpace::is_finite_type(int r_max, int *vanish_at) const {
    for (int t = q0_; t <= q0_ + r_max; ++t) {
        if (dim(t) == 0) {
            if (vanish_at) *vanish_at = t;
            return true; // prolongations of the zero symbol stay zero
        }
    }
    return false;
}

std::string SymbolSpace::dims_table(int r_max) const {
    std::ostringstream os;
    os << "dim g_t:";
    for (int t = q0_; t <= q0_ + r_max; ++t) os << " " << dim(t);
    return os.str();
}

namespace {

std::vector<std::vector<int>> wedge_tuples(int n, int s) {
    std::vector<std::vector<int>> out;
    if (s < 0 || s > n) return out;
    std::vector<int> cur;
    std::function<void(int)> go = [&](int start) {
        if (static_cast<int>(cur.size()) == s) {
            out.push_back(cur);
            return;
        }
        for (int i = start; i < n; ++i) {
            cur.push_back(i);
            go(i + 1);
            cur.pop_back();
        }
    };
    go(0);
    return out;
}

// sign of dx^i wedge dx^I in the ascending basis; 0 if i occurs in I
int insert_sign(const std::vector<int> &I, int i, std::vector<int> &out) {
    int pos = 0;
    for (int x : I) {
        if (x == i) return 0;
        if (x < i) ++pos;
    }
    out = I;
    out.insert(out.begin() + pos, i);
    return (pos % 2 == 0) ? 1 : -1;
}

struct WedgeIndex {
    std::vector<std::vector<int>> tuples;
    std::map<std::vector<int>, int> index;
    WedgeIndex(int n, int s) : tuples(wedge_tuples(n, s)) {
        for (size_t i = 0; i < tuples.size(); ++i) index.emplace(tuples[i], static_cast<int>(i));
    }
};

// matrix of delta : Lambda^s (x) g_t -> Lambda^{s+1} (x) S_{t-1} (x) E in the
// given g-basis, ambient coordinates on the target
QMatrix delta_matrix(const SymbolSpace &g, int s, int t) {
    int n = g.n(), m = g.m();
    WedgeIndex ws(n, s), ws1(n, s + 1);
    const auto &gb = g.basis(t);
    auto monos_t = monomials_of_degree(n, t);
    auto monos_tm1 = monomials_of_degree(n, t - 1);
    std::map<Mono, int, MonoLess> idx_t, idx_tm1;
    for (size_t i = 0; i < monos_t.size(); ++i) idx_t.emplace(monos_t[i], static_cast<int>(i));
    for (size_t i = 0; i < monos_tm1.size(); ++i) idx_tm1.emplace(monos_tm1[i], static_cast<int>(i));
    long long nrows = static_cast<long long>(ws.tuples.size()) * gb.size();
    long long ncols = static_cast<long long>(ws1.tuples.size()) * m * static_cast<long long>(monos_tm1.size());
    QMatrix M(static_cast<int>(nrows), static_cast<int>(ncols));
    int row = 0;
    for (auto &I : ws.tuples) {
        for (size_t b = 0; b < gb.size(); ++b, ++row) {
            const auto &w = gb[b];
            for (int i = 0; i < n; ++i) {
                std::vector<int> J;
                int sign = insert_sign(I, i, J);
                if (sign == 0) continue;
                int jpos = ws1.index.at(J);
                for (int k = 0; k < m; ++k)
                    for (size_t p = 0; p < monos_tm1.size(); ++p) {
                        Mono up = monos_tm1[p].times_var(i);
                        const mpq_class &val = w[k * monos_t.size() + idx_t.at(up)];
                        if (val == 0) continue;
                        long long col =
                            (static_cast<long long>(jpos) * m + k) * static_cast<long long>(monos_tm1.size()) + p;
                        M.at(row, static_cast<int>(col)) += sign * val;
                    }
            }
        }
    }
    return M;
}

} // namespace

DeltaSlot delta_slot(const SymbolSpace &g, int s, int t) {
    DeltaSlot slot;
    slot.s = s;
    slot.t = t;
    int n = g.n();
    WedgeIndex ws(n, s);
    long long gd = g.dim(t);
    slot.dim_domain = static_cast<long long>(ws.tuples.size()) * gd;
    if (slot.dim_domain > 0) {
        QMatrix out = delta_matrix(g, s, t);
        slot.rank_out = q_rank(out);
        slot.dim_Z = slot.dim_domain - slot.rank_out;
    }
    if (s >= 1 && g.dim(t + 1) > 0 && slot.dim_domain > 0) {
        QMatrix in = delta_matrix(g, s - 1, t + 1);
        slot.dim_B = q_rank(in);
    }
    slot.dim_H = slot.dim_Z - slot.dim_B;
    return slot;
}

long long spencer_cohomology(const SymbolSpace &g, int s, int t) { return delta_slot(g, s, t).dim_H; }

bool delta_squared_zero(const SymbolSpace &g, int s, int t) {
    // the image of the incoming delta must land inside the outgoing kernel
    DeltaSlot mid = delta_slot(g, s, t);
    if (mid.dim_B > mid.dim_Z) return false;
    if (s < 1 || g.dim(t + 1) == 0 || mid.dim_domain == 0) return true;
    // explicit check: stacking image generators onto Z does not raise the rank
    QMatrix out = delta_matrix(g, s, t);
    QMatrix in = delta_matrix(g, s - 1, t + 1);
    // compose: rows of `in` are elements of Lambda^s (x) g_t in ambient coords;
    // express them in the g-basis is implicit, instead check in ambient: apply
    // the ambient delta twice directly on basis elements of g_{t+1}
    // delta(delta(dx^I (x) w)) = 0 holds identically by antisymmetry, so here we
    // verify the computed ranks are consistent instead.
    return mid.dim_B + mid.rank_out <= mid.dim_domain;
}

AcyclicityReport is_s_acyclic(const SymbolSpace &g, int s, int base, int r_max) {
    AcyclicityReport rep;
    rep.base = base;
    rep.s = s;
    rep.acyclic = true;
    for (int r = 0; r <= r_max; ++r) {
        for (int sigma = 1; sigma <= s; ++sigma) {
            long long h = spencer_cohomology(g, sigma, base + r);
            if (h != 0) {
                rep.acyclic = false;
                rep.failures.push_back({static_cast<long long>(sigma), static_cast<long long>(base + r)});
            }
        }
        rep.certified_r = r;
        if (!rep.acyclic) break;
        if (g.dim(base + r) == 0 && g.dim(base + r + 1) == 0) {
            rep.complete = true; // the tail is identically zero from here on
            break;
        }
    }
    return rep;
}

FiReport fi_criterion(const OpMatrix &A, int r_max) {
    FiReport rep;
    GenericPoint pt = pick_generic_point(A);
    OpMatrix sys = A;
    CtxPtr ctx = A.ctx();
    int n = ctx->nvars(), m = A.cols();
    for (int round = 0; round <= r_max; ++round) {
        int q = std::max(sys.order(), 0);
        JetIndex ji(n, m, q);
        JetIndex ji1(n, m, q + 1);
        QMatrix Cq = jet_constraint_matrix(sys, q, pt);
        long long dimRq = jet_space_dim(n, m, q) - q_rank(Cq);
        QMatrix Cq1 = jet_constraint_matrix(sys, q + 1, pt);
        long long dimRq1 = jet_space_dim(n, m, q + 1) - q_rank(Cq1);
        // dimension of the fiber of R_{q+1} over zero: add unit constraints on
        // every jet of order <= q
        long long fiber;
        {
            std::vector<int> low_cols;
            for (size_t c = 0; c < ji1.cols.size(); ++c)
                if (ji1.cols[c].second.deg() <= q) low_cols.push_back(static_cast<int>(c));
            QMatrix big(Cq1.rows + static_cast<int>(low_cols.size()), Cq1.cols);
            for (int i = 0; i < Cq1.rows; ++i)
                for (int j = 0; j < Cq1.cols; ++j) big.at(i, j) = Cq1.at(i, j);
            for (size_t i = 0; i < low_cols.size(); ++i)
                big.at(Cq1.rows + static_cast<int>(i), low_cols[i]) = 1;
            fiber = jet_space_dim(n, m, q + 1) - q_rank(big);
        }
        long long dim_proj = dimRq1 - fiber;
        if (dim_proj == dimRq) {
            rep.formally_integrable = true;
            rep.completed = sys;
            SymbolSpace g(sys, pt);
            auto ac = is_s_acyclic(g, 2, g.base_order(), r_max);
            rep.symbol_ok = ac.acyclic && ac.complete;
            if (ac.acyclic && !ac.complete) rep.symbol_ok = true; // certified up to r_max
            return rep;
        }
        // new equations: annihilator of pi(R_{q+1}) modulo the existing rows
        auto null_q1 = q_nullspace(Cq1);
        std::vector<std::vector<mpq_class>> proj;
        for (auto &v : null_q1) {
            std::vector<mpq_class> w(ji.cols.size());
            for (size_t c = 0; c < ji.cols.size(); ++c) w[c] = v[ji1.index.at(ji.cols[c])];
            proj.push_back(std::move(w));
        }
        QMatrix P(static_cast<int>(proj.size()), static_cast<int>(ji.cols.size()));
        for (size_t i = 0; i < proj.size(); ++i)
            for (size_t j = 0; j < proj[i].size(); ++j)
                P.at(static_cast<int>(i), static_cast<int>(j)) = proj[i][j];
        auto ann = q_nullspace(P);
        QMatrix R = Cq;
        auto pivots = q_rref(R);
        std::vector<std::vector<mpq_class>> fresh;
        for (auto &f : ann) {
            std::vector<mpq_class> v = f;
            for (size_t r = 0; r < pivots.size(); ++r) {
                int pc = pivots[r];
                if (v[pc] == 0) continue;
                mpq_class fac = v[pc];
                for (int j = 0; j < R.cols; ++j) v[j] -= fac * R.at(static_cast<int>(r), j);
            }
            bool nz = false;
            for (auto &x : v)
                if (x != 0) nz = true;
            if (nz) fresh.push_back(std::move(v));
        }
        if (fresh.empty()) {
            rep.formally_integrable = true;
            rep.completed = sys;
            return rep;
        }
        QMatrix F(static_cast<int>(fresh.size()), static_cast<int>(ji.cols.size()));
        for (size_t i = 0; i < fresh.size(); ++i)
            for (size_t j = 0; j < fresh[i].size(); ++j)
                F.at(static_cast<int>(i), static_cast<int>(j)) = fresh[i][j];
        auto fpiv = q_rref(F);
        std::vector<JetExpr> found;
        OpMatrix extra(ctx, static_cast<int>(fpiv.size()), m);
        for (size_t i = 0; i < fpiv.size(); ++i) {
            JetExpr e(ctx);
            for (size_t c = 0; c < ji.cols.size(); ++c) {
                const mpq_class &x = F.at(static_cast<int>(i), static_cast<int>(c));
                if (x == 0) continue;
                e.add_term({ji.cols[c].first, ji.cols[c].second}, RatFunc(ctx, x));
            }
            found.push_back(e);
            extra.set_row(static_cast<int>(i), jetexpr_to_row(ctx, e, m));
        }
        rep.new_equations.push_back(found);
        rep.rounds = round + 1;
        sys = sys.vstack(extra);
    }
    rep.completed = sys;
    return rep;
}

} // namespace parametrix
