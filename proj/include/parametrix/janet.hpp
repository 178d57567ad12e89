#ifndef PARAMETRIX_JANET_HPP
#define PARAMETRIX_JANET_HPP

#include <optional>

#include "parametrix/opmatrix.hpp"

namespace parametrix {

using ModuleRow = std::vector<DiffOp>; // element of D^m, fixed length

// Term order on module terms (component, d-monomial): graded order on the
// monomial with d_n > ... > d_1, ties broken by component priority.
struct TermOrder {
    std::vector<int> comp_priority; // empty = identity (lower index first)

    int rank_of(int comp) const {
        if (comp_priority.empty()) return comp;
        return comp_priority.at(comp);
    }
    // returns <0, 0, >0 like a comparator; "greater" = earlier to solve for
    int cmp(int comp_a, const Mono &mu_a, int comp_b, const Mono &mu_b) const {
        int c = mono_cmp(mu_a, mu_b);
        if (c != 0) return c;
        int ra = rank_of(comp_a), rb = rank_of(comp_b);
        if (ra != rb) return ra < rb ? 1 : -1;
        return 0;
    }
};

struct LeadTerm {
    int comp = -1;
    Mono mu;
};

// leading term of a nonzero module row
LeadTerm lead_term(const ModuleRow &row, const TermOrder &order);
bool row_is_zero(const ModuleRow &row);
int row_order(const ModuleRow &row); // -1 for zero

struct JanetGenerator {
    ModuleRow row;            // leading coefficient normalized to 1
    LeadTerm lead;
    std::vector<bool> mult;   // multiplicative variables, size n
    ModuleRow expr;           // cofactors over the original rows (if tracked)
};

struct BoardRow {
    int comp;
    Mono mu;
    int cls;
    int order;
    std::vector<bool> mult;
};

struct Board {
    int n = 0;
    std::vector<BoardRow> rows; // sorted: class descending, then lead descending
    std::string render() const;
};

struct Characters {
    int q = 0, n = 0, m = 0;
    std::vector<long long> beta;  // beta[i-1] = solved order-q terms of class i
    std::vector<long long> alpha; // alpha[i-1] per Def 4.4 formula
    bool chain_ok = true;         // classes with beta>0 consecutive, ending at n
    bool monotone_ok = true;      // alpha non-increasing
    long long alpha_n() const { return alpha.empty() ? 0 : alpha.back(); }
    long long beta_n() const { return beta.empty() ? 0 : beta.back(); }
};

class JanetBasis {
  public:
    JanetBasis() = default;
    JanetBasis(CtxPtr ctx, int ncols, TermOrder order)
      : ctx_(std::move(ctx)), ncols_(ncols), order_(order) {}

    const CtxPtr &ctx() const { return ctx_; }
    int ncols() const { return ncols_; }
    const TermOrder &order() const { return order_; }
    const std::vector<JanetGenerator> &gens() const { return gens_; }
    bool empty() const { return gens_.empty(); }
    int max_order() const;
    bool tracked() const { return tracked_; }
    int nrows_orig() const { return nrows_orig_; }

    Board board() const;
    Characters characters() const; // requires the basis be completed

    // reduction; cofactors (if requested) satisfy v = sum cof_h o gens[h].row + result
    ModuleRow normal_form(const ModuleRow &v, std::vector<DiffOp> *cofactors = nullptr) const;
    bool contains(const ModuleRow &v) const { return row_is_zero(normal_form(v)); }
    // true iff every unit row e_k reduces to zero, i.e. the module is all of D^m
    bool is_full_module() const;

    // number of degree-q monomials Janet-divisible by some generator, by class
    std::vector<long long> principal_counts(int q) const;

    friend JanetBasis janet_complete(CtxPtr ctx, const std::vector<ModuleRow> &rows,
                                     const TermOrder &order, bool track);

  private:
    void assign_multiplicative();
    int find_reducer(int comp, const Mono &mu, int skip = -1) const;
    void autoreduce();
    void insert(JanetGenerator g);

    CtxPtr ctx_;
    int ncols_ = 0;
    TermOrder order_;
    std::vector<JanetGenerator> gens_;
    bool tracked_ = false;
    int nrows_orig_ = 0;
};

// Janet completion of the row module (classical Janet division; terminates in
// any coordinate frame). With track=true each generator carries its expression
// in terms of the input rows.
JanetBasis janet_complete(CtxPtr ctx, const std::vector<ModuleRow> &rows,
                          const TermOrder &order, bool track = false);

JanetBasis janet_complete(const OpMatrix &A, const TermOrder &order = {}, bool track = false);

std::vector<ModuleRow> matrix_rows(const OpMatrix &A);
OpMatrix rows_to_matrix(CtxPtr ctx, const std::vector<ModuleRow> &rows, int ncols);

// ---- system-level involution (solved-form test with class-based
// multiplicative variables; this is coordinate dependent) ----

struct InvolutionReport {
    bool involutive = false;
    Board board;
    // dimension of the span of all first prolongations vs multiplicative ones
    long long dim_all = 0, dim_mult = 0;
};

InvolutionReport system_involution(const OpMatrix &A, const TermOrder &order = {});

// rewrite rows under the linear change xbar = M x (d_j -> sum_i M_ij dbar_i,
// coefficients composed with the inverse substitution); M rational, invertible
OpMatrix coordinate_change(const OpMatrix &A, const std::vector<std::vector<mpq_class>> &M);

struct RegularizeResult {
    OpMatrix rows;                           // transformed system
    std::vector<std::vector<mpq_class>> M;   // the change applied
    JanetBasis basis;                        // completed basis in the new frame
    Characters chars;
    bool identity = false;
    bool certified = false; // closed-form vs prolonged symbol dims agreed
    bool all_tied = false;
};

RegularizeResult delta_regularize(const OpMatrix &A, const TermOrder &order = {},
                                  int max_tries = 8, uint64_t seed = 0);

// beta^n_q of the involutive form after delta-regularization
long long differential_rank(const OpMatrix &A, int max_tries = 8, uint64_t seed = 0);
// rk_D of the module presented by the rows of A: cols - differential_rank
long long module_rank(const OpMatrix &A, int max_tries = 8, uint64_t seed = 0);

struct DimsCheck {
    int q = 0, r = 0;
    long long g_closed = 0, g_prolonged = 0;
    long long R_closed = 0, R_prolonged = 0;
    bool agree() const { return g_closed == g_prolonged && R_closed == R_prolonged; }
};

// Prop-4.10 closed-form dimensions against direct prolongation at a generic
// point; B must be a completed basis
DimsCheck dims_check(const JanetBasis &B, int r);

} // namespace parametrix

#endif
