#ifndef PARAMETRIX_OPMATRIX_HPP
#define PARAMETRIX_OPMATRIX_HPP

#include "parametrix/diffop.hpp"

namespace parametrix {

struct DimensionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// p x m matrix of operators acting on the left of column vectors of unknowns.
// Rows are equations, columns are unknowns; the row module sits in D^m.
class OpMatrix {
  public:
    OpMatrix() : rows_(0), cols_(0) {}
    OpMatrix(CtxPtr ctx, int rows, int cols);

    const CtxPtr &ctx() const { return ctx_; }
    int rows() const { return rows_; }
    int cols() const { return cols_; }

    const DiffOp &at(int r, int c) const { return entries_.at(r * cols_ + c); }
    DiffOp &at(int r, int c) { return entries_.at(r * cols_ + c); }

    std::vector<DiffOp> row(int r) const;
    void set_row(int r, const std::vector<DiffOp> &row);

    std::vector<std::string> row_labels, col_labels; // sized to dims

    bool is_zero() const;
    int order() const; // max entry order, -1 if zero

    OpMatrix adjoint() const;                     // transpose of entrywise ad
    OpMatrix compose(const OpMatrix &inner) const; // (*this) o inner
    OpMatrix operator+(const OpMatrix &o) const;
    OpMatrix operator-(const OpMatrix &o) const;
    OpMatrix select_columns(const std::vector<int> &cols) const;
    OpMatrix vstack(const OpMatrix &below) const;
    OpMatrix specialize(const std::map<std::string, mpq_class> &bindings) const;

    bool operator==(const OpMatrix &o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && entries_ == o.entries_;
    }

    std::string str() const;

  private:
    CtxPtr ctx_;
    int rows_, cols_;
    std::vector<DiffOp> entries_;
};

OpMatrix identity_matrix(CtxPtr ctx, int m);

// Linear combination over K of jet symbols y^k_mu of named unknowns.
class JetExpr {
  public:
    struct Key {
        int comp;
        Mono mu;
        bool operator<(const Key &o) const {
            if (comp != o.comp) return comp < o.comp;
            return MonoLess{}(mu, o.mu);
        }
        bool operator==(const Key &o) const { return comp == o.comp && mu == o.mu; }
    };
    using TermMap = std::map<Key, RatFunc>;

    JetExpr() = default;
    explicit JetExpr(CtxPtr ctx) : ctx_(std::move(ctx)) {}
    static JetExpr jet(CtxPtr ctx, int comp, const Mono &mu);

    const CtxPtr &ctx() const { return ctx_; }
    const TermMap &terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void add_term(const Key &k, const RatFunc &c);
    JetExpr operator+(const JetExpr &o) const;
    JetExpr operator-(const JetExpr &o) const;
    JetExpr scale(const RatFunc &f) const;
    bool operator==(const JetExpr &o) const { return terms_ == o.terms_; }

    std::string str(const std::vector<std::string> &unknowns) const;

  private:
    CtxPtr ctx_;
    TermMap terms_;
};

// rows of operators <-> jet expressions on the column unknowns
JetExpr row_to_jetexpr(const std::vector<DiffOp> &row);
std::vector<DiffOp> jetexpr_to_row(CtxPtr ctx, const JetExpr &e, int ncols);

// apply operator matrix to a vector of jet expressions (length = cols)
std::vector<JetExpr> apply_matrix(const OpMatrix &A, const std::vector<JetExpr> &v, int nunknowns);

} // namespace parametrix

#endif
