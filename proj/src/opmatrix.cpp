#include "parametrix/opmatrix.hpp"

#include <sstream>

namespace parametrix {

OpMatrix::OpMatrix(CtxPtr ctx, int rows, int cols)
  : ctx_(std::move(ctx)), rows_(rows), cols_(cols) {
    if (rows < 0 || cols < 0) throw DimensionError("negative matrix dimension");
    entries_.assign(static_cast<size_t>(rows) * cols, DiffOp(ctx_));
    for (int r = 0; r < rows; ++r) row_labels.push_back("e" + std::to_string(r + 1));
    for (int c = 0; c < cols; ++c) col_labels.push_back("u" + std::to_string(c + 1));
}

std::vector<DiffOp> OpMatrix::row(int r) const {
    std::vector<DiffOp> out;
    for (int c = 0; c < cols_; ++c) out.push_back(at(r, c));
    return out;
}

void OpMatrix::set_row(int r, const std::vector<DiffOp> &row) {
    if (static_cast<int>(row.size()) != cols_) throw DimensionError("row length mismatch");
    for (int c = 0; c < cols_; ++c) at(r, c) = row[c];
}

bool OpMatrix::is_zero() const {
    for (auto &e : entries_)
        if (!e.is_zero()) return false;
    return true;
}

int OpMatrix::order() const {
    int q = -1;
    for (auto &e : entries_) q = std::max(q, e.order());
    return q;
}

OpMatrix OpMatrix::adjoint() const {
    OpMatrix r(ctx_, cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) r.at(j, i) = at(i, j).adjoint();
    r.row_labels = col_labels;
    r.col_labels = row_labels;
    return r;
}

OpMatrix OpMatrix::compose(const OpMatrix &inner) const {
    require_same_context(ctx_, inner.ctx_);
    if (cols_ != inner.rows_) throw DimensionError("compose: inner dimensions disagree");
    OpMatrix r(ctx_, rows_, inner.cols_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < inner.cols_; ++j) {
            DiffOp s(ctx_);
            for (int k = 0; k < cols_; ++k) s = s + at(i, k) * inner.at(k, j);
            r.at(i, j) = s;
        }
    r.row_labels = row_labels;
    r.col_labels = inner.col_labels;
    return r;
}

OpMatrix OpMatrix::operator+(const OpMatrix &o) const {
    require_same_context(ctx_, o.ctx_);
    if (rows_ != o.rows_ || cols_ != o.cols_) throw DimensionError("matrix shape mismatch");
    OpMatrix r = *this;
    for (size_t i = 0; i < entries_.size(); ++i) r.entries_[i] = entries_[i] + o.entries_[i];
    return r;
}

OpMatrix OpMatrix::operator-(const OpMatrix &o) const {
    require_same_context(ctx_, o.ctx_);
    if (rows_ != o.rows_ || cols_ != o.cols_) throw DimensionError("matrix shape mismatch");
    OpMatrix r = *this;
    for (size_t i = 0; i < entries_.size(); ++i) r.entries_[i] = entries_[i] - o.entries_[i];
    return r;
}

OpMatrix OpMatrix::select_columns(const std::vector<int> &cols) const {
    OpMatrix r(ctx_, rows_, static_cast<int>(cols.size()));
    for (int i = 0; i < rows_; ++i)
        for (size_t j = 0; j < cols.size(); ++j) r.at(i, static_cast<int>(j)) = at(i, cols[j]);
    r.row_labels = row_labels;
    r.col_labels.clear();
    for (int c : cols) r.col_labels.push_back(col_labels.at(c));
    return r;
}

OpMatrix OpMatrix::vstack(const OpMatrix &below) const {
    require_same_context(ctx_, below.ctx_);
    if (cols_ != below.cols_) throw DimensionError("vstack: column counts disagree");
    OpMatrix r(ctx_, rows_ + below.rows_, cols_);
    for (int i = 0; i < rows_; ++i) r.set_row(i, row(i));
    for (int i = 0; i < below.rows_; ++i) r.set_row(rows_ + i, below.row(i));
    r.col_labels = col_labels;
    r.row_labels = row_labels;
    r.row_labels.insert(r.row_labels.end(), below.row_labels.begin(), below.row_labels.end());
    return r;
}

OpMatrix OpMatrix::specialize(const std::map<std::string, mpq_class> &bindings) const {
    OpMatrix r = *this;
    for (auto &e : r.entries_) e = e.specialize(bindings);
    return r;
}

std::string OpMatrix::str() const {
    std::ostringstream os;
    for (int i = 0; i < rows_; ++i) {
        os << "[";
        for (int j = 0; j < cols_; ++j) {
            if (j) os << ", ";
            os << at(i, j).str();
        }
        os << "]\n";
    }
    return os.str();
}

OpMatrix identity_matrix(CtxPtr ctx, int m) {
    OpMatrix r(ctx, m, m);
    for (int i = 0; i < m; ++i) r.at(i, i) = DiffOp::one(ctx);
    return r;
}

JetExpr JetExpr::jet(CtxPtr ctx, int comp, const Mono &mu) {
    JetExpr e(ctx);
    e.terms_[{comp, mu}] = RatFunc(ctx, mpq_class(1));
    return e;
}

void JetExpr::add_term(const Key &k, const RatFunc &c) {
    if (c.is_zero()) return;
    auto it = terms_.find(k);
    if (it == terms_.end()) {
        terms_.emplace(k, c);
    } else {
        it->second = it->second + c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

JetExpr JetExpr::operator+(const JetExpr &o) const {
    JetExpr r = *this;
    if (!r.ctx_) r.ctx_ = o.ctx_;
    for (auto &[k, c] : o.terms_) r.add_term(k, c);
    return r;
}

JetExpr JetExpr::operator-(const JetExpr &o) const {
    JetExpr r = *this;
    if (!r.ctx_) r.ctx_ = o.ctx_;
    for (auto &[k, c] : o.terms_) r.add_term(k, -c);
    return r;
}

JetExpr JetExpr::scale(const RatFunc &f) const {
    JetExpr r(ctx_);
    if (f.is_zero()) return r;
    for (auto &[k, c] : terms_) {
        RatFunc p = f * c;
        if (!p.is_zero()) r.terms_[k] = p;
    }
    return r;
}

std::string JetExpr::str(const std::vector<std::string> &unknowns) const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto &[k, c] : terms_) {
        std::string cs = c.str();
        bool neg = !cs.empty() && cs[0] == '-';
        if (neg) cs = (-c).str();
        os << (first ? (neg ? "-" : "") : (neg ? " - " : " + "));
        first = false;
        bool composite = cs.find_first_of("+-") != std::string::npos && cs.size() > 1;
        std::string atom = unknowns.at(k.comp);
        if (!k.mu.is_one()) {
            atom += "[";
            bool f2 = true;
            for (size_t i = 0; i < k.mu.e.size(); ++i)
                for (uint32_t t = 0; t < k.mu.e[i]; ++t) {
                    if (!f2) atom += ",";
                    atom += std::to_string(i + 1);
                    f2 = false;
                }
            atom += "]";
        }
        if (cs == "1") os << atom;
        else os << (composite ? "(" + cs + ")" : cs) << "*" << atom;
    }
    return os.str();
}

JetExpr row_to_jetexpr(const std::vector<DiffOp> &row) {
    JetExpr e;
    for (size_t k = 0; k < row.size(); ++k) {
        if (row[k].is_zero()) continue;
        if (e.is_zero()) e = JetExpr(row[k].ctx());
        for (auto &[mu, c] : row[k].terms()) e.add_term({static_cast<int>(k), mu}, c);
    }
    return e;
}

std::vector<DiffOp> jetexpr_to_row(CtxPtr ctx, const JetExpr &e, int ncols) {
    std::vector<DiffOp> row(ncols, DiffOp(ctx));
    for (auto &[k, c] : e.terms()) {
        if (k.comp >= ncols) throw DimensionError("jet component out of range");
        row[k.comp].add_term(k.mu, c);
    }
    return row;
}

std::vector<JetExpr> apply_matrix(const OpMatrix &A, const std::vector<JetExpr> &v, int nunknowns) {
    if (static_cast<int>(v.size()) != A.cols()) throw DimensionError("apply_matrix: length mismatch");
    // reuse operator composition: view v as a cols x nunknowns matrix
    OpMatrix V(A.ctx(), A.cols(), nunknowns);
    for (int k = 0; k < A.cols(); ++k) V.set_row(k, jetexpr_to_row(A.ctx(), v[k], nunknowns));
    OpMatrix R = A.compose(V);
    std::vector<JetExpr> out;
    for (int i = 0; i < A.rows(); ++i) out.push_back(row_to_jetexpr(R.row(i)));
    return out;
}

} // namespace parametrix
