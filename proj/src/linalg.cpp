#include "parametrix/linalg.hpp"

namespace parametrix {

std::vector<int> q_rref(QMatrix &m) {
    std::vector<int> pivots;
    int r = 0;
    for (int c = 0; c < m.cols && r < m.rows; ++c) {
        int p = -1;
        for (int i = r; i < m.rows; ++i)
            if (m.at(i, c) != 0) {
                p = i;
                break;
            }
        if (p < 0) continue;
        if (p != r)
            for (int j = 0; j < m.cols; ++j) std::swap(m.at(p, j), m.at(r, j));
        mpq_class inv = 1 / m.at(r, c);
        for (int j = c; j < m.cols; ++j) m.at(r, j) *= inv;
        for (int i = 0; i < m.rows; ++i) {
            if (i == r || m.at(i, c) == 0) continue;
            mpq_class f = m.at(i, c);
            for (int j = c; j < m.cols; ++j) m.at(i, j) -= f * m.at(r, j);
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

int q_rank(QMatrix m) { return static_cast<int>(q_rref(m).size()); }

std::vector<std::vector<mpq_class>> q_nullspace(QMatrix m) {
    auto pivots = q_rref(m);
    std::vector<bool> is_pivot(m.cols, false);
    for (int c : pivots) is_pivot[c] = true;
    std::vector<std::vector<mpq_class>> basis;
    for (int c = 0; c < m.cols; ++c) {
        if (is_pivot[c]) continue;
        std::vector<mpq_class> v(m.cols, mpq_class(0));
        v[c] = 1;
        for (size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m.at(static_cast<int>(r), c);
        basis.push_back(std::move(v));
    }
    return basis;
}

std::vector<std::vector<mpq_class>> q_invert(const std::vector<std::vector<mpq_class>> &mm) {
    int n = static_cast<int>(mm.size());
    QMatrix aug(n, 2 * n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) aug.at(i, j) = mm[i][j];
        aug.at(i, n + i) = 1;
    }
    auto pivots = q_rref(aug);
    if (static_cast<int>(pivots.size()) != n || pivots.back() != n - 1) return {};
    std::vector<std::vector<mpq_class>> inv(n, std::vector<mpq_class>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) inv[i][j] = aug.at(i, n + j);
    return inv;
}

namespace {

// pick the structurally simplest pivot to slow coefficient growth
int pick_pivot(const KMatrix &m, int r, int c) {
    int best = -1;
    size_t best_sz = 0;
    for (int i = r; i < m.rows; ++i) {
        const RatFunc &f = m.at(i, c);
        if (f.is_zero()) continue;
        size_t sz = f.num().nterms() + f.den().nterms();
        if (best < 0 || sz < best_sz) {
            best = i;
            best_sz = sz;
        }
    }
    return best;
}

} // namespace

int k_rank(KMatrix m) {
    int rank = 0;
    int r = 0;
    for (int c = 0; c < m.cols && r < m.rows; ++c) {
        int p = pick_pivot(m, r, c);
        if (p < 0) continue;
        if (p != r)
            for (int j = 0; j < m.cols; ++j) std::swap(m.at(p, j), m.at(r, j));
        RatFunc pivot = m.at(r, c);
        for (int i = r + 1; i < m.rows; ++i) {
            if (m.at(i, c).is_zero()) continue;
            RatFunc f = m.at(i, c) / pivot;
            for (int j = c; j < m.cols; ++j) m.at(i, j) = m.at(i, j) - f * m.at(r, j);
        }
        ++rank;
        ++r;
    }
    return rank;
}

std::vector<std::vector<RatFunc>> k_nullspace(KMatrix m, CtxPtr ctx) {
    std::vector<int> pivots;
    int r = 0;
    for (int c = 0; c < m.cols && r < m.rows; ++c) {
        int p = pick_pivot(m, r, c);
        if (p < 0) continue;
        if (p != r)
            for (int j = 0; j < m.cols; ++j) std::swap(m.at(p, j), m.at(r, j));
        RatFunc inv = m.at(r, c).inv();
        for (int j = c; j < m.cols; ++j) m.at(r, j) = m.at(r, j) * inv;
        for (int i = 0; i < m.rows; ++i) {
            if (i == r || m.at(i, c).is_zero()) continue;
            RatFunc f = m.at(i, c);
            for (int j = c; j < m.cols; ++j) m.at(i, j) = m.at(i, j) - f * m.at(r, j);
        }
        pivots.push_back(c);
        ++r;
    }
    std::vector<bool> is_pivot(m.cols, false);
    for (int c : pivots) is_pivot[c] = true;
    std::vector<std::vector<RatFunc>> basis;
    for (int c = 0; c < m.cols; ++c) {
        if (is_pivot[c]) continue;
        std::vector<RatFunc> v(m.cols, RatFunc(ctx));
        v[c] = RatFunc(ctx, mpq_class(1));
        for (size_t rr = 0; rr < pivots.size(); ++rr)
            v[pivots[rr]] = -m.at(static_cast<int>(rr), c);
        basis.push_back(std::move(v));
    }
    return basis;
}

} // namespace parametrix
