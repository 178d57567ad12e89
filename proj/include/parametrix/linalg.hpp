#ifndef PARAMETRIX_LINALG_HPP
#define PARAMETRIX_LINALG_HPP

#include <functional>
#include <vector>

#include "parametrix/ratfunc.hpp"

namespace parametrix {

// Dense exact linear algebra over Q and over K = the rational function field.
// Small systems only; fraction-free is not needed at these sizes.

struct QMatrix {
    int rows = 0, cols = 0;
    std::vector<mpq_class> a; // row major

    QMatrix() = default;
    QMatrix(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c, mpq_class(0)) {}
    mpq_class &at(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
    const mpq_class &at(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }
};

int q_rank(QMatrix m);
// basis of the right nullspace, as columns-of-values vectors
std::vector<std::vector<mpq_class>> q_nullspace(QMatrix m);
// reduced row echelon form in place; returns pivot column per row
std::vector<int> q_rref(QMatrix &m);

struct KMatrix {
    int rows = 0, cols = 0;
    std::vector<RatFunc> a;

    KMatrix() = default;
    KMatrix(CtxPtr ctx, int r, int c)
      : rows(r), cols(c), a(static_cast<size_t>(r) * c, RatFunc(ctx)) {}
    RatFunc &at(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
    const RatFunc &at(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }
};

int k_rank(KMatrix m);
std::vector<std::vector<RatFunc>> k_nullspace(KMatrix m, CtxPtr ctx);

// invert an n x n rational matrix; empty result if singular
std::vector<std::vector<mpq_class>> q_invert(const std::vector<std::vector<mpq_class>> &m);

} // namespace parametrix

#endif
