#ifndef PARAMETRIX_CC_HPP
#define PARAMETRIX_CC_HPP

#include "parametrix/janet.hpp"

namespace parametrix {

// Generating compatibility conditions of A: a matrix whose rows generate all
// C with C o A = 0 (left syzygies of A's rows). Rows come back irredundant,
// tail-reduced against each other and in primitive integer form.
OpMatrix generating_cc(const OpMatrix &A, const TermOrder &order = {});

struct Resolution {
    std::vector<OpMatrix> ops; // ops[0] = presentation, ops[k+1] = CC of ops[k]
    std::vector<long long> dims; // [cols(ops[0]), rows(ops[0]), rows(ops[1]), ...]
    bool complete = false;       // reached an empty CC within the step budget
};

// Iterated CC starting from the formally-integrable presentation of A: the
// completion's generators of order <= max input order. max_steps < 0 means n+1.
Resolution free_resolution(const OpMatrix &A, int max_steps = -1, const TermOrder &order = {});

enum class CcVerdict { EqualModules, ClaimedTooSmall, ClaimedNotCC };

struct CcCheck {
    CcVerdict verdict = CcVerdict::EqualModules;
    int witness_row = -1;      // offending row index (meaning depends on verdict)
    ModuleRow witness;         // missing CC row or nonzero composition row
    bool ok() const { return verdict == CcVerdict::EqualModules; }
};

// does C_claimed generate exactly the CC of A?
CcCheck check_cc_generation(const OpMatrix &C_claimed, const OpMatrix &A,
                            const TermOrder &order = {});

// scale a row by a constant of K so entries are coprime integer polynomials
// with positive leading coefficient on the leading term
ModuleRow normalize_row_primitive(CtxPtr ctx, const ModuleRow &row, const TermOrder &order);

// the formally-integrable presentation used by free_resolution
OpMatrix fi_presentation(const OpMatrix &A, const TermOrder &order = {});

} // namespace parametrix

#endif
