#ifndef PARAMETRIX_SPENCER_HPP
#define PARAMETRIX_SPENCER_HPP

#include "parametrix/linalg.hpp"
#include "parametrix/opmatrix.hpp"

namespace parametrix {

long long binom_ll(long long a, long long b);
// number of monomials of degree q in w variables
long long monomial_count(int w, int q);
// number of class-i monomials of degree q in n variables (1 <= i <= n)
long long class_count(int n, int q, int i);

// Rational evaluation point for the x-variables plus bindings for parameters,
// chosen away from coefficient poles.
struct GenericPoint {
    std::vector<mpq_class> xs;
    std::map<std::string, mpq_class> params;
    bool genericity_warning = false; // ranks disagreed between sample points
};

GenericPoint pick_generic_point(const OpMatrix &A, int salt = 0);
mpq_class eval_at(const RatFunc &f, const GenericPoint &pt);

// all operator prolongations d_nu o row up to total order q, coefficients
// evaluated at pt; columns indexed by jets (k, mu), |mu| <= q
QMatrix jet_constraint_matrix(const OpMatrix &A, int q, const GenericPoint &pt);
long long jet_space_dim(int n, int m, int q); // m * C(n+q, n)
long long jet_solution_dim(const OpMatrix &A, int q, const GenericPoint &pt);

// Exact-rational symbol of a system: constraints are the top-order terms of
// each row, prolonged algebraically. Lower slots of the ladder use the rows
// of exactly that order; below every row order the space is full.
class SymbolSpace {
  public:
    SymbolSpace() = default;
    SymbolSpace(const OpMatrix &A, GenericPoint pt);

    int n() const { return n_; }
    int m() const { return m_; }
    int base_order() const { return q0_; }
    const GenericPoint &point() const { return pt_; }

    long long dim(int t) const;                              // dim g_t
    const std::vector<std::vector<mpq_class>> &basis(int t) const; // nullspace basis

    bool is_finite_type(int r_max, int *vanish_at = nullptr) const;

    std::string dims_table(int r_max) const;

  private:
    QMatrix constraint_matrix(int t) const;

    CtxPtr ctx_;
    int n_ = 0, m_ = 0, q0_ = 0;
    GenericPoint pt_;
    struct Constraint {
        int order;
        std::map<std::pair<int, Mono>, mpq_class> coeffs; // |mu| == order
    };
    std::vector<Constraint> constraints_;
    mutable std::map<int, std::vector<std::vector<mpq_class>>> basis_cache_;
};

struct DeltaSlot {
    int s = 0, t = 0;         // form degree and symbol order of the middle slot
    long long dim_domain = 0; // dim Lambda^s T* (x) g_t
    long long dim_Z = 0, dim_B = 0, dim_H = 0;
    long long rank_out = 0;   // rank of delta on the slot (into s+1)
};

// cohomology at Lambda^s T* (x) g_t (t is the absolute symbol order)
DeltaSlot delta_slot(const SymbolSpace &g, int s, int t);
long long spencer_cohomology(const SymbolSpace &g, int s, int t);

// delta o delta vanishes out of the (s, t) slot; used as a property check
bool delta_squared_zero(const SymbolSpace &g, int s, int t);

struct AcyclicityReport {
    bool acyclic = false;
    int base = 0, s = 0;
    int certified_r = -1;   // checked for 0 <= r <= certified_r
    bool complete = false;  // finite type collapsed the tail, so verdict is total
    std::vector<std::array<long long, 2>> failures; // (s, t) with H != 0
};

// H^1 = ... = H^s = 0 at orders base+r for r = 0..r_max
AcyclicityReport is_s_acyclic(const SymbolSpace &g, int s, int base, int r_max);

struct FiReport {
    bool formally_integrable = false;
    bool symbol_ok = false;      // 2-acyclicity certificate for the final system
    int rounds = 0;
    std::vector<std::vector<JetExpr>> new_equations; // per round, reduced forms
    OpMatrix completed;          // input plus the equations found
    bool genericity_warning = false;
};

FiReport fi_criterion(const OpMatrix &A, int r_max = 4);

} // namespace parametrix

#endif
