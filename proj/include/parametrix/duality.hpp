#ifndef PARAMETRIX_DUALITY_HPP
#define PARAMETRIX_DUALITY_HPP

#include <optional>

#include "parametrix/cc.hpp"

namespace parametrix {

struct TorsionWitness {
    ModuleRow row;                    // residue class representative over the eta unknowns
    std::optional<DiffOp> annihilator; // least-order P with P z in the row module
};

// The five stages: 1 take ad(D1); 2 its generating CC, called ad(D); 3 the
// candidate D = ad(ad(D)); 4 the CC D1' of D; 5 compare D1 with D1'.
struct DualityReport {
    OpMatrix D1, adD1, adD, D, D1prime;
    bool torsion_free = false;
    std::vector<TorsionWitness> witnesses;
    long long rank_D1 = 0;  // differential rank of D1
    long long rank_M = 0;   // rk_D of the presented module = cols - rank_D1
    int witness_max_order = 3;
};

DualityReport double_duality(const OpMatrix &D1, int annihilator_max_order = 3,
                             uint64_t seed = 0);

// least-order nonzero P with P z inside the row module captured by B;
// nullopt when the bound is exhausted
std::optional<DiffOp> annihilator_search(const ModuleRow &z, const JanetBasis &B, int max_order);
std::optional<DiffOp> annihilator_search(const ModuleRow &z, const OpMatrix &D1, int max_order);

struct TorsionError : std::runtime_error {
    explicit TorsionError(std::string msg, std::vector<TorsionWitness> w)
      : std::runtime_error(std::move(msg)), witnesses(std::move(w)) {}
    std::vector<TorsionWitness> witnesses;
};

// the operator D of the report; refuses with TorsionError on a torsion verdict
OpMatrix canonical_parametrization(const OpMatrix &D1, uint64_t seed = 0);

struct MinimalParametrization {
    std::vector<int> columns; // of the canonical parametrization
    OpMatrix op;
};

struct MinimalSearchResult {
    OpMatrix canonical;
    long long target_rank = 0;
    std::vector<MinimalParametrization> found;
    bool enumeration_truncated = false;
};

// column-subset minimal parametrizations with rk_D(M) potentials
MinimalSearchResult minimal_parametrization(const OpMatrix &D1, uint64_t seed = 0,
                                            long long subset_cap = 10000);

// n = 1 only: t(M) = 0 iff ad(D1) is injective, i.e. the row module of ad(D1)
// is all of the free module. Falls back to the full test when D1 has CC.
bool controllability_n1(const OpMatrix &D1, uint64_t seed = 0);

// certificate checker: does D1 generate exactly the CC of D?
CcCheck check_parametrization(const OpMatrix &D, const OpMatrix &D1);

} // namespace parametrix

#endif
