#ifndef PARAMETRIX_DIFFOP_HPP
#define PARAMETRIX_DIFFOP_HPP

#include "parametrix/ratfunc.hpp"

namespace parametrix {

// Scalar differential operator sum a^mu d_mu over K, normal form with all
// coefficients on the left of the d-monomials. No stored coefficient is zero.
class DiffOp {
  public:
    using TermMap = std::map<Mono, RatFunc, MonoLess>; // keys have width n

    DiffOp() = default;
    explicit DiffOp(CtxPtr ctx) : ctx_(std::move(ctx)) {}
    DiffOp(CtxPtr ctx, const RatFunc &f);                  // order-0 operator
    static DiffOp d(CtxPtr ctx, int i);                    // d_{i+1}, 0-based
    static DiffOp d_mono(CtxPtr ctx, const Mono &mu);      // d_mu
    static DiffOp one(CtxPtr ctx) { return DiffOp(ctx, RatFunc(ctx, mpq_class(1))); }

    const CtxPtr &ctx() const { return ctx_; }
    const TermMap &terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    int order() const; // -1 for the zero operator

    const Mono &leading_mono() const { return terms_.rbegin()->first; } // nonzero only
    const RatFunc &leading_coeff() const { return terms_.rbegin()->second; }
    RatFunc coeff(const Mono &mu) const;

    void add_term(const Mono &mu, const RatFunc &c);

    DiffOp operator+(const DiffOp &o) const;
    DiffOp operator-(const DiffOp &o) const;
    DiffOp operator-() const;
    DiffOp scale(const RatFunc &f) const;                 // left multiply by f in K
    DiffOp operator*(const DiffOp &o) const;              // composition P o Q
    DiffOp adjoint() const;                               // (-1)^|mu| d_mu a^mu, expanded
    RatFunc apply(const RatFunc &f) const;                // standard action on K

    bool operator==(const DiffOp &o) const { return terms_ == o.terms_; }
    bool operator!=(const DiffOp &o) const { return !(*this == o); }

    DiffOp specialize(const std::map<std::string, mpq_class> &bindings) const;

    std::string str() const;

  private:
    CtxPtr ctx_;
    TermMap terms_;
};

// multinomial of componentwise binomials, for Leibniz expansions
mpz_class mono_binomial(const Mono &mu, const Mono &sigma);

// all sigma <= mu componentwise
std::vector<Mono> submonomials(const Mono &mu);

} // namespace parametrix

#endif
