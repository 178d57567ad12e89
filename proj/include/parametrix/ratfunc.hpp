#ifndef PARAMETRIX_RATFUNC_HPP
#define PARAMETRIX_RATFUNC_HPP

#include <map>
#include <optional>

#include "parametrix/context.hpp"
#include "parametrix/polynomial.hpp"

namespace parametrix {

// Element of K = Q(c1..ck)(x1..xn). Canonical form: gcd(num,den) = 1 and the
// denominator's leading coefficient is positive, so == is syntactic equality.
class RatFunc {
  public:
    RatFunc() = default;
    explicit RatFunc(CtxPtr ctx);                       // zero
    RatFunc(CtxPtr ctx, const mpq_class &value);        // rational constant
    RatFunc(CtxPtr ctx, Poly num, Poly den);            // reduced on construction

    static RatFunc var(CtxPtr ctx, int i);              // x_{i+1}, 0-based index
    static RatFunc param(CtxPtr ctx, const std::string &name);
    static RatFunc integer(CtxPtr ctx, long v) { return RatFunc(ctx, mpq_class(v)); }

    const CtxPtr &ctx() const { return ctx_; }
    const Poly &num() const { return num_; }
    const Poly &den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const;
    bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
    mpq_class constant_value() const; // requires is_constant()

    RatFunc operator+(const RatFunc &o) const;
    RatFunc operator-(const RatFunc &o) const;
    RatFunc operator-() const;
    RatFunc operator*(const RatFunc &o) const;
    RatFunc operator/(const RatFunc &o) const;
    RatFunc inv() const;

    bool operator==(const RatFunc &o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const RatFunc &o) const { return !(*this == o); }

    // exact partial derivative with respect to x_i (0-based, i < n)
    RatFunc derive(int i) const;

    // substitute rational values for a subset of the parameters
    RatFunc specialize(const std::map<std::string, mpq_class> &bindings) const;

    // evaluate at a rational point for the x-variables (parameters must be
    // bound first); throws PoleError on vanishing denominator
    mpq_class eval(const std::vector<mpq_class> &xs) const;

    std::string str() const;

  private:
    void reduce();

    CtxPtr ctx_;
    Poly num_, den_;
};

} // namespace parametrix

#endif
