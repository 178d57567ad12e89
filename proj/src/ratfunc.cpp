#include "parametrix/ratfunc.hpp"

#include <sstream>

namespace parametrix {

RatFunc::RatFunc(CtxPtr ctx)
  : ctx_(std::move(ctx)), num_(ctx_->ncoeffvars()), den_(ctx_->ncoeffvars(), mpz_class(1)) {}

RatFunc::RatFunc(CtxPtr ctx, const mpq_class &value) : RatFunc(std::move(ctx)) {
    num_ = Poly(ctx_->ncoeffvars(), value.get_num());
    den_ = Poly(ctx_->ncoeffvars(), value.get_den());
}

RatFunc::RatFunc(CtxPtr ctx, Poly num, Poly den)
  : ctx_(std::move(ctx)), num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw DivisionByZero("zero denominator");
    reduce();
}

RatFunc RatFunc::var(CtxPtr ctx, int i) {
    if (i < 0 || i >= ctx->nvars()) throw ContextError("variable index out of range");
    RatFunc r(ctx);
    r.num_ = Poly::var(ctx->ncoeffvars(), i);
    return r;
}

RatFunc RatFunc::param(CtxPtr ctx, const std::string &name) {
    int idx = ctx->find_coeff_var(name);
    if (idx < ctx->nvars()) throw ContextError("unknown parameter: " + name);
    RatFunc r(ctx);
    r.num_ = Poly::var(ctx->ncoeffvars(), idx);
    return r;
}

bool RatFunc::is_one() const {
    return num_.is_constant() && den_.is_constant() && !num_.is_zero() &&
           num_.constant_value() == den_.constant_value();
}

mpq_class RatFunc::constant_value() const {
    mpq_class q(num_.constant_value(), den_.constant_value());
    q.canonicalize();
    return q;
}

void RatFunc::reduce() {
    if (num_.is_zero()) {
        den_ = Poly(den_.width(), mpz_class(1));
        return;
    }
    Poly g = poly_gcd(num_, den_);
    if (!(g.is_constant() && g.constant_value() == 1)) {
        num_ = num_.div_exact(g);
        den_ = den_.div_exact(g);
    }
    if (den_.leading_coeff() < 0) {
        num_ = -num_;
        den_ = -den_;
    }
}

RatFunc RatFunc::operator+(const RatFunc &o) const {
    require_same_context(ctx_, o.ctx_);
    return RatFunc(ctx_, num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

RatFunc RatFunc::operator-(const RatFunc &o) const {
    require_same_context(ctx_, o.ctx_);
    return RatFunc(ctx_, num_ * o.den_ - o.num_ * den_, den_ * o.den_);
}

RatFunc RatFunc::operator-() const {
    RatFunc r = *this;
    r.num_ = -r.num_;
    return r;
}

RatFunc RatFunc::operator*(const RatFunc &o) const {
    require_same_context(ctx_, o.ctx_);
    if (is_zero() || o.is_zero()) return RatFunc(ctx_);
    // cross-cancel to keep intermediates small
    Poly g1 = poly_gcd(num_, o.den_), g2 = poly_gcd(o.num_, den_);
    Poly n1 = num_.div_exact(g1), d2 = o.den_.div_exact(g1);
    Poly n2 = o.num_.div_exact(g2), d1 = den_.div_exact(g2);
    return RatFunc(ctx_, n1 * n2, d1 * d2);
}

RatFunc RatFunc::inv() const {
    if (is_zero()) throw DivisionByZero("inverse of zero");
    return RatFunc(ctx_, den_, num_);
}

RatFunc RatFunc::operator/(const RatFunc &o) const { return *this * o.inv(); }

RatFunc RatFunc::derive(int i) const {
    if (i < 0 || i >= ctx_->nvars()) throw ContextError("derivation index out of range");
    // (n/d)' = (n'd - nd')/d^2
    Poly np = num_.derivative(i), dp = den_.derivative(i);
    return RatFunc(ctx_, np * den_ - num_ * dp, den_ * den_);
}

namespace {

// substitute params by rationals; returns (poly in remaining vars, denominator scalar)
std::pair<Poly, mpz_class> subst_params(const Poly &p, const Context &ctx,
                                        const std::map<std::string, mpq_class> &bindings) {
    int n = ctx.nvars();
    std::vector<std::optional<mpq_class>> vals(ctx.ncoeffvars());
    for (auto &[name, v] : bindings) {
        int idx = ctx.find_coeff_var(name);
        if (idx < n) throw ContextError("specialize: unknown parameter " + name);
        vals[idx] = v;
    }
    // common denominator handling: accumulate rational coefficients, then clear
    std::map<Mono, mpq_class, MonoLess> acc;
    for (auto &[m, c] : p.terms()) {
        mpq_class coeff(c);
        Mono mm = m;
        for (int i = n; i < static_cast<int>(ctx.ncoeffvars()); ++i) {
            if (!vals[i] || mm.e[i] == 0) continue;
            for (uint32_t k = 0; k < mm.e[i]; ++k) coeff *= *vals[i];
            mm.e[i] = 0;
        }
        acc[mm] += coeff;
    }
    mpz_class lcm(1);
    for (auto &[m, c] : acc) {
        c.canonicalize();
        if (c != 0) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), c.get_den().get_mpz_t());
    }
    Poly out(p.width());
    for (auto &[m, c] : acc) {
        if (c == 0) continue;
        out.add_term(m, mpz_class(c.get_num() * (lcm / c.get_den())));
    }
    return {out, lcm};
}

} // namespace

RatFunc RatFunc::specialize(const std::map<std::string, mpq_class> &bindings) const {
    auto [n2, nden] = subst_params(num_, *ctx_, bindings);
    auto [d2, dden] = subst_params(den_, *ctx_, bindings);
    if (d2.is_zero()) throw PoleError("specialization hits a pole: denominator vanishes");
    return RatFunc(ctx_, n2.mul_scalar(dden), d2.mul_scalar(nden));
}

mpq_class RatFunc::eval(const std::vector<mpq_class> &xs) const {
    if (static_cast<int>(xs.size()) != ctx_->nvars())
        throw ContextError("eval: need a value per independent variable");
    auto eval_poly = [&](const Poly &p) {
        mpq_class s = 0;
        for (auto &[m, c] : p.terms()) {
            for (int i = ctx_->nvars(); i < ctx_->ncoeffvars(); ++i)
                if (m.e[i]) throw ContextError("eval: unbound parameter present");
            mpq_class t(c);
            for (int i = 0; i < ctx_->nvars(); ++i)
                for (uint32_t k = 0; k < m.e[i]; ++k) t *= xs[i];
            s += t;
        }
        return s;
    };
    mpq_class d = eval_poly(den_);
    if (d == 0) throw PoleError("evaluation hits a pole");
    mpq_class r = eval_poly(num_) / d;
    r.canonicalize();
    return r;
}

std::string RatFunc::str() const {
    std::vector<std::string> names;
    for (int i = 0; i < ctx_->ncoeffvars(); ++i) names.push_back(ctx_->coeff_var_name(i));
    if (den_.is_constant() && den_.constant_value() == 1) return num_.str(names);
    std::ostringstream os;
    bool npar = num_.nterms() > 1;
    bool dpar = den_.nterms() > 1 || !(den_.is_constant() || den_.terms().begin()->second == 1);
    if (npar) os << "(" << num_.str(names) << ")";
    else os << num_.str(names);
    os << "/";
    if (dpar) os << "(" << den_.str(names) << ")";
    else os << den_.str(names);
    return os.str();
}

} // namespace parametrix
