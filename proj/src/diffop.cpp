#include "parametrix/diffop.hpp"

#include <sstream>

namespace parametrix {

DiffOp::DiffOp(CtxPtr ctx, const RatFunc &f) : ctx_(std::move(ctx)) {
    require_same_context(ctx_, f.ctx());
    if (!f.is_zero()) terms_[Mono(ctx_->nvars())] = f;
}

DiffOp DiffOp::d(CtxPtr ctx, int i) {
    if (i < 0 || i >= ctx->nvars()) throw ContextError("derivation index out of range");
    DiffOp p(ctx);
    p.terms_[Mono::unit(ctx->nvars(), i)] = RatFunc(ctx, mpq_class(1));
    return p;
}

DiffOp DiffOp::d_mono(CtxPtr ctx, const Mono &mu) {
    DiffOp p(ctx);
    p.terms_[mu] = RatFunc(ctx, mpq_class(1));
    return p;
}

int DiffOp::order() const {
    int q = -1;
    for (auto &[m, c] : terms_) q = std::max(q, m.deg());
    return q;
}

RatFunc DiffOp::coeff(const Mono &mu) const {
    auto it = terms_.find(mu);
    return it == terms_.end() ? RatFunc(ctx_) : it->second;
}

void DiffOp::add_term(const Mono &mu, const RatFunc &c) {
    if (c.is_zero()) return;
    auto it = terms_.find(mu);
    if (it == terms_.end()) {
        terms_.emplace(mu, c);
    } else {
        it->second = it->second + c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

DiffOp DiffOp::operator+(const DiffOp &o) const {
    require_same_context(ctx_, o.ctx_);
    DiffOp r = *this;
    for (auto &[m, c] : o.terms_) r.add_term(m, c);
    return r;
}

DiffOp DiffOp::operator-(const DiffOp &o) const {
    require_same_context(ctx_, o.ctx_);
    DiffOp r = *this;
    for (auto &[m, c] : o.terms_) r.add_term(m, -c);
    return r;
}

DiffOp DiffOp::operator-() const {
    DiffOp r(ctx_);
    for (auto &[m, c] : terms_) r.terms_[m] = -c;
    return r;
}

DiffOp DiffOp::scale(const RatFunc &f) const {
    require_same_context(ctx_, f.ctx());
    DiffOp r(ctx_);
    if (f.is_zero()) return r;
    for (auto &[m, c] : terms_) {
        RatFunc p = f * c;
        if (!p.is_zero()) r.terms_[m] = p;
    }
    return r;
}

mpz_class mono_binomial(const Mono &mu, const Mono &sigma) {
    mpz_class r(1);
    for (size_t i = 0; i < mu.e.size(); ++i) {
        mpz_class b;
        mpz_bin_uiui(b.get_mpz_t(), mu.e[i], sigma.e[i]);
        r *= b;
    }
    return r;
}

std::vector<Mono> submonomials(const Mono &mu) {
    std::vector<Mono> out;
    Mono cur(mu.width());
    struct Rec {
        const Mono &mu;
        Mono &cur;
        std::vector<Mono> &out;
        void go(size_t i) {
            if (i == mu.width()) {
                out.push_back(cur);
                return;
            }
            for (uint32_t k = 0; k <= mu.e[i]; ++k) {
                cur.e[i] = k;
                go(i + 1);
            }
            cur.e[i] = 0;
        }
    } rec{mu, cur, out};
    rec.go(0);
    return out;
}

namespace {

// derivative d^nu of a coefficient
RatFunc derive_mono(const RatFunc &f, const Mono &nu) {
    RatFunc r = f;
    for (size_t i = 0; i < nu.e.size(); ++i)
        for (uint32_t k = 0; k < nu.e[i]; ++k) r = r.derive(static_cast<int>(i));
    return r;
}

} // namespace

// d_mu o (b d_nu) = sum_{sigma<=mu} binom(mu,sigma) (d^{mu-sigma} b) d_{sigma+nu}
DiffOp DiffOp::operator*(const DiffOp &o) const {
    require_same_context(ctx_, o.ctx_);
    DiffOp r(ctx_);
    for (auto &[mu, a] : terms_) {
        auto subs = submonomials(mu);
        for (auto &[nu, b] : o.terms_) {
            for (const Mono &sigma : subs) {
                RatFunc db = derive_mono(b, mu.quotient(sigma));
                if (db.is_zero()) continue;
                mpz_class bin = mono_binomial(mu, sigma);
                RatFunc c = a * db * RatFunc(ctx_, mpq_class(bin));
                r.add_term(sigma * nu, c);
            }
        }
    }
    return r;
}

// ad(P) = sum (-1)^{|mu|} d_mu a^mu, expanded into normal form
DiffOp DiffOp::adjoint() const {
    DiffOp r(ctx_);
    for (auto &[mu, a] : terms_) {
        int sign = (mu.deg() % 2 == 0) ? 1 : -1;
        for (const Mono &sigma : submonomials(mu)) {
            RatFunc da = derive_mono(a, mu.quotient(sigma));
            if (da.is_zero()) continue;
            mpz_class bin = mono_binomial(mu, sigma) * sign;
            r.add_term(sigma, da * RatFunc(ctx_, mpq_class(bin)));
        }
    }
    return r;
}

RatFunc DiffOp::apply(const RatFunc &f) const {
    require_same_context(ctx_, f.ctx());
    RatFunc r(ctx_);
    for (auto &[mu, a] : terms_) r = r + a * derive_mono(f, mu);
    return r;
}

DiffOp DiffOp::specialize(const std::map<std::string, mpq_class> &bindings) const {
    DiffOp r(ctx_);
    for (auto &[m, c] : terms_) r.add_term(m, c.specialize(bindings));
    return r;
}

std::string DiffOp::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const Mono &mu = it->first;
        RatFunc c = it->second;
        std::string cs = c.str();
        bool neg = !cs.empty() && cs[0] == '-';
        if (neg) {
            cs = (-c).str();
            os << (first ? "-" : " - ");
        } else if (!first) {
            os << " + ";
        }
        first = false;
        bool unit_coeff = (cs == "1");
        bool composite = cs.find_first_of("+-") != std::string::npos && cs.size() > 1;
        std::string dpart;
        {
            std::ostringstream ds;
            bool fd = true;
            for (size_t i = 0; i < mu.e.size(); ++i) {
                if (!mu.e[i]) continue;
                if (!fd) ds << "*";
                ds << "d" << (i + 1);
                if (mu.e[i] > 1) ds << "^" << mu.e[i];
                fd = false;
            }
            dpart = ds.str();
        }
        if (dpart.empty()) {
            os << (composite ? "(" + cs + ")" : cs);
        } else if (unit_coeff) {
            os << dpart;
        } else {
            os << (composite ? "(" + cs + ")" : cs) << "*" << dpart;
        }
    }
    return os.str();
}

} // namespace parametrix
