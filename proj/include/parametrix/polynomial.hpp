#ifndef PARAMETRIX_POLYNOMIAL_HPP
#define PARAMETRIX_POLYNOMIAL_HPP

#include <gmpxx.h>
#include <map>
#include <string>

#include "parametrix/context.hpp"
#include "parametrix/monomial.hpp"

namespace parametrix {

// Multivariate polynomial with mpz coefficients, canonical: no zero terms.
class Poly {
  public:
    using TermMap = std::map<Mono, mpz_class, MonoLess>;

    Poly() : width_(0) {}
    explicit Poly(size_t width) : width_(width) {}
    Poly(size_t width, const mpz_class &c) : width_(width) {
        if (c != 0) terms_[Mono(width)] = c;
    }
    static Poly var(size_t width, size_t i) {
        Poly p(width);
        p.terms_[Mono::unit(width, i)] = 1;
        return p;
    }

    size_t width() const { return width_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const {
        return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one());
    }
    mpz_class constant_value() const { // only sensible if is_constant()
        return terms_.empty() ? mpz_class(0) : terms_.begin()->second;
    }
    const TermMap &terms() const { return terms_; }
    size_t nterms() const { return terms_.size(); }

    const Mono &leading_mono() const { return terms_.rbegin()->first; } // requires nonzero
    const mpz_class &leading_coeff() const { return terms_.rbegin()->second; }
    int total_degree() const { // -1 for zero
        int d = -1;
        for (auto &[m, c] : terms_) d = std::max(d, m.deg());
        return d;
    }
    int degree_in(size_t i) const {
        int d = -1;
        for (auto &[m, c] : terms_) d = std::max(d, static_cast<int>(m.e[i]));
        return d;
    }

    void add_term(const Mono &m, const mpz_class &c) {
        if (c == 0) return;
        auto it = terms_.find(m);
        if (it == terms_.end()) {
            terms_.emplace(m, c);
        } else {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    Poly operator+(const Poly &o) const;
    Poly operator-(const Poly &o) const;
    Poly operator-() const;
    Poly operator*(const Poly &o) const;
    Poly mul_scalar(const mpz_class &c) const;
    Poly mul_mono(const Mono &m, const mpz_class &c) const;

    bool operator==(const Poly &o) const { return width_ == o.width_ && terms_ == o.terms_; }
    bool operator!=(const Poly &o) const { return !(*this == o); }

    // derivative with respect to coefficient variable i
    Poly derivative(size_t i) const;

    // gcd of all coefficients, non-negative; 0 for the zero polynomial
    mpz_class content() const;
    // divide by the (signed) content so the leading coefficient is positive
    Poly primitive_part() const;
    // exact division, throws if not exact
    Poly div_exact(const Poly &d) const;

    std::string str(const std::vector<std::string> &names) const;

  private:
    size_t width_;
    TermMap terms_;
};

// gcd(a,b), normalized with positive leading coefficient; gcd(0,0)=0
Poly poly_gcd(const Poly &a, const Poly &b);

} // namespace parametrix

#endif
