#include "parametrix/polynomial.hpp"

#include <cassert>
#include <sstream>
#include <stdexcept>

namespace parametrix {

std::vector<Mono> monomials_of_degree(size_t width, int degree) {
    std::vector<Mono> out;
    Mono cur(width);
    // recursive enumeration, then sort descending
    struct Rec {
        size_t width;
        std::vector<Mono> &out;
        Mono &cur;
        void go(size_t pos, int left) {
            if (pos + 1 == width) {
                cur.e[pos] = static_cast<uint32_t>(left);
                out.push_back(cur);
                cur.e[pos] = 0;
                return;
            }
            for (int k = left; k >= 0; --k) {
                cur.e[pos] = static_cast<uint32_t>(k);
                go(pos + 1, left - k);
            }
            cur.e[pos] = 0;
        }
    } rec{width, out, cur};
    if (degree < 0) return out;
    if (width == 0) {
        if (degree == 0) out.push_back(Mono());
        return out;
    }
    rec.go(0, degree);
    std::sort(out.begin(), out.end(), [](const Mono &a, const Mono &b) { return mono_cmp(a, b) > 0; });
    return out;
}

Poly Poly::operator+(const Poly &o) const {
    Poly r = *this;
    for (auto &[m, c] : o.terms_) r.add_term(m, c);
    return r;
}

Poly Poly::operator-(const Poly &o) const {
    Poly r = *this;
    for (auto &[m, c] : o.terms_) r.add_term(m, -c);
    return r;
}

Poly Poly::operator-() const {
    Poly r(width_);
    for (auto &[m, c] : terms_) r.terms_[m] = -c;
    return r;
}

Poly Poly::mul_scalar(const mpz_class &c) const {
    Poly r(width_);
    if (c == 0) return r;
    for (auto &[m, k] : terms_) r.terms_[m] = k * c;
    return r;
}

Poly Poly::mul_mono(const Mono &m, const mpz_class &c) const {
    Poly r(width_);
    if (c == 0) return r;
    for (auto &[mm, k] : terms_) r.terms_[mm * m] = k * c;
    return r;
}

Poly Poly::operator*(const Poly &o) const {
    Poly r(width_);
    for (auto &[m1, c1] : terms_)
        for (auto &[m2, c2] : o.terms_) r.add_term(m1 * m2, c1 * c2);
    return r;
}

Poly Poly::derivative(size_t i) const {
    Poly r(width_);
    for (auto &[m, c] : terms_) {
        if (m.e[i] == 0) continue;
        Mono mm = m;
        mm.e[i] -= 1;
        r.add_term(mm, c * m.e[i]);
    }
    return r;
}

mpz_class Poly::content() const {
    mpz_class g = 0;
    for (auto &[m, c] : terms_) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
        if (g == 1) break;
    }
    return g;
}

Poly Poly::primitive_part() const {
    if (is_zero()) return *this;
    mpz_class g = content();
    if (leading_coeff() < 0) g = -g;
    Poly r(width_);
    for (auto &[m, c] : terms_) r.terms_[m] = c / g;
    return r;
}

Poly Poly::div_exact(const Poly &d) const {
    if (d.is_zero()) throw DivisionByZero("polynomial division by zero");
    Poly rem = *this;
    Poly q(width_);
    while (!rem.is_zero()) {
        const Mono &lm = rem.leading_mono();
        const mpz_class &lc = rem.leading_coeff();
        if (!d.leading_mono().divides(lm))
            throw std::runtime_error("div_exact: not divisible (monomial)");
        mpz_class qc;
        mpz_class r2;
        mpz_tdiv_qr(qc.get_mpz_t(), r2.get_mpz_t(), lc.get_mpz_t(), d.leading_coeff().get_mpz_t());
        if (r2 != 0) throw std::runtime_error("div_exact: not divisible (coefficient)");
        Mono qm = lm.quotient(d.leading_mono());
        q.add_term(qm, qc);
        rem = rem - d.mul_mono(qm, qc);
    }
    return q;
}

namespace {

// view a polynomial as univariate in variable v with Poly coefficients
std::map<int, Poly> coeffs_in(const Poly &p, size_t v) {
    std::map<int, Poly> out;
    for (auto &[m, c] : p.terms()) {
        Mono mm = m;
        int k = static_cast<int>(mm.e[v]);
        mm.e[v] = 0;
        auto it = out.find(k);
        if (it == out.end()) it = out.emplace(k, Poly(p.width())).first;
        it->second.add_term(mm, c);
    }
    return out;
}

Poly from_coeffs(std::map<int, Poly> cs, size_t v, size_t width) {
    Poly r(width);
    for (auto &[k, p] : cs)
        for (auto &[m, c] : p.terms()) r.add_term(m.times_var(v, k), c);
    return r;
}

// gcd of the coefficients of p seen as univariate in v
Poly content_in(const Poly &p, size_t v) {
    Poly g(p.width());
    for (auto &[k, c] : coeffs_in(p, v)) {
        g = poly_gcd(g, c);
        if (!g.is_zero() && g.is_constant() && g.constant_value() == 1) break;
    }
    return g;
}

// pseudo-remainder of a by b in variable v (deg_v a >= deg_v b > 0 assumed ok)
Poly prem(const Poly &a, const Poly &b, size_t v, size_t width) {
    auto ca = coeffs_in(a, v);
    auto cb = coeffs_in(b, v);
    int db = cb.rbegin()->first;
    Poly lb = cb.rbegin()->second;
    Poly rem = a;
    while (true) {
        auto cr = coeffs_in(rem, v);
        if (cr.empty()) return rem;
        int dr = cr.rbegin()->first;
        if (dr < db) return rem;
        Poly lr = cr.rbegin()->second;
        // rem <- lb*rem - lr*b*v^(dr-db)
        Poly shift(width, mpz_class(1));
        Mono mv = Mono::unit(width, v);
        Poly vpow(width);
        {
            Mono m(width);
            m.e[v] = static_cast<uint32_t>(dr - db);
            vpow = Poly(width);
            vpow.add_term(m, 1);
        }
        rem = lb * rem - lr * b * vpow;
    }
}

} // namespace

Poly poly_gcd(const Poly &a, const Poly &b) {
    if (a.is_zero()) {
        if (b.is_zero()) return b;
        return b.primitive_part().mul_scalar(mpz_class(abs(b.content())));
    }
    if (b.is_zero()) return a.primitive_part().mul_scalar(mpz_class(abs(a.content())));
    size_t width = a.width();
    // choose the last variable appearing in either
    int v = -1;
    for (int i = static_cast<int>(width) - 1; i >= 0; --i) {
        if (a.degree_in(i) > 0 || b.degree_in(i) > 0) {
            v = i;
            break;
        }
    }
    if (v < 0) { // both constants
        mpz_class g;
        mpz_gcd(g.get_mpz_t(), a.constant_value().get_mpz_t(), b.constant_value().get_mpz_t());
        return Poly(width, g);
    }
    Poly ca = content_in(a, v), cb = content_in(b, v);
    Poly c = poly_gcd(ca, cb);
    Poly pa = a.div_exact(ca), pb = b.div_exact(cb);
    if (coeffs_in(pa, v).rbegin()->first < coeffs_in(pb, v).rbegin()->first) std::swap(pa, pb);
    // primitive PRS
    while (true) {
        Poly r = prem(pa, pb, v, width);
        if (r.is_zero()) break;
        auto cr = coeffs_in(r, v);
        if (cr.rbegin()->first == 0) { // nontrivial remainder free of v
            pb = Poly(width, mpz_class(1));
            break;
        }
        Poly rc = content_in(r, v);
        pa = pb;
        pb = r.div_exact(rc);
    }
    Poly g = c * pb;
    if (!g.is_zero() && g.leading_coeff() < 0) g = -g;
    return g.primitive_part().mul_scalar(mpz_class(abs(g.content())));
}

std::string Poly::str(const std::vector<std::string> &names) const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    // print descending
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const Mono &m = it->first;
        const mpz_class &c = it->second;
        mpz_class ac = abs(c);
        if (first) {
            if (c < 0) os << "-";
            first = false;
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        bool printed_coeff = false;
        if (ac != 1 || m.is_one()) {
            os << ac.get_str();
            printed_coeff = true;
        }
        for (size_t i = 0; i < m.e.size(); ++i) {
            if (!m.e[i]) continue;
            if (printed_coeff) os << "*";
            os << names.at(i);
            if (m.e[i] > 1) os << "^" << m.e[i];
            printed_coeff = true;
        }
    }
    return os.str();
}

} // namespace parametrix
