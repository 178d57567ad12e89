#ifndef PARAMETRIX_MONOMIAL_HPP
#define PARAMETRIX_MONOMIAL_HPP

#include <cstdint>
#include <numeric>
#include <vector>

namespace parametrix {

// Exponent vector. Used both for coefficient monomials (n + params slots)
// and for derivation monomials d_mu (n slots).
struct Mono {
    std::vector<uint32_t> e;

    Mono() = default;
    explicit Mono(size_t width) : e(width, 0) {}
    explicit Mono(std::vector<uint32_t> exps) : e(std::move(exps)) {}

    static Mono unit(size_t width, size_t i) {
        Mono m(width);
        m.e[i] = 1;
        return m;
    }

    size_t width() const { return e.size(); }
    int deg() const { return std::accumulate(e.begin(), e.end(), 0); }
    bool is_one() const {
        for (auto x : e) if (x) return false;
        return true;
    }
    // smallest i (1-based) with e[i-1] != 0; 0 for the unit monomial
    int cls() const {
        for (size_t i = 0; i < e.size(); ++i)
            if (e[i]) return static_cast<int>(i) + 1;
        return 0;
    }

    Mono operator*(const Mono &o) const {
        Mono r = *this;
        for (size_t i = 0; i < e.size(); ++i) r.e[i] += o.e[i];
        return r;
    }
    Mono times_var(size_t i, uint32_t k = 1) const {
        Mono r = *this;
        r.e[i] += k;
        return r;
    }
    bool divides(const Mono &o) const {
        for (size_t i = 0; i < e.size(); ++i)
            if (e[i] > o.e[i]) return false;
        return true;
    }
    Mono quotient(const Mono &o) const { // *this / o, assumes o divides
        Mono r = *this;
        for (size_t i = 0; i < e.size(); ++i) r.e[i] -= o.e[i];
        return r;
    }

    bool operator==(const Mono &o) const { return e == o.e; }
    bool operator!=(const Mono &o) const { return !(*this == o); }
    bool operator<(const Mono &o) const; // the term order below, for map keys
};

// Degree-compatible order with d_n > ... > d_1 on ties: among equal degrees
// the first differing exponent decides, smaller exponent first wins. At order
// q this ranks class-n monomials above class-(n-1) and so on, which is what
// solved forms need.
inline int mono_cmp(const Mono &a, const Mono &b) {
    int da = a.deg(), db = b.deg();
    if (da != db) return da < db ? -1 : 1;
    for (size_t i = 0; i < a.e.size(); ++i) {
        if (a.e[i] != b.e[i]) return a.e[i] < b.e[i] ? 1 : -1;
    }
    return 0;
}

struct MonoLess {
    bool operator()(const Mono &a, const Mono &b) const { return mono_cmp(a, b) < 0; }
};

inline bool Mono::operator<(const Mono &o) const { return mono_cmp(*this, o) < 0; }

// all monomials of given width and exact degree, descending in the order above
std::vector<Mono> monomials_of_degree(size_t width, int degree);

} // namespace parametrix

#endif
