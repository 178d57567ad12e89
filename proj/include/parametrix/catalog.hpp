#ifndef PARAMETRIX_CATALOG_HPP
#define PARAMETRIX_CATALOG_HPP

#include <optional>

#include "parametrix/opmatrix.hpp"

namespace parametrix {

struct MetricSpec {
    enum class Kind { Euclidean, Minkowski, Custom };
    Kind kind = Kind::Euclidean;
    int n = 3;
    std::vector<std::vector<mpq_class>> matrix; // for Custom

    static MetricSpec euclidean(int n) { return {Kind::Euclidean, n, {}}; }
    static MetricSpec minkowski(int n) { return {Kind::Minkowski, n, {}}; } // (-,+,+,...)
    static MetricSpec custom(std::vector<std::vector<mpq_class>> m);

    std::vector<std::vector<mpq_class>> to_matrix() const;
    bool diagonal() const;
};

// first-order Killing operator of a constant metric: n(n+1)/2 rows, n columns
OpMatrix killing(const MetricSpec &metric);
// stress equations d_r sigma^{ir} = 0: n rows over the n(n+1)/2 stored components
OpMatrix cauchy(const MetricSpec &metric);
// linearized Einstein operator (10x10 second order for n=4 Minkowski)
OpMatrix einstein(const MetricSpec &metric);
// successive compatibility conditions of the Killing operator
OpMatrix riemann_linearized(const MetricSpec &metric);
OpMatrix bianchi(const MetricSpec &metric);
// trace-free first-order conformal Killing system, n(n+1)/2 - 1 rows (n >= 3)
OpMatrix conformal_killing(const MetricSpec &metric);

// airy | beltrami | maxwell | morera
OpMatrix stress_functions(const std::string &kind);

// poincare pieces on R^3 plus gradient/divergence in any dimension
OpMatrix grad_op(int n);
OpMatrix curl_op();
OpMatrix div_op(int n);

// fixtures 1.1 | 1.1r | 1.2 | 1.4 | 4.14 | 4.15; systems with a coefficient a
// use a generic parameter named "a"
OpMatrix intro_example(const std::string &id);
// same fixtures with a supplied as a rational function over ctx (n = 1, no params)
OpMatrix intro_example_with(const std::string &id, const RatFunc &a);

struct CatalogEntry {
    std::string name;
    std::string description;
    bool takes_n = false;
    bool takes_metric = false;
};
const std::vector<CatalogEntry> &catalog_entries();

// CLI-facing dispatcher; throws on unknown names
OpMatrix catalog_build(const std::string &name, int n, const std::string &metric_kind);

} // namespace parametrix

#endif
