#include "parametrix/catalog.hpp"

#include "parametrix/cc.hpp"

namespace parametrix {

MetricSpec MetricSpec::custom(std::vector<std::vector<mpq_class>> m) {
    MetricSpec s;
    s.kind = Kind::Custom;
    s.n = static_cast<int>(m.size());
    s.matrix = std::move(m);
    return s;
}

std::vector<std::vector<mpq_class>> MetricSpec::to_matrix() const {
    std::vector<std::vector<mpq_class>> w(n, std::vector<mpq_class>(n, mpq_class(0)));
    switch (kind) {
        case Kind::Euclidean:
            for (int i = 0; i < n; ++i) w[i][i] = 1;
            break;
        case Kind::Minkowski:
            for (int i = 0; i < n; ++i) w[i][i] = (i == 0) ? -1 : 1;
            break;
        case Kind::Custom:
            w = matrix;
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    if (w[i][j] != w[j][i]) throw std::runtime_error("metric must be symmetric");
            break;
    }
    return w;
}

bool MetricSpec::diagonal() const {
    auto w = to_matrix();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j && w[i][j] != 0) return false;
    return true;
}

namespace {

// stored index pairs i <= j in row-major order 11, 12, ..., 1n, 22, ...
std::vector<std::pair<int, int>> sym_pairs(int n) {
    std::vector<std::pair<int, int>> out;
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) out.push_back({i, j});
    return out;
}

int sym_index(int n, int i, int j) {
    if (i > j) std::swap(i, j);
    int idx = 0;
    for (auto [a, b] : sym_pairs(n)) {
        if (a == i && b == j) return idx;
        ++idx;
    }
    throw std::logic_error("bad symmetric index");
}

std::string sym_name(const std::string &base, int i, int j) {
    return base + std::to_string(i + 1) + std::to_string(j + 1);
}

} // namespace

OpMatrix killing(const MetricSpec &metric) {
    int n = metric.n;
    auto w = metric.to_matrix();
    auto ctx = make_context(n);
    auto pairs = sym_pairs(n);
    OpMatrix A(ctx, static_cast<int>(pairs.size()), n);
    for (size_t t = 0; t < pairs.size(); ++t) {
        auto [i, j] = pairs[t];
        A.row_labels[t] = sym_name("Om", i, j);
        for (int r = 0; r < n; ++r) {
            DiffOp e(ctx);
            if (w[r][j] != 0) e = e + DiffOp::d(ctx, i).scale(RatFunc(ctx, w[r][j]));
            if (w[i][r] != 0) e = e + DiffOp::d(ctx, j).scale(RatFunc(ctx, w[i][r]));
            A.at(static_cast<int>(t), r) = e;
        }
    }
    for (int r = 0; r < n; ++r) A.col_labels[r] = "xi" + std::to_string(r + 1);
    return A;
}

OpMatrix cauchy(const MetricSpec &metric) {
    int n = metric.n;
    auto ctx = make_context(n);
    auto pairs = sym_pairs(n);
    OpMatrix A(ctx, n, static_cast<int>(pairs.size()));
    for (int i = 0; i < n; ++i) {
        A.row_labels[i] = "f" + std::to_string(i + 1);
        for (int r = 0; r < n; ++r) {
            int col = sym_index(n, i, r);
            A.at(i, col) = A.at(i, col) + DiffOp::d(ctx, r);
        }
    }
    for (size_t t = 0; t < pairs.size(); ++t)
        A.col_labels[t] = sym_name("s", pairs[t].first, pairs[t].second);
    return A;
}

OpMatrix einstein(const MetricSpec &metric) {
    int n = metric.n;
    if (!metric.diagonal()) throw std::runtime_error("einstein: constant diagonal metrics only");
    auto w = metric.to_matrix();
    auto ctx = make_context(n);
    auto pairs = sym_pairs(n);
    int N = static_cast<int>(pairs.size());
    OpMatrix A(ctx, N, N);
    auto dd = [&](int a, int b) { return DiffOp::d(ctx, a) * DiffOp::d(ctx, b); };
    auto q = [&](const mpq_class &v) { return RatFunc(ctx, v); };
    for (int t = 0; t < N; ++t) {
        auto [i, j] = pairs[t];
        A.row_labels[t] = sym_name("E", i, j);
        auto add = [&](int u, int v, const DiffOp &op, const mpq_class &c) {
            int col = sym_index(n, u, v);
            A.at(t, col) = A.at(t, col) + op.scale(q(c));
        };
        for (int r = 0; r < n; ++r) {
            mpq_class er = 1 / w[r][r]; // omega^{rr}
            add(r, r, dd(i, j), er);                       // d_ij Om_rr
            add(i, j, dd(r, r), er);                       // d_rr Om_ij
            add(r, j, dd(r, i), -er);                      // -d_ri Om_rj
            add(r, i, dd(r, j), -er);                      // -d_rj Om_ri
        }
        if (i == j) {
            mpq_class wij = w[i][j];
            for (int r = 0; r < n; ++r)
                for (int u = 0; u < n; ++u) {
                    mpq_class eru = (1 / w[r][r]) * (1 / w[u][u]);
                    add(u, u, dd(r, r), -wij * eru);       // -w_ij w^rr w^uu d_rr Om_uu
                    add(r, u, dd(r, u), wij * eru);        // +w_ij w^ru w^su d_rs Om_uv (diagonal)
                }
        }
    }
    for (int t = 0; t < N; ++t) A.col_labels[t] = sym_name("Om", pairs[t].first, pairs[t].second);
    return A;
}

OpMatrix riemann_linearized(const MetricSpec &metric) { return generating_cc(killing(metric)); }

OpMatrix bianchi(const MetricSpec &metric) { return generating_cc(riemann_linearized(metric)); }

OpMatrix conformal_killing(const MetricSpec &metric) {
    int n = metric.n;
    if (n < 3) throw std::runtime_error("conformal killing system needs n >= 3");
    if (!metric.diagonal()) throw std::runtime_error("conformal killing: diagonal metrics only");
    auto w = metric.to_matrix();
    auto ctx = make_context(n);
    int rows = n * (n + 1) / 2 - 1;
    OpMatrix A(ctx, rows, n);
    int t = 0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            // w_jj xi^j_i + w_ii xi^i_j
            A.at(t, j) = DiffOp::d(ctx, i).scale(RatFunc(ctx, w[j][j]));
            A.at(t, i) = DiffOp::d(ctx, j).scale(RatFunc(ctx, w[i][i]));
            A.row_labels[t] = sym_name("C", i, j);
            ++t;
        }
    for (int i = 0; i + 1 < n; ++i) {
        // trace-free diagonal differences xi^i_i - xi^{i+1}_{i+1}
        A.at(t, i) = DiffOp::d(ctx, i);
        A.at(t, i + 1) = -DiffOp::d(ctx, i + 1);
        A.row_labels[t] = sym_name("C", i, i);
        ++t;
    }
    for (int r = 0; r < n; ++r) A.col_labels[r] = "xi" + std::to_string(r + 1);
    return A;
}

OpMatrix stress_functions(const std::string &kind) {
    if (kind == "airy") {
        auto ctx = make_context(2);
        OpMatrix A(ctx, 3, 1);
        A.at(0, 0) = DiffOp::d(ctx, 1) * DiffOp::d(ctx, 1);
        A.at(1, 0) = -(DiffOp::d(ctx, 0) * DiffOp::d(ctx, 1));
        A.at(2, 0) = DiffOp::d(ctx, 0) * DiffOp::d(ctx, 0);
        A.row_labels = {"s11", "s12", "s22"};
        A.col_labels = {"phi"};
        return A;
    }
    auto ctx = make_context(3);
    auto dd = [&](int a, int b) { return DiffOp::d(ctx, a) * DiffOp::d(ctx, b); };
    auto pairs = sym_pairs(3);
    // beltrami rows for sigma^{ij} over potentials phi_{kl}, signs unified so
    // that the cauchy rows annihilate the matrix
    OpMatrix B(ctx, 6, 6);
    auto set = [&](int si, int sj, int pk, int pl, const DiffOp &op) {
        B.at(sym_index(3, si, sj), sym_index(3, pk, pl)) =
            B.at(sym_index(3, si, sj), sym_index(3, pk, pl)) + op;
    };
    // sigma^11 = d33 p22 + d22 p33 - 2 d23 p23
    set(0, 0, 1, 1, dd(2, 2));
    set(0, 0, 2, 2, dd(1, 1));
    set(0, 0, 1, 2, -(dd(1, 2) + dd(1, 2)));
    // sigma^12 = -d33 p12 - d12 p33 + d13 p23 + d23 p13
    set(0, 1, 0, 1, -dd(2, 2));
    set(0, 1, 2, 2, -dd(0, 1));
    set(0, 1, 1, 2, dd(0, 2));
    set(0, 1, 0, 2, dd(1, 2));
    // sigma^22 = d33 p11 + d11 p33 - 2 d13 p13
    set(1, 1, 0, 0, dd(2, 2));
    set(1, 1, 2, 2, dd(0, 0));
    set(1, 1, 0, 2, -(dd(0, 2) + dd(0, 2)));
    // sigma^13 = d23 p12 + d12 p23 - d22 p13 - d13 p22
    set(0, 2, 0, 1, dd(1, 2));
    set(0, 2, 1, 2, dd(0, 1));
    set(0, 2, 0, 2, -dd(1, 1));
    set(0, 2, 1, 1, -dd(0, 2));
    // sigma^23 = -d23 p11 - d11 p23 + d12 p13 + d13 p12
    set(1, 2, 0, 0, -dd(1, 2));
    set(1, 2, 1, 2, -dd(0, 0));
    set(1, 2, 0, 2, dd(0, 1));
    set(1, 2, 0, 1, dd(0, 2));
    // sigma^33 = d22 p11 + d11 p22 - 2 d12 p12
    set(2, 2, 0, 0, dd(1, 1));
    set(2, 2, 1, 1, dd(0, 0));
    set(2, 2, 0, 1, -(dd(0, 1) + dd(0, 1)));
    for (size_t t = 0; t < pairs.size(); ++t) {
        B.row_labels[t] = sym_name("s", pairs[t].first, pairs[t].second);
        B.col_labels[t] = sym_name("phi", pairs[t].first, pairs[t].second);
    }
    if (kind == "beltrami") return B;
    if (kind == "maxwell")
        return B.select_columns({sym_index(3, 0, 0), sym_index(3, 1, 1), sym_index(3, 2, 2)});
    if (kind == "morera")
        return B.select_columns({sym_index(3, 1, 2), sym_index(3, 0, 2), sym_index(3, 0, 1)});
    throw std::runtime_error("unknown stress function kind: " + kind);
}

OpMatrix grad_op(int n) {
    auto ctx = make_context(n);
    OpMatrix A(ctx, n, 1);
    for (int i = 0; i < n; ++i) A.at(i, 0) = DiffOp::d(ctx, i);
    A.col_labels = {"phi"};
    return A;
}

OpMatrix curl_op() {
    auto ctx = make_context(3);
    OpMatrix A(ctx, 3, 3);
    auto d = [&](int i) { return DiffOp::d(ctx, i); };
    A.at(0, 1) = -d(2);
    A.at(0, 2) = d(1);
    A.at(1, 0) = d(2);
    A.at(1, 2) = -d(0);
    A.at(2, 0) = -d(1);
    A.at(2, 1) = d(0);
    return A;
}

OpMatrix div_op(int n) {
    auto ctx = make_context(n);
    OpMatrix A(ctx, 1, n);
    for (int i = 0; i < n; ++i) A.at(0, i) = DiffOp::d(ctx, i);
    return A;
}

OpMatrix intro_example(const std::string &id) {
    if (id == "1.1" || id == "1.1r" || id == "1.2") {
        auto ctx = make_context(1, {"a"});
        return intro_example_with(id, RatFunc::param(ctx, "a"));
    }
    if (id == "1.4") {
        auto ctx = make_context(2);
        OpMatrix A(ctx, 1, 2);
        A.at(0, 0) = DiffOp::d(ctx, 1);
        A.at(0, 1) = -DiffOp::d(ctx, 0) + DiffOp(ctx, RatFunc::var(ctx, 1));
        A.row_labels = {"zeta"};
        A.col_labels = {"eta1", "eta2"};
        return A;
    }
    if (id == "4.14") {
        auto ctx = make_context(3);
        auto dd = [&](int a, int b) { return DiffOp::d(ctx, a) * DiffOp::d(ctx, b); };
        OpMatrix A(ctx, 3, 1);
        A.at(0, 0) = dd(2, 2);
        A.at(1, 0) = dd(1, 2) - dd(0, 0);
        A.at(2, 0) = dd(1, 1);
        A.col_labels = {"y"};
        return A;
    }
    if (id == "4.15") {
        auto ctx = make_context(3);
        auto dd = [&](int a, int b) { return DiffOp::d(ctx, a) * DiffOp::d(ctx, b); };
        OpMatrix A(ctx, 2, 1);
        A.at(0, 0) = dd(0, 0);
        A.at(1, 0) = dd(0, 2) - DiffOp::d(ctx, 1);
        A.col_labels = {"y"};
        return A;
    }
    throw std::runtime_error("unknown intro example: " + id);
}

OpMatrix intro_example_with(const std::string &id, const RatFunc &a) {
    CtxPtr ctx = a.ctx();
    if (ctx->nvars() != 1) throw ContextError("OD examples need one independent variable");
    DiffOp d = DiffOp::d(ctx, 0);
    DiffOp aop(ctx, a);
    if (id == "1.1") {
        OpMatrix A(ctx, 2, 3);
        A.at(0, 0) = -d;
        A.at(0, 1) = -aop;
        A.at(0, 2) = d;
        A.at(1, 0) = d;
        A.at(1, 1) = -d;
        A.at(1, 2) = DiffOp::one(ctx);
        A.col_labels = {"y1", "y2", "y3"};
        return A;
    }
    if (id == "1.1r") {
        OpMatrix A(ctx, 1, 2);
        A.at(0, 0) = d * d + d;
        A.at(0, 1) = -(d * d) + aop;
        A.col_labels = {"y1", "y2"};
        return A;
    }
    if (id == "1.2") {
        OpMatrix A(ctx, 1, 2);
        A.at(0, 0) = d + DiffOp::one(ctx);
        A.at(0, 1) = -d - aop;
        A.col_labels = {"y1", "y2"};
        return A;
    }
    throw std::runtime_error("unknown OD example: " + id);
}

const std::vector<CatalogEntry> &catalog_entries() {
    static const std::vector<CatalogEntry> entries = {
        {"killing", "Killing operator of a constant metric", true, true},
        {"cauchy", "stress equations d_r sigma^{ir} = 0", true, false},
        {"riemann", "generating CC of the Killing operator", true, true},
        {"bianchi", "generating CC of the Riemann operator", true, true},
        {"einstein", "linearized Einstein operator (diagonal metric)", true, true},
        {"conformal-killing", "trace-free conformal Killing system", true, true},
        {"airy", "Airy stress function parametrization (n = 2)", false, false},
        {"beltrami", "Beltrami stress functions (n = 3)", false, false},
        {"maxwell", "Maxwell stress functions (n = 3)", false, false},
        {"morera", "Morera stress functions (n = 3)", false, false},
        {"grad", "gradient operator", true, false},
        {"curl", "curl operator (n = 3)", false, false},
        {"div", "divergence operator", true, false},
        {"example-1.1", "two first-order OD equations with parameter a", false, false},
        {"example-1.1r", "reduced second-order form of example 1.1", false, false},
        {"example-1.2", "single-input single-output OD system with parameter a", false, false},
        {"example-1.4", "PD control equation d2 eta1 - d1 eta2 + x2 eta2", false, false},
        {"example-4.14", "finite-type homogeneous system y33, y23 - y11, y22", false, false},
        {"example-4.15", "system y11, y13 - y2", false, false},
    };
    return entries;
}

OpMatrix catalog_build(const std::string &name, int n, const std::string &metric_kind) {
    auto metric = [&](int dim) {
        if (metric_kind == "minkowski") return MetricSpec::minkowski(dim);
        if (metric_kind.empty() || metric_kind == "euclidean") return MetricSpec::euclidean(dim);
        throw std::runtime_error("unknown metric kind: " + metric_kind);
    };
    if (name == "killing") return killing(metric(n));
    if (name == "cauchy") return cauchy(MetricSpec::euclidean(n));
    if (name == "riemann") return riemann_linearized(metric(n));
    if (name == "bianchi") return bianchi(metric(n));
    if (name == "einstein") return einstein(metric(n));
    if (name == "conformal-killing") return conformal_killing(metric(n));
    if (name == "airy" || name == "beltrami" || name == "maxwell" || name == "morera")
        return stress_functions(name);
    if (name == "grad") return grad_op(n);
    if (name == "curl") return curl_op();
    if (name == "div") return div_op(n);
    if (name.rfind("example-", 0) == 0) return intro_example(name.substr(8));
    throw std::runtime_error("unknown catalog system: " + name);
}

} // namespace parametrix
