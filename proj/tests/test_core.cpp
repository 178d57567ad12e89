#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "parametrix/diffop.hpp"
#include "parametrix/opmatrix.hpp"

using namespace parametrix;

namespace {

RatFunc q(CtxPtr ctx, long num, long den = 1) { return RatFunc(ctx, mpq_class(num, den)); }

// random small rational function: polynomial with tiny support, occasionally a fraction
RatFunc random_ratfunc(CtxPtr ctx, std::mt19937_64 &rng) {
    std::uniform_int_distribution<int> coeff(-3, 3);
    std::uniform_int_distribution<int> nterms(1, 2);
    std::uniform_int_distribution<int> pick(0, ctx->ncoeffvars() - 1);
    auto rand_poly = [&]() {
        Poly p(ctx->ncoeffvars());
        int t = nterms(rng);
        for (int i = 0; i < t; ++i) {
            Mono m(ctx->ncoeffvars());
            if (rng() % 2) m.e[pick(rng)] += 1;
            p.add_term(m, coeff(rng));
        }
        return p;
    };
    Poly num = rand_poly();
    Poly den(ctx->ncoeffvars(), mpz_class(1));
    if (rng() % 4 == 0) {
        Poly d = rand_poly();
        if (!d.is_zero()) den = d;
    }
    return RatFunc(ctx, num, den);
}

DiffOp random_op(CtxPtr ctx, std::mt19937_64 &rng, int max_order = 3) {
    std::uniform_int_distribution<int> nterms(1, 3);
    std::uniform_int_distribution<int> ord(0, max_order);
    DiffOp p(ctx);
    int t = nterms(rng);
    for (int i = 0; i < t; ++i) {
        int o = ord(rng);
        Mono mu(ctx->nvars());
        for (int j = 0; j < o; ++j) mu.e[rng() % ctx->nvars()] += 1;
        p.add_term(mu, random_ratfunc(ctx, rng));
    }
    return p;
}

} // namespace

TEST_CASE("rational function field arithmetic") {
    auto ctx = make_context(2, {"c"});
    RatFunc x1 = RatFunc::var(ctx, 0), x2 = RatFunc::var(ctx, 1);
    RatFunc c = RatFunc::param(ctx, "c");

    SUBCASE("basic identities") {
        RatFunc inv_x1 = x1.inv();
        CHECK(inv_x1 + inv_x1 == q(ctx, 2) / x1);
        CHECK(x1 + RatFunc(ctx) == x1);
        CHECK((x1 * x1 + (-(x1 * x1))).is_zero());
        CHECK(x1 * x1.inv() == q(ctx, 1));
        CHECK((c - q(ctx, 1)).inv() == q(ctx, 1) / (c - q(ctx, 1)));
        CHECK(x2 * x2 * x2 == x2 * (x2 * x2));
        CHECK_THROWS_AS(RatFunc(ctx).inv(), DivisionByZero);
    }

    SUBCASE("derivations") {
        CHECK(x2.derive(1) == q(ctx, 1));
        CHECK(x1.inv().derive(0) == -(x1 * x1).inv());
        CHECK(c.derive(0).is_zero());
        CHECK(c.derive(1).is_zero());
        // commutation of the two derivations on a denominator-heavy value
        RatFunc f = (x1 * x2 + c) / (x1 + x2);
        CHECK(f.derive(0).derive(1) == f.derive(1).derive(0));
    }

    SUBCASE("specialize") {
        RatFunc crit = c * (c - q(ctx, 1));
        CHECK(crit.specialize({{"c", mpq_class(1)}}).is_zero());
        CHECK(crit.specialize({{"c", mpq_class(2)}}) == q(ctx, 2));
        CHECK_THROWS_AS((c - q(ctx, 1)).inv().specialize({{"c", mpq_class(1)}}), PoleError);
        // partial bindings leave other parameters intact
        auto ctx2 = make_context(1, {"a", "b"});
        RatFunc a = RatFunc::param(ctx2, "a"), b = RatFunc::param(ctx2, "b");
        CHECK((a * b).specialize({{"a", mpq_class(3)}}) == RatFunc(ctx2, mpq_class(3)) * b);
    }

    SUBCASE("field axioms and Leibniz on random elements") {
        std::mt19937_64 rng(42);
        for (int i = 0; i < 100; ++i) {
            RatFunc f = random_ratfunc(ctx, rng);
            RatFunc g = random_ratfunc(ctx, rng);
            RatFunc h = random_ratfunc(ctx, rng);
            CHECK((f + g) + h == f + (g + h));
            CHECK(f * (g + h) == f * g + f * h);
            CHECK((f * g) * h == f * (g * h));
            if (!f.is_zero()) CHECK(f * f.inv() == q(ctx, 1));
            int ax = static_cast<int>(rng() % 2);
            CHECK((f * g).derive(ax) == f.derive(ax) * g + f * g.derive(ax));
        }
    }

    SUBCASE("printing is canonical") {
        CHECK((q(ctx, 2) / x1).str() == "2/x1");
        CHECK((-(x1 * x1).inv()).str() == "-1/x1^2");
        CHECK((x2 * x2 * x2).str() == "x2^3");
        CHECK(RatFunc(ctx).str() == "0");
    }
}

TEST_CASE("operator ring") {
    auto ctx = make_context(2);
    DiffOp d1 = DiffOp::d(ctx, 0), d2 = DiffOp::d(ctx, 1);
    RatFunc x1 = RatFunc::var(ctx, 0), x2 = RatFunc::var(ctx, 1);

    SUBCASE("addition and scaling") {
        CHECK(d1 + d1 == d1.scale(q(ctx, 2)));
        CHECK(d1 + DiffOp(ctx) == d1);
        DiffOp p = d2.scale(x1 * x1);
        CHECK(p.coeff(Mono::unit(2, 1)) == x1 * x1);
    }

    SUBCASE("products and Leibniz") {
        DiffOp x1op(ctx, x1);
        DiffOp prod = d1 * x1op;
        CHECK(prod == x1op * d1 + DiffOp::one(ctx));
        CHECK(d1 * d2 == d2 * d1);
        CHECK((d1 * d2).order() == 2);
    }

    SUBCASE("variable-coefficient operator identity") {
        // a = (x+2)/2x has da + a^2 - a constant, which makes the two
        // fourth-order products agree
        auto c1 = make_context(1);
        DiffOp d = DiffOp::d(c1, 0);
        RatFunc x = RatFunc::var(c1, 0);
        RatFunc a = (x + RatFunc(c1, mpq_class(2))) / (RatFunc(c1, mpq_class(2)) * x);
        RatFunc da = a.derive(0);
        CHECK(da + a * a - a == RatFunc(c1, mpq_class(-1, 4)));
        DiffOp d2op = d * d;
        DiffOp lhs = (d2op + d) * (d2op + DiffOp(c1, da * RatFunc(c1, mpq_class(2)) - a));
        DiffOp rhs = (d2op - DiffOp(c1, a)) * (d2op + d + DiffOp(c1, da * RatFunc(c1, mpq_class(2))));
        CHECK(lhs == rhs);
    }

    SUBCASE("adjoint") {
        auto c1 = make_context(1);
        DiffOp d = DiffOp::d(c1, 0);
        CHECK((d * d + d).adjoint() == d * d - d);
        DiffOp f(ctx, x1 * x2);
        CHECK(f.adjoint() == f);
        DiffOp p = (d1 * d2).scale(x1 * x1) + DiffOp(ctx, x1);
        CHECK(p.adjoint().adjoint() == p);
    }

    SUBCASE("apply") {
        CHECK(d1.apply(x1) == q(ctx, 1));
        CHECK((d2 * d2).apply(x2 * x2 * x2) == q(ctx, 6) * x2);
        DiffOp p = d2.scale(x2) + DiffOp::one(ctx);
        CHECK(p.apply(x2) == q(ctx, 2) * x2);
    }

    SUBCASE("adjoint is an anti-homomorphism and involution") {
        std::mt19937_64 rng(7);
        for (int i = 0; i < 60; ++i) {
            DiffOp p = random_op(ctx, rng);
            DiffOp r = random_op(ctx, rng);
            CHECK((p * r).adjoint() == r.adjoint() * p.adjoint());
            CHECK(p.adjoint().adjoint() == p);
            CHECK(p.adjoint().order() == p.order());
        }
    }

    SUBCASE("apply is a ring action") {
        std::mt19937_64 rng(11);
        for (int i = 0; i < 40; ++i) {
            DiffOp p = random_op(ctx, rng, 2);
            DiffOp r = random_op(ctx, rng, 2);
            RatFunc f = random_ratfunc(ctx, rng);
            CHECK((p * r).apply(f) == p.apply(r.apply(f)));
        }
    }
}

TEST_CASE("operator matrices") {
    auto ctx = make_context(2);
    DiffOp d1 = DiffOp::d(ctx, 0), d2 = DiffOp::d(ctx, 1);
    RatFunc x2 = RatFunc::var(ctx, 1);

    // Airy column and the two stress rows
    OpMatrix airy(ctx, 3, 1);
    airy.at(0, 0) = d2 * d2;
    airy.at(1, 0) = -(d1 * d2);
    airy.at(2, 0) = d1 * d1;
    OpMatrix cauchy(ctx, 2, 3);
    cauchy.at(0, 0) = d1;
    cauchy.at(0, 1) = d2;
    cauchy.at(1, 1) = d1;
    cauchy.at(1, 2) = d2;

    SUBCASE("compose") {
        CHECK(cauchy.compose(airy).is_zero());
        CHECK(identity_matrix(ctx, 3).compose(airy) == airy);
    }

    SUBCASE("matrix adjoint") {
        OpMatrix row(ctx, 1, 2);
        row.at(0, 0) = d2;
        row.at(0, 1) = -d1 + DiffOp(ctx, x2);
        OpMatrix ad = row.adjoint();
        CHECK(ad.rows() == 2);
        CHECK(ad.at(0, 0) == -d2);
        CHECK(ad.at(1, 0) == d1 + DiffOp(ctx, x2));
        CHECK(ad.adjoint() == row);
        CHECK(OpMatrix(ctx, 2, 2).adjoint().is_zero());
        CHECK(cauchy.compose(airy).adjoint() == airy.adjoint().compose(cauchy.adjoint()));
    }

    SUBCASE("adjoint of composition, random") {
        std::mt19937_64 rng(3);
        for (int i = 0; i < 15; ++i) {
            OpMatrix a(ctx, 2, 2), b(ctx, 2, 2);
            for (int r = 0; r < 2; ++r)
                for (int c = 0; c < 2; ++c) {
                    a.at(r, c) = random_op(ctx, rng, 2);
                    b.at(r, c) = random_op(ctx, rng, 2);
                }
            CHECK(b.compose(a).adjoint() == a.adjoint().compose(b.adjoint()));
        }
    }

    SUBCASE("apply to jets") {
        // Airy applied to a potential
        std::vector<JetExpr> phi = {JetExpr::jet(ctx, 0, Mono(2))};
        auto out = apply_matrix(airy, phi, 1);
        REQUIRE(out.size() == 3);
        Mono m22(2), m12(2), m11(2);
        m22.e[1] = 2;
        m12.e[0] = 1;
        m12.e[1] = 1;
        m11.e[0] = 2;
        CHECK(out[0] == JetExpr::jet(ctx, 0, m22));
        CHECK(out[1] == JetExpr::jet(ctx, 0, m12).scale(q(ctx, -1)));
        CHECK(out[2] == JetExpr::jet(ctx, 0, m11));
        auto zero_out = apply_matrix(OpMatrix(ctx, 2, 1), phi, 1);
        CHECK(zero_out[0].is_zero());
        CHECK(zero_out[1].is_zero());
    }

    SUBCASE("apply_matrix respects composition") {
        std::mt19937_64 rng(5);
        std::vector<JetExpr> v = {JetExpr::jet(ctx, 0, Mono(2)), JetExpr::jet(ctx, 1, Mono(2))};
        for (int i = 0; i < 10; ++i) {
            OpMatrix a(ctx, 2, 2), b(ctx, 2, 2);
            for (int r = 0; r < 2; ++r)
                for (int c = 0; c < 2; ++c) {
                    a.at(r, c) = random_op(ctx, rng, 2);
                    b.at(r, c) = random_op(ctx, rng, 2);
                }
            auto lhs = apply_matrix(b.compose(a), v, 2);
            auto rhs = apply_matrix(b, apply_matrix(a, v, 2), 2);
            CHECK(lhs == rhs);
        }
    }
}
