#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "qracah/univar.hpp"

using namespace qracah;

namespace {

Real gram_residual_hahn(const HahnParams& par, const QContext& ctx) {
    Real worst(0, ctx.digits());
    for (long n = 0; n <= par.N; ++n)
        for (long m = n; m <= par.N; ++m) {
            Scalar s = ctx.integer(0);
            for (long x = 0; x <= par.N; ++x)
                s += hahn_hat(n, x, par, ctx) * hahn_hat(m, x, par, ctx);
            Scalar expect = ctx.integer(n == m ? 1 : 0);
            worst = std::max(worst, abs((s - expect).to_real(ctx.digits())));
        }
    return worst;
}

}  // namespace

TEST_CASE("q-Hahn base cases and degree guard") {
    QContext ctx = QContext::exact_from_q(Rational(1, 3));
    HahnParams par(1, 2, 5);
    for (long x = -3; x <= 7; ++x) CHECK(hahn(0, x, par, ctx).rat() == 1);
    CHECK_THROWS_AS(hahn(6, 2, par, ctx), domain_error);
    CHECK(hahn_or_zero(6, 2, par, ctx).rat() == 0);
}

TEST_CASE("q-Hahn special values reduce to Pochhammer products") {
    // q-Chu-Vandermonde collapses the series at x = N and x = -(alpha+1)
    for (const Rational& q : {Rational(1, 2), Rational(1, 3), Rational(2, 5)}) {
        QContext ctx = QContext::exact_from_q(q);
        for (long N = 0; N <= 6; ++N)
            for (long alpha = 0; alpha <= 3; ++alpha)
                for (long beta = 0; beta <= 3; ++beta) {
                    HahnParams par(alpha, beta, N);
                    for (long n = 0; n <= N; ++n) {
                        Scalar atN = qpochhammer_exp(Rational(-N), n, ctx) *
                                     qpochhammer_exp(Rational(-n - beta), n, ctx) *
                                     ctx.qpow(Rational(n * (n + alpha + beta + 1)));
                        CHECK(hahn(n, N, par, ctx).rat() == atN.rat());
                        Scalar atA = qpochhammer_exp(Rational(alpha + 1), n, ctx) *
                                     qpochhammer_exp(Rational(-N - alpha - beta - n - 1), n, ctx) *
                                     ctx.qpow(Rational(n * (n + alpha + beta + 1)));
                        CHECK(hahn(n, -(alpha + 1), par, ctx).rat() == atA.rat());
                    }
                }
    }
}

TEST_CASE("q-Hahn weight and norm basics") {
    QContext ctx = QContext::exact_from_q(Rational(1, 3));
    HahnParams point(2, 3, 0);
    CHECK(hahn_weight(0, point, ctx).rat() == 1);
    CHECK_THROWS_AS(hahn_weight(1, point, ctx), domain_error);
    CHECK_THROWS_AS(hahn_norm(-1, point, ctx), domain_error);
}

TEST_CASE("q-Hahn orthogonality is exact in rational mode") {
    // brute-force sum over the support is the oracle
    QContext ctx = QContext::exact_from_q(Rational(1, 3));
    for (long N = 0; N <= 4; ++N)
        for (long alpha = 0; alpha <= 2; ++alpha)
            for (long beta = 0; beta <= 2; ++beta) {
                HahnParams par(alpha, beta, N);
                for (long n = 0; n <= N; ++n)
                    for (long m = n; m <= N; ++m) {
                        Scalar s = ctx.integer(0);
                        for (long x = 0; x <= N; ++x)
                            s += hahn_weight(x, par, ctx) * hahn(n, x, par, ctx) *
                                 hahn(m, x, par, ctx);
                        if (n == m)
                            CHECK(s.rat() == hahn_norm(n, par, ctx).rat());
                        else
                            CHECK(s.rat() == 0);
                    }
            }
}

TEST_CASE("orthonormal q-Hahn Gram matrix is the identity") {
    QContext ctx = QContext::bigfloat(Rational(1, 3), 60);
    HahnParams single(1, 1, 0);
    CHECK(ctx.is_zero(hahn_hat(0, 0, single, ctx) - ctx.one()));

    HahnParams par(1, 2, 5);
    Real resid = gram_residual_hahn(par, ctx);
    CHECK(resid < real_from_rational(rational_pow(Rational(10), -40), 60));
}

TEST_CASE("little q-Jacobi base cases") {
    QContext ctx = QContext::exact_from_q(Rational(1, 3));
    for (long x = 0; x <= 6; ++x) CHECK(jacobi(0, x, 1, 2, ctx).rat() == 1);
    CHECK_THROWS_AS(jacobi(-1, 0, 1, 2, ctx), domain_error);
}

TEST_CASE("little q-Jacobi truncated Gram matrix") {
    QContext ctx = QContext::bigfloat(Rational(1, 3), 60);
    const Rational alpha(1), beta(2);
    const Rational tol = rational_pow(Rational(10), -38);
    long xmax = jacobi_tail_cutoff(alpha, tol, ctx) + 40;
    Real worst(0, 60);
    for (long n = 0; n <= 4; ++n)
        for (long m = n; m <= 4; ++m) {
            Scalar s = ctx.integer(0);
            for (long x = 0; x <= xmax; ++x)
                s += jacobi_hat(n, x, alpha, beta, ctx) * jacobi_hat(m, x, alpha, beta, ctx);
            Scalar expect = ctx.integer(n == m ? 1 : 0);
            worst = std::max(worst, abs((s - expect).to_real(60)));
        }
    CHECK(worst < real_from_rational(rational_pow(Rational(10), -35), 60));
}

TEST_CASE("tail cutoff error path") {
    QContext ctx = QContext::bigfloat(Rational(1, 3), 60);
    CHECK_THROWS_AS(
        jacobi_tail_cutoff(Rational(-9999, 10000), rational_pow(Rational(10), -38), ctx),
        domain_error);
}

TEST_CASE("q-Hahn converges to little q-Jacobi along N") {
    // ratio h_n(N-x)/(q^{-N};q)_n approaches p_n(x); error strictly decreasing
    QContext ctx = QContext::bigfloat(Rational(1, 3), 120);
    std::mt19937_64 rng(4242);
    for (int trial = 0; trial < 10; ++trial) {
        // degree 0 is exact at any N, and at x = 0 the ratio is N-independent
        // (both special values coincide); neither probes the limit
        long n = 1 + static_cast<long>(rng() % 3);
        long x = 1 + static_cast<long>(rng() % 4);
        long alpha = 1 + static_cast<long>(rng() % 3);
        long beta = 1 + static_cast<long>(rng() % 3);
        Scalar target = jacobi(n, x, alpha, beta, ctx);
        Real prev(0, 120);
        bool first = true;
        for (long N : {20L, 40L, 80L, 160L}) {
            HahnParams par(alpha, beta, N);
            Scalar ratio = hahn(n, N - x, par, ctx) / qpochhammer_exp(Rational(-N), n, ctx);
            Real err = abs((ratio - target).to_real(120));
            if (!first) CHECK(err < prev);
            prev = err;
            first = false;
        }
    }
}

TEST_CASE("q-Racah basics in the coupling cone") {
    QContext ctx = QContext::bigfloat(Rational(1, 3), 60);
    // cone from the recoupling problem: a = alpha2, b = alpha3,
    // c = N + alpha1 + alpha2 + 1
    const long N = 4;
    RacahParams par(1, 2, N + 2 + 1 + 1, N);
    racah_check_cone(par, ctx);
    for (long x = 0; x <= N; ++x) CHECK(ctx.is_zero(racah(0, x, par, ctx) - ctx.one()));
    CHECK_THROWS_AS(racah(N + 1, 0, par, ctx), domain_error);

    Real worst(0, 60);
    for (long n = 0; n <= N; ++n)
        for (long m = n; m <= N; ++m) {
            Scalar s = ctx.integer(0);
            for (long x = 0; x <= N; ++x)
                s += racah_hat(n, x, par, ctx) * racah_hat(m, x, par, ctx);
            Scalar expect = ctx.integer(n == m ? 1 : 0);
            worst = std::max(worst, abs((s - expect).to_real(60)));
        }
    CHECK(worst < real_from_rational(rational_pow(Rational(10), -40), 60));
}

TEST_CASE("Sears reflection of q-Racah is exact") {
    // r_n(x; a,b,c,N) = r_n(N-x; b,a,-c,N); with N - c even everything is a
    // Laurent monomial in q, so rational mode applies directly
    for (const Rational& q : {Rational(1, 2), Rational(1, 3), Rational(2, 5)}) {
        QContext ctx = QContext::exact_from_q(q);
        const long N = 5;
        RacahParams par(1, 2, 9, N);  // N - c = -4, even
        RacahParams ref(2, 1, -9, N);
        for (long n = 0; n <= N; ++n)
            for (long x = 0; x <= N; ++x)
                CHECK(racah(n, x, par, ctx).rat() == racah(n, N - x, ref, ctx).rat());
    }
    // odd N - c needs p; exact on a context built from p
    QContext ctxp = QContext::exact_from_p(Rational(1, 2));
    const long N = 5;
    RacahParams par(1, 1, 8, N);  // N - c odd
    RacahParams ref(1, 1, -8, N);
    for (long n = 0; n <= N; ++n)
        for (long x = 0; x <= N; ++x)
            CHECK(racah(n, x, par, ctxp).rat() == racah(n, N - x, ref, ctxp).rat());
}

TEST_CASE("q-Racah generating relation") {
    QContext ctx = QContext::exact_from_q(Rational(1, 3));
    const long N = 4;
    RacahParams par(1, 2, 8, N);  // N - c even keeps rational mode
    SECTION("t = 0 collapses both sides to 1") {
        for (long n = 0; n <= N; ++n) {
            CHECK(racah_generating_lhs(n, par, ctx.integer(0), ctx).rat() == 1);
            CHECK(racah_generating_rhs(n, par, ctx.integer(0), ctx).rat() == 1);
        }
    }
    SECTION("sides agree at 2N+2 distinct points") {
        // both sides are polynomials of degree <= N in t, so 2N+2 matches
        // force equality of all coefficients
        for (long n = 0; n <= N; ++n)
            for (long j = 1; j <= 2 * N + 2; ++j) {
                Scalar t = ctx.rational(Rational(j, 2 * N + 3));
                CHECK(racah_generating_lhs(n, par, t, ctx).rat() ==
                      racah_generating_rhs(n, par, t, ctx).rat());
            }
    }
    SECTION("random t in float mode") {
        QContext fl = QContext::bigfloat(Rational(1, 3), 60);
        std::mt19937_64 rng(99);
        RacahParams pf(1, 2, 7, N);  // odd N - c exercises the half power
        for (int trial = 0; trial < 5; ++trial) {
            Scalar t = fl.rational(Rational(1 + static_cast<long>(rng() % 97), 101));
            long n = static_cast<long>(rng() % (N + 1));
            Scalar lhs = racah_generating_lhs(n, pf, t, fl);
            Scalar rhs = racah_generating_rhs(n, pf, t, fl);
            CHECK(abs((lhs - rhs).to_real(60)) <
                  real_from_rational(rational_pow(Rational(10), -40), 60) *
                      std::max(Real(1, 60), abs(lhs.to_real(60))));
        }
    }
}
