#include <catch2/catch_amalgamated.hpp>

#include <functional>
#include <random>

#include "qracah/multivar.hpp"

using namespace qracah;

namespace {

Real tol10(long k, unsigned digits = 60) {
    return real_from_rational(rational_pow(Rational(10), -k), digits);
}

// one-direction divided difference over the geometric nodes reached by
// y_k += 1, y_{k+1} -= 1 (moves q^{-Y_k} alone)
Scalar divided_diff(const std::function<Scalar(const MultiIndex&)>& f, const MultiIndex& base,
                    long k, long order, const QContext& ctx) {
    if (order == 0) return f(base);
    MultiIndex up = base;
    up[k - 1] += 1;
    up[k] -= 1;
    Scalar hi = divided_diff(f, up, k, order - 1, ctx);
    Scalar lo = divided_diff(f, base, k, order - 1, ctx);
    // nodes u_j = q^{-(Y_k + j)}; recursion divides by u_order - u_0
    Scalar u0 = ctx.qpow(Rational(-base.prefix(k)));
    Scalar um = ctx.qpow(Rational(-(base.prefix(k) + order)));
    return (hi - lo) / (um - u0);
}

Scalar mixed_divided_diff(const std::function<Scalar(const MultiIndex&)>& f,
                          const MultiIndex& base, const std::vector<long>& orders,
                          const QContext& ctx) {
    // peel directions from the last one
    long k = static_cast<long>(orders.size());
    while (k >= 1 && orders[static_cast<size_t>(k - 1)] == 0) --k;
    if (k == 0) return f(base);
    std::vector<long> rest(orders.begin(), orders.begin() + (k - 1));
    auto g = [&](const MultiIndex& y) {
        return divided_diff(f, y, k, orders[static_cast<size_t>(k - 1)], ctx);
    };
    std::vector<long> padded = rest;
    padded.resize(orders.size(), 0);
    return mixed_divided_diff(g, base, padded, ctx);
}

}  // namespace

TEST_CASE("psi reduces to the two-factor Clebsch-Gordan coefficient") {
    QContext ctx = QContext::bigfloat(Rational(1, 3), 60);
    ParamVector par{1, 2};
    for (long y1 = 0; y1 <= 3; ++y1)
        for (long y2 = 0; y2 <= 3; ++y2)
            for (long n1 = 0; n1 <= y1 + y2; ++n1) {
                long n2 = y1 + y2 - n1;
                Scalar lhs = psi(MultiIndex{n1, n2}, MultiIndex{y1, y2}, par, ctx);
                HahnParams hp(1, 2, y1 + y2);
                Scalar rhs = hahn_hat_or_zero(n1, y1, hp, ctx);
                CHECK(ctx.is_zero(lhs - rhs));
                // off shell the coefficient vanishes
                Scalar off = psi(MultiIndex{n1 + 1, n2}, MultiIndex{y1, y2}, par, ctx);
                CHECK(off.exactly_zero());
            }
}

TEST_CASE("xi for d = 2 swaps the parameter roles") {
    QContext ctx = QContext::bigfloat(Rational(1, 3), 60);
    ParamVector par{2, 1};
    for (long y1 = 0; y1 <= 3; ++y1)
        for (long y2 = 0; y2 <= 3; ++y2)
            for (long m1 = 0; m1 <= y1 + y2; ++m1) {
                long m2 = y1 + y2 - m1;
                Scalar lhs = xi(MultiIndex{m1, m2}, MultiIndex{y1, y2}, par, ctx);
                HahnParams hp(2, 1, y1 + y2);
                Scalar rhs = hahn_hat_or_zero(m1, y1, hp, ctx);
                CHECK(ctx.is_zero(lhs - rhs));
            }
}

TEST_CASE("psi with zero leading degrees is a product of weight factors") {
    QContext ctx = QContext::bigfloat(Rational(1, 3), 60);
    ParamVector par{1, 2, 1};
    const long M = 3;
    MultiIndex n{0, 0, M};
    for (const auto& y : enumerate_slice(3, M)) {
        Scalar expect = ctx.one();
        for (long k = 1; k <= 2; ++k) {
            HahnParams hp(par.A(k) + k - 1, par.alpha(k + 1), y.prefix(k + 1));
            expect = expect * ctx.sqrt_ratio(hahn_weight(y.prefix(k), hp, ctx),
                                             hahn_norm(0, hp, ctx));
        }
        CHECK(ctx.is_zero(psi(n, y, par, ctx) - expect));
    }
}

TEST_CASE("psi and xi Gram matrices on a slice are the identity") {
    QContext ctx = QContext::bigfloat(Rational(1, 3), 60);
    ParamVector par{1, 2, 1};
    const long M = 4;
    auto slice = enumerate_slice(3, M);
    Real worst_psi(0, 60), worst_xi(0, 60);
    for (size_t i = 0; i < slice.size(); ++i)
        for (size_t j = i; j < slice.size(); ++j) {
            Scalar gp = ctx.integer(0), gx = ctx.integer(0);
            for (const auto& y : slice) {
                gp += psi(slice[i], y, par, ctx) * psi(slice[j], y, par, ctx);
                gx += xi(slice[i], y, par, ctx) * xi(slice[j], y, par, ctx);
            }
            Scalar expect = ctx.integer(i == j ? 1 : 0);
            worst_psi = std::max(worst_psi, abs((gp - expect).to_real(60)));
            worst_xi = std::max(worst_xi, abs((gx - expect).to_real(60)));
        }
    CHECK(worst_psi < tol10(35));
    CHECK(worst_xi < tol10(35));
}

TEST_CASE("completeness on a slice") {
    QContext ctx = QContext::bigfloat(Rational(1, 3), 60);
    ParamVector par{1, 1, 2};
    const long M = 3;
    auto slice = enumerate_slice(3, M);
    Real worst(0, 60);
    for (size_t i = 0; i < slice.size(); ++i)
        for (size_t j = i; j < slice.size(); ++j) {
            Scalar s = ctx.integer(0);
            for (const auto& m : slice) s += xi(m, slice[i], par, ctx) * xi(m, slice[j], par, ctx);
            Scalar expect = ctx.integer(i == j ? 1 : 0);
            worst = std::max(worst, abs((s - expect).to_real(60)));
        }
    CHECK(worst < tol10(35));
}

TEST_CASE("multivariate q-Hahn orthogonality is exact") {
    QContext ctx = QContext::exact_from_q(Rational(1, 3));
    for (long d = 2; d <= 3; ++d) {
        ParamVector par(d == 2 ? ParamVector{1, 2} : ParamVector{1, 2, 1});
        for (long M = 0; M <= 3; ++M) {
            auto slice = enumerate_slice(d, M);
            for (const auto& n : slice)
                for (const auto& np : slice) {
                    Scalar sH = ctx.integer(0), sG = ctx.integer(0);
                    for (const auto& y : slice) {
                        Scalar r = weight_rho(y, par, ctx);
                        sH += r * hahn_H(n, y, par, ctx) * hahn_H(np, y, par, ctx);
                        sG += r * hahn_G(n, y, par, ctx) * hahn_G(np, y, par, ctx);
                    }
                    if (n == np) {
                        CHECK(sH.rat() == norm_lambda(n, par, ctx).rat());
                        CHECK(sG.rat() == norm_omega(n, par, ctx).rat());
                    } else {
                        CHECK(sH.rat() == 0);
                        CHECK(sG.rat() == 0);
                    }
                }
        }
    }
}

TEST_CASE("all-zero degrees give the constant polynomial") {
    QContext ctx = QContext::exact_from_q(Rational(1, 3));
    ParamVector par{1, 2, 1};
    for (const auto& y : enumerate_slice(3, 3)) {
        CHECK(hahn_H(MultiIndex{0, 0, 0}, y, par, ctx).rat() == 1);
        CHECK(hahn_G(MultiIndex{0, 0, 0}, y, par, ctx).rat() == 1);
    }
}

TEST_CASE("hatted and polynomial forms are consistent pointwise") {
    QContext ctx = QContext::bigfloat(Rational(1, 3), 60);
    ParamVector par{1, 2, 1};
    const long M = 3;
    auto slice = enumerate_slice(3, M);
    for (const auto& n : slice)
        for (const auto& y : slice) {
            Scalar rho = weight_rho(y, par, ctx);
            Scalar viaH = ctx.sqrt_ratio(rho, norm_lambda(n, par, ctx)) * hahn_H(n, y, par, ctx);
            CHECK(abs((psi(n, y, par, ctx) - viaH).to_real(60)) < tol10(40));
            Scalar viaG = ctx.sqrt_ratio(rho, norm_omega(n, par, ctx)) * hahn_G(n, y, par, ctx);
            CHECK(abs((xi(n, y, par, ctx) - viaG).to_real(60)) < tol10(40));
        }
}

TEST_CASE("H and G are polynomials of the stated total degree") {
    QContext ctx = QContext::exact_from_q(Rational(1, 3));
    ParamVector par{1, 2, 1};
    std::mt19937_64 rng(11);
    for (const MultiIndex& deg : {MultiIndex{1, 2, 0}, MultiIndex{2, 1, 1}, MultiIndex{0, 3, 0}}) {
        const long total = deg.prefix(2);  // N_{d-1}
        MultiIndex base{4 * total + 6, 4 * total + 6, 4 * total + 6};
        auto evalH = [&](const MultiIndex& y) { return hahn_H(deg, y, par, ctx); };
        auto evalG = [&](const MultiIndex& y) { return hahn_G(deg, y, par, ctx); };

        // the coefficient of u_1^{n_1} u_2^{n_2} is nonzero
        Scalar lead = mixed_divided_diff(evalH, base, {deg.at(1), deg.at(2)}, ctx);
        CHECK(lead.rat() != 0);
        // every mixed difference of total order total+1 annihilates
        for (int probe = 0; probe < 4; ++probe) {
            long o1 = static_cast<long>(rng() % (total + 2));
            std::vector<long> orders = {o1, total + 1 - o1};
            CHECK(mixed_divided_diff(evalH, base, orders, ctx).rat() == 0);
            CHECK(mixed_divided_diff(evalG, base, orders, ctx).rat() == 0);
        }
    }
}

TEST_CASE("curly J: products of orthonormal q-Jacobi factors") {
    QContext ctx = QContext::bigfloat(Rational(1, 3), 60);
    ParamVector par{1, 2, 1};
    SECTION("zero degrees are weight products") {
        MultiIndex s{0, 0};
        for (long x1 = 0; x1 <= 2; ++x1)
            for (long x2 = 0; x2 <= 2; ++x2) {
                Scalar expect = jacobi_hat(0, x1, par.A(1), par.alpha(2), ctx) *
                                jacobi_hat(0, x2, par.A(2) + 1, par.alpha(3), ctx);
                CHECK(ctx.is_zero(jfun(s, MultiIndex{x1, x2}, par, ctx) - expect));
            }
    }
    SECTION("hatted form matches sqrt(nu/iota) J pointwise") {
        for (const auto& s : enumerate_slice(2, 2))
            for (long x1 = 0; x1 <= 3; ++x1)
                for (long x2 = 0; x2 <= 3; ++x2) {
                    MultiIndex x{x1, x2};
                    Scalar lhs = jfun(s, x, par, ctx);
                    Scalar rhs = ctx.sqrt_ratio(weight_nu(x, par, ctx), norm_iota(s, par, ctx)) *
                                 jacobi_J(s, x, par, ctx);
                    CHECK(abs((lhs - rhs).to_real(60)) < tol10(40));
                    Scalar lhq = qfun(s, x, par, ctx);
                    Scalar rhq = ctx.sqrt_ratio(weight_nu(x, par, ctx), norm_tau(s, par, ctx)) *
                                 mixed_Q(s, x, par, ctx);
                    CHECK(abs((lhq - rhq).to_real(60)) < tol10(40));
                }
    }
    SECTION("truncated Gram is the identity") {
        const Rational tol = rational_pow(Rational(10), -34);
        long x1max = jacobi_tail_cutoff(par.A(1), tol, ctx) + 24;
        long x2max = jacobi_tail_cutoff(par.A(2) + 1, tol, ctx) + 24;
        std::vector<MultiIndex> degs;
        for (const auto& s : enumerate_slice(2, 2)) degs.push_back(s);
        Real worst(0, 60);
        for (size_t i = 0; i < degs.size(); ++i)
            for (size_t j = i; j < degs.size(); ++j) {
                Scalar sJ = ctx.integer(0), sQ = ctx.integer(0);
                for (long x1 = 0; x1 <= x1max; ++x1)
                    for (long x2 = 0; x2 <= x2max; ++x2) {
                        MultiIndex x{x1, x2};
                        Scalar nu = weight_nu(x, par, ctx);
                        sJ += nu * jacobi_J(degs[i], x, par, ctx) * jacobi_J(degs[j], x, par, ctx);
                        sQ += nu * mixed_Q(degs[i], x, par, ctx) * mixed_Q(degs[j], x, par, ctx);
                    }
                Scalar nJ = ctx.sqrt(norm_iota(degs[i], par, ctx) * norm_iota(degs[j], par, ctx));
                Scalar nQ = ctx.sqrt(norm_tau(degs[i], par, ctx) * norm_tau(degs[j], par, ctx));
                Scalar expect = ctx.integer(i == j ? 1 : 0);
                worst = std::max(worst, abs((sJ / nJ - expect).to_real(60)));
                worst = std::max(worst, abs((sQ / nQ - expect).to_real(60)));
            }
        CHECK(worst < tol10(30));
    }
}

TEST_CASE("psi converges to curly J and xi to curly Q") {
    QContext ctx = QContext::bigfloat(Rational(1, 3), 100);
    ParamVector par{1, 2, 1};
    std::mt19937_64 rng(2029);
    for (int trial = 0; trial < 4; ++trial) {
        MultiIndex s{static_cast<long>(rng() % 2) + 1, static_cast<long>(rng() % 2)};
        MultiIndex x{static_cast<long>(rng() % 3) + 1, static_cast<long>(rng() % 3)};
        Scalar targetJ = jfun(s, x, par, ctx);
        Scalar targetQ = qfun(s, x, par, ctx);
        Real prevJ(0, 100), prevQ(0, 100);
        bool first = true;
        for (long L : {20L, 40L, 80L}) {
            MultiIndex nL{s.at(1), s.at(2), L - s.total()};
            MultiIndex xL{L - x.total(), x.at(1), x.at(2)};
            Real errJ = abs((psi(nL, xL, par, ctx) - targetJ).to_real(100));
            Real errQ = abs((xi(nL, xL, par, ctx) - targetQ).to_real(100));
            if (!first) {
                CHECK(errJ < prevJ);
                CHECK(errQ < prevQ);
            }
            prevJ = errJ;
            prevQ = errQ;
            first = false;
        }
    }
}

TEST_CASE("Gasper-Rahman s = 1 reduces to the univariate q-Racah") {
    QContext ctx = QContext::bigfloat(Rational(1, 3), 60);
    GRRacahParams par(1, {Rational(1), Rational(4), Rational(6)}, 5);
    RacahParams rp(2, 1, 5 + 4, 5);  // beta1-beta0-1, beta2-beta1-1, M+beta1, M
    for (long l = 0; l <= 5; ++l)
        for (long y1 = 0; y1 <= 5; ++y1) {
            Scalar lhs = gr_racah_Z(MultiIndex{l}, MultiIndex{y1}, par, ctx);
            Scalar rhs = racah(l, y1, rp, ctx);
            CHECK(ctx.is_zero(lhs - rhs));
        }
}

TEST_CASE("Gasper-Rahman orthogonality on the simplex") {
    QContext ctx = QContext::bigfloat(Rational(1, 3), 60);
    GRRacahParams par(2, {Rational(1), Rational(4), Rational(6), Rational(10)}, 4);
    auto points = enumerate_simplex(2, par.M);
    // chi is positive on the whole simplex in this cone
    for (const auto& y : points) CHECK(gr_weight_chi(y, par, ctx).sign() > 0);
    std::vector<MultiIndex> degs;
    for (long l1 = 0; l1 <= par.M; ++l1)
        for (long l2 = 0; l1 + l2 <= par.M; ++l2) degs.push_back(MultiIndex{l1, l2});
    Real worst(0, 60);
    for (const auto& l : degs)
        for (const auto& lp : degs) {
            Scalar s = ctx.integer(0);
            for (const auto& y : points)
                s += gr_weight_chi(y, par, ctx) * gr_racah_Z(l, y, par, ctx) *
                     gr_racah_Z(lp, y, par, ctx);
            Scalar expect = (l == lp) ? gr_norm_upsilon(l, par, ctx) : ctx.integer(0);
            Scalar scale = ctx.sqrt(gr_norm_upsilon(l, par, ctx) * gr_norm_upsilon(lp, par, ctx));
            worst = std::max(worst, abs(((s - expect) / scale).to_real(60)));
        }
    CHECK(worst < tol10(40));
}

TEST_CASE("Gasper-Rahman degree zero and the reflected product form") {
    QContext ctx = QContext::bigfloat(Rational(1, 3), 60);
    GRRacahParams par(2, {Rational(1), Rational(4), Rational(6), Rational(10)}, 4);
    for (const auto& y : enumerate_simplex(2, par.M)) {
        CHECK(ctx.is_zero(gr_racah_Z(MultiIndex{0, 0}, y, par, ctx) - ctx.one()));
        for (const auto& l : {MultiIndex{1, 0}, MultiIndex{0, 2}, MultiIndex{2, 1}}) {
            Scalar a = gr_racah_Z(l, y, par, ctx);
            Scalar b = gr_racah_Z_reflected(l, y, par, ctx);
            CHECK(abs((a - b).to_real(60)) < tol10(40) * std::max(Real(1, 60), abs(a.to_real(60))));
        }
    }
}

TEST_CASE("dimension mismatches are rejected") {
    QContext ctx = QContext::bigfloat(Rational(1, 3), 60);
    ParamVector par{1, 2, 1};
    CHECK_THROWS_AS(psi(MultiIndex{1, 0}, MultiIndex{0, 0, 1}, par, ctx), domain_error);
    CHECK_THROWS_AS(weight_rho(MultiIndex{1, 0}, par, ctx), domain_error);
    GRRacahParams gp(2, {Rational(1), Rational(4), Rational(6), Rational(10)}, 4);
    CHECK_THROWS_AS(gr_racah_Z(MultiIndex{0, 0}, MultiIndex{3, 1}, gp, ctx), domain_error);
}
