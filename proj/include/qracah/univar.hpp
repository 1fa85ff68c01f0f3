/// One-variable families: q-Hahn, little q-Jacobi and q-Racah polynomials
/// together with their weights, norms and orthonormalized (hatted) forms.
///
/// Polynomials are evaluated through their terminating series definitions,
/// which keeps exact-rational mode trivial.  The hatted forms involve
/// square roots and are meant for BigFloat contexts; weights and norms are
/// exact-capable for integer parameters.
#ifndef QRACAH_UNIVAR_HPP
#define QRACAH_UNIVAR_HPP

#include <vector>

#include "qracah/series.hpp"

namespace qracah {

// ---------------------------------------------------------------------------
// q-Hahn
// ---------------------------------------------------------------------------

struct HahnParams {
    Rational alpha;
    Rational beta;
    long N = 0;

    HahnParams(Rational a, Rational b, long N_) : alpha(std::move(a)), beta(std::move(b)), N(N_) {
        if (N < 0) throw domain_error(errc::invalid_parameter, "q-Hahn N must be >= 0");
        if (!(alpha > -1) || !(beta > -1))
            throw domain_error(errc::invalid_parameter, "q-Hahn needs alpha, beta > -1");
    }
};

/// h_n(x) = (q^{a+1};q)_n (q^{-N};q)_n 3phi2(q^{-n}, q^{n+a+b+1}, q^{-x};
///          q^{a+1}, q^{-N}; q, q).  x may be any integer.
inline Scalar hahn(long n, long x, const HahnParams& par, const QContext& ctx) {
    if (n < 0 || n > par.N)
        throw domain_error(errc::degree_out_of_range, "q-Hahn degree outside [0, N]");
    Scalar pre = qpochhammer_exp(par.alpha + 1, n, ctx) * qpochhammer_exp(Rational(-par.N), n, ctx);
    Scalar series = phi({ctx.qpow(Rational(-n)), ctx.qpow(par.alpha + par.beta + 1 + n), ctx.qpow(Rational(-x))},
                        {ctx.qpow(par.alpha + 1), ctx.qpow(Rational(-par.N))}, ctx.q(), ctx);
    return pre * series;
}

inline Scalar hahn_weight(long x, const HahnParams& par, const QContext& ctx) {
    if (x < 0 || x > par.N)
        throw domain_error(errc::out_of_support, "q-Hahn weight point outside [0, N]");
    Scalar num = qpochhammer_exp(par.alpha + 1, x, ctx) * qpochhammer_exp(par.beta + 1, par.N - x, ctx);
    Scalar den = qpochhammer(ctx.q(), x, ctx) * qpochhammer(ctx.q(), par.N - x, ctx);
    return num / den * ctx.qpow((par.alpha + 1) * (par.N - x));
}

inline Scalar hahn_norm(long n, const HahnParams& par, const QContext& ctx) {
    if (n < 0 || n > par.N)
        throw domain_error(errc::out_of_support, "q-Hahn norm index outside [0, N]");
    const Rational ab1 = par.alpha + par.beta + 1;
    Scalar v = qpochhammer_exp(ab1 + 1, n + par.N, ctx) / qpochhammer(ctx.q(), par.N - n, ctx);
    v *= ctx.qpow(Rational(n * (n - 1) - 2 * par.N * n));
    v *= (ctx.one() - ctx.qpow(ab1)) / (ctx.one() - ctx.qpow(ab1 + 2 * n));
    v *= qpochhammer(ctx.q(), n, ctx) * qpochhammer_exp(par.alpha + 1, n, ctx) *
         qpochhammer_exp(par.beta + 1, n, ctx) / qpochhammer_exp(ab1, n, ctx);
    v *= ctx.qpow((par.alpha + 1) * n);
    return v;
}

/// hhat_n(x) = sqrt(w(x)/eta(n)) h_n(x); orthonormal on x = 0..N.
inline Scalar hahn_hat(long n, long x, const HahnParams& par, const QContext& ctx) {
    if (x < 0 || x > par.N)
        throw domain_error(errc::out_of_support, "q-Hahn point outside [0, N]");
    return ctx.sqrt_ratio(hahn_weight(x, par, ctx), hahn_norm(n, par, ctx)) * hahn(n, x, par, ctx);
}

/// hhat with the lattice support convention: indices outside the window
/// evaluate to an exact 0 instead of throwing.  The multivariate products
/// sweep over slices where factors transiently leave their support.
inline Scalar hahn_hat_or_zero(long n, long x, const HahnParams& par, const QContext& ctx) {
    if (n < 0 || n > par.N || x < 0 || x > par.N) return ctx.integer(0);
    return hahn_hat(n, x, par, ctx);
}

/// Raw q-Hahn value with the same convention; (q^{-N};q)_n vanishes for
/// n > N so the polynomial itself is 0 there.
inline Scalar hahn_or_zero(long n, long x, const HahnParams& par, const QContext& ctx) {
    if (n < 0 || n > par.N) return ctx.integer(0);
    return hahn(n, x, par, ctx);
}

// ---------------------------------------------------------------------------
// little q-Jacobi
// ---------------------------------------------------------------------------

/// p_n(x) = (q^{a+1};q)_n 2phi1(q^{-n}, q^{n+a+b+1}; q^{a+1}; q, q^{x+1}).
inline Scalar jacobi(long n, long x, const Rational& alpha, const Rational& beta,
                     const QContext& ctx) {
    if (n < 0) throw domain_error(errc::degree_out_of_range, "q-Jacobi degree must be >= 0");
    Scalar pre = qpochhammer_exp(alpha + 1, n, ctx);
    Scalar series = phi({ctx.qpow(Rational(-n)), ctx.qpow(alpha + beta + 1 + n)},
                        {ctx.qpow(alpha + 1)}, ctx.qpow(Rational(x + 1)), ctx);
    return pre * series;
}

inline Scalar jacobi_weight(long x, const Rational& alpha, const Rational& beta,
                            const QContext& ctx) {
    if (x < 0) throw domain_error(errc::out_of_support, "q-Jacobi weight point must be >= 0");
    Scalar v = qpochhammer_inf(ctx.qpow(alpha + 1), ctx) /
               qpochhammer_inf(ctx.qpow(alpha + beta + 2), ctx);
    v *= qpochhammer_exp(beta + 1, x, ctx) / qpochhammer(ctx.q(), x, ctx);
    return v * ctx.qpow((alpha + 1) * x);
}

inline Scalar jacobi_norm(long n, const Rational& alpha, const Rational& beta,
                          const QContext& ctx) {
    if (n < 0) throw domain_error(errc::out_of_support, "q-Jacobi norm index must be >= 0");
    const Rational ab1 = alpha + beta + 1;
    Scalar v = (ctx.one() - ctx.qpow(ab1)) / (ctx.one() - ctx.qpow(ab1 + 2 * n));
    v *= qpochhammer(ctx.q(), n, ctx) * qpochhammer_exp(alpha + 1, n, ctx) *
         qpochhammer_exp(beta + 1, n, ctx) / qpochhammer_exp(ab1, n, ctx);
    return v * ctx.qpow((alpha + 1) * n);
}

inline Scalar jacobi_hat(long n, long x, const Rational& alpha, const Rational& beta,
                         const QContext& ctx) {
    return ctx.sqrt_ratio(jacobi_weight(x, alpha, beta, ctx), jacobi_norm(n, alpha, beta, ctx)) *
           jacobi(n, x, alpha, beta, ctx);
}

inline Scalar jacobi_hat_or_zero(long n, long x, const Rational& alpha, const Rational& beta,
                                 const QContext& ctx) {
    if (n < 0 || x < 0) return ctx.integer(0);
    return jacobi_hat(n, x, alpha, beta, ctx);
}

/// Number of lattice points needed before the weight tail
/// sum_{x >= X} mu(x) drops below `tol`/10.  The tail is geometric with
/// ratio q^{alpha+1}.
inline long jacobi_tail_cutoff(const Rational& alpha, const Rational& tol, const QContext& ctx) {
    Real ratio = ctx.qpow(alpha + 1).to_real(ctx.digits());
    Real bound = real_from_rational(tol / 10, ctx.digits());
    Real term(1, ctx.digits());
    long x = 0;
    const long hard_cap = 100000;
    while (term / (1 - ratio) > bound) {
        term *= ratio;
        if (++x > hard_cap)
            throw domain_error(errc::tail_not_converged, "q-Jacobi tail cutoff not reached");
    }
    return x;
}

// ---------------------------------------------------------------------------
// q-Racah
// ---------------------------------------------------------------------------

struct RacahParams {
    Rational a;  // first exponent parameter
    Rational b;
    Rational c;
    long N = 0;

    RacahParams(Rational a_, Rational b_, Rational c_, long N_)
        : a(std::move(a_)), b(std::move(b_)), c(std::move(c_)), N(N_) {
        if (N < 0) throw domain_error(errc::invalid_parameter, "q-Racah N must be >= 0");
    }
};

inline Scalar racah_weight(long x, const RacahParams& par, const QContext& ctx);

/// Validate that the weight is positive across the whole support; the
/// admissible parameter cone is only characterized numerically.
inline void racah_check_cone(const RacahParams& par, const QContext& ctx) {
    for (long x = 0; x <= par.N; ++x)
        if (!(racah_weight(x, par, ctx).sign() > 0))
            throw domain_error(errc::invalid_parameter,
                               "q-Racah weight not positive on the support");
}

/// r_n(x) = (q^{a+1};q)_n (q^{b+c+1};q)_n (q^{-N};q)_n q^{n(N-c)/2}
///          4phi3(q^{-n}, q^{n+a+b+1}, q^{-x}, q^{x+c-N};
///                q^{a+1}, q^{b+c+1}, q^{-N}; q, q).
inline Scalar racah(long n, long x, const RacahParams& par, const QContext& ctx) {
    if (n < 0 || n > par.N)
        throw domain_error(errc::degree_out_of_range, "q-Racah degree outside [0, N]");
    Scalar pre = qpochhammer_exp(par.a + 1, n, ctx) * qpochhammer_exp(par.b + par.c + 1, n, ctx) *
                 qpochhammer_exp(Rational(-par.N), n, ctx);
    pre *= ctx.qpow(Rational(n) * (Rational(par.N) - par.c) / 2);
    Scalar series =
        phi({ctx.qpow(Rational(-n)), ctx.qpow(par.a + par.b + 1 + n), ctx.qpow(Rational(-x)),
             ctx.qpow(par.c - par.N + x)},
            {ctx.qpow(par.a + 1), ctx.qpow(par.b + par.c + 1), ctx.qpow(Rational(-par.N))},
            ctx.q(), ctx);
    return pre * series;
}

inline Scalar racah_weight(long x, const RacahParams& par, const QContext& ctx) {
    if (x < 0 || x > par.N)
        throw domain_error(errc::out_of_support, "q-Racah weight point outside [0, N]");
    const Rational cN = par.c - par.N;
    Scalar v = (ctx.one() - ctx.qpow(cN + 2 * x)) / (ctx.one() - ctx.qpow(cN));
    v *= qpochhammer_exp(cN, x, ctx) * qpochhammer_exp(par.a + 1, x, ctx) *
         qpochhammer_exp(par.b + par.c + 1, x, ctx) * qpochhammer_exp(Rational(-par.N), x, ctx);
    v /= qpochhammer(ctx.q(), x, ctx) * qpochhammer_exp(par.c - par.a - par.N, x, ctx) *
         qpochhammer_exp(-par.b - par.N, x, ctx) * qpochhammer_exp(par.c + 1, x, ctx);
    return v * ctx.qpow(-(par.a + par.b + 1) * x);
}

inline Scalar racah_norm(long n, const RacahParams& par, const QContext& ctx) {
    if (n < 0 || n > par.N)
        throw domain_error(errc::out_of_support, "q-Racah norm index outside [0, N]");
    const Rational ab1 = par.a + par.b + 1;
    Scalar v = qpochhammer_exp(-par.c, par.N, ctx) * qpochhammer_exp(ab1 + 1, par.N, ctx) /
               (qpochhammer_exp(par.a - par.c + 1, par.N, ctx) *
                qpochhammer_exp(par.b + 1, par.N, ctx));
    v *= qpochhammer(ctx.q(), n, ctx) * qpochhammer_exp(par.a + 1, n, ctx) *
         qpochhammer_exp(par.b + 1, n, ctx) * qpochhammer_exp(par.a - par.c + 1, n, ctx) *
         qpochhammer_exp(par.b + par.c + 1, n, ctx) * qpochhammer_exp(Rational(-par.N), n, ctx);
    v *= (ctx.one() - ctx.qpow(ab1)) / (ctx.one() - ctx.qpow(ab1 + 2 * n));
    v *= qpochhammer_exp(ab1 + par.N + 1, n, ctx) / qpochhammer_exp(ab1, n, ctx);
    return v;
}

inline Scalar racah_hat(long n, long x, const RacahParams& par, const QContext& ctx) {
    return ctx.sqrt_ratio(racah_weight(x, par, ctx), racah_norm(n, par, ctx)) *
           racah(n, x, par, ctx);
}

inline Scalar racah_hat_or_zero(long n, long x, const RacahParams& par, const QContext& ctx) {
    if (n < 0 || n > par.N || x < 0 || x > par.N) return ctx.integer(0);
    return racah_hat(n, x, par, ctx);
}

inline Scalar racah_or_zero(long n, long x, const RacahParams& par, const QContext& ctx) {
    if (n < 0 || n > par.N) return ctx.integer(0);
    return racah(n, x, par, ctx);
}

// ---------------------------------------------------------------------------
// q-Racah generating relation (identity check; both sides evaluated
// independently)
// ---------------------------------------------------------------------------

/// Product of the two 2phi1 factors in the generating relation.
inline Scalar racah_generating_lhs(long n, const RacahParams& par, const Scalar& t,
                                   const QContext& ctx) {
    if (n < 0 || n > par.N)
        throw domain_error(errc::degree_out_of_range, "generating relation degree outside [0, N]");
    Scalar f1 = phi({ctx.qpow(Rational(-n)), ctx.qpow(-par.b - n)}, {ctx.qpow(par.a + 1)},
                    ctx.qpow(par.a + par.b + 1 + n) * t, ctx);
    Scalar f2 = phi({ctx.qpow(Rational(n - par.N)), ctx.qpow(par.b + par.c + 1 + n)},
                    {ctx.qpow(par.c - par.a - par.N)}, ctx.qpow(Rational(-n)) * t, ctx);
    return f1 * f2;
}

/// The matching finite sum over the support, in powers of t.
inline Scalar racah_generating_rhs(long n, const RacahParams& par, const Scalar& t,
                                   const QContext& ctx) {
    if (n < 0 || n > par.N)
        throw domain_error(errc::degree_out_of_range, "generating relation degree outside [0, N]");
    Scalar norm = ctx.qpow(Rational(n) * (par.c - par.N) / 2) /
                  (qpochhammer_exp(par.a + 1, n, ctx) * qpochhammer_exp(par.b + par.c + 1, n, ctx) *
                   qpochhammer_exp(Rational(-par.N), n, ctx));
    Scalar sum = ctx.integer(0);
    Scalar tx = ctx.one();
    for (long x = 0; x <= par.N; ++x) {
        Scalar coeff = qpochhammer_exp(par.b + par.c + 1, x, ctx) *
                       qpochhammer_exp(Rational(-par.N), x, ctx) /
                       (qpochhammer(ctx.q(), x, ctx) *
                        qpochhammer_exp(par.c - par.a - par.N, x, ctx));
        sum += coeff * norm * racah(n, x, par, ctx) * tx;
        tx *= t;
    }
    return sum;
}

}  // namespace qracah

#endif
