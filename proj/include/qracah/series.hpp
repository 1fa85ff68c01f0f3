/// q-Pochhammer symbols and terminating basic hypergeometric series.
///
/// These two kernels are the only summation primitives in the library;
/// every polynomial family is a product of Pochhammer prefactors times one
/// rphi_s evaluation.
#ifndef QRACAH_SERIES_HPP
#define QRACAH_SERIES_HPP

#include <vector>

#include "qracah/scalar.hpp"

namespace qracah {

/// (a;q)_n = prod_{j=0}^{n-1} (1 - a q^j), with (a;q)_0 = 1.
inline Scalar qpochhammer(const Scalar& a, long n, const QContext& ctx) {
    if (n < 0) throw domain_error(errc::invalid_parameter, "qpochhammer order must be >= 0");
    Scalar acc = ctx.one();
    Scalar aqj = a;
    for (long j = 0; j < n; ++j) {
        acc *= (ctx.one() - aqj);
        aqj *= ctx.q();
    }
    return acc;
}

/// (q^e;q)_n.
inline Scalar qpochhammer_exp(const Rational& e, long n, const QContext& ctx) {
    return qpochhammer(ctx.qpow(e), n, ctx);
}

/// (a;q)_inf, truncated once the remaining factors are below the context's
/// representable accuracy.  BigFloat contexts only.
inline Scalar qpochhammer_inf(const Scalar& a, const QContext& ctx) {
    if (ctx.exact())
        throw domain_error(errc::non_square_in_exact_mode,
                           "infinite q-Pochhammer is irrational; use a BigFloat context");
    Real cutoff = real_from_rational(rational_pow(Rational(10), -(static_cast<long>(ctx.digits()) + 10)), ctx.digits());
    Scalar acc = ctx.one();
    Scalar aqj = a;
    long j = 0;
    const long hard_cap = 1000000;
    while (abs(aqj.to_real(ctx.digits())) > cutoff) {
        acc *= (ctx.one() - aqj);
        aqj *= ctx.q();
        if (++j > hard_cap)
            throw domain_error(errc::tail_not_converged, "(a;q)_inf did not converge");
    }
    return acc;
}

/// Terminating basic hypergeometric series
///
///   rphi_s(a_1..a_r; b_1..b_s; q, z)
///     = sum_k [(a_1;q)_k ... (a_r;q)_k / ((q;q)_k (b_1;q)_k ... (b_s;q)_k)]
///       * [(-1)^k q^C(k,2)]^{1+s-r} z^k.
///
/// The sum stops at the first vanishing upper factor (an upper parameter
/// q^{-n} kills every term past k = n).  A vanishing lower factor that is
/// not cancelled by a vanishing upper factor at the same step raises
/// ZeroDenominator; a series with no vanishing upper factor raises
/// NonTerminating once max_terms is exceeded.
inline Scalar phi(const std::vector<Scalar>& upper, const std::vector<Scalar>& lower,
                  const Scalar& z, const QContext& ctx, long max_terms = 10000) {
    const long r = static_cast<long>(upper.size());
    const long s = static_cast<long>(lower.size());
    const long sign_power = 1 + s - r;

    Scalar sum = ctx.one();
    Scalar term = ctx.one();
    std::vector<Scalar> upq = upper;  // a_i q^k
    std::vector<Scalar> loq = lower;  // b_j q^k
    Scalar qk1 = ctx.q();             // q^{k+1}

    for (long k = 0; k < max_terms; ++k) {
        // factors advancing term k -> k+1
        Scalar num = ctx.one();
        bool terminated = false;
        for (auto& a : upq) {
            Scalar f = ctx.one() - a;
            if (ctx.is_zero(f)) { terminated = true; break; }
            num *= f;
        }
        if (terminated) return sum;

        Scalar den = ctx.one() - qk1;
        for (auto& b : loq) {
            Scalar f = ctx.one() - b;
            if (ctx.is_zero(f))
                throw domain_error(errc::zero_denominator,
                                   "lower parameter hit q^{-k} before termination");
            den *= f;
        }

        term *= num / den * z;
        if (sign_power != 0) {
            Scalar extra = pow(-ctx.qpow(k), sign_power);
            term *= extra;
        }
        sum += term;

        for (auto& a : upq) a *= ctx.q();
        for (auto& b : loq) b *= ctx.q();
        qk1 *= ctx.q();
    }
    throw domain_error(errc::non_terminating,
                       "no upper parameter of the form q^{-n} within the term cap");
}

}  // namespace qracah

#endif
