/// Multivariate families on the lattice slice Y_d = M and the simplex W_M:
/// the orthonormal nested bases Psi and Xi, the polynomial families H and G
/// with weight rho, the q-Jacobi-type limits (curly J, curly Q, J, Q) with
/// weight nu, and the Gasper-Rahman multivariate q-Racah polynomials Z with
/// weight chi and norm Upsilon.
///
/// Conventions used throughout: empty products are 1; a delta prefactor
/// off its shell gives an exact 0; a hatted factor whose point or degree
/// leaves the support window [0, N] zeroes the whole product, matching the
/// support of the measure.
#ifndef QRACAH_MULTIVAR_HPP
#define QRACAH_MULTIVAR_HPP

#include <vector>

#include "qracah/indices.hpp"
#include "qracah/univar.hpp"

namespace qracah {

// ---------------------------------------------------------------------------
// orthonormal nested bases
// ---------------------------------------------------------------------------

/// Psi_n(y): product over k = 1..d-1 of
///   hhat_{n_k}(Y_k - N_{k-1}; 2N_{k-1} + A_k + k - 1, alpha_{k+1},
///              Y_{k+1} - N_{k-1}),
/// with delta_{N_d, Y_d} in front.
inline Scalar psi(const MultiIndex& n, const MultiIndex& y, const ParamVector& par,
                  const QContext& ctx) {
    const long d = par.d();
    if (n.size() != d || y.size() != d)
        throw domain_error(errc::dimension_mismatch, "psi needs d-component degree and point");
    if (n.total() != y.total()) return ctx.integer(0);
    Scalar acc = ctx.one();
    for (long k = 1; k <= d - 1; ++k) {
        long Nk1 = n.prefix(k - 1);
        long Narg = y.prefix(k + 1) - Nk1;
        if (Narg < 0) return ctx.integer(0);
        HahnParams hp(2 * Nk1 + par.A(k) + k - 1, par.alpha(k + 1), Narg);
        acc *= hahn_hat_or_zero(n.at(k), y.prefix(k) - Nk1, hp, ctx);
        if (acc.exactly_zero()) return ctx.integer(0);
    }
    return acc;
}

/// Xi_m(y): product over k = 1..d-2 of
///   hhat_{m_k}(Ytil_{k+1} - M_{k-1}; 2M_{k-1} + Atil_{k+1} + k - 1,
///              alpha_{k+2}, Ytil_{k+2} - M_{k-1})
/// times hhat_{m_{d-1}}(y_1; alpha_1, 2M_{d-2} + Atil_d + d - 2,
///                      Y_d - M_{d-2}), with delta_{M_d, Y_d} in front.
inline Scalar xi(const MultiIndex& m, const MultiIndex& y, const ParamVector& par,
                 const QContext& ctx) {
    const long d = par.d();
    if (m.size() != d || y.size() != d)
        throw domain_error(errc::dimension_mismatch, "xi needs d-component degree and point");
    if (m.total() != y.total()) return ctx.integer(0);
    Scalar acc = ctx.one();
    for (long k = 1; k <= d - 2; ++k) {
        long Mk1 = m.prefix(k - 1);
        long Narg = y.tilde(k + 2) - Mk1;
        if (Narg < 0) return ctx.integer(0);
        HahnParams hp(2 * Mk1 + par.Atilde(k + 1) + k - 1, par.alpha(k + 2), Narg);
        acc *= hahn_hat_or_zero(m.at(k), y.tilde(k + 1) - Mk1, hp, ctx);
        if (acc.exactly_zero()) return ctx.integer(0);
    }
    long Md2 = m.prefix(d - 2);
    long Narg = y.total() - Md2;
    if (Narg < 0) return ctx.integer(0);
    HahnParams last(par.alpha(1), 2 * Md2 + par.Atilde(d) + d - 2, Narg);
    acc *= hahn_hat_or_zero(m.at(d - 1), y.at(1), last, ctx);
    return acc;
}

// ---------------------------------------------------------------------------
// polynomial q-Hahn families on the weight rho
// ---------------------------------------------------------------------------

/// rho(y) = prod_k (q^{alpha_k+1};q)_{y_k} / (q;q)_{y_k} q^{y_k (A_{k-1}+k-1)}.
inline Scalar weight_rho(const MultiIndex& y, const ParamVector& par, const QContext& ctx) {
    const long d = par.d();
    if (y.size() != d) throw domain_error(errc::dimension_mismatch, "rho needs a d-point");
    if (!y.nonnegative()) throw domain_error(errc::out_of_support, "rho needs y >= 0");
    Scalar acc = ctx.one();
    for (long k = 1; k <= d; ++k) {
        acc *= qpochhammer_exp(par.alpha(k) + 1, y.at(k), ctx) /
               qpochhammer(ctx.q(), y.at(k), ctx);
        acc *= ctx.qpow((par.A(k - 1) + (k - 1)) * y.at(k));
    }
    return acc;
}

/// H_n(y) = prod_{k=1}^{d-1} h_{n_k}(Y_k - N_{k-1}; 2N_{k-1}+A_k+k-1,
///          alpha_{k+1}, Y_{k+1} - N_{k-1}).
inline Scalar hahn_H(const MultiIndex& n, const MultiIndex& y, const ParamVector& par,
                     const QContext& ctx) {
    const long d = par.d();
    if (n.size() != d || y.size() != d)
        throw domain_error(errc::dimension_mismatch, "H needs d-component degree and point");
    Scalar acc = ctx.one();
    for (long k = 1; k <= d - 1; ++k) {
        long Nk1 = n.prefix(k - 1);
        long Narg = y.prefix(k + 1) - Nk1;
        // degree beyond the window: the (q^{-N};q)_n prefactor vanishes
        if (n.at(k) > Narg) return ctx.integer(0);
        HahnParams hp(2 * Nk1 + par.A(k) + k - 1, par.alpha(k + 1), Narg);
        acc *= hahn(n.at(k), y.prefix(k) - Nk1, hp, ctx);
    }
    return acc;
}

/// Normalization Lambda_n in the orthogonality of H on the slice Y_d = N_d.
inline Scalar norm_lambda(const MultiIndex& n, const ParamVector& par, const QContext& ctx) {
    const long d = par.d();
    if (n.size() != d) throw domain_error(errc::dimension_mismatch, "Lambda needs d degrees");
    const long Nd1 = n.prefix(d - 1);
    const long Nd = n.prefix(d);
    Scalar acc = qpochhammer_exp(par.A(d) + d, n.at(d) + 2 * Nd1, ctx) /
                 qpochhammer(ctx.q(), n.at(d), ctx);
    acc *= ctx.qpow(Rational(Nd1 * (Nd1 - 1) - 2 * Nd * Nd1));
    for (long k = 1; k <= d - 1; ++k) {
        long Nk1 = n.prefix(k - 1);
        long Nk = n.prefix(k);
        Rational Ak1 = par.A(k + 1) + k;
        acc *= (ctx.one() - ctx.qpow(Ak1)) / (ctx.one() - ctx.qpow(Ak1 + 2 * Nk));
        acc *= qpochhammer(ctx.q(), n.at(k), ctx) *
               qpochhammer_exp(par.A(k) + k, n.at(k) + 2 * Nk1, ctx) *
               qpochhammer_exp(par.alpha(k + 1) + 1, n.at(k), ctx) /
               qpochhammer_exp(Ak1, n.at(k) + 2 * Nk1, ctx);
        acc *= ctx.qpow((2 * Nk1 + par.A(k) + k) * n.at(k));
    }
    return acc;
}

/// G_m(y) = prod_{k=1}^{d-2} h_{m_k}(Ytil_{k+1} - M_{k-1}; ...) times
///          q^{-y_1 M_{d-2}} h_{m_{d-1}}(y_1; alpha_1, 2M_{d-2}+Atil_d+d-2,
///          Y_d - M_{d-2}).
inline Scalar hahn_G(const MultiIndex& m, const MultiIndex& y, const ParamVector& par,
                     const QContext& ctx) {
    const long d = par.d();
    if (m.size() != d || y.size() != d)
        throw domain_error(errc::dimension_mismatch, "G needs d-component degree and point");
    Scalar acc = ctx.one();
    for (long k = 1; k <= d - 2; ++k) {
        long Mk1 = m.prefix(k - 1);
        long Narg = y.tilde(k + 2) - Mk1;
        if (m.at(k) > Narg) return ctx.integer(0);
        HahnParams hp(2 * Mk1 + par.Atilde(k + 1) + k - 1, par.alpha(k + 2), Narg);
        acc *= hahn(m.at(k), y.tilde(k + 1) - Mk1, hp, ctx);
    }
    long Md2 = m.prefix(d - 2);
    long Narg = y.total() - Md2;
    if (m.at(d - 1) > Narg) return ctx.integer(0);
    HahnParams last(par.alpha(1), 2 * Md2 + par.Atilde(d) + d - 2, Narg);
    acc *= ctx.qpow(Rational(-y.at(1) * Md2));
    acc *= hahn(m.at(d - 1), y.at(1), last, ctx);
    return acc;
}

/// Normalization Omega_m in the orthogonality of G on the slice Y_d = M_d.
inline Scalar norm_omega(const MultiIndex& m, const ParamVector& par, const QContext& ctx) {
    const long d = par.d();
    if (m.size() != d) throw domain_error(errc::dimension_mismatch, "Omega needs d degrees");
    const long Md1 = m.prefix(d - 1);
    const long Md = m.prefix(d);
    Scalar acc = qpochhammer_exp(par.A(d) + d, m.at(d) + 2 * Md1, ctx) /
                 qpochhammer(ctx.q(), m.at(d), ctx);
    acc *= ctx.qpow(Rational(Md1 * (Md1 - 1) - 2 * Md * Md1));
    for (long k = 1; k <= d - 2; ++k) {
        long Mk1 = m.prefix(k - 1);
        long Mk = m.prefix(k);
        Rational Atk2 = par.Atilde(k + 2) + k;
        acc *= (ctx.one() - ctx.qpow(Atk2)) / (ctx.one() - ctx.qpow(Atk2 + 2 * Mk));
        acc *= qpochhammer(ctx.q(), m.at(k), ctx) *
               qpochhammer_exp(par.Atilde(k + 1) + k, m.at(k) + 2 * Mk1, ctx) *
               qpochhammer_exp(par.alpha(k + 2) + 1, m.at(k), ctx) /
               qpochhammer_exp(Atk2, m.at(k) + 2 * Mk1, ctx);
        acc *= ctx.qpow((2 * Mk1 + par.Atilde(k + 1) + k) * m.at(k));
    }
    const long Md2 = m.prefix(d - 2);
    Rational Ad1 = par.A(d) + d - 1;
    acc *= (ctx.one() - ctx.qpow(Ad1)) / (ctx.one() - ctx.qpow(Ad1 + 2 * Md1));
    acc *= qpochhammer(ctx.q(), m.at(d - 1), ctx) *
           qpochhammer_exp(par.Atilde(d) + d - 1, m.at(d - 1) + 2 * Md2, ctx) *
           qpochhammer_exp(par.alpha(1) + 1, m.at(d - 1), ctx) /
           qpochhammer_exp(Ad1, m.at(d - 1) + 2 * Md2, ctx);
    acc *= ctx.qpow((par.alpha(1) + 1) * Md1);
    return acc;
}

// ---------------------------------------------------------------------------
// q-Jacobi-type limits (d-1 variables, infinite support)
// ---------------------------------------------------------------------------

/// curly J_s(x) = prod_k (-1)^{s_k} phat_{s_k}(x_k; 2S_{k-1}+A_k+k-1,
///                alpha_{k+1}).
inline Scalar jfun(const MultiIndex& s, const MultiIndex& x, const ParamVector& par,
                   const QContext& ctx) {
    const long d = par.d();
    if (s.size() != d - 1 || x.size() != d - 1)
        throw domain_error(errc::dimension_mismatch, "curly J needs d-1 components");
    Scalar acc = ctx.one();
    for (long k = 1; k <= d - 1; ++k) {
        long Sk1 = s.prefix(k - 1);
        acc *= pow(-ctx.one(), s.at(k)) *
               jacobi_hat_or_zero(s.at(k), x.at(k), 2 * Sk1 + par.A(k) + k - 1,
                                  par.alpha(k + 1), ctx);
        if (acc.exactly_zero()) return ctx.integer(0);
    }
    return acc;
}

/// curly Q_t(x) = prod_{k=1}^{d-2} hhat_{t_k}(X_k - T_{k-1}; ...) times
///                (-1)^{t_{d-1}} phat_{t_{d-1}}(X_{d-1} - T_{d-2}; alpha_1,
///                2T_{d-2} + Atil_d + d - 2).
inline Scalar qfun(const MultiIndex& t, const MultiIndex& x, const ParamVector& par,
                   const QContext& ctx) {
    const long d = par.d();
    if (t.size() != d - 1 || x.size() != d - 1)
        throw domain_error(errc::dimension_mismatch, "curly Q needs d-1 components");
    Scalar acc = ctx.one();
    for (long k = 1; k <= d - 2; ++k) {
        long Tk1 = t.prefix(k - 1);
        long Narg = x.prefix(k + 1) - Tk1;
        if (Narg < 0) return ctx.integer(0);
        HahnParams hp(2 * Tk1 + par.Atilde(k + 1) + k - 1, par.alpha(k + 2), Narg);
        acc *= hahn_hat_or_zero(t.at(k), x.prefix(k) - Tk1, hp, ctx);
        if (acc.exactly_zero()) return ctx.integer(0);
    }
    long Td2 = t.prefix(d - 2);
    acc *= pow(-ctx.one(), t.at(d - 1)) *
           jacobi_hat_or_zero(t.at(d - 1), x.prefix(d - 1) - Td2, par.alpha(1),
                              2 * Td2 + par.Atilde(d) + d - 2, ctx);
    return acc;
}

/// nu(x) = (q^{alpha_1+1};q)_inf / (q^{A_d+d};q)_inf prod_{k=2}^{d}
///         (q^{alpha_k+1};q)_{x_{k-1}} / (q;q)_{x_{k-1}}
///         q^{x_{k-1}(A_{k-1}+k-1)}.
inline Scalar weight_nu(const MultiIndex& x, const ParamVector& par, const QContext& ctx) {
    const long d = par.d();
    if (x.size() != d - 1) throw domain_error(errc::dimension_mismatch, "nu needs d-1 components");
    if (!x.nonnegative()) throw domain_error(errc::out_of_support, "nu needs x >= 0");
    Scalar acc = qpochhammer_inf(ctx.qpow(par.alpha(1) + 1), ctx) /
                 qpochhammer_inf(ctx.qpow(par.A(d) + d), ctx);
    for (long k = 2; k <= d; ++k) {
        acc *= qpochhammer_exp(par.alpha(k) + 1, x.at(k - 1), ctx) /
               qpochhammer(ctx.q(), x.at(k - 1), ctx);
        acc *= ctx.qpow((par.A(k - 1) + k - 1) * x.at(k - 1));
    }
    return acc;
}

/// J_s(x) = prod_k (-1)^{s_k} q^{x_k S_{k-1}} p_{s_k}(x_k; 2S_{k-1}+A_k+k-1,
///          alpha_{k+1}).
inline Scalar jacobi_J(const MultiIndex& s, const MultiIndex& x, const ParamVector& par,
                       const QContext& ctx) {
    const long d = par.d();
    if (s.size() != d - 1 || x.size() != d - 1)
        throw domain_error(errc::dimension_mismatch, "J needs d-1 components");
    Scalar acc = ctx.one();
    for (long k = 1; k <= d - 1; ++k) {
        long Sk1 = s.prefix(k - 1);
        acc *= pow(-ctx.one(), s.at(k)) * ctx.qpow(Rational(x.at(k) * Sk1)) *
               jacobi(s.at(k), x.at(k), 2 * Sk1 + par.A(k) + k - 1, par.alpha(k + 1), ctx);
    }
    return acc;
}

inline Scalar norm_iota(const MultiIndex& s, const ParamVector& par, const QContext& ctx) {
    const long d = par.d();
    if (s.size() != d - 1) throw domain_error(errc::dimension_mismatch, "iota needs d-1 degrees");
    Scalar acc = ctx.one();
    for (long k = 1; k <= d - 1; ++k) {
        long Sk1 = s.prefix(k - 1);
        long Sk = s.prefix(k);
        Rational Ak1 = par.A(k + 1) + k;
        acc *= (ctx.one() - ctx.qpow(Ak1)) / (ctx.one() - ctx.qpow(Ak1 + 2 * Sk));
        acc *= qpochhammer(ctx.q(), s.at(k), ctx) *
               qpochhammer_exp(par.A(k) + k, s.at(k) + 2 * Sk1, ctx) *
               qpochhammer_exp(par.alpha(k + 1) + 1, s.at(k), ctx) /
               qpochhammer_exp(Ak1, s.at(k) + 2 * Sk1, ctx);
        acc *= ctx.qpow((2 * Sk1 + par.A(k) + k) * s.at(k));
    }
    return acc;
}

/// Q_t(x): mixed q-Hahn / q-Jacobi polynomial form of curly Q.
inline Scalar mixed_Q(const MultiIndex& t, const MultiIndex& x, const ParamVector& par,
                      const QContext& ctx) {
    const long d = par.d();
    if (t.size() != d - 1 || x.size() != d - 1)
        throw domain_error(errc::dimension_mismatch, "Q needs d-1 components");
    Scalar acc = ctx.one();
    for (long k = 1; k <= d - 2; ++k) {
        long Tk1 = t.prefix(k - 1);
        long Narg = x.prefix(k + 1) - Tk1;
        if (t.at(k) > Narg) return ctx.integer(0);
        HahnParams hp(2 * Tk1 + par.Atilde(k + 1) + k - 1, par.alpha(k + 2), Narg);
        acc *= hahn(t.at(k), x.prefix(k) - Tk1, hp, ctx);
    }
    long Td2 = t.prefix(d - 2);
    acc *= pow(-ctx.one(), t.at(d - 1)) * ctx.qpow(Rational(x.prefix(d - 1) * Td2)) *
           jacobi(t.at(d - 1), x.prefix(d - 1) - Td2, par.alpha(1),
                  2 * Td2 + par.Atilde(d) + d - 2, ctx);
    return acc;
}

inline Scalar norm_tau(const MultiIndex& t, const ParamVector& par, const QContext& ctx) {
    const long d = par.d();
    if (t.size() != d - 1) throw domain_error(errc::dimension_mismatch, "tau needs d-1 degrees");
    const long Td2 = t.prefix(d - 2);
    const long Td1 = t.prefix(d - 1);
    Scalar acc = ctx.qpow(Rational(Td2 * (Td2 - 1)));
    for (long k = 1; k <= d - 2; ++k) {
        long Tk1 = t.prefix(k - 1);
        long Tk = t.prefix(k);
        Rational Atk2 = par.Atilde(k + 2) + k;
        acc *= (ctx.one() - ctx.qpow(Atk2)) / (ctx.one() - ctx.qpow(Atk2 + 2 * Tk));
        acc *= qpochhammer(ctx.q(), t.at(k), ctx) *
               qpochhammer_exp(par.Atilde(k + 1) + k, t.at(k) + 2 * Tk1, ctx) *
               qpochhammer_exp(par.alpha(k + 2) + 1, t.at(k), ctx) /
               qpochhammer_exp(Atk2, t.at(k) + 2 * Tk1, ctx);
        acc *= ctx.qpow((2 * Tk1 + par.Atilde(k + 1) + k) * t.at(k));
    }
    Rational Ad1 = par.A(d) + d - 1;
    acc *= (ctx.one() - ctx.qpow(Ad1)) / (ctx.one() - ctx.qpow(Ad1 + 2 * Td1));
    acc *= qpochhammer(ctx.q(), t.at(d - 1), ctx) *
           qpochhammer_exp(par.Atilde(d) + d - 1, t.at(d - 1) + 2 * Td2, ctx) *
           qpochhammer_exp(par.alpha(1) + 1, t.at(d - 1), ctx) /
           qpochhammer_exp(Ad1, t.at(d - 1) + 2 * Td2, ctx);
    acc *= ctx.qpow((par.alpha(1) + 1) * Td1);
    return acc;
}

// ---------------------------------------------------------------------------
// Gasper-Rahman multivariate q-Racah polynomials on the simplex W_M
// ---------------------------------------------------------------------------

struct GRRacahParams {
    long s = 1;                  // number of variables
    std::vector<Rational> beta;  // beta_0 .. beta_{s+1}
    long M = 0;

    GRRacahParams(long s_, std::vector<Rational> beta_, long M_)
        : s(s_), beta(std::move(beta_)), M(M_) {
        if (s < 1 || M < 0 || static_cast<long>(beta.size()) != s + 2)
            throw domain_error(errc::invalid_parameter,
                               "need s >= 1, M >= 0 and s+2 beta parameters");
    }

    const Rational& b(long k) const { return beta[static_cast<size_t>(k)]; }  // 0-based
};

/// The parametrization bridge to the a_1..a_{s+1}, b form of the original
/// construction: a_1 = q^{beta_1}, a_k = q^{beta_k - beta_{k-1}},
/// b = q^{beta_1 - beta_0 - 1}.
inline std::vector<Rational> gr_ab_exponents(const GRRacahParams& par) {
    std::vector<Rational> out;
    out.push_back(par.b(1));
    for (long k = 2; k <= par.s + 1; ++k) out.push_back(par.b(k) - par.b(k - 1));
    out.push_back(par.b(1) - par.b(0) - 1);
    return out;
}

inline void gr_check_point(const MultiIndex& y, const GRRacahParams& par) {
    if (y.size() != par.s)
        throw domain_error(errc::dimension_mismatch, "point needs s components");
    long prev = 0;
    for (long k = 1; k <= par.s; ++k) {
        if (y.at(k) < prev || y.at(k) > par.M)
            throw domain_error(errc::outside_simplex, "point leaves 0 <= y_1 <= ... <= y_s <= M");
        prev = y.at(k);
    }
}

/// Z_l(y) = prod_{k=1}^{s} r_{l_k}(y_k - L_{k-1}; 2L_{k-1}+beta_k-beta_0-1,
///          beta_{k+1}-beta_k-1, y_{k+1}+L_{k-1}+beta_k, y_{k+1}-L_{k-1}),
/// with y_0 = 0 and y_{s+1} = M.
inline Scalar gr_racah_Z(const MultiIndex& l, const MultiIndex& y, const GRRacahParams& par,
                         const QContext& ctx) {
    if (l.size() != par.s)
        throw domain_error(errc::dimension_mismatch, "degree needs s components");
    gr_check_point(y, par);
    auto y_at = [&](long k) { return k == 0 ? 0L : (k == par.s + 1 ? par.M : y.at(k)); };
    Scalar acc = ctx.one();
    for (long k = 1; k <= par.s; ++k) {
        long Lk1 = l.prefix(k - 1);
        long Narg = y_at(k + 1) - Lk1;
        if (l.at(k) > Narg || Narg < 0) return ctx.integer(0);
        RacahParams rp(2 * Lk1 + par.b(k) - par.b(0) - 1, par.b(k + 1) - par.b(k) - 1,
                       y_at(k + 1) + Lk1 + par.b(k), Narg);
        acc *= racah(l.at(k), y_at(k) - Lk1, rp, ctx);
    }
    return acc;
}

/// Transformed product form obtained by reflecting every univariate factor;
/// pointwise equal to gr_racah_Z.
inline Scalar gr_racah_Z_reflected(const MultiIndex& l, const MultiIndex& y,
                                   const GRRacahParams& par, const QContext& ctx) {
    if (l.size() != par.s)
        throw domain_error(errc::dimension_mismatch, "degree needs s components");
    gr_check_point(y, par);
    auto y_at = [&](long k) { return k == 0 ? 0L : (k == par.s + 1 ? par.M : y.at(k)); };
    Scalar acc = ctx.one();
    for (long k = 1; k <= par.s; ++k) {
        long Lk1 = l.prefix(k - 1);
        long Narg = y_at(k + 1) - Lk1;
        if (l.at(k) > Narg || Narg < 0) return ctx.integer(0);
        RacahParams rp(par.b(k + 1) - par.b(k) - 1, 2 * Lk1 + par.b(k) - par.b(0) - 1,
                       -(y_at(k + 1) + Lk1 + par.b(k)), Narg);
        acc *= racah(l.at(k), y_at(k + 1) - y_at(k), rp, ctx);
    }
    return acc;
}

/// chi(y) weight on the simplex.
inline Scalar gr_weight_chi(const MultiIndex& y, const GRRacahParams& par, const QContext& ctx) {
    gr_check_point(y, par);
    auto y_at = [&](long k) { return k == 0 ? 0L : (k == par.s + 1 ? par.M : y.at(k)); };
    Scalar acc = ctx.one();
    for (long k = 0; k <= par.s; ++k) {
        acc *= qpochhammer_exp(par.b(k + 1) - par.b(k), y_at(k + 1) - y_at(k), ctx) *
               qpochhammer_exp(par.b(k + 1), y_at(k + 1) + y_at(k), ctx) /
               (qpochhammer(ctx.q(), y_at(k + 1) - y_at(k), ctx) *
                qpochhammer_exp(par.b(k) + 1, y_at(k + 1) + y_at(k), ctx));
    }
    for (long k = 1; k <= par.s; ++k) {
        acc *= (ctx.one() - ctx.qpow(par.b(k) + 2 * y_at(k))) / (ctx.one() - ctx.qpow(par.b(k)));
        acc *= ctx.qpow((par.b(k - 1) - par.b(k)) * y_at(k));
    }
    return acc;
}

/// Norm square Upsilon_l.  The level parameter defaults to M, the reading
/// under which the orthogonality on W_M is confirmed numerically.
inline Scalar gr_norm_upsilon(const MultiIndex& l, const GRRacahParams& par, const QContext& ctx,
                              long level = -1) {
    if (l.size() != par.s)
        throw domain_error(errc::dimension_mismatch, "degree needs s components");
    const long L = level < 0 ? par.M : level;
    const long Ls = l.total();
    Scalar acc = ctx.qpow(-par.b(par.s) * par.M + Rational(-2 * par.M * Ls + Ls * (Ls - 1)) +
                          par.b(0) * (par.M - Ls));
    acc *= qpochhammer_exp(par.b(par.s + 1), L + Ls, ctx) *
           qpochhammer_exp(par.b(par.s + 1) - par.b(0), L + Ls, ctx) /
           (qpochhammer(ctx.q(), L - Ls, ctx) * qpochhammer_exp(par.b(0) + 1, L - Ls, ctx));
    for (long k = 1; k <= par.s; ++k) {
        long Lk = l.prefix(k);
        long Lk1 = l.prefix(k - 1);
        acc *= qpochhammer(ctx.q(), l.at(k), ctx) *
               qpochhammer_exp(par.b(k + 1) - par.b(k), l.at(k), ctx) *
               qpochhammer_exp(par.b(k) - par.b(0), Lk + Lk1, ctx) /
               qpochhammer_exp(par.b(k + 1) - par.b(0) - 1, Lk + Lk1, ctx);
        acc *= (ctx.one() - ctx.qpow(par.b(k + 1) - par.b(0) - 1)) /
               (ctx.one() - ctx.qpow(par.b(k + 1) - par.b(0) - 1 + 2 * Lk));
    }
    return acc;
}

}  // namespace qracah

#endif
