/// Connection coefficients between the two nested bases, computed three
/// independent ways, with their orthogonality and the duality involution.
///
/// The oracle hierarchy is fixed: r_sum (the direct inner product on a
/// slice) is ground truth; r_product (closed-form product of univariate
/// q-Racah factors) and r_via_gr (multivariate q-Racah bridge) are the
/// implementations under test.  Signs are implemented literally; a global
/// phase mismatch is a failure, not a normalization choice.
#ifndef QRACAH_COUPLING_HPP
#define QRACAH_COUPLING_HPP

#include <vector>

#include "qracah/multivar.hpp"

namespace qracah {

struct CouplingSpec {
    ParamVector par;
    MultiIndex m;
    MultiIndex n;

    CouplingSpec(ParamVector p, MultiIndex m_, MultiIndex n_)
        : par(std::move(p)), m(std::move(m_)), n(std::move(n_)) {
        if (m.size() != par.d() || n.size() != par.d())
            throw domain_error(errc::dimension_mismatch, "coupling spec needs d-component indices");
        if (!m.nonnegative() || !n.nonnegative())
            throw domain_error(errc::invalid_parameter, "degrees must be non-negative");
    }

    long d() const { return par.d(); }
    bool on_shell() const {
        return m.total() == n.total() && m.prefix(d() - 1) == n.prefix(d() - 1);
    }
};

/// Closed form: delta_{m_d n_d} delta_{M_{d-1} N_{d-1}} prod_{k=1}^{d-2}
/// (-1)^{m_k} rhat_{m_k}(N_k - M_{k-1}; 2M_{k-1}+Atil_{k+1}+k-1,
/// alpha_{k+2}, N_{k+1}+M_{k-1}+A_{k+1}+k, N_{k+1}-M_{k-1}).
inline Scalar r_product(const CouplingSpec& spec, const QContext& ctx) {
    const long d = spec.d();
    if (!spec.on_shell()) return ctx.integer(0);
    Scalar acc = ctx.one();
    for (long k = 1; k <= d - 2; ++k) {
        long Mk1 = spec.m.prefix(k - 1);
        long Narg = spec.n.prefix(k + 1) - Mk1;
        if (Narg < 0) return ctx.integer(0);
        RacahParams rp(2 * Mk1 + spec.par.Atilde(k + 1) + k - 1, spec.par.alpha(k + 2),
                       spec.n.prefix(k + 1) + Mk1 + spec.par.A(k + 1) + k, Narg);
        acc *= pow(-ctx.one(), spec.m.at(k)) *
               racah_hat_or_zero(spec.m.at(k), spec.n.prefix(k) - Mk1, rp, ctx);
        if (acc.exactly_zero()) return ctx.integer(0);
    }
    return acc;
}

/// Ground truth: sum over the slice Y_d = M of Xi_m(y) Psi_n(y).
inline Scalar r_sum(const CouplingSpec& spec, const QContext& ctx) {
    if (spec.m.total() != spec.n.total()) return ctx.integer(0);
    Scalar acc = ctx.integer(0);
    for (const auto& y : enumerate_slice(spec.d(), spec.m.total()))
        acc += xi(spec.m, y, spec.par, ctx) * psi(spec.n, y, spec.par, ctx);
    return acc;
}

/// Parameter bridge into the multivariate q-Racah polynomials:
/// s = d-2, l_i = m_i, y_i = N_i, beta_k = A_{k+1}+k, M = N_{d-1}.
inline GRRacahParams coupling_gr_params(const ParamVector& par, long level) {
    const long d = par.d();
    std::vector<Rational> beta;
    for (long k = 0; k <= d - 1; ++k) beta.push_back(par.A(k + 1) + k);
    return GRRacahParams(d - 2, std::move(beta), level);
}

/// Bridge evaluation: delta delta (-1)^{M_{d-2}} sqrt(chi(y)/Upsilon_l)
/// Z_l(y) under the substitution above.
inline Scalar r_via_gr(const CouplingSpec& spec, const QContext& ctx) {
    const long d = spec.d();
    if (d < 3) throw domain_error(errc::invalid_parameter, "bridge needs d >= 3");
    if (!spec.on_shell()) return ctx.integer(0);
    GRRacahParams gp = coupling_gr_params(spec.par, spec.n.prefix(d - 1));
    std::vector<long> l, y;
    for (long i = 1; i <= d - 2; ++i) l.push_back(spec.m.at(i));
    for (long i = 1; i <= d - 2; ++i) y.push_back(spec.n.prefix(i));
    MultiIndex li(l), yi(y);
    if (li.total() > gp.M) return ctx.integer(0);
    Scalar z = gr_racah_Z(li, yi, gp, ctx);
    Scalar ratio = gr_weight_chi(yi, gp, ctx) / gr_norm_upsilon(li, gp, ctx);
    return pow(-ctx.one(), spec.m.prefix(d - 2)) * ctx.sqrt(ratio) * z;
}

/// All degree tuples on the block N_{d-1} = P, N_d = M (compositions of P
/// into d-1 parts, last entry fixed to M - P).
inline std::vector<MultiIndex> onshell_degrees(long d, long P, long M) {
    if (P < 0 || M < P)
        throw domain_error(errc::invalid_parameter, "need 0 <= P <= M");
    std::vector<MultiIndex> out;
    for (const auto& head : enumerate_slice(d - 1, P)) {
        std::vector<long> v = head.values();
        v.push_back(M - P);
        out.emplace_back(v);
    }
    return out;
}

struct ExpansionReport {
    Real max_function_residual;    // Xi = sum R Psi, pointwise on the slice
    Real max_polynomial_residual;  // G/sqrt(Omega) = sum R H/sqrt(Lambda)
    Real max_ortho_row;            // R R^T = I on each on-shell block
    Real max_ortho_col;            // R^T R = I
    bool pass(const Real& tol) const {
        return max_function_residual < tol && max_polynomial_residual < tol &&
               max_ortho_row < tol && max_ortho_col < tol;
    }
};

/// Reconstructs every Xi_m on the slice Y_d = M from the closed-form
/// coefficients and the Psi basis, checks the normalized polynomial form of
/// the same expansion, and checks both orthogonality directions of the
/// coefficient matrix on every on-shell block.
inline ExpansionReport verify_expansion(const ParamVector& par, long M, const QContext& ctx) {
    const long d = par.d();
    const unsigned dig = ctx.digits();
    ExpansionReport rep{Real(0, dig), Real(0, dig), Real(0, dig), Real(0, dig)};
    auto slice = enumerate_slice(d, M);

    for (const auto& m : slice) {
        const long P = m.prefix(d - 1);
        auto degrees = onshell_degrees(d, P, M);
        // coefficient row for this m
        std::vector<Scalar> row;
        row.reserve(degrees.size());
        for (const auto& n : degrees) row.push_back(r_product(CouplingSpec(par, m, n), ctx));

        for (const auto& y : slice) {
            Scalar viaSum = ctx.integer(0);
            for (size_t j = 0; j < degrees.size(); ++j)
                viaSum += row[j] * psi(degrees[j], y, par, ctx);
            Scalar resid = xi(m, y, par, ctx) - viaSum;
            rep.max_function_residual =
                std::max(rep.max_function_residual, abs(resid.to_real(dig)));

            Scalar lhsPoly = hahn_G(m, y, par, ctx) / ctx.sqrt(norm_omega(m, par, ctx));
            Scalar rhsPoly = ctx.integer(0);
            for (size_t j = 0; j < degrees.size(); ++j)
                rhsPoly += row[j] * hahn_H(degrees[j], y, par, ctx) /
                           ctx.sqrt(norm_lambda(degrees[j], par, ctx));
            rep.max_polynomial_residual =
                std::max(rep.max_polynomial_residual, abs((lhsPoly - rhsPoly).to_real(dig)));
        }
    }

    // orthogonality of each on-shell block
    for (long P = 0; P <= M; ++P) {
        auto degrees = onshell_degrees(d, P, M);
        const size_t B = degrees.size();
        std::vector<std::vector<Scalar>> R(B, std::vector<Scalar>(B, ctx.integer(0)));
        for (size_t i = 0; i < B; ++i)
            for (size_t j = 0; j < B; ++j)
                R[i][j] = r_product(CouplingSpec(par, degrees[i], degrees[j]), ctx);
        for (size_t i = 0; i < B; ++i)
            for (size_t j = 0; j < B; ++j) {
                Scalar row = ctx.integer(0), col = ctx.integer(0);
                for (size_t k = 0; k < B; ++k) {
                    row += R[i][k] * R[j][k];
                    col += R[k][i] * R[k][j];
                }
                Scalar expect = ctx.integer(i == j ? 1 : 0);
                rep.max_ortho_row = std::max(rep.max_ortho_row, abs((row - expect).to_real(dig)));
                rep.max_ortho_col = std::max(rep.max_ortho_col, abs((col - expect).to_real(dig)));
            }
    }
    return rep;
}

// ---------------------------------------------------------------------------
// duality involution
// ---------------------------------------------------------------------------

struct DualitySpec {
    long s = 1;
    long M = 0;
    std::vector<Rational> beta;  // beta_0 .. beta_{s+1}
    MultiIndex l;                // degrees, L_s <= M
    MultiIndex y;                // point in the simplex W_M

    GRRacahParams params() const { return GRRacahParams(s, beta, M); }

    void validate() const {
        if (static_cast<long>(beta.size()) != s + 2 || l.size() != s || y.size() != s)
            throw domain_error(errc::dimension_mismatch, "duality spec sizes are inconsistent");
        if (l.total() > M)
            throw domain_error(errc::invalid_parameter, "total degree exceeds the level");
        gr_check_point(y, params());
    }
};

/// The dual tuple: indices from consecutive point differences, points from
/// degree partial sums, and reflected parameters.  Exact rational
/// arithmetic throughout; applying the map twice gives back the input.
inline DualitySpec dual_map(const DualitySpec& in) {
    in.validate();
    const long s = in.s, M = in.M;
    auto y_at = [&](long k) { return k == 0 ? 0L : (k == s + 1 ? M : in.y.at(k)); };
    DualitySpec out;
    out.s = s;
    out.M = M;
    std::vector<long> lt, yt;
    for (long j = 1; j <= s; ++j) lt.push_back(y_at(s + 2 - j) - y_at(s + 1 - j));
    for (long j = 1; j <= s; ++j) yt.push_back(M - in.l.prefix(s + 1 - j));
    out.l = MultiIndex(lt);
    out.y = MultiIndex(yt);
    out.beta.push_back(in.beta[0]);
    for (long j = 1; j <= s + 1; ++j)
        out.beta.push_back(in.beta[0] - in.beta[static_cast<size_t>(s + 2 - j)] - 2 * M + 1);
    return out;
}

struct DualityReport {
    bool involution_ok = false;
    Real polduality_residual;
    Real dident_residual;
    Real dualorth_residual;
    bool pass(const Real& tol) const {
        return involution_ok && polduality_residual < tol && dident_residual < tol &&
               dualorth_residual < tol;
    }
};

namespace detail {

/// Normalizing denominator of the self-dual form:
/// q^{M L_s} (q^{-M};q)_{L_s} (q^{-M-beta_0};q)_{L_s}
/// prod_j q^{l_j beta_j / 2} (q^{beta_{j+1}-beta_j};q)_{l_j}.
inline Scalar duality_denominator(const DualitySpec& sp, const QContext& ctx) {
    const long Ls = sp.l.total();
    Scalar acc = ctx.qpow(Rational(sp.M * Ls));
    acc *= qpochhammer_exp(Rational(-sp.M), Ls, ctx);
    acc *= qpochhammer_exp(-Rational(sp.M) - sp.beta[0], Ls, ctx);
    for (long j = 1; j <= sp.s; ++j) {
        acc *= ctx.qpow(sp.beta[static_cast<size_t>(j)] * sp.l.at(j) / 2);
        acc *= qpochhammer_exp(
            sp.beta[static_cast<size_t>(j + 1)] - sp.beta[static_cast<size_t>(j)], sp.l.at(j),
            ctx);
    }
    return acc;
}

}  // namespace detail

/// Checks the three duality statements for one spec: the normalized-ratio
/// identity of the polynomials, the weight/norm identity binding both sides,
/// and the equality of the orthonormalized values.  Residuals are relative.
inline DualityReport verify_duality(const DualitySpec& sp, const QContext& ctx) {
    sp.validate();
    const unsigned dig = ctx.digits();
    DualityReport rep{false, Real(0, dig), Real(0, dig), Real(0, dig)};

    DualitySpec dual = dual_map(sp);
    DualitySpec back = dual_map(dual);
    rep.involution_ok = back.l == sp.l && back.y == sp.y && back.beta == sp.beta &&
                        back.M == sp.M && back.s == sp.s;

    GRRacahParams P = sp.params(), Pd = dual.params();

    Scalar z = gr_racah_Z(sp.l, sp.y, P, ctx);
    Scalar zd = gr_racah_Z(dual.l, dual.y, Pd, ctx);
    Scalar D = detail::duality_denominator(sp, ctx);
    Scalar Dd = detail::duality_denominator(dual, ctx);

    Scalar lhs = z / D, rhs = zd / Dd;
    Real scale = std::max(Real(1, dig), abs(lhs.to_real(dig)));
    rep.polduality_residual = abs((lhs - rhs).to_real(dig)) / scale;

    Scalar ups = gr_norm_upsilon(sp.l, P, ctx);
    Scalar chid = gr_weight_chi(dual.y, Pd, ctx);
    Scalar identLhs = ups * chid / (D * D);
    const Rational &b0 = sp.beta[0], &bs = sp.beta[static_cast<size_t>(sp.s)];
    const Rational& btil_s = dual.beta[static_cast<size_t>(sp.s)];
    Scalar identRhs = ctx.qpow(-Rational(sp.M) * (bs + btil_s - b0 + sp.M));
    identRhs *= qpochhammer_exp(sp.beta[static_cast<size_t>(sp.s + 1)], 2 * sp.M, ctx) *
                qpochhammer_exp(dual.beta[static_cast<size_t>(sp.s + 1)], 2 * sp.M, ctx);
    Scalar denom = qpochhammer(ctx.q(), sp.M, ctx) * qpochhammer_exp(b0 + 1, sp.M, ctx);
    identRhs /= denom * denom;
    Real iscale = std::max(Real(1, dig), abs(identLhs.to_real(dig)));
    rep.dident_residual = abs((identLhs - identRhs).to_real(dig)) / iscale;

    Scalar hat = ctx.sqrt(gr_weight_chi(sp.y, P, ctx) / ups) * z;
    Scalar hatd = ctx.sqrt(chid / gr_norm_upsilon(dual.l, Pd, ctx)) * zd;
    Real hscale = std::max(Real(1, dig), abs(hat.to_real(dig)));
    rep.dualorth_residual = abs((hat - hatd).to_real(dig)) / hscale;

    return rep;
}

}  // namespace qracah

#endif
