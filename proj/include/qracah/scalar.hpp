/// Numeric backends and evaluation context.
///
/// Every quantity in the library is a Scalar: either an exact GMP rational
/// or an MPFR float with a fixed decimal precision.  A QContext pins the
/// base q (through p = q^{1/2}), the backend and the tolerances; all
/// evaluation routines take the context explicitly and are pure.
#ifndef QRACAH_SCALAR_HPP
#define QRACAH_SCALAR_HPP

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/mpfr.hpp>

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace qracah {

namespace mp = boost::multiprecision;

using Integer  = mp::number<mp::gmp_int, mp::et_off>;
using Rational = mp::number<mp::gmp_rational, mp::et_off>;
using Real     = mp::number<mp::mpfr_float_backend<0>, mp::et_off>;

enum class Backend { ExactRational, BigFloat };

enum class errc {
    non_integer_exponent_in_exact_mode,
    zero_denominator,
    non_terminating,
    degree_out_of_range,
    out_of_support,
    negative_under_sqrt,
    tail_not_converged,
    dimension_mismatch,
    outside_simplex,
    non_square_in_exact_mode,
    invalid_parameter,
};

inline const char* errc_name(errc k) {
    switch (k) {
        case errc::non_integer_exponent_in_exact_mode: return "NonIntegerExponentInExactMode";
        case errc::zero_denominator: return "ZeroDenominator";
        case errc::non_terminating: return "NonTerminating";
        case errc::degree_out_of_range: return "DegreeOutOfRange";
        case errc::out_of_support: return "OutOfSupport";
        case errc::negative_under_sqrt: return "NegativeUnderSqrt";
        case errc::tail_not_converged: return "TailNotConverged";
        case errc::dimension_mismatch: return "DimensionMismatch";
        case errc::outside_simplex: return "OutsideSimplex";
        case errc::non_square_in_exact_mode: return "NonSquareInExactMode";
        case errc::invalid_parameter: return "InvalidParameter";
    }
    return "UnknownError";
}

class domain_error : public std::runtime_error {
public:
    domain_error(errc kind, const std::string& detail)
        : std::runtime_error(std::string(errc_name(kind)) + ": " + detail), kind_(kind) {}
    errc kind() const noexcept { return kind_; }
    const char* kind_name() const noexcept { return errc_name(kind_); }

private:
    errc kind_;
};

/// Exact rational square root; nullopt when the argument is not a perfect
/// square of a rational.
inline std::optional<Rational> exact_sqrt(const Rational& r) {
    if (r < 0) return std::nullopt;
    Integer num = numerator(r), den = denominator(r);
    if (!mpz_perfect_square_p(num.backend().data()) ||
        !mpz_perfect_square_p(den.backend().data()))
        return std::nullopt;
    return Rational(sqrt(num), sqrt(den));
}

/// Correctly rounded rational -> float conversion at an explicit precision.
/// (boost's converting constructor rounds through a default-precision
/// temporary, silently truncating to ~20 digits.)
inline Real real_from_rational(const Rational& r, unsigned digits10) {
    Real x(0, digits10);
    mpfr_set_q(x.backend().data(), r.backend().data(), MPFR_RNDN);
    return x;
}

/// x^e at the precision of x, computed by a single correctly rounded MPFR
/// call (boost's pow helpers suffer the same truncation).
inline Real real_pow(const Real& x, long e) {
    Real r(0, x.precision());
    mpfr_pow_si(r.backend().data(), x.backend().data(), e, MPFR_RNDN);
    return r;
}

inline Real real_pow(const Real& x, const Real& y) {
    Real r(0, std::max(x.precision(), y.precision()));
    mpfr_pow(r.backend().data(), x.backend().data(), y.backend().data(), MPFR_RNDN);
    return r;
}

inline Rational rational_pow(Rational base, long e) {
    if (e < 0) {
        if (base == 0) throw domain_error(errc::zero_denominator, "0 raised to a negative power");
        base = 1 / base;
        e = -e;
    }
    Rational acc(1);
    while (e > 0) {
        if (e & 1) acc *= base;
        base *= base;
        e >>= 1;
    }
    return acc;
}

/// A number in one of the two backends.  Arithmetic between rationals is
/// exact; anything touching a float is carried out in MPFR at (at least)
/// the larger of the two operand precisions.
class Scalar {
public:
    Scalar() : v_(Rational(0)) {}
    Scalar(int n) : v_(Rational(n)) {}
    Scalar(long n) : v_(Rational(n)) {}
    Scalar(long long n) : v_(Rational(static_cast<long>(n))) {}
    explicit Scalar(Rational r) : v_(std::move(r)) {}
    explicit Scalar(Real x) : v_(std::move(x)) {}

    bool is_rational() const { return std::holds_alternative<Rational>(v_); }
    const Rational& rat() const { return std::get<Rational>(v_); }
    const Real& real() const { return std::get<Real>(v_); }

    unsigned precision() const {
        return is_rational() ? 0u : real().precision();
    }

    Real to_real(unsigned digits10) const {
        if (is_rational()) return real_from_rational(rat(), digits10);
        Real r = real();
        if (r.precision() < digits10) r.precision(digits10);
        return r;
    }

    int sign() const {
        if (is_rational()) return rat().sign();
        if (real() > 0) return 1;
        if (real() < 0) return -1;
        return 0;
    }

    bool exactly_zero() const {
        return is_rational() ? rat() == 0 : real() == 0;
    }

    std::string str() const {
        if (is_rational()) return rat().str();
        return real().str();
    }

    friend Scalar operator+(const Scalar& a, const Scalar& b) { return combine(a, b, Op::Add); }
    friend Scalar operator-(const Scalar& a, const Scalar& b) { return combine(a, b, Op::Sub); }
    friend Scalar operator*(const Scalar& a, const Scalar& b) { return combine(a, b, Op::Mul); }
    friend Scalar operator/(const Scalar& a, const Scalar& b) { return combine(a, b, Op::Div); }

    Scalar& operator+=(const Scalar& o) { *this = *this + o; return *this; }
    Scalar& operator-=(const Scalar& o) { *this = *this - o; return *this; }
    Scalar& operator*=(const Scalar& o) { *this = *this * o; return *this; }
    Scalar& operator/=(const Scalar& o) { *this = *this / o; return *this; }

    Scalar operator-() const {
        if (is_rational()) return Scalar(Rational(-rat()));
        return Scalar(Real(-real()));
    }

    /// Exact comparison; use QContext::is_zero for tolerance-aware tests.
    friend bool operator==(const Scalar& a, const Scalar& b) {
        if (a.is_rational() && b.is_rational()) return a.rat() == b.rat();
        auto [x, y] = to_common(a, b);
        return x == y;
    }
    friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }
    friend bool operator<(const Scalar& a, const Scalar& b) {
        if (a.is_rational() && b.is_rational()) return a.rat() < b.rat();
        auto [x, y] = to_common(a, b);
        return x < y;
    }
    friend bool operator>(const Scalar& a, const Scalar& b) { return b < a; }
    friend bool operator<=(const Scalar& a, const Scalar& b) { return !(b < a); }
    friend bool operator>=(const Scalar& a, const Scalar& b) { return !(a < b); }

    friend Scalar abs(const Scalar& s) {
        if (s.is_rational()) return Scalar(Rational(abs(s.rat())));
        return Scalar(Real(abs(s.real())));
    }

private:
    enum class Op { Add, Sub, Mul, Div };

    static std::pair<Real, Real> to_common(const Scalar& a, const Scalar& b) {
        unsigned d = std::max(std::max(a.precision(), b.precision()), 30u);
        return {a.to_real(d), b.to_real(d)};
    }

    static Scalar combine(const Scalar& a, const Scalar& b, Op op) {
        if (a.is_rational() && b.is_rational()) {
            const Rational &x = a.rat(), &y = b.rat();
            switch (op) {
                case Op::Add: return Scalar(Rational(x + y));
                case Op::Sub: return Scalar(Rational(x - y));
                case Op::Mul: return Scalar(Rational(x * y));
                case Op::Div:
                    if (y == 0) throw domain_error(errc::zero_denominator, "rational division by zero");
                    return Scalar(Rational(x / y));
            }
        }
        auto [x, y] = to_common(a, b);
        switch (op) {
            case Op::Add: return Scalar(Real(x + y));
            case Op::Sub: return Scalar(Real(x - y));
            case Op::Mul: return Scalar(Real(x * y));
            case Op::Div:
                if (y == 0) throw domain_error(errc::zero_denominator, "float division by zero");
                return Scalar(Real(x / y));
        }
        return Scalar();  // unreachable
    }

    std::variant<Rational, Real> v_;
};

inline Scalar pow(const Scalar& base, long e) {
    if (base.is_rational()) return Scalar(rational_pow(base.rat(), e));
    return Scalar(real_pow(base.real(), e));
}

/// Immutable evaluation context.
///
/// Internally everything is phrased in p = q^{1/2}: the formulas carry
/// half-integer powers of q, which are integer powers of p.  An exact
/// context constructed from a rational q only supports those half powers
/// when q is the square of a rational; construct from p to get all of them.
class QContext {
public:
    static QContext exact_from_p(const Rational& p) {
        check_range(p);
        QContext c;
        c.backend_ = Backend::ExactRational;
        c.p_exact_ = p;
        c.q_rat_ = p * p;
        c.q_ = Scalar(c.q_rat_);
        return c;
    }

    static QContext exact_from_q(const Rational& q) {
        check_range(q);
        QContext c;
        c.backend_ = Backend::ExactRational;
        c.q_rat_ = q;
        c.q_ = Scalar(q);
        c.p_exact_ = exact_sqrt(q);  // may be absent
        return c;
    }

    static QContext bigfloat(const Rational& q, unsigned digits10 = 60) {
        check_range(q);
        if (digits10 < 30)
            throw domain_error(errc::invalid_parameter, "precision must be at least 30 digits");
        QContext c;
        c.backend_ = Backend::BigFloat;
        c.digits_ = digits10;
        c.q_rat_ = q;
        c.q_ = Scalar(real_from_rational(q, digits10));
        c.p_float_ = mp::sqrt(real_from_rational(q, digits10));
        c.p_exact_ = exact_sqrt(q);
        return c;
    }

    /// Exact when every exponent parameter is an integer, BigFloat
    /// otherwise; the downgraded flag records a refused exact request.
    static QContext make_auto(const Rational& q, const std::vector<Rational>& exponents,
                              unsigned digits10 = 60) {
        bool all_int = true;
        for (const auto& e : exponents)
            if (denominator(e) != 1) all_int = false;
        if (all_int) return exact_from_q(q);
        QContext c = bigfloat(q, digits10);
        c.downgraded_ = true;
        return c;
    }

    bool downgraded() const { return downgraded_; }

    Backend backend() const { return backend_; }
    bool exact() const { return backend_ == Backend::ExactRational; }
    unsigned digits() const { return digits_; }
    const Scalar& q() const { return q_; }
    const Rational& q_rational() const { return q_rat_; }
    bool has_half_powers() const {
        return backend_ == Backend::BigFloat || p_exact_.has_value();
    }

    Scalar p() const {
        if (backend_ == Backend::BigFloat) return Scalar(p_float_);
        if (!p_exact_)
            throw domain_error(errc::non_integer_exponent_in_exact_mode,
                               "q is not a rational square; p unavailable in exact mode");
        return Scalar(*p_exact_);
    }

    /// q^e for rational e.  Exact mode requires 2e to be an integer, that
    /// is q^e = p^{2e} with an integer p-exponent.
    Scalar qpow(const Rational& e) const {
        Rational twice = 2 * e;
        if (denominator(twice) == 1) {
            long t = static_cast<long>(numerator(twice));
            if (t % 2 == 0) {
                if (backend_ == Backend::ExactRational)
                    return Scalar(rational_pow(q_rat_, t / 2));
                return Scalar(real_pow(q_.real(), t / 2));
            }
            // odd p-exponent
            if (backend_ == Backend::ExactRational) {
                if (!p_exact_)
                    throw domain_error(errc::non_integer_exponent_in_exact_mode,
                                       "q^(" + e.str() + ") needs p, but q is not a rational square");
                return Scalar(rational_pow(*p_exact_, t));
            }
            return Scalar(real_pow(p_float_, t));
        }
        if (backend_ == Backend::ExactRational)
            throw domain_error(errc::non_integer_exponent_in_exact_mode,
                               "q^(" + e.str() + ") is not a Laurent monomial in p");
        return Scalar(real_pow(q_.real(), real_from_rational(e, digits_)));
    }

    Scalar qpow(long e) const { return qpow(Rational(e)); }

    Scalar one() const { return Scalar(Rational(1)); }
    Scalar integer(long n) const { return Scalar(Rational(n)); }
    Scalar rational(const Rational& r) const { return Scalar(r); }

    Real to_real(const Scalar& s) const { return s.to_real(digits_); }

    /// Tolerance for zero-detection in float mode: 10^{-(D-10)}.
    Rational zero_epsilon() const {
        return rational_pow(Rational(10), -(static_cast<long>(digits_) - 10));
    }

    /// Residual tolerance for verification reports (10^{-(D-20)}; 1e-40 at
    /// the default 60 digits).
    Rational tolerance() const {
        return rational_pow(Rational(10), -(static_cast<long>(digits_) - 20));
    }

    bool is_zero(const Scalar& s) const {
        if (s.is_rational()) return s.rat() == 0;
        return abs(s.real()) < real_from_rational(zero_epsilon(), digits_);
    }

    bool is_positive(const Scalar& s) const { return !is_zero(s) && s.sign() > 0; }

    Scalar sqrt(const Scalar& s) const {
        if (s.sign() < 0)
            throw domain_error(errc::negative_under_sqrt, "sqrt of " + s.str());
        if (backend_ == Backend::ExactRational) {
            if (!s.is_rational())
                throw domain_error(errc::non_square_in_exact_mode, "float value in exact context");
            auto r = exact_sqrt(s.rat());
            if (!r)
                throw domain_error(errc::non_square_in_exact_mode,
                                   "sqrt(" + s.str() + ") is irrational; use a BigFloat context");
            return Scalar(*r);
        }
        return Scalar(Real(mp::sqrt(s.to_real(digits_))));
    }

    /// sqrt(num/den) with the positive-cone validation shared by all the
    /// hatted families: num must be >= 0 and den > 0.
    Scalar sqrt_ratio(const Scalar& num, const Scalar& den) const {
        if (num.sign() < 0)
            throw domain_error(errc::negative_under_sqrt, "weight " + num.str() + " is negative");
        if (den.sign() <= 0)
            throw domain_error(errc::negative_under_sqrt, "norm " + den.str() + " is not positive");
        return sqrt(num / den);
    }

private:
    static void check_range(const Rational& v) {
        if (!(v > 0 && v < 1))
            throw domain_error(errc::invalid_parameter, "base must lie in (0,1), got " + v.str());
    }

    Backend backend_ = Backend::ExactRational;
    unsigned digits_ = 60;
    bool downgraded_ = false;
    Rational q_rat_;
    Scalar q_;
    std::optional<Rational> p_exact_;
    Real p_float_;
};

}  // namespace qracah

#endif
