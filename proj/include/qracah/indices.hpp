/// Multi-indices, exponent parameter vectors and lattice enumeration.
#ifndef QRACAH_INDICES_HPP
#define QRACAH_INDICES_HPP

#include <initializer_list>
#include <numeric>
#include <vector>

#include "qracah/scalar.hpp"

namespace qracah {

/// Tuple of non-negative integers (degrees or lattice points) with the
/// prefix-sum accessors the nested product formulas are written in.
class MultiIndex {
public:
    MultiIndex() = default;
    explicit MultiIndex(std::vector<long> v) : v_(std::move(v)) {}
    MultiIndex(std::initializer_list<long> v) : v_(v) {}

    long size() const { return static_cast<long>(v_.size()); }
    long operator[](long i) const { return v_[static_cast<size_t>(i)]; }  // 0-based
    long& operator[](long i) { return v_[static_cast<size_t>(i)]; }
    const std::vector<long>& values() const { return v_; }

    /// at(k) = k-th entry in the 1-based convention of the formulas.
    long at(long k) const { return v_[static_cast<size_t>(k - 1)]; }

    /// prefix(k) = sum of entries 1..k (1-based); prefix(0) = 0.
    long prefix(long k) const {
        long s = 0;
        for (long i = 1; i <= k; ++i) s += at(i);
        return s;
    }

    /// tilde(k) = sum of entries 2..k; tilde(k<2) = 0.
    long tilde(long k) const {
        long s = 0;
        for (long i = 2; i <= k; ++i) s += at(i);
        return s;
    }

    long total() const { return prefix(size()); }

    bool nonnegative() const {
        for (long x : v_)
            if (x < 0) return false;
        return true;
    }

    friend bool operator==(const MultiIndex& a, const MultiIndex& b) { return a.v_ == b.v_; }
    friend bool operator!=(const MultiIndex& a, const MultiIndex& b) { return !(a == b); }
    friend bool operator<(const MultiIndex& a, const MultiIndex& b) { return a.v_ < b.v_; }

private:
    std::vector<long> v_;
};

/// All y in N_0^d with y_1 + ... + y_d = total, in lexicographic order.
/// The count is binom(total + d - 1, d - 1).
inline std::vector<MultiIndex> enumerate_slice(long d, long total) {
    if (d < 1 || total < 0)
        throw domain_error(errc::invalid_parameter, "enumerate_slice needs d >= 1, total >= 0");
    std::vector<MultiIndex> out;
    std::vector<long> cur(static_cast<size_t>(d), 0);
    auto rec = [&](auto&& self, long pos, long remaining) -> void {
        if (pos == d - 1) {
            cur[static_cast<size_t>(pos)] = remaining;
            out.emplace_back(cur);
            return;
        }
        for (long v = 0; v <= remaining; ++v) {
            cur[static_cast<size_t>(pos)] = v;
            self(self, pos + 1, remaining - v);
        }
    };
    rec(rec, 0, total);
    return out;
}

/// All y in N_0^s with 0 <= y_1 <= y_2 <= ... <= y_s <= M.
inline std::vector<MultiIndex> enumerate_simplex(long s, long M) {
    if (s < 1 || M < 0)
        throw domain_error(errc::invalid_parameter, "enumerate_simplex needs s >= 1, M >= 0");
    std::vector<MultiIndex> out;
    std::vector<long> cur(static_cast<size_t>(s), 0);
    auto rec = [&](auto&& self, long pos, long lo) -> void {
        if (pos == s) {
            out.emplace_back(cur);
            return;
        }
        for (long v = lo; v <= M; ++v) {
            cur[static_cast<size_t>(pos)] = v;
            self(self, pos + 1, v);
        }
    };
    rec(rec, 0, 0);
    return out;
}

inline Integer binomial(long n, long k) {
    if (k < 0 || k > n) return Integer(0);
    Integer r(1);
    for (long j = 1; j <= k; ++j) {
        r *= Integer(n - k + j);
        r /= Integer(j);
    }
    return r;
}

/// The d exponent parameters alpha_1..alpha_d with partial sums
/// A_k = alpha_1 + ... + alpha_k and Atilde_k = alpha_2 + ... + alpha_k.
class ParamVector {
public:
    explicit ParamVector(std::vector<Rational> alpha) : alpha_(std::move(alpha)) {
        if (alpha_.size() < 2)
            throw domain_error(errc::invalid_parameter, "need at least two exponent parameters");
        for (const auto& a : alpha_)
            if (!(a > 0))
                throw domain_error(errc::invalid_parameter, "exponent parameters must be positive");
    }
    ParamVector(std::initializer_list<long> ints) {
        for (long v : ints) alpha_.emplace_back(v);
        if (alpha_.size() < 2)
            throw domain_error(errc::invalid_parameter, "need at least two exponent parameters");
        for (const auto& a : alpha_)
            if (!(a > 0))
                throw domain_error(errc::invalid_parameter, "exponent parameters must be positive");
    }

    long d() const { return static_cast<long>(alpha_.size()); }
    const Rational& alpha(long k) const { return alpha_[static_cast<size_t>(k - 1)]; }  // 1-based
    const std::vector<Rational>& values() const { return alpha_; }

    Rational A(long k) const {
        Rational s(0);
        for (long i = 1; i <= k; ++i) s += alpha(i);
        return s;
    }
    Rational Atilde(long k) const {
        Rational s(0);
        for (long i = 2; i <= k; ++i) s += alpha(i);
        return s;
    }

    bool all_integer() const {
        for (const auto& a : alpha_)
            if (denominator(a) != 1) return false;
        return true;
    }

private:
    std::vector<Rational> alpha_;
};

}  // namespace qracah

#endif
