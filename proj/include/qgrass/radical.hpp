#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <utility>

#include "qgrass/cyclotomic.hpp"
#include "qgrass/error.hpp"

namespace qgrass {

/// A cyclotomic body times a square-free monomial in the formal radicals
/// r_n = sqrt([n]_q), n = 2..k-1. Squares fold into the body (r_n^2 = [n]_q)
/// and r_1 folds to 1 outright since [1]_q = 1. Dagger fixes every r_n and
/// conjugates the body.
class RadicalScalar {
public:
    /* implicit */ RadicalScalar(CyclotomicNumber body) : body_(std::move(body)), rad_(0) {}

    RadicalScalar(CyclotomicNumber body, std::uint64_t radicals)
        : body_(std::move(body)), rad_(radicals) {
        const long k = body_.order();
        if (k < 64 && (rad_ >> (k - 1)) != 0)
            throw error("RadicalScalar: radical index out of range 1..k-1");
        normalize();
    }

    static RadicalScalar radical(const QContext& ctx, long n) {
        if (n < 1 || n >= ctx.k()) throw error("RadicalScalar: r_n needs 1 <= n <= k-1");
        return {ctx.one(), std::uint64_t{1} << (n - 1)};
    }

    const CyclotomicNumber& body() const noexcept { return body_; }
    std::uint64_t radical_bits() const noexcept { return rad_; }
    long order() const noexcept { return body_.order(); }

    bool is_zero() const { return body_.is_zero(); }
    bool is_one() const { return rad_ == 0 && body_.is_one(); }

    friend RadicalScalar operator*(const RadicalScalar& a, const RadicalScalar& b) {
        CyclotomicNumber body = a.body_ * b.body_;
        const std::uint64_t common = a.rad_ & b.rad_;
        for (long n = 1; n < a.order(); ++n)
            if (common & (std::uint64_t{1} << (n - 1))) body *= q_number_of(a.body_, n);
        return {std::move(body), a.rad_ ^ b.rad_};
    }

    friend RadicalScalar operator*(const CyclotomicNumber& s, const RadicalScalar& a) {
        return {s * a.body_, a.rad_};
    }

    friend RadicalScalar operator*(const Rational& s, const RadicalScalar& a) {
        return {s * a.body_, a.rad_};
    }

    friend RadicalScalar operator+(const RadicalScalar& a, const RadicalScalar& b) {
        if (a.is_zero()) return b;
        if (b.is_zero()) return a;
        if (a.rad_ != b.rad_)
            throw incompatible_radicals("RadicalScalar: sum of distinct radical monomials (masks " +
                                        std::to_string(a.rad_) + " and " + std::to_string(b.rad_) + ")");
        return {a.body_ + b.body_, a.rad_};
    }

    friend RadicalScalar operator-(const RadicalScalar& a, const RadicalScalar& b) { return a + (-b); }

    RadicalScalar operator-() const { return {-body_, rad_}; }

    RadicalScalar& operator+=(const RadicalScalar& b) { return *this = *this + b; }
    RadicalScalar& operator-=(const RadicalScalar& b) { return *this = *this - b; }
    RadicalScalar& operator*=(const RadicalScalar& b) { return *this = *this * b; }

    friend bool operator==(const RadicalScalar& a, const RadicalScalar& b) {
        return a.rad_ == b.rad_ && a.body_ == b.body_;
    }
    friend bool operator!=(const RadicalScalar& a, const RadicalScalar& b) { return !(a == b); }

    /// Formal adjoint: conjugates the body, fixes every r_n.
    RadicalScalar dagger() const { return {body_.conjugate(), rad_}; }

    RadicalScalar inverse() const {
        if (is_zero()) throw division_by_zero("RadicalScalar: inverse of zero");
        CyclotomicNumber den = body_;
        for (long n = 1; n < order(); ++n) {
            if (!(rad_ & (std::uint64_t{1} << (n - 1)))) continue;
            const CyclotomicNumber qn = q_number_of(body_, n);
            if (qn.is_zero())
                throw degenerate_parameter("RadicalScalar: cannot invert r_" + std::to_string(n) +
                                           ", [" + std::to_string(n) + "]_q = 0");
            den *= qn;
        }
        return {den.inverse(), rad_};
    }

    /// Numeric embedding: zeta -> e^{2 pi i / k}, r_n -> principal square root
    /// of the real number [n]_q (i * sqrt(|[n]_q|) when negative).
    std::complex<double> numeric() const {
        std::complex<double> acc = body_.numeric();
        for (long n = 1; n < order(); ++n) {
            if (!(rad_ & (std::uint64_t{1} << (n - 1)))) continue;
            const double x = q_number_of(body_, n).numeric().real();
            acc *= (x >= 0.0) ? std::complex<double>{std::sqrt(x), 0.0}
                              : std::complex<double>{0.0, std::sqrt(-x)};
        }
        return acc;
    }

private:
    static CyclotomicNumber q_number_of(const CyclotomicNumber& like, long n) {
        return {like.table(), like.table()->qnum[static_cast<std::size_t>(n)]};
    }

    void normalize() {
        rad_ &= ~std::uint64_t{1};  // r_1 = sqrt([1]_q) = 1
        if (body_.is_zero()) rad_ = 0;
    }

    CyclotomicNumber body_;
    std::uint64_t rad_;
};

/// 1/sqrt([n]_q!) as a RadicalScalar: the radical monomial r_1...r_n with the
/// inverted factorial body. Signals degenerate_parameter at even k >= 4 once
/// n reaches k/2.
inline RadicalScalar inv_sqrt_q_factorial(const QContext& ctx, long n) {
    std::uint64_t mask = 0;
    for (long j = 1; j <= n; ++j) mask |= std::uint64_t{1} << (j - 1);
    return RadicalScalar(ctx.one(), mask).inverse();
}

/// sqrt([n]_q!) = r_1 ... r_n.
inline RadicalScalar sqrt_q_factorial(const QContext& ctx, long n) {
    std::uint64_t mask = 0;
    for (long j = 1; j <= n; ++j) mask |= std::uint64_t{1} << (j - 1);
    return {ctx.one(), mask};
}

}  // namespace qgrass
