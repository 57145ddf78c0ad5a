#pragma once

#include <cmath>
#include <complex>
#include <memory>
#include <numbers>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qgrass/error.hpp"
#include "qgrass/polynomial.hpp"
#include "qgrass/rational.hpp"

namespace qgrass {

class CyclotomicNumber;
class QContext;

namespace detail {

// Shared per-k data: the modulus Phi_k, reduced powers of zeta, and the
// q-combinatorics the radical layer folds into. Immutable once built.
struct CycloTable {
    long k = 0;
    std::size_t phi = 0;
    Poly modulus;                                 // Phi_k, monic
    std::vector<std::vector<Rational>> zeta_row;  // zeta^m reduced, m = 0..k-1
    std::vector<std::vector<Rational>> qnum;      // [n]_q, n = 0..k
    std::vector<std::vector<Rational>> qfact;     // [n]_q!, n = 0..k-1
    bool degenerate = false;                      // some [n]_q = 0, 1 <= n <= k-1

    std::vector<Rational> reduce(const Poly& p) const {
        Poly r = poly_mod(p, modulus);
        r.resize(phi, Rational(0));
        return r;
    }
};

inline std::shared_ptr<const CycloTable> make_cyclo_table(long k) {
    if (k < 2) throw error("QContext: k must be >= 2");
    if (k > 60) throw error("QContext: k larger than the supported bound (60)");
    auto t = std::make_shared<CycloTable>();
    t->k = k;
    t->modulus = cyclotomic_polynomial(k);
    t->phi = static_cast<std::size_t>(poly_degree(t->modulus));

    Poly power{Rational(1)};  // x^m mod Phi_k, iteratively
    for (long m = 0; m < k; ++m) {
        t->zeta_row.push_back(t->reduce(power));
        power.insert(power.begin(), Rational(0));
        power = poly_mod(power, t->modulus);
    }

    auto padded = [&](const std::vector<Rational>& v) {
        Poly p = v;
        poly_trim(p);
        return p;
    };
    for (long n = 0; n <= k; ++n) {
        Poly acc;  // [n]_q = sum_{j=0}^{n-1} zeta^{n-1-2j}
        for (long j = 0; j < n; ++j) {
            long e = ((n - 1 - 2 * j) % k + k) % k;
            acc = poly_add(acc, padded(t->zeta_row[static_cast<std::size_t>(e)]));
        }
        t->qnum.push_back(t->reduce(acc));
    }
    Poly fact{Rational(1)};
    for (long n = 0; n < k; ++n) {
        if (n > 0) fact = poly_mod(poly_mul(fact, padded(t->qnum[static_cast<std::size_t>(n)])), t->modulus);
        t->qfact.push_back(t->reduce(fact));
    }
    for (long n = 1; n < k; ++n) {
        bool zero = true;
        for (const auto& c : t->qnum[static_cast<std::size_t>(n)])
            if (c != 0) zero = false;
        if (zero) t->degenerate = true;
    }
    return t;
}

}  // namespace detail

/// An element of Q(zeta_k), stored reduced modulo Phi_k. The representation is
/// canonical, so structural equality is field equality.
class CyclotomicNumber {
public:
    CyclotomicNumber(std::shared_ptr<const detail::CycloTable> table, std::vector<Rational> coeffs)
        : table_(std::move(table)), c_(std::move(coeffs)) {
        if (c_.size() != table_->phi) throw error("CyclotomicNumber: bad coefficient length");
    }

    long order() const noexcept { return table_->k; }
    const std::vector<Rational>& coeffs() const noexcept { return c_; }
    const std::shared_ptr<const detail::CycloTable>& table() const noexcept { return table_; }

    bool is_zero() const {
        for (const auto& c : c_)
            if (c != 0) return false;
        return true;
    }

    bool is_one() const {
        if (c_.empty() || c_[0] != 1) return false;
        for (std::size_t i = 1; i < c_.size(); ++i)
            if (c_[i] != 0) return false;
        return true;
    }

    /// The rational part if the element lies in Q, otherwise nullopt-like signal via flag.
    bool is_rational() const {
        for (std::size_t i = 1; i < c_.size(); ++i)
            if (c_[i] != 0) return false;
        return true;
    }
    Rational rational_part() const { return c_.empty() ? Rational(0) : c_[0]; }

    friend CyclotomicNumber operator+(const CyclotomicNumber& a, const CyclotomicNumber& b) {
        check_same(a, b);
        std::vector<Rational> r = a.c_;
        for (std::size_t i = 0; i < r.size(); ++i) r[i] += b.c_[i];
        return {a.table_, std::move(r)};
    }

    friend CyclotomicNumber operator-(const CyclotomicNumber& a, const CyclotomicNumber& b) {
        check_same(a, b);
        std::vector<Rational> r = a.c_;
        for (std::size_t i = 0; i < r.size(); ++i) r[i] -= b.c_[i];
        return {a.table_, std::move(r)};
    }

    CyclotomicNumber operator-() const {
        std::vector<Rational> r = c_;
        for (auto& x : r) x = -x;
        return {table_, std::move(r)};
    }

    friend CyclotomicNumber operator*(const CyclotomicNumber& a, const CyclotomicNumber& b) {
        check_same(a, b);
        if (a.is_zero() || b.is_zero())
            return {a.table_, std::vector<Rational>(a.table_->phi, Rational(0))};
        Poly pa = a.c_, pb = b.c_;
        poly_trim(pa);
        poly_trim(pb);
        return {a.table_, a.table_->reduce(poly_mul(pa, pb))};
    }

    friend CyclotomicNumber operator*(const Rational& s, const CyclotomicNumber& a) {
        std::vector<Rational> r = a.c_;
        for (auto& x : r) x *= s;
        return {a.table_, std::move(r)};
    }

    CyclotomicNumber& operator+=(const CyclotomicNumber& b) { return *this = *this + b; }
    CyclotomicNumber& operator-=(const CyclotomicNumber& b) { return *this = *this - b; }
    CyclotomicNumber& operator*=(const CyclotomicNumber& b) { return *this = *this * b; }

    friend bool operator==(const CyclotomicNumber& a, const CyclotomicNumber& b) {
        check_same(a, b);
        return a.c_ == b.c_;
    }
    friend bool operator!=(const CyclotomicNumber& a, const CyclotomicNumber& b) { return !(a == b); }

    /// The automorphism zeta -> zeta^{k-1}, i.e. complex conjugation.
    CyclotomicNumber conjugate() const {
        Poly acc;
        for (std::size_t j = 0; j < c_.size(); ++j) {
            if (c_[j] == 0) continue;
            long e = (table_->k - static_cast<long>(j)) % table_->k;
            Poly row = table_->zeta_row[static_cast<std::size_t>(e)];
            poly_trim(row);
            acc = poly_add(acc, poly_scale(row, c_[j]));
        }
        return {table_, table_->reduce(acc)};
    }

    CyclotomicNumber inverse() const {
        if (is_zero()) throw division_by_zero("CyclotomicNumber: inverse of zero");
        Poly p = c_;
        poly_trim(p);
        auto [g, u] = poly_half_ext_gcd(p, table_->modulus);
        if (poly_degree(g) != 0) throw error("CyclotomicNumber: modulus not coprime");
        const Rational lead = g[0];
        u = poly_scale(u, Rational(1) / lead);
        return {table_, table_->reduce(u)};
    }

    std::complex<double> numeric() const {
        std::complex<double> acc{0.0, 0.0};
        const double step = 2.0 * std::numbers::pi / static_cast<double>(table_->k);
        for (std::size_t j = 0; j < c_.size(); ++j) {
            if (c_[j] == 0) continue;
            const double a = step * static_cast<double>(j);
            acc += to_double(c_[j]) * std::complex<double>{std::cos(a), std::sin(a)};
        }
        return acc;
    }

    /// If the element equals r * zeta^m for a rational r, returns (r, m); the
    /// printer uses this to keep pure phases readable after basis reduction.
    std::optional<std::pair<Rational, long>> as_phase_multiple() const {
        if (is_zero()) return std::pair<Rational, long>{Rational(0), 0};
        for (long m = 0; m < table_->k; ++m) {
            const auto& row = table_->zeta_row[static_cast<std::size_t>(m)];
            std::size_t pivot = row.size();
            for (std::size_t j = 0; j < row.size(); ++j)
                if (row[j] != 0) {
                    pivot = j;
                    break;
                }
            if (pivot == row.size()) continue;
            const Rational r = c_[pivot] / row[pivot];
            if (r == 0) continue;
            bool match = true;
            for (std::size_t j = 0; j < row.size(); ++j)
                if (c_[j] != r * row[j]) {
                    match = false;
                    break;
                }
            if (match) return std::pair<Rational, long>{r, m};
        }
        return std::nullopt;
    }

private:
    static void check_same(const CyclotomicNumber& a, const CyclotomicNumber& b) {
        if (a.table_->k != b.table_->k)
            throw context_mismatch("CyclotomicNumber: mixed orders " + std::to_string(a.table_->k) +
                                   " and " + std::to_string(b.table_->k));
    }

    std::shared_ptr<const detail::CycloTable> table_;
    std::vector<Rational> c_;
};

/// The working context: k, the degeneracy flag, and factories for all exact
/// scalars. Cheap to copy; every value it produces shares the same table.
class QContext {
public:
    explicit QContext(long k) : table_(detail::make_cyclo_table(k)) {}

    long k() const noexcept { return table_->k; }
    std::size_t phi() const noexcept { return table_->phi; }
    bool degenerate() const noexcept { return table_->degenerate; }
    const Poly& modulus() const noexcept { return table_->modulus; }
    const std::shared_ptr<const detail::CycloTable>& table() const noexcept { return table_; }

    CyclotomicNumber zero() const { return {table_, std::vector<Rational>(table_->phi, Rational(0))}; }

    CyclotomicNumber from_rational(const Rational& r) const {
        std::vector<Rational> c(table_->phi, Rational(0));
        c[0] = r;
        return {table_, std::move(c)};
    }

    CyclotomicNumber one() const { return from_rational(Rational(1)); }
    CyclotomicNumber integer(long n) const { return from_rational(Rational(n)); }

    /// zeta^m for any integer m (reduced mod k).
    CyclotomicNumber zeta_pow(long m) const {
        long e = ((m % table_->k) + table_->k) % table_->k;
        return {table_, table_->zeta_row[static_cast<std::size_t>(e)]};
    }

    CyclotomicNumber q() const { return zeta_pow(1); }
    CyclotomicNumber qbar() const { return zeta_pow(-1); }

    /// [n]_q = sum_{j=0}^{n-1} q^{n-1-2j}; real, and equal to
    /// (q^n - q^{-n})/(q - q^{-1}) for k >= 3.
    CyclotomicNumber q_number(long n) const {
        if (n < 0) throw error("q_number: n must be >= 0");
        if (n <= table_->k) return {table_, table_->qnum[static_cast<std::size_t>(n)]};
        CyclotomicNumber acc = zero();
        for (long j = 0; j < n; ++j) acc += zeta_pow(n - 1 - 2 * j);
        return acc;
    }

    CyclotomicNumber q_factorial(long n) const {
        if (n < 0 || n >= table_->k) throw error("q_factorial: n out of range 0..k-1");
        return {table_, table_->qfact[static_cast<std::size_t>(n)]};
    }

    /// {n}_Q = (1 - Q^n)/(1 - Q) with Q = zeta^m. At Q = 1 only n <= 1 is
    /// defined (geometric-sum value n); larger n signals a degenerate parameter.
    CyclotomicNumber box_number(long n, long m) const {
        if (n < 0) throw error("box_number: n must be >= 0");
        const bool q_is_one = ((m % table_->k) + table_->k) % table_->k == 0;
        if (q_is_one) {
            if (n >= 2)
                throw degenerate_parameter("box_number: 1 - Q = 0 with n >= 2 (Q = zeta^" +
                                           std::to_string(m) + ")");
            return integer(n);
        }
        CyclotomicNumber num = one() - zeta_pow(m * n);
        CyclotomicNumber den = one() - zeta_pow(m);
        return num * den.inverse();
    }

    CyclotomicNumber box_factorial(long n, long m) const {
        CyclotomicNumber acc = one();
        for (long j = 1; j <= n; ++j) acc *= box_number(j, m);
        return acc;
    }

    /// Checks [n]_q = [n]_qbar = qbar^{n-1} {n}_{q^2} and
    /// [n]_q! = q^{n(n-1)/2} {n}_{qbar^2}! exactly.
    bool verify_box_identities(long n) const {
        if (n < 0 || n >= table_->k) throw error("verify_box_identities: n out of range 0..k-1");
        if (n >= 2 && table_->k > 2 && table_->k % 2 == 0)
            throw degenerate_parameter(
                "verify_box_identities: requires k odd or k = 2 (got k = " + std::to_string(table_->k) + ")");
        const CyclotomicNumber qn = q_number(n);
        if (qn != qn.conjugate()) return false;
        if (qn != zeta_pow(-(n - 1)) * box_number(n, 2)) return false;
        const CyclotomicNumber qf = q_factorial(n);
        return qf == zeta_pow(n * (n - 1) / 2) * box_factorial(n, -2);
    }

    friend bool operator==(const QContext& a, const QContext& b) { return a.k() == b.k(); }
    friend bool operator!=(const QContext& a, const QContext& b) { return !(a == b); }

private:
    std::shared_ptr<const detail::CycloTable> table_;
};

}  // namespace qgrass
