#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "qgrass/error.hpp"
#include "qgrass/rational.hpp"

namespace qgrass {

// Dense univariate polynomials over Rational, ascending degree, no trailing zeros.
// This is internal machinery for the cyclotomic field; only cyclotomic_polynomial()
// is part of the public surface.
using Poly = std::vector<Rational>;

inline void poly_trim(Poly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

inline int poly_degree(const Poly& p) { return static_cast<int>(p.size()) - 1; }

inline bool poly_is_zero(const Poly& p) { return p.empty(); }

inline Poly poly_add(const Poly& a, const Poly& b) {
    Poly r(std::max(a.size(), b.size()), Rational(0));
    for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
    poly_trim(r);
    return r;
}

inline Poly poly_sub(const Poly& a, const Poly& b) {
    Poly r(std::max(a.size(), b.size()), Rational(0));
    for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
    poly_trim(r);
    return r;
}

inline Poly poly_mul(const Poly& a, const Poly& b) {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1, Rational(0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    poly_trim(r);
    return r;
}

inline Poly poly_scale(const Poly& a, const Rational& s) {
    if (s == 0) return {};
    Poly r = a;
    for (auto& c : r) c *= s;
    return r;
}

/// Euclidean division; the divisor must be nonzero.
inline std::pair<Poly, Poly> poly_divmod(const Poly& a, const Poly& b) {
    if (poly_is_zero(b)) throw division_by_zero("polynomial division by zero");
    Poly rem = a;
    Poly quot;
    const int db = poly_degree(b);
    if (poly_degree(rem) >= db) quot.assign(rem.size() - b.size() + 1, Rational(0));
    while (poly_degree(rem) >= db) {
        const int d = poly_degree(rem) - db;
        const Rational c = rem.back() / b.back();
        quot[static_cast<std::size_t>(d)] = c;
        for (std::size_t i = 0; i < b.size(); ++i) rem[i + static_cast<std::size_t>(d)] -= c * b[i];
        poly_trim(rem);
    }
    poly_trim(quot);
    return {quot, rem};
}

inline Poly poly_mod(const Poly& a, const Poly& b) { return poly_divmod(a, b).second; }

/// Extended Euclid: returns (g, u) with u*a = g (mod b) and g the monic gcd.
/// Used to invert nonzero elements modulo an irreducible modulus.
inline std::pair<Poly, Poly> poly_half_ext_gcd(Poly a, Poly b) {
    Poly u0{Rational(1)};
    Poly u1{};
    while (!poly_is_zero(b)) {
        auto [q, r] = poly_divmod(a, b);
        a = std::move(b);
        b = std::move(r);
        Poly next = poly_sub(u0, poly_mul(q, u1));
        u0 = std::move(u1);
        u1 = std::move(next);
    }
    if (!a.empty() && a.back() != 1) {
        const Rational lead = a.back();
        for (auto& c : a) c /= lead;
        for (auto& c : u0) c /= lead;
    }
    return {a, u0};
}

/// x^k - 1 helper.
inline Poly poly_xk_minus_one(long k) {
    Poly p(static_cast<std::size_t>(k) + 1, Rational(0));
    p[0] = -1;
    p[static_cast<std::size_t>(k)] = 1;
    return p;
}

/// The k-th cyclotomic polynomial Phi_k, monic of degree phi(k), computed by
/// dividing x^k - 1 by Phi_d over every proper divisor d of k.
inline Poly cyclotomic_polynomial(long k) {
    if (k < 1) throw error("cyclotomic_polynomial: k must be >= 1");
    if (k == 1) return Poly{Rational(-1), Rational(1)};
    Poly num = poly_xk_minus_one(k);
    for (long d = 1; d < k; ++d) {
        if (k % d != 0) continue;
        auto [q, r] = poly_divmod(num, cyclotomic_polynomial(d));
        if (!poly_is_zero(r)) throw error("cyclotomic_polynomial: non-exact division");
        num = std::move(q);
    }
    return num;
}

}  // namespace qgrass
