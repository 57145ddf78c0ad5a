#pragma once

#include <span>
#include <utility>
#include <vector>

#include "qgrass/berezin.hpp"

namespace qgrass {

enum class RepConvention { M, D };

/// Degree-<k polynomial in xibar: the Grassmann-representative space.
struct RepPolynomial {
    QContext ctx;
    std::vector<RadicalScalar> c;  // coefficient of xibar^m, m = 0..k-1

    static RepPolynomial zero(const QContext& ctx) {
        return {ctx, std::vector<RadicalScalar>(static_cast<std::size_t>(ctx.k()), RadicalScalar(ctx.zero()))};
    }

    friend bool operator==(const RepPolynomial& a, const RepPolynomial& b) {
        return a.ctx == b.ctx && a.c == b.c;
    }
    friend bool operator!=(const RepPolynomial& a, const RepPolynomial& b) { return !(a == b); }

    /// As a d = 1 Grassmann polynomial in xibar.
    GrassmannPolynomial to_polynomial() const {
        GrassmannPolynomial p(ctx, 1);
        for (std::size_t m = 0; m < c.size(); ++m) {
            GrassmannMonomial mon(1);
            mon.xibar[0] = static_cast<unsigned>(m);
            p.add_term(mon, c[m]);
        }
        return p;
    }

    /// The symbolic bar: scalar dagger and xibar -> xi.
    GrassmannPolynomial bar_polynomial() const {
        GrassmannPolynomial p(ctx, 1);
        for (std::size_t m = 0; m < c.size(); ++m) {
            GrassmannMonomial mon(1);
            mon.xi[0] = static_cast<unsigned>(m);
            p.add_term(mon, c[m].dagger());
        }
        return p;
    }
};

/// Basis monomial of the representative space. Convention M is the monomial
/// normalization qbar^{n(n-1)/2} xibar^n / sqrt([n]_q!); convention D is the
/// dagger-bra pairing <xi|n> = q^{n(n+1)/2} xibar^n / sqrt([n]_q!). The two
/// differ by the diagonal q^{n^2} intertwiner.
inline RepPolynomial rep_monomial(const QContext& ctx, long n, RepConvention conv) {
    require_non_degenerate(ctx, "rep_monomial");
    if (n < 0 || n >= ctx.k()) throw error("rep_monomial: n out of range 0..k-1");
    RepPolynomial r = RepPolynomial::zero(ctx);
    const long e = (conv == RepConvention::M) ? -n * (n - 1) / 2 : n * (n + 1) / 2;
    r.c[static_cast<std::size_t>(n)] = ctx.zeta_pow(e) * inv_sqrt_q_factorial(ctx, n);
    return r;
}

/// Linear map from Fock coefficients to the representative space.
inline RepPolynomial to_representative(std::span<const RadicalScalar> state, const QContext& ctx,
                                       RepConvention conv) {
    require_non_degenerate(ctx, "to_representative");
    if (state.size() != static_cast<std::size_t>(ctx.k()))
        throw error("to_representative: state vector must have length k");
    RepPolynomial r = RepPolynomial::zero(ctx);
    for (long n = 0; n < ctx.k(); ++n) {
        const RepPolynomial mono = rep_monomial(ctx, n, conv);
        for (std::size_t m = 0; m < r.c.size(); ++m)
            r.c[m] += state[static_cast<std::size_t>(n)] * mono.c[m];
    }
    return r;
}

/// |psi> = int int |xi> d(xibar) d(xi) omega~(xibar xi) psi(xibar), evaluated
/// symbolically; returns the Fock coefficients.
inline std::vector<RadicalScalar> reconstruct(const RepPolynomial& psi, const QContext& ctx) {
    require_non_degenerate(ctx, "reconstruct");
    const GrassmannPolynomial weighted = multiply(weight_omega_tilde(ctx).to_polynomial(ctx), psi.to_polynomial());
    std::vector<RadicalScalar> out;
    for (long l = 0; l < ctx.k(); ++l)
        out.push_back(integrate_double({coherent_ket_coefficient(ctx, l, 1, 1), weighted}, ctx));
    return out;
}

/// <first|second> = int int bar(first)(xi) d(xibar) d(xi) omega~(xibar xi) second(xibar),
/// antilinear in the first argument.
inline RadicalScalar rep_inner(const RepPolynomial& first, const RepPolynomial& second, const QContext& ctx) {
    require_non_degenerate(ctx, "rep_inner");
    const GrassmannPolynomial suffix = multiply(weight_omega_tilde(ctx).to_polynomial(ctx), second.to_polynomial());
    return integrate_double({first.bar_polynomial(), suffix}, ctx);
}

/// Ordinary derivative: xibar^m -> m xibar^{m-1}.
inline RepPolynomial partial_derivative(const RepPolynomial& psi) {
    RepPolynomial out = RepPolynomial::zero(psi.ctx);
    for (std::size_t m = 1; m < psi.c.size(); ++m)
        out.c[m - 1] = psi.ctx.integer(static_cast<long>(m)) * psi.c[m];
    return out;
}

/// Deformed derivative by the coefficient rule: xibar^m -> [m]_q xibar^{m-1}.
inline RepPolynomial q_derivative(const RepPolynomial& psi) {
    RepPolynomial out = RepPolynomial::zero(psi.ctx);
    for (std::size_t m = 1; m < psi.c.size(); ++m)
        out.c[m - 1] = psi.ctx.q_number(static_cast<long>(m)) * psi.c[m];
    return out;
}

/// Deformed derivative as the difference quotient
/// (psi(q xibar) - psi(qbar xibar)) / ((q - qbar) xibar), via scale_substitute.
/// Undefined at k = 2 where q - qbar = 0.
inline RepPolynomial q_derivative_quotient(const RepPolynomial& psi) {
    const QContext& ctx = psi.ctx;
    if (ctx.k() == 2)
        throw degenerate_denominator("q_derivative_quotient: q - q^-1 = 0 at k = 2");
    const GrassmannPolynomial p = psi.to_polynomial();
    const GrassmannPolynomial diff = p.scale_substitute(1) - p.scale_substitute(-1);
    const CyclotomicNumber den = (ctx.q() - ctx.qbar()).inverse();
    RepPolynomial out = RepPolynomial::zero(ctx);
    for (const auto& [m, c] : diff.terms()) {
        const unsigned e = m.xibar[0];
        if (e == 0) {
            if (!c.is_zero()) throw error("q_derivative_quotient: constant term does not cancel");
            continue;
        }
        out.c[e - 1] = den * c;
    }
    return out;
}

using RepOperator = ScalarMatrix;

struct Realizations {
    RepOperator a;       // q^{xibar d/dxibar} D_xibar
    RepOperator ad;      // xibar qbar^{xibar d/dxibar}
    RepOperator number;  // xibar d/dxibar
};

inline RepPolynomial apply(const RepOperator& op, const RepPolynomial& psi) {
    RepPolynomial out = RepPolynomial::zero(psi.ctx);
    for (long i = 0; i < op.size(); ++i) {
        RadicalScalar acc(psi.ctx.zero());
        for (long j = 0; j < op.size(); ++j) acc += op.at(i, j) * psi.c[static_cast<std::size_t>(j)];
        out.c[static_cast<std::size_t>(i)] = std::move(acc);
    }
    return out;
}

/// The differential realizations assembled from the primitive coefficient
/// matrices: q^{+-xibar d} = diag(q^{+-m}), D and d by their shift rules,
/// xibar-multiplication as the nilpotent up-shift.
inline Realizations realizations(const QContext& ctx) {
    require_non_degenerate(ctx, "realizations");
    const long k = ctx.k();
    ScalarMatrix scale_up(ctx, k), scale_down(ctx, k), deformed(ctx, k), ordinary(ctx, k), xibar_mul(ctx, k);
    for (long m = 0; m < k; ++m) {
        scale_up.set(m, m, RadicalScalar(ctx.zeta_pow(m)));
        scale_down.set(m, m, RadicalScalar(ctx.zeta_pow(-m)));
        if (m >= 1) {
            deformed.set(m - 1, m, RadicalScalar(ctx.q_number(m)));
            ordinary.set(m - 1, m, RadicalScalar(ctx.integer(m)));
        }
        if (m + 1 < k) xibar_mul.set(m + 1, m, RadicalScalar(ctx.one()));
    }
    return {scale_up * deformed, xibar_mul * scale_down, xibar_mul * ordinary};
}

/// Diagonal q^{n^2} map with T rep_M(n) = rep_D(n).
inline RepOperator convention_intertwiner(const QContext& ctx) {
    ScalarMatrix t(ctx, ctx.k());
    for (long n = 0; n < ctx.k(); ++n) t.set(n, n, RadicalScalar(ctx.zeta_pow(n * n)));
    return t;
}

}  // namespace qgrass
