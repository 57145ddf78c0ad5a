#pragma once

#include <string>
#include <utility>
#include <vector>

#include "qgrass/oscillator.hpp"

namespace qgrass {

/// Single Berezin integral (d = 1): int d(alpha) alpha^n = delta_{n,k-1}, with
/// the dtheta crossing phases collected when the differential has to pass the
/// other variable's powers.
inline GrassmannPolynomial integrate_single(const GrassmannPolynomial& p, GenKind var) {
    if (p.modes() != 1) throw error("integrate_single: d = 1 only");
    if (var != GenKind::Xi && var != GenKind::XiBar) throw error("integrate_single: var must be xi or xibar");
    const QContext& ctx = p.context();
    const unsigned top = static_cast<unsigned>(ctx.k() - 1);
    GrassmannPolynomial out(ctx, 1);
    for (const auto& [m, c] : p.terms()) {
        const unsigned i = m.xi[0], j = m.xibar[0];
        if (var == GenKind::Xi) {
            // d(xi) sits immediately left of the xi-run in canonical order.
            if (i != top) continue;
            GrassmannMonomial rest(1);
            rest.xibar[0] = j;
            out.add_term(rest, c);
        } else {
            // d(xibar) crosses xi^i first: d(xibar) xi = qbar xi d(xibar).
            if (j != top) continue;
            GrassmannMonomial rest(1);
            rest.xi[0] = i;
            out.add_term(rest, ctx.zeta_pow(-static_cast<long>(i)) * c);
        }
    }
    return out;
}

/// One double-integral term: prefix letters stand left of the d(xibar) d(xi)
/// block, the suffix right of it.
struct IntegrandTerm {
    GrassmannPolynomial prefix;
    GrassmannPolynomial suffix;
};

/// Double Berezin integral (d = 1). Prefix letters are commuted rightward
/// across the block (xi picks q then qbar, xibar picks qbar then q, both net
/// 1), the composite word is normal-ordered, and the normalized rule
/// int int d(xibar) d(xi) xi^{k-1} xibar^{k-1} = 1 is applied.
inline RadicalScalar integrate_double(const IntegrandTerm& term, const QContext& ctx) {
    if (term.prefix.modes() != 1 || term.suffix.modes() != 1)
        throw error("integrate_double: d = 1 only");
    const long top = ctx.k() - 1;
    RadicalScalar acc(ctx.zero());
    for (const auto& [mp, cp] : term.prefix.terms()) {
        const long a = mp.xi[0], b = mp.xibar[0];
        // Explicit block-crossing phases from Eq.-dtheta rewriting.
        long cross = 0;
        cross += a * (+1 - 1);  // xi over d(xibar): +1, over d(xi): -1
        cross += b * (-1 + 1);  // xibar over d(xibar): -1, over d(xi): +1
        for (const auto& [ms, cs] : term.suffix.terms()) {
            const long i = ms.xi[0], j = ms.xibar[0];
            // xi^a xibar^b xi^i xibar^j -> q^{b i} xi^{a+i} xibar^{b+j}
            if (a + i != top || b + j != top) continue;
            acc += ctx.zeta_pow(cross + b * i) * (cp * cs);
        }
    }
    return acc;
}

/// Weight function Sum c_n xi^n xibar^n.
struct WeightFunction {
    std::vector<RadicalScalar> c;

    GrassmannPolynomial to_polynomial(const QContext& ctx) const {
        GrassmannPolynomial p(ctx, 1);
        for (std::size_t n = 0; n < c.size(); ++n) {
            GrassmannMonomial m(1);
            m.xi[0] = m.xibar[0] = static_cast<unsigned>(n);
            p.add_term(m, c[n]);
        }
        return p;
    }
};

/// Form-1 weight: c_n = q^{n(n+1)} [k-n-1]_q!.
inline WeightFunction weight_omega(const QContext& ctx) {
    require_non_degenerate(ctx, "weight_omega");
    WeightFunction w;
    for (long n = 0; n < ctx.k(); ++n)
        w.c.push_back(ctx.zeta_pow(n * (n + 1)) * RadicalScalar(ctx.q_factorial(ctx.k() - n - 1)));
    return w;
}

/// Form-2 weight: c~_n = [k-n-1]_q!; checked against c~_n = qbar^{n(n+1)} c_n.
inline WeightFunction weight_omega_tilde(const QContext& ctx) {
    require_non_degenerate(ctx, "weight_omega_tilde");
    const WeightFunction omega = weight_omega(ctx);
    WeightFunction w;
    for (long n = 0; n < ctx.k(); ++n) {
        RadicalScalar cn{ctx.q_factorial(ctx.k() - n - 1)};
        if (cn != ctx.zeta_pow(-n * (n + 1)) * omega.c[static_cast<std::size_t>(n)])
            throw error("weight_omega_tilde: entrywise relation to c_n violated");
        w.c.push_back(std::move(cn));
    }
    return w;
}

/// int int d(xibar) d(xi) omega(xibar xi) |xi><xi|, integrated entrywise.
inline ScalarMatrix resolution_form1(const QContext& ctx) {
    require_non_degenerate(ctx, "resolution_form1");
    const long k = ctx.k();
    const GrassmannPolynomial omega = weight_omega(ctx).to_polynomial(ctx);
    ScalarMatrix m(ctx, k);
    for (long l = 0; l < k; ++l)
        for (long p = 0; p < k; ++p) {
            const GrassmannPolynomial suffix = multiply(
                multiply(omega, coherent_ket_coefficient(ctx, l, 1, 1)), coherent_bra_coefficient(ctx, p, 1, 1));
            m.set(l, p, integrate_double({GrassmannPolynomial::one(ctx, 1), suffix}, ctx));
        }
    return m;
}

/// int int |xi> d(xibar) d(xi) omega~(xibar xi) <xi| — the ket coefficient
/// stands left of the block.
inline ScalarMatrix resolution_form2(const QContext& ctx) {
    require_non_degenerate(ctx, "resolution_form2");
    const long k = ctx.k();
    const GrassmannPolynomial omega_tilde = weight_omega_tilde(ctx).to_polynomial(ctx);
    ScalarMatrix m(ctx, k);
    for (long l = 0; l < k; ++l)
        for (long p = 0; p < k; ++p) {
            const GrassmannPolynomial suffix = multiply(omega_tilde, coherent_bra_coefficient(ctx, p, 1, 1));
            m.set(l, p, integrate_double({coherent_ket_coefficient(ctx, l, 1, 1), suffix}, ctx));
        }
    return m;
}

/// Treats c_0..c_{k-1} as unknowns, assembles the constraint of every
/// diagonal entry by symbolic integration, and solves the resulting
/// univariate equations. At even k >= 4 assembling the row l = k/2 signals
/// the degenerate parameter — the failure certificate.
inline std::vector<RadicalScalar> solve_weights(const QContext& ctx, int form) {
    if (form != 1 && form != 2) throw error("solve_weights: form must be 1 or 2");
    const long k = ctx.k();
    std::vector<RadicalScalar> solution(static_cast<std::size_t>(k), RadicalScalar(ctx.zero()));
    std::vector<bool> solved(static_cast<std::size_t>(k), false);
    for (long l = 0; l < k; ++l) {
        GrassmannPolynomial ket = GrassmannPolynomial(ctx, 1);
        GrassmannPolynomial bra = GrassmannPolynomial(ctx, 1);
        try {
            ket = coherent_ket_coefficient(ctx, l, 1, 1);
            bra = coherent_bra_coefficient(ctx, l, 1, 1);
        } catch (const degenerate_parameter& e) {
            throw degenerate_parameter(std::string(e.what()) + " (constraint row l = " + std::to_string(l) +
                                       " of the resolution-of-unity system is unsolvable)");
        }
        long hit = -1;
        RadicalScalar coeff(ctx.zero());
        for (long n = 0; n < k; ++n) {
            GrassmannMonomial wm(1);
            wm.xi[0] = wm.xibar[0] = static_cast<unsigned>(n);
            const GrassmannPolynomial wterm =
                GrassmannPolynomial::monomial(ctx, wm, RadicalScalar(ctx.one()));
            const RadicalScalar K =
                (form == 1)
                    ? integrate_double({GrassmannPolynomial::one(ctx, 1), multiply(multiply(wterm, ket), bra)}, ctx)
                    : integrate_double({ket, multiply(wterm, bra)}, ctx);
            if (K.is_zero()) continue;
            if (hit >= 0) throw error("solve_weights: constraint row not univariate");
            hit = n;
            coeff = K;
        }
        if (hit < 0)
            throw degenerate_parameter("solve_weights: constraint row l = " + std::to_string(l) +
                                       " has no unknown with invertible coefficient");
        const RadicalScalar value = coeff.inverse();  // K * c_n = 1
        if (solved[static_cast<std::size_t>(hit)] && solution[static_cast<std::size_t>(hit)] != value)
            throw error("solve_weights: inconsistent constraints");
        solution[static_cast<std::size_t>(hit)] = value;
        solved[static_cast<std::size_t>(hit)] = true;
    }
    for (bool s : solved)
        if (!s) throw error("solve_weights: underdetermined system");
    return solution;
}

/// Moves the ket's xi^l leftward through the form-1 integrand (across the
/// weight term and the differential block, phase by phase) and checks that the
/// transported coefficients reproduce the form-2 weight.
inline bool form_equivalence_transport(const QContext& ctx) {
    const WeightFunction omega = weight_omega(ctx);
    const WeightFunction tilde = weight_omega_tilde(ctx);
    for (long n = 0; n < ctx.k(); ++n) {
        const long l = ctx.k() - 1 - n;  // the surviving ket power for this weight term
        long phase = 0;
        phase += n * l;        // each xi crossing xibar^n leftward: q per crossing
        phase += l * (1 - 1);  // crossing d(xi) then d(xibar) leftward: q, qbar
        if (ctx.zeta_pow(phase) * omega.c[static_cast<std::size_t>(n)] !=
            tilde.c[static_cast<std::size_t>(n)])
            return false;
    }
    return true;
}

/// The (xibar xi)^n presentation omega = Sum q^{n(n+1)/2} [k-n-1]_q! (xibar xi)^n,
/// checked against the stored xi^n xibar^n coefficients through the reorder lemma.
inline bool omega_presentation_consistent(const QContext& ctx) {
    const GrassmannPolynomial stored = weight_omega(ctx).to_polynomial(ctx);
    GrassmannPolynomial alt(ctx, 1);
    for (long n = 0; n < ctx.k(); ++n) {
        std::vector<Generator> w;
        for (long i = 0; i < n; ++i) {
            w.push_back({GenKind::XiBar, 1});
            w.push_back({GenKind::Xi, 1});
        }
        const RadicalScalar c =
            ctx.zeta_pow(n * (n + 1) / 2) * RadicalScalar(ctx.q_factorial(ctx.k() - n - 1));
        alt = alt + normal_order(w, c, ctx, 1);
    }
    return alt == stored;
}

}  // namespace qgrass
