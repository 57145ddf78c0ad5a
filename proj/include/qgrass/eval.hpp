#pragma once

#include <string>
#include <utility>
#include <vector>

#include "qgrass/berezin.hpp"
#include "qgrass/expr.hpp"

namespace qgrass {

namespace detail {

inline MixedPolynomial mixed_pow(const MixedPolynomial& base, long e, const QContext& ctx) {
    MixedPolynomial acc = MixedPolynomial::scalar(ctx, RadicalScalar(ctx.one()));
    MixedPolynomial sq = base;
    long n = e;
    while (n > 0) {
        if (n & 1) acc = acc * sq;
        n >>= 1;
        if (n) sq = sq * sq;
    }
    return acc;
}

}  // namespace detail

/// Evaluates an expression under k into the mixed oscillator-Grassmann normal
/// form. Differentials are rejected here; they only make sense under an
/// integral sign.
inline MixedPolynomial evaluate_mixed(const ExprAst& e, const QContext& ctx) {
    switch (e.tag) {
        case ExprAst::Tag::Atom:
            switch (e.atom) {
                case AtomKind::A:
                    return mixed_normal_order(std::vector<MixedLetter>{MixedLetter::A},
                                              RadicalScalar(ctx.one()), ctx);
                case AtomKind::Ad:
                    return mixed_normal_order(std::vector<MixedLetter>{MixedLetter::Ad},
                                              RadicalScalar(ctx.one()), ctx);
                case AtomKind::Xi:
                    return mixed_normal_order(std::vector<MixedLetter>{MixedLetter::Xi},
                                              RadicalScalar(ctx.one()), ctx);
                case AtomKind::XiBar:
                    return mixed_normal_order(std::vector<MixedLetter>{MixedLetter::XiBar},
                                              RadicalScalar(ctx.one()), ctx);
                case AtomKind::QPow:
                    return MixedPolynomial::scalar(ctx, RadicalScalar(ctx.zeta_pow(e.arg)));
                case AtomKind::Bracket:
                    return MixedPolynomial::scalar(ctx, RadicalScalar(ctx.q_number(e.arg)));
                case AtomKind::Rad:
                    return MixedPolynomial::scalar(ctx, RadicalScalar::radical(ctx, e.arg));
                case AtomKind::Lit:
                    return MixedPolynomial::scalar(ctx, RadicalScalar(ctx.from_rational(e.lit)));
                case AtomKind::DXi:
                case AtomKind::DXiBar:
                    throw error("differentials are only valid inside an integrand");
            }
            throw error("unreachable atom");
        case ExprAst::Tag::Power:
            return detail::mixed_pow(evaluate_mixed(*e.base, ctx), e.exponent, ctx);
        case ExprAst::Tag::Product: {
            MixedPolynomial acc = MixedPolynomial::scalar(ctx, RadicalScalar(ctx.one()));
            for (const auto& c : e.children) acc = acc * evaluate_mixed(*c, ctx);
            return acc;
        }
        case ExprAst::Tag::Sum: {
            MixedPolynomial acc(ctx);
            for (std::size_t i = 0; i < e.children.size(); ++i) {
                const MixedPolynomial t = evaluate_mixed(*e.children[i], ctx);
                acc = (e.signs[i] > 0) ? acc + t : acc - t;
            }
            return acc;
        }
    }
    throw error("unreachable node");
}

/// A mixed polynomial with no oscillator letters, as a Grassmann polynomial.
inline GrassmannPolynomial mixed_to_grassmann(const MixedPolynomial& p) {
    GrassmannPolynomial out(p.context(), 1);
    for (const auto& [key, c] : p.terms()) {
        if (key.oscillator.ad_pow || key.oscillator.a_pow || key.oscillator.qn_pow)
            throw error("oscillator letters are not allowed in this position");
        out.add_term(key.grassmann, c);
    }
    return out;
}

/// A value with neither Grassmann nor oscillator letters.
inline RadicalScalar evaluate_scalar(const ExprAst& e, const QContext& ctx) {
    const MixedPolynomial p = evaluate_mixed(e, ctx);
    RadicalScalar out(ctx.zero());
    for (const auto& [key, c] : p.terms()) {
        if (!key.grassmann.empty() || key.oscillator.ad_pow || key.oscillator.a_pow || key.oscillator.qn_pow)
            throw error("expression is not a pure scalar");
        out += c;
    }
    return out;
}

/// Integration semantics of the CLI: each additive term either carries no
/// differential (the double block is implied at the far left), an explicit
/// adjacent `dxibar dxi` block splitting it into prefix and suffix, or a
/// single leading differential (single Berezin integral).
inline GrassmannPolynomial integrate_expression(const ExprAst& e, const QContext& ctx) {
    if (e.tag == ExprAst::Tag::Sum) {
        GrassmannPolynomial acc(ctx, 1);
        for (std::size_t i = 0; i < e.children.size(); ++i) {
            GrassmannPolynomial t = integrate_expression(*e.children[i], ctx);
            const RadicalScalar sign(ctx.integer(e.signs[i]));
            acc = acc + sign * t;
        }
        return acc;
    }

    std::vector<AstPtr> factors;
    if (e.tag == ExprAst::Tag::Product)
        factors = e.children;
    else
        factors.push_back(std::make_shared<ExprAst>(e));

    auto is_diff = [](const AstPtr& n, AtomKind kind) {
        return n->tag == ExprAst::Tag::Atom && n->atom == kind;
    };
    auto eval_slice = [&](std::size_t from, std::size_t to) {
        if (from >= to) return GrassmannPolynomial::one(ctx, 1);
        MixedPolynomial acc = MixedPolynomial::scalar(ctx, RadicalScalar(ctx.one()));
        for (std::size_t i = from; i < to; ++i) acc = acc * evaluate_mixed(*factors[i], ctx);
        return mixed_to_grassmann(acc);
    };

    // Explicit adjacent block dxibar dxi
    for (std::size_t i = 0; i + 1 < factors.size(); ++i) {
        if (is_diff(factors[i], AtomKind::DXiBar) && is_diff(factors[i + 1], AtomKind::DXi)) {
            const IntegrandTerm term{eval_slice(0, i), eval_slice(i + 2, factors.size())};
            return GrassmannPolynomial::scalar(ctx, 1, integrate_double(term, ctx));
        }
    }
    // Single leading differential
    if (is_diff(factors[0], AtomKind::DXi) || is_diff(factors[0], AtomKind::DXiBar)) {
        const GenKind var = is_diff(factors[0], AtomKind::DXi) ? GenKind::Xi : GenKind::XiBar;
        return integrate_single(eval_slice(1, factors.size()), var);
    }
    // Any other differential placement is unsupported
    for (const auto& fct : factors)
        if (is_diff(fct, AtomKind::DXi) || is_diff(fct, AtomKind::DXiBar))
            throw error("unsupported differential placement; use a leading dxi/dxibar or an adjacent 'dxibar dxi' block");
    // No differentials: implied double block at the far left
    return GrassmannPolynomial::scalar(ctx, 1,
                                       integrate_double({GrassmannPolynomial::one(ctx, 1),
                                                         eval_slice(0, factors.size())},
                                                        ctx));
}

}  // namespace qgrass
