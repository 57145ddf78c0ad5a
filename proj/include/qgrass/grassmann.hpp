#pragma once

#include <algorithm>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qgrass/error.hpp"
#include "qgrass/radical.hpp"

namespace qgrass {

enum class GenKind { Xi, XiBar, DXi, DXiBar };

/// One Grassmann generator letter; modes are 1-based as in xi_1 ... xi_d.
struct Generator {
    GenKind kind;
    int mode = 1;

    friend bool operator==(const Generator& a, const Generator& b) {
        return a.kind == b.kind && a.mode == b.mode;
    }
};

inline bool is_differential(GenKind k) { return k == GenKind::DXi || k == GenKind::DXiBar; }

/// Z_k grade: xi carries 1, xibar carries k-1; differentials carry the grade
/// of their variable.
inline long generator_grade(GenKind kind, long k) {
    switch (kind) {
        case GenKind::Xi:
        case GenKind::DXi:
            return 1;
        case GenKind::XiBar:
        case GenKind::DXiBar:
            return k - 1;
    }
    return 0;
}

/// Phase lambda with A B = lambda * B A for variable generators. Encodes the
/// q-commutation relations for i < j together with the fixed same-mode rule
/// xi xibar = qbar xibar xi.
inline CyclotomicNumber swap_phase(const QContext& ctx, const Generator& a, const Generator& b) {
    if (is_differential(a.kind) || is_differential(b.kind))
        throw error("swap_phase: differentials are not variable generators");
    if (a.kind == b.kind && a.mode == b.mode) return ctx.one();
    const long g = generator_grade(a.kind, ctx.k()) * generator_grade(b.kind, ctx.k());
    if (a.mode < b.mode) return ctx.zeta_pow(g);
    if (a.mode > b.mode) return ctx.zeta_pow(-g);
    return a.kind == GenKind::Xi ? ctx.zeta_pow(g) : ctx.zeta_pow(-g);
}

enum class TargetOrder { XiFirst, XiBarFirst };

/// Sorts a word of variable generators into the requested sector order,
/// multiplying the coefficient by the swap phase of every transposition.
/// Returns the sorted word and the accumulated coefficient; nilpotent
/// collapse is not applied here.
inline std::pair<std::vector<Generator>, RadicalScalar> reorder_word(std::span<const Generator> word,
                                                                     RadicalScalar coefficient,
                                                                     const QContext& ctx,
                                                                     TargetOrder target = TargetOrder::XiFirst) {
    auto rank = [&](const Generator& g) {
        const int sector = (g.kind == GenKind::Xi) ? 0 : 1;
        const int flipped = (target == TargetOrder::XiFirst) ? sector : 1 - sector;
        return std::pair<int, int>{flipped, g.mode};
    };
    std::vector<Generator> w(word.begin(), word.end());
    for (std::size_t i = 1; i < w.size(); ++i) {
        std::size_t j = i;
        while (j > 0 && rank(w[j]) < rank(w[j - 1])) {
            coefficient = swap_phase(ctx, w[j - 1], w[j]) * coefficient;
            std::swap(w[j - 1], w[j]);
            --j;
        }
    }
    return {std::move(w), std::move(coefficient)};
}

/// Canonical monomial xi_1^{i_1}..xi_d^{i_d} xibar_1^{j_1}..xibar_d^{j_d}.
struct GrassmannMonomial {
    std::vector<unsigned> xi;
    std::vector<unsigned> xibar;

    explicit GrassmannMonomial(int d) : xi(static_cast<std::size_t>(d), 0), xibar(static_cast<std::size_t>(d), 0) {}

    int modes() const noexcept { return static_cast<int>(xi.size()); }

    unsigned total_degree() const {
        unsigned t = 0;
        for (unsigned e : xi) t += e;
        for (unsigned e : xibar) t += e;
        return t;
    }

    bool empty() const { return total_degree() == 0; }

    std::vector<Generator> word() const {
        std::vector<Generator> w;
        for (int m = 0; m < modes(); ++m)
            for (unsigned r = 0; r < xi[static_cast<std::size_t>(m)]; ++r) w.push_back({GenKind::Xi, m + 1});
        for (int m = 0; m < modes(); ++m)
            for (unsigned r = 0; r < xibar[static_cast<std::size_t>(m)]; ++r) w.push_back({GenKind::XiBar, m + 1});
        return w;
    }

    friend bool operator==(const GrassmannMonomial& a, const GrassmannMonomial& b) {
        return a.xi == b.xi && a.xibar == b.xibar;
    }

    // Graded order with the xi sector weighing first; gives the natural
    // 1 < xi < xibar < xi xibar print order.
    friend bool operator<(const GrassmannMonomial& a, const GrassmannMonomial& b) {
        if (a.total_degree() != b.total_degree()) return a.total_degree() < b.total_degree();
        if (a.xibar != b.xibar) return a.xibar < b.xibar;
        return b.xi < a.xi;
    }
};

/// Grade of a monomial: sum of generator grades mod k.
inline long grade(const GrassmannMonomial& m, const QContext& ctx) {
    long g = 0;
    for (unsigned e : m.xi) g += static_cast<long>(e);
    for (unsigned e : m.xibar) g += static_cast<long>(e) * (ctx.k() - 1);
    return ((g % ctx.k()) + ctx.k()) % ctx.k();
}

/// Finite sum of canonical monomials with RadicalScalar coefficients.
class GrassmannPolynomial {
public:
    GrassmannPolynomial(QContext ctx, int d) : ctx_(std::move(ctx)), d_(d) {
        if (d < 1) throw error("GrassmannPolynomial: d must be >= 1");
    }

    static GrassmannPolynomial scalar(const QContext& ctx, int d, RadicalScalar c) {
        GrassmannPolynomial p(ctx, d);
        p.add_term(GrassmannMonomial(d), std::move(c));
        return p;
    }

    static GrassmannPolynomial one(const QContext& ctx, int d) {
        return scalar(ctx, d, RadicalScalar(ctx.one()));
    }

    static GrassmannPolynomial monomial(const QContext& ctx, GrassmannMonomial m, RadicalScalar c) {
        GrassmannPolynomial p(ctx, m.modes());
        p.add_term(std::move(m), std::move(c));
        return p;
    }

    const QContext& context() const noexcept { return ctx_; }
    int modes() const noexcept { return d_; }
    const std::map<GrassmannMonomial, RadicalScalar>& terms() const noexcept { return terms_; }

    bool is_zero() const { return terms_.empty(); }

    RadicalScalar coefficient(const GrassmannMonomial& m) const {
        auto it = terms_.find(m);
        return it == terms_.end() ? RadicalScalar(ctx_.zero()) : it->second;
    }

    void add_term(GrassmannMonomial m, RadicalScalar c) {
        if (m.modes() != d_) throw error("GrassmannPolynomial: monomial mode count mismatch");
        for (unsigned e : m.xi)
            if (e >= static_cast<unsigned>(ctx_.k())) return;  // xi^k = 0
        for (unsigned e : m.xibar)
            if (e >= static_cast<unsigned>(ctx_.k())) return;
        if (c.is_zero()) return;
        auto it = terms_.find(m);
        if (it == terms_.end()) {
            terms_.emplace(std::move(m), std::move(c));
        } else {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    friend GrassmannPolynomial operator+(const GrassmannPolynomial& a, const GrassmannPolynomial& b) {
        a.check(b);
        GrassmannPolynomial r = a;
        for (const auto& [m, c] : b.terms_) r.add_term(m, c);
        return r;
    }

    friend GrassmannPolynomial operator-(const GrassmannPolynomial& a, const GrassmannPolynomial& b) {
        a.check(b);
        GrassmannPolynomial r = a;
        for (const auto& [m, c] : b.terms_) r.add_term(m, -c);
        return r;
    }

    friend GrassmannPolynomial operator*(const RadicalScalar& s, const GrassmannPolynomial& a) {
        GrassmannPolynomial r(a.ctx_, a.d_);
        for (const auto& [m, c] : a.terms_) r.add_term(m, s * c);
        return r;
    }

    friend bool operator==(const GrassmannPolynomial& a, const GrassmannPolynomial& b) {
        a.check(b);
        return a.terms_ == b.terms_;
    }
    friend bool operator!=(const GrassmannPolynomial& a, const GrassmannPolynomial& b) { return !(a == b); }

    /// Antilinear involution: scalar dagger, word reversal, xi <-> xibar.
    GrassmannPolynomial dagger() const;

    /// f(xi, xibar) -> f(xi, q^m xibar): multiplies the xibar^n coefficient by q^{mn} (d = 1).
    GrassmannPolynomial scale_substitute(long m) const {
        if (d_ != 1) throw error("scale_substitute: defined for d = 1");
        GrassmannPolynomial r(ctx_, d_);
        for (const auto& [mon, c] : terms_)
            r.add_term(mon, ctx_.zeta_pow(m * static_cast<long>(mon.xibar[0])) * c);
        return r;
    }

private:
    void check(const GrassmannPolynomial& b) const {
        if (ctx_ != b.ctx_ || d_ != b.d_)
            throw context_mismatch("GrassmannPolynomial: mixed contexts or mode counts");
    }

    QContext ctx_;
    int d_;
    std::map<GrassmannMonomial, RadicalScalar> terms_;
};

/// Normal-orders a word of variable generators into the canonical xi-first
/// monomial. Every relation is a phase swap, so the result is zero or a single
/// monomial carrying the input coefficient times a power of zeta.
inline GrassmannPolynomial normal_order(std::span<const Generator> word, RadicalScalar coefficient,
                                        const QContext& ctx, int d) {
    for (const Generator& g : word) {
        if (is_differential(g.kind)) throw error("normal_order: differentials not accepted here");
        if (g.mode < 1 || g.mode > d) throw error("normal_order: generator mode out of range");
    }
    auto [sorted, coeff] = reorder_word(word, std::move(coefficient), ctx, TargetOrder::XiFirst);
    GrassmannMonomial m(d);
    for (const Generator& g : sorted) {
        auto& slot = (g.kind == GenKind::Xi) ? m.xi : m.xibar;
        slot[static_cast<std::size_t>(g.mode - 1)] += 1;
    }
    GrassmannPolynomial p(ctx, d);
    p.add_term(std::move(m), std::move(coeff));
    return p;
}

/// Ordered product: concatenates canonical words and re-normal-orders each
/// cross term.
inline GrassmannPolynomial multiply(const GrassmannPolynomial& a, const GrassmannPolynomial& b) {
    if (a.context() != b.context() || a.modes() != b.modes())
        throw context_mismatch("multiply: mixed contexts or mode counts");
    GrassmannPolynomial r(a.context(), a.modes());
    for (const auto& [ma, ca] : a.terms())
        for (const auto& [mb, cb] : b.terms()) {
            std::vector<Generator> w = ma.word();
            const std::vector<Generator> wb = mb.word();
            w.insert(w.end(), wb.begin(), wb.end());
            const GrassmannPolynomial term = normal_order(w, ca * cb, a.context(), a.modes());
            for (const auto& [m, c] : term.terms()) r.add_term(m, c);
        }
    return r;
}

inline GrassmannPolynomial GrassmannPolynomial::dagger() const {
    GrassmannPolynomial r(ctx_, d_);
    for (const auto& [m, c] : terms_) {
        std::vector<Generator> w = m.word();
        std::reverse(w.begin(), w.end());
        for (Generator& g : w) g.kind = (g.kind == GenKind::Xi) ? GenKind::XiBar : GenKind::Xi;
        const GrassmannPolynomial term = normal_order(w, c.dagger(), ctx_, d_);
        for (const auto& [mm, cc] : term.terms()) r.add_term(mm, cc);
    }
    return r;
}

}  // namespace qgrass
