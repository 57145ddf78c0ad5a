#pragma once

#include <deque>
#include <span>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "qgrass/grassmann.hpp"
#include "qgrass/matrix.hpp"

namespace qgrass {

/// Throws degenerate_parameter naming [k/2]_q = 0 when the context is an even
/// k >= 4, where the 1/sqrt([n]_q!) normalizations stop existing.
inline void require_non_degenerate(const QContext& ctx, const std::string& what) {
    if (ctx.degenerate())
        throw degenerate_parameter(what + ": [" + std::to_string(ctx.k() / 2) + "]_q = 0 at k = " +
                                   std::to_string(ctx.k()) + "; 1/sqrt([n]_q!) is undefined");
}

using FockOperator = ScalarMatrix;

/// The k-dimensional nilpotent representation: a, a+, N, q^N, q^-N.
struct FockSet {
    FockOperator a;
    FockOperator ad;
    FockOperator number;
    FockOperator q_number_op;      // q^N
    FockOperator q_number_op_inv;  // q^-N
};

inline FockSet fock_matrices(const QContext& ctx) {
    const long k = ctx.k();
    FockSet f{ScalarMatrix(ctx, k), ScalarMatrix(ctx, k), ScalarMatrix(ctx, k), ScalarMatrix(ctx, k),
              ScalarMatrix(ctx, k)};
    for (long n = 1; n < k; ++n) {
        f.a.set(n - 1, n, RadicalScalar::radical(ctx, n));
        f.ad.set(n, n - 1, RadicalScalar::radical(ctx, n));
    }
    for (long n = 0; n < k; ++n) {
        f.number.set(n, n, RadicalScalar(ctx.integer(n)));
        f.q_number_op.set(n, n, RadicalScalar(ctx.zeta_pow(n)));
        f.q_number_op_inv.set(n, n, RadicalScalar(ctx.zeta_pow(-n)));
    }
    return f;
}

struct IdentityCheck {
    std::string name;
    bool ok;
    std::string detail;
};

/// First differing entry of two matrices, rendered for diagnostics.
inline std::string matrix_mismatch_detail(const ScalarMatrix& lhs, const ScalarMatrix& rhs,
                                          const QContext& ctx) {
    for (long i = 0; i < lhs.size(); ++i)
        for (long j = 0; j < lhs.size(); ++j)
            if (lhs.at(i, j) != rhs.at(i, j)) {
                std::string s = "first mismatch at entry (" + std::to_string(i) + "," + std::to_string(j) + ")";
                if (i == ctx.k() - 1 && j == ctx.k() - 1)
                    s += "; the corner needs [k]_q = 0, which fails at k = " + std::to_string(ctx.k());
                return s;
            }
    return "";
}

/// Exact matrix verification of both BM sign variants, both N-commutators,
/// and k-th power nilpotency.
inline std::vector<IdentityCheck> verify_bm(const QContext& ctx) {
    const FockSet f = fock_matrices(ctx);
    const RadicalScalar q{ctx.q()};
    const RadicalScalar qbar{ctx.qbar()};
    const RadicalScalar minus_one{ctx.integer(-1)};
    std::vector<IdentityCheck> out;
    auto record = [&](const std::string& name, const ScalarMatrix& lhs, const ScalarMatrix& rhs) {
        const bool ok = lhs == rhs;
        out.push_back({name, ok, ok ? "entrywise, exact" : matrix_mismatch_detail(lhs, rhs, ctx)});
    };
    record("aa+ - q a+a = q^-N", f.a * f.ad - q * (f.ad * f.a), f.q_number_op_inv);
    record("aa+ - q^-1 a+a = q^N", f.a * f.ad - qbar * (f.ad * f.a), f.q_number_op);
    record("[N,a] = -a", f.number * f.a - f.a * f.number, minus_one * f.a);
    record("[N,a+] = a+", f.number * f.ad - f.ad * f.number, f.ad);
    out.push_back({"a^k = 0", f.a.pow(ctx.k()).is_zero(), "k-th power vanishes"});
    out.push_back({"(a+)^k = 0", f.ad.pow(ctx.k()).is_zero(), "k-th power vanishes"});
    return out;
}

// ---------------------------------------------------------------------------
// Mixed oscillator-Grassmann words (d = 1).

enum class MixedLetter { A, Ad, Xi, XiBar };

struct MixedWord {
    RadicalScalar coefficient;
    std::vector<MixedLetter> letters;
};

/// Oscillator normal word a+^r q^{sN} a^t (s reduced mod k). Powers >= k
/// vanish in the nilpotent representation and are dropped on construction.
struct OscWord {
    unsigned ad_pow = 0;
    long qn_pow = 0;
    unsigned a_pow = 0;

    friend bool operator==(const OscWord& x, const OscWord& y) {
        return x.ad_pow == y.ad_pow && x.qn_pow == y.qn_pow && x.a_pow == y.a_pow;
    }
    friend bool operator<(const OscWord& x, const OscWord& y) {
        return std::tie(x.ad_pow, x.qn_pow, x.a_pow) < std::tie(y.ad_pow, y.qn_pow, y.a_pow);
    }
};

struct MixedKey {
    GrassmannMonomial grassmann;
    OscWord oscillator;

    friend bool operator==(const MixedKey& x, const MixedKey& y) {
        return x.grassmann == y.grassmann && x.oscillator == y.oscillator;
    }
    friend bool operator<(const MixedKey& x, const MixedKey& y) {
        if (x.grassmann < y.grassmann) return true;
        if (y.grassmann < x.grassmann) return false;
        return x.oscillator < y.oscillator;
    }
};

/// Sum of xi-left / oscillator-right normal terms with exact coefficients.
class MixedPolynomial {
public:
    explicit MixedPolynomial(QContext ctx) : ctx_(std::move(ctx)) {}

    static MixedPolynomial scalar(const QContext& ctx, RadicalScalar c) {
        MixedPolynomial p(ctx);
        p.add_term({GrassmannMonomial(1), OscWord{}}, std::move(c));
        return p;
    }

    const QContext& context() const noexcept { return ctx_; }
    const std::map<MixedKey, RadicalScalar>& terms() const noexcept { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    RadicalScalar coefficient(const MixedKey& key) const {
        auto it = terms_.find(key);
        return it == terms_.end() ? RadicalScalar(ctx_.zero()) : it->second;
    }

    void add_term(MixedKey key, RadicalScalar c) {
        const auto bound = static_cast<unsigned>(ctx_.k());
        if (key.grassmann.xi[0] >= bound || key.grassmann.xibar[0] >= bound) return;
        if (key.oscillator.ad_pow >= bound || key.oscillator.a_pow >= bound) return;
        key.oscillator.qn_pow = ((key.oscillator.qn_pow % ctx_.k()) + ctx_.k()) % ctx_.k();
        if (c.is_zero()) return;
        auto it = terms_.find(key);
        if (it == terms_.end()) {
            terms_.emplace(std::move(key), std::move(c));
        } else {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    friend MixedPolynomial operator+(const MixedPolynomial& a, const MixedPolynomial& b) {
        a.check(b);
        MixedPolynomial r = a;
        for (const auto& [k, c] : b.terms_) r.add_term(k, c);
        return r;
    }

    friend MixedPolynomial operator-(const MixedPolynomial& a, const MixedPolynomial& b) {
        a.check(b);
        MixedPolynomial r = a;
        for (const auto& [k, c] : b.terms_) r.add_term(k, -c);
        return r;
    }

    friend MixedPolynomial operator*(const RadicalScalar& s, const MixedPolynomial& a) {
        MixedPolynomial r(a.ctx_);
        for (const auto& [k, c] : a.terms_) r.add_term(k, s * c);
        return r;
    }

    friend MixedPolynomial operator*(const MixedPolynomial& a, const MixedPolynomial& b);

    friend bool operator==(const MixedPolynomial& a, const MixedPolynomial& b) {
        a.check(b);
        return a.terms_ == b.terms_;
    }
    friend bool operator!=(const MixedPolynomial& a, const MixedPolynomial& b) { return !(a == b); }

private:
    void check(const MixedPolynomial& b) const {
        if (ctx_ != b.ctx_) throw context_mismatch("MixedPolynomial: mixed contexts");
    }

    QContext ctx_;
    std::map<MixedKey, RadicalScalar> terms_;
};

namespace detail {

// Internal letter alphabet for the rewriting engine; QN carries q^{sN}.
struct OscLetter {
    enum Tag { A, Ad, QN } tag;
    long s = 0;
};

inline int osc_rank(const OscLetter& l) {
    switch (l.tag) {
        case OscLetter::Ad:
            return 0;
        case OscLetter::QN:
            return 1;
        case OscLetter::A:
            return 2;
    }
    return 3;
}

/// Normal-orders a pure oscillator word to sums of a+^r q^{sN} a^t using the
/// directed rewrite aa+ -> q a+a + q^-N together with the q^N crossing rules.
inline std::map<OscWord, CyclotomicNumber> osc_normalize(const std::vector<OscLetter>& word,
                                                         const QContext& ctx) {
    std::map<OscWord, CyclotomicNumber> result;
    std::deque<std::pair<std::vector<OscLetter>, CyclotomicNumber>> work;
    work.push_back({word, ctx.one()});
    while (!work.empty()) {
        auto [w, coeff] = std::move(work.front());
        work.pop_front();
        bool rewritten = false;
        for (std::size_t i = 0; i + 1 < w.size(); ++i) {
            const OscLetter &x = w[i], &y = w[i + 1];
            if (x.tag == OscLetter::QN && y.tag == OscLetter::QN) {
                std::vector<OscLetter> m(w.begin(), w.begin() + static_cast<long>(i));
                m.push_back({OscLetter::QN, x.s + y.s});
                m.insert(m.end(), w.begin() + static_cast<long>(i) + 2, w.end());
                work.push_back({std::move(m), coeff});
                rewritten = true;
                break;
            }
            if (osc_rank(x) <= osc_rank(y)) continue;
            if (x.tag == OscLetter::A && y.tag == OscLetter::Ad) {
                // a a+ = q a+ a + q^{-N}
                std::vector<OscLetter> swapped(w.begin(), w.begin() + static_cast<long>(i));
                swapped.push_back(y);
                swapped.push_back(x);
                swapped.insert(swapped.end(), w.begin() + static_cast<long>(i) + 2, w.end());
                work.push_back({std::move(swapped), coeff * ctx.q()});
                std::vector<OscLetter> contracted(w.begin(), w.begin() + static_cast<long>(i));
                contracted.push_back({OscLetter::QN, -1});
                contracted.insert(contracted.end(), w.begin() + static_cast<long>(i) + 2, w.end());
                work.push_back({std::move(contracted), coeff});
            } else {
                // a q^{sN} = q^{s} q^{sN} a    and    q^{sN} a+ = q^{s} a+ q^{sN}
                const long s = (x.tag == OscLetter::QN) ? x.s : y.s;
                std::vector<OscLetter> swapped(w.begin(), w.begin() + static_cast<long>(i));
                swapped.push_back(y);
                swapped.push_back(x);
                swapped.insert(swapped.end(), w.begin() + static_cast<long>(i) + 2, w.end());
                work.push_back({std::move(swapped), coeff * ctx.zeta_pow(s)});
            }
            rewritten = true;
            break;
        }
        if (rewritten) continue;
        OscWord nf;
        long qn = 0;
        for (const OscLetter& l : w) {
            if (l.tag == OscLetter::Ad) nf.ad_pow += 1;
            if (l.tag == OscLetter::QN) qn += l.s;
            if (l.tag == OscLetter::A) nf.a_pow += 1;
        }
        nf.qn_pow = ((qn % ctx.k()) + ctx.k()) % ctx.k();
        if (nf.ad_pow >= static_cast<unsigned>(ctx.k()) || nf.a_pow >= static_cast<unsigned>(ctx.k()))
            continue;  // nilpotent representation
        auto it = result.find(nf);
        if (it == result.end())
            result.emplace(nf, coeff);
        else
            it->second += coeff;
    }
    for (auto it = result.begin(); it != result.end();)
        it = it->second.is_zero() ? result.erase(it) : std::next(it);
    return result;
}

}  // namespace detail

/// Commutes the Grassmann letters fully to the left (xi a+ = q a+ xi,
/// xi a = qbar a xi, xibar a+ = qbar a+ xibar, xibar a = q a xibar; q^{sN}
/// commutes with both), then normal-orders each sector.
inline MixedPolynomial mixed_normal_order(std::span<const MixedLetter> letters, RadicalScalar coefficient,
                                          const QContext& ctx) {
    long phase = 0;
    long ad_seen = 0, a_seen = 0;
    std::vector<Generator> grassmann_part;
    std::vector<detail::OscLetter> osc_part;
    for (const MixedLetter l : letters) {
        switch (l) {
            case MixedLetter::Ad:
                ++ad_seen;
                osc_part.push_back({detail::OscLetter::Ad, 0});
                break;
            case MixedLetter::A:
                ++a_seen;
                osc_part.push_back({detail::OscLetter::A, 0});
                break;
            case MixedLetter::Xi:
                phase += -ad_seen + a_seen;
                grassmann_part.push_back({GenKind::Xi, 1});
                break;
            case MixedLetter::XiBar:
                phase += ad_seen - a_seen;
                grassmann_part.push_back({GenKind::XiBar, 1});
                break;
        }
    }
    const GrassmannPolynomial gp =
        normal_order(grassmann_part, ctx.zeta_pow(phase) * std::move(coefficient), ctx, 1);
    MixedPolynomial out(ctx);
    if (gp.is_zero()) return out;
    const auto osc_terms = detail::osc_normalize(osc_part, ctx);
    for (const auto& [mon, c] : gp.terms())
        for (const auto& [ow, oc] : osc_terms) out.add_term({mon, ow}, oc * c);
    return out;
}

inline MixedPolynomial mixed_normal_order(const MixedWord& w, const QContext& ctx) {
    return mixed_normal_order(w.letters, w.coefficient, ctx);
}

inline MixedPolynomial operator*(const MixedPolynomial& a, const MixedPolynomial& b) {
    a.check(b);
    MixedPolynomial r(a.ctx_);
    for (const auto& [ka, ca] : a.terms_)
        for (const auto& [kb, cb] : b.terms_) {
            // q^{sN} commutes with Grassmann letters, so it is safe to emit the
            // oscillator normal word letter by letter after the Grassmann block.
            auto emit_osc = [&](const OscWord& o, std::vector<detail::OscLetter>& osc) {
                for (unsigned i = 0; i < o.ad_pow; ++i) osc.push_back({detail::OscLetter::Ad, 0});
                if (o.qn_pow != 0) osc.push_back({detail::OscLetter::QN, o.qn_pow});
                for (unsigned i = 0; i < o.a_pow; ++i) osc.push_back({detail::OscLetter::A, 0});
            };
            // Build the concatenated word in internal letters: grassmann(a), osc(a), grassmann(b), osc(b).
            // The Grassmann letters of b must cross osc(a): account phases as in mixed_normal_order.
            long phase = 0;
            const long ad_a = ka.oscillator.ad_pow, a_a = ka.oscillator.a_pow;
            phase += (-ad_a + a_a) * static_cast<long>(kb.grassmann.xi[0]);
            phase += (ad_a - a_a) * static_cast<long>(kb.grassmann.xibar[0]);
            std::vector<Generator> gw;
            for (unsigned i = 0; i < ka.grassmann.xi[0]; ++i) gw.push_back({GenKind::Xi, 1});
            for (unsigned i = 0; i < ka.grassmann.xibar[0]; ++i) gw.push_back({GenKind::XiBar, 1});
            for (unsigned i = 0; i < kb.grassmann.xi[0]; ++i) gw.push_back({GenKind::Xi, 1});
            for (unsigned i = 0; i < kb.grassmann.xibar[0]; ++i) gw.push_back({GenKind::XiBar, 1});
            const GrassmannPolynomial gp =
                normal_order(gw, a.ctx_.zeta_pow(phase) * (ca * cb), a.ctx_, 1);
            if (gp.is_zero()) continue;
            std::vector<detail::OscLetter> osc;
            emit_osc(ka.oscillator, osc);
            emit_osc(kb.oscillator, osc);
            const auto osc_terms = detail::osc_normalize(osc, a.ctx_);
            for (const auto& [mon, c] : gp.terms())
                for (const auto& [ow, oc] : osc_terms) r.add_term({mon, ow}, oc * c);
        }
    return r;
}

// ---------------------------------------------------------------------------
// Graded states over the Fock basis.

/// Length-k vector of Grassmann coefficients over |n> (kets) or right of <n|
/// (bras, in the overlap-computation convention).
struct GradedState {
    enum class Kind { Ket, Bra };

    Kind kind;
    QContext ctx;
    int d;
    std::vector<GrassmannPolynomial> coeffs;

    static GradedState zero(Kind kind, const QContext& ctx, int d) {
        GradedState s{kind, ctx, d, {}};
        s.coeffs.assign(static_cast<std::size_t>(ctx.k()), GrassmannPolynomial(ctx, d));
        return s;
    }

    friend bool operator==(const GradedState& a, const GradedState& b) {
        return a.kind == b.kind && a.ctx == b.ctx && a.d == b.d && a.coeffs == b.coeffs;
    }
    friend bool operator!=(const GradedState& a, const GradedState& b) { return !(a == b); }

    friend GradedState operator+(const GradedState& a, const GradedState& b) {
        if (a.kind != b.kind || a.ctx != b.ctx || a.d != b.d)
            throw context_mismatch("GradedState: mixed kinds or contexts");
        GradedState r = a;
        for (std::size_t i = 0; i < r.coeffs.size(); ++i) r.coeffs[i] = r.coeffs[i] + b.coeffs[i];
        return r;
    }
};

/// Coherent ket coefficient of |n>: qbar^{n(n+1)/2} xi_mode^n / sqrt([n]_q!).
inline GrassmannPolynomial coherent_ket_coefficient(const QContext& ctx, long n, int d, int mode) {
    GrassmannMonomial m(d);
    m.xi[static_cast<std::size_t>(mode - 1)] = static_cast<unsigned>(n);
    const RadicalScalar c = ctx.zeta_pow(-n * (n + 1) / 2) * inv_sqrt_q_factorial(ctx, n);
    return GrassmannPolynomial::monomial(ctx, m, c);
}

/// Coherent bra coefficient right of <n|: q^{n(n+1)/2} xibar_mode^n / sqrt([n]_q!)
/// (per-component scalar dagger + xi -> xibar of the ket).
inline GrassmannPolynomial coherent_bra_coefficient(const QContext& ctx, long n, int d, int mode) {
    GrassmannMonomial m(d);
    m.xibar[static_cast<std::size_t>(mode - 1)] = static_cast<unsigned>(n);
    const RadicalScalar c = ctx.zeta_pow(n * (n + 1) / 2) * inv_sqrt_q_factorial(ctx, n);
    return GrassmannPolynomial::monomial(ctx, m, c);
}

inline GradedState coherent_state_closed(const QContext& ctx, int d = 1, int mode = 1) {
    require_non_degenerate(ctx, "coherent_state");
    GradedState s = GradedState::zero(GradedState::Kind::Ket, ctx, d);
    for (long n = 0; n < ctx.k(); ++n)
        s.coeffs[static_cast<std::size_t>(n)] = coherent_ket_coefficient(ctx, n, d, mode);
    return s;
}

inline GradedState coherent_bra(const QContext& ctx, int d = 1, int mode = 1) {
    require_non_degenerate(ctx, "coherent_bra");
    GradedState s = GradedState::zero(GradedState::Kind::Bra, ctx, d);
    for (long n = 0; n < ctx.k(); ++n)
        s.coeffs[static_cast<std::size_t>(n)] = coherent_bra_coefficient(ctx, n, d, mode);
    return s;
}

/// Applies each a+^r q^{sN} a^t |0> = delta_{t,0} sqrt([r]_q!) |r> term of a
/// mixed polynomial to the vacuum.
inline GradedState apply_to_vacuum(const MixedPolynomial& p) {
    const QContext& ctx = p.context();
    GradedState s = GradedState::zero(GradedState::Kind::Ket, ctx, 1);
    for (const auto& [key, c] : p.terms()) {
        if (key.oscillator.a_pow != 0) continue;
        const long r = key.oscillator.ad_pow;
        const RadicalScalar amp = c * sqrt_q_factorial(ctx, r);
        s.coeffs[static_cast<std::size_t>(r)].add_term(key.grassmann, amp);
    }
    return s;
}

/// exp_q(a+ xi)|0> expanded term by term through the mixed rewriting engine.
inline GradedState coherent_state_expanded(const QContext& ctx) {
    require_non_degenerate(ctx, "coherent_state");
    MixedPolynomial sum(ctx);
    for (long n = 0; n < ctx.k(); ++n) {
        std::vector<MixedLetter> w;
        for (long i = 0; i < n; ++i) {
            w.push_back(MixedLetter::Ad);
            w.push_back(MixedLetter::Xi);
        }
        sum = sum + mixed_normal_order(w, RadicalScalar(ctx.q_factorial(n).inverse()), ctx);
    }
    return apply_to_vacuum(sum);
}

/// |xi>_k with the closed-form coefficients, cross-checked against the
/// q-exponential expansion.
inline GradedState coherent_state(const QContext& ctx) {
    const GradedState closed = coherent_state_closed(ctx);
    if (closed != coherent_state_expanded(ctx))
        throw error("coherent_state: closed form and exp_q expansion disagree");
    return closed;
}

/// a acting on a ket: commutes a through each coefficient
/// (a xi^i xibar^j = q^{i-j} xi^i xibar^j a) and applies a|n> = r_n |n-1>.
inline GradedState annihilate(const GradedState& state) {
    if (state.kind != GradedState::Kind::Ket) throw error("annihilate: ket states only");
    const QContext& ctx = state.ctx;
    GradedState out = GradedState::zero(GradedState::Kind::Ket, ctx, state.d);
    for (long n = 1; n < ctx.k(); ++n) {
        const RadicalScalar rn = RadicalScalar::radical(ctx, n);
        for (const auto& [m, c] : state.coeffs[static_cast<std::size_t>(n)].terms()) {
            long e = 0;
            for (unsigned x : m.xi) e += static_cast<long>(x);
            for (unsigned x : m.xibar) e -= static_cast<long>(x);
            out.coeffs[static_cast<std::size_t>(n - 1)].add_term(m, ctx.zeta_pow(e) * (c * rn));
        }
    }
    return out;
}

/// Prepends a Grassmann polynomial to every coefficient of a ket.
inline GradedState left_multiply(const GrassmannPolynomial& g, const GradedState& state) {
    if (state.kind != GradedState::Kind::Ket) throw error("left_multiply: ket states only");
    GradedState out = GradedState::zero(GradedState::Kind::Ket, state.ctx, state.d);
    for (std::size_t n = 0; n < state.coeffs.size(); ++n) out.coeffs[n] = multiply(g, state.coeffs[n]);
    return out;
}

// ---------------------------------------------------------------------------
// Overlap <xi_2 | xi_1> in the two-label algebra (mode 1 = ket, mode 2 = bra).

/// Route (i): direct bra/ket contraction over the orthonormal Fock basis.
inline GrassmannPolynomial overlap_direct(const QContext& ctx) {
    require_non_degenerate(ctx, "overlap");
    GrassmannPolynomial acc(ctx, 2);
    for (long n = 0; n < ctx.k(); ++n)
        acc = acc + multiply(coherent_bra_coefficient(ctx, n, 2, 2), coherent_ket_coefficient(ctx, n, 2, 1));
    return acc;
}

namespace detail {
inline GrassmannPolynomial xibar2_xi1_power(const QContext& ctx, long n, RadicalScalar coeff) {
    std::vector<Generator> w;
    for (long i = 0; i < n; ++i) {
        w.push_back({GenKind::XiBar, 2});
        w.push_back({GenKind::Xi, 1});
    }
    return normal_order(w, std::move(coeff), ctx, 2);
}
}  // namespace detail

/// Route (ii): sum of q^{n(n-1)/2} (xibar_2 xi_1)^n / [n]_q!.
inline GrassmannPolynomial overlap_reordered(const QContext& ctx) {
    require_non_degenerate(ctx, "overlap");
    GrassmannPolynomial acc(ctx, 2);
    for (long n = 0; n < ctx.k(); ++n) {
        const RadicalScalar c = ctx.zeta_pow(n * (n - 1) / 2) * RadicalScalar(ctx.q_factorial(n).inverse());
        acc = acc + detail::xibar2_xi1_power(ctx, n, c);
    }
    return acc;
}

/// Route (iii): the truncated q-exponential E_{qbar^2}(xibar_2 xi_1) with box
/// factorials {n}_{qbar^2}!.
inline GrassmannPolynomial overlap_qexp(const QContext& ctx) {
    require_non_degenerate(ctx, "overlap");
    GrassmannPolynomial acc(ctx, 2);
    for (long n = 0; n < ctx.k(); ++n) {
        const RadicalScalar c{ctx.box_factorial(n, -2).inverse()};
        acc = acc + detail::xibar2_xi1_power(ctx, n, c);
    }
    return acc;
}

/// All three computations, asserted exactly equal.
inline GrassmannPolynomial overlap(const QContext& ctx) {
    const GrassmannPolynomial direct = overlap_direct(ctx);
    if (direct != overlap_reordered(ctx)) throw error("overlap: direct and reordered forms disagree");
    if (direct != overlap_qexp(ctx)) throw error("overlap: direct and E_{qbar^2} forms disagree");
    return direct;
}

}  // namespace qgrass
