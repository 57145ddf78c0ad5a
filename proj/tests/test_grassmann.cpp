#include "testutil.hpp"

using namespace qgrass;

namespace {

GrassmannPolynomial word_poly(const QContext& ctx, int d, std::vector<Generator> w) {
    return normal_order(w, RadicalScalar(ctx.one()), ctx, d);
}

GrassmannMonomial mono1(int xi, int xibar) {
    GrassmannMonomial m(1);
    m.xi[0] = static_cast<unsigned>(xi);
    m.xibar[0] = static_cast<unsigned>(xibar);
    return m;
}

}  // namespace

TEST_CASE("normal ordering follows the q-commutation relations") {
    QContext c3(3);
    SECTION("cross-mode swap") {
        const GrassmannPolynomial p = word_poly(c3, 2, {{GenKind::Xi, 2}, {GenKind::Xi, 1}});
        GrassmannMonomial m(2);
        m.xi = {1, 1};
        REQUIRE(p.coefficient(m) == RadicalScalar(c3.zeta_pow(-1)));  // xi_2 xi_1 = qbar xi_1 xi_2
    }
    SECTION("same-mode alternating word") {
        // xibar xi xibar xi == q^3 xi^2 xibar^2 canonically, for any k
        for (long k : {3L, 5L, 7L}) {
            QContext c(k);
            const GrassmannPolynomial p = word_poly(
                c, 1, {{GenKind::XiBar, 1}, {GenKind::Xi, 1}, {GenKind::XiBar, 1}, {GenKind::Xi, 1}});
            REQUIRE(p.coefficient(mono1(2, 2)) == RadicalScalar(c.zeta_pow(3)));
        }
    }
    SECTION("nilpotency") {
        std::vector<Generator> w(3, {GenKind::Xi, 1});
        REQUIRE(word_poly(c3, 1, w).is_zero());
    }
    SECTION("differentials rejected") {
        std::vector<Generator> w{{GenKind::DXi, 1}};
        REQUIRE_THROWS_AS(normal_order(w, RadicalScalar(c3.one()), c3, 1), error);
    }
}

TEST_CASE("rewriting is phase-only") {
    std::mt19937 rng(23);
    for (long k : {2L, 3L, 5L}) {
        QContext c(k);
        for (int i = 0; i < 300; ++i) {
            const auto w = testutil::random_variable_word(2, 6, rng);
            const GrassmannPolynomial p = normal_order(w, RadicalScalar(c.one()), c, 2);
            REQUIRE(p.terms().size() <= 1);
            for (const auto& [m, coeff] : p.terms()) {
                REQUIRE(coeff.radical_bits() == 0);
                // a pure power of zeta: unit modulus exactly
                REQUIRE(coeff.body() * coeff.body().conjugate() == c.one());
                const auto phase = coeff.body().as_phase_multiple();
                REQUIRE(phase.has_value());
                REQUIRE((phase->first == 1 || phase->first == -1));
            }
        }
    }
}

TEST_CASE("confluence under single relation applications") {
    std::mt19937 rng(29);
    for (long k : {2L, 3L, 5L, 7L}) {
        QContext c(k);
        std::uniform_int_distribution<std::size_t> pick(0, 100);
        for (int i = 0; i < 1000; ++i) {
            auto w = testutil::random_variable_word(2, 6, rng);
            if (w.size() < 2) continue;
            const std::size_t at = pick(rng) % (w.size() - 1);
            // one relation application: w = lambda * w', where w' swaps at position `at`
            auto swapped = w;
            std::swap(swapped[at], swapped[at + 1]);
            const CyclotomicNumber lambda = swap_phase(c, w[at], w[at + 1]);
            const GrassmannPolynomial direct = normal_order(w, RadicalScalar(c.one()), c, 2);
            const GrassmannPolynomial rewritten = normal_order(swapped, RadicalScalar(lambda), c, 2);
            REQUIRE(direct == rewritten);
        }
    }
}

TEST_CASE("grading") {
    QContext c5(5);
    REQUIRE(grade(mono1(1, 0), c5) == 1);
    REQUIRE(grade(mono1(1, 1), c5) == 0);
    REQUIRE(grade(GrassmannMonomial(1), c5) == 0);

    // additivity on nonzero products
    std::mt19937 rng(31);
    for (int i = 0; i < 200; ++i) {
        const auto w1 = testutil::random_variable_word(1, 3, rng);
        const auto w2 = testutil::random_variable_word(1, 3, rng);
        auto w = w1;
        w.insert(w.end(), w2.begin(), w2.end());
        const GrassmannPolynomial p1 = normal_order(w1, RadicalScalar(c5.one()), c5, 1);
        const GrassmannPolynomial p2 = normal_order(w2, RadicalScalar(c5.one()), c5, 1);
        const GrassmannPolynomial p = normal_order(w, RadicalScalar(c5.one()), c5, 1);
        if (p.is_zero() || p1.is_zero() || p2.is_zero()) continue;
        const long g1 = grade(p1.terms().begin()->first, c5);
        const long g2 = grade(p2.terms().begin()->first, c5);
        const long g = grade(p.terms().begin()->first, c5);
        REQUIRE(g == (g1 + g2) % c5.k());
    }
}

TEST_CASE("same-mode reorder lemma in xibar-first form") {
    for (long k = 2; k <= 11; ++k) {
        QContext c(k);
        for (long n = 1; n < k; ++n) {
            std::vector<Generator> w;
            for (long i = 0; i < n; ++i) {
                w.push_back({GenKind::XiBar, 1});
                w.push_back({GenKind::Xi, 1});
            }
            auto [sorted, coeff] = reorder_word(w, RadicalScalar(c.one()), c, TargetOrder::XiBarFirst);
            REQUIRE(coeff == RadicalScalar(c.zeta_pow(-n * (n - 1) / 2)));
            for (std::size_t i = 0; i < static_cast<std::size_t>(n); ++i)
                REQUIRE(sorted[i].kind == GenKind::XiBar);
        }
    }
}

TEST_CASE("dagger") {
    QContext c3(3);
    SECTION("monomials swap sectors") {
        REQUIRE(word_poly(c3, 1, {{GenKind::Xi, 1}, {GenKind::Xi, 1}}).dagger() ==
                word_poly(c3, 1, {{GenKind::XiBar, 1}, {GenKind::XiBar, 1}}));
    }
    SECTION("two modes pick up the bar-relation phase") {
        // (xi_1 xi_2)^dagger = xibar_2 xibar_1 = qbar xibar_1 xibar_2
        const GrassmannPolynomial lhs = word_poly(c3, 2, {{GenKind::Xi, 1}, {GenKind::Xi, 2}}).dagger();
        const GrassmannPolynomial rhs =
            word_poly(c3, 2, {{GenKind::XiBar, 2}, {GenKind::XiBar, 1}});
        REQUIRE(lhs == rhs);
        GrassmannMonomial m(2);
        m.xibar = {1, 1};
        REQUIRE(rhs.coefficient(m) == RadicalScalar(c3.zeta_pow(-1)));
    }
    SECTION("involution and antilinearity") {
        std::mt19937 rng(37);
        for (int i = 0; i < 100; ++i) {
            GrassmannPolynomial p(c3, 1);
            for (int t = 0; t < 3; ++t) {
                const auto w = testutil::random_variable_word(1, 4, rng);
                p = p + normal_order(w, RadicalScalar(testutil::random_cyclotomic(c3, rng)), c3, 1);
            }
            REQUIRE(p.dagger().dagger() == p);
        }
    }
    SECTION("antihomomorphism on pure sectors") {
        std::mt19937 rng(41);
        QContext c5(5);
        for (int i = 0; i < 100; ++i) {
            std::uniform_int_distribution<int> e(0, 4);
            GrassmannPolynomial p1(c5, 1), p2(c5, 1);
            p1.add_term(mono1(e(rng), 0), RadicalScalar(testutil::random_cyclotomic(c5, rng)));
            p2.add_term(mono1(e(rng), 0), RadicalScalar(testutil::random_cyclotomic(c5, rng)));
            REQUIRE(multiply(p1, p2).dagger() == multiply(p2.dagger(), p1.dagger()));
            GrassmannPolynomial b1(c5, 1), b2(c5, 1);
            b1.add_term(mono1(0, e(rng)), RadicalScalar(testutil::random_cyclotomic(c5, rng)));
            b2.add_term(mono1(0, e(rng)), RadicalScalar(testutil::random_cyclotomic(c5, rng)));
            REQUIRE(multiply(b1, b2).dagger() == multiply(b2.dagger(), b1.dagger()));
        }
    }
}

TEST_CASE("products and substitution") {
    QContext c3(3);
    SECTION("(1 + xi)(1 + xibar)") {
        GrassmannPolynomial a = GrassmannPolynomial::one(c3, 1);
        a.add_term(mono1(1, 0), RadicalScalar(c3.one()));
        GrassmannPolynomial b = GrassmannPolynomial::one(c3, 1);
        b.add_term(mono1(0, 1), RadicalScalar(c3.one()));
        GrassmannPolynomial expected = GrassmannPolynomial::one(c3, 1);
        expected.add_term(mono1(1, 0), RadicalScalar(c3.one()));
        expected.add_term(mono1(0, 1), RadicalScalar(c3.one()));
        expected.add_term(mono1(1, 1), RadicalScalar(c3.one()));
        REQUIRE(multiply(a, b) == expected);
    }
    SECTION("xibar times xi") {
        const GrassmannPolynomial lhs = multiply(
            GrassmannPolynomial::monomial(c3, mono1(0, 1), RadicalScalar(c3.one())),
            GrassmannPolynomial::monomial(c3, mono1(1, 0), RadicalScalar(c3.one())));
        REQUIRE(lhs.coefficient(mono1(1, 1)) == RadicalScalar(c3.q()));
    }
    SECTION("scale_substitute") {
        const GrassmannPolynomial p =
            GrassmannPolynomial::monomial(c3, mono1(0, 2), RadicalScalar(c3.one()));
        REQUIRE(p.scale_substitute(1).coefficient(mono1(0, 2)) == RadicalScalar(c3.zeta_pow(2)));
    }
}
