#include "testutil.hpp"

#include <cmath>
#include <complex>

using namespace qgrass;

namespace {

// Independent long division of integer-coefficient polynomials, used as the
// oracle for the cyclotomic polynomials.
std::vector<long> divide_exact(std::vector<long> num, const std::vector<long>& den) {
    std::vector<long> quot(num.size() - den.size() + 1, 0);
    for (std::size_t d = quot.size(); d-- > 0;) {
        const long c = num[d + den.size() - 1] / den.back();
        quot[d] = c;
        for (std::size_t i = 0; i < den.size(); ++i) num[d + i] -= c * den[i];
    }
    for (long r : num) REQUIRE(r == 0);
    return quot;
}

Poly to_poly(const std::vector<long>& v) {
    Poly p;
    for (long c : v) p.push_back(Rational(c));
    poly_trim(p);
    return p;
}

}  // namespace

TEST_CASE("rationals are canonical") {
    REQUIRE(Rational(6, 4) == Rational(3, 2));
    const Rational negated = Rational(1) / Rational(-2);
    REQUIRE(rat_den(negated) == 2);
    REQUIRE(rat_num(negated) == -1);
    REQUIRE(rat_num(Rational(0)) == 0);
    REQUIRE(rat_den(Rational(0)) == 1);
    const BigInt g = boost::multiprecision::gcd(abs(rat_num(Rational(84, 126))), rat_den(Rational(84, 126)));
    REQUIRE(g == 1);
}

TEST_CASE("cyclotomic polynomials") {
    REQUIRE(cyclotomic_polynomial(2) == to_poly({1, 1}));
    // oracle: (x^3 - 1)/(x - 1)
    REQUIRE(cyclotomic_polynomial(3) == to_poly(divide_exact({-1, 0, 0, 1}, {-1, 1})));
    REQUIRE(cyclotomic_polynomial(3) == to_poly({1, 1, 1}));
    // oracle: (x^4 - 1)/((x - 1)(x + 1))
    REQUIRE(cyclotomic_polynomial(4) == to_poly(divide_exact(divide_exact({-1, 0, 0, 0, 1}, {-1, 1}), {1, 1})));
    REQUIRE(cyclotomic_polynomial(4) == to_poly({1, 0, 1}));

    for (long k = 1; k <= 12; ++k) {
        const Poly phi = cyclotomic_polynomial(k);
        REQUIRE(phi.back() == 1);
        // product over divisors reassembles x^k - 1
        Poly prod{Rational(1)};
        for (long d = 1; d <= k; ++d)
            if (k % d == 0) prod = poly_mul(prod, cyclotomic_polynomial(d));
        REQUIRE(prod == poly_xk_minus_one(k));
    }
}

TEST_CASE("cyclotomic field operations") {
    QContext ctx(3);
    const CyclotomicNumber z = ctx.zeta_pow(1);
    REQUIRE((ctx.one() + z + z * z).is_zero());  // 1 + q + q^2 = 0
    REQUIRE(z.conjugate() == ctx.zeta_pow(2));
    REQUIRE(z.inverse() == ctx.zeta_pow(2));
    REQUIRE(z * z.inverse() == ctx.one());
    REQUIRE_THROWS_AS(ctx.zero().inverse(), division_by_zero);

    for (long k = 2; k <= 12; ++k) {
        QContext c(k);
        CyclotomicNumber sum = c.zero();
        for (long j = 0; j < k; ++j) sum += c.zeta_pow(j);
        REQUIRE(sum.is_zero());
    }

    std::mt19937 rng(7);
    for (long k : {3L, 5L, 7L}) {
        QContext c(k);
        for (int i = 0; i < 100; ++i) {
            const CyclotomicNumber a = testutil::random_cyclotomic(c, rng);
            const CyclotomicNumber b = testutil::random_cyclotomic(c, rng);
            const CyclotomicNumber d = testutil::random_cyclotomic(c, rng);
            REQUIRE((a * b) * d == a * (b * d));
            REQUIRE(a * b == b * a);
            if (!a.is_zero()) REQUIRE(a * a.inverse() == c.one());
            REQUIRE((a * b).conjugate() == a.conjugate() * b.conjugate());
        }
    }
}

TEST_CASE("q-numbers") {
    QContext c3(3);
    REQUIRE(c3.q_number(0).is_zero());
    REQUIRE(c3.q_number(1) == c3.one());
    REQUIRE(c3.q_number(2) == c3.integer(-1));
    // float oracle: sin(4 pi / 3) / sin(2 pi / 3) = -1
    const double oracle = std::sin(4.0 * std::numbers::pi / 3.0) / std::sin(2.0 * std::numbers::pi / 3.0);
    REQUIRE(std::abs(c3.q_number(2).numeric().real() - oracle) < 1e-12);

    for (long k = 2; k <= 12; ++k) {
        QContext c(k);
        for (long n = 0; n < k; ++n) {
            const CyclotomicNumber qn = c.q_number(n);
            REQUIRE(qn == qn.conjugate());  // real
            const double expected =
                (k == 2) ? static_cast<double>(n % 2)
                         : std::sin(2.0 * std::numbers::pi * n / k) / std::sin(2.0 * std::numbers::pi / k);
            REQUIRE(std::abs(qn.numeric().real() - expected) < 1e-10);
            REQUIRE(std::abs(qn.numeric().imag()) < 1e-10);
        }
    }
}

TEST_CASE("context preconditions") {
    REQUIRE_THROWS_AS(QContext(1), error);
    REQUIRE_THROWS_AS(QContext(0), error);
    QContext c3(3);
    REQUIRE_THROWS_AS(RadicalScalar::radical(c3, 0), error);
    REQUIRE_THROWS_AS(RadicalScalar::radical(c3, 3), error);
    REQUIRE_THROWS_AS(c3.q_factorial(3), error);
}

TEST_CASE("degeneracy detection") {
    for (long k = 2; k <= 12; ++k) {
        QContext c(k);
        REQUIRE(c.degenerate() == (k % 2 == 0 && k >= 4));
        for (long n = 1; n < k; ++n) {
            const bool zero = c.q_number(n).is_zero();
            REQUIRE(zero == (c.degenerate() && n == k / 2));
        }
    }
}

TEST_CASE("q-factorials") {
    QContext c3(3);
    REQUIRE(c3.q_factorial(0) == c3.one());
    REQUIRE(c3.q_factorial(2) == c3.integer(-1));
    QContext c5(5);
    REQUIRE(c5.q_factorial(2) == c5.zeta_pow(1) + c5.zeta_pow(4));  // = [2]_q = q + qbar
}

TEST_CASE("box functions") {
    QContext c3(3);
    for (long m : {1L, 2L})
        REQUIRE(c3.box_number(1, m) == c3.one());
    REQUIRE(c3.box_number(2, 2) == c3.one() + c3.zeta_pow(2));  // {2}_{q^2} = 1 + q^2

    QContext c2(2);
    REQUIRE(c2.box_number(0, 2).is_zero());  // Q = q^2 = 1, geometric-sum value
    REQUIRE(c2.box_number(1, 2) == c2.one());
    REQUIRE_THROWS_AS(c2.box_number(2, 2), degenerate_parameter);
}

TEST_CASE("box identities") {
    QContext c3(3);
    // [2]_q = -1 equals qbar (1 + q^2) = q^2 + q^4 = q^2 + q
    REQUIRE(c3.zeta_pow(-1) * (c3.one() + c3.zeta_pow(2)) == c3.integer(-1));
    REQUIRE(c3.verify_box_identities(2));
    for (long k : {2L, 3L, 5L, 7L, 9L, 11L}) {
        QContext c(k);
        for (long n = 0; n < k; ++n) REQUIRE(c.verify_box_identities(n));
    }
    QContext c6(6);
    REQUIRE(c6.verify_box_identities(0));
    REQUIRE(c6.verify_box_identities(1));
    REQUIRE_THROWS_AS(c6.verify_box_identities(2), degenerate_parameter);
}

TEST_CASE("radical scalars") {
    QContext c3(3);
    const RadicalScalar r2 = RadicalScalar::radical(c3, 2);
    SECTION("fold rule") {
        REQUIRE(r2 * r2 == RadicalScalar(c3.integer(-1)));
        REQUIRE((r2 * r2).radical_bits() == 0);
    }
    SECTION("dagger conjugates the body and fixes radicals") {
        const RadicalScalar x = RadicalScalar(c3.q()) * r2;
        REQUIRE(x.dagger() == RadicalScalar(c3.zeta_pow(2)) * r2);
        REQUIRE(x.dagger().dagger() == x);
    }
    SECTION("r_1 is 1") {
        REQUIRE(RadicalScalar::radical(c3, 1) == RadicalScalar(c3.one()));
        REQUIRE(RadicalScalar::radical(c3, 1).inverse() == RadicalScalar::radical(c3, 1));
    }
    SECTION("inverse") {
        REQUIRE(r2.inverse() * r2 == RadicalScalar(c3.one()));
        REQUIRE_THROWS_AS(RadicalScalar(c3.zero()).inverse(), division_by_zero);
        QContext c4(4);
        try {
            RadicalScalar::radical(c4, 2).inverse();
            FAIL("expected degenerate_parameter");
        } catch (const degenerate_parameter& e) {
            REQUIRE(std::string(e.what()).find("[2]_q = 0") != std::string::npos);
        }
    }
    SECTION("incompatible sums") {
        REQUIRE_THROWS_AS(RadicalScalar(c3.one()) + r2, incompatible_radicals);
        REQUIRE(RadicalScalar(c3.zero()) + r2 == r2);
        REQUIRE(r2 - r2 == RadicalScalar(c3.zero()));
        REQUIRE((r2 - r2).radical_bits() == 0);
    }
}

TEST_CASE("radical multiplication is associative and commutative") {
    std::mt19937 rng(11);
    for (long k : {2L, 3L, 5L, 7L}) {
        QContext c(k);
        for (int i = 0; i < 1000; ++i) {
            const RadicalScalar a = testutil::random_radical_scalar(c, rng);
            const RadicalScalar b = testutil::random_radical_scalar(c, rng);
            const RadicalScalar d = testutil::random_radical_scalar(c, rng);
            REQUIRE((a * b) * d == a * (b * d));
            REQUIRE(a * b == b * a);
        }
    }
}

TEST_CASE("numeric embedding") {
    QContext c3(3);
    const std::complex<double> q = RadicalScalar(c3.q()).numeric();
    REQUIRE(std::abs(q - std::complex<double>(-0.5, std::sqrt(3.0) / 2.0)) < 1e-12);
    // r_2 = sqrt([2]_q) = sqrt(-1) -> i on the principal branch
    REQUIRE(std::abs(RadicalScalar::radical(c3, 2).numeric() - std::complex<double>(0.0, 1.0)) < 1e-12);
    REQUIRE(std::abs(RadicalScalar(c3.zero()).numeric()) == 0.0);

    // multiplicativity on pairs whose radical monomials match (even total exponents)
    std::mt19937 rng(13);
    for (long k : {3L, 5L, 7L}) {
        QContext c(k);
        for (int i = 0; i < 200; ++i) {
            const std::uint64_t mask = testutil::random_radical_mask(c, rng);
            const RadicalScalar a(testutil::random_cyclotomic(c, rng), mask);
            const RadicalScalar b(testutil::random_cyclotomic(c, rng), mask);
            REQUIRE(std::abs((a * b).numeric() - a.numeric() * b.numeric()) < 1e-10);
            const RadicalScalar sum_ok = a + b;
            REQUIRE(std::abs(sum_ok.numeric() - (a.numeric() + b.numeric())) < 1e-10);
        }
    }
}
