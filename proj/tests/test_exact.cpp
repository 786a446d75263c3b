#include "apg/exact/mat2.hpp"
#include "apg/exact/pscaled.hpp"
#include "apg/exact/quad.hpp"
#include "apg/exact/rational.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <cstdint>
#include <random>

using namespace apg;

namespace {

Rational rnd_rational(std::mt19937_64& rng, int num_span = 40, int den_max = 12) {
    long long n = static_cast<long long>(rng() % (2 * num_span + 1)) - num_span;
    long long d = static_cast<long long>(rng() % den_max) + 1;
    return Rational(BigInt(n), BigInt(d));
}

QuadScalar rnd_quad(std::mt19937_64& rng, long long d) { return QuadScalar(rnd_rational(rng), rnd_rational(rng), d); }

PScaled rnd_pscaled(std::mt19937_64& rng, long long p) {
    long long m = static_cast<long long>(rng() % 201) - 100;
    int k = static_cast<int>(rng() % 7) - 3;
    return PScaled(BigInt(m), k, p);
}

// Independent valuation oracle on plain integers.
int oracle_valuation(long long num, long long den, long long p) {
    int v = 0;
    while (num % p == 0) num /= p, ++v;
    while (den % p == 0) den /= p, --v;
    return v;
}

// Float oracle for the Pisot property: integral minimal polynomial, one root
// above 1, the other strictly inside the unit interval.
bool oracle_pisot(const QuadScalar& x) {
    if (x.is_rational()) return false;
    Rational tr = x.trace(), nm = x.norm();
    if (!tr.is_integer() || !nm.is_integer()) return false;
    double t = tr.to_double(), n = nm.to_double();
    double disc = std::sqrt(t * t - 4 * n);
    double r1 = (t + disc) / 2, r2 = (t - disc) / 2;
    double v = x.to_double();
    double other = std::fabs(v - r1) < std::fabs(v - r2) ? r2 : r1;
    return v > 1 && std::fabs(other) < 1;
}

}  // namespace

TEST(Rational, NormalizesToLowestTerms) {
    Rational r(BigInt(6), BigInt(-8));
    EXPECT_EQ(r.num(), -3);
    EXPECT_EQ(r.den(), 4);
    EXPECT_EQ(Rational::parse("-3/4"), r);
    EXPECT_EQ(r.str(), "-3/4");
    EXPECT_THROW(Rational::parse("1/0"), std::invalid_argument);
    EXPECT_THROW(Rational::parse("1/x"), std::invalid_argument);
}

TEST(Rational, FloorAndCeil) {
    EXPECT_EQ(Rational(BigInt(-7), BigInt(2)).floor(), -4);
    EXPECT_EQ(Rational(BigInt(7), BigInt(2)).floor(), 3);
    EXPECT_EQ(Rational(BigInt(-7), BigInt(2)).ceil(), -3);
    EXPECT_EQ(Rational(4).floor(), 4);
}

TEST(Rational, AdditionIsExact) {
    std::mt19937_64 rng(1);
    for (int i = 0; i < 500; ++i) {
        Rational x = rnd_rational(rng), y = rnd_rational(rng);
        EXPECT_EQ((x + y) - y, x);
        EXPECT_EQ(((x + y) - y).str(), x.str());
    }
}

TEST(GaloisConj, Examples) {
    EXPECT_EQ(galois_conj(QuadScalar(5)), QuadScalar(5));
    // substitute sqrt5 -> -sqrt5 in (1 + sqrt5)/2
    EXPECT_EQ(galois_conj(QuadScalar::golden()), QuadScalar(Rational(1, 2), Rational(-1, 2), 5));
    EXPECT_EQ(galois_conj(QuadScalar::rational(3, 2)), QuadScalar::rational(3, 2));
}

TEST(GaloisConj, InvolutiveRingHomomorphism) {
    std::mt19937_64 rng(2);
    for (long long d : {2, 3, 5, 13}) {
        for (int i = 0; i < 200; ++i) {
            QuadScalar x = rnd_quad(rng, d), y = rnd_quad(rng, d);
            EXPECT_EQ(galois_conj(galois_conj(x)), x);
            EXPECT_EQ(galois_conj(x * y), galois_conj(x) * galois_conj(y));
            EXPECT_EQ(galois_conj(x + y), galois_conj(x) + galois_conj(y));
            EXPECT_EQ((x + y) - y, x);
        }
    }
}

TEST(QuadScalar, ExactSignMatchesFloatAwayFromZero) {
    std::mt19937_64 rng(3);
    for (int i = 0; i < 1000; ++i) {
        QuadScalar x = rnd_quad(rng, 7);
        double v = x.to_double();
        if (std::fabs(v) < 1e-9) continue;
        EXPECT_EQ(x.sign(), v > 0 ? 1 : -1) << x.str();
    }
    // a^2 = d b^2 cannot happen for square-free d; tight cancellation still decided
    QuadScalar near(Rational(BigInt(9801), BigInt(1)), Rational(BigInt(-4366)), 5);  // 9801 - 4366 sqrt5 ~ 5.1e-5
    EXPECT_EQ(near.sign(), 1);
}

TEST(QuadScalar, ParseRoundTrip) {
    std::mt19937_64 rng(4);
    for (int i = 0; i < 200; ++i) {
        QuadScalar x = rnd_quad(rng, 5);
        EXPECT_EQ(QuadScalar::parse(x.str()), x) << x.str();
    }
    EXPECT_EQ(QuadScalar::parse("1/2+1/2*sqrt(5)"), QuadScalar::golden());
    EXPECT_EQ(QuadScalar::parse("-1/2-3*sqrt(2)"), QuadScalar(Rational(-1, 2), Rational(-3), 2));
    EXPECT_EQ(QuadScalar::parse("7", 3), QuadScalar::rational(7, 3));
    EXPECT_THROW(QuadScalar::parse("1+2*sqrt(4)"), std::invalid_argument);
    EXPECT_THROW(QuadScalar::golden() + QuadScalar::root(2), std::invalid_argument);
}

TEST(QuadScalar, DivisionInvertsMultiplication) {
    std::mt19937_64 rng(5);
    for (int i = 0; i < 200; ++i) {
        QuadScalar x = rnd_quad(rng, 3), y = rnd_quad(rng, 3);
        if (y.is_zero()) continue;
        EXPECT_EQ((x * y) / y, x);
    }
}

TEST(IsPisot, Examples) {
    EXPECT_TRUE(is_pisot(QuadScalar::golden()));
    EXPECT_FALSE(is_pisot(QuadScalar::root(2)));
    EXPECT_TRUE(is_pisot(QuadScalar(Rational(1), Rational(1), 2)));
    EXPECT_FALSE(is_pisot(QuadScalar::rational(2, 5)));                       // rational integer
    EXPECT_FALSE(is_pisot(QuadScalar(Rational(1, 3), Rational(1, 3), 5)));    // not an algebraic integer
    EXPECT_FALSE(is_pisot(QuadScalar(Rational(-1, 2), Rational(1, 2), 5)));   // 0.618 < 1
}

TEST(IsPisot, AgreesWithFloatRootOracle) {
    std::mt19937_64 rng(6);
    int positives = 0;
    for (long long d : {2, 3, 5, 13}) {
        for (int i = 0; i < 3000; ++i) {
            long long m = static_cast<long long>(rng() % 21) - 10, n = static_cast<long long>(rng() % 11) - 5;
            QuadScalar x = d % 4 == 1 ? QuadScalar(Rational(BigInt(m), BigInt(2)), Rational(BigInt(n), BigInt(2)), d)
                                      : QuadScalar(Rational(m), Rational(n), d);
            double c = x.conj().to_double(), v = x.to_double();
            if (std::fabs(std::fabs(c) - 1) < 1e-9 || std::fabs(v - 1) < 1e-9) continue;
            bool p = is_pisot(x);
            positives += p;
            EXPECT_EQ(p, oracle_pisot(x)) << x.str();
        }
    }
    EXPECT_GT(positives, 0);
}

TEST(AlgebraicInteger, HalfIntegersOnlyForOneModFour) {
    EXPECT_TRUE(QuadScalar::golden().is_algebraic_integer());
    EXPECT_FALSE(QuadScalar(Rational(1, 2), Rational(1, 2), 3).is_algebraic_integer());
    EXPECT_TRUE(QuadScalar(Rational(1, 2), Rational(3, 2), 13).is_algebraic_integer());
}

TEST(PadicNorm, Examples) {
    EXPECT_EQ(padic_norm(PScaled(2)), Rational(0));
    EXPECT_EQ(padic_norm(PScaled::from_rational(Rational(3, 4), 2)), Rational(4));
    EXPECT_EQ(padic_norm(PScaled::integer(8, 2)), Rational(1, 8));
    EXPECT_EQ(padic_norm(PScaled::integer(-27, 3)), Rational(1, 27));
}

TEST(PadicNorm, ValuationMatchesIntegerOracle) {
    std::mt19937_64 rng(7);
    for (long long p : {2, 3, 5}) {
        for (int i = 0; i < 300; ++i) {
            PScaled x = rnd_pscaled(rng, p);
            if (x.is_zero()) continue;
            Rational r = x.to_rational();
            EXPECT_EQ(x.valuation(), oracle_valuation(r.num().convert_to<long long>(), r.den().convert_to<long long>(), p));
        }
    }
}

TEST(PadicNorm, MultiplicativeAndUltrametric) {
    std::mt19937_64 rng(8);
    for (long long p : {2, 3, 7}) {
        for (int i = 0; i < 400; ++i) {
            PScaled x = rnd_pscaled(rng, p), y = rnd_pscaled(rng, p);
            EXPECT_EQ(padic_norm(x * y), padic_norm(x) * padic_norm(y));
            EXPECT_LE(padic_norm(x + y), std::max(padic_norm(x), padic_norm(y)));
            EXPECT_EQ((x + y) - y, x);
        }
    }
}

TEST(PScaled, ParseAndReject) {
    EXPECT_EQ(PScaled::parse("3/2^2", 2).to_rational(), Rational(3, 4));
    EXPECT_EQ(PScaled::parse("3/2^2", 2).str(), "3/2^2");
    EXPECT_EQ(PScaled::parse("5", 3).str(), "5");
    EXPECT_EQ(PScaled::parse("4/2^3", 2).str(), "1/2^1");
    EXPECT_THROW(PScaled::from_rational(Rational(1, 3), 2), std::invalid_argument);
    EXPECT_THROW(PScaled::parse("1/3^2", 2), std::invalid_argument);
    EXPECT_THROW(PScaled(4), std::invalid_argument);
    std::mt19937_64 rng(9);
    for (int i = 0; i < 100; ++i) {
        PScaled x = rnd_pscaled(rng, 3);
        EXPECT_EQ(PScaled::parse(x.str(), 3), x);
    }
}

TEST(Mat2, Examples) {
    using M = Mat2<Rational>;
    M I = M::identity_like(Rational());
    M A{Rational(2), Rational(3), Rational(1), Rational(2)};
    EXPECT_EQ(mat2_mul(I, A), A);
    M U{Rational(1), Rational(1), Rational(0), Rational(1)};
    EXPECT_EQ(mat2_inv(U), (M{Rational(1), Rational(-1), Rational(0), Rational(1)}));
    EXPECT_EQ(mat2_det(M{Rational(2), Rational(0), Rational(0), Rational(1, 2)}), Rational(1));
    EXPECT_THROW(mat2_inv(M{Rational(2), Rational(0), Rational(0), Rational(1)}), std::invalid_argument);
}

TEST(Mat2, DeterminantIsMultiplicativeAndInverseWorks) {
    std::mt19937_64 rng(10);
    for (int i = 0; i < 200; ++i) {
        Mat2<QuadScalar> A{rnd_quad(rng, 5), rnd_quad(rng, 5), rnd_quad(rng, 5), rnd_quad(rng, 5)};
        Mat2<QuadScalar> B{rnd_quad(rng, 5), rnd_quad(rng, 5), rnd_quad(rng, 5), rnd_quad(rng, 5)};
        EXPECT_EQ(mat2_det(A * B), mat2_det(A) * mat2_det(B));
    }
    for (int i = 0; i < 200; ++i) {
        PScaled a = rnd_pscaled(rng, 2), b = rnd_pscaled(rng, 2);
        PScaled one = PScaled::integer(1, 2);
        // unipotent times diagonal stays in SL2(Z[1/2])
        Mat2<PScaled> U{one, a, PScaled(2), one};
        Mat2<PScaled> L{one, PScaled(2), b, one};
        Mat2<PScaled> g = U * L;
        EXPECT_EQ(mat2_det(g), one);
        EXPECT_TRUE((g * mat2_inv(g)).is_identity());
    }
}

TEST(Mat2, ParseRoundTrip) {
    Mat2<PScaled> m{PScaled::integer(2, 2), PScaled(2), PScaled(2), PScaled(BigInt(1), 1, 2)};
    auto back = parse_mat2<PScaled>(m.str(), [](std::string_view s) { return PScaled::parse(s, 2); });
    EXPECT_EQ(back, m);
    EXPECT_THROW((parse_mat2<Rational>("[1,2],[3,4]", [](std::string_view s) { return Rational::parse(s); })),
                 std::invalid_argument);
}
