#include "apg/cutproject/model_set.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <set>

using namespace apg;

namespace {

PScaled dy(long long m, int k = 0, long long p = 2) { return PScaled(BigInt(m), k, p); }

QuadScalar q5(long long a2, long long b2) { return QuadScalar(Rational(BigInt(a2), BigInt(2)), Rational(BigInt(b2), BigInt(2)), 5); }

const QuadScalar phi = QuadScalar::golden();

// Independent oracle for the Fibonacci chain: enumerate a + b*phi over a box
// in floating point, keep the conjugate in the window (with a guard band
// resolved exactly), then sort.
std::vector<QuadScalar> fibonacci_oracle(long long range, const Rational& radius) {
    std::vector<QuadScalar> out;
    const long long N = 4 * range + 8;
    const double r = radius.to_double();
    for (long long a = -N; a <= N; ++a)
        for (long long b = -N; b <= N; ++b) {
            double x = a + b * 1.6180339887498949, xs = a - b * 0.6180339887498949;
            if (std::fabs(x) > range + 1e-6 || std::fabs(xs) > r + 1e-6) continue;
            QuadScalar v = QuadScalar::rational(Rational(a), 5) + QuadScalar::rational(Rational(b), 5) * phi;
            if (v.abs_le(Rational(range)) && v.conj().abs_le(radius)) out.push_back(v);
        }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

TEST(ZpScheme, UnitBallGivesIntegers) {
    auto m = generate_model_set(ZpScheme(2, 0), Rational(5));
    std::vector<PScaled> expect;
    for (long long k = -5; k <= 5; ++k) expect.push_back(PScaled::integer(k, 2));
    EXPECT_EQ(m.points.elements(), expect);
    EXPECT_TRUE(m.recheck());
}

TEST(ZpScheme, RadiusTwoGivesHalfIntegers) {
    auto m = generate_model_set(ZpScheme(2, 1), Rational(3));
    std::vector<PScaled> expect;
    for (long long k = -6; k <= 6; ++k) expect.push_back(PScaled::from_rational(Rational(BigInt(k), BigInt(2)), 2));
    EXPECT_EQ(m.points.elements(), expect);
}

TEST(ZpScheme, WindowIsSubgroupSoSetIsClosed) {
    for (int e : {-1, 0, 1, 2}) {
        auto m = generate_model_set(ZpScheme(3, e), Rational(20));
        for (const auto& x : m.points)
            for (const auto& y : m.points) {
                auto s = x + y;
                if (s.to_rational().abs() <= Rational(20)) EXPECT_TRUE(m.points.contains(s)) << s.str();
            }
    }
}

TEST(Fibonacci, MembershipSpotChecks) {
    auto m = generate_model_set(QuadraticScheme::fibonacci(Rational(1)), Rational(10));
    EXPECT_TRUE(m.points.contains(QuadScalar(5)));
    EXPECT_TRUE(m.points.contains(QuadScalar::rational(1, 5)));
    EXPECT_TRUE(m.points.contains(phi));
    EXPECT_TRUE(m.points.contains(phi * phi));
    EXPECT_FALSE(m.points.contains(QuadScalar::rational(2, 5)));
}

TEST(Fibonacci, MatchesBoxOracle) {
    for (long long R : {10, 25, 60}) {
        auto m = generate_model_set(QuadraticScheme::fibonacci(Rational(1)), Rational(R));
        EXPECT_EQ(m.points.elements(), fibonacci_oracle(R, Rational(1))) << R;
    }
    auto m = generate_model_set(QuadraticScheme::fibonacci(Rational(3, 2)), Rational(20));
    EXPECT_EQ(m.points.elements(), fibonacci_oracle(20, Rational(3, 2)));
}

TEST(Fibonacci, GapAlphabetIsSmall) {
    auto m = generate_model_set(QuadraticScheme::fibonacci(Rational(1)), Rational(100));
    auto gaps = gap_alphabet(m.points, Rational(50));
    EXPECT_LE(gaps.size(), 3u);
    EXPECT_NE(std::find(gaps.begin(), gaps.end(), phi), gaps.end());
}

TEST(QuadraticScheme, InternalMapIsHomomorphic) {
    QuadraticScheme s(13, RealInterval{Rational(2)});
    auto m = generate_model_set(s, Rational(12));
    for (const auto& x : m.points)
        for (const auto& y : m.points) {
            EXPECT_EQ(s.internal(x + y), s.internal(x) + s.internal(y));
            EXPECT_EQ(s.internal(x * y), s.internal(x) * s.internal(y));
        }
}

TEST(QuadraticScheme, MonotoneInWindow) {
    for (long long d : {2, 5}) {
        auto small = generate_model_set(QuadraticScheme(d, RealInterval{Rational(1)}), Rational(30));
        auto big = generate_model_set(QuadraticScheme(d, RealInterval{Rational(5, 2)}), Rational(30));
        for (const auto& x : small.points) EXPECT_TRUE(big.points.contains(x));
        EXPECT_GT(big.size(), small.size());
    }
}

TEST(ModelSet, RegenerationIsIdentical) {
    auto a = generate_model_set(QuadraticScheme::fibonacci(Rational(1)), Rational(50));
    auto b = generate_model_set(a.scheme, a.range);
    EXPECT_EQ(a.points.elements(), b.points.elements());
    EXPECT_THROW(generate_model_set(ZpScheme(2, 0), Rational(0)), std::invalid_argument);
}

TEST(ApproximateRing, SmallCases) {
    auto m0 = approximate_ring_zp(2, 0, Rational(100));
    EXPECT_EQ(m0.points.elements(), (std::vector<PScaled>{dy(-1), dy(0), dy(1)}));

    // {a/p^k : k <= n, |a| <= p^k}, enumerated directly
    for (long long p : {2, 3, 5}) {
        for (int n : {1, 2}) {
            std::set<Rational> oracle;
            long long pk = 1;
            for (int k = 0; k <= n; ++k, pk *= p)
                for (long long a = -pk; a <= pk; ++a) oracle.insert(Rational(BigInt(a), BigInt(pk)));
            auto m = approximate_ring_zp(p, n, Rational(1000));
            std::set<Rational> got;
            for (const auto& x : m.points) got.insert(x.to_rational());
            EXPECT_EQ(got, oracle) << p << " " << n;
        }
    }
    EXPECT_EQ(approximate_ring_zp(3, 1, Rational(100)).size(), 7u);
    EXPECT_THROW(approximate_ring_zp(4, 1, Rational(10)), std::invalid_argument);
}

TEST(ApproximateRing, GaugeBoundTruncates) {
    // gauge bound 2 with n = 3 keeps only denominators up to 2
    auto m = approximate_ring_zp(2, 3, Rational(2));
    for (const auto& x : m.points) EXPECT_LE(padic_norm(x), Rational(2));
    EXPECT_EQ(m.size(), 5u);
}

TEST(PisotMatrixSet, BasicProperties) {
    auto m = pisot_matrix_set(5, Rational(1, 5), 8);
    const auto& G = m.points.ambient();
    EXPECT_TRUE(m.points.contains(G.identity()));
    EXPECT_GT(m.size(), 1u);
    for (const auto& g : m.points) {
        EXPECT_EQ(mat2_det(g), QuadScalar::rational(1, 5));
        EXPECT_TRUE(m.points.contains(mat2_inv(g))) << g.str();
        EXPECT_TRUE(window_contains(MatrixBall{Rational(1, 5)}, galois_conj(g)));
    }
}

TEST(PisotMatrixSet, UnipotentMembershipRule) {
    auto m = pisot_matrix_set(5, Rational(1, 5), 6);
    const Rational eps(1, 5);
    const QuadScalar one = QuadScalar::rational(1, 5), zero(5);
    for (long long N = -6; N <= 6; ++N)
        for (long long M = -6; M <= 6; ++M) {
            QuadScalar alpha = QuadScalar::rational(Rational(N), 5) + QuadScalar::rational(Rational(M), 5) * phi;
            if (alpha.height() > 6) continue;
            Mat2<QuadScalar> u{one, alpha, zero, one};
            EXPECT_EQ(m.points.contains(u), alpha.conj().abs_le(eps)) << alpha.str();
        }
    // sqrt5 * k has conjugate -sqrt5 * k, never within 1/5
    for (long long k = 1; k <= 2; ++k) {
        Mat2<QuadScalar> u{one, QuadScalar(Rational(0), Rational(k), 5), zero, one};
        EXPECT_FALSE(m.points.contains(u));
    }
}

TEST(PisotMatrixSet, UnipotentEntriesAboveOneArePisot) {
    auto m = pisot_matrix_set(5, Rational(1, 5), 8);
    int checked = 0;
    for (const auto& g : m.points) {
        const bool upper = g.e21.is_zero() && g.e11 == g.e11.one_like() && g.e22 == g.e22.one_like();
        const bool lower = g.e12.is_zero() && g.e11 == g.e11.one_like() && g.e22 == g.e22.one_like();
        if (!upper && !lower) continue;
        const QuadScalar& alpha = upper ? g.e12 : g.e21;
        if (alpha.is_zero() || !(alpha > QuadScalar::rational(1, 5))) continue;
        EXPECT_TRUE(is_pisot(alpha)) << alpha.str();
        ++checked;
    }
    EXPECT_GT(checked, 0);
}

TEST(PisotMatrixSet, ProductsStayInEnlargedBall) {
    auto m = pisot_matrix_set(5, Rational(1, 5), 8);
    const Rational eps(1, 5);
    const MatrixBall enlarged{Rational(2) * eps + eps * eps};
    const auto& el = m.points.elements();
    for (std::size_t i = 0; i < el.size(); i += 3)
        for (std::size_t j = 0; j < el.size(); j += 5)
            EXPECT_TRUE(window_contains(enlarged, galois_conj(el[i] * el[j])));
}

TEST(PisotMatrixSet, MatchesBruteForceOracle) {
    // all ring elements with both coordinates of height <= H, then every
    // (a, b, c) with d solved from the determinant, filtered in floating point
    const long long H = 3;
    const Rational eps(1, 2);
    std::vector<QuadScalar> ring;
    for (long long u = -2 * H; u <= 2 * H; ++u)
        for (long long v = -2 * H; v <= 2 * H; ++v) {
            if ((u - v) % 2 != 0) continue;
            QuadScalar x = q5(u, v);
            if (x.height() <= H) ring.push_back(x);
        }
    const double e = eps.to_double();
    const QuadScalar one = QuadScalar::rational(1, 5);
    std::vector<Mat2<QuadScalar>> oracle;
    for (const auto& a : ring) {
        if (std::fabs(a.conj().to_double() - 1) > e + 1e-9) continue;
        for (const auto& b : ring) {
            if (std::fabs(b.conj().to_double()) > e + 1e-9) continue;
            for (const auto& c : ring) {
                if (std::fabs(c.conj().to_double()) > e + 1e-9) continue;
                QuadScalar d = (one + b * c) / a;
                if (!d.is_algebraic_integer() || d.height() > H) continue;
                Mat2<QuadScalar> g{a, b, c, d};
                if (window_contains(MatrixBall{eps}, galois_conj(g))) oracle.push_back(g);
            }
        }
    }
    std::sort(oracle.begin(), oracle.end());
    auto m = pisot_matrix_set(5, eps, H);
    EXPECT_EQ(m.points.elements(), oracle);
}

TEST(MeyerCheck, ModelSetIsMeyer) {
    auto s = generate_model_set(QuadraticScheme::fibonacci(Rational(1)), Rational(40));
    auto rep = meyer_check(s.points, s, Rational(20));
    EXPECT_TRUE(rep.meyer());
}

TEST(MeyerCheck, ThinnedSubsetStaysCommensurable) {
    auto s = generate_model_set(QuadraticScheme::fibonacci(Rational(1)), Rational(40));
    std::vector<QuadScalar> kept;
    for (std::size_t i = 0; i < s.points.size(); ++i)
        if (i % 3 != 2) kept.push_back(s.points.elements()[i]);
    PointSet<QuadLine> M(s.points.ambient(), kept, s.points.region());
    auto rep = meyer_check(M, s, Rational(20));
    EXPECT_TRUE(rep.meyer());
    EXPECT_TRUE(rep.m_by_s->validated && rep.s_by_m->validated);
}

TEST(MeyerCheck, HalfLineFailsOneDirection) {
    auto s = generate_model_set(QuadraticScheme::fibonacci(Rational(1)), Rational(40));
    std::vector<QuadScalar> kept;
    for (const auto& x : s.points)
        if (x.sign() >= 0) kept.push_back(x);
    PointSet<QuadLine> M(s.points.ambient(), kept, s.points.region());
    auto rep = meyer_check(M, s, Rational(20));
    EXPECT_TRUE(rep.contained);
    EXPECT_FALSE(rep.meyer());
    EXPECT_EQ(rep.failed_direction, std::optional<std::string>("s_by_m"));
}

TEST(MeyerCheck, NotContained) {
    auto s = generate_model_set(QuadraticScheme::fibonacci(Rational(1)), Rational(10));
    PointSet<QuadLine> M(s.points.ambient(), {QuadScalar(5), QuadScalar::rational(2, 5)});
    auto rep = meyer_check(M, s, Rational(5));
    EXPECT_FALSE(rep.contained);
    EXPECT_EQ(rep.offending, std::optional<std::string>("2+0*sqrt(5)"));
}

TEST(Pullback, FibonacciDifferences) {
    auto rep = pullback_containment_check(QuadraticScheme::fibonacci(Rational(1)), RealInterval{Rational(1)}, Rational(25));
    EXPECT_TRUE(rep.contained);
    ASSERT_TRUE(rep.certificate);
    EXPECT_TRUE(rep.certificate->validated);
}

TEST(Pullback, PadicBalls) {
    auto r1 = pullback_containment_check(ZpScheme(2, 0), PadicBall{2, 0}, Rational(10));
    EXPECT_TRUE(r1.contained);
    EXPECT_EQ(r1.difference_size, 41u);
    auto r2 = pullback_containment_check(ZpScheme(2, 1), PadicBall{2, 1}, Rational(10));
    EXPECT_TRUE(r2.contained);
    ASSERT_TRUE(r2.certificate);
    EXPECT_EQ(r2.certificate->translates.size(), 1u);
    EXPECT_THROW(pullback_containment_check(PisotMatrixScheme(5, MatrixBall{Rational(1, 5)}), MatrixBall{Rational(1, 5)}, Rational(3)),
                 std::invalid_argument);
}

TEST(Window, Checks) {
    EXPECT_THROW(check_window(RealInterval{Rational(-1)}), std::invalid_argument);
    EXPECT_THROW(ZpScheme(2, PadicBall{3, 0}), std::invalid_argument);
    EXPECT_THROW(QuadraticScheme(5, PadicBall{2, 0}), std::invalid_argument);
    EXPECT_TRUE(window_subset(RealInterval{Rational(1)}, RealInterval{Rational(2)}));
    EXPECT_FALSE(window_subset(PadicBall{2, 2}, PadicBall{2, 1}));
    EXPECT_EQ((PadicBall{2, -2}.radius()), Rational(1, 4));
    EXPECT_THROW(window_accepts(Window(MatrixBall{Rational(1)}), Rational(0)), std::invalid_argument);
}
