#pragma once

#include "apg/exact/mat2.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>

namespace apg {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// A cocycle value could not be decided: the rounding residual was too large
/// or the section's branch point could not be resolved.
class UnresolvedRounding : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Element of SL2(R) in double precision, optionally carrying the exact
/// rational matrix it came from.
class RealMat2 {
public:
    RealMat2(double a, double b, double c, double d) : a_(a), b_(b), c_(c), d_(d) { check(); }

    static RealMat2 from_exact(const Mat2<Rational>& m) {
        RealMat2 r(m.e11.to_double(), m.e12.to_double(), m.e21.to_double(), m.e22.to_double(), m);
        return r;
    }
    static RealMat2 identity() { return from_exact(Mat2<Rational>::identity_like(Rational())); }
    /// Rotation by theta. Quarter turns are built exactly; other angles carry
    /// no provenance.
    static RealMat2 rotation(double theta) {
        const double q = theta / (std::numbers::pi / 2);
        if (std::fabs(q - std::round(q)) < 1e-12) {
            const long long k = ((static_cast<long long>(std::round(q)) % 4) + 4) % 4;
            const long long c[] = {1, 0, -1, 0}, s[] = {0, 1, 0, -1};
            return from_exact({Rational(c[k]), Rational(-s[k]), Rational(s[k]), Rational(c[k])});
        }
        return RealMat2(std::cos(theta), -std::sin(theta), std::sin(theta), std::cos(theta));
    }

    double a() const { return a_; }
    double b() const { return b_; }
    double c() const { return c_; }
    double d() const { return d_; }
    double det() const { return a_ * d_ - b_ * c_; }
    const std::optional<Mat2<Rational>>& source() const { return source_; }

    /// Same doubles, exact provenance dropped.
    RealMat2 without_source() const { return RealMat2(a_, b_, c_, d_); }

    /// Entries shifted by less than 1e-6 each, provenance kept.
    RealMat2 nudged(double da, double db, double dc, double dd) const {
        if (!source_) throw std::invalid_argument("nudged: no exact provenance");
        if (std::max({std::fabs(da), std::fabs(db), std::fabs(dc), std::fabs(dd)}) >= 1e-6)
            throw std::invalid_argument("nudged: shift too large");
        return RealMat2(a_ + da, b_ + db, c_ + dc, d_ + dd, *source_);
    }

    /// Exact when both factors carry provenance.
    friend RealMat2 operator*(const RealMat2& x, const RealMat2& y) {
        if (x.source_ && y.source_) return from_exact(mat2_mul(*x.source_, *y.source_));
        return RealMat2(x.a_ * y.a_ + x.b_ * y.c_, x.a_ * y.b_ + x.b_ * y.d_, x.c_ * y.a_ + x.d_ * y.c_,
                        x.c_ * y.b_ + x.d_ * y.d_);
    }

private:
    RealMat2(double a, double b, double c, double d, Mat2<Rational> src)
        : a_(a), b_(b), c_(c), d_(d), source_(std::move(src)) {
        if (!(mat2_det(*source_) == Rational(1))) throw std::invalid_argument("exact provenance has det != 1");
        check();
    }
    void check() const {
        if (!(std::fabs(det() - 1.0) < 1e-9)) throw std::invalid_argument("RealMat2: |det - 1| >= 1e-9");
    }

    double a_, b_, c_, d_;
    std::optional<Mat2<Rational>> source_;
};

/// Angle in [0, 2pi) of g * (cos theta, sin theta).
inline double circle_action(const RealMat2& g, double theta) {
    const double x = g.a() * std::cos(theta) + g.b() * std::sin(theta);
    const double y = g.c() * std::cos(theta) + g.d() * std::sin(theta);
    if (std::hypot(x, y) < 1e-12) throw std::domain_error("circle_action: near-singular image vector");
    double ang = std::atan2(y, x);
    if (ang < 0) ang += kTwoPi;
    if (ang >= kTwoPi) ang = 0;
    return ang;
}

namespace detail {

/// s(g)(0) in [0, 2pi): the angle of the first column. The branch point at 0
/// is decided exactly from provenance; without it, a first column within
/// 1e-12 of the positive x-axis is ambiguous.
inline double lift_start(const RealMat2& g) {
    if (const auto& src = g.source()) {
        const int sc = src->e21.sign();
        if (sc == 0) return src->e11.sign() > 0 ? 0.0 : std::numbers::pi;
        double ang = std::atan2(g.c(), g.a());
        if (ang < 0) ang += kTwoPi;
        if (sc > 0) return std::clamp(ang, std::nextafter(0.0, 1.0), std::numbers::pi);
        return std::clamp(ang, std::numbers::pi, std::nextafter(kTwoPi, 0.0));
    }
    if (g.a() > 0 && std::fabs(g.c()) <= 1e-12 * g.a())
        throw UnresolvedRounding("lift normalization ambiguous: first column on the positive axis");
    double ang = std::atan2(g.c(), g.a());
    if (ang < 0) ang += kTwoPi;
    return ang;
}

inline double raw_angle(const RealMat2& g, double theta) {
    const double x = g.a() * std::cos(theta) + g.b() * std::sin(theta);
    const double y = g.c() * std::cos(theta) + g.d() * std::sin(theta);
    return std::atan2(y, x);
}

}  // namespace detail

/// Value at theta of the monotone lift s(g) of the circle action, normalized
/// by s(g)(0) in [0, 2pi). Tracks the continuous angle along [0, theta] with
/// steps halved until each moves the image by less than pi/2.
inline double lift_eval(const RealMat2& g, double theta) {
    constexpr double kMinStep = 1e-8;
    constexpr double kMaxStep = std::numbers::pi / 4;
    if (theta < -1e-12 || theta > 2 * kTwoPi + 1e-12) throw std::invalid_argument("lift_eval: theta outside [0, 4pi]");
    double value = detail::lift_start(g);
    double prev = detail::raw_angle(g, 0.0);
    double t = 0.0;
    double h = kMaxStep;
    while (t < theta) {
        const double next = std::min(theta, t + h);
        const double raw = detail::raw_angle(g, next);
        double delta = std::remainder(raw - prev, kTwoPi);
        if (std::fabs(delta) >= std::numbers::pi / 2 || delta < -1e-12) {
            h /= 2;
            if (h < kMinStep) throw UnresolvedRounding("lift_eval: subdivision below minimum step");
            continue;
        }
        value += delta;
        prev = raw;
        t = next;
        h = std::min(kMaxStep, h * 2);
    }
    return value;
}

/// Cocycle value with the residual of the rounding that produced it.
struct CocycleValue {
    int value = 0;
    double residual = 0;
};

/// beta(g, h) = (s(g)(s(h)(0)) - s(gh)(0)) / 2pi, rounded; residuals above
/// 1e-6 are an error. With this section the value lies in {0, 1}.
inline CocycleValue euler_cocycle_detail(const RealMat2& g, const RealMat2& h) {
    const double composed = lift_eval(g, lift_eval(h, 0.0));
    const double direct = lift_eval(g * h, 0.0);
    const double x = (composed - direct) / kTwoPi;
    const double k = std::round(x);
    const double residual = std::fabs(x - k);
    if (residual >= 1e-6) throw UnresolvedRounding("euler_cocycle: rounding residual " + std::to_string(residual));
    return {static_cast<int>(k), residual};
}

inline int euler_cocycle(const RealMat2& g, const RealMat2& h) { return euler_cocycle_detail(g, h).value; }

/// Outcome of beta(g,h) + beta(gh,k) == beta(h,k) + beta(g,hk).
struct CocycleIdentity {
    bool holds = false;
    int lhs = 0;
    int rhs = 0;
    double max_residual = 0;
    int min_beta = 0;
    int max_beta = 0;
};

inline CocycleIdentity cocycle_identity_detail(const RealMat2& g, const RealMat2& h, const RealMat2& k) {
    const auto gh = euler_cocycle_detail(g, h);
    const auto gh_k = euler_cocycle_detail(g * h, k);
    const auto hk = euler_cocycle_detail(h, k);
    const auto g_hk = euler_cocycle_detail(g, h * k);
    CocycleIdentity r;
    r.lhs = gh.value + gh_k.value;
    r.rhs = hk.value + g_hk.value;
    r.holds = r.lhs == r.rhs;
    r.max_residual = std::max({gh.residual, gh_k.residual, hk.residual, g_hk.residual});
    r.min_beta = std::min({gh.value, gh_k.value, hk.value, g_hk.value});
    r.max_beta = std::max({gh.value, gh_k.value, hk.value, g_hk.value});
    return r;
}

inline bool cocycle_identity_check(const RealMat2& g, const RealMat2& h, const RealMat2& k) {
    return cocycle_identity_detail(g, h, k).holds;
}

/// Uniform double in [0, 1) from the top 53 bits; portable across standard libraries.
inline double unit_uniform(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

/// Random determinant-one matrix: entries uniform in [-2, 2], first column
/// negated when the determinant is negative, then scaled by 1/sqrt(det).
/// Draws with |det| < 1 are rejected, so the scaling never enlarges an entry
/// and the result stays in [-2, 2].
inline RealMat2 random_sl2(std::mt19937_64& rng) {
    while (true) {
        double e[4];
        for (double& v : e) v = 4.0 * unit_uniform(rng) - 2.0;
        double det = e[0] * e[3] - e[1] * e[2];
        if (std::fabs(det) < 1.0) continue;
        if (det < 0) {
            e[0] = -e[0];
            e[2] = -e[2];
            det = -det;
        }
        const double s = 1.0 / std::sqrt(det);
        return RealMat2(e[0] * s, e[1] * s, e[2] * s, e[3] * s);
    }
}

}  // namespace apg
