#pragma once

#include "apg/exact/rational.hpp"

#include <cmath>
#include <compare>
#include <stdexcept>
#include <string>
#include <string_view>

namespace apg {

inline bool is_squarefree(long long d) {
    if (d < 2) return false;
    for (long long f = 2; f * f <= d; ++f)
        if (d % (f * f) == 0) return false;
    return true;
}

/// Element a + b*sqrt(d) of the real quadratic field Q(sqrt(d)).
///
/// Ordering is the order of the real embedding (sqrt(d) > 0) and is decided
/// exactly by sign analysis; no floating point enters a comparison.
class QuadScalar {
public:
    QuadScalar() : d_(5) {}
    explicit QuadScalar(long long d) : d_(d) { check_d(); }
    QuadScalar(Rational a, Rational b, long long d) : a_(std::move(a)), b_(std::move(b)), d_(d) { check_d(); }
    static QuadScalar rational(Rational a, long long d) { return QuadScalar(std::move(a), Rational(), d); }
    /// Root of sqrt(d) itself.
    static QuadScalar root(long long d) { return QuadScalar(Rational(), Rational(1), d); }
    /// The golden ratio (1 + sqrt 5) / 2.
    static QuadScalar golden() { return QuadScalar(Rational(1, 2), Rational(1, 2), 5); }

    const Rational& a() const { return a_; }
    const Rational& b() const { return b_; }
    long long d() const { return d_; }

    QuadScalar zero_like() const { return QuadScalar(d_); }
    QuadScalar one_like() const { return rational(Rational(1), d_); }

    bool is_zero() const { return a_.is_zero() && b_.is_zero(); }
    bool is_rational() const { return b_.is_zero(); }

    /// a - b*sqrt(d).
    QuadScalar conj() const { return QuadScalar(a_, -b_, d_, unchecked{}); }
    /// Field norm a^2 - d b^2 (product with the conjugate).
    Rational norm() const { return a_ * a_ - Rational(d_) * b_ * b_; }
    Rational trace() const { return Rational(2) * a_; }

    /// Sign of the real embedding.
    int sign() const {
        int sa = a_.sign();
        int sb = b_.sign();
        if (sb == 0) return sa;
        if (sa == 0 || sa == sb) return sb;
        auto c = a_ * a_ <=> Rational(d_) * b_ * b_;
        if (c > 0) return sa;
        if (c < 0) return sb;
        return 0;  // unreachable for square-free d
    }

    QuadScalar abs() const { return sign() < 0 ? -*this : *this; }

    /// |x| <= r in the real embedding.
    bool abs_le(const Rational& r) const {
        return (QuadScalar(r - a_, -b_, d_, unchecked{})).sign() >= 0 &&
               (QuadScalar(r + a_, b_, d_, unchecked{})).sign() >= 0;
    }
    /// |x| < r in the real embedding.
    bool abs_lt(const Rational& r) const {
        return (QuadScalar(r - a_, -b_, d_, unchecked{})).sign() > 0 &&
               (QuadScalar(r + a_, b_, d_, unchecked{})).sign() > 0;
    }

    /// 2a and a^2 - d b^2 both integers; covers half-integers when d = 1 mod 4.
    bool is_algebraic_integer() const { return trace().is_integer() && norm().is_integer(); }

    BigInt height() const {
        BigInt ha = a_.height();
        BigInt hb = b_.height();
        return ha > hb ? ha : hb;
    }

    double to_double() const { return a_.to_double() + b_.to_double() * std::sqrt(static_cast<double>(d_)); }

    std::string str() const {
        std::string s = a_.str();
        if (b_.sign() < 0)
            s += "-" + (-b_).str();
        else
            s += "+" + b_.str();
        return s + "*sqrt(" + std::to_string(d_) + ")";
    }

    /// Accepts "a+b*sqrt(d)", "a-b*sqrt(d)", "b*sqrt(d)", and a bare rational
    /// when a default d is supplied.
    static QuadScalar parse(std::string_view s, long long default_d = 0) {
        auto pos = s.find("*sqrt(");
        if (pos == std::string_view::npos) {
            if (default_d == 0) throw std::invalid_argument("quadratic literal lacks sqrt(d): " + std::string(s));
            return rational(Rational::parse(s), default_d);
        }
        if (s.back() != ')') throw std::invalid_argument("bad quadratic literal: " + std::string(s));
        auto dstr = s.substr(pos + 6, s.size() - pos - 7);
        long long d = std::stoll(std::string(dstr));
        std::size_t split = std::string_view::npos;
        for (std::size_t i = pos; i-- > 1;) {
            if ((s[i] == '+' || s[i] == '-') && s[i - 1] != '/') {
                split = i;
                break;
            }
        }
        Rational a, b;
        if (split == std::string_view::npos) {
            b = Rational::parse(s.substr(0, pos));
        } else {
            a = Rational::parse(s.substr(0, split));
            auto bs = s.substr(split + 1, pos - split - 1);
            b = Rational::parse(bs);
            if (s[split] == '-') b = -b;
        }
        return QuadScalar(a, b, d);
    }

    QuadScalar operator-() const { return QuadScalar(-a_, -b_, d_, unchecked{}); }

    friend QuadScalar operator+(const QuadScalar& x, const QuadScalar& y) {
        same_field(x, y);
        return QuadScalar(x.a_ + y.a_, x.b_ + y.b_, x.d_, unchecked{});
    }
    friend QuadScalar operator-(const QuadScalar& x, const QuadScalar& y) {
        same_field(x, y);
        return QuadScalar(x.a_ - y.a_, x.b_ - y.b_, x.d_, unchecked{});
    }
    friend QuadScalar operator*(const QuadScalar& x, const QuadScalar& y) {
        same_field(x, y);
        return QuadScalar(x.a_ * y.a_ + Rational(x.d_) * x.b_ * y.b_, x.a_ * y.b_ + x.b_ * y.a_, x.d_,
                          unchecked{});
    }
    friend QuadScalar operator/(const QuadScalar& x, const QuadScalar& y) {
        same_field(x, y);
        Rational n = y.norm();
        if (n.is_zero()) throw std::domain_error("division by zero in Q(sqrt d)");
        QuadScalar t = x * y.conj();
        return QuadScalar(t.a_ / n, t.b_ / n, x.d_, unchecked{});
    }
    QuadScalar& operator+=(const QuadScalar& y) { return *this = *this + y; }
    QuadScalar& operator-=(const QuadScalar& y) { return *this = *this - y; }
    QuadScalar& operator*=(const QuadScalar& y) { return *this = *this * y; }

    friend bool operator==(const QuadScalar& x, const QuadScalar& y) {
        return x.d_ == y.d_ && x.a_ == y.a_ && x.b_ == y.b_;
    }
    /// Real-embedding order.
    friend std::strong_ordering operator<=>(const QuadScalar& x, const QuadScalar& y) {
        same_field(x, y);
        int s = (x - y).sign();
        if (s < 0) return std::strong_ordering::less;
        if (s > 0) return std::strong_ordering::greater;
        return std::strong_ordering::equal;
    }

private:
    struct unchecked {};
    QuadScalar(Rational a, Rational b, long long d, unchecked) : a_(std::move(a)), b_(std::move(b)), d_(d) {}

    void check_d() const {
        if (!is_squarefree(d_)) throw std::invalid_argument("d must be square-free and >= 2");
    }
    static void same_field(const QuadScalar& x, const QuadScalar& y) {
        if (x.d_ != y.d_) throw std::invalid_argument("mixed quadratic fields");
    }

    Rational a_;
    Rational b_;
    long long d_;
};

inline QuadScalar galois_conj(const QuadScalar& x) { return x.conj(); }

/// Algebraic integer > 1 whose Galois conjugate lies strictly inside (-1, 1).
inline bool is_pisot(const QuadScalar& x) {
    if (!x.is_algebraic_integer()) return false;
    if ((x - x.one_like()).sign() <= 0) return false;
    return x.conj().abs_lt(Rational(1));
}

}  // namespace apg

template <>
struct std::hash<apg::QuadScalar> {
    std::size_t operator()(const apg::QuadScalar& x) const noexcept {
        std::hash<apg::Rational> h;
        std::size_t s = h(x.a());
        return s ^ (h(x.b()) * 0x100000001b3ULL + static_cast<std::size_t>(x.d()));
    }
};
