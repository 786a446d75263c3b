#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstdint>
#include <functional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace apg {

using BigInt = boost::multiprecision::cpp_int;

/// Parse a signed decimal integer; rejects empty input and stray characters.
inline BigInt parse_bigint(std::string_view s) {
    std::size_t i = 0;
    bool neg = false;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) {
        neg = s[i] == '-';
        ++i;
    }
    if (i == s.size()) throw std::invalid_argument("empty integer literal");
    BigInt v = 0;
    for (; i < s.size(); ++i) {
        if (s[i] < '0' || s[i] > '9')
            throw std::invalid_argument("bad integer literal: " + std::string(s));
        v = v * 10 + (s[i] - '0');
    }
    return neg ? BigInt(-v) : v;
}

inline std::size_t hash_bigint(const BigInt& v) { return boost::multiprecision::hash_value(v); }

/// Exact rational in lowest terms with positive denominator.
class Rational {
public:
    Rational() : num_(0), den_(1) {}
    Rational(long long n) : num_(n), den_(1) {}  // NOLINT(google-explicit-constructor)
    Rational(BigInt n) : num_(std::move(n)), den_(1) {}  // NOLINT(google-explicit-constructor)
    Rational(BigInt n, BigInt d) : num_(std::move(n)), den_(std::move(d)) { normalize(); }

    const BigInt& num() const { return num_; }
    const BigInt& den() const { return den_; }

    int sign() const { return num_.sign(); }
    bool is_zero() const { return num_.is_zero(); }
    bool is_integer() const { return den_ == 1; }

    Rational zero_like() const { return Rational(); }
    Rational one_like() const { return Rational(1); }

    Rational abs() const { return num_.sign() < 0 ? Rational(-num_, den_, raw_tag{}) : *this; }

    /// Largest integer not exceeding the value.
    BigInt floor() const {
        BigInt q = num_ / den_;  // truncates toward zero
        if (num_.sign() < 0 && q * den_ != num_) q -= 1;
        return q;
    }

    BigInt ceil() const { return -Rational(-num_, den_, raw_tag{}).floor(); }

    /// max(|numerator|, denominator); the enumeration height of a coordinate.
    BigInt height() const {
        BigInt a = boost::multiprecision::abs(num_);
        return a > den_ ? a : den_;
    }

    double to_double() const {
        return num_.convert_to<double>() / den_.convert_to<double>();
    }

    std::string str() const {
        if (den_ == 1) return num_.str();
        return num_.str() + "/" + den_.str();
    }

    /// Accepts "n" or "p/q".
    static Rational parse(std::string_view s) {
        auto slash = s.find('/');
        if (slash == std::string_view::npos) return Rational(parse_bigint(s));
        BigInt d = parse_bigint(s.substr(slash + 1));
        if (d.is_zero()) throw std::invalid_argument("zero denominator: " + std::string(s));
        return Rational(parse_bigint(s.substr(0, slash)), d);
    }

    Rational operator-() const { return Rational(-num_, den_, raw_tag{}); }

    friend Rational operator+(const Rational& x, const Rational& y) {
        if (x.den_ == y.den_) return Rational(x.num_ + y.num_, x.den_);
        return Rational(x.num_ * y.den_ + y.num_ * x.den_, x.den_ * y.den_);
    }
    friend Rational operator-(const Rational& x, const Rational& y) {
        if (x.den_ == y.den_) return Rational(x.num_ - y.num_, x.den_);
        return Rational(x.num_ * y.den_ - y.num_ * x.den_, x.den_ * y.den_);
    }
    friend Rational operator*(const Rational& x, const Rational& y) {
        if (x.den_ == 1 && y.den_ == 1) return Rational(x.num_ * y.num_, BigInt(1), raw_tag{});
        return Rational(x.num_ * y.num_, x.den_ * y.den_);
    }
    friend Rational operator/(const Rational& x, const Rational& y) {
        if (y.is_zero()) throw std::domain_error("division by zero");
        return Rational(x.num_ * y.den_, x.den_ * y.num_);
    }
    Rational& operator+=(const Rational& y) { return *this = *this + y; }
    Rational& operator-=(const Rational& y) { return *this = *this - y; }
    Rational& operator*=(const Rational& y) { return *this = *this * y; }
    Rational& operator/=(const Rational& y) { return *this = *this / y; }

    friend bool operator==(const Rational& x, const Rational& y) {
        return x.num_ == y.num_ && x.den_ == y.den_;
    }
    friend std::strong_ordering operator<=>(const Rational& x, const Rational& y) {
        BigInt l = x.num_ * y.den_;
        BigInt r = y.num_ * x.den_;
        if (l < r) return std::strong_ordering::less;
        if (l > r) return std::strong_ordering::greater;
        return std::strong_ordering::equal;
    }

    friend std::ostream& operator<<(std::ostream& os, const Rational& x) { return os << x.str(); }

private:
    struct raw_tag {};
    Rational(BigInt n, BigInt d, raw_tag) : num_(std::move(n)), den_(std::move(d)) {}

    void normalize() {
        if (den_.is_zero()) throw std::domain_error("zero denominator");
        if (den_.sign() < 0) {
            num_ = -num_;
            den_ = -den_;
        }
        if (den_ == 1) return;
        BigInt g = boost::multiprecision::gcd(num_, den_);
        if (g != 1) {
            num_ /= g;
            den_ /= g;
        }
        if (num_.is_zero()) den_ = 1;
    }

    BigInt num_;
    BigInt den_;
};

inline Rational abs(const Rational& x) { return x.abs(); }

/// Exact integer power with non-negative exponent.
inline BigInt ipow(long long base, unsigned exponent) {
    return boost::multiprecision::pow(BigInt(base), exponent);
}

}  // namespace apg

template <>
struct std::hash<apg::Rational> {
    std::size_t operator()(const apg::Rational& x) const noexcept {
        std::size_t h = apg::hash_bigint(x.num());
        return h ^ (apg::hash_bigint(x.den()) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
    }
};
