#pragma once

#include "apg/exact/rational.hpp"

#include <compare>
#include <stdexcept>
#include <string>
#include <string_view>

namespace apg {

inline bool is_prime(long long p) {
    if (p < 2) return false;
    for (long long f = 2; f * f <= p; ++f)
        if (p % f == 0) return false;
    return true;
}

/// Element m / p^k of Z[1/p], stored with k >= 0 and p not dividing m when k > 0.
class PScaled {
public:
    PScaled() : m_(0), k_(0), p_(2) {}
    explicit PScaled(long long p) : m_(0), k_(0), p_(p) { check_p(); }
    PScaled(BigInt m, int k, long long p) : m_(std::move(m)), k_(k), p_(p) {
        check_p();
        if (k_ < 0) {
            m_ *= ipow(p_, static_cast<unsigned>(-k_));
            k_ = 0;
        }
        normalize();
    }
    static PScaled integer(BigInt m, long long p) { return PScaled(std::move(m), 0, p); }

    /// Rejects rationals whose denominator is not a power of p.
    static PScaled from_rational(const Rational& r, long long p) {
        BigInt den = r.den();
        int k = 0;
        while (den % p == 0) {
            den /= p;
            ++k;
        }
        if (den != 1) throw std::invalid_argument(r.str() + " is not in Z[1/" + std::to_string(p) + "]");
        return PScaled(r.num(), k, p);
    }

    const BigInt& numerator() const { return m_; }
    int exponent() const { return k_; }
    long long p() const { return p_; }

    PScaled zero_like() const { return PScaled(p_); }
    PScaled one_like() const { return PScaled(BigInt(1), 0, p_, raw{}); }

    bool is_zero() const { return m_.is_zero(); }
    int sign() const { return m_.sign(); }
    PScaled abs() const { return sign() < 0 ? -*this : *this; }

    Rational to_rational() const { return Rational(m_, ipow(p_, static_cast<unsigned>(k_))); }
    double to_double() const { return to_rational().to_double(); }

    /// p-adic valuation; undefined (throws) at zero.
    int valuation() const {
        if (is_zero()) throw std::domain_error("valuation of zero");
        if (k_ > 0) return -k_;
        int v = 0;
        BigInt m = m_;
        while (m % p_ == 0) {
            m /= p_;
            ++v;
        }
        return v;
    }

    BigInt height() const {
        BigInt a = boost::multiprecision::abs(m_);
        BigInt q = ipow(p_, static_cast<unsigned>(k_));
        return a > q ? a : q;
    }

    std::string str() const {
        if (k_ == 0) return m_.str();
        return m_.str() + "/" + std::to_string(p_) + "^" + std::to_string(k_);
    }

    /// Accepts "m/p^k", "m", or "m/q" with q a power of p.
    static PScaled parse(std::string_view s, long long p) {
        auto caret = s.find('^');
        if (caret == std::string_view::npos) return from_rational(Rational::parse(s), p);
        auto slash = s.find('/');
        if (slash == std::string_view::npos || slash > caret)
            throw std::invalid_argument("bad p-scaled literal: " + std::string(s));
        long long base = std::stoll(std::string(s.substr(slash + 1, caret - slash - 1)));
        if (base != p) throw std::invalid_argument("p-scaled literal has base " + std::to_string(base));
        int k = std::stoi(std::string(s.substr(caret + 1)));
        return PScaled(parse_bigint(s.substr(0, slash)), k, p);
    }

    PScaled operator-() const { return PScaled(-m_, k_, p_, raw{}); }

    friend PScaled operator+(const PScaled& x, const PScaled& y) {
        same_p(x, y);
        if (x.k_ == y.k_) return PScaled(x.m_ + y.m_, x.k_, x.p_);
        if (x.k_ > y.k_) return PScaled(x.m_ + y.m_ * ipow(x.p_, x.k_ - y.k_), x.k_, x.p_);
        return PScaled(x.m_ * ipow(x.p_, y.k_ - x.k_) + y.m_, y.k_, x.p_);
    }
    friend PScaled operator-(const PScaled& x, const PScaled& y) { return x + (-y); }
    friend PScaled operator*(const PScaled& x, const PScaled& y) {
        same_p(x, y);
        // both numerators are coprime to p when their exponents are positive
        if (x.k_ > 0 && y.k_ > 0) return PScaled(x.m_ * y.m_, x.k_ + y.k_, x.p_, raw{});
        return PScaled(x.m_ * y.m_, x.k_ + y.k_, x.p_);
    }
    PScaled& operator+=(const PScaled& y) { return *this = *this + y; }
    PScaled& operator-=(const PScaled& y) { return *this = *this - y; }
    PScaled& operator*=(const PScaled& y) { return *this = *this * y; }

    friend bool operator==(const PScaled& x, const PScaled& y) {
        return x.p_ == y.p_ && x.k_ == y.k_ && x.m_ == y.m_;
    }
    /// Archimedean order.
    friend std::strong_ordering operator<=>(const PScaled& x, const PScaled& y) {
        same_p(x, y);
        int s = (x - y).sign();
        if (s < 0) return std::strong_ordering::less;
        if (s > 0) return std::strong_ordering::greater;
        return std::strong_ordering::equal;
    }

private:
    struct raw {};
    PScaled(BigInt m, int k, long long p, raw) : m_(std::move(m)), k_(k), p_(p) {}

    void check_p() const {
        if (!is_prime(p_)) throw std::invalid_argument(std::to_string(p_) + " is not prime");
    }
    static void same_p(const PScaled& x, const PScaled& y) {
        if (x.p_ != y.p_) throw std::invalid_argument("mixed primes in Z[1/p] arithmetic");
    }
    void normalize() {
        if (m_.is_zero()) {
            k_ = 0;
            return;
        }
        while (k_ > 0 && m_ % p_ == 0) {
            m_ /= p_;
            --k_;
        }
    }

    BigInt m_;
    int k_;
    long long p_;
};

/// p^(-v); zero maps to zero.
inline Rational padic_norm(const PScaled& x) {
    if (x.is_zero()) return Rational();
    int v = x.valuation();
    if (v >= 0) return Rational(BigInt(1), ipow(x.p(), static_cast<unsigned>(v)));
    return Rational(ipow(x.p(), static_cast<unsigned>(-v)));
}

}  // namespace apg

template <>
struct std::hash<apg::PScaled> {
    std::size_t operator()(const apg::PScaled& x) const noexcept {
        return apg::hash_bigint(x.numerator()) * 31 + static_cast<std::size_t>(x.exponent());
    }
};
