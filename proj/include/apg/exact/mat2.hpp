#pragma once

#include "apg/exact/pscaled.hpp"
#include "apg/exact/quad.hpp"
#include "apg/exact/rational.hpp"

#include <compare>
#include <concepts>
#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace apg {

/// Exact scalar kinds usable as matrix entries: Rational, QuadScalar, PScaled.
template <class S>
concept ExactScalar = requires(const S& x, const S& y) {
    { x + y } -> std::same_as<S>;
    { x - y } -> std::same_as<S>;
    { x * y } -> std::same_as<S>;
    { -x } -> std::same_as<S>;
    { x == y } -> std::convertible_to<bool>;
    { x.zero_like() } -> std::same_as<S>;
    { x.one_like() } -> std::same_as<S>;
    { x.is_zero() } -> std::convertible_to<bool>;
    { x.height() } -> std::convertible_to<BigInt>;
    { x.to_double() } -> std::convertible_to<double>;
    { x.str() } -> std::convertible_to<std::string>;
};

inline std::string scalar_kind(const Rational&) { return "rational"; }
inline std::string scalar_kind(const QuadScalar& x) { return "quad " + std::to_string(x.d()); }
inline std::string scalar_kind(const PScaled& x) { return "zp " + std::to_string(x.p()); }

/// 2x2 matrix with entries of one scalar kind.
template <ExactScalar S>
struct Mat2 {
    S e11, e12, e21, e22;

    static Mat2 identity_like(const S& proto) {
        return {proto.one_like(), proto.zero_like(), proto.zero_like(), proto.one_like()};
    }
    Mat2 identity() const { return identity_like(e11); }
    bool is_identity() const { return *this == identity(); }

    /// Largest coordinate height among the entries.
    BigInt height() const {
        BigInt h = e11.height();
        for (const S* e : {&e12, &e21, &e22}) {
            BigInt t = e->height();
            if (t > h) h = t;
        }
        return h;
    }

    std::string str() const {
        return "[[" + e11.str() + "," + e12.str() + "],[" + e21.str() + "," + e22.str() + "]]";
    }

    friend bool operator==(const Mat2&, const Mat2&) = default;
    /// Lexicographic in (e11, e12, e21, e22); the canonical order for point sets.
    friend std::strong_ordering operator<=>(const Mat2&, const Mat2&) = default;
};

template <ExactScalar S>
Mat2<S> mat2_mul(const Mat2<S>& A, const Mat2<S>& B) {
    return {A.e11 * B.e11 + A.e12 * B.e21, A.e11 * B.e12 + A.e12 * B.e22, A.e21 * B.e11 + A.e22 * B.e21,
            A.e21 * B.e12 + A.e22 * B.e22};
}

template <ExactScalar S>
S mat2_det(const Mat2<S>& A) {
    return A.e11 * A.e22 - A.e12 * A.e21;
}

/// Inverse of a determinant-one matrix (the adjugate); any other determinant is rejected.
template <ExactScalar S>
Mat2<S> mat2_inv(const Mat2<S>& A) {
    if (!(mat2_det(A) == A.e11.one_like()))
        throw std::invalid_argument("mat2_inv: determinant is not 1 for " + A.str());
    return {A.e22, -A.e12, -A.e21, A.e11};
}

template <ExactScalar S>
Mat2<S> operator*(const Mat2<S>& A, const Mat2<S>& B) {
    return mat2_mul(A, B);
}

/// Entrywise Galois conjugate.
inline Mat2<QuadScalar> galois_conj(const Mat2<QuadScalar>& A) {
    return {A.e11.conj(), A.e12.conj(), A.e21.conj(), A.e22.conj()};
}

inline Mat2<Rational> to_rational(const Mat2<PScaled>& A) {
    return {A.e11.to_rational(), A.e12.to_rational(), A.e21.to_rational(), A.e22.to_rational()};
}

inline Mat2<PScaled> to_pscaled(const Mat2<Rational>& A, long long p) {
    return {PScaled::from_rational(A.e11, p), PScaled::from_rational(A.e12, p), PScaled::from_rational(A.e21, p),
            PScaled::from_rational(A.e22, p)};
}

/// Parses "[[a,b],[c,d]]" with an entry parser for the scalar kind.
template <ExactScalar S>
Mat2<S> parse_mat2(std::string_view s, const std::function<S(std::string_view)>& entry) {
    std::string t;
    for (char c : s)
        if (c != ' ') t += c;
    if (t.size() < 9 || t.substr(0, 2) != "[[" || t.substr(t.size() - 2) != "]]")
        throw std::invalid_argument("bad matrix literal: " + std::string(s));
    std::string body = t.substr(2, t.size() - 4);
    auto mid = body.find("],[");
    if (mid == std::string::npos) throw std::invalid_argument("bad matrix literal: " + std::string(s));
    auto split_row = [&](const std::string& row) {
        // entries never contain commas
        auto c = row.find(',');
        if (c == std::string::npos) throw std::invalid_argument("bad matrix row: " + row);
        return std::pair{entry(row.substr(0, c)), entry(row.substr(c + 1))};
    };
    auto [a, b] = split_row(body.substr(0, mid));
    auto [c, d] = split_row(body.substr(mid + 3));
    return {a, b, c, d};
}

}  // namespace apg

template <apg::ExactScalar S>
struct std::hash<apg::Mat2<S>> {
    std::size_t operator()(const apg::Mat2<S>& m) const noexcept {
        std::hash<S> h;
        std::size_t s = h(m.e11);
        s = s * 1000003 ^ h(m.e12);
        s = s * 1000003 ^ h(m.e21);
        return s * 1000003 ^ h(m.e22);
    }
};
