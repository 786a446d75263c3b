#pragma once

#include "apg/exact/mat2.hpp"
#include "apg/exact/pscaled.hpp"
#include "apg/exact/quad.hpp"

#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace apg {

/// [-radius, radius] in the real line.
struct RealInterval {
    Rational radius;
    bool operator==(const RealInterval&) const = default;
};

/// Product of symmetric intervals, one radius per coordinate.
struct RealBox {
    std::vector<Rational> radii;
    bool operator==(const RealBox&) const = default;
};

/// Closed p-adic ball {x : |x|_p <= p^exponent}.
struct PadicBall {
    long long p = 2;
    int exponent = 0;
    Rational radius() const {
        return exponent >= 0 ? Rational(ipow(p, static_cast<unsigned>(exponent)))
                             : Rational(BigInt(1), ipow(p, static_cast<unsigned>(-exponent)));
    }
    bool operator==(const PadicBall&) const = default;
};

/// Matrices whose entries differ from the identity's by at most eps.
struct MatrixBall {
    Rational eps;
    bool operator==(const MatrixBall&) const = default;
};

/// Compact acceptance region on the internal side; always centred at the identity.
using Window = std::variant<RealInterval, RealBox, PadicBall, MatrixBall>;

inline void check_window(const Window& w) {
    std::visit(
        [](const auto& v) {
            using V = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<V, RealInterval>) {
                if (v.radius.sign() < 0) throw std::invalid_argument("negative window radius");
            } else if constexpr (std::is_same_v<V, RealBox>) {
                for (const auto& r : v.radii)
                    if (r.sign() < 0) throw std::invalid_argument("negative window radius");
            } else if constexpr (std::is_same_v<V, PadicBall>) {
                if (!is_prime(v.p)) throw std::invalid_argument("p-adic window needs a prime");
            } else {
                if (v.eps.sign() < 0) throw std::invalid_argument("negative window radius");
            }
        },
        w);
}

inline std::string window_kind(const Window& w) {
    static const char* names[] = {"real_interval", "real_box", "padic_ball", "matrix_ball"};
    return names[w.index()];
}

inline std::string window_parameter(const Window& w) {
    return std::visit(
        [](const auto& v) -> std::string {
            using V = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<V, RealInterval>) {
                return v.radius.str();
            } else if constexpr (std::is_same_v<V, RealBox>) {
                std::string s;
                for (const auto& r : v.radii) s += (s.empty() ? "" : ",") + r.str();
                return s;
            } else if constexpr (std::is_same_v<V, PadicBall>) {
                return std::to_string(v.p) + "^" + std::to_string(v.exponent);
            } else {
                return v.eps.str();
            }
        },
        w);
}

inline bool window_contains(const RealInterval& w, const Rational& x) { return x.abs() <= w.radius; }
inline bool window_contains(const RealInterval& w, const QuadScalar& x) { return x.abs_le(w.radius); }
inline bool window_contains(const RealInterval& w, const PScaled& x) { return x.to_rational().abs() <= w.radius; }
inline bool window_contains(const PadicBall& w, const PScaled& x) {
    if (x.p() != w.p) throw std::invalid_argument("p-adic window prime mismatch");
    return padic_norm(x) <= w.radius();
}
inline bool window_contains(const RealBox& w, const std::vector<QuadScalar>& x) {
    if (x.size() != w.radii.size()) throw std::invalid_argument("box window dimension mismatch");
    for (std::size_t i = 0; i < x.size(); ++i)
        if (!x[i].abs_le(w.radii[i])) return false;
    return true;
}
/// `image` is the internal image g*; tests ||g* - I||_sup <= eps.
inline bool window_contains(const MatrixBall& w, const Mat2<QuadScalar>& image) {
    const QuadScalar one = image.e11.one_like();
    return (image.e11 - one).abs_le(w.eps) && image.e12.abs_le(w.eps) && image.e21.abs_le(w.eps) &&
           (image.e22 - one).abs_le(w.eps);
}

/// Generic dispatch; a window kind that cannot judge the value type is an error.
template <class V>
bool window_accepts(const Window& w, const V& value) {
    return std::visit(
        [&](const auto& win) -> bool {
            if constexpr (requires { window_contains(win, value); })
                return window_contains(win, value);
            else
                throw std::invalid_argument("window kind " + std::string(window_kind(Window(win))) +
                                            " does not apply to this internal space");
        },
        w);
}

/// W * W^-1 for the abelian window kinds.
inline Window difference_window(const Window& w) {
    return std::visit(
        [](const auto& v) -> Window {
            using V = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<V, RealInterval>) {
                return RealInterval{Rational(2) * v.radius};
            } else if constexpr (std::is_same_v<V, RealBox>) {
                RealBox b;
                for (const auto& r : v.radii) b.radii.push_back(Rational(2) * r);
                return b;
            } else if constexpr (std::is_same_v<V, PadicBall>) {
                return v;  // ultrametric balls are subgroups
            } else {
                throw std::invalid_argument("difference window of a matrix ball is not supported");
            }
        },
        w);
}

/// W inside W2, for windows of the same kind.
inline bool window_subset(const Window& a, const Window& b) {
    if (a.index() != b.index()) throw std::invalid_argument("window kinds differ");
    if (auto x = std::get_if<RealInterval>(&a)) return x->radius <= std::get<RealInterval>(b).radius;
    if (auto x = std::get_if<PadicBall>(&a)) {
        const auto& y = std::get<PadicBall>(b);
        return x->p == y.p && x->exponent <= y.exponent;
    }
    if (auto x = std::get_if<MatrixBall>(&a)) return x->eps <= std::get<MatrixBall>(b).eps;
    const auto& ra = std::get<RealBox>(a).radii;
    const auto& rb = std::get<RealBox>(b).radii;
    if (ra.size() != rb.size()) return false;
    for (std::size_t i = 0; i < ra.size(); ++i)
        if (ra[i] > rb[i]) return false;
    return true;
}

}  // namespace apg
