#pragma once

#include "apg/exact/mat2.hpp"
#include "apg/exact/pscaled.hpp"
#include "apg/exact/quad.hpp"
#include "apg/exact/rational.hpp"

#include <cmath>
#include <concepts>
#include <functional>
#include <string>
#include <vector>

namespace apg {

/// An ambient group in which finite truncations live.
///
/// `gauge` orders elements by size (word length, a norm, or a height) and
/// `within` decides gauge <= r exactly. Element equality is exact and the
/// element type's own `<` is the canonical order used for tie-breaking.
template <class G>
concept AmbientGroup = requires(const G& g, const typename G::element_type& x, const Rational& r) {
    typename G::element_type;
    { g.compose(x, x) } -> std::same_as<typename G::element_type>;
    { g.invert(x) } -> std::same_as<typename G::element_type>;
    { g.identity() } -> std::same_as<typename G::element_type>;
    { g.gauge(x) } -> std::convertible_to<double>;
    { g.within(x, r) } -> std::convertible_to<bool>;
    { g.format(x) } -> std::convertible_to<std::string>;
    { g.name() } -> std::convertible_to<std::string>;
} && std::totally_ordered<typename G::element_type> && requires(const typename G::element_type& x) {
    { std::hash<typename G::element_type>{}(x) } -> std::convertible_to<std::size_t>;
};

/// Ambient groups embedded in R^k, where Delone-type checks make sense.
template <class G>
concept MetricAmbient = AmbientGroup<G> && requires(const G& g, const typename G::element_type& x) {
    { g.distance(x, x) } -> std::convertible_to<double>;
    { g.coordinates(x) } -> std::convertible_to<std::vector<double>>;
};

template <AmbientGroup G>
using element_t = typename G::element_type;

/// Additive group of Q with the absolute value as gauge.
struct RationalLine {
    using element_type = Rational;
    Rational compose(const Rational& x, const Rational& y) const { return x + y; }
    Rational invert(const Rational& x) const { return -x; }
    Rational identity() const { return Rational(); }
    double gauge(const Rational& x) const { return std::fabs(x.to_double()); }
    bool within(const Rational& x, const Rational& r) const { return x.abs() <= r; }
    std::string format(const Rational& x) const { return x.str(); }
    std::string name() const { return "rational"; }
    double distance(const Rational& x, const Rational& y) const { return (x - y).abs().to_double(); }
    std::vector<double> coordinates(const Rational& x) const { return {x.to_double()}; }
    bool operator==(const RationalLine&) const = default;
};

/// Additive group of Q(sqrt d) measured in the real embedding.
struct QuadLine {
    using element_type = QuadScalar;
    long long d = 5;
    QuadScalar compose(const QuadScalar& x, const QuadScalar& y) const { return x + y; }
    QuadScalar invert(const QuadScalar& x) const { return -x; }
    QuadScalar identity() const { return QuadScalar(d); }
    double gauge(const QuadScalar& x) const { return std::fabs(x.to_double()); }
    bool within(const QuadScalar& x, const Rational& r) const { return x.abs_le(r); }
    std::string format(const QuadScalar& x) const { return x.str(); }
    std::string name() const { return "quad " + std::to_string(d); }
    double distance(const QuadScalar& x, const QuadScalar& y) const { return std::fabs((x - y).to_double()); }
    std::vector<double> coordinates(const QuadScalar& x) const { return {x.to_double()}; }
    bool operator==(const QuadLine&) const = default;
};

/// Additive group of Z[1/p] measured by the real absolute value.
struct DyadicLine {
    using element_type = PScaled;
    long long p = 2;
    PScaled compose(const PScaled& x, const PScaled& y) const { return x + y; }
    PScaled invert(const PScaled& x) const { return -x; }
    PScaled identity() const { return PScaled(p); }
    double gauge(const PScaled& x) const { return std::fabs(x.to_double()); }
    bool within(const PScaled& x, const Rational& r) const { return x.to_rational().abs() <= r; }
    std::string format(const PScaled& x) const { return x.str(); }
    std::string name() const { return "dyadic " + std::to_string(p); }
    double distance(const PScaled& x, const PScaled& y) const { return std::fabs((x - y).to_double()); }
    std::vector<double> coordinates(const PScaled& x) const { return {x.to_double()}; }
    bool operator==(const DyadicLine&) const = default;
};

/// Additive group of Z[1/p] viewed inside Q_p: the gauge is the p-adic norm.
struct PAdicLine {
    using element_type = PScaled;
    long long p = 2;
    PScaled compose(const PScaled& x, const PScaled& y) const { return x + y; }
    PScaled invert(const PScaled& x) const { return -x; }
    PScaled identity() const { return PScaled(p); }
    double gauge(const PScaled& x) const { return padic_norm(x).to_double(); }
    bool within(const PScaled& x, const Rational& r) const { return padic_norm(x) <= r; }
    std::string format(const PScaled& x) const { return x.str(); }
    std::string name() const { return "padic " + std::to_string(p); }
    bool operator==(const PAdicLine&) const = default;
};

/// SL2 over an exact scalar kind; the gauge is the entry height.
template <ExactScalar S>
struct SL2Group {
    using element_type = Mat2<S>;
    S proto;
    Mat2<S> compose(const Mat2<S>& x, const Mat2<S>& y) const { return mat2_mul(x, y); }
    Mat2<S> invert(const Mat2<S>& x) const { return mat2_inv(x); }
    Mat2<S> identity() const { return Mat2<S>::identity_like(proto); }
    double gauge(const Mat2<S>& x) const { return x.height().template convert_to<double>(); }
    bool within(const Mat2<S>& x, const Rational& r) const { return Rational(x.height()) <= r; }
    std::string format(const Mat2<S>& x) const { return x.str(); }
    std::string name() const { return "sl2 " + scalar_kind(proto); }
    bool operator==(const SL2Group& o) const { return name() == o.name(); }
};

}  // namespace apg
