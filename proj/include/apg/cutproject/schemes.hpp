#pragma once

#include "apg/cutproject/window.hpp"
#include "apg/group/ambient.hpp"

#include <cmath>
#include <concepts>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace apg {

/// Ordered key/value description of a scheme, used for provenance records.
using SchemeConfig = std::vector<std::pair<std::string, std::string>>;

/// A lattice with a physical embedding (the ambient gauge), an internal
/// embedding, and a window on the internal side.
template <class S>
concept CutProjectScheme = requires(const S& s, const typename S::element_type& x, const Rational& r, const Window& w) {
    typename S::ambient_type;
    typename S::element_type;
    typename S::internal_type;
    requires AmbientGroup<typename S::ambient_type>;
    { s.ambient() } -> std::same_as<typename S::ambient_type>;
    { s.internal(x) } -> std::same_as<typename S::internal_type>;
    { s.accepts(x) } -> std::convertible_to<bool>;
    { s.enumerate(r) } -> std::same_as<std::vector<typename S::element_type>>;
    { s.config() } -> std::convertible_to<SchemeConfig>;
    { s.window() } -> std::convertible_to<Window>;
    { s.with_window(w) } -> std::same_as<S>;
};

namespace detail {

inline long long floor_ll(double v) { return static_cast<long long>(std::floor(v)); }
inline long long ceil_ll(double v) { return static_cast<long long>(std::ceil(v)); }

}  // namespace detail

/// Ring of integers of Q(sqrt d) embedded in R x R by x -> (x, x*).
/// With d = 5 and window [-1, 1] this is the Fibonacci chain.
class QuadraticScheme {
public:
    using ambient_type = QuadLine;
    using element_type = QuadScalar;
    using internal_type = QuadScalar;

    QuadraticScheme(long long d, Window window) : d_(d), window_(std::move(window)) {
        if (!is_squarefree(d_)) throw std::invalid_argument("d must be square-free and >= 2");
        if (!std::holds_alternative<RealInterval>(window_))
            throw std::invalid_argument("quadratic scheme needs a real_interval window");
        check_window(window_);
    }
    static QuadraticScheme fibonacci(Rational radius) { return QuadraticScheme(5, RealInterval{std::move(radius)}); }

    long long d() const { return d_; }
    QuadLine ambient() const { return QuadLine{d_}; }
    QuadScalar internal(const QuadScalar& x) const { return x.conj(); }
    bool accepts(const QuadScalar& x) const { return window_accepts(window_, internal(x)); }
    const Window& window() const { return window_; }
    QuadraticScheme with_window(const Window& w) const { return QuadraticScheme(d_, w); }

    /// Generator omega of the ring of integers: (1 + sqrt d)/2 or sqrt d.
    QuadScalar omega() const {
        if (d_ % 4 == 1) return QuadScalar(Rational(1, 2), Rational(1, 2), d_);
        return QuadScalar::root(d_);
    }

    /// Candidates m + n*omega with |x| <= range and x* inside the window's
    /// bounding interval (with one unit of slack on each side).
    std::vector<QuadScalar> enumerate(const Rational& range) const {
        const double r = std::get<RealInterval>(window_).radius.to_double();
        const double R = range.to_double();
        const double sd = std::sqrt(static_cast<double>(d_));
        const QuadScalar w = omega();
        const double wstar = w.conj().to_double();
        const long long nmax = detail::ceil_ll((R + r) / sd) + 1;
        std::vector<QuadScalar> out;
        for (long long n = -nmax; n <= nmax; ++n) {
            const double c = static_cast<double>(n) * wstar;
            for (long long m = detail::floor_ll(-r - c) - 1; m <= detail::ceil_ll(r - c) + 1; ++m) {
                QuadScalar x = QuadScalar::rational(Rational(m), d_) + QuadScalar::rational(Rational(n), d_) * w;
                if (x.abs_le(range)) out.push_back(std::move(x));
            }
        }
        return out;
    }

    SchemeConfig config() const {
        return {{"scheme", d_ == 5 ? "fibonacci" : "quadratic"},
                {"d", std::to_string(d_)},
                {"window_kind", window_kind(window_)},
                {"window", window_parameter(window_)}};
    }

private:
    long long d_;
    Window window_;
};

/// Z[1/p] embedded diagonally in R x Q_p; physical side real, window a p-adic ball.
class ZpScheme {
public:
    using ambient_type = DyadicLine;
    using element_type = PScaled;
    using internal_type = PScaled;

    ZpScheme(long long p, Window window) : p_(p), window_(std::move(window)) {
        if (!is_prime(p_)) throw std::invalid_argument("invalid p: " + std::to_string(p_));
        auto* ball = std::get_if<PadicBall>(&window_);
        if (!ball || ball->p != p_) throw std::invalid_argument("zp scheme needs a padic_ball window over the same p");
    }
    ZpScheme(long long p, int exponent) : ZpScheme(p, PadicBall{p, exponent}) {}

    long long p() const { return p_; }
    DyadicLine ambient() const { return DyadicLine{p_}; }
    PScaled internal(const PScaled& x) const { return x; }
    bool accepts(const PScaled& x) const { return window_accepts(window_, x); }
    const Window& window() const { return window_; }
    ZpScheme with_window(const Window& w) const { return ZpScheme(p_, w); }

    /// Exactly the lattice points a * p^-n (n = window exponent) with |x| <= range.
    std::vector<PScaled> enumerate(const Rational& range) const {
        const int n = std::get<PadicBall>(window_).exponent;
        const PScaled unit = n >= 0 ? PScaled(BigInt(1), n, p_) : PScaled::integer(ipow(p_, static_cast<unsigned>(-n)), p_);
        const BigInt amax = (range / unit.to_rational()).floor();
        std::vector<PScaled> out;
        for (BigInt a = -amax; a <= amax; ++a) out.push_back(PScaled::integer(a, p_) * unit);
        return out;
    }

    SchemeConfig config() const {
        return {{"scheme", "zp"},
                {"p", std::to_string(p_)},
                {"window_kind", window_kind(window_)},
                {"window", window_parameter(window_)}};
    }

private:
    long long p_;
    Window window_;
};

/// Z[1/p] embedded in Q_p x R: the physical side is p-adic, the window a real
/// interval. With window [-1, 1] this is the approximate ring
/// {a/p^n : |a| <= p^n}.
class ApproxRingScheme {
public:
    using ambient_type = PAdicLine;
    using element_type = PScaled;
    using internal_type = Rational;

    ApproxRingScheme(long long p, Window window) : p_(p), window_(std::move(window)) {
        if (!is_prime(p_)) throw std::invalid_argument("invalid p: " + std::to_string(p_));
        if (!std::holds_alternative<RealInterval>(window_))
            throw std::invalid_argument("approximate ring needs a real_interval window");
        check_window(window_);
    }

    long long p() const { return p_; }
    PAdicLine ambient() const { return PAdicLine{p_}; }
    Rational internal(const PScaled& x) const { return x.to_rational(); }
    bool accepts(const PScaled& x) const { return window_accepts(window_, internal(x)); }
    const Window& window() const { return window_; }
    ApproxRingScheme with_window(const Window& w) const { return ApproxRingScheme(p_, w); }

    /// All x with |x|_p <= range and |x| <= window radius.
    std::vector<PScaled> enumerate(const Rational& range) const {
        std::vector<PScaled> out;
        if (range.sign() <= 0) {
            out.push_back(PScaled(p_));
            return out;
        }
        // e = floor(log_p range): |x|_p <= range iff x lies in p^-e Z
        int e = 0;
        while (Rational(ipow(p_, static_cast<unsigned>(e + 1))) <= range) ++e;
        if (range < Rational(1))
            while (e > -64 && Rational(BigInt(1), ipow(p_, static_cast<unsigned>(-e))) > range) --e;
        const PScaled unit = e >= 0 ? PScaled(BigInt(1), e, p_) : PScaled::integer(ipow(p_, static_cast<unsigned>(-e)), p_);
        const Rational r = std::get<RealInterval>(window_).radius;
        const BigInt amax = (r / unit.to_rational()).floor();
        for (BigInt a = -amax; a <= amax; ++a) out.push_back(PScaled::integer(a, p_) * unit);
        return out;
    }

    SchemeConfig config() const {
        return {{"scheme", "approx-ring"},
                {"p", std::to_string(p_)},
                {"window_kind", window_kind(window_)},
                {"window", window_parameter(window_)}};
    }

private:
    long long p_;
    Window window_;
};

/// SL2 over the ring of integers of Q(sqrt d), with internal map the entrywise
/// Galois conjugate and window a sup-norm ball around the identity. The
/// physical gauge is the entry height.
class PisotMatrixScheme {
public:
    using ambient_type = SL2Group<QuadScalar>;
    using element_type = Mat2<QuadScalar>;
    using internal_type = Mat2<QuadScalar>;

    PisotMatrixScheme(long long d, Window window) : d_(d), window_(std::move(window)) {
        if (!is_squarefree(d_)) throw std::invalid_argument("d must be square-free and >= 2");
        auto* ball = std::get_if<MatrixBall>(&window_);
        if (!ball || ball->eps.sign() <= 0) throw std::invalid_argument("pisot matrix scheme needs a matrix_ball with eps > 0");
    }

    long long d() const { return d_; }
    const Rational& eps() const { return std::get<MatrixBall>(window_).eps; }
    ambient_type ambient() const { return ambient_type{QuadScalar(d_)}; }
    Mat2<QuadScalar> internal(const Mat2<QuadScalar>& g) const { return galois_conj(g); }
    bool accepts(const Mat2<QuadScalar>& g) const { return window_accepts(window_, internal(g)); }
    const Window& window() const { return window_; }
    PisotMatrixScheme with_window(const Window& w) const { return PisotMatrixScheme(d_, w); }

    /// Ring-of-integers elements of height <= H whose conjugate lies within eps
    /// of `centre` (0 or 1).
    std::vector<QuadScalar> entry_candidates(const Rational& centre, const BigInt& H) const {
        const bool half = d_ % 4 == 1;
        const long long Hl = H.convert_to<long long>();
        std::vector<Rational> coords;  // every rational of height <= H on the coordinate lattice
        for (long long u = -2 * Hl; u <= 2 * Hl; ++u) {
            Rational c = half ? Rational(BigInt(u), BigInt(2)) : Rational(u);
            if (!half && (u < -Hl || u > Hl)) continue;
            if (c.height() <= H) coords.push_back(c);
        }
        std::sort(coords.begin(), coords.end());
        coords.erase(std::unique(coords.begin(), coords.end()), coords.end());
        const double sd = std::sqrt(static_cast<double>(d_));
        const double e = eps().to_double();
        std::vector<QuadScalar> out;
        for (const auto& b : coords) {
            const double mid = centre.to_double() + b.to_double() * sd;
            const double step = half ? 0.5 : 1.0;
            for (double av = std::floor((mid - e) / step) * step - step; av <= mid + e + step; av += step) {
                Rational a = half ? Rational(BigInt(static_cast<long long>(std::llround(av * 2))), BigInt(2))
                                  : Rational(static_cast<long long>(std::llround(av)));
                if (a.height() > H) continue;
                QuadScalar x(a, b, d_);
                if (!x.is_algebraic_integer()) continue;
                if ((x.conj() - QuadScalar::rational(centre, d_)).abs_le(eps())) out.push_back(x);
            }
        }
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
    }

    /// Every determinant-one matrix over the ring of integers with entry
    /// height <= range whose conjugate lies in the window. The lower-right
    /// entry is solved from the determinant.
    std::vector<Mat2<QuadScalar>> enumerate(const Rational& range) const {
        const BigInt H = range.floor();
        std::vector<Mat2<QuadScalar>> out;
        if (H < 1) return out;
        const auto diag = entry_candidates(Rational(1), H);
        const auto off = entry_candidates(Rational(0), H);
        const QuadScalar one = QuadScalar::rational(Rational(1), d_);
        for (const auto& a : diag)
            for (const auto& b : off)
                for (const auto& c : off) {
                    QuadScalar dd = (one + b * c) / a;
                    if (!dd.is_algebraic_integer() || dd.height() > H) continue;
                    Mat2<QuadScalar> g{a, b, c, dd};
                    if (accepts(g)) out.push_back(std::move(g));
                }
        return out;
    }

    SchemeConfig config() const {
        return {{"scheme", "pisot-matrix"},
                {"d", std::to_string(d_)},
                {"window_kind", window_kind(window_)},
                {"window", window_parameter(window_)}};
    }

private:
    long long d_;
    Window window_;
};

}  // namespace apg
