#pragma once

#include "apg/exact/rational.hpp"
#include "apg/group/approx_group.hpp"
#include "apg/quasi/free_word.hpp"

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace apg {

// ---------------------------------------------------------------------------
// Brooks counting quasimorphism

/// Number of pairwise non-overlapping occurrences of w in the reduced word g,
/// counted greedily left to right (optimal for a single pattern).
inline long long brooks_count(const FreeWord& w, const FreeWord& g) {
    if (w.empty()) throw std::invalid_argument("brooks_count: w must be nontrivial");
    if (!w.is_cyclically_reduced()) throw std::invalid_argument("brooks_count: w must be cyclically reduced");
    const auto& pat = w.letters();
    const auto& txt = g.letters();
    long long count = 0;
    std::size_t i = 0;
    while (i + pat.size() <= txt.size()) {
        if (std::equal(pat.begin(), pat.end(), txt.begin() + static_cast<std::ptrdiff_t>(i))) {
            ++count;
            i += pat.size();
        } else {
            ++i;
        }
    }
    return count;
}

/// Copies of w minus copies of w^-1.
inline long long brooks_value(const FreeWord& w, const FreeWord& g) {
    return brooks_count(w, g) - brooks_count(w.inverse(), g);
}

/// g contains as many non-overlapping copies of w as of w^-1.
inline bool in_brooks_A(const FreeWord& w, const FreeWord& g) { return brooks_value(w, g) == 0; }

// ---------------------------------------------------------------------------
// Nearest-integer quasi-homomorphism of R

/// With t = n + delta, n integer and delta in [0, 1): n when delta <= gamma,
/// otherwise n + 1.
inline BigInt nearest_integer_qh(const Rational& gamma, const Rational& t) {
    if (gamma.sign() <= 0 || gamma > Rational(1)) throw std::invalid_argument("gamma must lie in (0, 1]");
    BigInt n = t.floor();
    Rational delta = t - Rational(n);
    return delta <= gamma ? n : BigInt(n + 1);
}

// ---------------------------------------------------------------------------
// Generic quasimorphisms

/// Real-valued (here rational-valued) map with a declared defect bound.
template <AmbientGroup G>
struct Quasimorphism {
    std::string name;
    std::function<Rational(const element_t<G>&)> eval;
    std::optional<Rational> declared_defect;  // empty: unknown

    Rational operator()(const element_t<G>& g) const { return eval(g); }
};

inline Quasimorphism<FreeGroup> brooks_quasimorphism(const FreeWord& w) {
    if (w.empty() || !w.is_cyclically_reduced()) throw std::invalid_argument("brooks word must be nontrivial and cyclically reduced");
    return {"brooks " + w.str(), [w](const FreeWord& g) { return Rational(brooks_value(w, g)); }, std::nullopt};
}

/// Exponent sum of x: a homomorphism onto Z.
inline Quasimorphism<FreeGroup> exponent_sum_x() {
    return {"exponent-sum x",
            [](const FreeWord& g) {
                long long s = 0;
                for (auto l : g.letters())
                    if (l == 1 || l == -1) s += l;
                return Rational(s);
            },
            Rational(0)};
}

inline Quasimorphism<RationalLine> nearest_integer_quasimorphism(const Rational& gamma) {
    return {"nearest-integer " + gamma.str(), [gamma](const Rational& t) { return Rational(nearest_integer_qh(gamma, t)); },
            Rational(1)};
}

template <AmbientGroup G>
struct DefectEstimate {
    Rational defect;
    element_t<G> g;
    element_t<G> h;
    std::size_t pairs = 0;
};

/// max |q(gh) - q(g) - q(h)| over all ordered pairs of the ball, with a witness.
template <AmbientGroup G>
DefectEstimate<G> empirical_defect(const Quasimorphism<G>& q, const PointSet<G>& ball) {
    if (ball.empty()) throw std::invalid_argument("empirical_defect: empty ball");
    const G& grp = ball.ambient();
    const auto& el = ball.elements();
    std::vector<Rational> vals;
    vals.reserve(el.size());
    for (const auto& x : el) vals.push_back(q(x));
    DefectEstimate<G> est{Rational(), el.front(), el.front(), 0};
    for (std::size_t i = 0; i < el.size(); ++i)
        for (std::size_t j = 0; j < el.size(); ++j) {
            Rational d = (q(grp.compose(el[i], el[j])) - vals[i] - vals[j]).abs();
            ++est.pairs;
            if (d > est.defect) {
                est.defect = d;
                est.g = el[i];
                est.h = el[j];
            }
        }
    return est;
}

template <AmbientGroup G>
element_t<G> group_power(const G& grp, const element_t<G>& g, long long n) {
    element_t<G> base = n < 0 ? grp.invert(g) : g;
    element_t<G> acc = grp.identity();
    for (unsigned long long k = static_cast<unsigned long long>(n < 0 ? -n : n); k; k >>= 1) {
        if (k & 1) acc = grp.compose(acc, base);
        base = grp.compose(base, base);
    }
    return acc;
}

/// q(g^N)/N at N, 2N and 4N. Reported for inspection; convergence is not asserted.
struct HomogenizationReport {
    std::vector<std::pair<long long, Rational>> samples;
    Rational estimate() const { return samples.front().second; }
};

template <AmbientGroup G>
HomogenizationReport homogenize_estimate(const G& grp, const Quasimorphism<G>& q, const element_t<G>& g, long long N) {
    if (N < 1) throw std::invalid_argument("homogenize_estimate: N must be >= 1");
    HomogenizationReport rep;
    for (long long n : {N, 2 * N, 4 * N}) rep.samples.emplace_back(n, q(group_power(grp, g, n)) / Rational(n));
    return rep;
}

/// {g in ball : |q(g)| <= bound}.
template <AmbientGroup G>
PointSet<G> approximate_kernel(const Quasimorphism<G>& q, const Rational& bound, const PointSet<G>& ball) {
    if (bound.sign() < 0) throw std::invalid_argument("approximate_kernel: bound must be non-negative");
    std::vector<element_t<G>> kept;
    for (const auto& g : ball)
        if (q(g).abs() <= bound) kept.push_back(g);
    return PointSet<G>(ball.ambient(), std::move(kept), ball.region());
}

}  // namespace apg
