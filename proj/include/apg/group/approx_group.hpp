#pragma once

#include "apg/group/ambient.hpp"
#include "apg/group/errors.hpp"
#include "apg/group/point_set.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <optional>
#include <stdexcept>
#include <unordered_set>
#include <utility>
#include <vector>

namespace apg {

namespace detail {

inline std::optional<Rational> reach(const std::optional<Rational>& region, double cap) {
    if (region) return region;
    return Rational(static_cast<long long>(std::ceil(cap)));
}

}  // namespace detail

/// All pairwise products x*y. The region of the result is the sum of the
/// operands' reaches (the gauge bound a subadditive gauge guarantees), and the
/// product of two complete sets is complete.
template <AmbientGroup G>
PointSet<G> product_set(const PointSet<G>& X, const PointSet<G>& Y) {
    require_same_ambient(X, Y);
    const G& g = X.ambient();
    std::unordered_set<element_t<G>> seen;
    seen.reserve(X.size() * 4);
    std::vector<element_t<G>> out;
    for (const auto& x : X)
        for (const auto& y : Y) {
            auto z = g.compose(x, y);
            if (seen.insert(z).second) out.push_back(std::move(z));
        }
    std::optional<Rational> region;
    if (!X.complete() || !Y.complete())
        region = *detail::reach(X.region(), X.cap()) + *detail::reach(Y.region(), Y.cap());
    return PointSet<G>(g, std::move(out), std::move(region));
}

/// Options for the greedy covering.
struct CoverOptions {
    /// Only targets of gauge <= region are certified; empty means all targets.
    std::optional<Rational> region;
    /// Translates must have gauge <= translate_radius (the admissible
    /// enumeration of the ambient); empty means unrestricted.
    std::optional<Rational> translate_radius;
};

/// Finite witness that Y (restricted to a region) lies in X*F.
template <AmbientGroup G>
struct CoveringCertificate {
    std::vector<element_t<G>> translates;
    std::optional<Rational> covered_region;
    std::optional<Rational> translate_radius;
    std::size_t base_size = 0;
    std::size_t target_size = 0;   // |Y| before restriction
    std::size_t covered_count = 0; // targets inside the covered region
    bool validated = false;
};

/// Exhaustive re-check of a certificate; returns the first uncovered target.
template <AmbientGroup G>
std::optional<element_t<G>> find_uncovered(const CoveringCertificate<G>& cert, const PointSet<G>& X,
                                           const PointSet<G>& Y) {
    const G& g = X.ambient();
    std::vector<element_t<G>> inv;
    for (const auto& f : cert.translates) inv.push_back(g.invert(f));
    for (const auto& y : Y) {
        if (cert.covered_region && !g.within(y, *cert.covered_region)) continue;
        bool hit = std::any_of(inv.begin(), inv.end(), [&](const auto& fi) { return X.contains(g.compose(y, fi)); });
        if (!hit) return y;
    }
    return std::nullopt;
}

/// Greedy covering of Y by right translates X*f.
///
/// Targets are scanned by increasing gauge. An uncovered target y receives the
/// translate x0^-1 * y where x0 is the smallest-gauge element of X whose
/// translate is admissible. Throws Uncoverable if no x0 qualifies.
template <AmbientGroup G>
CoveringCertificate<G> covering_certificate(const PointSet<G>& X, const PointSet<G>& Y, const CoverOptions& opt = {}) {
    require_same_ambient(X, Y);
    const G& g = X.ambient();
    CoveringCertificate<G> cert;
    cert.covered_region = opt.region;
    cert.translate_radius = opt.translate_radius;
    cert.base_size = X.size();
    cert.target_size = Y.size();

    const auto base = X.by_gauge();
    std::vector<element_t<G>> base_inv;
    base_inv.reserve(base.size());
    for (const auto& x : base) base_inv.push_back(g.invert(x));

    std::vector<element_t<G>> f_inv;
    for (const auto& y : Y.by_gauge()) {
        if (opt.region && !g.within(y, *opt.region)) continue;
        ++cert.covered_count;
        bool covered = std::any_of(f_inv.begin(), f_inv.end(), [&](const auto& fi) { return X.contains(g.compose(y, fi)); });
        if (covered) continue;
        bool placed = false;
        for (const auto& xi : base_inv) {
            auto f = g.compose(xi, y);
            if (opt.translate_radius && !g.within(f, *opt.translate_radius)) continue;
            f_inv.push_back(g.invert(f));
            cert.translates.push_back(std::move(f));
            placed = true;
            break;
        }
        if (!placed) throw Uncoverable(g.format(y));
    }
    if (auto miss = find_uncovered(cert, X, Y))
        throw std::logic_error("covering certificate failed validation at " + g.format(*miss));
    cert.validated = true;
    return cert;
}

/// First element breaking symmetry (identity counts as a witness when absent).
template <AmbientGroup G>
std::optional<element_t<G>> symmetry_witness(const PointSet<G>& X) {
    const G& g = X.ambient();
    if (!X.contains(g.identity())) return g.identity();
    for (const auto& x : X)
        if (!X.contains(g.invert(x))) return x;
    return std::nullopt;
}

/// X together with X^-1, same region.
template <AmbientGroup G>
PointSet<G> symmetric_hull(const PointSet<G>& X) {
    std::vector<element_t<G>> all(X.begin(), X.end());
    for (const auto& x : X) all.push_back(X.ambient().invert(x));
    return PointSet<G>(X.ambient(), std::move(all), X.region());
}

/// Default interior for certifying X*X: half the product's reach, i.e. the
/// region of X itself; complete sets certify the whole product.
template <AmbientGroup G>
std::optional<Rational> default_interior(const PointSet<G>& X) {
    return X.region();
}

/// Certificate that X*X restricted to the interior is covered by X*F.
/// Symmetry is checked first and reported through NotSymmetric.
template <AmbientGroup G>
CoveringCertificate<G> verify_approximate_subgroup(const PointSet<G>& X, std::optional<Rational> interior_margin,
                                                   std::optional<Rational> translate_radius = std::nullopt) {
    if (auto w = symmetry_witness(X)) throw NotSymmetric(X.ambient().format(*w));
    auto square = product_set(X, X);
    return covering_certificate(X, square, CoverOptions{std::move(interior_margin), std::move(translate_radius)});
}

template <AmbientGroup G>
CoveringCertificate<G> verify_approximate_subgroup(const PointSet<G>& X) {
    return verify_approximate_subgroup(X, default_interior(X));
}

/// Both directions of a commensurability check.
template <AmbientGroup G>
struct Commensurability {
    CoveringCertificate<G> x_by_y;  // X inside Y*F
    CoveringCertificate<G> y_by_x;  // Y inside X*F
};

template <AmbientGroup G>
Commensurability<G> commensurable(const PointSet<G>& X, const PointSet<G>& Y, std::optional<Rational> region,
                                  std::optional<Rational> translate_radius = std::nullopt) {
    CoverOptions opt{std::move(region), std::move(translate_radius)};
    return {covering_certificate(Y, X, opt), covering_certificate(X, Y, opt)};
}

/// (X X^-1) intersected with (Y Y^-1).
template <AmbientGroup G>
PointSet<G> intersect_classes(const PointSet<G>& X, const PointSet<G>& Y) {
    require_same_ambient(X, Y);
    auto xx = product_set(X, X.inverted());
    auto yy = product_set(Y, Y.inverted());
    std::vector<element_t<G>> common;
    for (const auto& z : xx)
        if (yy.contains(z)) common.push_back(z);
    std::optional<Rational> region;
    if (xx.region() && yy.region())
        region = std::min(*xx.region(), *yy.region());
    else if (xx.region())
        region = xx.region();
    else
        region = yy.region();
    return PointSet<G>(X.ambient(), std::move(common), std::move(region));
}

/// No b^-1 c lies in X for b, c in B.
template <AmbientGroup G>
bool is_free(const PointSet<G>& B, const PointSet<G>& X) {
    const G& g = B.ambient();
    for (const auto& b : B)
        for (const auto& c : B)
            if (X.contains(g.compose(g.invert(b), c))) return false;
    return true;
}

/// Y inside B union B*X.
template <AmbientGroup G>
bool is_maximal_free(const PointSet<G>& B, const PointSet<G>& Y, const PointSet<G>& X) {
    const G& g = B.ambient();
    for (const auto& y : Y) {
        if (B.contains(y)) continue;
        bool hit = false;
        for (const auto& b : B)
            if (X.contains(g.compose(g.invert(b), y))) {
                hit = true;
                break;
            }
        if (!hit) return false;
    }
    return true;
}

/// Greedy maximal X-free subset of Y, scanning Y in canonical order.
template <AmbientGroup G>
PointSet<G> maximal_free_set(const PointSet<G>& Y, const PointSet<G>& X) {
    require_same_ambient(Y, X);
    const G& g = Y.ambient();
    if (X.contains(g.identity())) throw ContainsIdentity();
    for (const auto& x : X)
        if (!X.contains(g.invert(x))) throw NotSymmetric(g.format(x));
    std::vector<element_t<G>> chosen;
    for (const auto& y : Y) {
        bool ok = true;
        for (const auto& b : chosen)
            if (X.contains(g.compose(g.invert(b), y)) || X.contains(g.compose(g.invert(y), b))) {
                ok = false;
                break;
            }
        if (ok) chosen.push_back(y);
    }
    return PointSet<G>(g, std::move(chosen), Y.region());
}

/// Uniform-discreteness and relative-density figures of a finite point set.
template <AmbientGroup G>
struct DeloneReport {
    double min_gap = 0;
    std::pair<element_t<G>, element_t<G>> gap_witness;
    double covering_radius = 0;
    Rational probe_spacing;
    Rational probe_extent;
    std::size_t probe_count = 0;
    std::size_t dimension = 0;
};

/// Minimum distance between distinct points and the largest distance from a
/// grid probe in [-interior, interior]^k to the set. The interior defaults to
/// the set's region, or its cap for complete sets.
template <MetricAmbient G>
DeloneReport<G> delone_check(const PointSet<G>& X, std::optional<Rational> interior = std::nullopt,
                             const Rational& probe_spacing = Rational(1, 16)) {
    if (X.size() < 2) throw std::invalid_argument("delone_check needs at least two points");
    if (probe_spacing.sign() <= 0) throw std::invalid_argument("probe spacing must be positive");
    const G& g = X.ambient();
    const auto& pts = X.elements();
    DeloneReport<G> rep;
    std::vector<std::vector<double>> coords;
    coords.reserve(pts.size());
    for (const auto& x : pts) coords.push_back(g.coordinates(x));
    rep.dimension = coords.front().size();
    rep.probe_spacing = probe_spacing;
    Rational extent = interior ? *interior : Rational(static_cast<long long>(std::floor(X.cap())));
    rep.probe_extent = extent;

    rep.min_gap = std::numeric_limits<double>::infinity();
    if (rep.dimension == 1) {
        // canonical order on a line is the real order
        for (std::size_t i = 1; i < pts.size(); ++i) {
            double d = g.distance(pts[i - 1], pts[i]);
            if (d < rep.min_gap) {
                rep.min_gap = d;
                rep.gap_witness = {pts[i - 1], pts[i]};
            }
        }
    } else {
        for (std::size_t i = 0; i < pts.size(); ++i)
            for (std::size_t j = i + 1; j < pts.size(); ++j) {
                double d = g.distance(pts[i], pts[j]);
                if (d < rep.min_gap) {
                    rep.min_gap = d;
                    rep.gap_witness = {pts[i], pts[j]};
                }
            }
    }

    const long long steps = (Rational(2) * extent / probe_spacing).floor().template convert_to<long long>();
    const double lo = -extent.to_double();
    const double h = probe_spacing.to_double();
    std::vector<double> line;
    if (rep.dimension == 1) {
        for (auto& c : coords) line.push_back(c[0]);
        std::sort(line.begin(), line.end());
    }
    std::vector<long long> idx(rep.dimension, 0);
    while (true) {
        std::vector<double> probe(rep.dimension);
        for (std::size_t k = 0; k < rep.dimension; ++k) probe[k] = lo + static_cast<double>(idx[k]) * h;
        double best = std::numeric_limits<double>::infinity();
        if (rep.dimension == 1) {
            auto it = std::lower_bound(line.begin(), line.end(), probe[0]);
            if (it != line.end()) best = std::min(best, *it - probe[0]);
            if (it != line.begin()) best = std::min(best, probe[0] - *std::prev(it));
        } else {
            for (const auto& c : coords) {
                double s = 0;
                for (std::size_t k = 0; k < rep.dimension; ++k) s += (c[k] - probe[k]) * (c[k] - probe[k]);
                best = std::min(best, std::sqrt(s));
            }
        }
        rep.covering_radius = std::max(rep.covering_radius, best);
        ++rep.probe_count;
        std::size_t k = 0;
        while (k < rep.dimension && ++idx[k] > steps) idx[k++] = 0;
        if (k == rep.dimension) break;
    }
    return rep;
}

/// Distinct consecutive differences of a one-dimensional set inside the
/// interior, as exact ambient elements in increasing order.
template <MetricAmbient G>
std::vector<element_t<G>> gap_alphabet(const PointSet<G>& X, const Rational& interior) {
    const G& g = X.ambient();
    std::vector<element_t<G>> inside;
    for (const auto& x : X)
        if (g.within(x, interior)) inside.push_back(x);
    std::vector<element_t<G>> gaps;
    for (std::size_t i = 1; i < inside.size(); ++i) gaps.push_back(g.compose(inside[i], g.invert(inside[i - 1])));
    std::sort(gaps.begin(), gaps.end());
    gaps.erase(std::unique(gaps.begin(), gaps.end()), gaps.end());
    return gaps;
}

/// Breadth-first ball of the given word radius over a generating list.
/// The result is complete: it is exactly the ball.
template <AmbientGroup G>
PointSet<G> word_ball(const G& g, const std::vector<element_t<G>>& generators, int radius) {
    std::unordered_set<element_t<G>> seen{g.identity()};
    std::vector<element_t<G>> all{g.identity()};
    std::vector<element_t<G>> frontier{g.identity()};
    for (int r = 0; r < radius; ++r) {
        std::vector<element_t<G>> next;
        for (const auto& w : frontier)
            for (const auto& s : generators) {
                auto z = g.compose(w, s);
                if (seen.insert(z).second) {
                    next.push_back(z);
                    all.push_back(std::move(z));
                }
            }
        frontier = std::move(next);
    }
    return PointSet<G>(g, std::move(all));
}

}  // namespace apg
