#pragma once

#include "apg/cutproject/schemes.hpp"
#include "apg/cutproject/window.hpp"
#include "apg/group/approx_group.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace apg {

/// Physical projections of the lattice points whose internal image lies in
/// the window, together with the provenance needed to regenerate them.
template <CutProjectScheme S>
struct ModelSet {
    S scheme;
    Rational range;
    PointSet<typename S::ambient_type> points;

    /// Every element's internal image is in the window.
    bool recheck() const {
        for (const auto& x : points)
            if (!scheme.accepts(x)) return false;
        return true;
    }

    std::size_t size() const { return points.size(); }
};

/// Lattice elements with physical gauge <= range whose internal image is in the window.
template <CutProjectScheme S>
ModelSet<S> generate_model_set(const S& scheme, const Rational& range) {
    if (range.sign() <= 0) throw std::invalid_argument("range must be positive");
    const auto amb = scheme.ambient();
    std::vector<typename S::element_type> kept;
    for (auto& x : scheme.enumerate(range))
        if (amb.within(x, range) && scheme.accepts(x)) kept.push_back(std::move(x));
    return ModelSet<S>{scheme, range, PointSet<typename S::ambient_type>(amb, std::move(kept), range)};
}

/// {a/p^k : 0 <= k <= n, |a| <= p^k} with p-adic norm at most `range`, built
/// as the model set of Z[1/p] in Q_p x R with window [-1, 1].
inline ModelSet<ApproxRingScheme> approximate_ring_zp(long long p, int n, const Rational& range) {
    if (!is_prime(p)) throw std::invalid_argument("invalid p: " + std::to_string(p));
    if (n < 0) throw std::invalid_argument("n must be non-negative");
    Rational bound(ipow(p, static_cast<unsigned>(n)));
    if (range < bound) bound = range;
    return generate_model_set(ApproxRingScheme(p, RealInterval{Rational(1)}), bound);
}

/// SL2 matrices over the ring of integers of Q(sqrt d), entry height <= height,
/// with conjugate matrix within eps of the identity.
inline ModelSet<PisotMatrixScheme> pisot_matrix_set(long long d, const Rational& eps, long long height) {
    return generate_model_set(PisotMatrixScheme(d, MatrixBall{eps}), Rational(height));
}

/// Outcome of a Meyer-set check of M against a model set S.
template <AmbientGroup G>
struct MeyerReport {
    bool contained = false;
    std::optional<std::string> offending;  // element of M outside S
    std::optional<CoveringCertificate<G>> m_by_s;
    std::optional<CoveringCertificate<G>> s_by_m;
    std::optional<std::string> failed_direction;  // "m_by_s" or "s_by_m"
    std::optional<std::string> uncovered;         // witness of the failed direction
    Rational region;
    Rational translate_radius;

    bool meyer() const { return contained && m_by_s && s_by_m; }
};

/// M inside S exactly, then both covering directions on the region, with
/// translates restricted to gauge <= translate_radius (default region / 2).
template <CutProjectScheme S>
MeyerReport<typename S::ambient_type> meyer_check(const PointSet<typename S::ambient_type>& M, const ModelSet<S>& model,
                                                  const Rational& region,
                                                  std::optional<Rational> translate_radius = std::nullopt) {
    using G = typename S::ambient_type;
    require_same_ambient(M, model.points);
    MeyerReport<G> rep;
    rep.region = region;
    rep.translate_radius = translate_radius ? *translate_radius : region / Rational(2);
    for (const auto& m : M)
        if (!model.points.contains(m)) {
            rep.offending = M.ambient().format(m);
            return rep;
        }
    rep.contained = true;
    CoverOptions opt{region, rep.translate_radius};
    try {
        rep.m_by_s = covering_certificate(model.points, M, opt);
    } catch (const Uncoverable& e) {
        rep.failed_direction = "m_by_s";
        rep.uncovered = e.witness();
        return rep;
    }
    try {
        rep.s_by_m = covering_certificate(M, model.points, opt);
    } catch (const Uncoverable& e) {
        rep.failed_direction = "s_by_m";
        rep.uncovered = e.witness();
    }
    return rep;
}

/// Outcome of the pullback containment X X^-1 inside f^-1(W W^-1).
template <AmbientGroup G>
struct PullbackReport {
    std::size_t pullback_size = 0;
    std::size_t difference_size = 0;
    bool contained = false;
    std::optional<std::string> offending;
    std::optional<CoveringCertificate<G>> certificate;
};

/// X = f^-1(W) on the region; checks every element of X X^-1 has internal
/// image in W W^-1 and certifies X X^-1 as an approximate subgroup. Only the
/// abelian window kinds have a difference window.
template <CutProjectScheme S>
PullbackReport<typename S::ambient_type> pullback_containment_check(const S& scheme, const Window& W,
                                                                    const Rational& region) {
    using G = typename S::ambient_type;
    const Window diff = difference_window(W);
    const S in_w = scheme.with_window(W);
    const S in_diff = scheme.with_window(diff);
    auto X = generate_model_set(in_w, region).points;
    auto D = product_set(X, X.inverted());
    PullbackReport<G> rep;
    rep.pullback_size = X.size();
    rep.difference_size = D.size();
    for (const auto& z : D)
        if (!in_diff.accepts(z)) {
            rep.offending = D.ambient().format(z);
            return rep;
        }
    rep.contained = true;
    rep.certificate = verify_approximate_subgroup(D);
    return rep;
}

}  // namespace apg
