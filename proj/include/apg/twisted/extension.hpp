#pragma once

#include "apg/exact/mat2.hpp"
#include "apg/exact/pscaled.hpp"
#include "apg/group/point_set.hpp"
#include "apg/twisted/euler.hpp"

#include <compare>
#include <memory>
#include <mutex>
#include <string>
#include <unordered_map>
#include <vector>

namespace apg {

/// (lambda, a) in SL2(Z[1/p]) x Z[1/p].
struct ExtElem {
    Mat2<PScaled> lambda;
    PScaled a;

    std::string str() const { return "(" + lambda.str() + "; " + a.str() + ")"; }
    friend bool operator==(const ExtElem&, const ExtElem&) = default;
    friend std::strong_ordering operator<=>(const ExtElem&, const ExtElem&) = default;
};

inline Mat2<PScaled> identity_mat(long long p) { return Mat2<PScaled>::identity_like(PScaled(p)); }

/// beta on exact matrices, evaluated on their real images with exact provenance.
inline int exact_beta(const Mat2<PScaled>& x, const Mat2<PScaled>& y) {
    return euler_cocycle(RealMat2::from_exact(to_rational(x)), RealMat2::from_exact(to_rational(y)));
}

}  // namespace apg

template <>
struct std::hash<apg::ExtElem> {
    std::size_t operator()(const apg::ExtElem& e) const noexcept {
        return std::hash<apg::Mat2<apg::PScaled>>{}(e.lambda) * 31 + std::hash<apg::PScaled>{}(e.a);
    }
};

namespace apg {

/// Memo of beta over exact matrix pairs; safe for concurrent use. Bounded:
/// all-pairs scans over large balls would otherwise hold every pair.
class BetaCache {
public:
    static constexpr std::size_t kCapacity = 1 << 18;

    int get(const Mat2<PScaled>& x, const Mat2<PScaled>& y) {
        Key k{x, y};
        {
            std::lock_guard lock(mu_);
            if (auto it = map_.find(k); it != map_.end()) return it->second;
        }
        int v = exact_beta(x, y);
        std::lock_guard lock(mu_);
        if (map_.size() >= kCapacity) map_.clear();  // values are pure, so dropping them is safe
        map_.emplace(std::move(k), v);
        return v;
    }
    std::size_t size() const {
        std::lock_guard lock(mu_);
        return map_.size();
    }

private:
    struct Key {
        Mat2<PScaled> x, y;
        bool operator==(const Key&) const = default;
    };
    struct KeyHash {
        std::size_t operator()(const Key& k) const {
            std::hash<Mat2<PScaled>> h;
            return h(k.x) * 1000003 ^ h(k.y);
        }
    };
    mutable std::mutex mu_;
    std::unordered_map<Key, int, KeyHash> map_;
};

/// (l1, a1)(l2, a2) = (l1 l2, a1 + a2 + beta(l1, l2)).
inline ExtElem twisted_product(const ExtElem& u, const ExtElem& v, BetaCache* cache = nullptr) {
    if (u.a.p() != v.a.p()) throw std::invalid_argument("twisted_product: mixed primes");
    const int beta = cache ? cache->get(u.lambda, v.lambda) : exact_beta(u.lambda, v.lambda);
    return {mat2_mul(u.lambda, v.lambda), u.a + v.a + PScaled::integer(beta, u.a.p())};
}

/// delta(lambda, a) = -a.
inline PScaled delta_qm(const ExtElem& u) { return -u.a; }

/// The central extension of SL2(Z[1/p]) by Z[1/p] twisted by beta.
/// Gauge: the larger of the matrix height and the height of a.
struct ExtGroup {
    using element_type = ExtElem;
    long long p = 2;
    std::shared_ptr<BetaCache> cache = std::make_shared<BetaCache>();

    ExtElem compose(const ExtElem& u, const ExtElem& v) const { return twisted_product(u, v, cache.get()); }
    ExtElem invert(const ExtElem& u) const {
        Mat2<PScaled> li = mat2_inv(u.lambda);
        return {li, -u.a - PScaled::integer(cache->get(u.lambda, li), p)};
    }
    ExtElem identity() const { return {identity_mat(p), PScaled(p)}; }
    double gauge(const ExtElem& u) const {
        BigInt h = u.lambda.height();
        BigInt ha = u.a.height();
        return (h > ha ? h : ha).convert_to<double>();
    }
    bool within(const ExtElem& u, const Rational& r) const {
        return Rational(u.lambda.height()) <= r && Rational(u.a.height()) <= r;
    }
    std::string format(const ExtElem& u) const { return u.str(); }
    std::string name() const { return "ext " + std::to_string(p); }
    bool operator==(const ExtGroup& o) const { return p == o.p; }
};

/// [[1,1],[0,1]], [[1,0],[1,1]], [[p,0],[0,1/p]], their inverses, and the
/// central elements (I, 1), (I, -1).
inline std::vector<ExtElem> default_generators(const ExtGroup& g) {
    const long long p = g.p;
    auto one = PScaled::integer(1, p);
    auto zero = PScaled(p);
    std::vector<Mat2<PScaled>> mats{{one, one, zero, one}, {one, zero, one, one},
                                    {PScaled::integer(p, p), zero, zero, PScaled(BigInt(1), 1, p)}};
    std::vector<ExtElem> gens;
    for (const auto& m : mats) gens.push_back({m, zero});
    for (const auto& m : mats) gens.push_back(g.invert({m, zero}));
    gens.push_back({identity_mat(p), one});
    gens.push_back({identity_mat(p), -one});
    return gens;
}

/// Approximate kernel {x : -2 < delta(x) < 2}.
inline PointSet<ExtGroup> kernel_Delta(const PointSet<ExtGroup>& ball) {
    const Rational two(2);
    std::vector<ExtElem> kept;
    for (const auto& u : ball) {
        Rational d = delta_qm(u).to_rational();
        if (-two < d && d < two) kept.push_back(u);
    }
    return PointSet<ExtGroup>(ball.ambient(), std::move(kept), ball.region());
}

}  // namespace apg
