#pragma once

#include "apg/group/ambient.hpp"
#include "apg/group/errors.hpp"

#include <algorithm>
#include <optional>
#include <unordered_set>
#include <vector>

namespace apg {

/// Finite, duplicate-free truncation of a subset of an ambient group.
///
/// `region` is the truncation bound: the set holds every intended element of
/// gauge <= region. An empty region means the finite set is the whole intended
/// set (nothing was cut off). Elements are kept in canonical order.
template <AmbientGroup G>
class PointSet {
public:
    using element_type = element_t<G>;

    PointSet() = default;
    PointSet(G ambient, std::vector<element_type> elements, std::optional<Rational> region = std::nullopt)
        : ambient_(std::move(ambient)), elements_(std::move(elements)), region_(std::move(region)) {
        std::sort(elements_.begin(), elements_.end());
        elements_.erase(std::unique(elements_.begin(), elements_.end()), elements_.end());
        index_.reserve(elements_.size());
        index_.insert(elements_.begin(), elements_.end());
    }

    const G& ambient() const { return ambient_; }
    const std::vector<element_type>& elements() const { return elements_; }
    const std::optional<Rational>& region() const { return region_; }
    bool complete() const { return !region_.has_value(); }
    std::size_t size() const { return elements_.size(); }
    bool empty() const { return elements_.empty(); }
    bool contains(const element_type& x) const { return index_.count(x) != 0; }

    auto begin() const { return elements_.begin(); }
    auto end() const { return elements_.end(); }

    /// Largest gauge present (0 for the empty set).
    double cap() const {
        double c = 0;
        for (const auto& x : elements_) c = std::max(c, ambient_.gauge(x));
        return c;
    }

    /// Elements of gauge <= r.
    PointSet restrict_to(const Rational& r) const {
        std::vector<element_type> kept;
        for (const auto& x : elements_)
            if (ambient_.within(x, r)) kept.push_back(x);
        std::optional<Rational> reg = r;
        if (region_ && *region_ < r) reg = region_;
        return PointSet(ambient_, std::move(kept), reg);
    }

    PointSet inverted() const {
        std::vector<element_type> inv;
        inv.reserve(elements_.size());
        for (const auto& x : elements_) inv.push_back(ambient_.invert(x));
        return PointSet(ambient_, std::move(inv), region_);
    }

    /// Elements in scan order: increasing gauge, ties by canonical order.
    std::vector<element_type> by_gauge() const {
        std::vector<std::pair<double, element_type>> keyed;
        keyed.reserve(elements_.size());
        for (const auto& x : elements_) keyed.emplace_back(ambient_.gauge(x), x);
        std::stable_sort(keyed.begin(), keyed.end(), [](const auto& l, const auto& r) { return l.first < r.first; });
        std::vector<element_type> out;
        out.reserve(keyed.size());
        for (auto& kv : keyed) out.push_back(std::move(kv.second));
        return out;
    }

    /// Element set equality (region metadata ignored).
    bool same_elements(const PointSet& o) const { return elements_ == o.elements_; }

private:
    G ambient_{};
    std::vector<element_type> elements_;
    std::optional<Rational> region_;
    std::unordered_set<element_type> index_;
};

template <AmbientGroup G>
void require_same_ambient(const PointSet<G>& x, const PointSet<G>& y) {
    if (!(x.ambient() == y.ambient())) throw AmbientMismatch(x.ambient().name(), y.ambient().name());
}

}  // namespace apg
