#pragma once

#include "apg/exact/rational.hpp"
#include "apg/group/approx_group.hpp"
#include "apg/group/point_set.hpp"

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace apg {

/// Freely reduced word in the free group on x, y.
///
/// Letters are +1 (x), -1 (x^-1), +2 (y), -2 (y^-1); the text form uses
/// x, X, y, Y and "e" for the empty word.
class FreeWord {
public:
    using Letter = std::int8_t;

    FreeWord() = default;
    explicit FreeWord(const std::vector<Letter>& letters) {
        for (Letter l : letters) push(l);
    }

    static FreeWord parse(std::string_view s) {
        FreeWord w;
        if (s == "e") return w;
        for (char c : s) {
            switch (c) {
                case 'x': w.push(1); break;
                case 'X': w.push(-1); break;
                case 'y': w.push(2); break;
                case 'Y': w.push(-2); break;
                default: throw std::invalid_argument("bad letter '" + std::string(1, c) + "' in word " + std::string(s));
            }
        }
        return w;
    }

    static FreeWord x() { return FreeWord({1}); }
    static FreeWord y() { return FreeWord({2}); }

    const std::vector<Letter>& letters() const { return letters_; }
    std::size_t length() const { return letters_.size(); }
    bool empty() const { return letters_.empty(); }

    bool is_cyclically_reduced() const { return letters_.size() < 2 || letters_.front() != -letters_.back(); }

    FreeWord inverse() const {
        FreeWord w;
        w.letters_.reserve(letters_.size());
        for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) w.letters_.push_back(static_cast<Letter>(-*it));
        return w;
    }

    friend FreeWord operator*(const FreeWord& a, const FreeWord& b) {
        FreeWord w = a;
        for (Letter l : b.letters_) w.push(l);
        return w;
    }

    /// w^n for any integer n.
    FreeWord pow(long long n) const {
        const FreeWord base = n < 0 ? inverse() : *this;
        FreeWord out;
        for (long long i = 0; i < (n < 0 ? -n : n); ++i) out = out * base;
        return out;
    }

    std::string str() const {
        if (letters_.empty()) return "e";
        std::string s;
        for (Letter l : letters_) s += l == 1 ? 'x' : l == -1 ? 'X' : l == 2 ? 'y' : 'Y';
        return s;
    }

    friend bool operator==(const FreeWord&, const FreeWord&) = default;
    /// Shortlex with x < X < y < Y.
    friend std::strong_ordering operator<=>(const FreeWord& a, const FreeWord& b) {
        if (a.length() != b.length()) return a.length() <=> b.length();
        for (std::size_t i = 0; i < a.length(); ++i) {
            int ra = rank(a.letters_[i]);
            int rb = rank(b.letters_[i]);
            if (ra != rb) return ra <=> rb;
        }
        return std::strong_ordering::equal;
    }

private:
    static int rank(Letter l) { return (l > 0 ? l : -l) * 2 - 2 + (l < 0 ? 1 : 0); }

    void push(Letter l) {
        if (l == 0 || l > 2 || l < -2) throw std::invalid_argument("bad letter");
        if (!letters_.empty() && letters_.back() == -l)
            letters_.pop_back();
        else
            letters_.push_back(l);
    }

    std::vector<Letter> letters_;
};

}  // namespace apg

template <>
struct std::hash<apg::FreeWord> {
    std::size_t operator()(const apg::FreeWord& w) const noexcept {
        std::size_t h = 1469598103934665603ULL;
        for (auto l : w.letters()) h = (h ^ static_cast<std::size_t>(l + 3)) * 1099511628211ULL;
        return h;
    }
};

namespace apg {

/// Free group on two letters; gauge is word length.
struct FreeGroup {
    using element_type = FreeWord;
    FreeWord compose(const FreeWord& a, const FreeWord& b) const { return a * b; }
    FreeWord invert(const FreeWord& a) const { return a.inverse(); }
    FreeWord identity() const { return FreeWord(); }
    double gauge(const FreeWord& a) const { return static_cast<double>(a.length()); }
    bool within(const FreeWord& a, const Rational& r) const { return Rational(static_cast<long long>(a.length())) <= r; }
    std::string format(const FreeWord& a) const { return a.str(); }
    std::string name() const { return "free2"; }
    bool operator==(const FreeGroup&) const = default;
};

/// Ball of the given word length, tagged with that radius as its region.
inline PointSet<FreeGroup> free_ball(int radius) {
    FreeGroup g;
    const std::vector<FreeWord> gens{FreeWord::x(), FreeWord::x().inverse(), FreeWord::y(), FreeWord::y().inverse()};
    auto ball = word_ball(g, gens, radius);
    return PointSet<FreeGroup>(g, ball.elements(), Rational(radius));
}

}  // namespace apg
