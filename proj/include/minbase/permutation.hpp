#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace minbase {

using Point = std::uint32_t;

/// A bijection of {0, ..., n-1}. Entry k of images() is the image of point k.
///
/// Products apply the left factor first: (a * b)(x) = b(a(x)). This matches
/// right actions, so conjugation x^g = g^-1 * x * g relabels the points of x
/// by g. Text I/O uses 1-based points.
class Permutation {
public:
    Permutation() = default;
    explicit Permutation(std::size_t degree);
    explicit Permutation(std::vector<Point> images);

    static Permutation identity(std::size_t degree) { return Permutation(degree); }

    /// Builds a permutation from 0-based cycles, applied left to right.
    static Permutation from_cycles(std::size_t degree,
                                   const std::vector<std::vector<Point>>& cycles);

    std::size_t degree() const { return images_.size(); }
    Point operator[](Point x) const { return images_[x]; }
    std::span<const Point> images() const { return images_; }

    bool is_identity() const;
    bool is_even() const;
    /// Smallest moved point, or degree() for the identity.
    Point first_moved() const;

    Permutation inverse() const;
    Permutation operator*(const Permutation& rhs) const;
    Permutation& operator*=(const Permutation& rhs);
    Permutation pow(long long e) const;
    /// g^-1 * this * g
    Permutation conjugate_by(const Permutation& g) const;

    std::size_t order() const;

    /// Disjoint cycle notation with 1-based points; "()" for the identity.
    std::string to_cycle_string() const;

    friend bool operator==(const Permutation&, const Permutation&) = default;
    friend auto operator<=>(const Permutation& a, const Permutation& b)
    {
        return a.images_ <=> b.images_;
    }

private:
    std::vector<Point> images_;
};

/// Parses 1-based cycle notation such as "(1,2)(3,4,5)". Cycles need not be
/// disjoint; they are applied left to right. "" and "()" give the identity.
Permutation parse_permutation(std::string_view text, std::size_t degree);

struct PermutationHash {
    std::size_t operator()(const Permutation& p) const noexcept;
};

}  // namespace minbase
