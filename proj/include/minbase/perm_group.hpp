#pragma once

#include "minbase/bigint.hpp"
#include "minbase/permutation.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace minbase {

/// One level of a stabilizer chain: the basic orbit of `point` under the
/// strong generators fixing all earlier base points, with a transversal.
struct ChainLevel {
    Point point = 0;
    std::vector<Permutation> generators;
    std::vector<Point> orbit;
    /// position of a point inside `orbit`, or -1
    std::vector<std::int32_t> orbit_index;
    /// transversal[k] maps `point` to orbit[k]
    std::vector<Permutation> transversal;
};

/// A permutation group given by generators, with a stabilizer chain built by
/// deterministic Schreier-Sims. Immutable once constructed.
///
/// Base points are chosen as the smallest point moved by the element that
/// forces a new level, so two constructions from the same generator list
/// give the same base and the same order.
class PermGroup {
public:
    /// Trivial group of the given degree.
    explicit PermGroup(std::size_t degree = 0);
    PermGroup(std::size_t degree, std::vector<Permutation> generators);

    std::size_t degree() const { return degree_; }
    const std::vector<Permutation>& generators() const { return generators_; }
    const std::vector<ChainLevel>& chain() const { return chain_; }
    std::vector<Point> base() const;
    const BigInt& order() const { return order_; }
    bool is_trivial() const { return order_ == 1; }

    bool contains(const Permutation& g) const;

    /// All elements, in chain order. Throws BudgetError above `cap`.
    std::vector<Permutation> elements(std::size_t cap = 100000) const;

    /// Orbit of a point under the generators, in discovery order.
    std::vector<Point> orbit(Point p) const;
    bool is_transitive() const;

    /// Sign-preserving index-<=2 subgroup G cap Alt(n).
    PermGroup even_part() const;

    /// H^g = g^-1 H g
    PermGroup conjugate(const Permutation& g) const;

private:
    void build();
    struct SiftResult {
        Permutation residue;
        std::size_t level;
    };
    SiftResult sift(Permutation g, std::size_t start) const;
    void rebuild_orbit(ChainLevel& level) const;

    std::size_t degree_ = 0;
    std::vector<Permutation> generators_;
    std::vector<ChainLevel> chain_;
    BigInt order_ = 1;
};

struct CosetAction {
    /// Image of G acting on right cosets Hx by right multiplication; its
    /// generators are the images of G's generators, in order.
    PermGroup image;
    /// representatives[i] is the lexicographically least element of coset i;
    /// coset 0 is H itself.
    std::vector<Permutation> representatives;
};

/// Action of G on the right cosets of H. Requires H <= G and |G| <= cap.
CosetAction coset_action(const PermGroup& G, const PermGroup& H, std::size_t cap = 100000);

/// Group file: first line "degree n", then one generator per line in cycle notation.
PermGroup parse_group_file(const std::string& text);
std::string format_group_file(const PermGroup& G);

}  // namespace minbase
