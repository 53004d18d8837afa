#pragma once

#include "minbase/bigint.hpp"
#include "minbase/perm_group.hpp"

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace minbase {

/// A partition of {0..n-1}. Blocks are kept sorted, and the block list is
/// sorted by first element, so equal partitions compare equal.
class SetPartition {
public:
    SetPartition() = default;
    SetPartition(std::size_t ground_size, std::vector<std::vector<Point>> blocks);
    /// From a block label per point.
    static SetPartition from_labels(const std::vector<std::size_t>& labels);

    std::size_t ground_size() const { return n_; }
    const std::vector<std::vector<Point>>& blocks() const { return blocks_; }
    std::size_t block_count() const { return blocks_.size(); }
    /// Common block size, or 0 if the blocks have different sizes.
    std::size_t uniform_block_size() const;
    /// block_of()[x] is the index of the block containing x
    const std::vector<std::size_t>& block_of() const { return block_of_; }

    SetPartition image(const Permutation& g) const;
    bool is_fixed_by(const Permutation& g) const;
    /// "{1,2,3}|{4,5,6}" with 1-based points
    std::string to_string() const;

    friend bool operator==(const SetPartition& a, const SetPartition& b) { return a.blocks_ == b.blocks_; }

private:
    std::size_t n_ = 0;
    std::vector<std::vector<Point>> blocks_;
    std::vector<std::size_t> block_of_;
};

SetPartition parse_partition(const std::string& text, std::size_t ground_size);

/// The row partition {0..b-1 | b..2b-1 | ...} of a*b points.
SetPartition row_partition(std::size_t a, std::size_t b);

enum class GridCase { plus2, plus1, equal };

/// Domain of one of the three explicit constructions, with its points
/// numbered row-major over the admissible pairs (i, j).
class GridCoords {
public:
    GridCoords(GridCase tag, std::size_t a);

    GridCase tag() const { return tag_; }
    std::size_t a() const { return a_; }
    std::size_t size() const { return coords_.size(); }
    const std::pair<int, int>& coords(Point x) const { return coords_[x]; }
    bool contains(int i, int j) const;
    /// Point of (i, j). For plus2/plus1 indices are taken mod a; for equal
    /// they are 1-based.
    Point point(int i, int j) const;
    std::string tag_name() const;

private:
    GridCase tag_;
    std::size_t a_;
    std::vector<std::pair<int, int>> coords_;
    std::map<std::pair<int, int>, Point> index_;
};

struct BcdTriple {
    GridCoords grid;
    SetPartition B, C, D;
    std::vector<SetPartition> as_list() const { return {B, C, D}; }
};

BcdTriple construct_bcd_plus2(std::size_t a);
BcdTriple construct_bcd_plus1(std::size_t a);
BcdTriple construct_bcd_equal(std::size_t a);

/// c[r-1][i] = #{s : |C_r n D_s| = i} and d[r-1][i] = #{s : |C_s n D_r| = i}
/// for i = 0..a (blocks indexed 1..a in the a = b construction's order).
struct SignatureCounts {
    std::vector<std::vector<std::size_t>> c, d;
};
SignatureCounts signature_counts(const BcdTriple& t);

enum class Parity { all, even };

/// All g in Sym(n) (or Alt(n)) that map every listed partition to itself.
/// Computed as the automorphism group of a coloured point/block incidence
/// graph by colour refinement and individualisation backtracking.
PermGroup partition_stabilizer(const std::vector<SetPartition>& partitions, Parity parity = Parity::all);

/// Theorem values of b(S_ab, S_b wr S_a) and of the alternating analogue.
std::size_t expected_base_size(std::size_t a, std::size_t b, Parity parity);

enum class BaseMode { exact, upper };

struct BaseSizeResult {
    std::size_t value = 0;
    bool exact = false;
    std::vector<SetPartition> witness;
    std::string method;
    std::size_t trials = 0;
};

struct SearchOptions {
    std::uint64_t seed = 1;
    std::size_t budget = 100000;
};

/// Least k such that k partitions of shape (a, b) have trivial common
/// stabilizer in the ambient group. Exact mode exhausts orbit representatives
/// (n = ab <= 12), or for larger n accepts only a found pair, since one
/// partition is never a base.
BaseSizeResult base_size_partitions(std::size_t a, std::size_t b, BaseMode mode, Parity parity,
                                    const SearchOptions& opt = {});

struct PairSearchResult {
    std::optional<std::vector<SetPartition>> witness;
    std::size_t trials = 0;
};

/// Randomized search for two partitions with trivial common stabilizer. The
/// first is the row partition; the second is drawn so that every block meets
/// every row in at most one point (a random b-regular bipartite pattern).
PairSearchResult random_pair_search(std::size_t a, std::size_t b, Parity parity, const SearchOptions& opt = {});

struct Theorem2Base {
    std::vector<SetPartition> partitions;
    std::string construction;
    BigInt stabilizer_order;
    std::size_t trials = 0;
};

/// A base of minimal size for S_ab acting on partitions into a blocks of
/// size b, certified by partition_stabilizer before it is returned.
Theorem2Base construct_theorem2_base(std::size_t a, std::size_t b, const SearchOptions& opt = {});

}  // namespace minbase
