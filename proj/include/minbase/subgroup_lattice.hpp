#pragma once

#include "minbase/perm_group.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <unordered_map>
#include <vector>

namespace minbase {

using ElementId = std::uint32_t;

inline constexpr std::size_t kDefaultOrderCap = 1000;
inline constexpr std::size_t kHardOrderCap = 2000;

/// Fixed-size bit set over element ids.
class ElementSet {
public:
    ElementSet() = default;
    explicit ElementSet(std::size_t universe) : size_(universe), words_((universe + 63) / 64, 0) {}

    std::size_t universe() const { return size_; }
    bool test(ElementId x) const { return (words_[x >> 6] >> (x & 63)) & 1u; }
    void set(ElementId x) { words_[x >> 6] |= std::uint64_t{1} << (x & 63); }
    std::size_t count() const;
    bool is_subset_of(const ElementSet& other) const;
    ElementSet operator&(const ElementSet& other) const;
    std::vector<ElementId> to_vector() const;

    friend bool operator==(const ElementSet&, const ElementSet&) = default;
    std::size_t hash() const;

private:
    std::size_t size_ = 0;
    std::vector<std::uint64_t> words_;
};

struct ElementSetHash {
    std::size_t operator()(const ElementSet& s) const noexcept { return s.hash(); }
};

/// Multiplication table of a small permutation group. Elements are sorted
/// lexicographically by image list, so id 0 is the identity.
class GroupTable {
public:
    GroupTable(const PermGroup& G, std::size_t order_cap);

    std::size_t size() const { return elements_.size(); }
    const PermGroup& group() const { return group_; }
    const Permutation& element(ElementId x) const { return elements_[x]; }
    std::optional<ElementId> find(const Permutation& g) const;
    ElementId id_of(const Permutation& g) const;

    ElementId mul(ElementId a, ElementId b) const { return table_[std::size_t{a} * size() + b]; }
    ElementId inv(ElementId a) const { return inverse_[a]; }
    ElementId conj(ElementId h, ElementId g) const { return mul(inv(g), mul(h, g)); }
    ElementId commutator(ElementId a, ElementId b) const { return mul(mul(inv(a), inv(b)), mul(a, b)); }
    std::size_t element_order(ElementId a) const { return orders_[a]; }
    const std::vector<ElementId>& generator_ids() const { return generator_ids_; }

private:
    PermGroup group_;
    std::vector<Permutation> elements_;
    std::unordered_map<Permutation, ElementId, PermutationHash> index_;
    std::vector<std::uint16_t> table_;
    std::vector<ElementId> inverse_;
    std::vector<std::size_t> orders_;
    std::vector<ElementId> generator_ids_;
};

/// A subgroup of the ambient group of a GroupTable, stored as an element set.
struct SubgroupRecord {
    std::shared_ptr<const GroupTable> parent;
    ElementSet bits;
    std::vector<ElementId> elements;  // sorted
    std::size_t order = 0;
    std::vector<ElementId> generators;

    bool contains(ElementId x) const { return bits.test(x); }
    bool is_subgroup_of(const SubgroupRecord& other) const { return bits.is_subset_of(other.bits); }
    std::vector<Permutation> generator_permutations() const;
    PermGroup as_perm_group() const;

    friend bool operator==(const SubgroupRecord& a, const SubgroupRecord& b) { return a.bits == b.bits; }
};

struct ChiefFactor {
    std::size_t order = 0;
    bool abelian = false;
    bool non_frattini = false;
    std::size_t composition_length = 0;
};

struct ChiefSeriesReport {
    /// G = series[0] > series[1] > ... > series.back() = 1, all normal in G
    std::vector<SubgroupRecord> series;
    /// factors[i] is series[i] / series[i+1]
    std::vector<ChiefFactor> factors;

    std::size_t length() const { return factors.size(); }
    std::size_t non_frattini_count() const;
};

/// Every subgroup of a small group, with the derived data the intersection
/// searches need (maximals, Frattini subgroup, conjugacy classes).
///
/// Subgroups come from join-closure: start from the cyclic subgroups and
/// repeatedly join with a cyclic subgroup until nothing new appears.
class SubgroupLattice {
public:
    explicit SubgroupLattice(const PermGroup& G, std::size_t order_cap = kDefaultOrderCap);

    const GroupTable& table() const { return *table_; }
    std::shared_ptr<const GroupTable> table_ptr() const { return table_; }

    /// Sorted by order, then by element list.
    const std::vector<SubgroupRecord>& subgroups() const { return subgroups_; }
    const SubgroupRecord& whole() const { return subgroups_.back(); }
    const SubgroupRecord& trivial() const { return subgroups_.front(); }
    std::optional<std::size_t> index_of(const ElementSet& bits) const;

    const std::vector<std::size_t>& maximal_indices() const { return maximal_; }
    std::vector<SubgroupRecord> maximal_subgroups() const;
    /// Maximal subgroups grouped into conjugacy classes (indices into subgroups()).
    const std::vector<std::vector<std::size_t>>& maximal_classes() const { return maximal_classes_; }
    const SubgroupRecord& frattini() const { return subgroups_[frattini_]; }

    bool is_maximal(const SubgroupRecord& H) const;
    bool is_normal(const SubgroupRecord& H) const;
    std::vector<SubgroupRecord> normal_subgroups() const;
    SubgroupRecord conjugate(const SubgroupRecord& H, ElementId g) const;
    /// Distinct conjugates of H, each with one conjugating element.
    std::vector<std::pair<SubgroupRecord, ElementId>> conjugates(const SubgroupRecord& H) const;
    SubgroupRecord core(const SubgroupRecord& H) const;
    SubgroupRecord intersect(const SubgroupRecord& a, const SubgroupRecord& b) const;
    /// Intersection of every maximal subgroup containing K.
    SubgroupRecord frattini_above(const SubgroupRecord& K) const;
    ChiefSeriesReport chief_series() const;
    /// Covering relations (lower index, upper index) of the lattice.
    std::vector<std::pair<std::size_t, std::size_t>> covering_edges() const;

    /// Subgroup generated by the given elements.
    SubgroupRecord generate(const std::vector<ElementId>& gens) const;
    SubgroupRecord make_record(ElementSet bits, std::vector<ElementId> gens) const;
    SubgroupRecord from_perm_group(const PermGroup& H) const;

private:
    std::shared_ptr<const GroupTable> table_;
    std::vector<SubgroupRecord> subgroups_;
    std::unordered_map<ElementSet, std::size_t, ElementSetHash> lookup_;
    std::vector<std::size_t> maximal_;
    std::vector<std::vector<std::size_t>> maximal_classes_;
    std::size_t frattini_ = 0;
    /// conj_[k][h] = g_k^-1 h g_k for the k-th generator g_k of G
    std::vector<std::vector<ElementId>> conj_;
};

/// Free-function forms of the lattice queries.
std::vector<SubgroupRecord> all_subgroups(const PermGroup& G, std::size_t order_cap = kDefaultOrderCap);
std::vector<SubgroupRecord> maximal_subgroups(const PermGroup& G, std::size_t order_cap = kDefaultOrderCap);
SubgroupRecord frattini(const PermGroup& G, std::size_t order_cap = kDefaultOrderCap);
ChiefSeriesReport chief_series(const PermGroup& G, std::size_t order_cap = kDefaultOrderCap);

/// Group-structure helpers on subgroups of a table.
SubgroupRecord generate_subgroup(const std::shared_ptr<const GroupTable>& table, const std::vector<ElementId>& gens);
SubgroupRecord normal_closure(const SubgroupRecord& N, const SubgroupRecord& in);
/// [A, B] for subgroups A, B of a common group; normal closure taken in `ambient`.
SubgroupRecord commutator_subgroup(const SubgroupRecord& A, const SubgroupRecord& B, const SubgroupRecord& ambient);
SubgroupRecord derived_subgroup(const SubgroupRecord& H);
bool is_soluble(const SubgroupRecord& H);
bool is_nilpotent(const SubgroupRecord& H);
bool is_abelian(const SubgroupRecord& H);

}  // namespace minbase
