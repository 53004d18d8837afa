#include "minbase/subgroup_lattice.hpp"

#include "minbase/errors.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

namespace minbase {

// ---------------------------------------------------------------- ElementSet

std::size_t ElementSet::count() const
{
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
}

bool ElementSet::is_subset_of(const ElementSet& other) const
{
    for (std::size_t i = 0; i < words_.size(); ++i)
        if (words_[i] & ~other.words_[i]) return false;
    return true;
}

ElementSet ElementSet::operator&(const ElementSet& other) const
{
    ElementSet r(size_);
    for (std::size_t i = 0; i < words_.size(); ++i) r.words_[i] = words_[i] & other.words_[i];
    return r;
}

std::vector<ElementId> ElementSet::to_vector() const
{
    std::vector<ElementId> out;
    for (std::size_t i = 0; i < words_.size(); ++i) {
        std::uint64_t w = words_[i];
        while (w) {
            const int b = std::countr_zero(w);
            out.push_back(static_cast<ElementId>(i * 64 + static_cast<std::size_t>(b)));
            w &= w - 1;
        }
    }
    return out;
}

std::size_t ElementSet::hash() const
{
    std::size_t h = 1469598103934665603ull;
    for (auto w : words_) h = (h ^ w) * 1099511628211ull;
    return h;
}

// ---------------------------------------------------------------- GroupTable

GroupTable::GroupTable(const PermGroup& G, std::size_t order_cap) : group_(G)
{
    if (order_cap > kHardOrderCap) order_cap = kHardOrderCap;
    if (G.order() > order_cap)
        throw BudgetError("group order " + G.order().str() + " exceeds lattice cap " + std::to_string(order_cap));
    elements_ = G.elements(order_cap);
    std::sort(elements_.begin(), elements_.end());
    const std::size_t n = elements_.size();
    index_.reserve(n * 2);
    for (std::size_t i = 0; i < n; ++i) index_.emplace(elements_[i], static_cast<ElementId>(i));

    for (const auto& g : G.generators()) generator_ids_.push_back(id_of(g));

    // Right multiplication by generators, then the full table along a BFS
    // spanning tree: if b = c * s then a * b = (a * c) * s.
    const std::size_t ng = generator_ids_.size();
    std::vector<ElementId> by_gen(n * ng);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t s = 0; s < ng; ++s) by_gen[a * ng + s] = id_of(elements_[a] * G.generators()[s]);

    std::vector<std::int64_t> parent(n, -1), via(n, -1);
    std::vector<ElementId> bfs{0};
    parent[0] = 0;
    for (std::size_t k = 0; k < bfs.size(); ++k)
        for (std::size_t s = 0; s < ng; ++s) {
            const ElementId c = by_gen[bfs[k] * ng + s];
            if (parent[c] < 0) {
                parent[c] = bfs[k];
                via[c] = static_cast<std::int64_t>(s);
                bfs.push_back(c);
            }
        }

    table_.assign(n * n, 0);
    for (std::size_t a = 0; a < n; ++a) {
        table_[a * n] = static_cast<std::uint16_t>(a);
        for (std::size_t k = 1; k < bfs.size(); ++k) {
            const ElementId b = bfs[k];
            const auto c = static_cast<std::size_t>(parent[b]);
            const auto s = static_cast<std::size_t>(via[b]);
            table_[a * n + b] = static_cast<std::uint16_t>(by_gen[table_[a * n + c] * ng + s]);
        }
    }

    inverse_.resize(n);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            if (table_[a * n + b] == 0) {
                inverse_[a] = static_cast<ElementId>(b);
                break;
            }
    orders_.resize(n);
    for (std::size_t a = 0; a < n; ++a) orders_[a] = elements_[a].order();
}

std::optional<ElementId> GroupTable::find(const Permutation& g) const
{
    auto it = index_.find(g);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

ElementId GroupTable::id_of(const Permutation& g) const
{
    auto id = find(g);
    if (!id) throw PreconditionError("element " + g.to_cycle_string() + " is not in the group");
    return *id;
}

// ---------------------------------------------------------------- records

std::vector<Permutation> SubgroupRecord::generator_permutations() const
{
    std::vector<Permutation> out;
    for (auto g : generators) out.push_back(parent->element(g));
    return out;
}

PermGroup SubgroupRecord::as_perm_group() const
{
    return PermGroup(parent->group().degree(), generator_permutations());
}

std::size_t ChiefSeriesReport::non_frattini_count() const
{
    return static_cast<std::size_t>(
        std::count_if(factors.begin(), factors.end(), [](const ChiefFactor& f) { return f.non_frattini; }));
}

namespace {

SubgroupRecord record_from_bits(const std::shared_ptr<const GroupTable>& table, ElementSet bits,
                                std::vector<ElementId> gens)
{
    SubgroupRecord r;
    r.parent = table;
    r.elements = bits.to_vector();
    r.order = r.elements.size();
    r.bits = std::move(bits);
    r.generators = std::move(gens);
    return r;
}

/// Closure of `start` (already closed under `old_gens`) after adding `extra`.
ElementSet extend_closure(const GroupTable& t, const ElementSet& start, const std::vector<ElementId>& start_elems,
                          const std::vector<ElementId>& all_gens, ElementId extra)
{
    ElementSet bits = start;
    std::vector<ElementId> fresh;
    auto visit = [&](ElementId c) {
        if (!bits.test(c)) {
            bits.set(c);
            fresh.push_back(c);
        }
    };
    for (auto e : start_elems) visit(t.mul(e, extra));
    for (std::size_t k = 0; k < fresh.size(); ++k)
        for (auto s : all_gens) visit(t.mul(fresh[k], s));
    return bits;
}

/// Drops generators that are already implied by earlier ones.
std::vector<ElementId> prune_generators(const GroupTable& t, const std::vector<ElementId>& gens)
{
    std::vector<ElementId> kept;
    ElementSet bits(t.size());
    bits.set(0);
    std::vector<ElementId> elems{0};
    for (auto g : gens) {
        if (bits.test(g)) continue;
        kept.push_back(g);
        bits = extend_closure(t, bits, elems, kept, g);
        elems = bits.to_vector();
    }
    return kept;
}

}  // namespace

SubgroupRecord generate_subgroup(const std::shared_ptr<const GroupTable>& table, const std::vector<ElementId>& gens)
{
    const auto kept = prune_generators(*table, gens);
    ElementSet bits(table->size());
    bits.set(0);
    std::vector<ElementId> elems{0};
    std::vector<ElementId> so_far;
    for (auto g : kept) {
        so_far.push_back(g);
        bits = extend_closure(*table, bits, elems, so_far, g);
        elems = bits.to_vector();
    }
    return record_from_bits(table, std::move(bits), kept);
}

SubgroupRecord normal_closure(const SubgroupRecord& N, const SubgroupRecord& in)
{
    const auto& t = *N.parent;
    std::vector<ElementId> gens = N.generators;
    SubgroupRecord cur = generate_subgroup(N.parent, gens);
    while (true) {
        bool grew = false;
        for (auto x : std::vector<ElementId>(cur.generators))
            for (auto g : in.generators) {
                const ElementId c = t.conj(x, g);
                if (!cur.contains(c)) {
                    gens = cur.generators;
                    gens.push_back(c);
                    cur = generate_subgroup(N.parent, gens);
                    grew = true;
                }
            }
        if (!grew) return cur;
    }
}

SubgroupRecord commutator_subgroup(const SubgroupRecord& A, const SubgroupRecord& B, const SubgroupRecord& ambient)
{
    const auto& t = *A.parent;
    std::vector<ElementId> comms;
    for (auto a : A.generators)
        for (auto b : B.generators) {
            const ElementId c = t.commutator(a, b);
            if (c != 0) comms.push_back(c);
        }
    return normal_closure(generate_subgroup(A.parent, comms), ambient);
}

SubgroupRecord derived_subgroup(const SubgroupRecord& H) { return commutator_subgroup(H, H, H); }

bool is_abelian(const SubgroupRecord& H)
{
    const auto& t = *H.parent;
    for (auto a : H.generators)
        for (auto b : H.generators)
            if (t.mul(a, b) != t.mul(b, a)) return false;
    return true;
}

bool is_soluble(const SubgroupRecord& H)
{
    SubgroupRecord cur = H;
    while (cur.order > 1) {
        SubgroupRecord next = derived_subgroup(cur);
        if (next.order == cur.order) return false;
        cur = std::move(next);
    }
    return true;
}

bool is_nilpotent(const SubgroupRecord& H)
{
    SubgroupRecord cur = H;
    while (cur.order > 1) {
        SubgroupRecord next = commutator_subgroup(cur, H, H);
        if (next.order == cur.order) return false;
        cur = std::move(next);
    }
    return true;
}

// ---------------------------------------------------------------- lattice

SubgroupLattice::SubgroupLattice(const PermGroup& G, std::size_t order_cap)
    : table_(std::make_shared<const GroupTable>(G, order_cap))
{
    const auto& t = *table_;
    const std::size_t n = t.size();

    conj_.resize(t.generator_ids().size());
    for (std::size_t k = 0; k < conj_.size(); ++k) {
        conj_[k].resize(n);
        for (std::size_t h = 0; h < n; ++h) conj_[k][h] = t.conj(static_cast<ElementId>(h), t.generator_ids()[k]);
    }

    // cyclic subgroups, one generator each
    std::vector<std::pair<ElementSet, ElementId>> cyclic;
    std::unordered_map<ElementSet, std::size_t, ElementSetHash> cyclic_seen;
    for (std::size_t x = 0; x < n; ++x) {
        ElementSet bits(n);
        ElementId y = 0;
        do {
            bits.set(y);
            y = t.mul(y, static_cast<ElementId>(x));
        } while (y != 0);
        if (cyclic_seen.emplace(bits, cyclic.size()).second) cyclic.emplace_back(std::move(bits), static_cast<ElementId>(x));
    }

    std::vector<SubgroupRecord> found;
    auto add = [&](ElementSet bits, std::vector<ElementId> gens) {
        auto [it, inserted] = lookup_.emplace(bits, found.size());
        if (inserted) found.push_back(record_from_bits(table_, std::move(bits), std::move(gens)));
    };
    for (auto& [bits, x] : cyclic) add(bits, x == 0 ? std::vector<ElementId>{} : std::vector<ElementId>{x});

    for (std::size_t idx = 0; idx < found.size(); ++idx) {
        for (const auto& [cbits, x] : cyclic) {
            if (found[idx].bits.test(x)) continue;
            std::vector<ElementId> gens = found[idx].generators;
            gens.push_back(x);
            ElementSet joined = extend_closure(t, found[idx].bits, found[idx].elements, gens, x);
            if (!lookup_.count(joined)) add(std::move(joined), std::move(gens));
        }
    }

    std::sort(found.begin(), found.end(), [](const SubgroupRecord& a, const SubgroupRecord& b) {
        if (a.order != b.order) return a.order < b.order;
        return a.elements < b.elements;
    });
    subgroups_ = std::move(found);
    lookup_.clear();
    for (std::size_t i = 0; i < subgroups_.size(); ++i) lookup_.emplace(subgroups_[i].bits, i);

    // maximal subgroups
    const std::size_t top = subgroups_.size() - 1;
    for (std::size_t i = 0; i < top; ++i) {
        bool maximal = true;
        for (std::size_t j = i + 1; j < top && maximal; ++j) {
            if (subgroups_[j].order == subgroups_[i].order) continue;
            if (subgroups_[j].order % subgroups_[i].order) continue;
            if (subgroups_[i].is_subgroup_of(subgroups_[j])) maximal = false;
        }
        if (maximal) maximal_.push_back(i);
    }

    // conjugacy classes of maximals
    std::vector<bool> assigned(subgroups_.size(), false);
    for (auto m : maximal_) {
        if (assigned[m]) continue;
        std::vector<std::size_t> cls;
        for (auto& [rec, g] : conjugates(subgroups_[m])) {
            (void)g;
            const std::size_t k = lookup_.at(rec.bits);
            if (!assigned[k]) {
                assigned[k] = true;
                cls.push_back(k);
            }
        }
        std::sort(cls.begin(), cls.end());
        maximal_classes_.push_back(std::move(cls));
    }

    if (maximal_.empty()) {
        frattini_ = top;  // trivial group
    } else {
        ElementSet acc = subgroups_[maximal_.front()].bits;
        for (auto m : maximal_) acc = acc & subgroups_[m].bits;
        frattini_ = lookup_.at(acc);
    }
}

std::optional<std::size_t> SubgroupLattice::index_of(const ElementSet& bits) const
{
    auto it = lookup_.find(bits);
    if (it == lookup_.end()) return std::nullopt;
    return it->second;
}

std::vector<SubgroupRecord> SubgroupLattice::maximal_subgroups() const
{
    std::vector<SubgroupRecord> out;
    for (auto m : maximal_) out.push_back(subgroups_[m]);
    return out;
}

bool SubgroupLattice::is_maximal(const SubgroupRecord& H) const
{
    auto idx = index_of(H.bits);
    return idx && std::binary_search(maximal_.begin(), maximal_.end(), *idx);
}

bool SubgroupLattice::is_normal(const SubgroupRecord& H) const
{
    for (const auto& c : conj_)
        for (auto h : H.elements)
            if (!H.bits.test(c[h])) return false;
    return true;
}

std::vector<SubgroupRecord> SubgroupLattice::normal_subgroups() const
{
    std::vector<SubgroupRecord> out;
    for (const auto& s : subgroups_)
        if (is_normal(s)) out.push_back(s);
    return out;
}

SubgroupRecord SubgroupLattice::conjugate(const SubgroupRecord& H, ElementId g) const
{
    const auto& t = *table_;
    ElementSet bits(t.size());
    for (auto h : H.elements) bits.set(t.conj(h, g));
    std::vector<ElementId> gens;
    for (auto h : H.generators) gens.push_back(t.conj(h, g));
    return record_from_bits(table_, std::move(bits), std::move(gens));
}

std::vector<std::pair<SubgroupRecord, ElementId>> SubgroupLattice::conjugates(const SubgroupRecord& H) const
{
    const auto& t = *table_;
    std::vector<std::pair<SubgroupRecord, ElementId>> orbit{{H, 0}};
    std::unordered_map<ElementSet, std::size_t, ElementSetHash> seen{{H.bits, 0}};
    for (std::size_t k = 0; k < orbit.size(); ++k) {
        for (std::size_t s = 0; s < conj_.size(); ++s) {
            ElementSet bits(t.size());
            for (auto h : orbit[k].first.elements) bits.set(conj_[s][h]);
            if (seen.count(bits)) continue;
            const ElementId g = t.mul(orbit[k].second, t.generator_ids()[s]);
            seen.emplace(bits, orbit.size());
            std::vector<ElementId> gens;
            for (auto h : H.generators) gens.push_back(t.conj(h, g));
            orbit.emplace_back(record_from_bits(table_, std::move(bits), std::move(gens)), g);
        }
    }
    return orbit;
}

SubgroupRecord SubgroupLattice::intersect(const SubgroupRecord& a, const SubgroupRecord& b) const
{
    ElementSet bits = a.bits & b.bits;
    if (auto idx = index_of(bits)) return subgroups_[*idx];
    return make_record(std::move(bits), {});
}

SubgroupRecord SubgroupLattice::core(const SubgroupRecord& H) const
{
    ElementSet acc = H.bits;
    for (const auto& [rec, g] : conjugates(H)) {
        (void)g;
        acc = acc & rec.bits;
    }
    return subgroups_[lookup_.at(acc)];
}

SubgroupRecord SubgroupLattice::frattini_above(const SubgroupRecord& K) const
{
    ElementSet acc = whole().bits;
    for (auto m : maximal_)
        if (K.is_subgroup_of(subgroups_[m])) acc = acc & subgroups_[m].bits;
    return subgroups_[lookup_.at(acc)];
}

ChiefSeriesReport SubgroupLattice::chief_series() const
{
    const auto normals = normal_subgroups();  // ascending order
    ChiefSeriesReport report;
    report.series.push_back(whole());
    while (report.series.back().order > 1) {
        const auto& N = report.series.back();
        const SubgroupRecord* best = nullptr;
        for (const auto& M : normals) {
            if (M.order >= N.order || !M.is_subgroup_of(N)) continue;
            if (!best || M.order > best->order) best = &M;
        }
        report.series.push_back(*best);
    }

    const auto& t = *table_;
    for (std::size_t i = 0; i + 1 < report.series.size(); ++i) {
        const auto& H = report.series[i];
        const auto& K = report.series[i + 1];
        ChiefFactor f;
        f.order = H.order / K.order;
        f.abelian = true;
        for (auto a : H.generators)
            for (auto b : H.generators)
                if (!K.contains(t.commutator(a, b))) f.abelian = false;
        f.non_frattini = !H.is_subgroup_of(frattini_above(K));
        if (f.abelian) {
            std::size_t len = 0;
            for (std::size_t o = f.order; o > 1; ++len) {
                std::size_t p = 2;
                while (o % p) ++p;
                o /= p;
            }
            f.composition_length = len;
        } else {
            // minimal normal subgroups of H/K are the simple direct factors
            std::vector<const SubgroupRecord*> between;
            for (const auto& s : subgroups_) {
                if (s.order <= K.order || !K.is_subgroup_of(s) || !s.is_subgroup_of(H)) continue;
                bool normal_in_h = true;
                for (auto g : H.generators) {
                    for (auto x : s.generators)
                        if (!s.contains(t.conj(x, g))) {
                            normal_in_h = false;
                            break;
                        }
                    if (!normal_in_h) break;
                }
                if (normal_in_h) between.push_back(&s);
            }
            std::size_t minimal = 0;
            for (const auto* s : between) {
                bool is_min = true;
                for (const auto* r : between)
                    if (r != s && r->order < s->order && r->is_subgroup_of(*s)) is_min = false;
                if (is_min) ++minimal;
            }
            f.composition_length = minimal;
        }
        report.factors.push_back(f);
    }
    return report;
}

std::vector<std::pair<std::size_t, std::size_t>> SubgroupLattice::covering_edges() const
{
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    const std::size_t n = subgroups_.size();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            if (subgroups_[j].order == subgroups_[i].order || subgroups_[j].order % subgroups_[i].order) continue;
            if (!subgroups_[i].is_subgroup_of(subgroups_[j])) continue;
            bool covers = true;
            for (std::size_t k = i + 1; k < j && covers; ++k) {
                if (subgroups_[k].order == subgroups_[i].order || subgroups_[k].order == subgroups_[j].order) continue;
                if (subgroups_[i].is_subgroup_of(subgroups_[k]) && subgroups_[k].is_subgroup_of(subgroups_[j]))
                    covers = false;
            }
            if (covers) edges.emplace_back(i, j);
        }
    return edges;
}

SubgroupRecord SubgroupLattice::generate(const std::vector<ElementId>& gens) const
{
    return generate_subgroup(table_, gens);
}

SubgroupRecord SubgroupLattice::make_record(ElementSet bits, std::vector<ElementId> gens) const
{
    return record_from_bits(table_, std::move(bits), std::move(gens));
}

SubgroupRecord SubgroupLattice::from_perm_group(const PermGroup& H) const
{
    std::vector<ElementId> ids;
    for (const auto& h : H.generators()) {
        auto id = table_->find(h);
        if (!id) throw PreconditionError("H is not a subgroup of G");
        ids.push_back(*id);
    }
    return generate(ids);
}

// ---------------------------------------------------------------- free forms

std::vector<SubgroupRecord> all_subgroups(const PermGroup& G, std::size_t order_cap)
{
    return SubgroupLattice(G, order_cap).subgroups();
}

std::vector<SubgroupRecord> maximal_subgroups(const PermGroup& G, std::size_t order_cap)
{
    return SubgroupLattice(G, order_cap).maximal_subgroups();
}

SubgroupRecord frattini(const PermGroup& G, std::size_t order_cap)
{
    return SubgroupLattice(G, order_cap).frattini();
}

ChiefSeriesReport chief_series(const PermGroup& G, std::size_t order_cap)
{
    return SubgroupLattice(G, order_cap).chief_series();
}

}  // namespace minbase
