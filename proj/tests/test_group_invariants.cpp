#include "doctest.h"

#include "minbase/catalog.hpp"
#include "minbase/errors.hpp"
#include "minbase/group_invariants.hpp"

#include <numeric>

using namespace minbase;

namespace {

/// Least number of sets in `pool` whose intersection equals `target`, by
/// trying every subset in order of size.
std::size_t least_cover(const std::vector<ElementSet>& pool, const ElementSet& start, const ElementSet& target)
{
    const std::size_t m = pool.size();
    for (std::size_t k = 1; k <= m; ++k) {
        std::vector<std::size_t> idx(k);
        std::iota(idx.begin(), idx.end(), std::size_t{0});
        while (true) {
            ElementSet acc = start;
            for (auto i : idx) acc = acc & pool[i];
            if (acc == target) return k;
            std::size_t j = k;
            while (j > 0 && idx[j - 1] == m - k + j - 1) --j;
            if (j == 0) break;
            ++idx[j - 1];
            for (std::size_t t = j; t < k; ++t) idx[t] = idx[t - 1] + 1;
        }
    }
    return SIZE_MAX;
}

std::size_t alpha_by_subsets(const SubgroupLattice& L)
{
    std::vector<ElementSet> pool;
    for (const auto& M : L.maximal_subgroups()) pool.push_back(M.bits);
    return least_cover(pool, L.whole().bits, L.frattini().bits);
}

std::size_t base_size_by_subsets(const SubgroupLattice& L, const SubgroupRecord& H)
{
    std::vector<ElementSet> pool;
    for (const auto& [rec, g] : L.conjugates(H)) pool.push_back(rec.bits);
    return least_cover(pool, L.whole().bits, L.core(H).bits);
}

SubgroupRecord find_maximal(const SubgroupLattice& L, std::size_t order)
{
    for (const auto& M : L.maximal_subgroups())
        if (M.order == order) return M;
    FAIL("no maximal subgroup of order " << order);
    return {};
}

void check_witness(const SubgroupLattice& L, const AlphaCertificate& c)
{
    REQUIRE(c.witness.size() == c.value);
    ElementSet acc = L.whole().bits;
    for (const auto& M : c.witness) {
        CHECK(L.is_maximal(M));
        acc = acc & M.bits;
    }
    CHECK(acc == L.frattini().bits);
}

}  // namespace

TEST_CASE("alpha_values")
{
    const std::vector<std::pair<std::string, std::size_t>> expected = {
        {"S4", 3}, {"Q8", 2}, {"C2^2", 2}, {"D8", 2}, {"C6", 2}, {"SL23", 2}, {"S3xS3", 4}, {"C2^3", 3}, {"A5", 2},
    };
    for (const auto& [name, value] : expected) {
        INFO(name);
        SubgroupLattice L(parse_group_spec(name));
        auto c = alpha(L);
        CHECK(c.value == value);
        CHECK(c.proved_minimal);
        CHECK(alpha_by_subsets(L) == value);
        check_witness(L, c);
    }
    CHECK_THROWS_AS(alpha(SubgroupLattice(groups::cyclic(1))), PreconditionError);
}

TEST_CASE("alpha_s6")
{
    SubgroupLattice L(groups::symmetric(6));
    auto c = alpha(L);
    CHECK(c.value == 3);
    check_witness(L, c);
    // no pair of maximal subgroups of S6 meets trivially
    const auto maxes = L.maximal_subgroups();
    bool pair = false;
    for (const auto& A : maxes)
        for (const auto& B : maxes) pair = pair || (A.bits & B.bits).count() == 1;
    CHECK_FALSE(pair);
}

TEST_CASE("base_size_subgroup")
{
    SubgroupLattice s5(groups::symmetric(5));
    auto H = s5.from_perm_group(PermGroup(5, {Permutation::from_cycles(5, {{0, 1}}), Permutation::from_cycles(5, {{0, 1, 2, 3}})}));
    REQUIRE(H.order == 24);
    auto c = base_size_subgroup(s5, H);
    CHECK(c.value == 4);
    CHECK(base_size_by_subsets(s5, H) == 4);
    ElementSet acc = s5.whole().bits;
    for (auto g : c.conjugators) acc = acc & s5.conjugate(H, g).bits;
    CHECK(acc == c.core.bits);
    CHECK(c.conjugators.front() == 0);

    SubgroupLattice a5(groups::alternating(5));
    auto A4 = find_maximal(a5, 12);
    CHECK(base_size_subgroup(a5, A4).value == 3);
    CHECK(base_size_by_subsets(a5, A4) == 3);

    // a normal maximal subgroup is its own core
    SubgroupLattice s4(groups::symmetric(4));
    auto A4n = find_maximal(s4, 12);
    CHECK(base_size_subgroup(s4, A4n).value == 1);
    CHECK_THROWS_AS(base_size_subgroup(s4, s4.trivial()), PreconditionError);
}

TEST_CASE("beta_values")
{
    SubgroupLattice a5(groups::alternating(5));
    auto b = beta(a5);
    REQUIRE(b.value);
    CHECK(*b.value == 2);
    // oracle: every maximal class, all conjugate families
    std::size_t best = SIZE_MAX;
    for (const auto& M : a5.maximal_subgroups())
        if (a5.core(M) == a5.frattini()) best = std::min(best, base_size_by_subsets(a5, M));
    CHECK(best == 2);
    REQUIRE(b.chosen);
    ElementSet acc = a5.whole().bits;
    for (auto g : b.conjugators) acc = acc & a5.conjugate(*b.chosen, g).bits;
    CHECK(acc == a5.frattini().bits);

    auto q8 = beta(SubgroupLattice(parse_group_spec("Q8")));
    CHECK_FALSE(q8.value);
    CHECK(q8.mstar_representatives.empty());

    auto c4 = beta(SubgroupLattice(groups::cyclic(4)));
    REQUIRE(c4.value);
    CHECK(*c4.value == 1);

    auto s6 = beta(SubgroupLattice(groups::symmetric(6)));
    REQUIRE(s6.value);
    CHECK(*s6.value == 4);
}

TEST_CASE("theorem3")
{
    auto sl = check_theorem3(SubgroupLattice(groups::sl23()));
    CHECK(sl.lambda == 3);
    CHECK(sl.alpha == 2);
    CHECK(sl.pass);

    auto d8 = check_theorem3(SubgroupLattice(groups::dihedral(4)));
    CHECK(d8.alpha == 2);
    CHECK(d8.delta == 2);
    CHECK(d8.derived_nilpotent);
    CHECK(d8.alpha_le_delta.value_or(false));
    CHECK(d8.pass);

    auto c6 = check_theorem3(SubgroupLattice(groups::cyclic(6)));
    CHECK(c6.alpha == 2);
    CHECK(c6.lambda == 2);
    CHECK(c6.delta == 2);

    auto s4 = check_theorem3(SubgroupLattice(groups::symmetric(4)));
    CHECK_FALSE(s4.derived_nilpotent);
    CHECK_FALSE(s4.alpha_le_delta.has_value());

    CHECK_THROWS_AS(check_theorem3(SubgroupLattice(groups::alternating(5))), PreconditionError);
}

TEST_CASE("theorem4")
{
    auto s4 = theorem4_bound(SubgroupLattice(groups::symmetric(4)));
    CHECK(s4.abelian.size() == 3);
    CHECK(s4.non_abelian.empty());
    CHECK(s4.bound == 7);
    CHECK(s4.alpha == 3);
    CHECK(s4.pass);
    for (const auto& c : s4.abelian) {
        CHECK(c.delta == 1);
        if (c.dimension == 2) CHECK(c.dim_over_end == 2);
    }

    auto v4 = theorem4_bound(SubgroupLattice(parse_group_spec("C2^2")));
    REQUIRE(v4.abelian.size() == 1);
    CHECK(v4.abelian[0].delta == 2);
    CHECK(v4.abelian[0].dim_over_end == 1);
    CHECK(v4.bound == 3);
    CHECK(v4.alpha == 2);

    // Q8/Z in SL(2,3) is F_4 as a module: endomorphism degree 2
    auto sl = theorem4_bound(SubgroupLattice(groups::sl23()));
    bool found = false;
    for (const auto& c : sl.abelian)
        if (c.dimension == 2) {
            found = true;
            CHECK(c.end_degree == 2);
            CHECK(c.dim_over_end == 1);
        }
    CHECK(found);

    // two C3 factors acted on by different S3 factors are not G-isomorphic
    auto s3s3 = theorem4_bound(SubgroupLattice(parse_group_spec("S3xS3")));
    std::size_t threes = 0;
    for (const auto& c : s3s3.abelian) threes += c.p == 3;
    CHECK(threes == 2);
    // whereas in C3^2 both factors are trivial modules
    auto c3 = theorem4_bound(SubgroupLattice(parse_group_spec("C3^2")));
    REQUIRE(c3.abelian.size() == 1);
    CHECK(c3.abelian[0].delta == 2);

    auto a5 = theorem4_bound(SubgroupLattice(groups::alternating(5)));
    REQUIRE(a5.non_abelian.size() == 1);
    CHECK(a5.non_abelian[0].n == 1);
    CHECK(a5.bound == 5);
    CHECK_FALSE(a5.soluble_bound.has_value());

}

TEST_CASE("nilpotent_catalog")
{
    for (const auto& e : catalog()) {
        if (!e.nilpotent) continue;
        INFO(e.name);
        SubgroupLattice L(parse_group_spec(e.name));
        CHECK(is_nilpotent(L.whole()));
        const auto a = alpha(L).value;
        const auto cs = L.chief_series();
        CHECK(a == cs.non_frattini_count());
        // lambda(G / Frat(G)) by the coset action on Frat(G)
        auto q = coset_action(L.table().group(), L.frattini().as_perm_group());
        CHECK(a == SubgroupLattice(q.image).chief_series().length());
    }
}
