#include "doctest.h"
#include "oracles.hpp"

#include "minbase/catalog.hpp"
#include "minbase/errors.hpp"
#include "minbase/subgroup_lattice.hpp"

#include <set>

using namespace minbase;

namespace {

using ElementKey = std::vector<Permutation>;

ElementKey sorted_closure(std::size_t n, const std::vector<Permutation>& gens)
{
    auto e = oracle::closure(n, gens);
    std::sort(e.begin(), e.end());
    return e;
}

/// Every subgroup generated by at most three elements, by brute force.
std::set<ElementKey> subgroups_by_brute_force(const PermGroup& G)
{
    const auto elems = G.elements();
    const std::size_t n = G.degree();
    std::set<ElementKey> two;
    for (const auto& x : elems)
        for (const auto& y : elems) two.insert(sorted_closure(n, {x, y}));
    std::set<ElementKey> three = two;
    for (const auto& H : two)
        for (const auto& z : elems) {
            if (std::binary_search(H.begin(), H.end(), z)) continue;
            auto gens = H;
            gens.push_back(z);
            three.insert(sorted_closure(n, gens));
        }
    return three;
}

ElementKey as_key(const SubgroupRecord& H)
{
    ElementKey k;
    for (auto e : H.elements) k.push_back(H.parent->element(e));
    std::sort(k.begin(), k.end());
    return k;
}

}  // namespace

TEST_CASE("catalog_orders")
{
    const std::vector<std::pair<std::string, int>> expected = {
        {"S4", 24},   {"A5", 60},       {"C12", 12},       {"D8", 8},     {"D6", 6},     {"Q8", 8},
        {"Q16", 16},  {"C2^3", 8},      {"SL23", 24},      {"GL23", 48},  {"L27", 168},  {"PGL27", 336},
        {"A6", 360},  {"Frob(7,3)", 21}, {"Frob(5,4)", 20}, {"wr(2,3)", 48}, {"C2xD8", 16}, {"S3xS3", 36},
    };
    for (const auto& [name, order] : expected) {
        INFO(name);
        CHECK(parse_group_spec(name).order() == order);
    }
    CHECK_THROWS_AS(parse_group_spec("NotAGroup"), PreconditionError);
    CHECK_THROWS_AS(parse_group_spec("D7"), PreconditionError);
    CHECK(catalog().size() >= 26);
}

TEST_CASE("lattice_counts")
{
    CHECK(SubgroupLattice(groups::symmetric(3)).subgroups().size() == 6);
    CHECK(SubgroupLattice(parse_group_spec("Q8")).subgroups().size() == 6);
    CHECK(SubgroupLattice(groups::symmetric(4)).subgroups().size() == 30);
    CHECK(SubgroupLattice(groups::alternating(5)).subgroups().size() == 59);
}

TEST_CASE("lattice_matches_brute_force")
{
    for (const char* name : {"S4", "D8", "Q8", "C2^3", "D12", "Frob(5,4)", "C3xS3"}) {
        INFO(name);
        const auto G = parse_group_spec(name);
        SubgroupLattice L(G);
        std::set<ElementKey> mine;
        for (const auto& H : L.subgroups()) {
            CHECK(H.order == H.elements.size());
            mine.insert(as_key(H));
            // closed under products
            for (auto a : H.elements)
                for (auto b : H.elements) REQUIRE(H.contains(L.table().mul(a, b)));
            // generators generate
            CHECK(sorted_closure(G.degree(), H.generator_permutations()) == as_key(H));
        }
        CHECK(mine.size() == L.subgroups().size());
        CHECK(mine == subgroups_by_brute_force(G));
    }
}

TEST_CASE("maximals_and_frattini")
{
    SubgroupLattice s4(groups::symmetric(4));
    CHECK(s4.maximal_indices().size() == 8);
    std::multiset<std::size_t> orders;
    for (const auto& M : s4.maximal_subgroups()) orders.insert(M.order);
    CHECK(orders == std::multiset<std::size_t>{6, 6, 6, 6, 8, 8, 8, 12});
    CHECK(s4.maximal_classes().size() == 3);
    CHECK(s4.frattini().order == 1);

    // maximal against the whole lattice, and every proper subgroup lies in one
    for (const auto& H : s4.subgroups()) {
        if (H.order == 24) continue;
        bool inside = false;
        for (const auto& M : s4.maximal_subgroups()) inside = inside || H.is_subgroup_of(M);
        CHECK(inside);
    }

    SubgroupLattice c7(groups::cyclic(7));
    REQUIRE(c7.maximal_indices().size() == 1);
    CHECK(c7.maximal_subgroups()[0].order == 1);

    SubgroupLattice q8(parse_group_spec("Q8"));
    CHECK(q8.maximal_indices().size() == 3);
    for (const auto& M : q8.maximal_subgroups()) CHECK(M.order == 4);
    CHECK(q8.frattini().order == 2);
    // Frat(Q8) is the intersection of the three C4, and the centre
    auto acc = q8.maximal_subgroups()[0];
    for (const auto& M : q8.maximal_subgroups()) acc = q8.intersect(acc, M);
    CHECK(acc == q8.frattini());
    CHECK(q8.is_normal(q8.frattini()));

    SubgroupLattice c4(groups::cyclic(4));
    CHECK(c4.frattini().order == 2);
}

TEST_CASE("cores")
{
    SubgroupLattice L(groups::symmetric(4));
    std::size_t checked = 0;
    for (const auto& H : L.subgroups()) {
        // oracle: intersect g^-1 H g over every g
        ElementSet acc = H.bits;
        for (ElementId g = 0; g < L.table().size(); ++g) acc = acc & L.conjugate(H, g).bits;
        CHECK(L.core(H).bits == acc);
        if (H.order == 8) {
            CHECK(L.core(H).order == 4);
            ++checked;
        }
        if (H.order == 12) CHECK(L.core(H) == H);
        if (H.order == 6) CHECK(L.core(H).order == 1);
    }
    CHECK(checked == 3);
}

TEST_CASE("chief_series")
{
    auto s4 = chief_series(groups::symmetric(4));
    REQUIRE(s4.length() == 3);
    CHECK(s4.factors[0].order == 2);
    CHECK(s4.factors[1].order == 3);
    CHECK(s4.factors[2].order == 4);
    CHECK(s4.non_frattini_count() == 3);

    auto c4 = chief_series(groups::cyclic(4));
    CHECK(c4.length() == 2);
    CHECK(c4.non_frattini_count() == 1);
    CHECK(c4.factors[0].non_frattini);
    CHECK_FALSE(c4.factors[1].non_frattini);

    auto v4 = chief_series(parse_group_spec("C2^2"));
    CHECK(v4.length() == 2);
    CHECK(v4.non_frattini_count() == 2);

    auto a5 = chief_series(groups::alternating(5));
    REQUIRE(a5.length() == 1);
    CHECK_FALSE(a5.factors[0].abelian);
    CHECK(a5.factors[0].composition_length == 1);

    for (const auto& entry : catalog()) {
        if (entry.name == "S6" || entry.name == "A6" || entry.name == "PGL27") continue;
        INFO(entry.name);
        SubgroupLattice L(parse_group_spec(entry.name));
        auto cs = L.chief_series();
        std::size_t prod = 1;
        for (const auto& f : cs.factors) prod *= f.order;
        CHECK(prod == L.whole().order);
        CHECK(cs.non_frattini_count() <= cs.length());
        // no normal subgroup strictly between consecutive terms
        for (std::size_t i = 0; i + 1 < cs.series.size(); ++i)
            for (const auto& N : L.normal_subgroups())
                CHECK_FALSE((N.order > cs.series[i + 1].order && N.order < cs.series[i].order &&
                             cs.series[i + 1].is_subgroup_of(N) && N.is_subgroup_of(cs.series[i])));
        CHECK(L.is_normal(L.frattini()));
    }
}

TEST_CASE("quotient_frattini_via_coset_action")
{
    // H/K inside Frat(G/K) computed by correspondence must agree with the
    // Frattini subgroup of the coset-action image of G on K.
    for (const char* name : {"S4", "D8", "C12", "Q16", "SL23", "Frob(5,4)", "C2xD8"}) {
        INFO(name);
        const auto G = parse_group_spec(name);
        SubgroupLattice L(G);
        for (const auto& K : L.normal_subgroups()) {
            if (K.order == L.whole().order) continue;
            auto act = coset_action(G, K.as_perm_group());
            SubgroupLattice Q(act.image);
            const auto above = L.frattini_above(K);
            CHECK(above.order == K.order * Q.frattini().order);
        }
    }
}

TEST_CASE("structure_predicates")
{
    auto gl = SubgroupLattice(groups::gl23());
    CHECK(is_soluble(gl.whole()));
    CHECK_FALSE(is_nilpotent(gl.whole()));
    CHECK(derived_subgroup(gl.whole()).order == 24);
    auto a5 = SubgroupLattice(groups::alternating(5));
    CHECK_FALSE(is_soluble(a5.whole()));
    auto q16 = SubgroupLattice(parse_group_spec("Q16"));
    CHECK(is_nilpotent(q16.whole()));
    CHECK_FALSE(is_abelian(q16.whole()));
    CHECK(is_abelian(SubgroupLattice(parse_group_spec("C3^2")).whole()));
}

TEST_CASE("lattice_cap")
{
    CHECK_THROWS_AS(SubgroupLattice(groups::symmetric(7)), BudgetError);
    CHECK_THROWS_AS(SubgroupLattice(groups::symmetric(6), 500), BudgetError);
}
