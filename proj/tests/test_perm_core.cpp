#include "doctest.h"
#include "oracles.hpp"

#include "minbase/errors.hpp"
#include "minbase/perm_group.hpp"

#include <random>

using namespace minbase;

namespace {

PermGroup from_text(std::size_t n, std::initializer_list<const char*> gens)
{
    std::vector<Permutation> g;
    for (const char* t : gens) g.push_back(parse_permutation(t, n));
    return PermGroup(n, g);
}

}  // namespace

TEST_CASE("perm_parse")
{
    auto p = parse_permutation("(1,2)(3,4)", 4);
    CHECK(std::vector<Point>(p.images().begin(), p.images().end()) == std::vector<Point>{1, 0, 3, 2});
    CHECK(parse_permutation("", 5) == Permutation(5));
    CHECK(parse_permutation("( )", 5) == Permutation(5));
    auto c = parse_permutation("(1,2,3)", 3);
    CHECK((c * c * c).is_identity());
    CHECK_FALSE((c * c).is_identity());

    // cycles apply left to right: (1,2) then (2,3) sends 1 -> 2 -> 3
    auto q = parse_permutation("(1,2)(2,3)", 3);
    CHECK(q[0] == 2);
    CHECK(q.to_cycle_string() == "(1,3,2)");

    CHECK_THROWS_AS(parse_permutation("(1,5)", 4), PreconditionError);
    CHECK_THROWS_AS(parse_permutation("(1,2", 4), PreconditionError);
    CHECK_THROWS_AS(parse_permutation("1,2)", 4), PreconditionError);
    CHECK_THROWS_AS(parse_permutation("(1,,2)", 4), PreconditionError);
    CHECK_THROWS_AS(parse_permutation("(0,1)", 4), PreconditionError);
}

TEST_CASE("composition applies the left factor first")
{
    auto a = parse_permutation("(1,2)", 3);
    auto b = parse_permutation("(2,3)", 3);
    CHECK((a * b)[0] == 2);
    CHECK((a * b).to_cycle_string() == "(1,3,2)");
    CHECK_THROWS_AS(a * Permutation(4), PreconditionError);
    CHECK(a.conjugate_by(b) == parse_permutation("(1,3)", 3));
}

TEST_CASE("group_from_generators")
{
    CHECK(from_text(4, {"(1,2)", "(1,2,3,4)"}).order() == 24);
    CHECK(from_text(4, {"(1,2,3)", "(2,3,4)"}).order() == 12);
    PermGroup trivial(6, {});
    CHECK(trivial.order() == 1);
    CHECK(trivial.contains(Permutation(6)));
    CHECK_THROWS_AS(PermGroup(4, {Permutation(5)}), PreconditionError);

    // |S_30| does not fit in 64 bits
    auto big = from_text(30, {"(1,2)", "(1,2,3,4,5,6,7,8,9,10,11,12,13,14,15,16,17,18,19,20,21,22,23,24,25,26,27,28,29,30)"});
    BigInt fact = 1;
    for (int i = 2; i <= 30; ++i) fact *= i;
    CHECK(big.order() == fact);
}

TEST_CASE("contains")
{
    auto s4 = from_text(4, {"(1,2)", "(1,2,3,4)"});
    auto a4 = from_text(4, {"(1,2,3)", "(2,3,4)"});
    CHECK(s4.contains(parse_permutation("(1,3)", 4)));
    CHECK_FALSE(a4.contains(parse_permutation("(1,2)", 4)));
    CHECK(a4.contains(Permutation(4)));
    CHECK_THROWS_AS(a4.contains(Permutation(5)), PreconditionError);
}

TEST_CASE("coset_action")
{
    auto s4 = from_text(4, {"(1,2)", "(1,2,3,4)"});
    auto stab4 = from_text(4, {"(1,2)", "(1,2,3)"});
    auto act = coset_action(s4, stab4);
    CHECK(act.image.degree() == 4);
    CHECK(act.image.order() == 24);
    CHECK(act.image.is_transitive());

    auto a4 = from_text(4, {"(1,2,3)", "(2,3,4)"});
    auto act2 = coset_action(s4, a4);
    CHECK(act2.image.degree() == 2);
    CHECK(act2.image.order() == 2);

    auto s5 = from_text(5, {"(1,2)", "(1,2,3,4,5)"});
    auto s4in5 = from_text(5, {"(1,2)", "(1,2,3,4)"});
    auto act3 = coset_action(s5, s4in5);
    CHECK(act3.image.degree() == 5);
    CHECK(act3.image.order() == 120);
    // oracle: enumerate the image and count orbits of point 0
    auto elems = oracle::closure(5, act3.image.generators());
    CHECK(elems.size() == 120);
    CHECK(act3.image.orbit(0).size() == 5);

    auto not_sub = from_text(4, {"(1,2)"});
    CHECK_THROWS_AS(coset_action(a4, not_sub), PreconditionError);
}

TEST_CASE("coset_action kernel is the core")
{
    // |G| = |H| * degree, and |image| * |kernel| = |G|; the kernel of S4 on
    // cosets of D8 is V4.
    auto s4 = from_text(4, {"(1,2)", "(1,2,3,4)"});
    auto d8 = from_text(4, {"(1,2,3,4)", "(1,3)"});
    auto act = coset_action(s4, d8);
    CHECK(act.image.degree() * d8.order() == s4.order());
    CHECK(act.image.order() == 6);
    CHECK(s4.order() / act.image.order() == 4);
}

TEST_CASE("conjugate")
{
    auto h = from_text(3, {"(1,2)"});
    auto hc = h.conjugate(parse_permutation("(2,3)", 3));
    CHECK(hc.contains(parse_permutation("(1,3)", 3)));
    CHECK(hc.order() == 2);
    auto id = h.conjugate(Permutation(3));
    CHECK(id.contains(parse_permutation("(1,2)", 3)));

    std::mt19937_64 rng(7);
    auto g = from_text(6, {"(1,2,3)", "(4,5)", "(1,4)(2,5)(3,6)"});
    for (int t = 0; t < 10; ++t) CHECK(g.conjugate(oracle::random_permutation(6, rng)).order() == g.order());
    CHECK_THROWS_AS(g.conjugate(Permutation(5)), PreconditionError);
}

TEST_CASE("order and membership agree with enumeration on random groups")
{
    std::mt19937_64 rng(12345);
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t n = 3 + rng() % 6;
        const std::size_t ngens = 1 + rng() % 3;
        std::vector<Permutation> gens;
        for (std::size_t i = 0; i < ngens; ++i) {
            // sparse generators keep many groups small and intransitive
            auto p = oracle::random_permutation(n, rng);
            if (rng() % 2) p = p.pow(static_cast<long long>(1 + rng() % 3));
            gens.push_back(p);
        }
        PermGroup G(n, gens);
        auto elems = oracle::closure(n, gens);
        REQUIRE(!elems.empty());
        CHECK(G.order() == elems.size());
        std::unordered_set<Permutation, PermutationHash> members(elems.begin(), elems.end());
        for (int k = 0; k < 20; ++k) {
            auto x = oracle::random_permutation(n, rng);
            CHECK(G.contains(x) == (members.count(x) > 0));
        }
        auto listed = G.elements();
        CHECK(listed.size() == elems.size());
        for (const auto& x : listed) CHECK(members.count(x) == 1);
    }
}

TEST_CASE("deterministic rebuild")
{
    std::vector<Permutation> gens{parse_permutation("(1,5,2)(3,4)", 7), parse_permutation("(2,6,7)", 7)};
    PermGroup a(7, gens), b(7, gens);
    CHECK(a.base() == b.base());
    CHECK(a.order() == b.order());
    // smallest non-fixed point first
    CHECK(a.base().front() == 0);
}

TEST_CASE("even part")
{
    auto s5 = from_text(5, {"(1,2)", "(1,2,3,4,5)"});
    CHECK(s5.even_part().order() == 60);
    auto a5 = s5.even_part();
    for (const auto& g : a5.generators()) CHECK(g.is_even());
    auto c2 = from_text(4, {"(1,2)"});
    CHECK(c2.even_part().order() == 1);
}

TEST_CASE("group file round trip")
{
    auto g = from_text(5, {"(1,2,3)", "(4,5)"});
    auto text = format_group_file(g);
    auto h = parse_group_file(text);
    CHECK(h.degree() == 5);
    CHECK(h.order() == 6);
    CHECK_THROWS_AS(parse_group_file("(1,2)\n"), PreconditionError);
}
