#include "doctest.h"
#include "oracles.hpp"

#include "minbase/errors.hpp"
#include "minbase/partition_bases.hpp"

#include <random>

using namespace minbase;

namespace {

oracle::Labels labels_of(const SetPartition& P) { return P.block_of(); }

std::vector<oracle::Labels> labels_of(const std::vector<SetPartition>& ps)
{
    std::vector<oracle::Labels> out;
    for (const auto& P : ps) out.push_back(P.block_of());
    return out;
}

void check_uniform(const SetPartition& P, std::size_t a, std::size_t b)
{
    CHECK(P.ground_size() == a * b);
    CHECK(P.block_count() == a);
    CHECK(P.uniform_block_size() == b);
}

std::size_t factorial(std::size_t n) { return n <= 1 ? 1 : n * factorial(n - 1); }

}  // namespace

TEST_CASE("partition_text")
{
    auto P = parse_partition("{1,2,3}|{4,5,6}", 6);
    CHECK(P.block_count() == 2);
    CHECK(P.to_string() == "{1,2,3}|{4,5,6}");
    CHECK(parse_partition(" {4,6,5} | {3,1,2} ", 6) == P);
    CHECK_THROWS_AS(parse_partition("{1,2}|{2,3}", 3), PreconditionError);
    CHECK_THROWS_AS(parse_partition("{1,2}", 3), PreconditionError);
    CHECK_THROWS_AS(parse_partition("{1,2}|{3,7}", 6), PreconditionError);
    CHECK_THROWS_AS(parse_partition("{1,2|{3}", 3), PreconditionError);
    CHECK(row_partition(3, 2).to_string() == "{1,2}|{3,4}|{5,6}");
}

TEST_CASE("grid_domains")
{
    CHECK(GridCoords(GridCase::plus2, 7).size() == 7 * 5);
    CHECK(GridCoords(GridCase::plus1, 7).size() == 7 * 6);
    CHECK(GridCoords(GridCase::equal, 7).size() == 49);
    GridCoords g(GridCase::plus2, 6);
    CHECK_FALSE(g.contains(0, 1));
    CHECK_FALSE(g.contains(0, 5));
    CHECK(g.contains(0, 2));
    CHECK(g.point(0, 0) == 0);
    CHECK(g.point(0, 2) == 1);
    CHECK(g.point(6, 8) == g.point(0, 2));  // indices mod a
    CHECK_THROWS_AS(g.point(2, 3), PreconditionError);
    GridCoords e(GridCase::equal, 3);
    CHECK(e.point(1, 1) == 0);
    CHECK(e.point(3, 3) == 8);
}

TEST_CASE("constructions_are_partitions")
{
    for (std::size_t a = 4; a <= 12; ++a) {
        auto t = construct_bcd_plus2(a);
        for (const auto& P : t.as_list()) check_uniform(P, a, a - 2);
    }
    auto t4 = construct_bcd_plus2(4);
    // D_i = B_i for i >= 2: exactly two blocks of B are not blocks of D
    std::size_t shared = 0;
    for (const auto& blk : t4.D.blocks()) shared += std::count(t4.B.blocks().begin(), t4.B.blocks().end(), blk);
    CHECK(shared == 2);

    for (std::size_t a = 5; a <= 12; ++a)
        for (const auto& P : construct_bcd_plus1(a).as_list()) check_uniform(P, a, a - 1);
    for (std::size_t a = 6; a <= 12; ++a)
        for (const auto& P : construct_bcd_equal(a).as_list()) check_uniform(P, a, a);

    CHECK_THROWS_AS(construct_bcd_plus2(3), PreconditionError);
    CHECK_THROWS_AS(construct_bcd_plus1(4), PreconditionError);
    CHECK_THROWS_AS(construct_bcd_equal(5), PreconditionError);
}

TEST_CASE("constructions_certify")
{
    CHECK(partition_stabilizer(construct_bcd_plus2(5).as_list()).is_trivial());
    CHECK(partition_stabilizer(construct_bcd_plus1(5).as_list()).is_trivial());
    CHECK(partition_stabilizer(construct_bcd_plus1(7).as_list()).is_trivial());
    CHECK(partition_stabilizer(construct_bcd_equal(6).as_list()).is_trivial());
    CHECK(partition_stabilizer(construct_bcd_equal(7).as_list()).is_trivial());

    // The a = b + 2 triple is not a base at a = 6: swapping rows 2 and 4
    // (with (2,5) <-> (4,1)) and columns 1 and 5 fixes B, C and D.
    auto t = construct_bcd_plus2(6);
    const auto& g = t.grid;
    std::vector<Point> img(g.size());
    for (Point x = 0; x < g.size(); ++x) img[x] = x;
    auto swap = [&](std::pair<int, int> p, std::pair<int, int> q) {
        img[g.point(p.first, p.second)] = g.point(q.first, q.second);
        img[g.point(q.first, q.second)] = g.point(p.first, p.second);
    };
    swap({1, 1}, {1, 5});
    swap({3, 1}, {3, 5});
    swap({5, 1}, {5, 5});
    swap({2, 0}, {4, 0});
    swap({2, 2}, {4, 2});
    swap({2, 4}, {4, 4});
    swap({2, 5}, {4, 1});
    Permutation h(img);
    CHECK_FALSE(h.is_identity());
    for (const auto& P : t.as_list()) CHECK(P.is_fixed_by(h));
    CHECK(partition_stabilizer(t.as_list()).order() == 2);
}

TEST_CASE("signature_tables")
{
    // even a
    for (std::size_t a : {6, 8}) {
        INFO("a = " << a);
        const std::size_t k = a / 2;
        auto sc = signature_counts(construct_bcd_equal(a));
        auto c = [&](std::size_t r) { return std::array<std::size_t, 3>{sc.c[r - 1][0], sc.c[r - 1][1], sc.c[r - 1][2]}; };
        auto d = [&](std::size_t r) { return std::array<std::size_t, 3>{sc.d[r - 1][0], sc.d[r - 1][1], sc.d[r - 1][2]}; };
        using T = std::array<std::size_t, 3>;
        CHECK(c(1) == T{k - 1, 2, k - 1});
        CHECK(c(2) == T{k, 0, k});
        for (std::size_t i = 1; i <= k - 2; ++i) {
            CHECK(c(2 * i + 1) == T{k - i, 2 * i, k - i});
            CHECK(c(2 * i + 2) == T{k - i, 2 * i, k - i});
        }
        CHECK(c(2 * k - 1) == T{1, 2 * k - 2, 1});
        CHECK(c(2 * k) == T{0, 2 * k, 0});
        for (std::size_t i = 0; i <= k - 2; ++i) {
            CHECK(d(2 * i + 1) == T{i + 1, a - 2 * i - 2, i + 1});
            CHECK(d(2 * i + 2) == T{i + 1, a - 2 * i - 2, i + 1});
        }
        CHECK(d(2 * k - 1) == T{k - 1, 2, k - 1});
        CHECK(d(2 * k) == T{k - 1, 2, k - 1});
        for (std::size_t r = 1; r <= a; ++r)
            for (std::size_t i = 3; i <= a; ++i) CHECK(sc.c[r - 1][i] + sc.d[r - 1][i] == 0);
    }
    // odd a
    for (std::size_t a : {7, 9}) {
        INFO("a = " << a);
        const std::size_t k = a / 2;
        auto sc = signature_counts(construct_bcd_equal(a));
        auto c = [&](std::size_t r) { return std::array<std::size_t, 3>{sc.c[r - 1][0], sc.c[r - 1][1], sc.c[r - 1][2]}; };
        auto d = [&](std::size_t r) { return std::array<std::size_t, 3>{sc.d[r - 1][0], sc.d[r - 1][1], sc.d[r - 1][2]}; };
        using T = std::array<std::size_t, 3>;
        CHECK(c(1) == T{k - 1, 3, k - 1});
        CHECK(c(2) == T{k, 1, k});
        CHECK(c(3) == T{k - 2, 5, k - 2});
        CHECK(c(4) == T{k - 1, 3, k - 1});
        for (std::size_t i = 2; i < k; ++i) {
            CHECK(c(2 * i + 1) == T{k - i, 2 * i + 1, k - i});
            CHECK(c(2 * i + 2) == T{k - i, 2 * i + 1, k - i});
        }
        CHECK(c(a) == T{0, a, 0});
        for (std::size_t i = 0; i <= k - 2; ++i) {
            CHECK(d(2 * i + 1) == T{i + 1, a - 2 * i - 2, i + 1});
            CHECK(d(2 * i + 2) == T{i + 1, a - 2 * i - 2, i + 1});
        }
        CHECK(d(2 * k - 1) == T{k - 1, 3, k - 1});
        CHECK(d(2 * k) == T{k - 1, 3, k - 1});
        CHECK(d(a) == T{0, a, 0});
    }
}

TEST_CASE("stabilizer_small_cases")
{
    // rows and columns of the 3x3 grid: S3 x S3
    std::vector<std::size_t> rows(9), cols(9);
    for (std::size_t x = 0; x < 9; ++x) {
        rows[x] = x / 3;
        cols[x] = x % 3;
    }
    std::vector<SetPartition> rc{SetPartition::from_labels(rows), SetPartition::from_labels(cols)};
    CHECK(partition_stabilizer(rc).order() == 36);
    CHECK(oracle::stabilizer_order(9, labels_of(rc)) == 36);

    for (auto [a, b] : std::vector<std::pair<std::size_t, std::size_t>>{{3, 2}, {4, 3}, {5, 5}, {2, 6}}) {
        std::size_t expect = factorial(a);
        for (std::size_t i = 0; i < a; ++i) expect *= factorial(b);
        CHECK(partition_stabilizer({row_partition(a, b)}).order() == expect);
        CHECK(partition_stabilizer({row_partition(a, b)}, Parity::even).order() == expect / 2);
    }
    CHECK_THROWS_AS(partition_stabilizer({row_partition(2, 3), row_partition(3, 3)}), PreconditionError);
}

TEST_CASE("stabilizer_against_filter")
{
    std::mt19937_64 rng(20261019);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t n = 2 + rng() % 7;
        const std::size_t count = 1 + rng() % 3;
        std::vector<SetPartition> parts;
        for (std::size_t p = 0; p < count; ++p) {
            const std::size_t nblocks = 1 + rng() % n;
            std::vector<std::size_t> lab(n);
            for (std::size_t x = 0; x < n; ++x) lab[x] = x < nblocks ? x : rng() % nblocks;
            std::shuffle(lab.begin(), lab.end(), rng);
            parts.push_back(SetPartition::from_labels(lab));
        }
        auto S = partition_stabilizer(parts);
        INFO("n = " << n);
        CHECK(S.order() == oracle::stabilizer_order(n, labels_of(parts)));
        CHECK(partition_stabilizer(parts, Parity::even).order() == oracle::stabilizer_order(n, labels_of(parts), true));
        for (const auto& g : S.generators())
            for (const auto& P : parts) CHECK(P.is_fixed_by(g));
    }
}

TEST_CASE("exact_base_sizes")
{
    using P = std::pair<std::size_t, std::size_t>;
    for (auto [a, b] : std::vector<P>{{3, 2}, {4, 2}, {5, 2}, {6, 2}, {3, 3}, {4, 3}}) {
        INFO(a << "," << b);
        auto r = base_size_partitions(a, b, BaseMode::exact, Parity::all);
        CHECK(r.exact);
        CHECK(r.value == expected_base_size(a, b, Parity::all));
        CHECK(r.witness.size() == r.value);
        CHECK(partition_stabilizer(r.witness).is_trivial());
        auto shorter = r.witness;
        shorter.pop_back();
        CHECK_FALSE(partition_stabilizer(shorter).is_trivial());
    }
    auto alt = base_size_partitions(3, 2, BaseMode::exact, Parity::even);
    CHECK(alt.value == 3);
    auto alt83 = base_size_partitions(8, 3, BaseMode::exact, Parity::even);
    CHECK(alt83.value == 2);
    CHECK(partition_stabilizer(alt83.witness, Parity::even).is_trivial());

    CHECK_THROWS_AS(base_size_partitions(2, 2, BaseMode::exact, Parity::all), PreconditionError);
    CHECK_THROWS_AS(base_size_partitions(2, 3, BaseMode::exact, Parity::all), PreconditionError);
    CHECK_THROWS_AS(base_size_partitions(5, 3, BaseMode::exact, Parity::all, {1, 100}), PreconditionError);
}

TEST_CASE("exact_values_by_brute_force")
{
    // (3,2): no three partitions are a base, in S_6 or for (3,2) even a pair in A_6
    auto omega = oracle::uniform_partitions(3, 2);
    CHECK(omega.size() == 15);
    const auto rows = labels_of(row_partition(3, 2));
    bool triple = false, alt_pair = false;
    for (const auto& p : omega) {
        alt_pair = alt_pair || oracle::stabilizer_order(6, {rows, p}, true) == 1;
        for (const auto& q : omega) triple = triple || oracle::stabilizer_order(6, {rows, p, q}) == 1;
    }
    CHECK_FALSE(triple);
    CHECK_FALSE(alt_pair);

    // (4,2): no pair is a base
    auto omega42 = oracle::uniform_partitions(4, 2);
    CHECK(omega42.size() == 105);
    const auto rows42 = labels_of(row_partition(4, 2));
    bool pair = false;
    for (const auto& p : omega42) pair = pair || oracle::stabilizer_order(8, {rows42, p}) == 1;
    CHECK_FALSE(pair);
    auto w = base_size_partitions(4, 2, BaseMode::exact, Parity::all).witness;
    CHECK(oracle::stabilizer_order(8, labels_of(w)) == 1);
}

TEST_CASE("pair_search")
{
    using P = std::pair<std::size_t, std::size_t>;
    for (auto [a, b] : std::vector<P>{{8, 3}, {9, 3}, {8, 4}, {9, 5}}) {
        auto r = random_pair_search(a, b, Parity::all);
        REQUIRE(r.witness);
        CHECK(partition_stabilizer(*r.witness).is_trivial());
        auto up = base_size_partitions(a, b, BaseMode::upper, Parity::all);
        CHECK(up.value == 2);
    }
    // deterministic under a fixed seed
    auto x = random_pair_search(8, 3, Parity::all, {7, 1000});
    auto y = random_pair_search(8, 3, Parity::all, {7, 1000});
    CHECK(x.witness == y.witness);
    // (7,3) has no base of size 2, so a small budget runs out
    auto none = random_pair_search(7, 3, Parity::all, {1, 200});
    CHECK_FALSE(none.witness);
    CHECK(none.trials == 200);
}

TEST_CASE("theorem2_bases")
{
    using P = std::pair<std::size_t, std::size_t>;
    for (auto [a, b] : std::vector<P>{{6, 3}, {5, 2}, {7, 5}, {3, 2}, {4, 4}, {6, 4}, {9, 3}}) {
        INFO(a << "," << b);
        auto base = construct_theorem2_base(a, b);
        CHECK(base.partitions.size() == expected_base_size(a, b, Parity::all));
        CHECK(base.stabilizer_order == 1);
        for (const auto& Pt : base.partitions) check_uniform(Pt, a, b);
    }
    CHECK(construct_theorem2_base(7, 5).construction == "plus2");
    CHECK(construct_theorem2_base(5, 4).construction == "plus1");
    CHECK(construct_theorem2_base(6, 6).construction == "equal");
    CHECK(construct_theorem2_base(6, 4).construction.starts_with("seeded search"));
    CHECK(expected_base_size(8, 3, Parity::all) == 2);
    CHECK(expected_base_size(7, 3, Parity::all) == 3);
    CHECK(expected_base_size(7, 5, Parity::even) == 2);
    CHECK(expected_base_size(6, 4, Parity::even) == 3);
}
