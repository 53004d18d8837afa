#include "doctest.h"

#include "minbase/errors.hpp"
#include "minbase/matrix_constructions.hpp"

#include <random>

using namespace minbase;

namespace {

FqMatrix random_matrix(const FqField& F, std::size_t r, std::size_t c, std::mt19937_64& rng)
{
    FqMatrix m(r, c);
    for (auto& x : m.data) x = static_cast<FqElem>(rng() % F.q());
    return m;
}

/// Nonzero vectors v with v G v^T = 0, by enumeration inside S.
std::size_t singular_count(const FqField& F, const FqMatrix& gram, const FqSubspace& S)
{
    const std::size_t k = S.dim();
    std::size_t total = 1, count = 0;
    for (std::size_t i = 0; i < k; ++i) total *= F.q();
    for (std::size_t code = 1; code < total; ++code) {
        std::vector<FqElem> coef(k);
        std::size_t c = code;
        for (auto& a : coef) a = static_cast<FqElem>(c % F.q()), c /= F.q();
        const auto v = vec_mul(F, coef, S.basis());
        count += bilinear(F, gram, v, v) == 0;
    }
    return count;
}

}  // namespace

TEST_CASE("field_axioms")
{
    std::mt19937_64 rng(3);
    for (std::uint32_t q : {2u, 3u, 4u, 5u, 8u, 9u, 25u, 27u, 49u, 64u, 81u}) {
        INFO("q=" << q);
        FqField F(q);
        CHECK(F.order(F.mu()) == q - 1);
        for (FqElem a = 1; a < F.mu(); ++a) CHECK(F.order(a) < q - 1);
        // no zero divisors, so the modulus is irreducible
        for (FqElem a = 1; a < q; ++a) {
            CHECK(F.mul(a, F.inv(a)) == 1);
            CHECK(F.add(a, F.neg(a)) == 0);
        }
        for (int t = 0; t < 200; ++t) {
            const auto a = static_cast<FqElem>(rng() % q), b = static_cast<FqElem>(rng() % q),
                       c = static_cast<FqElem>(rng() % q);
            CHECK(F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c)));
            CHECK(F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c)));
            CHECK(F.add(F.add(a, b), c) == F.add(a, F.add(b, c)));
            CHECK(F.frob(F.mul(a, b)) == F.mul(F.frob(a), F.frob(b)));
            CHECK(F.frob(F.add(a, b)) == F.add(F.frob(a), F.frob(b)));
        }
        for (FqElem a = 0; a < q; ++a) CHECK(F.frob(a, F.f()) == a);
        // the prime field is exactly the fixed field of Frobenius
        std::size_t fixed = 0;
        for (FqElem a = 0; a < q; ++a) fixed += F.frob(a) == a;
        CHECK(fixed == F.p());
    }
    CHECK(FqField(9).modulus() == std::vector<std::uint32_t>{1, 0, 1});  // t^2 + 1
    CHECK_THROWS_AS(FqField(6), PreconditionError);
    CHECK_THROWS_AS(FqField(1), PreconditionError);
    CHECK_THROWS_AS(FqField(2048), PreconditionError);
}

TEST_CASE("linear_algebra")
{
    std::mt19937_64 rng(11);
    FqField F(9);
    for (int t = 0; t < 50; ++t) {
        auto a = random_matrix(F, 4, 4, rng), b = random_matrix(F, 4, 4, rng);
        CHECK(determinant(F, multiply(F, a, b)) == F.mul(determinant(F, a), determinant(F, b)));
        if (determinant(F, a) != 0) {
            CHECK(multiply(F, a, inverse(F, a)) == FqMatrix::identity(4));
            CHECK(rank(F, a) == 4);
        } else {
            CHECK_THROWS_AS(inverse(F, a), PreconditionError);
        }
    }
    // canonical form: any two spanning sets of one subspace agree
    for (int t = 0; t < 50; ++t) {
        auto basis = random_matrix(F, 3, 6, rng);
        auto mix = random_matrix(F, 5, 3, rng);
        auto other = multiply(F, mix, basis);
        if (rank(F, other) != rank(F, basis)) continue;
        CHECK(FqSubspace::span(F, basis) == FqSubspace::span(F, other));
    }
    auto S = FqSubspace::span(F, FqMatrix::from_rows({{1, 2, 0}, {2, 1, 0}}));
    CHECK(S.dim() == 1);
    CHECK(S.contains(F, {2, 1, 0}));
    CHECK_FALSE(S.contains(F, {0, 0, 1}));
}

TEST_CASE("sp4_pair_stabilizer")
{
    for (std::uint32_t q : {5u, 7u, 9u, 11u, 13u}) {
        INFO("q=" << q);
        auto r = sp4_pair_stabilizer(q);
        CHECK(r.survivors.size() == q - 1);
        CHECK(r.all_scalar);
        CHECK(r.closed);
        CHECK(r.pass);
        CHECK(r.form_checked == r.candidates);
        // 2 |GL2(q)| (q-1)
        CHECK(r.candidates == 2ull * (q * q - 1) * (q * q - q) * (q - 1));
        CHECK(std::count(r.survivors.begin(), r.survivors.end(), FqMatrix::identity(4)) == 1);
    }
    // thread count does not change the answer
    CHECK(sp4_pair_stabilizer(7, 3).survivors == sp4_pair_stabilizer(7, 1).survivors);
    CHECK_THROWS_AS(sp4_pair_stabilizer(3), PreconditionError);
    CHECK_THROWS_AS(sp4_pair_stabilizer(8), PreconditionError);
    CHECK_THROWS_AS(sp4_pair_stabilizer(49), BudgetError);
}

TEST_CASE("sp4_points are in the decomposition orbit")
{
    FqField F(9);
    const auto J = symplectic_form4(F);
    const auto s = sp4_points(F);
    for (const auto* S : {&s.U, &s.W, &s.U1, &s.W1, &s.U2}) {
        CHECK(S->dim() == 2);
        // totally isotropic
        CHECK(S->restricted_gram(F, J) == FqMatrix(2, 2));
    }
    auto direct = [&](const FqSubspace& a, const FqSubspace& b) {
        FqMatrix m = a.basis();
        m.data.insert(m.data.end(), b.basis().data.begin(), b.basis().data.end());
        m.rows += b.dim();
        return rank(F, m) == 4;
    };
    CHECK(direct(s.U, s.W));
    CHECK(direct(s.U1, s.W1));
    CHECK(direct(s.U2, s.W1));
}

TEST_CASE("sp4_triple_base_check")
{
    auto r9 = sp4_triple_base_check(9);
    CHECK(r9.pass);
    CHECK(r9.gamma_moved == std::vector<bool>{true});
    CHECK(r9.phi_fixes_alpha);
    CHECK(r9.phi_fixes_beta);
    CHECK_THROWS_AS(sp4_triple_base_check(7), PreconditionError);
    CHECK_THROWS_AS(sp4_triple_base_check(16), PreconditionError);
}

TEST_CASE("orth_odd_construct")
{
    for (auto [n, q] : std::vector<std::pair<std::size_t, std::uint32_t>>{{7, 3}, {7, 9}, {9, 3}, {9, 5}, {11, 3}, {13, 3}}) {
        INFO("n=" << n << " q=" << q);
        auto c = orth_odd_construct(n, q);
        const auto& F = *c.field;
        const std::size_t d = n % 4 == 1 ? 2 * c.m : 2 * (c.m + 1);
        CHECK(c.U.dim() == d);
        CHECK(c.W.dim() == d);
        CHECK(c.W1.dim() == d);
        CHECK(determinant(F, c.gram) != 0);
        for (const auto* S : {&c.U, &c.W, &c.W1}) {
            CHECK(is_plus_type(F, c.gram, *S));
            // plus type 2k-space: (q^k - 1)(q^(k-1) + 1) nonzero singular vectors
            if (q == 3 && d <= 4) {
                const std::size_t k = d / 2;
                std::size_t qk = 1;
                for (std::size_t i = 0; i < k; ++i) qk *= q;
                CHECK(singular_count(F, c.gram, *S) == (qk - 1) * (qk / q + 1));
            }
        }
        // W1 differs from W only in its first generator, scaled by mu
        REQUIRE(c.W_generators.size() == c.W1_generators.size());
        CHECK(c.W_generators[0] != c.W1_generators[0]);
        for (std::size_t i = 1; i < c.W_generators.size(); ++i) CHECK(c.W_generators[i] == c.W1_generators[i]);
        CHECK_FALSE(frobenius_moves(F, c.U, 1));
        CHECK_FALSE(frobenius_moves(F, c.W, 1));
    }
    auto c = orth_odd_construct(7, 9);
    CHECK(frobenius_moves(*c.field, c.W1, 1));
    CHECK(c.labels == std::vector<std::string>{"e1", "f1", "e1*", "f1*", "e", "f", "x"});
    CHECK_THROWS_AS(orth_odd_construct(5, 3), PreconditionError);
    CHECK_THROWS_AS(orth_odd_construct(8, 3), PreconditionError);
    CHECK_THROWS_AS(orth_odd_construct(7, 4), PreconditionError);
}

TEST_CASE("orth_odd_pair_check")
{
    auto r = orth_odd_pair_check(7, 3);
    CHECK(r.pass);
    CHECK(r.survivors.size() == 1);
    CHECK(r.identity_survives);
    CHECK(r.form_violations == 0);
    // |O4+(3)| |O3(3)| / 2
    CHECK(r.stabilizer_order == 1152 * 48 / 2);

    auto all = orth_odd_pair_check(7, 3, false);
    CHECK(all.survivors.size() == all.stabilizer_order);
    CHECK_FALSE(all.pass);

    CHECK_THROWS_AS(orth_odd_pair_check(7, 5), BudgetError);
}
