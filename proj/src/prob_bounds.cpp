#include "minbase/prob_bounds.hpp"

#include "minbase/errors.hpp"

#include <sstream>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace minbase {

namespace {

BigInt ipow(const BigInt& b, unsigned e)
{
    return boost::multiprecision::pow(b, e);
}

/// floor(N^(1/k))
BigInt iroot(const BigInt& N, unsigned k)
{
    BigInt lo = 0, hi = 1;
    while (ipow(hi, k) <= N) hi *= 2;
    while (hi - lo > 1) {
        const BigInt mid = (lo + hi) / 2;
        (ipow(mid, k) <= N ? lo : hi) = mid;
    }
    return lo;
}

enum class Round { up, down };

/// q^(num/den), exact when integral and otherwise rounded in the given direction.
BigInt qpow(std::uint64_t q, unsigned num, unsigned den, Round r)
{
    const BigInt N = ipow(BigInt(q), num);
    const BigInt root = iroot(N, den);
    if (ipow(root, den) == N || r == Round::down) return root;
    return root + 1;
}

/// ceil(log2 q); exact for powers of 2.
unsigned log2_ceil(std::uint64_t q)
{
    unsigned k = 0;
    while ((std::uint64_t{1} << k) < q) ++k;
    return k;
}

bool prime_power(std::uint64_t q, std::uint64_t* p_out = nullptr)
{
    if (q < 2) return false;
    std::uint64_t p = 2;
    while (q % p != 0) ++p;
    std::uint64_t r = q;
    while (r % p == 0) r /= p;
    if (p_out) *p_out = p;
    return r == 1;
}

void add(BoundTermTable& t, std::string label, Rational u, Rational v, unsigned mult = 1, bool gamma = false)
{
    if (u <= 0 || v <= 0 || u > v) throw std::logic_error("term " + label + " violates 0 < u <= v");
    t.terms.push_back({std::move(label), std::move(u), std::move(v), mult, gamma});
}

}  // namespace

QhatValue evaluate_qhat(const BoundTermTable& table, unsigned c)
{
    if (c < 1) throw PreconditionError("c must be at least 1");
    if (table.terms.empty()) throw PreconditionError("empty term table");
    QhatValue out;
    for (const auto& t : table.terms) {
        if (t.gamma_term && !table.gamma) {
            out.contributions.emplace_back(0);
            continue;
        }
        Rational ratio = t.u / t.v, term = t.v;
        for (unsigned i = 0; i < c; ++i) term *= ratio;
        term *= t.multiplicity;
        out.value += term;
        out.contributions.push_back(term);
    }
    out.below_one = out.value < 1;
    return out;
}

BoundTermTable g2_subfield_terms(std::uint64_t q)
{
    const std::uint64_t q0 = static_cast<std::uint64_t>(iroot(q, 2));
    if (q0 * q0 != q || !prime_power(q) || q < 9) throw PreconditionError("q must be a square prime power, at least 9");
    BoundTermTable t;
    t.family = "g2_subfield_k2";
    t.q = q;
    t.gamma = q >= 64;
    const BigInt Q = q;
    const BigInt sq = q0;                // q^(1/2)
    const BigInt q32 = q0 * Q;           // q^(3/2)
    add(t, "u1/v1", Q * Q * (Q * Q + Q + 1), ipow(Q, 4) * (ipow(Q, 4) + Q * Q + 1));
    add(t, "u2/v2", ipow(Q, 3) - 1, ipow(Q, 6) - 1, 2);
    add(t, "u3/v3", Q * (ipow(Q, 3) - 1), Q * Q * (ipow(Q, 6) - 1));
    add(t, "u4/v4", ipow(Q, 6), Rational(ipow(Q, 10), 7));
    add(t, "u5/v5", q32 * (q32 + 1), ipow(Q, 3) * (ipow(Q, 3) - 1));
    add(t, "u6/v6", 2 * ipow(Q, 3) * (sq + 1) * (Q * Q + Q + 1), ipow(Q, 5) * (Q - 1) * (ipow(Q, 4) + Q * Q + 1));
    add(t, "u7/v7", ipow(Q, 3) * (Q - 1) * (ipow(Q, 3) - 1), ipow(Q, 6) * (Q - 1) * (ipow(Q, 3) - 1) * (Q * Q - Q + 1));
    add(t, "u8/v8", 2 * (sq + 1) * ipow(Q, 3) * sq, ipow(Q, 3) * (ipow(Q, 3) + 1) * (Q + 1));
    add(t, "u9/v9", 4 * qpow(q, 14, 3, Round::up), Rational(qpow(q, 28, 3, Round::down), 2), 1, true);
    add(t, "u10/v10", 8 * qpow(q, 28, 5, Round::up), Rational(qpow(q, 56, 5, Round::down), 2), 1, true);
    add(t, "u11/v11", 2 * log2_ceil(q) * ipow(Q, 7), Rational(ipow(Q, 12), 2), 1, true);
    return t;
}

BoundTermTable sp4_even_subfield_terms(std::uint64_t q)
{
    if (q < 64 || (q & (q - 1)) != 0) throw PreconditionError("q must be a power of 2, at least 64");
    BoundTermTable t;
    t.family = "sp4_even_subfield";
    t.q = q;
    const BigInt Q = q;
    const unsigned lg = log2_ceil(q);
    // u5 and u6 take the subfield-index-2 values, which dominate the other indices
    add(t, "u1/v1", Q * Q - 1, ipow(Q, 4) - 1, 2);
    add(t, "u2/v2", (Q - 1) * (Q * Q - 1), (Q * Q - 1) * (ipow(Q, 4) - 1));
    add(t, "u3/v3", Q * Q * (Q - 1) * (Q * Q - 1), ipow(Q, 4) * (Q - 1) * (Q - 1) * (Q * Q + 1));
    add(t, "u4/v4", lg * Q * Q * (Q + 1) * (qpow(q, 1, 2, Round::up) + 1), ipow(Q, 3) * (Q * Q + 1) * (Q - 1));
    add(t, "u5/v5", Q * (Q * Q + Q - 1), Q * Q * (Q + 1) * (Q * Q + 1));
    add(t, "u6/v6", 2 * lg * qpow(q, 10, 3, Round::up), Rational(qpow(q, 20, 3, Round::down), 2));
    return t;
}

BoundTermTable o10plus_c2_terms(std::uint64_t q)
{
    if (q < 8 || !prime_power(q)) throw PreconditionError("q must be a prime power, at least 8");
    BoundTermTable t;
    t.family = "o10plus_c2";
    t.q = q;
    const BigInt Q = q;
    add(t, "u1/v1", BigInt(log2_ceil(q)) * 32 * ipow(Q - 1, 5) * 120, ipow(Q, 14));
    add(t, "u2/v2", 5 * (Q - 1), Rational(ipow(Q, 9), 4));
    return t;
}

BigInt involution_count_sym(unsigned n)
{
    // I(k) counts elements with x^2 = 1, identity included
    BigInt prev = 1, cur = 1;
    for (unsigned k = 2; k <= n; ++k) {
        BigInt next = cur + BigInt(k - 1) * prev;
        prev = cur;
        cur = next;
    }
    return cur - 1;
}

Rational collapse_bound(const std::vector<BoundTerm>& terms, unsigned c)
{
    if (terms.empty()) throw PreconditionError("empty term list");
    Rational A = 0, B = terms.front().v;
    for (const auto& t : terms) {
        A += t.u * t.multiplicity;
        B = std::min(B, t.v);
    }
    Rational r = B;
    for (unsigned i = 0; i < c; ++i) r *= A / B;
    return r;
}

BoundTermTable qhat_empirical_table(const PermGroup& G, const PermGroup& H)
{
    if (H.degree() != G.degree()) throw PreconditionError("degree mismatch");
    for (const auto& h : H.generators())
        if (!G.contains(h)) throw PreconditionError("H is not a subgroup of G");
    if (H.order() == G.order()) throw PreconditionError("H must be a proper subgroup");
    const auto elems = G.elements(100000);

    auto is_prime = [](std::size_t k) {
        if (k < 2) return false;
        for (std::size_t d = 2; d * d <= k; ++d)
            if (k % d == 0) return false;
        return true;
    };

    BoundTermTable t;
    t.family = "empirical";
    std::unordered_set<Permutation, PermutationHash> seen;
    for (const auto& x : elems) {
        if (seen.count(x)) continue;
        const std::size_t ord = x.order();
        if (!is_prime(ord)) continue;
        std::vector<Permutation> cls{x};
        seen.insert(x);
        for (std::size_t i = 0; i < cls.size(); ++i)
            for (const auto& g : G.generators()) {
                auto y = cls[i].conjugate_by(g);
                if (seen.insert(y).second) cls.push_back(std::move(y));
            }
        std::size_t meet = 0;
        for (const auto& y : cls) meet += H.contains(y);
        if (meet == 0) continue;
        t.terms.push_back({"order " + std::to_string(ord) + " class of " + x.to_cycle_string(), Rational(meet),
                           Rational(cls.size()), 1, false});
    }
    return t;
}

QhatValue qhat_empirical(const PermGroup& G, const PermGroup& H, unsigned c)
{
    auto t = qhat_empirical_table(G, H);
    if (t.terms.empty()) {
        // H meets no prime-order class: only possible for trivial H
        QhatValue v;
        v.below_one = true;
        return v;
    }
    return evaluate_qhat(t, c);
}

std::string to_csv(const std::vector<BoundTermTable>& tables, unsigned c)
{
    std::ostringstream out;
    out << "family,q,term,u,v,multiplicity,active,contribution\n";
    for (const auto& t : tables) {
        const auto val = evaluate_qhat(t, c);
        for (std::size_t i = 0; i < t.terms.size(); ++i) {
            const auto& term = t.terms[i];
            out << t.family << ',' << t.q << ',' << term.label << ',' << to_string(term.u) << ',' << to_string(term.v)
                << ',' << term.multiplicity << ',' << (!term.gamma_term || t.gamma) << ','
                << to_string(val.contributions[i]) << '\n';
        }
        out << t.family << ',' << t.q << ",total,,,,," << to_string(val.value) << '\n';
    }
    return out.str();
}

}  // namespace minbase
