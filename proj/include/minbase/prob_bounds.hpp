#pragma once

// Exact evaluation of Qhat(G,H,c) = sum |x^G| fpr(x)^c over prime-order
// classes, either from explicit per-family term bounds or from true class
// data of a small permutation group.

#include "minbase/bigint.hpp"
#include "minbase/perm_group.hpp"

#include <string>
#include <vector>

namespace minbase {

/// One bound |x^G n H| <= u, |x^G| >= v, counted `multiplicity` times.
struct BoundTerm {
    std::string label;
    Rational u, v;
    unsigned multiplicity = 1;
    bool gamma_term = false;  // counted only when the table's gamma flag is set
};

struct BoundTermTable {
    std::string family;
    std::uint64_t q = 0;
    bool gamma = false;
    std::vector<BoundTerm> terms;
};

struct QhatValue {
    Rational value;
    bool below_one = false;
    std::vector<Rational> contributions;  // per term, multiplicity included; 0 for inactive terms
};

/// sum multiplicity * v (u/v)^c. c >= 1, non-empty table.
QhatValue evaluate_qhat(const BoundTermTable& table, unsigned c);

/// q = q0^2 >= 9.
BoundTermTable g2_subfield_terms(std::uint64_t q);
/// q a power of 2, q >= 64.
BoundTermTable sp4_even_subfield_terms(std::uint64_t q);
/// q a prime power >= 8.
BoundTermTable o10plus_c2_terms(std::uint64_t q);

/// Number of elements of order exactly 2 in S_n.
BigInt involution_count_sym(unsigned n);

/// The c-th power collapse bound B (A/B)^c for terms with sum u <= A and v >= B.
Rational collapse_bound(const std::vector<BoundTerm>& terms, unsigned c);

/// Qhat from the true classes of prime-order elements of G meeting H
/// (classes missing H contribute zero and are omitted). H proper, |G| <= 1e5.
BoundTermTable qhat_empirical_table(const PermGroup& G, const PermGroup& H);
QhatValue qhat_empirical(const PermGroup& G, const PermGroup& H, unsigned c);

/// One line per term and a total line, exact rationals.
std::string to_csv(const std::vector<BoundTermTable>& tables, unsigned c);

}  // namespace minbase
