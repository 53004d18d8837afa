#pragma once

// Exhaustive checks of explicit bases for two classical families: the
// decomposition action of Sp4(q), q odd, and the action of odd-dimensional
// orthogonal groups on nondegenerate plus-type subspaces.

#include "minbase/fq.hpp"

#include <memory>
#include <optional>

namespace minbase {

/// Gram matrix of the standard symplectic form on the basis e1, e2, f1, f2.
FqMatrix symplectic_form4(const FqField& F);
/// g J g^T == m J
bool scales_form(const FqField& F, const FqMatrix& g, const FqMatrix& form, FqElem m);

struct Sp4Points {
    FqSubspace U, W, U1, W1, U2;  // alpha = {U,W}, beta = {U1,W1}, gamma = {U2,W1}
};
Sp4Points sp4_points(const FqField& F);

struct Sp4PairResult {
    std::uint32_t q = 0;
    std::uint64_t candidates = 0;   // elements of the stabilizer of alpha enumerated
    std::uint64_t form_checked = 0; // of those, elements verified to scale the form
    std::vector<FqMatrix> survivors;  // those also fixing beta
    bool all_scalar = false;
    bool closed = false;  // survivors form a group
    bool pass = false;    // survivors are exactly the q-1 scalars
};

/// Enumerates the stabilizer in GSp4(q) of alpha (both block shapes, all A in
/// GL2(q) and multipliers) and keeps the elements that also fix beta.
/// q odd, 5 <= q, at most 1e8 candidates. threads = 0 uses the hardware count.
Sp4PairResult sp4_pair_stabilizer(std::uint32_t q, unsigned threads = 0);

struct Sp4TripleResult {
    std::uint32_t q = 0, p = 0, f = 0;
    Sp4PairResult pair;
    bool phi_fixes_alpha = false;
    bool phi_fixes_beta = false;
    std::vector<bool> gamma_moved;  // entry i-1: phi^i moves gamma, 1 <= i < f
    bool pass = false;
};

/// q = p^f with f >= 2 and q >= 9.
Sp4TripleResult sp4_triple_base_check(std::uint32_t q, unsigned threads = 0);

struct OrthConstruction {
    std::size_t n = 0, m = 0;
    std::shared_ptr<const FqField> field;
    std::vector<std::string> labels;  // basis vector names in coordinate order
    FqMatrix gram;
    FqSubspace U, W, W1;  // W1 differs from W by mu in its first generator
    std::vector<std::vector<FqElem>> W_generators, W1_generators;
};

/// n = 4m+1 >= 9 or n = 4m+3 >= 7, q odd.
OrthConstruction orth_odd_construct(std::size_t n, std::uint32_t q);

bool is_nondegenerate(const FqField& F, const FqMatrix& gram, const FqSubspace& S);
/// Nondegenerate, even dimension 2k, and (-1)^k det is a square.
bool is_plus_type(const FqField& F, const FqMatrix& gram, const FqSubspace& S);

struct OrthPairResult {
    std::size_t n = 0;
    std::uint32_t q = 0;
    std::size_t stabilizer_order = 0;  // |Stab_SO(U)| as enumerated
    std::size_t form_violations = 0;   // enumerated elements not preserving the form (expected 0)
    std::vector<FqMatrix> survivors;   // elements also fixing W (or all of them without the filter)
    bool identity_survives = false;
    bool pass = false;  // only the identity survives
};

/// Only (7,3) is within budget. With filter_w = false nothing is filtered.
OrthPairResult orth_odd_pair_check(std::size_t n, std::uint32_t q, bool filter_w = true);

/// Does phi^i move S?
bool frobenius_moves(const FqField& F, const FqSubspace& S, std::uint32_t i);

}  // namespace minbase
