#pragma once

// Arithmetic in F_q, small dense matrices over it, and subspaces kept in
// reduced row echelon form. Vectors are rows; a matrix g acts by v -> v g.

#include <cstdint>
#include <string>
#include <vector>

namespace minbase {

/// An element of F_q, encoded as the integer sum a_i p^i of its coefficient
/// vector in the polynomial basis 1, t, t^2, ... modulo the field modulus.
using FqElem = std::uint16_t;

class FqField {
public:
    /// q must be a prime power, at most 1024.
    explicit FqField(std::uint32_t q);

    std::uint32_t q() const { return q_; }
    std::uint32_t p() const { return p_; }
    std::uint32_t f() const { return f_; }
    /// Monic irreducible of degree f, coefficients from the constant term up.
    const std::vector<std::uint32_t>& modulus() const { return modulus_; }
    /// Smallest primitive element in the integer encoding.
    FqElem mu() const { return mu_; }

    FqElem add(FqElem a, FqElem b) const { return add_[a * q_ + b]; }
    FqElem mul(FqElem a, FqElem b) const { return mul_[a * q_ + b]; }
    FqElem neg(FqElem a) const { return neg_[a]; }
    FqElem sub(FqElem a, FqElem b) const { return add(a, neg(b)); }
    /// Throws PreconditionError for a = 0.
    FqElem inv(FqElem a) const;
    FqElem div(FqElem a, FqElem b) const { return mul(a, inv(b)); }
    FqElem pow(FqElem a, std::uint64_t e) const;
    /// a^(p^i)
    FqElem frob(FqElem a, std::uint32_t i = 1) const;
    /// Multiplicative order; 0 for a = 0.
    std::uint32_t order(FqElem a) const;
    bool is_square(FqElem a) const;
    /// Image of the integer k under Z -> F_p.
    FqElem from_int(long long k) const;

    const FqElem* add_table() const { return add_.data(); }
    const FqElem* mul_table() const { return mul_.data(); }
    const FqElem* neg_table() const { return neg_.data(); }

private:
    std::uint32_t q_, p_, f_;
    std::vector<std::uint32_t> modulus_;
    FqElem mu_ = 0;
    std::vector<FqElem> add_, mul_, neg_, inv_, frob_;
};

struct FqMatrix {
    std::size_t rows = 0, cols = 0;
    std::vector<FqElem> data;

    FqMatrix() = default;
    FqMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0) {}
    static FqMatrix identity(std::size_t n);
    static FqMatrix from_rows(const std::vector<std::vector<FqElem>>& rows);

    FqElem& at(std::size_t r, std::size_t c) { return data[r * cols + c]; }
    FqElem at(std::size_t r, std::size_t c) const { return data[r * cols + c]; }
    std::vector<FqElem> row(std::size_t r) const;

    bool operator==(const FqMatrix&) const = default;
    /// Rows separated by ';', entries by ',' using the integer encoding.
    std::string to_string() const;
};

struct FqMatrixHash {
    std::size_t operator()(const FqMatrix& m) const;
};

FqMatrix multiply(const FqField& F, const FqMatrix& a, const FqMatrix& b);
FqMatrix transpose(const FqMatrix& a);
FqMatrix scale(const FqField& F, FqElem c, const FqMatrix& a);
/// Reduced row echelon form with zero rows removed.
FqMatrix rref(const FqField& F, FqMatrix a);
std::size_t rank(const FqField& F, const FqMatrix& a);
FqElem determinant(const FqField& F, FqMatrix a);
/// Throws PreconditionError if singular.
FqMatrix inverse(const FqField& F, const FqMatrix& a);
/// Entrywise a -> a^(p^i): the standard field automorphism in these coordinates.
FqMatrix frobenius(const FqField& F, const FqMatrix& a, std::uint32_t i = 1);
std::vector<FqElem> vec_mul(const FqField& F, const std::vector<FqElem>& v, const FqMatrix& g);
/// v G w^T
FqElem bilinear(const FqField& F, const FqMatrix& gram, const std::vector<FqElem>& v, const std::vector<FqElem>& w);

class FqSubspace {
public:
    FqSubspace() = default;
    /// Span of the given rows (any spanning set).
    static FqSubspace span(const FqField& F, const FqMatrix& rows);

    std::size_t ambient() const { return basis_.cols; }
    std::size_t dim() const { return basis_.rows; }
    /// Canonical basis: equality of subspaces is equality of this matrix.
    const FqMatrix& basis() const { return basis_; }
    bool contains(const FqField& F, const std::vector<FqElem>& v) const;
    FqSubspace image(const FqField& F, const FqMatrix& g) const;
    FqSubspace frobenius(const FqField& F, std::uint32_t i = 1) const;
    /// The Gram matrix of the form restricted to the canonical basis.
    FqMatrix restricted_gram(const FqField& F, const FqMatrix& gram) const;

    bool operator==(const FqSubspace&) const = default;

private:
    FqMatrix basis_;
};

}  // namespace minbase
