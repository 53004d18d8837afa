#include "minbase/fq.hpp"

#include "minbase/errors.hpp"

#include <algorithm>
#include <sstream>

namespace minbase {

namespace {

using Poly = std::vector<std::uint32_t>;  // coefficients, constant term first

Poly decode(std::uint32_t code, std::uint32_t p, std::uint32_t len)
{
    Poly c(len);
    for (auto& x : c) {
        x = code % p;
        code /= p;
    }
    return c;
}

std::uint32_t encode(const Poly& c, std::uint32_t p)
{
    std::uint32_t code = 0;
    for (std::size_t i = c.size(); i-- > 0;) code = code * p + c[i];
    return code;
}

void trim(Poly& a)
{
    while (!a.empty() && a.back() == 0) a.pop_back();
}

std::uint32_t inv_mod(std::uint32_t a, std::uint32_t p)
{
    std::uint32_t r = 1;
    for (std::uint32_t e = p - 2, b = a; e; e >>= 1, b = b * b % p)
        if (e & 1) r = r * b % p;
    return r;
}

/// Remainder of a modulo a monic or non-monic nonzero b.
Poly poly_mod(Poly a, const Poly& b, std::uint32_t p)
{
    trim(a);
    const std::size_t db = b.size() - 1;
    const std::uint32_t lead_inv = inv_mod(b.back(), p);
    while (a.size() > db) {
        const std::uint32_t c = a.back() * lead_inv % p;
        const std::size_t shift = a.size() - 1 - db;
        for (std::size_t i = 0; i <= db; ++i) a[shift + i] = (a[shift + i] + p - c * b[i] % p) % p;
        trim(a);
    }
    return a;
}

bool irreducible(const Poly& m, std::uint32_t p)
{
    const std::uint32_t f = static_cast<std::uint32_t>(m.size() - 1);
    for (std::uint32_t d = 1; 2 * d <= f; ++d) {
        std::uint32_t count = 1;
        for (std::uint32_t i = 0; i < d; ++i) count *= p;
        for (std::uint32_t code = 0; code < count; ++code) {
            Poly div = decode(code, p, d);
            div.push_back(1);
            if (poly_mod(m, div, p).empty()) return false;
        }
    }
    return true;
}

}  // namespace

FqField::FqField(std::uint32_t q) : q_(q)
{
    if (q < 2 || q > 1024) throw PreconditionError("field order must lie in [2, 1024]");
    p_ = 0;
    for (std::uint32_t d = 2; d <= q; ++d)
        if (q % d == 0) {
            p_ = d;
            break;
        }
    f_ = 0;
    for (std::uint32_t r = q; r > 1; r /= p_) {
        if (r % p_ != 0) throw PreconditionError("field order " + std::to_string(q) + " is not a prime power");
        ++f_;
    }

    // lexicographically smallest monic irreducible, lower coefficients read as a base-p integer
    for (std::uint32_t code = 0; code < q_; ++code) {
        Poly m = decode(code, p_, f_);
        m.push_back(1);
        if (f_ == 1 || irreducible(m, p_)) {
            modulus_ = m;
            break;
        }
    }

    add_.resize(q_ * q_);
    mul_.resize(q_ * q_);
    neg_.resize(q_);
    for (std::uint32_t a = 0; a < q_; ++a) {
        const Poly pa = decode(a, p_, f_);
        Poly na(f_);
        for (std::uint32_t i = 0; i < f_; ++i) na[i] = (p_ - pa[i]) % p_;
        neg_[a] = static_cast<FqElem>(encode(na, p_));
        for (std::uint32_t b = 0; b < q_; ++b) {
            const Poly pb = decode(b, p_, f_);
            Poly s(f_);
            for (std::uint32_t i = 0; i < f_; ++i) s[i] = (pa[i] + pb[i]) % p_;
            add_[a * q_ + b] = static_cast<FqElem>(encode(s, p_));
            Poly prod(2 * f_, 0);
            for (std::uint32_t i = 0; i < f_; ++i)
                for (std::uint32_t j = 0; j < f_; ++j) prod[i + j] = (prod[i + j] + pa[i] * pb[j]) % p_;
            Poly r = poly_mod(prod, modulus_, p_);
            r.resize(f_, 0);
            mul_[a * q_ + b] = static_cast<FqElem>(encode(r, p_));
        }
    }
    inv_.assign(q_, 0);
    for (std::uint32_t a = 1; a < q_; ++a)
        for (std::uint32_t b = 1; b < q_; ++b)
            if (mul_[a * q_ + b] == 1) {
                inv_[a] = static_cast<FqElem>(b);
                break;
            }
    frob_.resize(q_);
    for (std::uint32_t a = 0; a < q_; ++a) frob_[a] = pow(static_cast<FqElem>(a), p_);
    for (std::uint32_t a = 1; a < q_; ++a)
        if (order(static_cast<FqElem>(a)) == q_ - 1) {
            mu_ = static_cast<FqElem>(a);
            break;
        }
}

FqElem FqField::inv(FqElem a) const
{
    if (a == 0) throw PreconditionError("inverse of zero");
    return inv_[a];
}

FqElem FqField::pow(FqElem a, std::uint64_t e) const
{
    FqElem r = 1;
    for (FqElem b = a; e; e >>= 1, b = mul(b, b))
        if (e & 1) r = mul(r, b);
    return r;
}

FqElem FqField::frob(FqElem a, std::uint32_t i) const
{
    for (std::uint32_t k = 0; k < i % f_; ++k) a = frob_[a];
    return a;
}

std::uint32_t FqField::order(FqElem a) const
{
    if (a == 0) return 0;
    std::uint32_t k = 1;
    for (FqElem x = a; x != 1; x = mul(x, a)) ++k;
    return k;
}

bool FqField::is_square(FqElem a) const
{
    if (a == 0 || p_ == 2) return true;
    return pow(a, (q_ - 1) / 2) == 1;
}

FqElem FqField::from_int(long long k) const
{
    const long long r = ((k % static_cast<long long>(p_)) + p_) % p_;
    return static_cast<FqElem>(r);
}

FqMatrix FqMatrix::identity(std::size_t n)
{
    FqMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

FqMatrix FqMatrix::from_rows(const std::vector<std::vector<FqElem>>& rows)
{
    FqMatrix m(rows.size(), rows.empty() ? 0 : rows.front().size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != m.cols) throw PreconditionError("ragged matrix rows");
        std::copy(rows[r].begin(), rows[r].end(), m.data.begin() + static_cast<std::ptrdiff_t>(r * m.cols));
    }
    return m;
}

std::vector<FqElem> FqMatrix::row(std::size_t r) const
{
    return {data.begin() + static_cast<std::ptrdiff_t>(r * cols), data.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols)};
}

std::string FqMatrix::to_string() const
{
    std::ostringstream out;
    for (std::size_t r = 0; r < rows; ++r) {
        if (r) out << ';';
        for (std::size_t c = 0; c < cols; ++c) out << (c ? "," : "") << at(r, c);
    }
    return out.str();
}

std::size_t FqMatrixHash::operator()(const FqMatrix& m) const
{
    std::size_t h = m.rows * 1315423911u + m.cols;
    for (auto x : m.data) h = h * 1000003u ^ x;
    return h;
}

FqMatrix multiply(const FqField& F, const FqMatrix& a, const FqMatrix& b)
{
    if (a.cols != b.rows) throw PreconditionError("matrix shapes do not match");
    FqMatrix c(a.rows, b.cols);
    for (std::size_t i = 0; i < a.rows; ++i)
        for (std::size_t k = 0; k < a.cols; ++k) {
            const FqElem x = a.at(i, k);
            if (x == 0) continue;
            for (std::size_t j = 0; j < b.cols; ++j) c.at(i, j) = F.add(c.at(i, j), F.mul(x, b.at(k, j)));
        }
    return c;
}

FqMatrix transpose(const FqMatrix& a)
{
    FqMatrix t(a.cols, a.rows);
    for (std::size_t i = 0; i < a.rows; ++i)
        for (std::size_t j = 0; j < a.cols; ++j) t.at(j, i) = a.at(i, j);
    return t;
}

FqMatrix scale(const FqField& F, FqElem c, const FqMatrix& a)
{
    FqMatrix s = a;
    for (auto& x : s.data) x = F.mul(c, x);
    return s;
}

namespace {

/// In-place elimination; returns the rank and accumulates the determinant
/// factor when asked (swaps and pivot scalings).
std::size_t eliminate(const FqField& F, FqMatrix& a, bool reduce_above, FqElem* det = nullptr)
{
    std::size_t r = 0;
    if (det) *det = 1;
    for (std::size_t c = 0; c < a.cols && r < a.rows; ++c) {
        std::size_t piv = r;
        while (piv < a.rows && a.at(piv, c) == 0) ++piv;
        if (piv == a.rows) continue;
        if (piv != r) {
            for (std::size_t j = 0; j < a.cols; ++j) std::swap(a.at(piv, j), a.at(r, j));
            if (det) *det = F.neg(*det);
        }
        const FqElem lead = a.at(r, c);
        if (det) *det = F.mul(*det, lead);
        const FqElem li = F.inv(lead);
        for (std::size_t j = 0; j < a.cols; ++j) a.at(r, j) = F.mul(a.at(r, j), li);
        for (std::size_t i = reduce_above ? 0 : r + 1; i < a.rows; ++i) {
            if (i == r || a.at(i, c) == 0) continue;
            const FqElem m = a.at(i, c);
            for (std::size_t j = 0; j < a.cols; ++j) a.at(i, j) = F.sub(a.at(i, j), F.mul(m, a.at(r, j)));
        }
        ++r;
    }
    return r;
}

}  // namespace

FqMatrix rref(const FqField& F, FqMatrix a)
{
    const std::size_t r = eliminate(F, a, true);
    a.data.resize(r * a.cols);
    a.rows = r;
    return a;
}

std::size_t rank(const FqField& F, const FqMatrix& a)
{
    FqMatrix t = a;
    return eliminate(F, t, false);
}

FqElem determinant(const FqField& F, FqMatrix a)
{
    if (a.rows != a.cols) throw PreconditionError("determinant of a non-square matrix");
    FqElem d = 1;
    return eliminate(F, a, false, &d) == a.rows ? d : FqElem{0};
}

FqMatrix inverse(const FqField& F, const FqMatrix& a)
{
    if (a.rows != a.cols) throw PreconditionError("inverse of a non-square matrix");
    const std::size_t n = a.rows;
    FqMatrix aug(n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug.at(i, j) = a.at(i, j);
        aug.at(i, n + i) = 1;
    }
    eliminate(F, aug, true);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (aug.at(i, j) != (i == j ? 1 : 0)) throw PreconditionError("singular matrix");
    FqMatrix inv(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) inv.at(i, j) = aug.at(i, n + j);
    return inv;
}

FqMatrix frobenius(const FqField& F, const FqMatrix& a, std::uint32_t i)
{
    FqMatrix b = a;
    for (auto& x : b.data) x = F.frob(x, i);
    return b;
}

std::vector<FqElem> vec_mul(const FqField& F, const std::vector<FqElem>& v, const FqMatrix& g)
{
    if (v.size() != g.rows) throw PreconditionError("vector length does not match matrix");
    std::vector<FqElem> w(g.cols, 0);
    for (std::size_t k = 0; k < v.size(); ++k) {
        if (v[k] == 0) continue;
        for (std::size_t j = 0; j < g.cols; ++j) w[j] = F.add(w[j], F.mul(v[k], g.at(k, j)));
    }
    return w;
}

FqElem bilinear(const FqField& F, const FqMatrix& gram, const std::vector<FqElem>& v, const std::vector<FqElem>& w)
{
    const auto vg = vec_mul(F, v, gram);
    FqElem s = 0;
    for (std::size_t i = 0; i < w.size(); ++i) s = F.add(s, F.mul(vg[i], w[i]));
    return s;
}

FqSubspace FqSubspace::span(const FqField& F, const FqMatrix& rows)
{
    FqSubspace s;
    s.basis_ = rref(F, rows);
    return s;
}

bool FqSubspace::contains(const FqField& F, const std::vector<FqElem>& v) const
{
    FqMatrix m = basis_;
    m.data.insert(m.data.end(), v.begin(), v.end());
    ++m.rows;
    return rank(F, m) == dim();
}

FqSubspace FqSubspace::image(const FqField& F, const FqMatrix& g) const
{
    return span(F, multiply(F, basis_, g));
}

FqSubspace FqSubspace::frobenius(const FqField& F, std::uint32_t i) const
{
    return span(F, minbase::frobenius(F, basis_, i));
}

FqMatrix FqSubspace::restricted_gram(const FqField& F, const FqMatrix& gram) const
{
    return multiply(F, multiply(F, basis_, gram), transpose(basis_));
}

}  // namespace minbase
