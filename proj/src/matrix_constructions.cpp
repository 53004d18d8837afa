#include "minbase/matrix_constructions.hpp"

#include "minbase/errors.hpp"

#include <algorithm>
#include <array>
#include <thread>
#include <unordered_set>

namespace minbase {

FqMatrix symplectic_form4(const FqField& F)
{
    FqMatrix J(4, 4);
    J.at(0, 2) = J.at(1, 3) = 1;
    J.at(2, 0) = J.at(3, 1) = F.neg(1);
    return J;
}

bool scales_form(const FqField& F, const FqMatrix& g, const FqMatrix& form, FqElem m)
{
    return multiply(F, multiply(F, g, form), transpose(g)) == scale(F, m, form);
}

namespace {

FqMatrix span_rows(std::initializer_list<std::vector<FqElem>> rows)
{
    return FqMatrix::from_rows(rows);
}

bool pair_equal(const FqSubspace& a, const FqSubspace& b, const FqSubspace& c, const FqSubspace& d)
{
    return (a == c && b == d) || (a == d && b == c);
}

void check_sp4_q(const FqField& F)
{
    if (F.p() == 2) throw PreconditionError("q must be odd");
    if (F.q() < 5) throw PreconditionError("q must be at least 5");
}

}  // namespace

Sp4Points sp4_points(const FqField& F)
{
    const FqElem mu = F.mu();
    Sp4Points s;
    s.U = FqSubspace::span(F, span_rows({{1, 0, 0, 0}, {0, 1, 0, 0}}));
    s.W = FqSubspace::span(F, span_rows({{0, 0, 1, 0}, {0, 0, 0, 1}}));
    s.U1 = FqSubspace::span(F, span_rows({{1, 0, 0, 0}, {0, 1, 0, 1}}));
    s.W1 = FqSubspace::span(F, span_rows({{1, 0, 0, 1}, {0, 1, 1, 0}}));
    s.U2 = FqSubspace::span(F, span_rows({{1, 0, 0, 0}, {0, mu, 0, 1}}));
    return s;
}

Sp4PairResult sp4_pair_stabilizer(std::uint32_t q, unsigned threads)
{
    const FqField F(q);
    check_sp4_q(F);
    const std::uint64_t gl2 = std::uint64_t(q * q - 1) * (q * q - q);
    const std::uint64_t total = 2 * gl2 * (q - 1);
    if (total > 100'000'000) throw BudgetError("Sp4 enumeration would exceed 1e8 candidates");

    // membership bitmaps for U1 and W1 over all q^4 vectors
    const auto pts = sp4_points(F);
    auto index = [q](const FqElem* v) { return ((std::size_t(v[0]) * q + v[1]) * q + v[2]) * q + v[3]; };
    auto bitmap = [&](const FqSubspace& S) {
        std::vector<char> in(std::size_t(q) * q * q * q, 0);
        const auto r0 = S.basis().row(0), r1 = S.basis().row(1);
        for (FqElem x = 0; x < q; ++x)
            for (FqElem y = 0; y < q; ++y) {
                std::array<FqElem, 4> v{};
                for (int j = 0; j < 4; ++j) v[j] = F.add(F.mul(x, r0[j]), F.mul(y, r1[j]));
                in[index(v.data())] = 1;
            }
        return in;
    };
    const auto inU1 = bitmap(pts.U1), inW1 = bitmap(pts.W1);

    std::vector<std::array<FqElem, 4>> gl;
    gl.reserve(gl2);
    for (FqElem a = 0; a < q; ++a)
        for (FqElem b = 0; b < q; ++b)
            for (FqElem c = 0; c < q; ++c)
                for (FqElem d = 0; d < q; ++d)
                    if (F.sub(F.mul(a, d), F.mul(b, c)) != 0) gl.push_back({a, b, c, d});

    const FqElem* ADD = F.add_table();
    const FqElem* MUL = F.mul_table();
    const FqElem* NEG = F.neg_table();
    auto add = [&](FqElem x, FqElem y) { return ADD[x * q + y]; };
    auto mul = [&](FqElem x, FqElem y) { return MUL[x * q + y]; };

    struct Partial {
        std::uint64_t candidates = 0, form_checked = 0;
        std::vector<FqMatrix> survivors;
    };
    auto work = [&](std::size_t lo, std::size_t hi, Partial& out) {
        std::array<FqElem, 16> g{};
        std::array<FqElem, 4> img{};
        for (std::size_t k = lo; k < hi; ++k) {
            const auto [a, b, c, d] = gl[k];
            const FqElem dinv = F.inv(F.sub(mul(a, d), mul(b, c)));
            for (FqElem lambda = 1; lambda < q; ++lambda) {
                const FqElem s = mul(lambda, dinv);
                // B = lambda A^{-T}
                const std::array<FqElem, 4> B{mul(s, d), NEG[mul(s, c)], NEG[mul(s, b)], mul(s, a)};
                for (int shape = 0; shape < 2; ++shape) {
                    g.fill(0);
                    // shape 0: (A 0; 0 B), multiplier lambda; shape 1: (0 B; A 0), multiplier -lambda
                    const int ar = shape ? 2 : 0, ac = 0, br = shape ? 0 : 2, bc = 2;
                    g[ar * 4 + ac] = a, g[ar * 4 + ac + 1] = b, g[(ar + 1) * 4 + ac] = c, g[(ar + 1) * 4 + ac + 1] = d;
                    g[br * 4 + bc] = B[0], g[br * 4 + bc + 1] = B[1], g[(br + 1) * 4 + bc] = B[2], g[(br + 1) * 4 + bc + 1] = B[3];
                    ++out.candidates;

                    // g J g^T against m J, with J = (0 I; -I 0)
                    const FqElem m = shape ? NEG[lambda] : lambda;
                    bool ok = true;
                    for (int i = 0; i < 4 && ok; ++i)
                        for (int r = 0; r < 4 && ok; ++r) {
                            FqElem acc = 0;
                            for (int j = 0; j < 2; ++j) {
                                acc = add(acc, mul(g[i * 4 + j], g[r * 4 + j + 2]));
                                acc = add(acc, NEG[mul(g[i * 4 + j + 2], g[r * 4 + j])]);
                            }
                            const FqElem want = (r == i + 2) ? m : (i == r + 2) ? NEG[m] : 0;
                            ok = acc == want;
                        }
                    if (ok) ++out.form_checked;

                    // images of the spanning vectors of U1 and W1 are row sums of g
                    auto rowsum = [&](int r1, int r2) {
                        for (int j = 0; j < 4; ++j) img[j] = r2 < 0 ? g[r1 * 4 + j] : add(g[r1 * 4 + j], g[r2 * 4 + j]);
                        return index(img.data());
                    };
                    const std::size_t u_a = rowsum(0, -1), u_b = rowsum(1, 3);  // e1, e2+f2
                    const std::size_t w_a = rowsum(0, 3), w_b = rowsum(1, 2);   // e1+f2, e2+f1
                    const bool keep = (inU1[u_a] && inU1[u_b] && inW1[w_a] && inW1[w_b]) ||
                                      (inW1[u_a] && inW1[u_b] && inU1[w_a] && inU1[w_b]);
                    if (keep) {
                        FqMatrix M(4, 4);
                        std::copy(g.begin(), g.end(), M.data.begin());
                        out.survivors.push_back(std::move(M));
                    }
                }
            }
        }
    };

    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, gl.size()));
    std::vector<Partial> parts(threads);
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) {
        const std::size_t lo = gl.size() * t / threads, hi = gl.size() * (t + 1) / threads;
        if (threads == 1)
            work(lo, hi, parts[t]);
        else
            pool.emplace_back(work, lo, hi, std::ref(parts[t]));
    }
    for (auto& th : pool) th.join();

    Sp4PairResult r;
    r.q = q;
    for (auto& p : parts) {
        r.candidates += p.candidates;
        r.form_checked += p.form_checked;
        for (auto& m : p.survivors) r.survivors.push_back(std::move(m));
    }
    std::sort(r.survivors.begin(), r.survivors.end(), [](const FqMatrix& x, const FqMatrix& y) { return x.data < y.data; });

    r.all_scalar = std::all_of(r.survivors.begin(), r.survivors.end(), [](const FqMatrix& m) {
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = 0; j < 4; ++j)
                if (m.at(i, j) != (i == j ? m.at(0, 0) : FqElem{0})) return false;
        return true;
    });
    std::unordered_set<FqMatrix, FqMatrixHash> set(r.survivors.begin(), r.survivors.end());
    r.closed = set.count(FqMatrix::identity(4)) == 1;
    for (const auto& x : r.survivors)
        for (const auto& y : r.survivors) r.closed = r.closed && set.count(multiply(F, x, y)) == 1;
    r.pass = r.form_checked == r.candidates && r.all_scalar && r.closed && r.survivors.size() == q - 1;
    return r;
}

Sp4TripleResult sp4_triple_base_check(std::uint32_t q, unsigned threads)
{
    const FqField F(q);
    check_sp4_q(F);
    if (F.f() < 2) throw PreconditionError("q must be a proper prime power (f >= 2)");
    Sp4TripleResult r;
    r.q = q;
    r.p = F.p();
    r.f = F.f();
    r.pair = sp4_pair_stabilizer(q, threads);
    const auto s = sp4_points(F);
    r.phi_fixes_alpha = pair_equal(s.U.frobenius(F), s.W.frobenius(F), s.U, s.W);
    r.phi_fixes_beta = pair_equal(s.U1.frobenius(F), s.W1.frobenius(F), s.U1, s.W1);
    for (std::uint32_t i = 1; i < r.f; ++i)
        r.gamma_moved.push_back(!pair_equal(s.U2.frobenius(F, i), s.W1.frobenius(F, i), s.U2, s.W1));
    r.pass = r.pair.pass && r.phi_fixes_alpha && r.phi_fixes_beta &&
             std::all_of(r.gamma_moved.begin(), r.gamma_moved.end(), [](bool b) { return b; });
    return r;
}

OrthConstruction orth_odd_construct(std::size_t n, std::uint32_t q)
{
    auto F = std::make_shared<const FqField>(q);
    if (F->p() == 2) throw PreconditionError("q must be odd");
    const bool plus3 = n % 4 == 3;
    if (!((n % 4 == 1 && n >= 9) || (plus3 && n >= 7)))
        throw PreconditionError("n must be 4m+1 >= 9 or 4m+3 >= 7");
    OrthConstruction c;
    c.n = n;
    c.m = (n - (plus3 ? 3 : 1)) / 4;
    c.field = F;
    const std::size_t m = c.m;
    auto e = [](std::size_t i) { return i - 1; };
    auto f = [m](std::size_t i) { return m + i - 1; };
    auto es = [m](std::size_t i) { return 2 * m + i - 1; };
    auto fs = [m](std::size_t i) { return 3 * m + i - 1; };
    const std::size_t E = 4 * m, Fv = 4 * m + 1, x = n - 1;

    c.labels.resize(n);
    for (std::size_t i = 1; i <= m; ++i) {
        c.labels[e(i)] = "e" + std::to_string(i);
        c.labels[f(i)] = "f" + std::to_string(i);
        c.labels[es(i)] = "e" + std::to_string(i) + "*";
        c.labels[fs(i)] = "f" + std::to_string(i) + "*";
    }
    if (plus3) c.labels[E] = "e", c.labels[Fv] = "f";
    c.labels[x] = "x";

    c.gram = FqMatrix(n, n);
    auto pairup = [&](std::size_t i, std::size_t j) { c.gram.at(i, j) = c.gram.at(j, i) = 1; };
    for (std::size_t i = 1; i <= m; ++i) pairup(e(i), f(i)), pairup(es(i), fs(i));
    if (plus3) pairup(E, Fv);
    c.gram.at(x, x) = 1;

    auto vec = [n](std::initializer_list<std::pair<std::size_t, FqElem>> terms) {
        std::vector<FqElem> v(n, 0);
        for (auto [i, a] : terms) v[i] = a;
        return v;
    };
    std::vector<std::vector<FqElem>> u;
    for (std::size_t i = 1; i <= m; ++i) u.push_back(vec({{e(i), 1}})), u.push_back(vec({{f(i), 1}}));
    if (plus3) u.push_back(vec({{E, 1}})), u.push_back(vec({{Fv, 1}}));

    auto w_gens = [&](FqElem lead) {
        std::vector<std::vector<FqElem>> w{vec({{e(1), lead}, {x, 1}}), vec({{f(1), 1}, {es(1), 1}})};
        for (std::size_t i = 2; i <= m; ++i) {
            w.push_back(vec({{e(i), 1}, {fs(i - 1), 1}}));
            w.push_back(vec({{f(i), 1}, {es(i), 1}}));
        }
        if (plus3) {
            w.push_back(vec({{E, 1}, {fs(m), 1}}));
            w.push_back(vec({{Fv, 1}}));
        }
        return w;
    };
    c.W_generators = w_gens(1);
    c.W1_generators = w_gens(F->mu());
    c.U = FqSubspace::span(*F, FqMatrix::from_rows(u));
    c.W = FqSubspace::span(*F, FqMatrix::from_rows(c.W_generators));
    c.W1 = FqSubspace::span(*F, FqMatrix::from_rows(c.W1_generators));
    return c;
}

bool is_nondegenerate(const FqField& F, const FqMatrix& gram, const FqSubspace& S)
{
    return determinant(F, S.restricted_gram(F, gram)) != 0;
}

bool is_plus_type(const FqField& F, const FqMatrix& gram, const FqSubspace& S)
{
    if (S.dim() % 2 != 0) return false;
    FqElem d = determinant(F, S.restricted_gram(F, gram));
    if (d == 0) return false;
    if ((S.dim() / 2) % 2 == 1) d = F.neg(d);
    return F.is_square(d);
}

namespace {

/// The isometry group of a nondegenerate symmetric form, generated by
/// reflections in non-singular vectors and expanded by closure.
std::vector<FqMatrix> isometry_group(const FqField& F, const FqMatrix& gram, std::size_t cap)
{
    const std::size_t k = gram.rows;
    std::size_t total = 1;
    for (std::size_t i = 0; i < k; ++i) total *= F.q();
    const FqElem two = F.from_int(2);
    std::vector<FqMatrix> gens;
    for (std::size_t code = 1; code < total; ++code) {
        std::vector<FqElem> v(k);
        std::size_t c = code;
        for (auto& a : v) a = static_cast<FqElem>(c % F.q()), c /= F.q();
        // one vector per line: first nonzero coordinate is 1
        if (*std::find_if(v.begin(), v.end(), [](FqElem a) { return a != 0; }) != 1) continue;
        const FqElem vv = bilinear(F, gram, v, v);
        if (vv == 0) continue;
        FqMatrix R = FqMatrix::identity(k);
        for (std::size_t i = 0; i < k; ++i) {
            std::vector<FqElem> ei(k, 0);
            ei[i] = 1;
            const FqElem coef = F.div(F.mul(two, bilinear(F, gram, ei, v)), vv);
            for (std::size_t j = 0; j < k; ++j) R.at(i, j) = F.sub(R.at(i, j), F.mul(coef, v[j]));
        }
        gens.push_back(std::move(R));
    }
    std::unordered_set<FqMatrix, FqMatrixHash> seen{FqMatrix::identity(k)};
    std::vector<FqMatrix> out{FqMatrix::identity(k)};
    for (std::size_t i = 0; i < out.size(); ++i)
        for (const auto& g : gens) {
            auto h = multiply(F, out[i], g);
            if (seen.insert(h).second) {
                out.push_back(std::move(h));
                if (out.size() > cap) throw BudgetError("isometry group exceeds enumeration cap");
            }
        }
    return out;
}

FqMatrix submatrix(const FqMatrix& a, const std::vector<std::size_t>& idx)
{
    FqMatrix s(idx.size(), idx.size());
    for (std::size_t i = 0; i < idx.size(); ++i)
        for (std::size_t j = 0; j < idx.size(); ++j) s.at(i, j) = a.at(idx[i], idx[j]);
    return s;
}

}  // namespace

OrthPairResult orth_odd_pair_check(std::size_t n, std::uint32_t q, bool filter_w)
{
    if (n != 7 || q != 3) throw BudgetError("orthogonal pair check is only within budget for (n,q) = (7,3)");
    const auto c = orth_odd_construct(n, q);
    const FqField& F = *c.field;

    // U is spanned by coordinate vectors, so U-perp is spanned by the rest
    std::vector<std::size_t> in_u, in_perp;
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<FqElem> ei(n, 0);
        ei[i] = 1;
        (c.U.contains(F, ei) ? in_u : in_perp).push_back(i);
    }
    const auto OU = isometry_group(F, submatrix(c.gram, in_u), 100000);
    const auto OP = isometry_group(F, submatrix(c.gram, in_perp), 100000);
    std::vector<FqElem> det_p;
    for (const auto& b : OP) det_p.push_back(determinant(F, b));

    OrthPairResult r;
    r.n = n;
    r.q = q;
    const auto id = FqMatrix::identity(n);
    for (const auto& a : OU) {
        const FqElem da = determinant(F, a);
        for (std::size_t j = 0; j < OP.size(); ++j) {
            if (F.mul(da, det_p[j]) != 1) continue;
            FqMatrix g(n, n);
            for (std::size_t s = 0; s < in_u.size(); ++s)
                for (std::size_t t = 0; t < in_u.size(); ++t) g.at(in_u[s], in_u[t]) = a.at(s, t);
            for (std::size_t s = 0; s < in_perp.size(); ++s)
                for (std::size_t t = 0; t < in_perp.size(); ++t) g.at(in_perp[s], in_perp[t]) = OP[j].at(s, t);
            ++r.stabilizer_order;
            if (!scales_form(F, g, c.gram, 1)) ++r.form_violations;
            if (filter_w && !(c.W.image(F, g) == c.W)) continue;
            if (g == id) r.identity_survives = true;
            r.survivors.push_back(std::move(g));
        }
    }
    r.pass = r.form_violations == 0 && r.identity_survives && r.survivors.size() == 1;
    return r;
}

bool frobenius_moves(const FqField& F, const FqSubspace& S, std::uint32_t i)
{
    return !(S.frobenius(F, i) == S);
}

}  // namespace minbase
