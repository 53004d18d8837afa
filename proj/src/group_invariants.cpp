#include "minbase/group_invariants.hpp"

#include "minbase/errors.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>

namespace minbase {

namespace {

/// Breadth-first search over intersections. Returns the path of choices
/// (indices into `pool`) that reaches `target`, or nothing.
struct IntersectionSearch {
    struct State {
        ElementSet bits;
        std::size_t parent;  // index into states, SIZE_MAX for roots
        std::size_t choice;  // index into pool
        std::size_t depth;
    };
    std::vector<State> states;

    std::optional<std::vector<std::size_t>> run(const std::vector<ElementSet>& pool,
                                                const std::vector<std::size_t>& first_choices, const ElementSet& start,
                                                const ElementSet& target)
    {
        std::unordered_map<ElementSet, std::size_t, ElementSetHash> seen;
        auto path_to = [&](std::size_t s) {
            std::vector<std::size_t> path;
            for (; s != SIZE_MAX; s = states[s].parent) path.push_back(states[s].choice);
            std::reverse(path.begin(), path.end());
            return path;
        };
        for (auto c : first_choices) {
            ElementSet bits = start & pool[c];
            if (seen.emplace(bits, states.size()).second) states.push_back({bits, SIZE_MAX, c, 1});
            if (bits == target) return path_to(states.size() - 1);
        }
        for (std::size_t k = 0; k < states.size(); ++k) {
            for (std::size_t c = 0; c < pool.size(); ++c) {
                if (states[k].bits.is_subset_of(pool[c])) continue;
                ElementSet bits = states[k].bits & pool[c];
                if (!seen.emplace(bits, states.size()).second) continue;
                states.push_back({bits, k, c, states[k].depth + 1});
                if (bits == target) return path_to(states.size() - 1);
            }
        }
        return std::nullopt;
    }
};

}  // namespace

AlphaCertificate alpha(const SubgroupLattice& L)
{
    if (L.whole().order == 1) throw PreconditionError("alpha needs a nontrivial group");
    const auto& subs = L.subgroups();
    std::vector<ElementSet> pool;
    for (auto m : L.maximal_indices()) pool.push_back(subs[m].bits);
    std::vector<std::size_t> reps;
    for (const auto& cls : L.maximal_classes()) {
        auto it = std::find(L.maximal_indices().begin(), L.maximal_indices().end(), cls.front());
        reps.push_back(static_cast<std::size_t>(it - L.maximal_indices().begin()));
    }
    IntersectionSearch search;
    auto path = search.run(pool, reps, L.whole().bits, L.frattini().bits);
    if (!path) throw Error("internal: maximal subgroups do not intersect in the Frattini subgroup");
    AlphaCertificate cert;
    cert.value = path->size();
    for (auto c : *path) cert.witness.push_back(subs[L.maximal_indices()[c]]);
    cert.proved_minimal = true;
    cert.states = search.states.size();
    return cert;
}

BaseSizeCertificate base_size_subgroup(const SubgroupLattice& L, const SubgroupRecord& H)
{
    if (!L.is_maximal(H)) throw PreconditionError("base_size_subgroup needs a maximal subgroup");
    BaseSizeCertificate cert;
    cert.core = L.core(H);
    cert.conjugators.push_back(0);
    if (cert.core == H) {
        cert.value = 1;
        return cert;
    }
    const auto conj = L.conjugates(H);
    std::vector<ElementSet> pool;
    for (const auto& [rec, g] : conj) pool.push_back(rec.bits);
    IntersectionSearch search;
    // the first conjugate is H itself (conjugator 1); start from H
    std::vector<std::size_t> rest;
    for (std::size_t i = 1; i < pool.size(); ++i) rest.push_back(i);
    auto path = search.run(pool, rest, H.bits, cert.core.bits);
    if (!path) throw Error("internal: conjugates do not intersect in the core");
    for (auto c : *path) cert.conjugators.push_back(conj[c].second);
    cert.value = cert.conjugators.size();
    return cert;
}

BetaCertificate beta(const SubgroupLattice& L)
{
    BetaCertificate cert;
    const auto& subs = L.subgroups();
    for (const auto& cls : L.maximal_classes()) {
        const auto& H = subs[cls.front()];
        if (!(L.core(H) == L.frattini())) continue;
        cert.mstar_representatives.push_back(H);
        auto b = base_size_subgroup(L, H);
        cert.base_sizes.push_back(b.value);
        if (!cert.value || b.value < *cert.value) {
            cert.value = b.value;
            cert.chosen = H;
            cert.conjugators = b.conjugators;
        }
    }
    return cert;
}

bool derived_subgroup_is_nilpotent(const SubgroupLattice& L)
{
    return is_nilpotent(derived_subgroup(L.whole()));
}

Theorem3Report check_theorem3(const SubgroupLattice& L)
{
    if (!is_soluble(L.whole())) throw PreconditionError("check_theorem3 needs a soluble group");
    Theorem3Report r;
    const auto cs = L.chief_series();
    r.lambda = cs.length();
    r.delta = cs.non_frattini_count();
    r.alpha = alpha(L).value;
    r.derived_nilpotent = derived_subgroup_is_nilpotent(L);
    r.alpha_le_lambda = r.alpha <= r.lambda;
    if (r.derived_nilpotent) r.alpha_le_delta = r.alpha <= r.delta;
    r.pass = r.alpha_le_lambda && r.alpha_le_delta.value_or(true);
    return r;
}

// ---------------------------------------------------------------- chief-factor bound

namespace {

using Row = std::vector<int>;
using Matrix = std::vector<Row>;

int inv_mod(int x, int p)
{
    for (int y = 1; y < p; ++y)
        if (x * y % p == 1) return y;
    throw Error("internal: zero has no inverse");
}

/// Nullspace basis of a matrix over F_p (rows = equations).
std::vector<Row> nullspace(Matrix m, std::size_t cols, int p)
{
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t c = 0; c < cols && row < m.size(); ++c) {
        std::size_t r = row;
        while (r < m.size() && m[r][c] == 0) ++r;
        if (r == m.size()) continue;
        std::swap(m[r], m[row]);
        const int iv = inv_mod(m[row][c], p);
        for (auto& x : m[row]) x = x * iv % p;
        for (std::size_t k = 0; k < m.size(); ++k) {
            if (k == row || m[k][c] == 0) continue;
            const int f = m[k][c];
            for (std::size_t j = 0; j < cols; ++j) m[k][j] = ((m[k][j] - f * m[row][j]) % p + p) % p;
        }
        pivots.push_back(c);
        ++row;
    }
    std::vector<Row> basis;
    for (std::size_t free = 0; free < cols; ++free) {
        if (std::find(pivots.begin(), pivots.end(), free) != pivots.end()) continue;
        Row v(cols, 0);
        v[free] = 1;
        for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = (p - m[i][free]) % p;
        basis.push_back(v);
    }
    return basis;
}

std::size_t rank_mod(Matrix m, int p)
{
    const std::size_t cols = m.empty() ? 0 : m.front().size();
    return cols - nullspace(std::move(m), cols, p).size();
}

/// An elementary abelian chief factor H/K as an F_p G-module: one action
/// matrix per generator of G (row vectors, v -> v M).
struct Module {
    int p = 0;
    std::size_t dim = 0;
    std::vector<Matrix> action;
};

Module build_module(const SubgroupLattice& L, const SubgroupRecord& H, const SubgroupRecord& K, std::size_t order)
{
    const auto& t = L.table();
    Module mod;
    int p = 2;
    while (order % static_cast<std::size_t>(p)) ++p;
    mod.p = p;
    for (std::size_t o = order; o > 1; o /= static_cast<std::size_t>(p)) ++mod.dim;
    if (mod.dim > 4) throw BudgetError("chief factor of dimension " + std::to_string(mod.dim) + " > 4: intertwiner search refused");

    // basis h_1..h_d of H/K, greedily
    std::vector<ElementId> basis;
    SubgroupRecord span = K;
    for (auto h : H.elements) {
        if (basis.size() == mod.dim) break;
        if (span.contains(h)) continue;
        basis.push_back(h);
        auto gens = span.generators;
        gens.push_back(h);
        span = L.generate(gens);
    }
    // coordinates of every element of H: h_1^c_1 ... h_d^c_d k
    std::vector<Row> coord(t.size());
    std::vector<int> c(mod.dim, 0);
    while (true) {
        ElementId prod = 0;
        for (std::size_t i = 0; i < mod.dim; ++i)
            for (int e = 0; e < c[i]; ++e) prod = t.mul(prod, basis[i]);
        for (auto k : K.elements) coord[t.mul(prod, k)] = c;
        std::size_t i = 0;
        while (i < mod.dim && ++c[i] == p) c[i++] = 0;
        if (i == mod.dim) break;
    }
    for (auto g : t.generator_ids()) {
        Matrix M;
        for (auto h : basis) M.push_back(coord[t.conj(h, g)]);
        mod.action.push_back(M);
    }
    return mod;
}

/// Basis of Hom_G(A, B): matrices X with M^A_g X = X M^B_g for every g.
std::vector<Row> intertwiners(const Module& A, const Module& B)
{
    const std::size_t d = A.dim, n = d * d;
    const int p = A.p;
    Matrix eqs;
    for (std::size_t s = 0; s < A.action.size(); ++s) {
        const auto& MA = A.action[s];
        const auto& MB = B.action[s];
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j) {
                // (MA X)_{ij} - (X MB)_{ij} = 0, unknown X_{kl} at index k*d+l
                Row eq(n, 0);
                for (std::size_t k = 0; k < d; ++k) {
                    eq[k * d + j] = (eq[k * d + j] + MA[i][k]) % p;
                    eq[i * d + k] = ((eq[i * d + k] - MB[k][j]) % p + p) % p;
                }
                eqs.push_back(eq);
            }
    }
    return nullspace(eqs, n, p);
}

bool isomorphic(const Module& A, const Module& B)
{
    if (A.p != B.p || A.dim != B.dim) return false;
    auto hom = intertwiners(A, B);
    if (hom.empty()) return false;
    // chief factors are irreducible, so any nonzero intertwiner is invertible
    Matrix X(A.dim, Row(A.dim));
    for (std::size_t k = 0; k < A.dim; ++k)
        for (std::size_t l = 0; l < A.dim; ++l) X[k][l] = hom.front()[k * A.dim + l];
    if (rank_mod(X, A.p) != A.dim) throw Error("internal: nonzero intertwiner between chief factors is singular");
    return true;
}

}  // namespace

Theorem4Report theorem4_bound(const SubgroupLattice& L)
{
    Theorem4Report rep;
    const auto cs = L.chief_series();
    std::vector<Module> reps;
    for (std::size_t i = 0; i < cs.factors.size(); ++i) {
        const auto& f = cs.factors[i];
        if (!f.non_frattini) continue;
        if (f.abelian) {
            Module m = build_module(L, cs.series[i], cs.series[i + 1], f.order);
            bool placed = false;
            for (std::size_t c = 0; c < reps.size() && !placed; ++c)
                if (isomorphic(reps[c], m)) {
                    ++rep.abelian[c].delta;
                    placed = true;
                }
            if (!placed) {
                AbelianClass cls;
                cls.p = static_cast<std::size_t>(m.p);
                cls.dimension = m.dim;
                cls.end_degree = intertwiners(m, m).size();
                cls.dim_over_end = m.dim / cls.end_degree;
                cls.delta = 1;
                rep.abelian.push_back(cls);
                reps.push_back(std::move(m));
            }
        } else {
            auto it = std::find_if(rep.non_abelian.begin(), rep.non_abelian.end(), [&](const NonAbelianClass& c) {
                return c.order == f.order && c.n == f.composition_length;
            });
            if (it != rep.non_abelian.end())
                ++it->delta;
            else
                rep.non_abelian.push_back({f.order, f.composition_length, 1});
        }
    }
    for (const auto& c : rep.abelian) rep.bound += c.delta + c.dim_over_end;
    for (const auto& c : rep.non_abelian) rep.bound += std::max<std::size_t>(4, c.delta) + (3 * c.n - 1) / 2;
    if (is_soluble(L.whole())) {
        std::size_t s = 0;
        for (const auto& c : rep.abelian) s += c.delta + 3;
        rep.soluble_bound = s;
    }
    rep.alpha = L.whole().order == 1 ? 0 : alpha(L).value;
    rep.pass = rep.alpha <= rep.bound;
    return rep;
}

}  // namespace minbase
