#include "minbase/partition_bases.hpp"

#include "minbase/errors.hpp"

#include <algorithm>
#include <mutex>
#include <numeric>
#include <random>
#include <sstream>
#include <unordered_map>

namespace minbase {

// ---------------------------------------------------------------- SetPartition

SetPartition::SetPartition(std::size_t ground_size, std::vector<std::vector<Point>> blocks)
    : n_(ground_size), blocks_(std::move(blocks)), block_of_(ground_size, ground_size)
{
    for (auto& b : blocks_) {
        if (b.empty()) throw PreconditionError("partition has an empty block");
        std::sort(b.begin(), b.end());
    }
    std::sort(blocks_.begin(), blocks_.end());
    for (std::size_t i = 0; i < blocks_.size(); ++i)
        for (auto x : blocks_[i]) {
            if (x >= n_) throw PreconditionError("partition point out of range");
            if (block_of_[x] != n_) throw PreconditionError("partition blocks overlap");
            block_of_[x] = i;
        }
    for (auto b : block_of_)
        if (b == n_) throw PreconditionError("partition blocks do not cover the ground set");
}

SetPartition SetPartition::from_labels(const std::vector<std::size_t>& labels)
{
    std::map<std::size_t, std::vector<Point>> by_label;
    for (std::size_t x = 0; x < labels.size(); ++x) by_label[labels[x]].push_back(static_cast<Point>(x));
    std::vector<std::vector<Point>> blocks;
    for (auto& [label, blk] : by_label) blocks.push_back(std::move(blk));
    return SetPartition(labels.size(), std::move(blocks));
}

std::size_t SetPartition::uniform_block_size() const
{
    if (blocks_.empty()) return 0;
    for (const auto& b : blocks_)
        if (b.size() != blocks_.front().size()) return 0;
    return blocks_.front().size();
}

SetPartition SetPartition::image(const Permutation& g) const
{
    if (g.degree() != n_) throw PreconditionError("permutation degree differs from ground size");
    std::vector<std::vector<Point>> blocks;
    for (const auto& b : blocks_) {
        std::vector<Point> img;
        for (auto x : b) img.push_back(g[x]);
        blocks.push_back(std::move(img));
    }
    return SetPartition(n_, std::move(blocks));
}

bool SetPartition::is_fixed_by(const Permutation& g) const
{
    if (g.degree() != n_) return false;
    for (const auto& b : blocks_) {
        const std::size_t target = block_of_[g[b.front()]];
        if (blocks_[target].size() != b.size()) return false;
        for (auto x : b)
            if (block_of_[g[x]] != target) return false;
    }
    return true;
}

std::string SetPartition::to_string() const
{
    std::ostringstream os;
    for (std::size_t i = 0; i < blocks_.size(); ++i) {
        if (i) os << '|';
        os << '{';
        for (std::size_t k = 0; k < blocks_[i].size(); ++k) os << (k ? "," : "") << blocks_[i][k] + 1;
        os << '}';
    }
    return os.str();
}

SetPartition parse_partition(const std::string& text, std::size_t ground_size)
{
    std::vector<std::vector<Point>> blocks;
    std::size_t i = 0;
    auto skip = [&] {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    };
    while (true) {
        skip();
        if (i >= text.size() || text[i] != '{') throw PreconditionError("expected '{' in partition text");
        ++i;
        std::vector<Point> blk;
        while (true) {
            skip();
            std::size_t v = 0, digits = 0;
            while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
                v = v * 10 + static_cast<std::size_t>(text[i++] - '0');
                ++digits;
            }
            if (!digits || v < 1 || v > ground_size) throw PreconditionError("bad point in partition text");
            blk.push_back(static_cast<Point>(v - 1));
            skip();
            if (i < text.size() && text[i] == ',') {
                ++i;
                continue;
            }
            if (i < text.size() && text[i] == '}') {
                ++i;
                break;
            }
            throw PreconditionError("malformed block in partition text");
        }
        blocks.push_back(std::move(blk));
        skip();
        if (i == text.size()) break;
        if (text[i] != '|') throw PreconditionError("expected '|' between blocks");
        ++i;
    }
    return SetPartition(ground_size, std::move(blocks));
}

SetPartition row_partition(std::size_t a, std::size_t b)
{
    std::vector<std::size_t> labels(a * b);
    for (std::size_t x = 0; x < labels.size(); ++x) labels[x] = x / b;
    return SetPartition::from_labels(labels);
}

// ---------------------------------------------------------------- grids

namespace {

int mod(int x, int a) { return ((x % a) + a) % a; }

}  // namespace

GridCoords::GridCoords(GridCase tag, std::size_t a) : tag_(tag), a_(a)
{
    const int A = static_cast<int>(a);
    const int lo = tag == GridCase::equal ? 1 : 0;
    for (int i = lo; i < A + lo; ++i)
        for (int j = lo; j < A + lo; ++j)
            if (contains(i, j)) {
                index_.emplace(std::make_pair(i, j), static_cast<Point>(coords_.size()));
                coords_.emplace_back(i, j);
            }
}

bool GridCoords::contains(int i, int j) const
{
    const int A = static_cast<int>(a_);
    switch (tag_) {
    case GridCase::plus2: {
        const int d = mod(i - j, A);
        return d != 1 && d != A - 1;
    }
    case GridCase::plus1:
        return mod(j - i, A) != 1;
    case GridCase::equal:
        return i >= 1 && i <= A && j >= 1 && j <= A;
    }
    return false;
}

Point GridCoords::point(int i, int j) const
{
    const int A = static_cast<int>(a_);
    if (tag_ != GridCase::equal) {
        i = mod(i, A);
        j = mod(j, A);
    }
    auto it = index_.find({i, j});
    if (it == index_.end())
        throw PreconditionError("(" + std::to_string(i) + "," + std::to_string(j) + ") is not in the grid domain");
    return it->second;
}

std::string GridCoords::tag_name() const
{
    switch (tag_) {
    case GridCase::plus2: return "plus2";
    case GridCase::plus1: return "plus1";
    case GridCase::equal: return "equal";
    }
    return "";
}

namespace {

using Cells = std::vector<std::pair<int, int>>;

SetPartition partition_from_cells(const GridCoords& g, const std::vector<Cells>& blocks)
{
    std::vector<std::vector<Point>> out;
    for (const auto& blk : blocks) {
        std::vector<Point> pts;
        for (auto [i, j] : blk) pts.push_back(g.point(i, j));
        out.push_back(std::move(pts));
    }
    return SetPartition(g.size(), std::move(out));
}

/// rows and columns of the grid domain, in block-index order
std::pair<std::vector<Cells>, std::vector<Cells>> rows_and_columns(const GridCoords& g)
{
    const int A = static_cast<int>(g.a());
    const int lo = g.tag() == GridCase::equal ? 1 : 0;
    std::vector<Cells> rows(g.a()), cols(g.a());
    for (Point x = 0; x < g.size(); ++x) {
        auto [i, j] = g.coords(x);
        rows[static_cast<std::size_t>(i - lo)].emplace_back(i, j);
        cols[static_cast<std::size_t>(j - lo)].emplace_back(i, j);
    }
    (void)A;
    return {rows, cols};
}

void erase_cell(Cells& c, std::pair<int, int> x, const GridCoords& g)
{
    const Point p = g.point(x.first, x.second);
    auto it = std::find_if(c.begin(), c.end(), [&](auto y) { return g.point(y.first, y.second) == p; });
    if (it == c.end()) throw Error("internal: construction removes a cell that is not in the block");
    c.erase(it);
}

}  // namespace

BcdTriple construct_bcd_plus2(std::size_t a)
{
    if (a < 4) throw PreconditionError("construct_bcd_plus2 needs a >= 4");
    GridCoords g(GridCase::plus2, a);
    auto [rows, cols] = rows_and_columns(g);
    auto D = rows;
    erase_cell(D[0], {0, 2}, g);
    D[0].emplace_back(1, 3);
    erase_cell(D[1], {1, 3}, g);
    D[1].emplace_back(0, 2);
    return {g, partition_from_cells(g, rows), partition_from_cells(g, cols), partition_from_cells(g, D)};
}

BcdTriple construct_bcd_plus1(std::size_t a)
{
    if (a < 5) throw PreconditionError("construct_bcd_plus1 needs a >= 5");
    GridCoords g(GridCase::plus1, a);
    auto [rows, cols] = rows_and_columns(g);
    auto D = rows;
    const int half = static_cast<int>(a / 2);
    for (int i = 0; i < half; ++i) {
        Cells Y, Z;
        for (int t = 1; t <= i + 1; ++t) {
            Y.emplace_back(2 * i, 2 * t);
            Z.emplace_back(2 * i + 1, 2 * t + 1);
        }
        for (auto y : Y) erase_cell(D[static_cast<std::size_t>(2 * i)], y, g);
        for (auto z : Z) erase_cell(D[static_cast<std::size_t>(2 * i + 1)], z, g);
        D[static_cast<std::size_t>(2 * i)].insert(D[static_cast<std::size_t>(2 * i)].end(), Z.begin(), Z.end());
        D[static_cast<std::size_t>(2 * i + 1)].insert(D[static_cast<std::size_t>(2 * i + 1)].end(), Y.begin(), Y.end());
    }
    return {g, partition_from_cells(g, rows), partition_from_cells(g, cols), partition_from_cells(g, D)};
}

namespace {

/// D_1..D_a of the a = b construction, as 1-based cell lists in index order.
std::vector<Cells> equal_case_d_blocks(int a)
{
    const int k = a / 2;
    std::vector<Cells> D(static_cast<std::size_t>(a));
    auto at = [&](int r) -> Cells& { return D[static_cast<std::size_t>(r - 1)]; };
    for (int i = 0; i <= k - 2; ++i) {
        Cells& odd = at(2 * i + 1);
        for (int y = 2; y <= 2 * i + 2; y += 2) {
            odd.emplace_back(2 * i + 2, y);
            odd.emplace_back(2 * i + 1, y);
        }
        for (int y = 2 * i + 3; y <= a; ++y) odd.emplace_back(2 * i + 1, y);

        Cells& even = at(2 * i + 2);
        for (int y = 1; y <= 2 * i + 1; y += 2) {
            even.emplace_back(2 * i + 1, y);
            even.emplace_back(2 * i + 2, y);
        }
        for (int y = 2 * i + 3; y <= a; ++y) even.emplace_back(2 * i + 2, y);
    }
    Cells& p = at(2 * k - 1);
    Cells& q = at(2 * k);
    if (a % 2 == 0) {
        p.emplace_back(2 * k - 1, 1);
        for (int y = 2; y <= 2 * k - 2; y += 2) {
            p.emplace_back(2 * k - 1, y);
            p.emplace_back(2 * k, y);
        }
        p.emplace_back(2 * k - 1, 2 * k);

        q.emplace_back(2 * k, 1);
        for (int y = 3; y <= 2 * k - 1; y += 2) {
            q.emplace_back(2 * k - 1, y);
            q.emplace_back(2 * k, y);
        }
        q.emplace_back(2 * k, 2 * k);
    } else {
        p.emplace_back(2 * k - 1, 1);
        p.emplace_back(2 * k - 1, 3);
        for (int y = 4; y <= 2 * k; y += 2) {
            p.emplace_back(2 * k - 1, y);
            p.emplace_back(2 * k, y);
        }
        p.emplace_back(2 * k - 1, 2 * k + 1);

        q.emplace_back(2 * k, 1);
        q.emplace_back(2 * k - 1, 2);
        q.emplace_back(2 * k, 2);
        q.emplace_back(2 * k, 3);
        for (int y = 5; y <= 2 * k - 1; y += 2) {
            q.emplace_back(2 * k - 1, y);
            q.emplace_back(2 * k, y);
        }
        q.emplace_back(2 * k, 2 * k + 1);

        Cells& last = at(2 * k + 1);
        for (int y = 1; y <= 2 * k + 1; ++y) last.emplace_back(2 * k + 1, y);
    }
    return D;
}

}  // namespace

BcdTriple construct_bcd_equal(std::size_t a)
{
    if (a < 6) throw PreconditionError("construct_bcd_equal needs a >= 6");
    GridCoords g(GridCase::equal, a);
    auto [rows, cols] = rows_and_columns(g);
    return {g, partition_from_cells(g, rows), partition_from_cells(g, cols),
            partition_from_cells(g, equal_case_d_blocks(static_cast<int>(a)))};
}

SignatureCounts signature_counts(const BcdTriple& t)
{
    const std::size_t a = t.grid.a();
    // blocks in construction order: columns by column index, D by its own index
    auto [rows, cols] = rows_and_columns(t.grid);
    std::vector<std::vector<Point>> C, D;
    for (const auto& c : cols) {
        std::vector<Point> pts;
        for (auto [i, j] : c) pts.push_back(t.grid.point(i, j));
        C.push_back(pts);
    }
    if (t.grid.tag() == GridCase::equal) {
        for (const auto& d : equal_case_d_blocks(static_cast<int>(a))) {
            std::vector<Point> pts;
            for (auto [i, j] : d) pts.push_back(t.grid.point(i, j));
            D.push_back(pts);
        }
    } else {
        for (const auto& blk : t.D.blocks()) D.push_back(blk);
    }
    std::vector<std::vector<std::size_t>> meet(a, std::vector<std::size_t>(a, 0));  // meet[r][s] = |C_r n D_s|
    for (std::size_t r = 0; r < a; ++r)
        for (std::size_t s = 0; s < a; ++s)
            for (auto x : C[r]) meet[r][s] += std::count(D[s].begin(), D[s].end(), x) ? 1 : 0;
    SignatureCounts sc;
    sc.c.assign(a, std::vector<std::size_t>(a + 1, 0));
    sc.d.assign(a, std::vector<std::size_t>(a + 1, 0));
    for (std::size_t r = 0; r < a; ++r)
        for (std::size_t s = 0; s < a; ++s) {
            ++sc.c[r][meet[r][s]];
            ++sc.d[r][meet[s][r]];
        }
    return sc;
}

// ---------------------------------------------------------------- base sizes

namespace {

void check_shape(std::size_t a, std::size_t b)
{
    if (b < 2 || a < b) throw PreconditionError("need a >= b >= 2");
    if (a == 2 && b == 2) throw PreconditionError("(a,b) = (2,2): the stabilizer contains a normal subgroup of S_4");
}

}  // namespace

std::size_t expected_base_size(std::size_t a, std::size_t b, Parity parity)
{
    check_shape(a, b);
    if (parity == Parity::even) {
        const std::size_t eps = b >= 5 ? 2 : 3;
        return b >= 3 && a >= b + eps ? 2 : 3;
    }
    if (a == 3 && b == 2) return 4;
    if (b >= 3 && a >= std::max<std::size_t>(8, b + 3)) return 2;
    return 3;
}

namespace {

bool trivial_in(const std::vector<SetPartition>& parts, Parity parity)
{
    return partition_stabilizer(parts, parity).is_trivial();
}

/// Uniform partitions of n = ab points as restricted growth strings, 4 bits
/// per point.
class PartitionSpace {
public:
    PartitionSpace(std::size_t a, std::size_t b) : a_(a), b_(b), n_(a * b)
    {
        if (n_ > 16 || a > 16) throw PreconditionError("partition space too large to enumerate");
        std::vector<std::size_t> label(n_), fill(a, 0);
        enumerate(0, 0, label, fill);
        for (std::size_t i = 0; i < codes_.size(); ++i) index_.emplace(codes_[i], i);
    }

    std::size_t size() const { return codes_.size(); }
    std::size_t index_of(std::uint64_t code) const { return index_.at(code); }
    std::uint64_t code(std::size_t i) const { return codes_[i]; }

    std::uint64_t encode(const SetPartition& P) const { return normalize(P.block_of()); }

    SetPartition decode(std::uint64_t code) const
    {
        std::vector<std::size_t> labels(n_);
        for (std::size_t x = 0; x < n_; ++x) labels[x] = (code >> (4 * x)) & 15u;
        return SetPartition::from_labels(labels);
    }

    std::uint64_t apply(std::uint64_t code, const Permutation& g) const
    {
        std::vector<std::size_t> labels(n_);
        for (std::size_t x = 0; x < n_; ++x) labels[g[static_cast<Point>(x)]] = (code >> (4 * x)) & 15u;
        return normalize(labels);
    }

private:
    std::uint64_t normalize(const std::vector<std::size_t>& labels) const
    {
        std::array<std::size_t, 17> relabel;
        relabel.fill(16);
        std::size_t next = 0;
        std::uint64_t code = 0;
        for (std::size_t x = 0; x < n_; ++x) {
            auto& r = relabel[std::min<std::size_t>(labels[x], 16)];
            if (r == 16) r = next++;
            code |= std::uint64_t(r) << (4 * x);
        }
        return code;
    }

    void enumerate(std::size_t x, std::size_t used, std::vector<std::size_t>& label, std::vector<std::size_t>& fill)
    {
        if (x == n_) {
            std::uint64_t code = 0;
            for (std::size_t y = 0; y < n_; ++y) code |= std::uint64_t(label[y]) << (4 * y);
            codes_.push_back(code);
            return;
        }
        for (std::size_t l = 0; l <= used && l < a_; ++l) {
            if (fill[l] == b_) continue;
            label[x] = l;
            ++fill[l];
            enumerate(x + 1, std::max(used, l + 1), label, fill);
            --fill[l];
        }
    }

    std::size_t a_, b_, n_;
    std::vector<std::uint64_t> codes_;
    std::unordered_map<std::uint64_t, std::size_t> index_;
};

struct OrbitData {
    std::vector<std::size_t> reps;
    std::vector<std::size_t> sizes;
};

OrbitData orbits_on(const PartitionSpace& space, const PermGroup& S)
{
    std::vector<std::size_t> parent(space.size());
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    auto find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (const auto& g : S.generators())
        for (std::size_t i = 0; i < space.size(); ++i) {
            const std::size_t j = space.index_of(space.apply(space.code(i), g));
            std::size_t ri = find(i), rj = find(j);
            if (ri != rj) parent[std::max(ri, rj)] = std::min(ri, rj);
        }
    std::map<std::size_t, std::size_t> count;
    for (std::size_t i = 0; i < space.size(); ++i) ++count[find(i)];
    OrbitData out;
    for (auto [r, c] : count) {
        out.reps.push_back(r);
        out.sizes.push_back(c);
    }
    return out;
}

/// Is there a base of size k extending `tuple` (whose stabilizer is S)?
bool extend_to_base(const PartitionSpace& space, std::vector<SetPartition>& tuple, const PermGroup& S, std::size_t k,
                    Parity parity)
{
    if (S.is_trivial()) return true;
    if (tuple.size() >= k) return false;
    auto orbits = orbits_on(space, S);
    if (tuple.size() + 1 == k) {
        for (std::size_t i = 0; i < orbits.reps.size(); ++i)
            if (S.order() == orbits.sizes[i]) {
                tuple.push_back(space.decode(space.code(orbits.reps[i])));
                return true;
            }
        return false;
    }
    for (auto r : orbits.reps) {
        tuple.push_back(space.decode(space.code(r)));
        const PermGroup next = partition_stabilizer(tuple, parity);
        if (next.order() < S.order() && extend_to_base(space, tuple, next, k, parity)) return true;
        tuple.pop_back();
    }
    return false;
}

/// Random a x a 0/1 matrix with all row and column sums b.
std::vector<std::vector<char>> random_regular_pattern(std::size_t a, std::size_t b, std::mt19937_64& rng)
{
    const bool complement = 2 * b > a;
    const std::size_t k = complement ? a - b : b;
    while (true) {
        std::vector<std::vector<char>> M(a, std::vector<char>(a, 0));
        bool ok = true;
        for (std::size_t t = 0; t < k && ok; ++t) {
            std::vector<std::size_t> perm(a);
            std::iota(perm.begin(), perm.end(), std::size_t{0});
            bool placed = false;
            for (int attempt = 0; attempt < 200 && !placed; ++attempt) {
                std::shuffle(perm.begin(), perm.end(), rng);
                placed = true;
                for (std::size_t i = 0; i < a && placed; ++i) placed = !M[i][perm[i]];
            }
            if (!placed) {
                ok = false;
                break;
            }
            for (std::size_t i = 0; i < a; ++i) M[i][perm[i]] = 1;
        }
        if (!ok) continue;
        if (complement)
            for (auto& row : M)
                for (auto& c : row) c = !c;
        return M;
    }
}

/// Second partition whose blocks meet each row block in at most one point.
SetPartition transversal_partner(std::size_t a, std::size_t b, std::mt19937_64& rng)
{
    auto M = random_regular_pattern(a, b, rng);
    std::vector<std::size_t> labels(a * b);
    for (std::size_t i = 0; i < a; ++i) {
        std::vector<std::size_t> cols;
        for (std::size_t j = 0; j < a; ++j)
            if (M[i][j]) cols.push_back(j);
        std::shuffle(cols.begin(), cols.end(), rng);
        for (std::size_t t = 0; t < b; ++t) labels[i * b + t] = cols[t];
    }
    return SetPartition::from_labels(labels);
}

SetPartition random_partition(std::size_t a, std::size_t b, std::mt19937_64& rng)
{
    std::vector<std::size_t> labels(a * b);
    for (std::size_t x = 0; x < labels.size(); ++x) labels[x] = x / b;
    std::shuffle(labels.begin(), labels.end(), rng);
    return SetPartition::from_labels(labels);
}

/// Seeded search for a base of size k (rows, a transversal partner when
/// a >= b, then random partitions).
std::optional<std::vector<SetPartition>> random_base_search(std::size_t a, std::size_t b, std::size_t k, Parity parity,
                                                           const SearchOptions& opt, std::size_t& trials)
{
    std::mt19937_64 rng(opt.seed);
    for (trials = 1; trials <= opt.budget; ++trials) {
        std::vector<SetPartition> parts{row_partition(a, b)};
        parts.push_back(transversal_partner(a, b, rng));
        while (parts.size() < k) parts.push_back(random_partition(a, b, rng));
        if (trivial_in(parts, parity)) return parts;
    }
    trials = opt.budget;
    return std::nullopt;
}

}  // namespace

PairSearchResult random_pair_search(std::size_t a, std::size_t b, Parity parity, const SearchOptions& opt)
{
    check_shape(a, b);
    PairSearchResult r;
    r.witness = random_base_search(a, b, 2, parity, opt, r.trials);
    return r;
}

BaseSizeResult base_size_partitions(std::size_t a, std::size_t b, BaseMode mode, Parity parity, const SearchOptions& opt)
{
    check_shape(a, b);
    BaseSizeResult res;
    const std::size_t n = a * b;
    const PermGroup first = partition_stabilizer({row_partition(a, b)}, parity);
    if (first.is_trivial()) throw Error("internal: a single partition has trivial stabilizer");

    if (mode == BaseMode::exact && n <= 12) {
        PartitionSpace space(a, b);
        for (std::size_t k = 2;; ++k) {
            std::vector<SetPartition> tuple{row_partition(a, b)};
            if (extend_to_base(space, tuple, first, k, parity)) {
                res.value = k;
                res.exact = true;
                res.witness = tuple;
                res.method = "orbit-representative exhaustion";
                return res;
            }
        }
    }

    // a pair is optimal whenever it exists
    if (b >= 3) {
        auto pair = random_pair_search(a, b, parity, opt);
        res.trials = pair.trials;
        if (pair.witness) {
            res.value = 2;
            res.exact = true;
            res.witness = *pair.witness;
            res.method = "randomized pair search";
            return res;
        }
    }
    if (mode == BaseMode::exact)
        throw PreconditionError("exact mode needs n = ab <= 12 unless a base of size 2 is found");

    auto base = construct_theorem2_base(a, b, opt);
    res.value = base.partitions.size();
    res.witness = base.partitions;
    res.method = base.construction;
    res.trials += base.trials;
    if (parity == Parity::even && res.value > 3) {
        std::size_t trials = 0;
        if (auto w = random_base_search(a, b, 3, parity, opt, trials)) {
            res.value = 3;
            res.witness = *w;
            res.method = "seeded search";
        }
        res.trials += trials;
    }
    return res;
}

Theorem2Base construct_theorem2_base(std::size_t a, std::size_t b, const SearchOptions& opt)
{
    check_shape(a, b);
    static std::mutex cache_mutex;
    static std::map<std::tuple<std::size_t, std::size_t, std::uint64_t>, Theorem2Base> cache;
    {
        std::lock_guard lock(cache_mutex);
        if (auto it = cache.find({a, b, opt.seed}); it != cache.end()) return it->second;
    }

    Theorem2Base out;
    if (b >= 3 && a >= std::max<std::size_t>(8, b + 3)) {
        auto pair = random_pair_search(a, b, Parity::all, opt);
        out.trials = pair.trials;
        if (!pair.witness) throw BudgetError("pair search exhausted its budget without finding a base");
        out.partitions = *pair.witness;
        out.construction = "randomized pair search";
    } else if (a == b + 2 && b >= 3) {
        out.partitions = construct_bcd_plus2(a).as_list();
        out.construction = "plus2";
    } else if (a == b + 1 && a >= 5) {
        out.partitions = construct_bcd_plus1(a).as_list();
        out.construction = "plus1";
    } else if (a == b && a >= 6) {
        out.partitions = construct_bcd_equal(a).as_list();
        out.construction = "equal";
    } else {
        const std::size_t k = expected_base_size(a, b, Parity::all);
        auto found = random_base_search(a, b, k, Parity::all, opt, out.trials);
        if (!found) throw BudgetError("seeded search exhausted its budget without finding a base");
        out.partitions = *found;
        out.construction = "seeded search";
    }

    PermGroup S = partition_stabilizer(out.partitions, Parity::all);
    if (!S.is_trivial() && out.construction != "seeded search") {
        // the explicit triple is not a base here (plus2 at a = 6); search instead
        const std::size_t k = expected_base_size(a, b, Parity::all);
        auto found = random_base_search(a, b, k, Parity::all, opt, out.trials);
        if (!found) throw BudgetError("seeded search exhausted its budget without finding a base");
        out.partitions = *found;
        out.construction = "seeded search (" + out.construction + " triple has stabilizer order " + S.order().str() + ")";
        S = partition_stabilizer(out.partitions, Parity::all);
    }
    out.stabilizer_order = S.order();
    if (!S.is_trivial()) throw Error("construction for (" + std::to_string(a) + "," + std::to_string(b) +
                                     ") failed certification: stabilizer order " + S.order().str());
    std::lock_guard lock(cache_mutex);
    cache.emplace(std::make_tuple(a, b, opt.seed), out);
    return out;
}

}  // namespace minbase
