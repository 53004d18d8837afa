#include "minbase/partition_bases.hpp"

#include "minbase/errors.hpp"

#include <algorithm>
#include <numeric>

namespace minbase {

namespace {

/// Point/block incidence graph. Vertices 0..n-1 are points; block vertices
/// follow, coloured by the index of their partition.
class IncidenceGraph {
public:
    explicit IncidenceGraph(const std::vector<SetPartition>& parts) : parts_(parts)
    {
        n_ = parts.front().ground_size();
        std::size_t v = n_;
        for (const auto& P : parts) v += P.block_count();
        adj_.resize(v);
        initial_.assign(v, 0);
        std::size_t next = n_;
        for (std::size_t p = 0; p < parts.size(); ++p)
            for (const auto& blk : parts[p].blocks()) {
                initial_[next] = static_cast<std::uint32_t>(p + 1);
                for (auto x : blk) {
                    adj_[x].push_back(static_cast<std::uint32_t>(next));
                    adj_[next].push_back(x);
                }
                ++next;
            }
    }

    std::size_t points() const { return n_; }
    std::size_t vertices() const { return adj_.size(); }
    const std::vector<std::uint32_t>& initial() const { return initial_; }

    struct Refined {
        std::vector<std::uint32_t> colour;
        std::uint64_t trace = 0;
    };

    /// Colour refinement to the coarsest equitable colouring. New colours are
    /// ranks of (old colour, sorted neighbour colours), so the result depends
    /// only on the input colouring up to relabelling of the graph.
    Refined refine(std::vector<std::uint32_t> colour) const
    {
        const std::size_t V = vertices();
        std::size_t classes = count_classes(colour);
        std::vector<std::vector<std::uint32_t>> sig(V);
        std::vector<std::uint32_t> order(V);
        std::uint64_t trace = 1469598103934665603ull;
        while (true) {
            for (std::size_t v = 0; v < V; ++v) {
                auto& s = sig[v];
                s.clear();
                s.push_back(colour[v]);
                for (auto u : adj_[v]) s.push_back(colour[u]);
                std::sort(s.begin() + 1, s.end());
            }
            std::iota(order.begin(), order.end(), 0u);
            std::sort(order.begin(), order.end(), [&](std::uint32_t x, std::uint32_t y) { return sig[x] < sig[y]; });
            std::uint32_t rank = 0;
            std::vector<std::uint32_t> next(V);
            for (std::size_t k = 0; k < V; ++k) {
                if (k > 0 && sig[order[k]] != sig[order[k - 1]]) {
                    ++rank;
                    trace = mix(trace, sig[order[k - 1]]);
                }
                next[order[k]] = rank;
            }
            trace = mix(trace, sig[order[V - 1]]);
            const std::size_t now = static_cast<std::size_t>(rank) + 1;
            colour = std::move(next);
            if (now == classes) break;
            classes = now;
        }
        return {std::move(colour), trace};
    }

    /// Gives v a colour of its own and refines.
    Refined individualize(const std::vector<std::uint32_t>& colour, std::uint32_t v) const
    {
        std::vector<std::uint32_t> c(colour.size());
        for (std::size_t u = 0; u < c.size(); ++u) c[u] = 2 * colour[u] + (u == v ? 0 : 1);
        return refine(std::move(c));
    }

    /// Smallest non-singleton colour class among the points, lowest colour on
    /// ties; empty when the points are discrete.
    std::vector<std::uint32_t> target_cell(const std::vector<std::uint32_t>& colour) const
    {
        std::vector<std::uint32_t> size(vertices(), 0);
        for (std::size_t x = 0; x < n_; ++x) ++size[colour[x]];
        std::uint32_t best = 0, best_size = 0;
        for (std::uint32_t c = 0; c < size.size(); ++c)
            if (size[c] > 1 && (best_size == 0 || size[c] < best_size)) {
                best = c;
                best_size = size[c];
            }
        std::vector<std::uint32_t> cell;
        if (best_size == 0) return cell;
        for (std::size_t x = 0; x < n_; ++x)
            if (colour[x] == best) cell.push_back(static_cast<std::uint32_t>(x));
        return cell;
    }

    /// The point map sending the leaf `from` to the leaf `to`, if it maps
    /// every partition onto itself.
    std::optional<Permutation> leaf_map(const std::vector<std::uint32_t>& from, const std::vector<std::uint32_t>& to) const
    {
        std::vector<Point> by_colour(vertices());
        for (std::size_t x = 0; x < n_; ++x) by_colour[to[x]] = static_cast<Point>(x);
        std::vector<Point> img(n_);
        for (std::size_t x = 0; x < n_; ++x) img[x] = by_colour[from[x]];
        Permutation g(img);
        for (const auto& P : parts_)
            if (!P.is_fixed_by(g)) return std::nullopt;
        return g;
    }

private:
    static std::size_t count_classes(const std::vector<std::uint32_t>& c)
    {
        std::vector<std::uint32_t> s(c);
        std::sort(s.begin(), s.end());
        return static_cast<std::size_t>(std::unique(s.begin(), s.end()) - s.begin());
    }

    static std::uint64_t mix(std::uint64_t h, const std::vector<std::uint32_t>& s)
    {
        for (auto x : s) h = (h ^ (x + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2))) * 1099511628211ull;
        return (h ^ 0xff) * 1099511628211ull;
    }

    const std::vector<SetPartition>& parts_;
    std::size_t n_ = 0;
    std::vector<std::vector<std::uint32_t>> adj_;
    std::vector<std::uint32_t> initial_;
};

class UnionFind {
public:
    explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), std::size_t{0}); }
    std::size_t find(std::size_t x)
    {
        while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
        return x;
    }
    void unite(std::size_t a, std::size_t b)
    {
        a = find(a);
        b = find(b);
        if (a != b) parent_[std::max(a, b)] = std::min(a, b);
    }

private:
    std::vector<std::size_t> parent_;
};

class AutomorphismSearch {
public:
    explicit AutomorphismSearch(const IncidenceGraph& g) : g_(g) {}

    std::vector<Permutation> run()
    {
        // first path, always taking the smallest point of the target cell
        auto node = g_.refine(g_.initial());
        path_.push_back(node.colour);
        traces_.push_back(node.trace);
        while (true) {
            auto cell = g_.target_cell(path_.back());
            if (cell.empty()) break;
            cells_.push_back(cell);
            node = g_.individualize(path_.back(), cell.front());
            path_.push_back(node.colour);
            traces_.push_back(node.trace);
        }
        first_leaf_ = path_.back();

        // deepest level first: extend generators of the prefix stabilizers
        for (std::size_t lvl = cells_.size(); lvl-- > 0;) {
            const auto& cell = cells_[lvl];
            const std::uint32_t v = cell.front();
            std::vector<std::uint32_t> failed;
            for (std::size_t k = 1; k < cell.size(); ++k) {
                const std::uint32_t w = cell[k];
                UnionFind orbits = current_orbits();
                if (orbits.find(w) == orbits.find(v)) continue;
                bool known_bad = false;
                for (auto f : failed) known_bad = known_bad || orbits.find(f) == orbits.find(w);
                if (known_bad) continue;
                auto child = g_.individualize(path_[lvl], w);
                std::optional<Permutation> found;
                if (child.trace == traces_[lvl + 1]) found = explore(child.colour, lvl + 1);
                if (found)
                    gens_.push_back(*found);
                else
                    failed.push_back(w);
            }
        }
        return gens_;
    }

private:
    UnionFind current_orbits() const
    {
        UnionFind uf(g_.points());
        for (const auto& s : gens_)
            for (std::size_t x = 0; x < g_.points(); ++x) uf.unite(x, s[static_cast<Point>(x)]);
        return uf;
    }

    std::optional<Permutation> explore(const std::vector<std::uint32_t>& colour, std::size_t depth)
    {
        auto cell = g_.target_cell(colour);
        if (cell.empty()) return g_.leaf_map(first_leaf_, colour);
        if (depth >= cells_.size() || cell.size() != cells_[depth].size()) return std::nullopt;
        for (auto u : cell) {
            auto child = g_.individualize(colour, u);
            if (child.trace != traces_[depth + 1]) continue;
            if (auto found = explore(child.colour, depth + 1)) return found;
        }
        return std::nullopt;
    }

    const IncidenceGraph& g_;
    std::vector<std::vector<std::uint32_t>> path_;
    std::vector<std::uint64_t> traces_;
    std::vector<std::vector<std::uint32_t>> cells_;
    std::vector<std::uint32_t> first_leaf_;
    std::vector<Permutation> gens_;
};

}  // namespace

PermGroup partition_stabilizer(const std::vector<SetPartition>& partitions, Parity parity)
{
    if (partitions.empty()) throw PreconditionError("partition_stabilizer needs at least one partition");
    const std::size_t n = partitions.front().ground_size();
    for (const auto& P : partitions)
        if (P.ground_size() != n) throw PreconditionError("partitions have different ground sizes");

    IncidenceGraph graph(partitions);
    AutomorphismSearch search(graph);
    PermGroup G(n, search.run());
    return parity == Parity::even ? G.even_part() : G;
}

}  // namespace minbase
