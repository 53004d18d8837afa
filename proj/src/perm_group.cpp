#include "minbase/perm_group.hpp"

#include "minbase/errors.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_map>

namespace minbase {

PermGroup::PermGroup(std::size_t degree) : degree_(degree) {}

PermGroup::PermGroup(std::size_t degree, std::vector<Permutation> generators)
    : degree_(degree), generators_(std::move(generators))
{
    for (const auto& g : generators_)
        if (g.degree() != degree_) throw PreconditionError("generator degree mismatch");
    build();
}

std::vector<Point> PermGroup::base() const
{
    std::vector<Point> b;
    b.reserve(chain_.size());
    for (const auto& level : chain_) b.push_back(level.point);
    return b;
}

void PermGroup::rebuild_orbit(ChainLevel& level) const
{
    level.orbit.assign(1, level.point);
    level.orbit_index.assign(degree_, -1);
    level.orbit_index[level.point] = 0;
    level.transversal.assign(1, Permutation(degree_));
    for (std::size_t k = 0; k < level.orbit.size(); ++k) {
        const Point b = level.orbit[k];
        for (const auto& s : level.generators) {
            const Point c = s[b];
            if (level.orbit_index[c] >= 0) continue;
            level.orbit_index[c] = static_cast<std::int32_t>(level.orbit.size());
            level.orbit.push_back(c);
            level.transversal.push_back(level.transversal[k] * s);
        }
    }
}

PermGroup::SiftResult PermGroup::sift(Permutation g, std::size_t start) const
{
    for (std::size_t j = start; j < chain_.size(); ++j) {
        const auto& level = chain_[j];
        const Point b = g[level.point];
        const auto k = level.orbit_index[b];
        if (k < 0) return {std::move(g), j};
        g *= level.transversal[static_cast<std::size_t>(k)].inverse();
    }
    return {std::move(g), chain_.size()};
}

void PermGroup::build()
{
    chain_.clear();
    // Initial base: every non-identity generator must move some base point.
    for (const auto& g : generators_) {
        if (g.is_identity()) continue;
        bool moves_base = false;
        for (const auto& level : chain_)
            if (g[level.point] != level.point) {
                moves_base = true;
                break;
            }
        if (!moves_base) {
            ChainLevel level;
            level.point = g.first_moved();
            chain_.push_back(std::move(level));
        }
    }
    for (std::size_t j = 0; j < chain_.size(); ++j) {
        for (const auto& g : generators_) {
            if (g.is_identity()) continue;
            bool fixes_prefix = true;
            for (std::size_t l = 0; l < j; ++l)
                if (g[chain_[l].point] != chain_[l].point) {
                    fixes_prefix = false;
                    break;
                }
            if (fixes_prefix) chain_[j].generators.push_back(g);
        }
        rebuild_orbit(chain_[j]);
    }

    std::size_t i = chain_.size();
    while (i > 0) {
        const std::size_t lvl = i - 1;
        bool restarted = false;
        for (std::size_t k = 0; k < chain_[lvl].orbit.size() && !restarted; ++k) {
            const Point b = chain_[lvl].orbit[k];
            for (std::size_t s = 0; s < chain_[lvl].generators.size(); ++s) {
                const auto& level = chain_[lvl];
                const Permutation& gen = level.generators[s];
                const Point c = gen[b];
                Permutation ub_s = level.transversal[k] * gen;
                const auto& uc = level.transversal[static_cast<std::size_t>(level.orbit_index[c])];
                if (ub_s == uc) continue;
                Permutation schreier = ub_s * uc.inverse();
                auto [h, j] = sift(std::move(schreier), lvl + 1);
                if (j == chain_.size() && h.is_identity()) continue;
                if (j == chain_.size()) {
                    ChainLevel fresh;
                    fresh.point = h.first_moved();
                    chain_.push_back(std::move(fresh));
                }
                for (std::size_t l = lvl + 1; l <= j; ++l) {
                    chain_[l].generators.push_back(h);
                    rebuild_orbit(chain_[l]);
                }
                i = j + 1;
                restarted = true;
                break;
            }
        }
        if (!restarted) --i;
    }

    order_ = 1;
    for (const auto& level : chain_) order_ *= level.orbit.size();
}

bool PermGroup::contains(const Permutation& g) const
{
    if (g.degree() != degree_) throw PreconditionError("degree mismatch in membership test");
    auto [h, j] = sift(g, 0);
    return j == chain_.size() && h.is_identity();
}

std::vector<Permutation> PermGroup::elements(std::size_t cap) const
{
    if (order_ > cap) throw BudgetError("group order " + order_.str() + " exceeds element cap " + std::to_string(cap));
    std::vector<Permutation> result{Permutation(degree_)};
    // Elements are products u_k * ... * u_1 with u_l from the level-l transversal.
    for (auto it = chain_.rbegin(); it != chain_.rend(); ++it) {
        std::vector<Permutation> next;
        next.reserve(result.size() * it->transversal.size());
        for (const auto& x : result)
            for (const auto& u : it->transversal) next.push_back(x * u);
        result = std::move(next);
    }
    return result;
}

std::vector<Point> PermGroup::orbit(Point p) const
{
    std::vector<Point> orb{p};
    std::vector<bool> seen(degree_, false);
    seen[p] = true;
    for (std::size_t k = 0; k < orb.size(); ++k)
        for (const auto& g : generators_) {
            const Point c = g[orb[k]];
            if (!seen[c]) {
                seen[c] = true;
                orb.push_back(c);
            }
        }
    return orb;
}

bool PermGroup::is_transitive() const
{
    return degree_ == 0 || orbit(0).size() == degree_;
}

PermGroup PermGroup::even_part() const
{
    // Schreier generators for the index-2 subgroup, transversal {1, t}.
    const Permutation* odd = nullptr;
    for (const auto& g : generators_)
        if (!g.is_even()) {
            odd = &g;
            break;
        }
    if (!odd) return *this;
    const Permutation t = *odd;
    const Permutation t_inv = t.inverse();
    std::vector<Permutation> gens;
    for (const auto& s : generators_) {
        if (s.is_even()) {
            gens.push_back(s);
            gens.push_back(t * s * t_inv);
        } else {
            gens.push_back(s * t_inv);
            gens.push_back(t * s);
        }
    }
    std::erase_if(gens, [](const Permutation& g) { return g.is_identity(); });
    std::sort(gens.begin(), gens.end());
    gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
    return PermGroup(degree_, std::move(gens));
}

PermGroup PermGroup::conjugate(const Permutation& g) const
{
    if (g.degree() != degree_) throw PreconditionError("degree mismatch in conjugation");
    std::vector<Permutation> gens;
    gens.reserve(generators_.size());
    for (const auto& h : generators_) gens.push_back(h.conjugate_by(g));
    return PermGroup(degree_, std::move(gens));
}

namespace {

Permutation least_in_coset(const std::vector<Permutation>& h_elements, const Permutation& x)
{
    Permutation best = h_elements.front() * x;
    for (std::size_t i = 1; i < h_elements.size(); ++i) {
        Permutation c = h_elements[i] * x;
        if (c < best) best = std::move(c);
    }
    return best;
}

}  // namespace

CosetAction coset_action(const PermGroup& G, const PermGroup& H, std::size_t cap)
{
    if (G.degree() != H.degree()) throw PreconditionError("degree mismatch in coset action");
    for (const auto& h : H.generators())
        if (!G.contains(h)) throw PreconditionError("H is not a subgroup of G");
    if (G.order() > cap) throw BudgetError("group order exceeds coset-action cap");

    const auto h_elements = H.elements(cap);
    const std::size_t index = static_cast<std::size_t>(G.order() / H.order());

    CosetAction result;
    std::unordered_map<Permutation, Point, PermutationHash> lookup;
    result.representatives.push_back(Permutation(G.degree()));
    lookup.emplace(result.representatives.front(), 0);
    std::vector<std::vector<Point>> images(G.generators().size());
    for (std::size_t k = 0; k < result.representatives.size(); ++k) {
        for (std::size_t s = 0; s < G.generators().size(); ++s) {
            Permutation rep = least_in_coset(h_elements, result.representatives[k] * G.generators()[s]);
            auto [it, inserted] = lookup.emplace(rep, static_cast<Point>(result.representatives.size()));
            if (inserted) result.representatives.push_back(std::move(rep));
            images[s].push_back(it->second);
        }
    }
    if (result.representatives.size() != index) throw Error("coset enumeration did not close");
    std::vector<Permutation> gens;
    for (auto& img : images) gens.emplace_back(std::move(img));
    result.image = PermGroup(index, std::move(gens));
    return result;
}

PermGroup parse_group_file(const std::string& text)
{
    std::istringstream in(text);
    std::string line;
    std::size_t degree = 0;
    bool have_degree = false;
    std::vector<Permutation> gens;
    while (std::getline(in, line)) {
        auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        if (!have_degree) {
            std::istringstream header(line.substr(first));
            std::string word;
            header >> word >> degree;
            if (word != "degree" || !header) throw PreconditionError("group file must start with 'degree n'");
            have_degree = true;
            continue;
        }
        gens.push_back(parse_permutation(line, degree));
    }
    if (!have_degree) throw PreconditionError("group file must start with 'degree n'");
    return PermGroup(degree, std::move(gens));
}

std::string format_group_file(const PermGroup& G)
{
    std::ostringstream out;
    out << "degree " << G.degree() << '\n';
    for (const auto& g : G.generators()) out << g.to_cycle_string() << '\n';
    return out.str();
}

}  // namespace minbase
