#pragma once

#include "minbase/subgroup_lattice.hpp"

#include <optional>
#include <string>
#include <vector>

namespace minbase {

struct AlphaCertificate {
    std::size_t value = 0;
    /// maximal subgroups whose intersection is Frat(G)
    std::vector<SubgroupRecord> witness;
    /// true when every smaller family was ruled out
    bool proved_minimal = false;
    /// distinct intersection subgroups visited
    std::size_t states = 0;
};

/// Intersection number: the least number of maximal subgroups meeting in
/// Frat(G). Breadth-first over distinct intersections; the first subgroup is
/// taken up to conjugacy.
AlphaCertificate alpha(const SubgroupLattice& L);

struct BaseSizeCertificate {
    std::size_t value = 0;
    /// g_1 = 1, g_2, ..., g_k with H^{g_1} n ... n H^{g_k} = core(H)
    std::vector<ElementId> conjugators;
    SubgroupRecord core;
};

/// b(G, H) for the action on the cosets of a maximal subgroup H.
BaseSizeCertificate base_size_subgroup(const SubgroupLattice& L, const SubgroupRecord& H);

struct BetaCertificate {
    /// empty means infinity (no maximal subgroup has core Frat(G))
    std::optional<std::size_t> value;
    std::optional<SubgroupRecord> chosen;
    std::vector<ElementId> conjugators;
    /// class representatives of maximal subgroups with core equal to Frat(G)
    std::vector<SubgroupRecord> mstar_representatives;
    /// b(G, H) per entry of mstar_representatives
    std::vector<std::size_t> base_sizes;
};

BetaCertificate beta(const SubgroupLattice& L);

struct Theorem3Report {
    std::size_t alpha = 0, lambda = 0, delta = 0;
    bool derived_nilpotent = false;
    bool alpha_le_lambda = false;
    /// only asserted when the derived subgroup is nilpotent
    std::optional<bool> alpha_le_delta;
    bool pass = false;
};

/// Checks alpha <= lambda, and alpha <= delta when G' is nilpotent.
Theorem3Report check_theorem3(const SubgroupLattice& L);

struct AbelianClass {
    std::size_t p = 0;
    std::size_t dimension = 0;      // over F_p
    std::size_t end_degree = 0;     // dim over F_p of End_G(A)
    std::size_t dim_over_end = 0;   // dimension / end_degree
    std::size_t delta = 0;          // non-Frattini chief factors in the class
};

struct NonAbelianClass {
    std::size_t order = 0;
    std::size_t n = 0;  // number of simple direct factors
    std::size_t delta = 0;
};

struct Theorem4Report {
    std::vector<AbelianClass> abelian;
    std::vector<NonAbelianClass> non_abelian;
    std::size_t bound = 0;
    /// sum over abelian classes of (delta + 3), reported for soluble G
    std::optional<std::size_t> soluble_bound;
    std::size_t alpha = 0;
    bool pass = false;
};

/// Upper bound on alpha from the non-Frattini chief factors,
/// grouped into G-equivalence classes.
Theorem4Report theorem4_bound(const SubgroupLattice& L);

/// The lattice's lower central series reaches 1.
bool derived_subgroup_is_nilpotent(const SubgroupLattice& L);

}  // namespace minbase
