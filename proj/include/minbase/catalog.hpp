#pragma once

#include "minbase/perm_group.hpp"

#include <string>
#include <vector>

namespace minbase {

/// Builders for the named groups used by tests and the command line.
namespace groups {

PermGroup symmetric(std::size_t n);
PermGroup alternating(std::size_t n);
PermGroup cyclic(std::size_t n);
/// Dihedral group of order 2n on n points.
PermGroup dihedral(std::size_t n);
/// Dicyclic group of order 4n in its regular representation (n=2 gives Q8).
PermGroup dicyclic(std::size_t n);
/// C_p^k acting regularly on p^k points.
PermGroup elementary_abelian(std::size_t p, std::size_t k);
/// Frobenius group C_p : C_k, x -> x+1 and x -> r x with r of order k mod p.
PermGroup frobenius(std::size_t p, std::size_t k);
/// S_b wr S_a acting on a*b points (the stabilizer of the row partition).
PermGroup wreath(std::size_t b, std::size_t a);
/// SL(2,3) in its regular representation (degree 24).
PermGroup sl23();
/// GL(2,3) acting on the 8 nonzero vectors of F_3^2.
PermGroup gl23();
/// PSL(2,7) and PGL(2,7) on the projective line over F_7.
PermGroup psl27();
PermGroup pgl27();
/// Right regular representation of G on its own elements.
PermGroup regular(const PermGroup& G, std::size_t cap = 5000);
/// Direct product acting on the disjoint union of the two point sets.
PermGroup direct_product(const PermGroup& A, const PermGroup& B);

}  // namespace groups

/// Parses a group descriptor.
///
///   Sn, An, Cn        symmetric, alternating, cyclic
///   D2n               dihedral of order 2n (D8 has order 8)
///   Q8, Q4n           quaternion / dicyclic of order 4n
///   Cp^k              elementary abelian
///   Frob(p,k)         Frobenius group C_p : C_k
///   wr(b,a)           S_b wr S_a inside S_ab
///   SL23 GL23 L27 PGL27
///   XxY               direct product, e.g. C2xD8
///
/// Anything else is read as a path to a group file. Unknown names are errors.
PermGroup parse_group_spec(const std::string& descriptor);

struct CatalogEntry {
    std::string name;
    std::string family;  // "soluble" or "almost_simple"
    bool nilpotent = false;
};

/// Groups exercised by the soluble and almost simple checks.
const std::vector<CatalogEntry>& catalog();

}  // namespace minbase
