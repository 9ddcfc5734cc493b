#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "grpdb/perm_group.hpp"
#include "grpdb/permutation.hpp"

/// Generator lists for standard families of finite groups. Every function returns
/// permutations of a common degree; feed them to PermGroup::generate.
namespace grpdb::families {

using Generators = std::vector<Permutation>;

Generators cyclic(std::size_t n);
/// Dihedral group of order 2n acting on n points (n >= 3); n = 1, 2 give C2 and C2^2.
Generators dihedral(std::size_t n);
Generators symmetric(std::size_t n);
Generators alternating(std::size_t n);
Generators elementary_abelian(std::size_t p, std::size_t rank);
/// Direct product of cyclic groups with the given orders.
Generators abelian(const std::vector<std::size_t>& orders);
Generators direct_product(const Generators& a, const Generators& b);

/// Right-regular representation of an abstract group on {0..order-1} given its
/// multiplication and a generating set of element ids.
Generators regular_from_table(std::size_t order, const std::function<std::size_t(std::size_t, std::size_t)>& mul,
                              const std::vector<std::size_t>& generators);

/// Right-regular representation of an enumerated permutation group (degree |G|).
Generators regular(const PermGroup& group);

/// Extension <a, b | a^m, b^n = a^t, b a b^-1 = a^r>, realized regularly on m*n points.
/// Requires r^n = 1 and t*(r-1) = 0 modulo m.
Generators metacyclic(std::size_t m, std::size_t n, std::size_t r, std::size_t t = 0);

/// Dicyclic group of order 4n; dicyclic(2) is Q8.
Generators dicyclic(std::size_t n);
/// Generalized quaternion group of order 2^k (k >= 3).
Generators quaternion(std::size_t order);

/// x -> a*x + b over F_p with a in the subgroup of order `q` of F_p^*; q = p-1 gives AGL(1,p).
Generators affine(std::size_t p, std::size_t q);
/// AGL(1,8) = C2^3 x| C7 on the 8 field elements.
Generators agl1_8();
/// Matrix groups acting on the nonzero vectors of F_p^dim.
Generators special_linear(std::size_t dim, std::size_t p);
Generators general_linear(std::size_t dim, std::size_t p);

/// One corpus entry: an optional small-group id "N.i" and a display name.
struct NamedGroup {
  std::optional<std::string> id;
  std::string name;
  Generators generators;
};

/// The built-in corpus: pairwise non-isomorphic groups of order at most 200 drawn from the
/// families above, with small-group ids where they are well known.
std::vector<NamedGroup> standard_corpus();

/// Small reference groups used to name subgroup isomorphism types.
std::vector<NamedGroup> reference_groups();

}  // namespace grpdb::families
