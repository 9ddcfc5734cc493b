#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "grpdb/deadline.hpp"
#include "grpdb/perm_group.hpp"
#include "grpdb/structure.hpp"
#include "grpdb/subgroup_lattice.hpp"

namespace grpdb {

inline constexpr std::size_t kAutomorphismOrderBudget = 512;
inline constexpr std::size_t kHolomorphOrderBudget = 64;

/// Backtracking search for isomorphisms `src -> dst` given by images of a fixed
/// generating tuple of `src`. Partial assignments are checked by walking the Cayley graph
/// of the subgroup generated so far, which rejects non-homomorphic or non-injective maps.
class IsomorphismSearch {
 public:
  /// `candidates[i]` lists admissible images for `src_gens[i]`.
  IsomorphismSearch(const PermGroup& src, std::vector<Elt> src_gens, const PermGroup& dst,
                    std::vector<std::vector<Elt>> candidates, std::size_t node_budget = 50'000'000);

  /// True when the images of the first `images.size()` generators define an injective
  /// homomorphism on the subgroup they generate.
  bool consistent(const std::vector<Elt>& images);

  /// Extends `prefix` to images of every generator, or returns nothing. Throws
  /// BudgetExceeded when the node budget runs out.
  std::optional<std::vector<Elt>> complete(std::vector<Elt> prefix);

  /// Full element map (indexed by src element) for a complete consistent assignment.
  std::vector<Elt> element_map(const std::vector<Elt>& images);

  const std::vector<Elt>& source_generators() const noexcept { return src_gens_; }

 private:
  bool descend(std::vector<Elt>& images);

  const PermGroup* src_;
  const PermGroup* dst_;
  std::vector<Elt> src_gens_;
  std::vector<std::vector<Elt>> candidates_;
  std::size_t budget_;
  std::vector<Elt> map_;
  std::vector<std::uint32_t> used_;
  std::vector<std::uint32_t> mapped_;
  std::uint32_t stamp_ = 0;
  std::vector<Elt> queue_;
};

struct Automorphism {
  std::vector<Elt> images;  // images of AutomorphismGroup::base
  std::vector<Elt> map;     // indexed by element

  Elt operator()(Elt g) const { return map[g]; }
};

struct AutomorphismGroup {
  std::vector<Elt> base;  // generating tuple of G
  std::vector<Automorphism> generators;
  std::vector<Automorphism> outer_generators;  // the generators that are not inner
  boost::multiprecision::cpp_int order;
  boost::multiprecision::cpp_int inner_order;

  boost::multiprecision::cpp_int outer_order() const { return order / inner_order; }
};

/// Generators and order of Aut(G) by orbit-stabilizer search over images of a small
/// generating set. Throws BudgetExceeded above `order_budget` or on timeout.
AutomorphismGroup automorphism_group(const PermGroup& group, const ClassPartition& classes,
                                     std::size_t order_budget = kAutomorphismOrderBudget,
                                     const Deadline& deadline = {});

bool is_inner(const PermGroup& group, const std::vector<Elt>& base, const Automorphism& a);

ElementSet apply(const Automorphism& a, const ElementSet& subgroup);

/// Orbit id of each conjugacy class of elements under Aut(G); ids number orbits by first class.
std::vector<std::size_t> automorphism_class_orbits(const PermGroup& group, const ClassPartition& classes,
                                                   const AutomorphismGroup& aut);

/// Orbit id of each subgroup conjugacy class under Aut(G), numbered by first class.
std::vector<std::size_t> autjugacy_classes(const SubgroupEnumeration& subs, const SubgroupPartition& classes,
                                           const AutomorphismGroup& aut);

/// Generators of Hol(G) = G : Aut(G) acting on the |G| elements: right translations by
/// the generators of G and the generators of Aut(G).
std::vector<Permutation> holomorph_generators(const PermGroup& group, const AutomorphismGroup& aut);

/// Subgroup classes merged by conjugation inside the holomorph, which normalises the
/// regular copy of G. Numbered like autjugacy_classes. Throws BudgetExceeded above
/// kHolomorphOrderBudget.
std::vector<std::size_t> holomorph_subgroup_classes(const PermGroup& group, const SubgroupEnumeration& subs,
                                                    const SubgroupPartition& classes, const AutomorphismGroup& aut);

}  // namespace grpdb
