#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "grpdb/deadline.hpp"
#include "grpdb/element_set.hpp"
#include "grpdb/perm_group.hpp"
#include "grpdb/structure.hpp"

namespace grpdb {

inline constexpr std::size_t kDefaultSubgroupBudget = 2000;

struct Subgroup {
  ElementSet elements;
  std::vector<Elt> generators;

  std::size_t order() const { return elements.size(); }
};

struct SubgroupEnumeration {
  /// Sorted by (order, element set); each subgroup appears once.
  std::vector<Subgroup> subgroups;
  /// False when the budget cut enumeration short; `subgroups` then holds only the
  /// normal closures of classes, series terms, the center and one Sylow subgroup per prime.
  bool complete = true;
  std::string partial_reason;

  std::optional<std::size_t> find(const ElementSet& s) const;

  std::unordered_map<ElementSet, std::size_t, ElementSetHash> index;
};

/// Every subgroup, seeded with the cyclic subgroups and closed under joins with them.
SubgroupEnumeration all_subgroups(const PermGroup& group, std::size_t budget = kDefaultSubgroupBudget,
                                  const Deadline& deadline = {});

/// A Sylow p-subgroup grown inside successive normalizers.
ElementSet sylow_subgroup(const PermGroup& group, std::uint64_t p);

/// Image of a subgroup under conjugation by `g` (g^-1 H g).
ElementSet conjugate_subgroup(const PermGroup& group, const ElementSet& subgroup, Elt g);

struct SubgroupClass {
  std::size_t representative;        // subgroup index with minimal element set
  std::vector<std::size_t> members;  // subgroup indices, increasing
  std::size_t order;
  bool normal;
};

struct SubgroupPartition {
  std::vector<SubgroupClass> classes;  // sorted by (order, representative element set)
  std::vector<std::size_t> class_of;   // indexed by subgroup
};

/// Orbits of the subgroup list under conjugation.
SubgroupPartition conjugacy_classes_of_subgroups(const PermGroup& group, const SubgroupEnumeration& subs);

/// Componentwise `upper >= lower`.
bool dominates(const std::vector<std::uint32_t>& upper, const std::vector<std::uint32_t>& lower);

struct LatticeEdge {
  std::size_t lower;  // class index
  std::size_t upper;

  bool operator==(const LatticeEdge&) const = default;
  auto operator<=>(const LatticeEdge&) const = default;
};

struct InclusionResult {
  std::vector<LatticeEdge> edges;  // Hasse diagram, sorted
  /// contained[a][b]: some conjugate of class a's representative lies in class b's.
  std::vector<std::vector<bool>> contained;
  std::size_t candidate_pairs = 0;   // passed the divisibility + dominance prefilter
  std::size_t confirmed_pairs = 0;
};

/// Hasse diagram of the class poset. `vectors[c]` is the class-intersection count vector
/// of class c; pairs failing dominance or order divisibility are never tested directly.
InclusionResult inclusion_edges(const PermGroup& group, const SubgroupEnumeration& subs,
                                const SubgroupPartition& classes, const std::vector<std::vector<std::uint32_t>>& vectors);

/// Containment between classes by testing every conjugate, without any prefilter.
std::vector<std::vector<bool>> brute_force_containment(const PermGroup& group, const SubgroupEnumeration& subs,
                                                       const SubgroupPartition& classes);

struct SpecialSubgroups {
  ElementSet frattini;
  ElementSet fitting;
  ElementSet socle;
  std::vector<std::size_t> maximal_classes;          // class indices
  std::map<std::uint64_t, std::size_t> sylow_class;  // prime -> class index
};

SpecialSubgroups special_subgroups(const PermGroup& group, const SubgroupEnumeration& subs,
                                   const SubgroupPartition& classes, const InclusionResult& inclusion);

/// Fitting subgroup from cores of Sylow subgroups; needs no lattice.
ElementSet fitting_from_sylows(const PermGroup& group);

/// Core of a subgroup: intersection of its conjugates.
ElementSet core(const PermGroup& group, const ElementSet& subgroup);

/// Permutation group generated by the subgroup's generators, for hashing and naming.
PermGroup subgroup_as_group(const PermGroup& group, const Subgroup& subgroup);

}  // namespace grpdb
