#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "grpdb/element_set.hpp"
#include "grpdb/perm_group.hpp"

namespace grpdb {

struct ConjugacyClass {
  Elt representative;         // the member of minimal rank
  std::size_t size;
  std::uint32_t element_order;
  std::vector<Elt> members;   // increasing

  bool operator==(const ConjugacyClass&) const = default;
};

/// Conjugacy classes sorted by representative index, plus the element-to-class map.
struct ClassPartition {
  std::vector<ConjugacyClass> classes;
  std::vector<std::size_t> class_of;  // indexed by element

  std::size_t count() const { return classes.size(); }
};

ClassPartition conjugacy_classes(const PermGroup& group);

/// Class index of g^p for each class. Throws DomainError unless `p` is a prime dividing |G|.
std::vector<std::size_t> power_map(const PermGroup& group, const ClassPartition& classes, std::uint64_t p);

/// Class index of g^k for each class, for any integer k.
std::vector<std::size_t> power_classes(const PermGroup& group, const ClassPartition& classes, long long k);

ElementSet centralizer(const PermGroup& group, Elt g);
ElementSet normalizer(const PermGroup& group, const ElementSet& subgroup);
ElementSet center(const PermGroup& group);

/// Smallest normal subgroup of the ambient group containing `seeds`, conjugating by
/// `conjugators` (which must generate the group the closure is normal in).
ElementSet normal_closure(const PermGroup& group, const std::vector<Elt>& seeds, const std::vector<Elt>& conjugators);

/// A small generating set of a subgroup, greedily taking elements in increasing index
/// order of decreasing element order.
std::vector<Elt> subgroup_generators(const PermGroup& group, const ElementSet& subgroup);

/// [H, K] for subgroups H, K with K normalizing H (so the commutators normally generate
/// inside the join). Pass generators of each.
ElementSet commutator_subgroup(const PermGroup& group, const std::vector<Elt>& h_gens, const std::vector<Elt>& k_gens,
                               const std::vector<Elt>& ambient_gens);

ElementSet derived_subgroup(const PermGroup& group);

enum class SeriesKind { derived, lower_central, upper_central };

std::string to_string(SeriesKind kind);

struct SeriesRecord {
  SeriesKind kind;
  std::vector<ElementSet> terms;  // descending for derived/lower_central, ascending for upper_central

  std::vector<std::size_t> orders() const;
};

SeriesRecord series(const PermGroup& group, SeriesKind kind);

bool is_normal(const PermGroup& group, const ElementSet& subgroup);
bool is_subgroup(const PermGroup& group, const ElementSet& set);

struct BooleanAttributes {
  bool abelian = false;
  bool cyclic = false;
  bool nilpotent = false;
  bool solvable = false;
  bool simple = false;
  bool perfect = false;
  bool elementary_abelian = false;

  bool operator==(const BooleanAttributes&) const = default;
};

BooleanAttributes boolean_attributes(const PermGroup& group, const ClassPartition& classes);

/// Invariant factors d1 | d2 | ... of G/[G,G]; empty for a perfect group.
std::vector<std::uint64_t> abelianization_invariants(const PermGroup& group);

/// Invariant factors of an abelian subgroup (empty for the trivial group).
std::vector<std::uint64_t> abelian_invariants(const PermGroup& group, const ElementSet& subgroup);

/// Prime factorisation of n as (prime, exponent) pairs in increasing prime order.
std::vector<std::pair<std::uint64_t, int>> factorize(std::uint64_t n);

bool is_prime_power(std::uint64_t n);

}  // namespace grpdb
