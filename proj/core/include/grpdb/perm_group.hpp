#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string_view>
#include <span>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "grpdb/element_set.hpp"
#include "grpdb/permutation.hpp"

namespace grpdb {

inline constexpr std::size_t kDefaultElementCap = 200000;

/// Groups up to this order keep a full multiplication table.
inline constexpr std::size_t kMultiplicationTableLimit = 2048;

/// A finite permutation group with its materialized element list.
///
/// Elements are stored in increasing lexicographic order of their image tuples, which is
/// the order of their Lehmer-code ranks; element index 0 is always the identity. The
/// object is immutable after construction and safe to share across threads.
class PermGroup {
 public:
  /// Closes `generators` under composition. Throws BudgetExceeded once more than `cap`
  /// elements are found and StructuralError for an empty or mixed-degree generator list.
  static PermGroup generate(std::vector<Permutation> generators, std::size_t cap = kDefaultElementCap);

  std::size_t degree() const noexcept { return degree_; }
  std::size_t order() const noexcept { return elements_.size(); }
  const std::vector<Permutation>& generators() const noexcept { return generators_; }
  std::span<const Permutation> elements() const noexcept { return elements_; }
  const Permutation& element(Elt e) const { return elements_[e]; }

  /// Indices of the generators, in generator order.
  const std::vector<Elt>& generator_indices() const noexcept { return generator_indices_; }

  std::optional<Elt> find(const Permutation& p) const;
  /// Throws MembershipError when `p` is not an element.
  Elt index_of(const Permutation& p) const;

  static constexpr Elt identity() { return 0; }
  Elt mul(Elt a, Elt b) const;
  Elt inv(Elt a) const { return inverses_[a]; }
  Elt pow(Elt a, long long k) const;
  /// `b^-1 a b`.
  Elt conj(Elt a, Elt b) const { return mul(mul(inv(b), a), b); }
  Elt commutator(Elt a, Elt b) const { return mul(mul(inv(a), inv(b)), mul(a, b)); }
  std::uint32_t element_order(Elt a) const { return orders_[a]; }

  /// lcm of element orders.
  std::uint64_t exponent() const noexcept { return exponent_; }

  ElementSet full_set() const;
  ElementSet trivial_set() const;

  /// Canonical text of degree and generators; the pseudo-random seed hashes this.
  std::string canonical_serialization() const;

 private:
  PermGroup() = default;

  std::size_t degree_ = 0;
  std::vector<Permutation> generators_;
  std::vector<Elt> generator_indices_;
  std::vector<Permutation> elements_;
  std::vector<Elt> inverses_;
  std::vector<std::uint32_t> orders_;
  std::vector<Elt> table_;  // row-major, empty above kMultiplicationTableLimit
  std::uint64_t exponent_ = 1;
};

/// Lexicographic rank of `p`'s image tuple among all permutations of its degree.
boost::multiprecision::cpp_int lehmer_rank(const Permutation& p);

/// Lehmer rank of `g`; throws MembershipError when `g` is not in `group`.
boost::multiprecision::cpp_int element_rank(const PermGroup& group, const Permutation& g);

/// Closure of `gens` (element indices) inside `group`, as an element set.
ElementSet generate_subgroup(const PermGroup& group, std::span<const Elt> gens);

/// Closure of `base` (a subgroup) together with `extra`, adding whole cosets at a time.
ElementSet extend_subgroup(const PermGroup& group, const ElementSet& base, std::span<const Elt> base_gens, Elt extra);

/// Deterministic pseudo-random elements by a product-replacement walk.
///
/// The walk keeps ten slots seeded cyclically from the generators and an accumulator
/// starting at the identity. A splitmix64 stream seeded with the FNV-1a hash of
/// `canonical_serialization()` drives it. Each step picks slots i != j, replaces slot i
/// by `slot_i * slot_j^{+-1}` (operand side also drawn), then sets the accumulator to
/// `accumulator * slot_i`. Fifty steps are discarded; each later step emits the accumulator.
class PseudoRandomStream {
 public:
  explicit PseudoRandomStream(const PermGroup& group);
  Elt next();

 private:
  std::uint64_t draw();

  const PermGroup* group_;
  std::uint64_t state_;
  std::vector<Elt> slots_;
  Elt accumulator_;
};

std::vector<Elt> pseudo_random_elements(const PermGroup& group, std::size_t count);

/// All elements of `set` in a deterministic pseudo-random order: sorted by a keyed
/// splitmix64 hash of the element index, keyed by the group's serialization hash.
std::vector<Elt> pseudo_random_order(const PermGroup& group, const ElementSet& set);

std::uint64_t fnv1a64(std::string_view bytes);
std::uint64_t splitmix64(std::uint64_t x);

}  // namespace grpdb
