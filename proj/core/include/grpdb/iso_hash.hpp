#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "grpdb/perm_group.hpp"
#include "grpdb/structure.hpp"

namespace grpdb {

/// Bumped whenever the hashed invariant list or the mixer changes.
inline constexpr std::uint64_t kHashVersion = 1;

/// Class sizes of G/Z(G) enter the hash only up to this order.
inline constexpr std::size_t kHashQuotientBudget = 4096;

inline constexpr std::size_t kIsomorphismBudget = 512;

struct GroupHash {
  std::uint64_t value = 0;
  std::vector<std::uint64_t> invariant_trace;

  /// 16 lowercase hex digits.
  std::string hex() const;
};

/// Polynomial rolling mix: h = 0xcbf29ce484222325; h = h * 0x100000001b3 + t + 1 (mod 2^64)
/// for every token t, then h = h * 0x100000001b3 + n for the token count n, then the
/// splitmix64 finalizer.
std::uint64_t mix_tokens(std::span<const std::uint64_t> tokens);

GroupHash group_hash(const PermGroup& group, const ClassPartition& classes);
GroupHash group_hash(const PermGroup& group);

/// Sorted class sizes of G/Z(G).
std::vector<std::uint64_t> central_quotient_class_sizes(const PermGroup& group, const ClassPartition& classes);

enum class IsoStatus { isomorphic, not_isomorphic, inconclusive };

std::string to_string(IsoStatus status);

struct IsoResult {
  IsoStatus status = IsoStatus::inconclusive;
  std::vector<Elt> source_generators;  // generating tuple of the first group
  std::vector<Elt> images;             // their images in the second group, when isomorphic
  std::string reason;

  explicit operator bool() const { return status == IsoStatus::isomorphic; }
};

IsoResult is_isomorphic(const PermGroup& a, const PermGroup& b, std::size_t budget = kIsomorphismBudget);

struct IsoClass {
  std::size_t representative;        // smallest input position in the class
  std::vector<std::size_t> members;  // increasing input positions
  std::uint64_t hash;
  bool unresolved = false;           // some comparison was inconclusive
};

/// Partition by isomorphism type, in order of representatives.
std::vector<IsoClass> dedupe(const std::vector<const PermGroup*>& groups, std::size_t budget = kIsomorphismBudget);

}  // namespace grpdb
