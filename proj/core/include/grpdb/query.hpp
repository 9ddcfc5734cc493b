#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "grpdb/error.hpp"
#include "grpdb/perm_group.hpp"

namespace grpdb {

class Store;

/// The query names something this store cannot evaluate (HTTP 422).
class UnsupportedQuery : public Error {
 public:
  using Error::Error;
};

struct IntPredicate {
  enum class Op { eq, lt, le, gt, ge, range };
  Op op = Op::eq;
  std::int64_t lo = 0;
  std::int64_t hi = 0;  // range only

  bool matches(std::int64_t v) const;
  std::string str() const;
  friend bool operator==(const IntPredicate&, const IntPredicate&) = default;
};

struct SubgroupPredicate {
  std::optional<std::string> iso;
  std::optional<bool> normal;
  std::optional<bool> abelian;
  std::optional<bool> cyclic;
  std::optional<bool> maximal;
  std::optional<IntPredicate> index;
  std::optional<IntPredicate> order;

  std::string str() const;
};

/// A conjunction of predicates. Flags are keyed by abelian, cyclic, nilpotent, solvable,
/// simple and perfect.
struct QueryAST {
  std::optional<IntPredicate> order;
  std::optional<IntPredicate> exponent;
  std::optional<IntPredicate> nilpotency_class;
  std::optional<IntPredicate> derived_length;
  std::optional<IntPredicate> class_count;
  std::optional<std::vector<int>> factors;  // exponent multiset, largest first
  std::map<std::string, bool> flags;
  std::optional<std::vector<std::uint64_t>> abelianization;  // invariant factors
  std::vector<SubgroupPredicate> subgroups;

  /// Canonical text; parse_query(q.str()) gives back the same AST.
  std::string str() const;
};

inline const std::vector<std::string>& query_flags() {
  static const std::vector<std::string> flags{"abelian", "cyclic", "nilpotent", "solvable", "simple", "perfect"};
  return flags;
}

/// Throws ParseError (line 1) pointing at the offending column.
QueryAST parse_query(std::string_view text);

/// Invariant factors d1 | d2 | ... of the abelian group with the given cyclic factors.
std::vector<std::uint64_t> invariant_factors(const std::vector<std::uint64_t>& cyclic_orders);

/// A group for an isomorphism-type name: a stored label, an abelian name such as
/// `C2^2xC4`, or a reference group name such as `A4`. Throws UnsupportedQuery.
PermGroup resolve_iso(const Store& store, const std::string& name);

struct QueryResult {
  std::vector<std::string> labels;  // matches ordered by (order, label)
  std::vector<std::string> unknown;  // records the query could not be decided on
};

QueryResult run_query(const Store& store, const QueryAST& ast);

}  // namespace grpdb
