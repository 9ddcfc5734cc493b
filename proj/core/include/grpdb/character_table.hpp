#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "grpdb/cyclotomic.hpp"
#include "grpdb/labeling.hpp"
#include "grpdb/perm_group.hpp"
#include "grpdb/structure.hpp"

namespace grpdb {

inline constexpr std::size_t kCharacterBudget = 512;

/// A character value as the multiset of eigenvalues of the representing matrix:
/// `(l, m)` means zeta_e^l occurs m times, e = group exponent. Sorted by l.
using EigenMultiset = std::vector<std::pair<std::uint32_t, std::uint32_t>>;

/// Irreducible characters as computed, before labeling. Rows are in discovery order and
/// columns are class ids.
struct RawCharacterTable {
  std::uint64_t exponent = 1;
  std::uint64_t prime = 0;  // modulus used for the Dixon-Schneider splitting
  std::vector<std::uint64_t> degrees;
  std::vector<std::vector<EigenMultiset>> eigen;  // [row][class]
  std::vector<std::vector<Cyclotomic>> values;    // [row][class]
};

/// Dixon-Schneider over F_p, p the smallest prime = 1 mod exponent above 2*ceil(sqrt|G|)*|G|.
/// Every table is checked against first orthogonality before it is returned.
/// Throws BudgetExceeded above `budget`.
RawCharacterTable character_table(const PermGroup& group, const ClassPartition& classes,
                                  std::size_t budget = kCharacterBudget);

/// Exact check of the first orthogonality relation.
bool rows_orthonormal(const PermGroup& group, const ClassPartition& classes, const RawCharacterTable& table);

/// Exact check of the second orthogonality relation.
bool columns_orthogonal(const PermGroup& group, const ClassPartition& classes, const RawCharacterTable& table);

enum class Indicator { real = 1, complex = 0, quaternionic = -1 };

std::string to_string(Indicator indicator);

Indicator frobenius_schur(const PermGroup& group, const ClassPartition& classes, const RawCharacterTable& table,
                          std::size_t row);

struct RationalTable {
  std::vector<std::vector<std::size_t>> orbits;  // complex rows per Galois orbit, by first row
  std::vector<std::vector<long long>> rows;      // per orbit, value on each division (label order)
  std::vector<std::vector<long long>> class_values;  // per orbit, value on each class id
};

/// Galois orbits (conductor-coprime power substitutions on columns) and their sums.
RationalTable rational_table(const PermGroup& group, const ClassPartition& classes, const ClassLabeling& labels,
                             const RawCharacterTable& table);

/// A coset action G on G/H given by its permutation character.
struct CosetAction {
  std::uint64_t degree = 0;                 // index of H
  std::vector<long long> character;         // indexed by class label position
};

/// Permutation characters of the coset actions on each subgroup class, from Gassmann vectors.
std::vector<CosetAction> coset_actions(const PermGroup& group, const ClassPartition& classes,
                                       const ClassLabeling& labels, const std::vector<GassmannVector>& vectors,
                                       const std::vector<std::size_t>& subgroup_orders);

/// Smallest index whose coset action contains `values` (class values of a rational
/// character, by class id), with the lexicographically least such permutation character.
std::optional<CosetAction> smallest_containing_perm_rep(const PermGroup& group, const ClassPartition& classes,
                                                        const ClassLabeling& labels,
                                                        const std::vector<CosetAction>& actions,
                                                        const std::vector<long long>& values);

/// The labeled table in display order.
struct CharacterTable {
  std::vector<std::string> class_labels;            // columns, label order
  std::vector<std::size_t> class_ids;               // matching class ids
  std::vector<std::vector<Cyclotomic>> complex_rows;
  std::vector<std::uint64_t> degrees;
  std::vector<Indicator> indicators;
  std::vector<std::string> complex_labels;
  std::vector<std::size_t> rational_of;             // complex row -> rational row
  std::vector<std::vector<long long>> rational_rows;  // over divisions, label order
  std::vector<std::string> division_labels;
  std::vector<std::string> rational_labels;
  std::vector<std::vector<std::size_t>> galois_orbits;  // rational row -> complex rows
  std::vector<std::optional<CosetAction>> perm_reps;    // per rational row
  std::map<std::uint64_t, std::vector<std::size_t>> power_maps;  // prime -> column positions
  bool perm_reps_available = false;
  std::uint64_t exponent = 1;
  std::uint64_t prime = 0;
};

/// Sorts rational characters by (degree, orbit size, smallest containing degree,
/// permutation character, values) and complex characters within an orbit by value vectors.
/// `actions` may be empty when the lattice is incomplete; labels then skip the middle keys.
CharacterTable label_characters(const std::string& ambient, const PermGroup& group, const ClassPartition& classes,
                                const ClassLabeling& labels, const RawCharacterTable& raw,
                                const std::optional<std::vector<CosetAction>>& actions);

/// Lexicographic order of complex numbers by real part, then imaginary part; exact ties only
/// for equal cyclotomics.
bool value_less(const Cyclotomic& a, const Cyclotomic& b);

}  // namespace grpdb
