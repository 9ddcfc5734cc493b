#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "grpdb/perm_group.hpp"
#include "grpdb/structure.hpp"
#include "grpdb/subgroup_lattice.hpp"

namespace grpdb {

/// Spreadsheet column code: 0 -> a, 25 -> z, 26 -> aa, ...
std::string letter_code(std::size_t n, bool upper = false);
/// Inverse of letter_code; nothing for an empty or mixed-case string.
std::optional<std::size_t> parse_letter_code(std::string_view code);

struct Division {
  std::string label;                 // e.g. "4A"
  std::vector<std::size_t> classes;  // class ids in class-label order
  bool maximal = false;
  Elt representative = 0;
  std::uint32_t element_order = 1;
  std::size_t class_size = 1;
};

struct ClassLabeling {
  std::vector<Division> divisions;           // label order
  std::vector<std::size_t> ordered_classes;  // class ids in label order
  std::vector<std::string> class_label;      // indexed by class id
  std::vector<std::size_t> position;         // class id -> index in ordered_classes
  std::vector<std::size_t> division_of;      // class id -> index in divisions
};

/// Classes grouped by conjugacy up to coprime powers. Maximal divisions get the first
/// pseudo-random element lying in them as representative; order is unspecified.
std::vector<Division> compute_divisions(const PermGroup& group, const ClassPartition& classes);

/// Sorts maximal divisions by (element order, class size, class count, representative
/// rank) and places the others by powering the maximal representatives; assigns labels.
std::vector<Division> order_divisions(const PermGroup& group, const ClassPartition& classes,
                                      std::vector<Division> divisions);

/// Class labels within one ordered division, walking g, g^-1, g^2, g^-2, ...
/// Returns (class id, label) in label order.
std::vector<std::pair<std::size_t, std::string>> label_classes(const PermGroup& group, const ClassPartition& classes,
                                                               const Division& division);

ClassLabeling label_conjugacy_classes(const PermGroup& group, const ClassPartition& classes);

using GassmannVector = std::vector<std::uint32_t>;

/// |H ∩ C| for each class C in label order.
GassmannVector gassmann_vector(const PermGroup& group, const ElementSet& subgroup, const ClassPartition& classes,
                               const ClassLabeling& labels);

/// Sums a Gassmann vector over orbits of Aut(G) on classes. `class_orbit` maps class id to
/// orbit id; orbits are indexed by their first class in label order.
GassmannVector merge_over_orbits(const GassmannVector& v, const ClassLabeling& labels,
                                 const std::vector<std::size_t>& class_orbit);

struct AutomorphismData {
  std::vector<std::size_t> class_orbit;     // element class id -> Aut(G) orbit id
  std::vector<std::size_t> subgroup_class;  // subgroup class -> autjugacy class id
};

struct SubgroupLabeling {
  std::vector<std::string> conj_label;      // per subgroup class
  std::vector<std::string> aut_label;       // per subgroup class; empty without automorphism data
  std::vector<std::size_t> order;           // subgroup classes in label order
  std::vector<GassmannVector> vectors;      // per subgroup class
  bool fallback = false;
  std::string failure;                      // why fallback codes were emitted
};

/// Gassmann-scheme labels `N.i.m.a.c`. Fallback letter codes are used when the lattice is
/// partial, automorphism data is missing, or a tie survives every criterion.
SubgroupLabeling label_subgroups(const std::string& ambient, const PermGroup& group, const ClassPartition& classes,
                                 const ClassLabeling& class_labels, const SubgroupEnumeration& subs,
                                 const SubgroupPartition& subgroup_classes,
                                 const std::optional<AutomorphismData>& aut);

struct SubgroupLabel {
  std::string ambient;  // "N.i"
  std::uint64_t index = 0;
  std::string aut_part;                  // "a1"; empty for fallback codes
  std::optional<std::string> conj_part;  // "a1"
  std::optional<std::string> fallback;   // capitals: conjugacy, lowercase: automorphism

  std::string str() const;
  bool is_conjugacy_label() const;
};

/// Throws ParseError for strings outside the label grammar.
SubgroupLabel parse_subgroup_label(std::string_view text);

}  // namespace grpdb
