#pragma once

#include <chrono>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "grpdb/perm_group.hpp"
#include "grpdb/structure.hpp"

namespace grpdb {

/// Per-stage limits. Size budgets make omissions reproducible; the wall-clock budget is a
/// last resort and is generous by default.
struct Budgets {
  std::size_t element_cap = kDefaultElementCap;
  std::size_t subgroup_budget = 2000;
  std::size_t automorphism_budget = 512;  // largest |G| for the automorphism search
  std::size_t character_budget = 512;
  std::size_t chain_budget = 100000;
  std::chrono::milliseconds stage_time{120000};
};

enum class StageState { complete, omitted, unsupported, failed };
std::string to_string(StageState state);
StageState stage_state_from_string(const std::string& text);

struct StageStatus {
  std::string stage;
  StageState state = StageState::complete;
  std::string reason;
};

struct ClassRecord {
  std::string label;
  std::string division;
  std::uint32_t order = 1;
  std::uint64_t size = 1;
  std::uint64_t centralizer_order = 1;
  std::string representative;  // cycle notation
  std::map<std::uint64_t, std::string> powers;  // prime -> label of the class of g^p
};

struct SubgroupClassRecord {
  std::string label;      // conjugacy-class label (or a fallback code)
  std::string aut_label;  // empty when not available
  std::uint64_t order = 1;
  std::uint64_t index = 1;
  std::uint64_t count = 1;  // conjugates
  bool normal = false;
  bool maximal = false;
  bool abelian = false;
  bool cyclic = false;
  std::string hash;
  std::string iso;  // name of the isomorphism type when recognized
  std::vector<std::string> generators;
  std::vector<std::uint32_t> gassmann;
  std::vector<std::uint64_t> sylow_for;
};

struct LatticeRecord {
  bool complete = true;
  std::string partial_reason;
  std::uint64_t subgroup_count = 0;
  bool fallback_labels = false;
  std::string label_failure;
  std::vector<SubgroupClassRecord> classes;  // label order
  std::vector<std::pair<std::string, std::string>> edges;  // (lower, upper) labels of the Hasse diagram
  std::map<std::string, std::string> special;  // "frattini", "fitting", "socle", "center", "derived" -> label
};

struct CharacterRecord {
  std::string label;
  std::uint64_t degree = 1;
  int indicator = 1;
  std::string rational;  // label of the rational character containing it
  std::vector<std::string> values;  // by column
};

struct RationalCharacterRecord {
  std::string label;
  std::uint64_t degree = 1;
  std::vector<long long> values;  // by division
  std::vector<std::string> constituents;
  std::optional<std::uint64_t> perm_degree;
};

struct CharacterTableRecord {
  std::vector<std::string> class_labels;
  std::vector<std::string> division_labels;
  std::vector<std::vector<std::string>> division_classes;
  std::vector<CharacterRecord> characters;
  std::vector<RationalCharacterRecord> rational;
  std::map<std::uint64_t, std::vector<std::string>> power_maps;  // prime -> image labels by column
};

struct PresentationRecord {
  std::string display;
  std::string method;
  std::vector<std::string> generators;  // cycle notation
  std::vector<std::uint64_t> relative_orders;
  std::vector<std::vector<std::uint32_t>> power_relations;
  std::vector<std::vector<std::vector<std::uint32_t>>> conjugation_relations;
};

struct AliasRecord {
  std::string source;  // label or name given at ingest
  std::size_t degree = 0;
  std::vector<std::string> generators;
};

struct GroupRecord {
  std::string label;
  std::string name;
  std::size_t degree = 0;
  std::vector<std::string> generators;
  std::uint64_t order = 1;
  std::uint64_t exponent = 1;
  std::string hash;
  std::vector<AliasRecord> aliases;
  bool computed = false;

  // Filled by compute_all.
  BooleanAttributes attributes;
  std::vector<std::uint64_t> abelianization;
  std::optional<std::uint32_t> nilpotency_class;  // empty when not nilpotent
  std::optional<std::uint32_t> derived_length;    // empty when not solvable
  std::size_t class_count = 0;
  std::uint64_t center_order = 1;
  std::map<std::string, std::vector<std::uint64_t>> series;  // kind -> term orders
  std::optional<std::string> aut_order;                      // decimal
  std::optional<std::string> outer_order;
  std::vector<StageStatus> stages;
  std::vector<ClassRecord> classes;  // label order
  std::optional<LatticeRecord> lattice;
  std::optional<CharacterTableRecord> characters;
  std::optional<PresentationRecord> presentation;

  const StageStatus* stage(const std::string& name) const;
  bool stage_complete(const std::string& name) const;
};

PermGroup group_from_cycles(std::size_t degree, const std::vector<std::string>& cycles,
                            std::size_t cap = kDefaultElementCap);
PermGroup group_of(const GroupRecord& record);

/// A stub: order, exponent, hash and generators only.
GroupRecord make_stub(const std::string& label, const std::string& name, const PermGroup& group);

/// Runs every stage in dependency order: core, lattice, automorphisms, labels,
/// characters, presentation. Omitted stages are recorded, never thrown.
GroupRecord compute_all(GroupRecord stub, const Budgets& budgets = {});

/// Name of a small group by its invariants: abelian groups by invariant factors, others
/// by matching a reference group. Empty when unrecognized.
std::string identify_group(const PermGroup& group);

}  // namespace grpdb
