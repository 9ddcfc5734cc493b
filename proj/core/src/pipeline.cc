#include "grpdb/pipeline.hpp"

#include <algorithm>

#include "grpdb/automorphisms.hpp"
#include "grpdb/character_table.hpp"
#include "grpdb/deadline.hpp"
#include "grpdb/error.hpp"
#include "grpdb/families.hpp"
#include "grpdb/iso_hash.hpp"
#include "grpdb/labeling.hpp"
#include "grpdb/pc_presentation.hpp"
#include "grpdb/subgroup_lattice.hpp"

namespace grpdb {

std::string to_string(StageState state) {
  switch (state) {
    case StageState::complete: return "complete";
    case StageState::omitted: return "omitted";
    case StageState::unsupported: return "unsupported";
    case StageState::failed: return "failed";
  }
  return "failed";
}

StageState stage_state_from_string(const std::string& text) {
  if (text == "complete") return StageState::complete;
  if (text == "omitted") return StageState::omitted;
  if (text == "unsupported") return StageState::unsupported;
  if (text == "failed") return StageState::failed;
  throw ParseError("unknown stage state '" + text + "'", 1, 1);
}

const StageStatus* GroupRecord::stage(const std::string& name) const {
  for (const auto& s : stages)
    if (s.stage == name) return &s;
  return nullptr;
}

bool GroupRecord::stage_complete(const std::string& name) const {
  const StageStatus* s = stage(name);
  return s && s->state == StageState::complete;
}

PermGroup group_from_cycles(std::size_t degree, const std::vector<std::string>& cycles, std::size_t cap) {
  std::vector<Permutation> gens;
  for (const auto& c : cycles) gens.push_back(Permutation::parse_cycles(c, degree));
  if (gens.empty()) gens.push_back(Permutation::identity(degree));
  return PermGroup::generate(std::move(gens), cap);
}

PermGroup group_of(const GroupRecord& record) { return group_from_cycles(record.degree, record.generators); }

GroupRecord make_stub(const std::string& label, const std::string& name, const PermGroup& group) {
  GroupRecord r;
  r.label = label;
  r.name = name;
  r.degree = group.degree();
  for (const auto& g : group.generators()) r.generators.push_back(g.cycles());
  r.order = group.order();
  r.exponent = group.exponent();
  r.hash = group_hash(group).hex();
  return r;
}

namespace {

std::string abelian_name(const std::vector<std::uint64_t>& invariants) {
  if (invariants.empty()) return "C1";
  std::string out;
  for (std::size_t i = 0; i < invariants.size();) {
    std::size_t j = i;
    while (j < invariants.size() && invariants[j] == invariants[i]) ++j;
    if (!out.empty()) out += "x";
    out += "C" + std::to_string(invariants[i]);
    if (j - i > 1) out += "^" + std::to_string(j - i);
    i = j;
  }
  return out;
}

struct Reference {
  std::string name;
  std::uint64_t hash;
  PermGroup group;
};

const std::vector<Reference>& references() {
  static const std::vector<Reference> refs = [] {
    std::vector<Reference> out;
    for (auto& g : families::reference_groups()) {
      PermGroup group = PermGroup::generate(g.generators);
      const std::uint64_t h = group_hash(group).value;
      out.push_back({g.name, h, std::move(group)});
    }
    return out;
  }();
  return refs;
}

bool commutative(const PermGroup& group) {
  const auto& gens = group.generator_indices();
  for (Elt a : gens)
    for (Elt b : gens)
      if (group.mul(a, b) != group.mul(b, a)) return false;
  return true;
}

std::string identify(const PermGroup& group, std::uint64_t hash) {
  if (commutative(group)) return abelian_name(abelian_invariants(group, group.full_set()));
  for (const auto& ref : references()) {
    if (ref.hash != hash || ref.group.order() != group.order()) continue;
    if (is_isomorphic(group, ref.group).status == IsoStatus::isomorphic) return ref.name;
  }
  return "";
}

void set_stage(GroupRecord& r, const std::string& stage, StageState state, std::string reason = {}) {
  for (auto& s : r.stages)
    if (s.stage == stage) {
      s.state = state;
      s.reason = std::move(reason);
      return;
    }
  r.stages.push_back({stage, state, std::move(reason)});
}

std::vector<std::string> cycles_of(const PermGroup& group, const std::vector<Elt>& elts) {
  std::vector<std::string> out;
  for (Elt e : elts) out.push_back(group.element(e).cycles());
  return out;
}

}  // namespace

std::string identify_group(const PermGroup& group) { return identify(group, group_hash(group).value); }

GroupRecord compute_all(GroupRecord r, const Budgets& budgets) {
  r.stages.clear();
  r.classes.clear();
  r.lattice.reset();
  r.characters.reset();
  r.presentation.reset();
  r.aut_order.reset();
  r.outer_order.reset();
  r.computed = true;

  const PermGroup group = group_from_cycles(r.degree, r.generators, budgets.element_cap);
  const std::size_t n = group.order();
  r.order = n;
  r.exponent = group.exponent();
  r.hash = group_hash(group).hex();

  // Core invariants; everything later depends on these.
  const ClassPartition classes = conjugacy_classes(group);
  const ClassLabeling class_labels = label_conjugacy_classes(group, classes);
  r.attributes = boolean_attributes(group, classes);
  r.abelianization = abelianization_invariants(group);
  r.class_count = classes.count();
  const ElementSet z = center(group);
  r.center_order = z.size();
  std::map<SeriesKind, SeriesRecord> series_terms;
  for (SeriesKind kind : {SeriesKind::derived, SeriesKind::lower_central, SeriesKind::upper_central}) {
    series_terms.emplace(kind, series(group, kind));
    const auto orders = series_terms.at(kind).orders();
    r.series[to_string(kind)] = std::vector<std::uint64_t>(orders.begin(), orders.end());
  }
  const auto& lower = series_terms.at(SeriesKind::lower_central).terms;
  r.nilpotency_class.reset();
  if (lower.back().size() == 1) r.nilpotency_class = static_cast<std::uint32_t>(lower.size() - 1);
  const auto& derived = series_terms.at(SeriesKind::derived).terms;
  r.derived_length.reset();
  if (derived.back().size() == 1) r.derived_length = static_cast<std::uint32_t>(derived.size() - 1);

  std::vector<std::uint64_t> primes;
  for (auto [p, e] : factorize(n)) primes.push_back(p);
  std::map<std::uint64_t, std::vector<std::size_t>> power_maps;
  for (auto p : primes) power_maps[p] = power_map(group, classes, p);
  for (std::size_t c : class_labels.ordered_classes) {
    const ConjugacyClass& cc = classes.classes[c];
    ClassRecord rec;
    rec.label = class_labels.class_label[c];
    rec.division = class_labels.divisions[class_labels.division_of[c]].label;
    rec.order = cc.element_order;
    rec.size = cc.size;
    rec.centralizer_order = n / cc.size;
    rec.representative = group.element(cc.representative).cycles();
    for (auto p : primes) rec.powers[p] = class_labels.class_label[power_maps[p][c]];
    r.classes.push_back(std::move(rec));
  }
  set_stage(r, "core", StageState::complete);

  // Subgroup lattice.
  SubgroupEnumeration subs;
  SubgroupPartition subgroup_classes;
  std::optional<InclusionResult> inclusion;
  std::optional<SpecialSubgroups> special;
  bool have_lattice = false;
  try {
    subs = all_subgroups(group, budgets.subgroup_budget, Deadline(budgets.stage_time));
    subgroup_classes = conjugacy_classes_of_subgroups(group, subs);
    have_lattice = true;
    if (subs.complete) {
      std::vector<std::vector<std::uint32_t>> vectors;
      for (const auto& c : subgroup_classes.classes)
        vectors.push_back(gassmann_vector(group, subs.subgroups[c.representative].elements, classes, class_labels));
      inclusion = inclusion_edges(group, subs, subgroup_classes, vectors);
      special = special_subgroups(group, subs, subgroup_classes, *inclusion);
      set_stage(r, "lattice", StageState::complete);
    } else {
      set_stage(r, "lattice", StageState::omitted, subs.partial_reason);
    }
  } catch (const BudgetExceeded& e) {
    set_stage(r, "lattice", StageState::omitted, e.what());
  }

  // Automorphisms.
  std::optional<AutomorphismData> aut_data;
  if (n > budgets.automorphism_budget) {
    set_stage(r, "automorphisms", StageState::omitted,
              "order exceeds automorphism budget " + std::to_string(budgets.automorphism_budget));
  } else {
    try {
      const AutomorphismGroup aut = automorphism_group(group, classes, budgets.automorphism_budget, Deadline(budgets.stage_time));
      r.aut_order = aut.order.str();
      r.outer_order = aut.outer_order().str();
      if (have_lattice)
        aut_data = AutomorphismData{automorphism_class_orbits(group, classes, aut),
                                    autjugacy_classes(subs, subgroup_classes, aut)};
      set_stage(r, "automorphisms", StageState::complete);
    } catch (const BudgetExceeded& e) {
      set_stage(r, "automorphisms", StageState::omitted, e.what());
    }
  }

  // Subgroup labels.
  std::optional<SubgroupLabeling> sub_labels;
  if (have_lattice) {
    sub_labels = label_subgroups(r.label, group, classes, class_labels, subs, subgroup_classes, aut_data);
    LatticeRecord lat;
    lat.complete = subs.complete;
    lat.partial_reason = subs.partial_reason;
    lat.subgroup_count = subs.subgroups.size();
    lat.fallback_labels = sub_labels->fallback;
    lat.label_failure = sub_labels->failure;
    std::vector<bool> maximal(subgroup_classes.classes.size(), false);
    if (special)
      for (std::size_t c : special->maximal_classes) maximal[c] = true;
    std::map<std::size_t, std::vector<std::uint64_t>> sylow_for;
    if (special)
      for (auto [p, c] : special->sylow_class) sylow_for[c].push_back(p);
    for (std::size_t c : sub_labels->order) {
      const SubgroupClass& sc = subgroup_classes.classes[c];
      const Subgroup& rep = subs.subgroups[sc.representative];
      SubgroupClassRecord rec;
      rec.label = sub_labels->conj_label[c];
      if (!sub_labels->aut_label.empty()) rec.aut_label = sub_labels->aut_label[c];
      rec.order = sc.order;
      rec.index = n / sc.order;
      rec.count = sc.members.size();
      rec.normal = sc.normal;
      rec.maximal = maximal[c];
      const PermGroup sub = subgroup_as_group(group, rep);
      rec.abelian = commutative(sub);
      rec.cyclic = false;
      for (Elt e = 0; e < sub.order() && !rec.cyclic; ++e) rec.cyclic = sub.element_order(e) == sub.order();
      const GroupHash h = group_hash(sub);
      rec.hash = h.hex();
      rec.iso = identify(sub, h.value);
      rec.generators = cycles_of(group, rep.generators);
      rec.gassmann = sub_labels->vectors[c];
      if (auto it = sylow_for.find(c); it != sylow_for.end()) rec.sylow_for = it->second;
      lat.classes.push_back(std::move(rec));
    }
    if (inclusion)
      for (const auto& e : inclusion->edges)
        lat.edges.emplace_back(sub_labels->conj_label[e.lower], sub_labels->conj_label[e.upper]);
    std::sort(lat.edges.begin(), lat.edges.end());
    auto label_of = [&](const ElementSet& s) -> std::optional<std::string> {
      if (auto idx = subs.find(s)) return sub_labels->conj_label[subgroup_classes.class_of[*idx]];
      return std::nullopt;
    };
    std::vector<std::pair<std::string, ElementSet>> named{{"center", z}, {"derived", derived.size() > 1 ? derived[1] : derived[0]}};
    if (special) {
      named.emplace_back("frattini", special->frattini);
      named.emplace_back("fitting", special->fitting);
      named.emplace_back("socle", special->socle);
    }
    for (const auto& [name, set] : named)
      if (auto l = label_of(set)) lat.special[name] = *l;
    r.lattice = std::move(lat);
    if (sub_labels->fallback)
      set_stage(r, "labels", StageState::complete, "fallback codes: " + sub_labels->failure);
    else
      set_stage(r, "labels", StageState::complete);
  } else {
    set_stage(r, "labels", StageState::omitted, "no subgroup data");
  }

  // Characters.
  if (n > budgets.character_budget) {
    set_stage(r, "characters", StageState::omitted,
              "order exceeds character budget " + std::to_string(budgets.character_budget));
  } else {
    try {
      const RawCharacterTable raw = character_table(group, classes, budgets.character_budget);
      std::optional<std::vector<CosetAction>> actions;
      if (have_lattice && subs.complete) {
        std::vector<std::size_t> orders;
        for (const auto& c : subgroup_classes.classes) orders.push_back(c.order);
        actions = coset_actions(group, classes, class_labels, sub_labels->vectors, orders);
      }
      const CharacterTable t = label_characters(r.label, group, classes, class_labels, raw, actions);
      CharacterTableRecord rec;
      rec.class_labels = t.class_labels;
      rec.division_labels = t.division_labels;
      for (const Division& d : class_labels.divisions) {
        std::vector<std::string> members;
        for (std::size_t c : d.classes) members.push_back(class_labels.class_label[c]);
        rec.division_classes.push_back(std::move(members));
      }
      for (std::size_t i = 0; i < t.complex_rows.size(); ++i) {
        CharacterRecord c;
        c.label = t.complex_labels[i];
        c.degree = t.degrees[i];
        c.indicator = static_cast<int>(t.indicators[i]);
        c.rational = t.rational_labels[t.rational_of[i]];
        for (const auto& v : t.complex_rows[i]) c.values.push_back(v.str());
        rec.characters.push_back(std::move(c));
      }
      for (std::size_t k = 0; k < t.rational_rows.size(); ++k) {
        RationalCharacterRecord q;
        q.label = t.rational_labels[k];
        q.values = t.rational_rows[k];
        q.degree = t.degrees[t.galois_orbits[k].front()] * t.galois_orbits[k].size();
        for (std::size_t i : t.galois_orbits[k]) q.constituents.push_back(t.complex_labels[i]);
        if (t.perm_reps[k]) q.perm_degree = t.perm_reps[k]->degree;
        rec.rational.push_back(std::move(q));
      }
      for (const auto& [p, cols] : t.power_maps) {
        std::vector<std::string> images;
        for (std::size_t col : cols) images.push_back(t.class_labels[col]);
        rec.power_maps[p] = std::move(images);
      }
      r.characters = std::move(rec);
      set_stage(r, "characters", StageState::complete,
                actions ? std::string{} : std::string("labels computed without permutation characters"));
    } catch (const BudgetExceeded& e) {
      set_stage(r, "characters", StageState::omitted, e.what());
    } catch (const StructuralError& e) {
      set_stage(r, "characters", StageState::failed, e.what());
    }
  }

  // Presentation.
  if (!r.attributes.solvable) {
    set_stage(r, "presentation", StageState::unsupported, "group is not solvable");
  } else {
    try {
      const PcPresentation p = optimize_presentation(group, budgets.chain_budget);
      if (!verify_presentation(group, p)) {
        set_stage(r, "presentation", StageState::failed, "reconstruction is not isomorphic");
      } else {
        PresentationRecord rec;
        rec.display = p.str();
        rec.method = p.method;
        rec.generators = cycles_of(group, p.generators);
        rec.relative_orders = p.relative_orders;
        rec.power_relations = p.power_relations;
        for (std::size_t i = 0; i < p.size(); ++i) {
          rec.conjugation_relations.emplace_back();
          for (std::size_t j = i + 1; j < p.size(); ++j) rec.conjugation_relations.back().push_back(p.conjugation_relations[i][j]);
        }
        r.presentation = std::move(rec);
        set_stage(r, "presentation", StageState::complete);
      }
    } catch (const BudgetExceeded& e) {
      set_stage(r, "presentation", StageState::omitted, e.what());
    }
  }
  return r;
}

}  // namespace grpdb
