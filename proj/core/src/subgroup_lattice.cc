#include "grpdb/subgroup_lattice.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "grpdb/error.hpp"

namespace grpdb {

namespace {

std::uint64_t prime_part(std::uint64_t n, std::uint64_t p) {
  std::uint64_t q = 1;
  while (n % p == 0) {
    n /= p;
    q *= p;
  }
  return q;
}

bool is_power_of(std::uint64_t n, std::uint64_t p) {
  while (n % p == 0) n /= p;
  return n == 1;
}

ElementSet join(const PermGroup& group, const std::vector<ElementSet>& parts) {
  std::vector<Elt> gens;
  for (const ElementSet& s : parts) {
    for (Elt g : subgroup_generators(group, s)) gens.push_back(g);
  }
  return generate_subgroup(group, gens);
}

void finalize(SubgroupEnumeration& out) {
  std::sort(out.subgroups.begin(), out.subgroups.end(), [](const Subgroup& a, const Subgroup& b) {
    if (a.order() != b.order()) return a.order() < b.order();
    return a.elements < b.elements;
  });
  out.index.clear();
  for (std::size_t i = 0; i < out.subgroups.size(); ++i) out.index.emplace(out.subgroups[i].elements, i);
}

SubgroupEnumeration fallback_subgroups(const PermGroup& group, std::string reason) {
  SubgroupEnumeration out;
  out.complete = false;
  out.partial_reason = std::move(reason);
  std::unordered_map<ElementSet, std::size_t, ElementSetHash> seen;
  auto add = [&](const ElementSet& s) {
    if (seen.count(s)) return;
    seen.emplace(s, out.subgroups.size());
    out.subgroups.push_back({s, subgroup_generators(group, s)});
  };
  const std::vector<Elt>& gens = group.generator_indices();
  add(group.trivial_set());
  add(group.full_set());
  add(center(group));
  const ClassPartition classes = conjugacy_classes(group);
  for (const ConjugacyClass& c : classes.classes) add(normal_closure(group, {c.representative}, gens));
  for (SeriesKind kind : {SeriesKind::derived, SeriesKind::lower_central, SeriesKind::upper_central}) {
    for (const ElementSet& term : series(group, kind).terms) add(term);
  }
  for (const auto& [p, e] : factorize(group.order())) add(sylow_subgroup(group, p));
  finalize(out);
  return out;
}

}  // namespace

std::optional<std::size_t> SubgroupEnumeration::find(const ElementSet& s) const {
  auto it = index.find(s);
  if (it == index.end()) return std::nullopt;
  return it->second;
}

SubgroupEnumeration all_subgroups(const PermGroup& group, std::size_t budget, const Deadline& deadline) {
  // One generator per cyclic subgroup.
  std::vector<Elt> cyclic_gens;
  {
    std::unordered_map<ElementSet, Elt, ElementSetHash> cyclic;
    for (Elt g = 0; g < group.order(); ++g) {
      const Elt gens[1] = {g};
      cyclic.try_emplace(generate_subgroup(group, gens), g);
    }
    for (const auto& [set, g] : cyclic) cyclic_gens.push_back(g);
    std::sort(cyclic_gens.begin(), cyclic_gens.end());
  }

  SubgroupEnumeration out;
  std::unordered_map<ElementSet, std::size_t, ElementSetHash> seen;
  auto add = [&](ElementSet s, std::vector<Elt> gens) {
    if (seen.count(s)) return;
    seen.emplace(s, out.subgroups.size());
    out.subgroups.push_back({std::move(s), std::move(gens)});
  };
  add(group.trivial_set(), {});
  for (Elt g : cyclic_gens) {
    if (g == PermGroup::identity()) continue;
    const Elt gens[1] = {g};
    add(generate_subgroup(group, gens), {g});
  }

  for (std::size_t pos = 0; pos < out.subgroups.size(); ++pos) {
    for (Elt g : cyclic_gens) {
      if (out.subgroups[pos].elements.contains(g)) continue;
      const Subgroup& h = out.subgroups[pos];
      ElementSet k = extend_subgroup(group, h.elements, h.generators, g);
      if (seen.count(k)) continue;
      std::vector<Elt> gens = h.generators;
      gens.push_back(g);
      add(std::move(k), std::move(gens));
      if (out.subgroups.size() > budget) {
        return fallback_subgroups(group, "subgroup count exceeds budget " + std::to_string(budget));
      }
    }
    if (deadline.expired()) return fallback_subgroups(group, "subgroup enumeration exceeded its time budget");
  }
  for (Subgroup& s : out.subgroups) s.generators = subgroup_generators(group, s.elements);
  finalize(out);
  return out;
}

ElementSet sylow_subgroup(const PermGroup& group, std::uint64_t p) {
  const std::uint64_t target = prime_part(group.order(), p);
  ElementSet sylow = group.trivial_set();
  std::vector<Elt> gens;
  while (sylow.size() < target) {
    const ElementSet n = normalizer(group, sylow);
    bool grown = false;
    n.for_each([&](Elt x) {
      if (grown || sylow.contains(x) || !is_power_of(group.element_order(x), p)) return;
      sylow = extend_subgroup(group, sylow, gens, x);
      gens.push_back(x);
      grown = true;
    });
    if (!grown) throw StructuralError("sylow_subgroup: normalizer has no p-element outside the subgroup");
  }
  return sylow;
}

ElementSet conjugate_subgroup(const PermGroup& group, const ElementSet& subgroup, Elt g) {
  ElementSet out(group.order());
  const Elt gi = group.inv(g);
  subgroup.for_each([&](Elt h) { out.insert(group.mul(group.mul(gi, h), g)); });
  return out;
}

SubgroupPartition conjugacy_classes_of_subgroups(const PermGroup& group, const SubgroupEnumeration& subs) {
  const std::size_t n = subs.subgroups.size();
  constexpr std::size_t kUnassigned = static_cast<std::size_t>(-1);
  std::vector<std::size_t> raw_class(n, kUnassigned);
  std::vector<std::vector<std::size_t>> raw;
  for (std::size_t i = 0; i < n; ++i) {
    if (raw_class[i] != kUnassigned) continue;
    const std::size_t id = raw.size();
    raw.emplace_back();
    std::vector<ElementSet> orbit{subs.subgroups[i].elements};
    std::unordered_map<ElementSet, bool, ElementSetHash> seen{{orbit[0], true}};
    for (std::size_t pos = 0; pos < orbit.size(); ++pos) {
      for (Elt s : group.generator_indices()) {
        ElementSet c = conjugate_subgroup(group, orbit[pos], s);
        if (seen.emplace(c, true).second) orbit.push_back(std::move(c));
      }
    }
    for (const ElementSet& c : orbit) {
      if (auto j = subs.find(c)) {
        raw_class[*j] = id;
        raw[id].push_back(*j);
      }
    }
  }

  // Subgroups are sorted by (order, set), so the smallest member index is the representative
  // and ordering classes by it orders them by (order, representative set).
  for (auto& members : raw) std::sort(members.begin(), members.end());
  std::vector<std::size_t> perm(raw.size());
  std::iota(perm.begin(), perm.end(), 0);
  std::sort(perm.begin(), perm.end(), [&](std::size_t a, std::size_t b) { return raw[a][0] < raw[b][0]; });

  SubgroupPartition out;
  out.class_of.assign(n, 0);
  for (std::size_t k = 0; k < perm.size(); ++k) {
    const auto& members = raw[perm[k]];
    SubgroupClass c;
    c.representative = members[0];
    c.members = members;
    c.order = subs.subgroups[members[0]].order();
    c.normal = members.size() == 1 && is_normal(group, subs.subgroups[members[0]].elements);
    for (std::size_t m : members) out.class_of[m] = k;
    out.classes.push_back(std::move(c));
  }
  return out;
}

bool dominates(const std::vector<std::uint32_t>& upper, const std::vector<std::uint32_t>& lower) {
  if (upper.size() != lower.size()) return false;
  for (std::size_t i = 0; i < upper.size(); ++i) {
    if (upper[i] < lower[i]) return false;
  }
  return true;
}

namespace {

bool some_conjugate_inside(const SubgroupEnumeration& subs, const SubgroupPartition& classes, std::size_t a, std::size_t b) {
  const ElementSet& upper = subs.subgroups[classes.classes[b].representative].elements;
  for (std::size_t m : classes.classes[a].members) {
    if (subs.subgroups[m].elements.is_subset_of(upper)) return true;
  }
  return false;
}

std::vector<LatticeEdge> hasse(const SubgroupPartition& classes, const std::vector<std::vector<bool>>& contained) {
  const std::size_t n = classes.classes.size();
  std::vector<LatticeEdge> edges;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      if (a == b || !contained[a][b]) continue;
      bool covered = true;
      for (std::size_t c = 0; c < n && covered; ++c) {
        if (c != a && c != b && contained[a][c] && contained[c][b]) covered = false;
      }
      if (covered) edges.push_back({a, b});
    }
  }
  std::sort(edges.begin(), edges.end());
  return edges;
}

}  // namespace

InclusionResult inclusion_edges(const PermGroup&, const SubgroupEnumeration& subs, const SubgroupPartition& classes,
                                const std::vector<std::vector<std::uint32_t>>& vectors) {
  const std::size_t n = classes.classes.size();
  if (vectors.size() != n) throw StructuralError("inclusion_edges: one vector per class required");
  InclusionResult out;
  out.contained.assign(n, std::vector<bool>(n, false));
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      if (a == b) continue;
      const auto& ca = classes.classes[a];
      const auto& cb = classes.classes[b];
      if (ca.order >= cb.order || cb.order % ca.order != 0) continue;
      if (!dominates(vectors[b], vectors[a])) continue;
      ++out.candidate_pairs;
      if (some_conjugate_inside(subs, classes, a, b)) {
        out.contained[a][b] = true;
        ++out.confirmed_pairs;
      }
    }
  }
  out.edges = hasse(classes, out.contained);
  return out;
}

std::vector<std::vector<bool>> brute_force_containment(const PermGroup& group, const SubgroupEnumeration& subs,
                                                       const SubgroupPartition& classes) {
  const std::size_t n = classes.classes.size();
  std::vector<std::vector<bool>> out(n, std::vector<bool>(n, false));
  for (std::size_t a = 0; a < n; ++a) {
    const ElementSet& lower = subs.subgroups[classes.classes[a].representative].elements;
    for (std::size_t b = 0; b < n; ++b) {
      if (a == b) continue;
      const ElementSet& upper = subs.subgroups[classes.classes[b].representative].elements;
      for (Elt g = 0; g < group.order() && !out[a][b]; ++g) {
        if (conjugate_subgroup(group, lower, g).is_subset_of(upper)) out[a][b] = true;
      }
    }
  }
  return out;
}

SpecialSubgroups special_subgroups(const PermGroup& group, const SubgroupEnumeration& subs,
                                   const SubgroupPartition& classes, const InclusionResult& inclusion) {
  if (!subs.complete) throw StructuralError("special_subgroups: needs the complete subgroup lattice");
  SpecialSubgroups out;
  const std::size_t top = classes.class_of[*subs.find(group.full_set())];

  out.frattini = group.full_set();
  for (const LatticeEdge& e : inclusion.edges) {
    if (e.upper != top) continue;
    out.maximal_classes.push_back(e.lower);
    for (std::size_t m : classes.classes[e.lower].members) out.frattini &= subs.subgroups[m].elements;
  }

  std::vector<ElementSet> prime_power_normals;
  std::vector<std::size_t> normal_classes;
  for (std::size_t c = 0; c < classes.classes.size(); ++c) {
    if (!classes.classes[c].normal) continue;
    normal_classes.push_back(c);
    if (classes.classes[c].order > 1 && is_prime_power(classes.classes[c].order)) {
      prime_power_normals.push_back(subs.subgroups[classes.classes[c].representative].elements);
    }
  }
  out.fitting = join(group, prime_power_normals);

  std::vector<ElementSet> minimal_normals;
  for (std::size_t c : normal_classes) {
    if (classes.classes[c].order == 1) continue;
    bool minimal = true;
    for (std::size_t d : normal_classes) {
      if (d != c && classes.classes[d].order > 1 && inclusion.contained[d][c]) minimal = false;
    }
    if (minimal) minimal_normals.push_back(subs.subgroups[classes.classes[c].representative].elements);
  }
  out.socle = join(group, minimal_normals);

  for (const auto& [p, e] : factorize(group.order())) {
    const std::uint64_t target = prime_part(group.order(), p);
    for (std::size_t c = 0; c < classes.classes.size(); ++c) {
      if (classes.classes[c].order == target) {
        out.sylow_class[p] = c;
        break;
      }
    }
  }
  return out;
}

ElementSet core(const PermGroup& group, const ElementSet& subgroup) {
  ElementSet c = subgroup;
  bool changed = true;
  while (changed) {
    changed = false;
    for (Elt s : group.generator_indices()) {
      ElementSet next = c & conjugate_subgroup(group, c, s);
      if (next != c) {
        c = std::move(next);
        changed = true;
      }
    }
  }
  return c;
}

ElementSet fitting_from_sylows(const PermGroup& group) {
  std::vector<ElementSet> cores;
  for (const auto& [p, e] : factorize(group.order())) cores.push_back(core(group, sylow_subgroup(group, p)));
  return join(group, cores);
}

PermGroup subgroup_as_group(const PermGroup& group, const Subgroup& subgroup) {
  std::vector<Permutation> gens;
  for (Elt g : subgroup.generators) gens.push_back(group.element(g));
  if (gens.empty()) gens.push_back(Permutation::identity(group.degree()));
  return PermGroup::generate(std::move(gens));
}

}  // namespace grpdb
