#include "grpdb/iso_hash.hpp"

#include <algorithm>
#include <cstdio>
#include <map>

#include "grpdb/automorphisms.hpp"
#include "grpdb/error.hpp"
#include "union_find.hpp"

namespace grpdb {

namespace {

std::vector<std::pair<std::uint64_t, std::uint64_t>> class_statistics(const ClassPartition& classes) {
  std::vector<std::pair<std::uint64_t, std::uint64_t>> stats;
  for (const ConjugacyClass& c : classes.classes) stats.emplace_back(c.element_order, c.size);
  std::sort(stats.begin(), stats.end());
  return stats;
}

}  // namespace

std::string GroupHash::hex() const {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(value));
  return buf;
}

std::uint64_t mix_tokens(std::span<const std::uint64_t> tokens) {
  constexpr std::uint64_t kPrime = 0x100000001b3ULL;
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (std::uint64_t t : tokens) h = h * kPrime + t + 1;
  h = h * kPrime + tokens.size();
  return splitmix64(h);
}

std::vector<std::uint64_t> central_quotient_class_sizes(const PermGroup& group, const ClassPartition& classes) {
  const std::vector<Elt> z = center(group).members();
  detail::UnionFind uf(group.order());
  for (Elt x = 0; x < group.order(); ++x) {
    for (Elt c : z) uf.unite(x, group.mul(x, c));
  }
  // Cosets of the members of one class form one class of G/Z; classes sharing a coset merge.
  detail::UnionFind merged(group.order());
  for (const ConjugacyClass& c : classes.classes) {
    for (Elt m : c.members) merged.unite(uf.find(c.members[0]), uf.find(m));
  }
  std::map<std::size_t, std::uint64_t> size;
  for (Elt x = 0; x < group.order(); ++x) {
    if (uf.find(x) == x) ++size[merged.find(x)];
  }
  std::vector<std::uint64_t> out;
  for (const auto& [root, s] : size) out.push_back(s);
  std::sort(out.begin(), out.end());
  return out;
}

GroupHash group_hash(const PermGroup& group, const ClassPartition& classes) {
  std::vector<std::uint64_t> t{kHashVersion, group.order(), classes.count()};
  for (const auto& [order, size] : class_statistics(classes)) {
    t.push_back(order);
    t.push_back(size);
  }
  const std::vector<std::size_t> derived = series(group, SeriesKind::derived).orders();
  t.push_back(derived.size());
  t.insert(t.end(), derived.begin(), derived.end());
  t.push_back(center(group).size());
  const std::vector<std::uint64_t> ab = abelianization_invariants(group);
  t.push_back(ab.size());
  t.insert(t.end(), ab.begin(), ab.end());
  if (group.order() <= kHashQuotientBudget) {
    const std::vector<std::uint64_t> q = central_quotient_class_sizes(group, classes);
    t.push_back(1);
    t.push_back(q.size());
    t.insert(t.end(), q.begin(), q.end());
  } else {
    t.push_back(0);
  }
  GroupHash h;
  h.value = mix_tokens(t);
  h.invariant_trace = std::move(t);
  return h;
}

GroupHash group_hash(const PermGroup& group) { return group_hash(group, conjugacy_classes(group)); }

std::string to_string(IsoStatus status) {
  switch (status) {
    case IsoStatus::isomorphic: return "isomorphic";
    case IsoStatus::not_isomorphic: return "not_isomorphic";
    case IsoStatus::inconclusive: return "inconclusive";
  }
  return "unknown";
}

IsoResult is_isomorphic(const PermGroup& a, const PermGroup& b, std::size_t budget) {
  IsoResult out;
  if (a.order() != b.order()) {
    out.status = IsoStatus::not_isomorphic;
    out.reason = "orders differ";
    return out;
  }
  if (a.order() > budget) {
    out.reason = "order " + std::to_string(a.order()) + " exceeds isomorphism budget " + std::to_string(budget);
    return out;
  }
  const ClassPartition ca = conjugacy_classes(a);
  const ClassPartition cb = conjugacy_classes(b);
  if (class_statistics(ca) != class_statistics(cb)) {
    out.status = IsoStatus::not_isomorphic;
    out.reason = "class statistics differ";
    return out;
  }
  out.source_generators = subgroup_generators(a, a.full_set());
  std::vector<std::vector<Elt>> candidates;
  for (Elt g : out.source_generators) {
    const ConjugacyClass& c = ca.classes[ca.class_of[g]];
    std::vector<Elt> list;
    for (Elt y = 0; y < b.order(); ++y) {
      if (b.element_order(y) == c.element_order && cb.classes[cb.class_of[y]].size == c.size) list.push_back(y);
    }
    candidates.push_back(std::move(list));
  }
  try {
    IsomorphismSearch search(a, out.source_generators, b, candidates);
    if (auto images = search.complete({})) {
      out.status = IsoStatus::isomorphic;
      out.images = std::move(*images);
    } else {
      out.status = IsoStatus::not_isomorphic;
      out.reason = "no generator images extend to an isomorphism";
    }
  } catch (const BudgetExceeded& e) {
    out.status = IsoStatus::inconclusive;
    out.reason = e.what();
  }
  return out;
}

std::vector<IsoClass> dedupe(const std::vector<const PermGroup*>& groups, std::size_t budget) {
  std::vector<std::uint64_t> hashes;
  for (const PermGroup* g : groups) hashes.push_back(group_hash(*g).value);

  std::vector<IsoClass> classes;
  std::map<std::uint64_t, std::vector<std::size_t>> bucket;  // hash -> class indices
  for (std::size_t i = 0; i < groups.size(); ++i) {
    bool placed = false;
    bool inconclusive = false;
    for (std::size_t c : bucket[hashes[i]]) {
      const IsoResult r = is_isomorphic(*groups[classes[c].representative], *groups[i], budget);
      if (r.status == IsoStatus::isomorphic) {
        classes[c].members.push_back(i);
        placed = true;
        break;
      }
      if (r.status == IsoStatus::inconclusive) {
        classes[c].unresolved = true;
        inconclusive = true;
      }
    }
    if (placed) continue;
    bucket[hashes[i]].push_back(classes.size());
    classes.push_back({i, {i}, hashes[i], inconclusive});
  }
  return classes;
}

}  // namespace grpdb
