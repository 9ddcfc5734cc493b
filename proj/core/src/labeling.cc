#include "grpdb/labeling.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <tuple>

#include "grpdb/error.hpp"
#include "union_find.hpp"

namespace grpdb {

std::string letter_code(std::size_t n, bool upper) {
  std::string s;
  const char base = upper ? 'A' : 'a';
  ++n;
  while (n > 0) {
    --n;
    s.insert(s.begin(), static_cast<char>(base + n % 26));
    n /= 26;
  }
  return s;
}

std::optional<std::size_t> parse_letter_code(std::string_view code) {
  if (code.empty()) return std::nullopt;
  const bool upper = code[0] >= 'A' && code[0] <= 'Z';
  const char base = upper ? 'A' : 'a';
  std::size_t n = 0;
  for (char ch : code) {
    if (ch < base || ch > base + 25) return std::nullopt;
    n = n * 26 + static_cast<std::size_t>(ch - base) + 1;
  }
  return n - 1;
}

namespace {

std::vector<bool> non_maximal_elements(const PermGroup& group) {
  std::vector<bool> nonmax(group.order(), false);
  for (Elt h = 0; h < group.order(); ++h) {
    const std::uint32_t n = group.element_order(h);
    Elt x = h;
    for (std::uint32_t k = 1; k <= n; ++k, x = group.mul(x, h)) {
      if (std::gcd(k, n) != 1) nonmax[x] = true;
    }
  }
  return nonmax;
}

}  // namespace

std::vector<Division> compute_divisions(const PermGroup& group, const ClassPartition& classes) {
  detail::UnionFind uf(classes.count());
  for (std::size_t c = 0; c < classes.count(); ++c) {
    const Elt g = classes.classes[c].representative;
    const std::uint32_t n = classes.classes[c].element_order;
    Elt x = g;
    for (std::uint32_t k = 1; k < n; ++k, x = group.mul(x, g)) {
      if (std::gcd(k, n) == 1) uf.unite(c, classes.class_of[x]);
    }
  }
  const std::vector<std::size_t> id = uf.labels();
  const std::size_t count = classes.count() == 0 ? 0 : *std::max_element(id.begin(), id.end()) + 1;
  const std::vector<bool> nonmax = non_maximal_elements(group);

  std::vector<Division> out(count);
  std::vector<bool> has_rep(count, false);
  for (std::size_t c = 0; c < classes.count(); ++c) {
    Division& d = out[id[c]];
    if (d.classes.empty()) {
      d.maximal = !nonmax[classes.classes[c].representative];
      d.element_order = classes.classes[c].element_order;
      d.class_size = classes.classes[c].size;
      d.representative = classes.classes[c].representative;
    }
    d.classes.push_back(c);
  }

  std::size_t missing = 0;
  for (const Division& d : out) missing += d.maximal ? 1 : 0;
  PseudoRandomStream stream(group);
  const std::size_t draws = 64 * group.order() + 1024;
  for (std::size_t i = 0; i < draws && missing > 0; ++i) {
    const Elt e = stream.next();
    const std::size_t d = id[classes.class_of[e]];
    if (out[d].maximal && !has_rep[d]) {
      out[d].representative = e;
      has_rep[d] = true;
      --missing;
    }
  }
  if (missing > 0) {
    for (Elt e : pseudo_random_order(group, group.full_set())) {
      const std::size_t d = id[classes.class_of[e]];
      if (out[d].maximal && !has_rep[d]) {
        out[d].representative = e;
        has_rep[d] = true;
      }
    }
  }
  return out;
}

std::vector<Division> order_divisions(const PermGroup& group, const ClassPartition& classes,
                                      std::vector<Division> divisions) {
  std::vector<std::size_t> division_of(classes.count());
  for (std::size_t d = 0; d < divisions.size(); ++d) {
    for (std::size_t c : divisions[d].classes) division_of[c] = d;
  }
  std::vector<std::size_t> maximal;
  for (std::size_t d = 0; d < divisions.size(); ++d) {
    if (divisions[d].maximal) maximal.push_back(d);
  }
  auto key = [&](std::size_t d) {
    const Division& x = divisions[d];
    return std::make_tuple(x.element_order, x.class_size, x.classes.size(), x.representative);
  };
  std::sort(maximal.begin(), maximal.end(), [&](std::size_t a, std::size_t b) { return key(a) < key(b); });

  std::vector<bool> placed(divisions.size(), false);
  for (std::size_t d : maximal) placed[d] = true;
  std::vector<std::size_t> sequence = maximal;
  for (std::size_t d : maximal) {
    const Elt g = divisions[d].representative;
    const std::uint32_t n = divisions[d].element_order;
    Elt x = g;
    for (std::uint32_t i = 2; i <= n; ++i) {
      x = group.mul(x, g);
      if (std::gcd(i, n) == 1) continue;
      const std::size_t e = division_of[classes.class_of[x]];
      if (placed[e]) continue;
      placed[e] = true;
      divisions[e].representative = x;
      sequence.push_back(e);
    }
  }
  if (std::find(placed.begin(), placed.end(), false) != placed.end()) {
    throw StructuralError("order_divisions: a division is not reached by powering maximal representatives");
  }

  std::map<std::uint32_t, std::size_t> next_letter;
  std::vector<std::pair<std::size_t, std::size_t>> letter(divisions.size());  // (order, letter index)
  for (std::size_t d : sequence) {
    const std::uint32_t n = divisions[d].element_order;
    const std::size_t k = next_letter[n]++;
    divisions[d].label = std::to_string(n) + letter_code(k, true);
    letter[d] = {n, k};
  }
  std::vector<std::size_t> perm(divisions.size());
  std::iota(perm.begin(), perm.end(), 0);
  std::sort(perm.begin(), perm.end(), [&](std::size_t a, std::size_t b) { return letter[a] < letter[b]; });
  std::vector<Division> out;
  for (std::size_t d : perm) out.push_back(std::move(divisions[d]));
  return out;
}

std::vector<std::pair<std::size_t, std::string>> label_classes(const PermGroup& group, const ClassPartition& classes,
                                                               const Division& division) {
  if (division.classes.size() == 1) return {{division.classes[0], division.label}};
  const Elt g = division.representative;
  const std::uint32_t n = division.element_order;
  std::vector<std::pair<std::size_t, std::string>> out;
  std::set<std::size_t> seen;
  auto visit = [&](Elt x, long long j) {
    const std::size_t c = classes.class_of[x];
    if (seen.insert(c).second) out.emplace_back(c, division.label + std::to_string(j));
  };
  Elt x = g;
  for (std::uint32_t k = 1; k < n; ++k, x = group.mul(x, g)) {
    if (std::gcd(k, n) != 1) continue;
    visit(x, k);
    visit(group.inv(x), -static_cast<long long>(k));
  }
  if (out.size() != division.classes.size()) {
    throw StructuralError("label_classes: powering sequence does not exhaust division " + division.label);
  }
  return out;
}

ClassLabeling label_conjugacy_classes(const PermGroup& group, const ClassPartition& classes) {
  ClassLabeling out;
  out.divisions = order_divisions(group, classes, compute_divisions(group, classes));
  out.class_label.resize(classes.count());
  out.position.resize(classes.count());
  out.division_of.resize(classes.count());
  for (std::size_t d = 0; d < out.divisions.size(); ++d) {
    std::vector<std::size_t> ordered;
    for (auto& [c, label] : label_classes(group, classes, out.divisions[d])) {
      out.position[c] = out.ordered_classes.size();
      out.ordered_classes.push_back(c);
      out.class_label[c] = std::move(label);
      out.division_of[c] = d;
      ordered.push_back(c);
    }
    out.divisions[d].classes = std::move(ordered);
  }
  return out;
}

GassmannVector gassmann_vector(const PermGroup&, const ElementSet& subgroup, const ClassPartition& classes,
                               const ClassLabeling& labels) {
  GassmannVector v(classes.count(), 0);
  subgroup.for_each([&](Elt h) { ++v[labels.position[classes.class_of[h]]]; });
  return v;
}

GassmannVector merge_over_orbits(const GassmannVector& v, const ClassLabeling& labels,
                                 const std::vector<std::size_t>& class_orbit) {
  std::map<std::size_t, std::size_t> slot;
  GassmannVector out;
  for (std::size_t p = 0; p < labels.ordered_classes.size(); ++p) {
    const std::size_t o = class_orbit[labels.ordered_classes[p]];
    auto [it, fresh] = slot.try_emplace(o, out.size());
    if (fresh) out.push_back(0);
    out[it->second] += v[p];
  }
  return out;
}

namespace {

struct Key {
  GassmannVector vector;
  std::vector<std::size_t> supergroups;
  GassmannVector normalizer;

  auto operator<=>(const Key&) const = default;
};

struct TieError {
  std::size_t a;
  std::size_t b;
};

/// Orders `items` by key and assigns "letter+number" parts; throws TieError on equal keys.
std::vector<std::string> rank_parts(std::vector<std::size_t>& items, const std::vector<Key>& keys) {
  std::sort(items.begin(), items.end(), [&](std::size_t a, std::size_t b) { return keys[a] < keys[b]; });
  std::vector<std::string> parts;
  std::size_t letter = 0;
  std::size_t number = 0;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i > 0) {
      const Key& prev = keys[items[i - 1]];
      const Key& cur = keys[items[i]];
      if (prev == cur) throw TieError{items[i - 1], items[i]};
      if (prev.vector != cur.vector) {
        ++letter;
        number = 0;
      }
    }
    parts.push_back(letter_code(letter) + std::to_string(++number));
  }
  return parts;
}

}  // namespace

SubgroupLabeling label_subgroups(const std::string& ambient, const PermGroup& group, const ClassPartition& classes,
                                 const ClassLabeling& class_labels, const SubgroupEnumeration& subs,
                                 const SubgroupPartition& subgroup_classes,
                                 const std::optional<AutomorphismData>& aut) {
  const std::size_t n = subgroup_classes.classes.size();
  SubgroupLabeling out;
  out.conj_label.resize(n);
  out.aut_label.resize(n);
  for (const SubgroupClass& c : subgroup_classes.classes) {
    out.vectors.push_back(gassmann_vector(group, subs.subgroups[c.representative].elements, classes, class_labels));
  }
  auto rep_set = [&](std::size_t c) -> const ElementSet& {
    return subs.subgroups[subgroup_classes.classes[c].representative].elements;
  };
  auto index_of = [&](std::size_t c) { return group.order() / subgroup_classes.classes[c].order; };
  const std::string prefix = ambient + ".";

  std::map<std::size_t, std::vector<std::size_t>> by_index;  // index -> classes
  for (std::size_t c = 0; c < n; ++c) by_index[index_of(c)].push_back(c);

  auto emit_fallback = [&](std::string reason) {
    out.fallback = true;
    out.failure = std::move(reason);
    out.order.clear();
    for (auto& [m, members] : by_index) {
      std::vector<std::size_t> sorted = members;
      std::sort(sorted.begin(), sorted.end(), [&](std::size_t a, std::size_t b) {
        if (out.vectors[a] != out.vectors[b]) return out.vectors[a] < out.vectors[b];
        return rep_set(a) < rep_set(b);
      });
      for (std::size_t i = 0; i < sorted.size(); ++i) {
        out.conj_label[sorted[i]] = prefix + std::to_string(m) + "." + letter_code(i, true);
        out.order.push_back(sorted[i]);
      }
      if (!aut) continue;
      std::map<std::size_t, std::size_t> first;  // aut class -> first member in sorted order
      for (std::size_t c : sorted) first.try_emplace(aut->subgroup_class[c], c);
      std::vector<std::pair<std::size_t, std::size_t>> ranked;  // (position of first member, aut class)
      for (auto& [a, c] : first) {
        ranked.emplace_back(static_cast<std::size_t>(std::find(sorted.begin(), sorted.end(), c) - sorted.begin()), a);
      }
      std::sort(ranked.begin(), ranked.end());
      std::map<std::size_t, std::string> code;
      for (std::size_t i = 0; i < ranked.size(); ++i) code[ranked[i].second] = prefix + std::to_string(m) + "." + letter_code(i);
      for (std::size_t c : sorted) out.aut_label[c] = code[aut->subgroup_class[c]];
    }
    return out;
  };

  if (!subs.complete) return emit_fallback("subgroup lattice is partial: " + subs.partial_reason);
  if (!aut) return emit_fallback("automorphism data unavailable");

  // Overgroup class lists and normalizer vectors, per subgroup class.
  std::vector<std::vector<std::size_t>> over(n);
  std::vector<GassmannVector> norm(n);
  for (std::size_t c = 0; c < n; ++c) {
    const ElementSet& h = rep_set(c);
    for (std::size_t j = subs.subgroups.size(); j-- > 0;) {
      const Subgroup& k = subs.subgroups[j];
      if (k.order() <= h.size()) break;
      if (k.order() % h.size() == 0 && h.is_subset_of(k.elements)) over[c].push_back(subgroup_classes.class_of[j]);
    }
    norm[c] = gassmann_vector(group, normalizer(group, h), classes, class_labels);
  }

  std::size_t aut_count = 0;
  for (std::size_t a : aut->subgroup_class) aut_count = std::max(aut_count, a + 1);
  std::vector<std::size_t> conj_position(n, 0);
  std::vector<std::size_t> aut_position(aut_count, 0);
  std::size_t next_conj = 0;
  std::size_t next_aut = 0;

  try {
    for (auto& [m, members] : by_index) {
      std::map<std::size_t, std::vector<std::size_t>> aut_members;
      for (std::size_t c : members) aut_members[aut->subgroup_class[c]].push_back(c);

      std::vector<Key> aut_keys(aut_count);
      std::vector<std::size_t> aut_items;
      for (auto& [a, conj] : aut_members) {
        const std::size_t r = conj.front();
        Key& k = aut_keys[a];
        k.vector = merge_over_orbits(out.vectors[r], class_labels, aut->class_orbit);
        for (std::size_t b : over[r]) k.supergroups.push_back(aut_position[aut->subgroup_class[b]]);
        std::sort(k.supergroups.begin(), k.supergroups.end());
        k.normalizer = merge_over_orbits(norm[r], class_labels, aut->class_orbit);
        aut_items.push_back(a);
      }
      const std::vector<std::string> aut_parts = rank_parts(aut_items, aut_keys);

      for (std::size_t i = 0; i < aut_items.size(); ++i) {
        const std::size_t a = aut_items[i];
        aut_position[a] = next_aut++;
        const std::string aut_label = prefix + std::to_string(m) + "." + aut_parts[i];

        std::vector<std::size_t> conj = aut_members[a];
        std::vector<Key> keys(n);
        for (std::size_t c : conj) {
          keys[c].vector = out.vectors[c];
          for (std::size_t b : over[c]) keys[c].supergroups.push_back(conj_position[b]);
          std::sort(keys[c].supergroups.begin(), keys[c].supergroups.end());
          keys[c].normalizer = norm[c];
        }
        const std::vector<std::string> conj_parts = rank_parts(conj, keys);
        for (std::size_t j = 0; j < conj.size(); ++j) {
          conj_position[conj[j]] = next_conj++;
          out.conj_label[conj[j]] = aut_label + "." + conj_parts[j];
          out.aut_label[conj[j]] = aut_label;
          out.order.push_back(conj[j]);
        }
      }
    }
  } catch (const TieError& tie) {
    return emit_fallback("unresolved tie at index " + std::to_string(index_of(tie.a)) + " between subgroup classes " +
                         std::to_string(tie.a) + " and " + std::to_string(tie.b));
  }
  return out;
}

std::string SubgroupLabel::str() const {
  std::string s = ambient + "." + std::to_string(index) + ".";
  if (fallback) return s + *fallback;
  s += aut_part;
  if (conj_part) s += "." + *conj_part;
  return s;
}

bool SubgroupLabel::is_conjugacy_label() const {
  if (fallback) return !fallback->empty() && (*fallback)[0] >= 'A' && (*fallback)[0] <= 'Z';
  return conj_part.has_value();
}

namespace {

bool all_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; }) &&
         !(s.size() > 1 && s[0] == '0');
}

bool all_in(std::string_view s, char lo, char hi) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [&](char c) { return c >= lo && c <= hi; });
}

/// Lowercase letters followed by a positive decimal number.
bool is_part(std::string_view s) {
  std::size_t i = 0;
  while (i < s.size() && s[i] >= 'a' && s[i] <= 'z') ++i;
  return i > 0 && all_digits(s.substr(i)) && s.substr(i) != "0";
}

}  // namespace

SubgroupLabel parse_subgroup_label(std::string_view text) {
  std::vector<std::string_view> tok;
  std::vector<int> col;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= text.size(); ++i) {
    if (i == text.size() || text[i] == '.') {
      tok.push_back(text.substr(start, i - start));
      col.push_back(static_cast<int>(start) + 1);
      start = i + 1;
    }
  }
  auto fail = [&](std::size_t t, const char* what) -> ParseError {
    return ParseError(std::string("subgroup label: ") + what, 1, t < col.size() ? col[t] : static_cast<int>(text.size()) + 1);
  };
  if (tok.size() < 4) throw fail(tok.size(), "expected N.i.m.a");
  if (tok.size() > 5) throw fail(5, "too many components");
  if (!all_digits(tok[0])) throw fail(0, "group order must be a positive integer");
  if (!all_digits(tok[1]) && !all_in(tok[1], 'a', 'z')) throw fail(1, "group id must be a number or letter code");
  if (!all_digits(tok[2])) throw fail(2, "index must be a positive integer");

  SubgroupLabel out;
  out.ambient = std::string(tok[0]) + "." + std::string(tok[1]);
  out.index = std::stoull(std::string(tok[2]));
  if (out.index == 0) throw fail(2, "index must be a positive integer");
  if (is_part(tok[3])) {
    out.aut_part = tok[3];
    if (tok.size() == 5) {
      if (!is_part(tok[4])) throw fail(4, "conjugacy part must be letters followed by a number");
      out.conj_part = std::string(tok[4]);
    }
    return out;
  }
  if (tok.size() == 5) throw fail(4, "fallback codes take no further component");
  if (all_in(tok[3], 'A', 'Z') || all_in(tok[3], 'a', 'z')) {
    out.fallback = std::string(tok[3]);
    return out;
  }
  throw fail(3, "expected letters followed by a number, or a letter code");
}

}  // namespace grpdb
