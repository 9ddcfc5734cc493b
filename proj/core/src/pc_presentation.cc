#include "grpdb/pc_presentation.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <unordered_map>

#include "grpdb/automorphisms.hpp"
#include "grpdb/error.hpp"
#include "grpdb/labeling.hpp"
#include "grpdb/structure.hpp"

namespace grpdb {

namespace {

// Smallest t > 0 with x^t in `below`.
std::uint64_t order_modulo(const PermGroup& group, Elt x, const ElementSet& below) {
  std::uint64_t t = 1;
  Elt y = x;
  while (!below.contains(y)) {
    y = group.mul(y, x);
    ++t;
  }
  return t;
}

struct Overgroup {
  ElementSet set;
  std::vector<Elt> gens;
  Elt rep;
};

PcWord unit(std::size_t n, std::size_t j) {
  PcWord w(n, 0);
  w[j] = 1;
  return w;
}

std::string render_word(const PcWord& w) {
  std::string s;
  for (std::size_t k = 0; k < w.size(); ++k) {
    if (w[k] == 0) continue;
    if (!s.empty()) s += "*";
    s += letter_code(k);
    if (w[k] > 1) s += "^" + std::to_string(w[k]);
  }
  return s.empty() ? "1" : s;
}

}  // namespace

std::uint64_t PcPresentation::order() const {
  std::uint64_t n = 1;
  for (auto r : relative_orders) n *= r;
  return n;
}

std::string PcPresentation::str() const {
  const std::size_t n = size();
  std::string s = "⟨";
  for (std::size_t i = 0; i < n; ++i) s += (i ? ", " : "") + letter_code(i);
  s += " | ";
  bool first = true;
  auto add = [&](const std::string& rel) {
    if (!first) s += ", ";
    s += rel;
    first = false;
  };
  for (std::size_t i = 0; i < n; ++i) {
    std::string rel = letter_code(i) + "^" + std::to_string(relative_orders[i]);
    if (std::any_of(power_relations[i].begin(), power_relations[i].end(), [](auto e) { return e != 0; }))
      rel += " = " + render_word(power_relations[i]);
    add(rel);
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      if (conjugation_relations[i][j] == unit(n, j)) continue;
      add(letter_code(j) + "^" + letter_code(i) + " = " + render_word(conjugation_relations[i][j]));
    }
  s += "⟩";
  return s;
}

int PresentationScore::compare(const PresentationScore& o) const {
  if (c1 != o.c1) return c1 > o.c1 ? 1 : -1;
  if (c2 != o.c2) return c2 > o.c2 ? 1 : -1;
  if (c3 != o.c3) return c3 < o.c3 ? 1 : -1;
  if (c4 != o.c4) return c4 > o.c4 ? 1 : -1;
  return 0;
}

bool is_solvable(const PermGroup& group) {
  return series(group, SeriesKind::derived).terms.back().size() == 1;
}

std::vector<ElementSet> cyclic_quotient_kernels(const PermGroup& group, const ElementSet& h, std::size_t budget) {
  const std::vector<Elt> hgens = subgroup_generators(group, h);
  const ElementSet derived = commutator_subgroup(group, hgens, hgens, hgens);
  const std::vector<Elt> dgens = subgroup_generators(group, derived);

  // One representative per cyclic subgroup of H/H'.
  std::vector<Overgroup> cyclic;
  std::unordered_map<ElementSet, std::size_t, ElementSetHash> seen_cyclic;
  ElementSet covered = derived;
  h.for_each([&](Elt x) {
    if (derived.contains(x)) return;
    ElementSet c = extend_subgroup(group, derived, dgens, x);
    if (seen_cyclic.emplace(c, cyclic.size()).second) {
      auto gens = dgens;
      gens.push_back(x);
      cyclic.push_back({std::move(c), std::move(gens), x});
    }
  });

  std::vector<Overgroup> all{{derived, dgens, PermGroup::identity()}};
  std::unordered_map<ElementSet, std::size_t, ElementSetHash> index{{derived, 0}};
  for (std::size_t pos = 0; pos < all.size(); ++pos) {
    for (const auto& c : cyclic) {
      if (all[pos].set.contains(c.rep)) continue;
      ElementSet next = extend_subgroup(group, all[pos].set, all[pos].gens, c.rep);
      if (index.contains(next)) continue;
      if (all.size() >= budget) throw BudgetExceeded("abelian quotient has too many subgroups");
      auto gens = all[pos].gens;
      gens.push_back(c.rep);
      index.emplace(next, all.size());
      all.push_back({std::move(next), std::move(gens), c.rep});
    }
  }

  std::vector<ElementSet> out;
  const std::size_t h_order = h.size();
  for (const auto& s : all) {
    if (s.set == h) continue;
    const std::uint64_t index_in_h = h_order / s.set.size();
    const bool is_cyclic = std::any_of(cyclic.begin(), cyclic.end(), [&](const Overgroup& c) {
      return order_modulo(group, c.rep, s.set) == index_in_h;
    });
    if (is_cyclic) out.push_back(s.set);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<SubnormalChain> minimal_chains(const PermGroup& group, std::size_t budget) {
  if (!is_solvable(group)) throw DomainError("group is not solvable");
  std::size_t nodes = 0;
  std::unordered_map<ElementSet, std::vector<ElementSet>, ElementSetHash> kernels;
  std::unordered_map<ElementSet, std::size_t, ElementSetHash> dist;

  auto kernels_of = [&](const ElementSet& h) -> const std::vector<ElementSet>& {
    auto it = kernels.find(h);
    if (it == kernels.end()) it = kernels.emplace(h, cyclic_quotient_kernels(group, h)).first;
    return it->second;
  };

  // Layers are explored breadth-first by memoizing the distance to the trivial subgroup.
  std::function<std::size_t(const ElementSet&)> distance = [&](const ElementSet& h) -> std::size_t {
    if (h.size() == 1) return 0;
    if (auto it = dist.find(h); it != dist.end()) return it->second;
    if (++nodes > budget) throw BudgetExceeded("chain search");
    std::size_t best = SIZE_MAX;
    const auto ks = kernels_of(h);
    for (const auto& k : ks) best = std::min(best, distance(k) + 1);
    dist.emplace(h, best);
    return best;
  };

  std::vector<SubnormalChain> out;
  try {
    const ElementSet top = group.full_set();
    distance(top);
    std::vector<ElementSet> prefix{top};
    std::function<void()> walk = [&]() {
      const ElementSet h = prefix.back();
      if (h.size() == 1) {
        SubnormalChain c;
        c.terms = prefix;
        for (std::size_t i = 0; i + 1 < prefix.size(); ++i)
          c.relative_orders.push_back(prefix[i].size() / prefix[i + 1].size());
        out.push_back(std::move(c));
        return;
      }
      const std::size_t d = distance(h);
      const auto ks = kernels_of(h);
      for (const auto& k : ks) {
        if (distance(k) + 1 != d) continue;
        if (++nodes > budget) throw BudgetExceeded("chain search");
        prefix.push_back(k);
        walk();
        prefix.pop_back();
      }
    };
    walk();
  } catch (const BudgetExceeded&) {
    return {};
  }
  return out;
}

PcWord decompose(const PermGroup& group, const std::vector<Elt>& generators,
                 const std::vector<std::uint64_t>& relative_orders, const std::vector<ElementSet>& terms, Elt x) {
  const std::size_t n = generators.size();
  PcWord w(n, 0);
  Elt cur = x;
  for (std::size_t i = 0; i < n; ++i) {
    if (!terms[i].contains(cur)) throw MembershipError("element outside chain term");
    const Elt ginv = group.inv(generators[i]);
    std::uint32_t e = 0;
    while (!terms[i + 1].contains(cur)) {
      cur = group.mul(ginv, cur);
      if (++e >= relative_orders[i]) throw StructuralError("generator does not generate chain quotient");
    }
    w[i] = e;
  }
  return w;
}

PcPresentation presentation_from_chain(const PermGroup& group, const SubnormalChain& chain) {
  const std::size_t n = chain.length();
  PcPresentation p;
  p.relative_orders = chain.relative_orders;
  for (std::size_t i = 0; i < n; ++i) {
    const auto r = chain.relative_orders[i];
    std::optional<Elt> any;
    std::optional<Elt> exact;
    for (Elt x : pseudo_random_order(group, chain.terms[i])) {
      if (chain.terms[i + 1].contains(x) || order_modulo(group, x, chain.terms[i + 1]) != r) continue;
      if (!any) any = x;
      if (group.element_order(x) == r) {
        exact = x;
        break;
      }
    }
    if (!any) throw StructuralError("chain quotient is not cyclic");
    p.generators.push_back(exact ? *exact : *any);
  }
  for (std::size_t i = 0; i < n; ++i) {
    p.power_relations.push_back(
        decompose(group, p.generators, p.relative_orders, chain.terms,
                  group.pow(p.generators[i], static_cast<long long>(p.relative_orders[i]))));
    p.conjugation_relations.emplace_back(n);
    for (std::size_t j = i + 1; j < n; ++j)
      p.conjugation_relations[i][j] = decompose(group, p.generators, p.relative_orders, chain.terms,
                                                group.conj(p.generators[j], p.generators[i]));
  }
  for (Elt g : p.generators) p.generator_orders.push_back(group.element_order(g));
  p.method = "minimal";
  return p;
}

PresentationScore score(const PcPresentation& p) {
  PresentationScore s;
  const std::size_t n = p.size();
  for (std::size_t i = 0; i < n; ++i)
    if (p.generator_orders[i] == p.relative_orders[i]) ++s.c1;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const auto& w = p.conjugation_relations[i][j];
      if (w == unit(n, j)) ++s.c2;
      if (p.relative_orders[i] < p.relative_orders[j]) ++s.c3;
      std::size_t depth = 0;
      while (depth < n && w[depth] == 0) ++depth;
      s.c4 += depth;
    }
  return s;
}

namespace {

std::optional<SubnormalChain> greedy_chain(const PermGroup& group) {
  SubnormalChain chain;
  ElementSet h = group.full_set();
  chain.terms.push_back(h);
  while (h.size() > 1) {
    const auto hgens = subgroup_generators(group, h);
    const ElementSet derived = commutator_subgroup(group, hgens, hgens, hgens);
    const auto dgens = subgroup_generators(group, derived);
    const auto order = pseudo_random_order(group, h);
    Elt top = PermGroup::identity();
    std::uint64_t top_order = 1;
    for (Elt x : order) {
      const auto t = order_modulo(group, x, derived);
      if (t > top_order) {
        top = x;
        top_order = t;
      }
    }
    const ElementSet top_span = extend_subgroup(group, derived, dgens, top);
    const std::size_t target = h.size() / top_order;
    ElementSet k = derived;
    auto kgens = dgens;
    for (Elt y : order) {
      if (k.size() == target) break;
      if (k.contains(y)) continue;
      ElementSet next = extend_subgroup(group, k, kgens, y);
      if ((next & top_span) != derived || next.size() > target) continue;
      k = std::move(next);
      kgens.push_back(y);
    }
    if (k.size() != target) return std::nullopt;
    chain.relative_orders.push_back(top_order);
    chain.terms.push_back(k);
    h = std::move(k);
  }
  return chain;
}

SubnormalChain derived_refinement(const PermGroup& group) {
  const auto derived = series(group, SeriesKind::derived);
  SubnormalChain chain;
  chain.terms.push_back(group.full_set());
  for (std::size_t i = 0; i + 1 < derived.terms.size(); ++i) {
    const ElementSet& upper = derived.terms[i];
    ElementSet s = derived.terms[i + 1];
    auto sgens = subgroup_generators(group, s);
    // Ascending generating sequence of upper/lower, each step adding the element of
    // largest order modulo the current subgroup.
    std::vector<ElementSet> steps{s};
    const auto order = pseudo_random_order(group, upper);
    while (s != upper) {
      Elt best = PermGroup::identity();
      std::uint64_t best_order = 1;
      for (Elt x : order) {
        if (s.contains(x)) continue;
        const auto t = order_modulo(group, x, s);
        if (t > best_order) {
          best = x;
          best_order = t;
        }
      }
      s = extend_subgroup(group, s, sgens, best);
      sgens.push_back(best);
      steps.push_back(s);
    }
    for (std::size_t k = steps.size() - 1; k-- > 0;) {
      chain.relative_orders.push_back(chain.terms.back().size() / steps[k].size());
      chain.terms.push_back(steps[k]);
    }
  }
  return chain;
}

}  // namespace

PcPresentation optimize_presentation(const PermGroup& group, std::size_t budget) {
  if (!is_solvable(group)) throw DomainError("group is not solvable");
  const auto chains = minimal_chains(group, budget);
  if (!chains.empty()) {
    std::optional<PcPresentation> best;
    PresentationScore best_score;
    for (const auto& chain : chains) {
      PcPresentation p = presentation_from_chain(group, chain);
      const PresentationScore sc = score(p);
      if (!best || sc.compare(best_score) > 0) {
        best = std::move(p);
        best_score = sc;
      }
    }
    return *best;
  }
  if (auto chain = greedy_chain(group)) {
    PcPresentation p = presentation_from_chain(group, *chain);
    p.method = "greedy";
    return p;
  }
  PcPresentation p = presentation_from_chain(group, derived_refinement(group));
  p.method = "derived";
  return p;
}

SubnormalChain chain_of(const PermGroup& group, const PcPresentation& p) {
  const std::size_t n = p.size();
  SubnormalChain chain;
  chain.terms.resize(n + 1);
  chain.terms[n] = group.trivial_set();
  for (std::size_t i = n; i-- > 0;) {
    std::vector<Elt> gens(p.generators.begin() + static_cast<std::ptrdiff_t>(i + 1), p.generators.end());
    chain.terms[i] = extend_subgroup(group, chain.terms[i + 1], gens, p.generators[i]);
  }
  for (std::size_t i = 0; i < n; ++i) chain.relative_orders.push_back(chain.terms[i].size() / chain.terms[i + 1].size());
  return chain;
}

PcWord collect_generator(const PcPresentation& p, PcWord word, std::size_t j) {
  const std::size_t n = p.size();
  PcWord tail(word.begin() + static_cast<std::ptrdiff_t>(j + 1), word.end());
  std::fill(word.begin() + static_cast<std::ptrdiff_t>(j + 1), word.end(), 0);
  if (++word[j] == p.relative_orders[j]) {
    word[j] = 0;
    word = collect(p, std::move(word), p.power_relations[j]);
  }
  // tail * g_j = g_j * prod_k (g_k^{g_j})^{tail_k}
  for (std::size_t k = j + 1; k < n; ++k)
    for (std::uint32_t t = 0; t < tail[k - j - 1]; ++t) word = collect(p, std::move(word), p.conjugation_relations[j][k]);
  return word;
}

PcWord collect(const PcPresentation& p, PcWord a, const PcWord& b) {
  for (std::size_t k = 0; k < b.size(); ++k)
    for (std::uint32_t t = 0; t < b[k]; ++t) a = collect_generator(p, std::move(a), k);
  return a;
}

PermGroup reconstruct(const PcPresentation& p) {
  const std::size_t n = p.size();
  const std::uint64_t order = p.order();
  if (order > 65535) throw BudgetExceeded("presented group too large for a regular representation");
  auto index = [&](const PcWord& w) {
    std::uint64_t idx = 0;
    for (std::size_t i = 0; i < n; ++i) idx = idx * p.relative_orders[i] + w[i];
    return idx;
  };
  std::vector<PcWord> words(order, PcWord(n, 0));
  for (std::uint64_t idx = 0; idx < order; ++idx) {
    std::uint64_t r = idx;
    for (std::size_t i = n; i-- > 0;) {
      words[idx][i] = static_cast<std::uint32_t>(r % p.relative_orders[i]);
      r /= p.relative_orders[i];
    }
  }
  std::vector<Permutation> gens;
  if (n == 0) gens.push_back(Permutation::identity(1));
  for (std::size_t j = 0; j < n; ++j) {
    // Left multiplication by g_j, so the generated group is isomorphic rather than anti-isomorphic.
    std::vector<Permutation::Point> images(order);
    const PcWord g = unit(n, j);
    for (std::uint64_t idx = 0; idx < order; ++idx)
      images[idx] = static_cast<Permutation::Point>(index(collect(p, g, words[idx])));
    gens.push_back(Permutation::from_images(std::move(images)));
  }
  return PermGroup::generate(std::move(gens));
}

bool verify_presentation(const PermGroup& group, const PcPresentation& p) {
  if (p.order() != group.order()) return false;
  PermGroup presented = [&] {
    try {
      return reconstruct(p);
    } catch (const StructuralError&) {
      // A collector producing a non-bijection means the relations are inconsistent.
      return PermGroup::generate({Permutation::identity(1)});
    }
  }();
  if (presented.order() != group.order()) return false;
  if (p.size() == 0) return true;
  std::vector<std::vector<Elt>> candidates;
  for (Elt g : p.generators) candidates.push_back({g});
  IsomorphismSearch search(presented, presented.generator_indices(), group, candidates);
  return search.consistent(p.generators);
}

}  // namespace grpdb
