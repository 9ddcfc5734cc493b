#include "grpdb/automorphisms.hpp"

#include <algorithm>

#include "grpdb/error.hpp"
#include "union_find.hpp"

namespace grpdb {

IsomorphismSearch::IsomorphismSearch(const PermGroup& src, std::vector<Elt> src_gens, const PermGroup& dst,
                                     std::vector<std::vector<Elt>> candidates, std::size_t node_budget)
    : src_(&src),
      dst_(&dst),
      src_gens_(std::move(src_gens)),
      candidates_(std::move(candidates)),
      budget_(node_budget),
      map_(src.order()),
      used_(dst.order(), 0),
      mapped_(src.order(), 0) {
  if (candidates_.size() != src_gens_.size()) throw StructuralError("IsomorphismSearch: one candidate list per generator");
  queue_.reserve(src.order());
}

bool IsomorphismSearch::consistent(const std::vector<Elt>& images) {
  const std::size_t k = images.size();
  ++stamp_;
  queue_.clear();
  queue_.push_back(PermGroup::identity());
  map_[0] = PermGroup::identity();
  mapped_[0] = stamp_;
  used_[0] = stamp_;
  for (std::size_t pos = 0; pos < queue_.size(); ++pos) {
    const Elt x = queue_[pos];
    for (std::size_t i = 0; i < k; ++i) {
      const Elt y = src_->mul(x, src_gens_[i]);
      const Elt im = dst_->mul(map_[x], images[i]);
      if (mapped_[y] == stamp_) {
        if (map_[y] != im) return false;
      } else {
        if (used_[im] == stamp_) return false;
        mapped_[y] = stamp_;
        used_[im] = stamp_;
        map_[y] = im;
        queue_.push_back(y);
      }
    }
  }
  return true;
}

bool IsomorphismSearch::descend(std::vector<Elt>& images) {
  if (images.size() == src_gens_.size()) return true;
  for (Elt x : candidates_[images.size()]) {
    if (budget_ == 0) throw BudgetExceeded("isomorphism search: node budget exhausted");
    --budget_;
    images.push_back(x);
    if (consistent(images) && descend(images)) return true;
    images.pop_back();
  }
  return false;
}

std::optional<std::vector<Elt>> IsomorphismSearch::complete(std::vector<Elt> prefix) {
  if (!consistent(prefix)) return std::nullopt;
  if (descend(prefix)) return prefix;
  return std::nullopt;
}

std::vector<Elt> IsomorphismSearch::element_map(const std::vector<Elt>& images) {
  if (images.size() != src_gens_.size() || !consistent(images)) {
    throw StructuralError("element_map: assignment is not an isomorphism");
  }
  return map_;
}

bool is_inner(const PermGroup& group, const std::vector<Elt>& base, const Automorphism& a) {
  for (Elt g = 0; g < group.order(); ++g) {
    bool all = true;
    for (std::size_t j = 0; j < base.size() && all; ++j) all = group.conj(base[j], g) == a.images[j];
    if (all) return true;
  }
  return false;
}

AutomorphismGroup automorphism_group(const PermGroup& group, const ClassPartition& classes, std::size_t order_budget,
                                     const Deadline& deadline) {
  if (group.order() > order_budget) {
    throw BudgetExceeded("automorphism group: order " + std::to_string(group.order()) + " exceeds budget " +
                         std::to_string(order_budget));
  }
  AutomorphismGroup out;
  out.base = subgroup_generators(group, group.full_set());
  out.inner_order = group.order() / center(group).size();
  out.order = 1;

  const std::size_t k = out.base.size();
  std::vector<std::vector<Elt>> candidates(k);
  for (std::size_t i = 0; i < k; ++i) {
    const ConjugacyClass& c = classes.classes[classes.class_of[out.base[i]]];
    for (Elt x = 0; x < group.order(); ++x) {
      if (group.element_order(x) == c.element_order && classes.classes[classes.class_of[x]].size == c.size) {
        candidates[i].push_back(x);
      }
    }
  }
  IsomorphismSearch search(group, out.base, group, candidates);

  // Deepest stabilizer first, so each level's orbit is closed under every generator found.
  for (std::size_t level = k; level-- > 0;) {
    std::vector<bool> reached(group.order(), false);
    std::vector<Elt> orbit;
    auto close = [&](Elt start) {
      if (reached[start]) return;
      reached[start] = true;
      orbit.push_back(start);
      for (std::size_t pos = orbit.size() - 1; pos < orbit.size(); ++pos) {
        for (const Automorphism& a : out.generators) {
          const Elt y = a(orbit[pos]);
          if (!reached[y]) {
            reached[y] = true;
            orbit.push_back(y);
          }
        }
      }
    };
    auto reclose = [&]() {
      for (std::size_t pos = 0; pos < orbit.size(); ++pos) {
        for (const Automorphism& a : out.generators) {
          const Elt y = a(orbit[pos]);
          if (!reached[y]) {
            reached[y] = true;
            orbit.push_back(y);
          }
        }
      }
    };
    close(out.base[level]);

    std::vector<Elt> prefix(out.base.begin(), out.base.begin() + static_cast<std::ptrdiff_t>(level));
    for (Elt x : candidates[level]) {
      if (reached[x]) continue;
      deadline.check("automorphism group");
      std::vector<Elt> attempt = prefix;
      attempt.push_back(x);
      auto images = search.complete(std::move(attempt));
      if (!images) continue;
      Automorphism a;
      a.map = search.element_map(*images);
      a.images = std::move(*images);
      out.generators.push_back(std::move(a));
      close(x);
      reclose();
    }
    out.order *= orbit.size();
  }

  for (const Automorphism& a : out.generators) {
    if (!is_inner(group, out.base, a)) out.outer_generators.push_back(a);
  }
  return out;
}

ElementSet apply(const Automorphism& a, const ElementSet& subgroup) {
  ElementSet out(subgroup.universe());
  subgroup.for_each([&](Elt h) { out.insert(a(h)); });
  return out;
}

std::vector<std::size_t> automorphism_class_orbits(const PermGroup&, const ClassPartition& classes,
                                                   const AutomorphismGroup& aut) {
  detail::UnionFind uf(classes.count());
  for (const Automorphism& a : aut.outer_generators) {
    for (std::size_t c = 0; c < classes.count(); ++c) uf.unite(c, classes.class_of[a(classes.classes[c].representative)]);
  }
  return uf.labels();
}

std::vector<std::size_t> autjugacy_classes(const SubgroupEnumeration& subs, const SubgroupPartition& classes,
                                           const AutomorphismGroup& aut) {
  detail::UnionFind uf(classes.classes.size());
  for (const Automorphism& a : aut.outer_generators) {
    for (std::size_t c = 0; c < classes.classes.size(); ++c) {
      const ElementSet image = apply(a, subs.subgroups[classes.classes[c].representative].elements);
      if (auto j = subs.find(image)) uf.unite(c, classes.class_of[*j]);
    }
  }
  return uf.labels();
}

std::vector<Permutation> holomorph_generators(const PermGroup& group, const AutomorphismGroup& aut) {
  const std::size_t n = group.order();
  std::vector<Permutation> gens;
  std::vector<Permutation::Point> images(n);
  for (Elt g : group.generator_indices()) {
    for (Elt x = 0; x < n; ++x) images[x] = static_cast<Permutation::Point>(group.mul(x, g));
    gens.push_back(Permutation::from_images(images));
  }
  for (const Automorphism& a : aut.generators) {
    for (Elt x = 0; x < n; ++x) images[x] = static_cast<Permutation::Point>(a(x));
    gens.push_back(Permutation::from_images(images));
  }
  return gens;
}

std::vector<std::size_t> holomorph_subgroup_classes(const PermGroup& group, const SubgroupEnumeration& subs,
                                                    const SubgroupPartition& classes, const AutomorphismGroup& aut) {
  const std::size_t n = group.order();
  if (n > kHolomorphOrderBudget) {
    throw BudgetExceeded("holomorph: order " + std::to_string(n) + " exceeds budget " +
                         std::to_string(kHolomorphOrderBudget));
  }
  const std::vector<Permutation> hol = holomorph_generators(group, aut);
  std::vector<Permutation> translation;
  std::vector<Permutation::Point> images(n);
  for (Elt h = 0; h < n; ++h) {
    for (Elt x = 0; x < n; ++x) images[x] = static_cast<Permutation::Point>(group.mul(x, h));
    translation.push_back(Permutation::from_images(images));
  }

  detail::UnionFind uf(classes.classes.size());
  for (const Permutation& gamma : hol) {
    const Permutation gamma_inv = gamma.inverse();
    for (std::size_t c = 0; c < classes.classes.size(); ++c) {
      ElementSet image(n);
      subs.subgroups[classes.classes[c].representative].elements.for_each([&](Elt h) {
        // gamma^-1 rho_h gamma is the translation by the element it sends the identity to.
        const Permutation conj = gamma_inv * translation[h] * gamma;
        image.insert(conj.image(0));
      });
      if (auto j = subs.find(image)) uf.unite(c, classes.class_of[*j]);
    }
  }
  return uf.labels();
}

}  // namespace grpdb
