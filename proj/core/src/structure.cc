#include "grpdb/structure.hpp"

#include <algorithm>
#include <deque>
#include <functional>

#include "grpdb/error.hpp"

namespace grpdb {

ClassPartition conjugacy_classes(const PermGroup& group) {
  const std::size_t n = group.order();
  constexpr std::size_t kUnassigned = static_cast<std::size_t>(-1);
  ClassPartition out;
  out.class_of.assign(n, kUnassigned);
  const auto& gens = group.generator_indices();
  for (Elt e = 0; e < n; ++e) {
    if (out.class_of[e] != kUnassigned) continue;
    const std::size_t id = out.classes.size();
    std::vector<Elt> members{e};
    out.class_of[e] = id;
    for (std::size_t pos = 0; pos < members.size(); ++pos)
      for (Elt s : gens) {
        const Elt c = group.conj(members[pos], s);
        if (out.class_of[c] == kUnassigned) {
          out.class_of[c] = id;
          members.push_back(c);
        }
      }
    std::sort(members.begin(), members.end());
    out.classes.push_back({e, members.size(), group.element_order(e), std::move(members)});
  }
  return out;
}

namespace {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// Invariant factors of an abelian group of order `order` given, for each prime p and
// k >= 0, the number of elements x with x^(p^k) trivial.
std::vector<std::uint64_t> invariants_from_counts(std::uint64_t order,
                                                  const std::function<std::uint64_t(std::uint64_t)>& count_killed_by) {
  std::vector<std::vector<int>> exponents;  // per prime, cyclic-factor exponents descending
  std::vector<std::uint64_t> primes;
  for (auto [p, e] : factorize(order)) {
    std::vector<int> ge;  // ge[k-1] = number of factors with exponent >= k
    std::uint64_t prev = 1;
    std::uint64_t pk = 1;
    for (int k = 1; k <= e; ++k) {
      pk *= p;
      const std::uint64_t now = count_killed_by(pk);
      int r = 0;
      for (std::uint64_t q = now / prev; q > 1; q /= p) ++r;
      if (r == 0) break;
      ge.push_back(r);
      prev = now;
    }
    std::vector<int> exps;
    for (std::size_t k = 0; k < ge.size(); ++k) {
      const int next = k + 1 < ge.size() ? ge[k + 1] : 0;
      for (int c = 0; c < ge[k] - next; ++c) exps.push_back(static_cast<int>(k) + 1);
    }
    std::sort(exps.rbegin(), exps.rend());
    primes.push_back(p);
    exponents.push_back(std::move(exps));
  }
  std::size_t rank = 0;
  for (const auto& ex : exponents) rank = std::max(rank, ex.size());
  std::vector<std::uint64_t> factors(rank, 1);
  // factors[rank-1] is the largest; pair the largest prime powers together.
  for (std::size_t i = 0; i < primes.size(); ++i)
    for (std::size_t j = 0; j < exponents[i].size(); ++j)
      for (int c = 0; c < exponents[i][j]; ++c) factors[rank - 1 - j] *= primes[i];
  return factors;
}

}  // namespace

std::vector<std::size_t> power_classes(const PermGroup& group, const ClassPartition& classes, long long k) {
  std::vector<std::size_t> out;
  out.reserve(classes.count());
  for (const auto& c : classes.classes) out.push_back(classes.class_of[group.pow(c.representative, k)]);
  return out;
}

std::vector<std::size_t> power_map(const PermGroup& group, const ClassPartition& classes, std::uint64_t p) {
  if (!is_prime(p) || group.order() % p != 0)
    throw DomainError(std::to_string(p) + " is not a prime divisor of the group order");
  return power_classes(group, classes, static_cast<long long>(p));
}

ElementSet centralizer(const PermGroup& group, Elt g) {
  ElementSet out(group.order());
  for (Elt x = 0; x < group.order(); ++x)
    if (group.mul(x, g) == group.mul(g, x)) out.insert(x);
  return out;
}

ElementSet normalizer(const PermGroup& group, const ElementSet& subgroup) {
  const auto gens = subgroup_generators(group, subgroup);
  ElementSet out(group.order());
  for (Elt x = 0; x < group.order(); ++x) {
    bool normalizes = true;
    for (Elt h : gens)
      if (!subgroup.contains(group.conj(h, x))) {
        normalizes = false;
        break;
      }
    if (normalizes) out.insert(x);
  }
  return out;
}

ElementSet center(const PermGroup& group) {
  ElementSet out(group.order());
  const auto& gens = group.generator_indices();
  for (Elt x = 0; x < group.order(); ++x) {
    bool central = true;
    for (Elt s : gens)
      if (group.mul(x, s) != group.mul(s, x)) {
        central = false;
        break;
      }
    if (central) out.insert(x);
  }
  return out;
}

ElementSet normal_closure(const PermGroup& group, const std::vector<Elt>& seeds, const std::vector<Elt>& conjugators) {
  ElementSet set = group.trivial_set();
  std::vector<Elt> gens;
  std::deque<Elt> pending(seeds.begin(), seeds.end());
  while (!pending.empty()) {
    const Elt x = pending.front();
    pending.pop_front();
    if (set.contains(x)) continue;
    set = extend_subgroup(group, set, gens, x);
    gens.push_back(x);
    for (Elt c : conjugators) pending.push_back(group.conj(x, c));
  }
  return set;
}

std::vector<Elt> subgroup_generators(const PermGroup& group, const ElementSet& subgroup) {
  std::vector<Elt> members = subgroup.members();
  std::stable_sort(members.begin(), members.end(),
                   [&](Elt a, Elt b) { return group.element_order(a) > group.element_order(b); });
  const std::size_t target = members.size();
  ElementSet span = group.trivial_set();
  std::vector<Elt> gens;
  for (Elt x : members) {
    if (span.size() == target) break;
    if (span.contains(x)) continue;
    span = extend_subgroup(group, span, gens, x);
    gens.push_back(x);
  }
  return gens;
}

ElementSet commutator_subgroup(const PermGroup& group, const std::vector<Elt>& h_gens, const std::vector<Elt>& k_gens,
                               const std::vector<Elt>& ambient_gens) {
  std::vector<Elt> seeds;
  for (Elt h : h_gens)
    for (Elt k : k_gens) {
      const Elt c = group.commutator(h, k);
      if (c != PermGroup::identity()) seeds.push_back(c);
    }
  return normal_closure(group, seeds, ambient_gens);
}

ElementSet derived_subgroup(const PermGroup& group) {
  const auto& gens = group.generator_indices();
  return commutator_subgroup(group, gens, gens, gens);
}

std::string to_string(SeriesKind kind) {
  switch (kind) {
    case SeriesKind::derived: return "derived";
    case SeriesKind::lower_central: return "lower_central";
    case SeriesKind::upper_central: return "upper_central";
  }
  return "?";
}

std::vector<std::size_t> SeriesRecord::orders() const {
  std::vector<std::size_t> out;
  for (const auto& t : terms) out.push_back(t.size());
  return out;
}

SeriesRecord series(const PermGroup& group, SeriesKind kind) {
  SeriesRecord record{kind, {}};
  const auto& ggens = group.generator_indices();
  switch (kind) {
    case SeriesKind::derived: {
      record.terms.push_back(group.full_set());
      while (record.terms.back().size() > 1) {
        const auto gens = subgroup_generators(group, record.terms.back());
        ElementSet next = commutator_subgroup(group, gens, gens, gens);
        if (next == record.terms.back()) break;
        record.terms.push_back(std::move(next));
      }
      break;
    }
    case SeriesKind::lower_central: {
      record.terms.push_back(group.full_set());
      while (record.terms.back().size() > 1) {
        const auto gens = subgroup_generators(group, record.terms.back());
        ElementSet next = commutator_subgroup(group, gens, ggens, ggens);
        if (next == record.terms.back()) break;
        record.terms.push_back(std::move(next));
      }
      break;
    }
    case SeriesKind::upper_central: {
      record.terms.push_back(group.trivial_set());
      while (record.terms.back().size() < group.order()) {
        const ElementSet& prev = record.terms.back();
        ElementSet next(group.order());
        for (Elt x = 0; x < group.order(); ++x) {
          bool central_mod = true;
          for (Elt s : ggens)
            if (!prev.contains(group.commutator(x, s))) {
              central_mod = false;
              break;
            }
          if (central_mod) next.insert(x);
        }
        if (next == prev) break;
        record.terms.push_back(std::move(next));
      }
      break;
    }
  }
  return record;
}

bool is_subgroup(const PermGroup& group, const ElementSet& set) {
  if (!set.contains(PermGroup::identity())) return false;
  const auto members = set.members();
  for (Elt a : members) {
    if (!set.contains(group.inv(a))) return false;
    for (Elt b : members)
      if (!set.contains(group.mul(a, b))) return false;
  }
  return true;
}

bool is_normal(const PermGroup& group, const ElementSet& subgroup) {
  const auto gens = subgroup_generators(group, subgroup);
  for (Elt s : group.generator_indices())
    for (Elt h : gens)
      if (!subgroup.contains(group.conj(h, s))) return false;
  return true;
}

BooleanAttributes boolean_attributes(const PermGroup& group, const ClassPartition& classes) {
  BooleanAttributes a;
  const auto& gens = group.generator_indices();
  a.abelian = true;
  for (Elt x : gens)
    for (Elt y : gens)
      if (group.mul(x, y) != group.mul(y, x)) a.abelian = false;
  for (Elt e = 0; e < group.order() && !a.cyclic; ++e)
    if (group.element_order(e) == group.order()) a.cyclic = true;
  a.nilpotent = series(group, SeriesKind::lower_central).terms.back().size() == 1;
  const auto derived = series(group, SeriesKind::derived);
  a.solvable = derived.terms.back().size() == 1;
  a.perfect = derived.terms.size() == 1;
  a.elementary_abelian = a.abelian && group.order() > 1 && is_prime(group.exponent());
  if (group.order() > 1) {
    a.simple = true;
    for (const auto& c : classes.classes) {
      if (c.representative == PermGroup::identity()) continue;
      if (normal_closure(group, {c.representative}, gens).size() != group.order()) {
        a.simple = false;
        break;
      }
    }
  }
  return a;
}

std::vector<std::uint64_t> abelianization_invariants(const PermGroup& group) {
  const ElementSet derived = derived_subgroup(group);
  const std::uint64_t quotient_order = group.order() / derived.size();
  return invariants_from_counts(quotient_order, [&](std::uint64_t m) {
    std::uint64_t count = 0;
    for (Elt e = 0; e < group.order(); ++e)
      if (derived.contains(group.pow(e, static_cast<long long>(m)))) ++count;
    return count / derived.size();
  });
}

std::vector<std::uint64_t> abelian_invariants(const PermGroup& group, const ElementSet& subgroup) {
  const auto members = subgroup.members();
  return invariants_from_counts(members.size(), [&](std::uint64_t m) {
    std::uint64_t count = 0;
    for (Elt e : members)
      if (group.pow(e, static_cast<long long>(m)) == PermGroup::identity()) ++count;
    return count;
  });
}

std::vector<std::pair<std::uint64_t, int>> factorize(std::uint64_t n) {
  std::vector<std::pair<std::uint64_t, int>> out;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    out.emplace_back(p, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

bool is_prime_power(std::uint64_t n) { return factorize(n).size() == 1; }

}  // namespace grpdb
