#pragma once

// Full-scan reference evaluator for the query language. It reads GroupRecords directly and
// decides subgroup isomorphism with the brute-force oracle, so it shares neither the SQL
// translation nor the hash prefilter with run_query.

#include <algorithm>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "grpdb/query.hpp"
#include "grpdb/store.hpp"
#include "oracle.hpp"

namespace naive {

using Tri = std::optional<bool>;

struct Evaluator {
  std::vector<grpdb::GroupRecord> records;       // sorted by (order, label rank, label)
  std::map<std::string, oracle::Group> targets;  // iso name -> group

  explicit Evaluator(const grpdb::Store& store) {
    for (const auto& label : store.labels()) records.push_back(*store.get(label));
    std::sort(records.begin(), records.end(), [](const auto& a, const auto& b) {
      if (a.order != b.order) return a.order < b.order;
      if (grpdb::label_rank(a.label) != grpdb::label_rank(b.label))
        return grpdb::label_rank(a.label) < grpdb::label_rank(b.label);
      return a.label < b.label;
    });
  }

  grpdb::QueryResult run(const grpdb::QueryAST& q) const {
    grpdb::QueryResult out;
    for (const auto& r : records) {
      const Tri m = eval(r, q);
      if (!m)
        out.unknown.push_back(r.label);
      else if (*m)
        out.labels.push_back(r.label);
    }
    return out;
  }

  Tri eval(const grpdb::GroupRecord& r, const grpdb::QueryAST& q) const {
    std::vector<Tri> atoms;
    auto num = [](const grpdb::IntPredicate& p, std::uint64_t v) { return p.matches(static_cast<std::int64_t>(v)); };
    if (q.order) atoms.push_back(num(*q.order, r.order));
    if (q.exponent) atoms.push_back(num(*q.exponent, r.exponent));
    if (q.factors) {
      std::vector<int> pattern;
      for (auto [p, e] : oracle::factor(r.order)) pattern.push_back(e);
      std::sort(pattern.rbegin(), pattern.rend());
      atoms.push_back(pattern == *q.factors);
    }
    auto computed = [&](bool v) -> Tri { return r.computed ? Tri(v) : std::nullopt; };
    for (const auto& [flag, want] : q.flags) {
      const auto& a = r.attributes;
      const std::map<std::string, bool> have{{"abelian", a.abelian},   {"cyclic", a.cyclic}, {"nilpotent", a.nilpotent},
                                             {"solvable", a.solvable}, {"simple", a.simple}, {"perfect", a.perfect}};
      atoms.push_back(computed(have.at(flag) == want));
    }
    if (q.abelianization) atoms.push_back(computed(r.abelianization == *q.abelianization));
    if (q.class_count) atoms.push_back(computed(num(*q.class_count, r.class_count)));
    if (q.nilpotency_class) atoms.push_back(computed(r.nilpotency_class && num(*q.nilpotency_class, *r.nilpotency_class)));
    if (q.derived_length) atoms.push_back(computed(r.derived_length && num(*q.derived_length, *r.derived_length)));
    for (const auto& s : q.subgroups) atoms.push_back(has_subgroup(r, s));

    bool unknown = false;
    for (const Tri& t : atoms) {
      if (!t)
        unknown = true;
      else if (!*t)
        return false;
    }
    if (unknown) return std::nullopt;
    return true;
  }

  Tri has_subgroup(const grpdb::GroupRecord& r, const grpdb::SubgroupPredicate& s) const {
    if (!r.lattice) return std::nullopt;
    const auto& lat = *r.lattice;
    for (const auto& c : lat.classes) {
      if (s.normal && c.normal != *s.normal) continue;
      if (s.abelian && c.abelian != *s.abelian) continue;
      if (s.cyclic && c.cyclic != *s.cyclic) continue;
      // Maximality is only known once the whole lattice is.
      if (s.maximal && (!lat.complete || c.maximal != *s.maximal)) continue;
      if (s.index && !s.index->matches(static_cast<std::int64_t>(c.index))) continue;
      if (s.order && !s.order->matches(static_cast<std::int64_t>(c.order))) continue;
      if (s.iso && !is_iso(r, c, targets.at(*s.iso))) continue;
      return true;
    }
    if (lat.complete) return false;
    return std::nullopt;
  }

  static bool is_iso(const grpdb::GroupRecord& r, const grpdb::SubgroupClassRecord& c, const oracle::Group& target) {
    if (c.order != target.order()) return false;
    if (c.generators.empty()) return target.order() == 1;
    std::vector<oracle::Perm> gens;
    for (const auto& g : c.generators) gens.push_back(oracle::from(grpdb::Permutation::parse_cycles(g, r.degree)));
    const oracle::Group h = oracle::closure(gens);
    std::vector<int> idx;
    for (const auto& g : gens) idx.push_back(h.index(g));
    return oracle::isomorphic(h, idx, target);
  }
};

/// Seeded random conjunctions over every predicate kind. Iso names are drawn from `iso_names`.
inline grpdb::QueryAST random_query(std::mt19937& rng, const std::vector<std::string>& iso_names) {
  auto pick = [&](int n) { return static_cast<int>(std::uniform_int_distribution<int>(0, n - 1)(rng)); };
  auto int_pred = [&](std::int64_t lo, std::int64_t hi) {
    grpdb::IntPredicate p;
    p.op = static_cast<grpdb::IntPredicate::Op>(pick(6));
    p.lo = std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
    if (p.op == grpdb::IntPredicate::Op::range) p.hi = p.lo + std::uniform_int_distribution<std::int64_t>(0, hi - lo)(rng);
    return p;
  };
  grpdb::QueryAST q;
  const int atoms = 1 + pick(3);
  for (int i = 0; i < atoms; ++i) {
    switch (pick(9)) {
      case 0: q.order = int_pred(1, 64); break;
      case 1: q.exponent = int_pred(1, 24); break;
      case 2: q.factors = std::vector<std::vector<int>>{{1}, {2}, {1, 1}, {3}, {2, 1}, {3, 1}, {1, 1, 1}}[pick(7)]; break;
      case 3: q.flags[grpdb::query_flags()[pick(6)]] = pick(2) == 0; break;
      case 4:
        q.abelianization = std::vector<std::vector<std::uint64_t>>{{}, {2}, {3}, {2, 2}, {4}, {2, 6}, {6}}[pick(7)];
        break;
      case 5: q.nilpotency_class = int_pred(1, 4); break;
      case 6: q.derived_length = int_pred(1, 3); break;
      case 7: q.class_count = int_pred(1, 20); break;
      default: {
        grpdb::SubgroupPredicate s;
        if (pick(3) != 0) s.iso = iso_names[static_cast<std::size_t>(pick(static_cast<int>(iso_names.size())))];
        if (pick(2) == 0) s.normal = pick(2) == 0;
        if (pick(4) == 0) s.maximal = pick(2) == 0;
        if (pick(4) == 0) s.abelian = pick(2) == 0;
        if (pick(4) == 0) s.cyclic = pick(2) == 0;
        if (pick(4) == 0) s.index = int_pred(1, 12);
        if (!s.iso && pick(2) == 0) s.order = int_pred(1, 12);
        q.subgroups.push_back(s);
      }
    }
  }
  return q;
}

}  // namespace naive
