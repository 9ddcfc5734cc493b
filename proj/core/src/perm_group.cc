#include "grpdb/perm_group.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <unordered_map>

#include "grpdb/error.hpp"

namespace grpdb {

PermGroup PermGroup::generate(std::vector<Permutation> generators, std::size_t cap) {
  if (generators.empty()) throw StructuralError("a group needs at least one generator");
  const std::size_t degree = generators.front().degree();
  for (const auto& g : generators)
    if (g.degree() != degree) throw StructuralError("generators have different degrees");

  // Breadth-first closure under right multiplication by generators. Each discovered
  // element remembers (parent, generator) so table rows can later be filled by lookups.
  std::unordered_map<Permutation, std::size_t, PermutationHash> bfs_index;
  std::vector<Permutation> bfs_order;
  std::vector<std::pair<std::size_t, std::size_t>> parent;
  auto visit = [&](Permutation p, std::size_t from, std::size_t gen) {
    auto [it, inserted] = bfs_index.try_emplace(std::move(p), bfs_order.size());
    if (!inserted) return;
    if (bfs_order.size() >= cap)
      throw BudgetExceeded("element enumeration exceeded cap of " + std::to_string(cap));
    bfs_order.push_back(it->first);
    parent.emplace_back(from, gen);
  };
  visit(Permutation::identity(degree), 0, 0);
  for (std::size_t pos = 0; pos < bfs_order.size(); ++pos)
    for (std::size_t s = 0; s < generators.size(); ++s) visit(bfs_order[pos] * generators[s], pos, s);

  const std::size_t n = bfs_order.size();
  std::vector<std::size_t> by_rank(n);
  std::iota(by_rank.begin(), by_rank.end(), std::size_t{0});
  std::sort(by_rank.begin(), by_rank.end(), [&](std::size_t a, std::size_t b) { return bfs_order[a] < bfs_order[b]; });
  std::vector<Elt> rank_of_bfs(n);
  for (std::size_t r = 0; r < n; ++r) rank_of_bfs[by_rank[r]] = static_cast<Elt>(r);

  PermGroup group;
  group.degree_ = degree;
  group.elements_.reserve(n);
  for (std::size_t r = 0; r < n; ++r) group.elements_.push_back(bfs_order[by_rank[r]]);

  auto lookup = [&](const Permutation& p) { return rank_of_bfs[bfs_index.at(p)]; };

  if (n <= kMultiplicationTableLimit) {
    const std::size_t k = generators.size();
    std::vector<Elt> right_gen(n * k);
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t s = 0; s < k; ++s) right_gen[x * k + s] = lookup(group.elements_[x] * generators[s]);
    group.table_.resize(n * n);
    for (std::size_t a = 0; a < n; ++a) {
      Elt* row = &group.table_[a * n];
      row[rank_of_bfs[0]] = static_cast<Elt>(a);
      for (std::size_t pos = 1; pos < n; ++pos) {
        const auto [from, s] = parent[pos];
        row[rank_of_bfs[pos]] = right_gen[row[rank_of_bfs[from]] * k + s];
      }
    }
  }
  group.inverses_.resize(n);
  group.orders_.resize(n);
  for (Elt a = 0; a < n; ++a) {
    group.inverses_[a] = lookup(group.elements_[a].inverse());
    group.orders_[a] = static_cast<std::uint32_t>(group.elements_[a].order());
    group.exponent_ = std::lcm(group.exponent_, std::uint64_t{group.orders_[a]});
  }
  for (const auto& g : generators) group.generator_indices_.push_back(lookup(g));
  group.generators_ = std::move(generators);
  return group;
}

std::optional<Elt> PermGroup::find(const Permutation& p) const {
  if (p.degree() != degree_) return std::nullopt;
  auto it = std::lower_bound(elements_.begin(), elements_.end(), p);
  if (it == elements_.end() || *it != p) return std::nullopt;
  return static_cast<Elt>(it - elements_.begin());
}

Elt PermGroup::index_of(const Permutation& p) const {
  if (auto e = find(p)) return *e;
  throw MembershipError("permutation " + p.cycles() + " is not an element of the group");
}

Elt PermGroup::mul(Elt a, Elt b) const {
  if (!table_.empty()) return table_[static_cast<std::size_t>(a) * elements_.size() + b];
  return index_of(elements_[a] * elements_[b]);
}

Elt PermGroup::pow(Elt a, long long k) const {
  const long long n = orders_[a];
  k %= n;
  if (k < 0) k += n;
  Elt result = identity();
  Elt base = a;
  while (k) {
    if (k & 1) result = mul(result, base);
    base = mul(base, base);
    k >>= 1;
  }
  return result;
}

ElementSet PermGroup::full_set() const {
  ElementSet s(order());
  for (Elt e = 0; e < order(); ++e) s.insert(e);
  return s;
}

ElementSet PermGroup::trivial_set() const {
  ElementSet s(order());
  s.insert(identity());
  return s;
}

std::string PermGroup::canonical_serialization() const {
  std::string out = "degree " + std::to_string(degree_) + "\n";
  for (const auto& g : generators_) {
    for (std::size_t i = 0; i < g.degree(); ++i) {
      if (i) out += ',';
      out += std::to_string(g.image(i) + 1);
    }
    out += '\n';
  }
  return out;
}

boost::multiprecision::cpp_int lehmer_rank(const Permutation& p) {
  const std::size_t n = p.degree();
  boost::multiprecision::cpp_int rank = 0;
  std::vector<bool> used(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    const auto x = p.image(i);
    std::size_t smaller_unused = 0;
    for (std::size_t y = 0; y < x; ++y)
      if (!used[y]) ++smaller_unused;
    used[x] = true;
    rank = rank * (n - i) + smaller_unused;
  }
  return rank;
}

boost::multiprecision::cpp_int element_rank(const PermGroup& group, const Permutation& g) {
  group.index_of(g);
  return lehmer_rank(g);
}

ElementSet generate_subgroup(const PermGroup& group, std::span<const Elt> gens) {
  ElementSet set = group.trivial_set();
  std::vector<Elt> current_gens;
  for (Elt g : gens) {
    if (set.contains(g)) continue;
    set = extend_subgroup(group, set, current_gens, g);
    current_gens.push_back(g);
  }
  return set;
}

ElementSet extend_subgroup(const PermGroup& group, const ElementSet& base, std::span<const Elt> base_gens, Elt extra) {
  if (base.contains(extra)) return base;
  // Dimino: the result is a union of right cosets H*r; new coset representatives are
  // discovered by multiplying known representatives by every generator.
  const std::vector<Elt> base_members = base.members();
  ElementSet result = base;
  std::vector<Elt> reps{PermGroup::identity()};
  std::vector<Elt> all_gens(base_gens.begin(), base_gens.end());
  all_gens.push_back(extra);

  auto add_coset = [&](Elt r) {
    reps.push_back(r);
    for (Elt h : base_members) result.insert(group.mul(h, r));
  };
  add_coset(extra);
  for (std::size_t pos = 1; pos < reps.size(); ++pos) {
    const Elt r = reps[pos];
    for (Elt s : all_gens) {
      const Elt e = group.mul(r, s);
      if (!result.contains(e)) add_coset(e);
    }
  }
  return result;
}

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

namespace {
constexpr std::size_t kSlots = 10;
constexpr int kWarmup = 50;
}  // namespace

PseudoRandomStream::PseudoRandomStream(const PermGroup& group)
    : group_(&group), state_(fnv1a64(group.canonical_serialization())), accumulator_(PermGroup::identity()) {
  const auto& gens = group.generator_indices();
  for (std::size_t i = 0; i < kSlots; ++i) slots_.push_back(gens[i % gens.size()]);
  for (int i = 0; i < kWarmup; ++i) next();
}

std::uint64_t PseudoRandomStream::draw() {
  state_ += 0x9e3779b97f4a7c15ull;
  return splitmix64(state_);
}

Elt PseudoRandomStream::next() {
  const std::size_t i = draw() % kSlots;
  std::size_t j = draw() % (kSlots - 1);
  if (j >= i) ++j;
  const std::uint64_t bits = draw();
  const Elt operand = (bits & 1) ? group_->inv(slots_[j]) : slots_[j];
  slots_[i] = (bits & 2) ? group_->mul(operand, slots_[i]) : group_->mul(slots_[i], operand);
  accumulator_ = group_->mul(accumulator_, slots_[i]);
  return accumulator_;
}

std::vector<Elt> pseudo_random_elements(const PermGroup& group, std::size_t count) {
  std::vector<Elt> out;
  if (count == 0) return out;
  PseudoRandomStream stream(group);
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(stream.next());
  return out;
}

std::vector<Elt> pseudo_random_order(const PermGroup& group, const ElementSet& set) {
  const std::uint64_t key = fnv1a64(group.canonical_serialization());
  std::vector<std::pair<std::uint64_t, Elt>> keyed;
  set.for_each([&](Elt e) { keyed.emplace_back(splitmix64(key ^ splitmix64(e)), e); });
  std::sort(keyed.begin(), keyed.end());
  std::vector<Elt> out;
  out.reserve(keyed.size());
  for (const auto& [k, e] : keyed) out.push_back(e);
  return out;
}

}  // namespace grpdb
