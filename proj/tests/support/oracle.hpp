#pragma once

// Brute-force reference implementations. They share no code with the library beyond
// reading generator lists, and favour obviousness over speed.

#include <algorithm>
#include <complex>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <queue>
#include <set>
#include <string>
#include <vector>

#include "grpdb/permutation.hpp"

namespace oracle {

using Perm = std::vector<int>;  // 0-based images

inline Perm from(const grpdb::Permutation& p) {
  Perm out(p.degree());
  for (std::size_t i = 0; i < p.degree(); ++i) out[i] = p.image(i);
  return out;
}

inline std::vector<Perm> from(const std::vector<grpdb::Permutation>& gens) {
  std::vector<Perm> out;
  for (const auto& g : gens) out.push_back(from(g));
  return out;
}

// (a*b)(x) = a(b(x)), matching the library's right-to-left convention.
inline Perm mul(const Perm& a, const Perm& b) {
  Perm out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[b[i]];
  return out;
}

inline Perm inv(const Perm& a) {
  Perm out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[a[i]] = static_cast<int>(i);
  return out;
}

inline Perm identity(std::size_t n) {
  Perm out(n);
  std::iota(out.begin(), out.end(), 0);
  return out;
}

inline std::uint64_t order_of(const Perm& a) {
  Perm x = a;
  const Perm e = identity(a.size());
  std::uint64_t k = 1;
  while (x != e) {
    x = mul(x, a);
    ++k;
  }
  return k;
}

inline Perm power(const Perm& a, std::uint64_t k) {
  Perm out = identity(a.size());
  for (std::uint64_t i = 0; i < k; ++i) out = mul(out, a);
  return out;
}

/// Naive group: sorted element list, indices into it, and a full multiplication table.
struct Group {
  std::vector<Perm> elements;
  std::vector<std::vector<int>> table;
  std::vector<int> inverse;
  int identity = 0;

  std::size_t order() const { return elements.size(); }
  int index(const Perm& p) const {
    auto it = std::lower_bound(elements.begin(), elements.end(), p);
    return it != elements.end() && *it == p ? static_cast<int>(it - elements.begin()) : -1;
  }
  int m(int a, int b) const { return table[a][b]; }
  int conj(int a, int b) const { return m(m(inverse[b], a), b); }
  int pw(int a, long long k) const {
    int r = identity;
    long long n = k % static_cast<long long>(order_of_elt(a));
    if (n < 0) n += static_cast<long long>(order_of_elt(a));
    for (long long i = 0; i < n; ++i) r = m(r, a);
    return r;
  }
  std::uint64_t order_of_elt(int a) const {
    std::uint64_t k = 1;
    for (int x = a; x != identity; x = m(x, a)) ++k;
    return k;
  }
};

inline Group closure(const std::vector<Perm>& gens) {
  std::set<Perm> seen{identity(gens.front().size())};
  std::queue<Perm> todo;
  todo.push(identity(gens.front().size()));
  while (!todo.empty()) {
    Perm x = todo.front();
    todo.pop();
    for (const auto& g : gens) {
      Perm y = mul(x, g);
      if (seen.insert(y).second) todo.push(y);
    }
  }
  Group G;
  G.elements.assign(seen.begin(), seen.end());
  const std::size_t n = G.elements.size();
  G.identity = G.index(identity(gens.front().size()));
  G.table.assign(n, std::vector<int>(n));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) G.table[a][b] = G.index(mul(G.elements[a], G.elements[b]));
  G.inverse.resize(n);
  for (std::size_t a = 0; a < n; ++a) G.inverse[a] = G.index(inv(G.elements[a]));
  return G;
}

inline Group closure(const std::vector<grpdb::Permutation>& gens) { return closure(from(gens)); }

using Subset = std::vector<int>;  // sorted element indices

inline Subset generated(const Group& G, const std::vector<int>& gens) {
  std::set<int> seen{G.identity};
  std::vector<int> todo{G.identity};
  while (!todo.empty()) {
    int x = todo.back();
    todo.pop_back();
    for (int g : gens) {
      int y = G.m(x, g);
      if (seen.insert(y).second) todo.push_back(y);
    }
  }
  return Subset(seen.begin(), seen.end());
}

inline Subset all(const Group& G) {
  Subset s(G.order());
  std::iota(s.begin(), s.end(), 0);
  return s;
}

inline bool contains(const Subset& s, int x) { return std::binary_search(s.begin(), s.end(), x); }

inline bool subset_of(const Subset& a, const Subset& b) { return std::includes(b.begin(), b.end(), a.begin(), a.end()); }

inline Subset conjugate(const Group& G, const Subset& H, int g) {
  Subset out;
  for (int h : H) out.push_back(G.conj(h, g));
  std::sort(out.begin(), out.end());
  return out;
}

inline bool is_normal(const Group& G, const Subset& H) {
  for (std::size_t g = 0; g < G.order(); ++g)
    if (conjugate(G, H, static_cast<int>(g)) != H) return false;
  return true;
}

inline std::vector<Subset> conjugacy_classes(const Group& G) {
  std::vector<bool> done(G.order(), false);
  std::vector<Subset> out;
  for (std::size_t a = 0; a < G.order(); ++a) {
    if (done[a]) continue;
    std::set<int> cls;
    for (std::size_t g = 0; g < G.order(); ++g) cls.insert(G.conj(static_cast<int>(a), static_cast<int>(g)));
    for (int c : cls) done[c] = true;
    out.emplace_back(cls.begin(), cls.end());
  }
  return out;
}

/// Every subgroup, by closing the cyclic subgroups under pairwise joins until stable.
inline std::vector<Subset> all_subgroups(const Group& G) {
  std::set<Subset> subs;
  for (std::size_t a = 0; a < G.order(); ++a) subs.insert(generated(G, {static_cast<int>(a)}));
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<Subset> list(subs.begin(), subs.end());
    for (std::size_t i = 0; i < list.size(); ++i)
      for (std::size_t j = i + 1; j < list.size(); ++j) {
        if (subset_of(list[i], list[j]) || subset_of(list[j], list[i])) continue;
        std::vector<int> gens = list[i];
        gens.insert(gens.end(), list[j].begin(), list[j].end());
        if (subs.insert(generated(G, gens)).second) grew = true;
      }
  }
  return std::vector<Subset>(subs.begin(), subs.end());
}

inline Subset commutator_subgroup(const Group& G, const Subset& A, const Subset& B) {
  std::set<int> gens;
  for (int a : A)
    for (int b : B) gens.insert(G.m(G.m(G.inverse[a], G.inverse[b]), G.m(a, b)));
  return generated(G, std::vector<int>(gens.begin(), gens.end()));
}

inline Subset center(const Group& G) {
  Subset out;
  for (std::size_t a = 0; a < G.order(); ++a) {
    bool central = true;
    for (std::size_t b = 0; b < G.order() && central; ++b)
      central = G.m(static_cast<int>(a), static_cast<int>(b)) == G.m(static_cast<int>(b), static_cast<int>(a));
    if (central) out.push_back(static_cast<int>(a));
  }
  return out;
}

inline std::vector<std::size_t> derived_series_orders(const Group& G) {
  std::vector<std::size_t> out;
  Subset H = all(G);
  while (true) {
    out.push_back(H.size());
    Subset next = commutator_subgroup(G, H, H);
    if (next == H) break;
    H = next;
  }
  return out;
}

inline std::vector<std::size_t> lower_central_orders(const Group& G) {
  std::vector<std::size_t> out;
  const Subset whole = all(G);
  Subset H = whole;
  while (true) {
    out.push_back(H.size());
    Subset next = commutator_subgroup(G, H, whole);
    if (next == H) break;
    H = next;
  }
  return out;
}

struct Attributes {
  bool abelian, cyclic, nilpotent, solvable, simple, perfect;
  std::optional<std::uint32_t> nilpotency_class;
  std::optional<std::uint32_t> derived_length;
  std::uint64_t exponent;
  std::size_t class_count;
};

inline Attributes attributes(const Group& G) {
  Attributes a{};
  const std::size_t n = G.order();
  a.abelian = center(G).size() == n;
  a.exponent = 1;
  a.cyclic = false;
  for (std::size_t x = 0; x < n; ++x) {
    const std::uint64_t o = G.order_of_elt(static_cast<int>(x));
    a.exponent = std::lcm(a.exponent, o);
    if (o == n) a.cyclic = true;
  }
  const auto lc = lower_central_orders(G);
  a.nilpotent = lc.back() == 1;
  if (a.nilpotent) a.nilpotency_class = static_cast<std::uint32_t>(lc.size() - 1);
  const auto ds = derived_series_orders(G);
  a.solvable = ds.back() == 1;
  if (a.solvable) a.derived_length = static_cast<std::uint32_t>(ds.size() - 1);
  a.perfect = commutator_subgroup(G, all(G), all(G)).size() == n;
  const auto classes = conjugacy_classes(G);
  a.class_count = classes.size();
  // Simple: the normal closure of every non-identity class is the whole group.
  a.simple = n > 1;
  for (const auto& c : classes) {
    if (!a.simple) break;
    if (c.front() == G.identity) continue;
    if (generated(G, c).size() != n) a.simple = false;
  }
  return a;
}

inline std::vector<std::pair<std::uint64_t, int>> factor(std::uint64_t n) {
  std::vector<std::pair<std::uint64_t, int>> out;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    if (e) out.emplace_back(p, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

/// Invariant factors of G/G' from counts of elements killed by each prime power.
inline std::vector<std::uint64_t> abelianization(const Group& G) {
  const Subset D = commutator_subgroup(G, all(G), all(G));
  // Cosets of D: each element maps to its coset's minimal member.
  std::vector<int> coset(G.order(), -1);
  std::vector<int> reps;
  for (std::size_t g = 0; g < G.order(); ++g) {
    if (coset[g] >= 0) continue;
    for (int d : D) coset[G.m(static_cast<int>(g), d)] = static_cast<int>(g);
    reps.push_back(static_cast<int>(g));
  }
  const std::uint64_t q = reps.size();
  std::map<std::uint64_t, std::vector<int>> parts;  // prime -> exponents, descending
  for (auto [p, e] : factor(q)) {
    // log_p |Q[p^k]| for k = 0..e; the partition's conjugate is its first difference.
    std::vector<int> logs;
    std::uint64_t pk = 1;
    for (int k = 0; k <= e; ++k) {
      std::size_t count = 0;
      for (int r : reps)
        if (coset[G.pw(r, static_cast<long long>(pk))] == coset[G.identity]) ++count;
      int l = 0;
      while (count > 1) {
        count /= p;
        ++l;
      }
      logs.push_back(l);
      pk *= p;
    }
    std::vector<int> conj;
    for (int k = 1; k <= e; ++k) conj.push_back(logs[k] - logs[k - 1]);
    std::vector<int> exps;
    for (int i = 1; i <= (conj.empty() ? 0 : conj[0]); ++i) {
      int len = 0;
      for (int c : conj)
        if (c >= i) ++len;
      exps.push_back(len);
    }
    parts[p] = exps;
  }
  std::size_t length = 0;
  for (auto& [p, e] : parts) length = std::max(length, e.size());
  std::vector<std::uint64_t> out(length, 1);
  for (auto& [p, e] : parts)
    for (std::size_t i = 0; i < e.size(); ++i) {
      std::uint64_t v = 1;
      for (int k = 0; k < e[i]; ++k) v *= p;
      out[length - 1 - i] *= v;
    }
  return out;
}

/// Checks that sending src_gens[i] to dst_gens[i] extends to a bijective homomorphism
/// between the naive groups, by breadth-first search over words.
inline bool is_isomorphism(const Group& A, const std::vector<int>& src_gens, const Group& B,
                           const std::vector<int>& dst_gens) {
  if (A.order() != B.order() || src_gens.size() != dst_gens.size()) return false;
  std::vector<int> map(A.order(), -1);
  map[A.identity] = B.identity;
  std::vector<int> todo{A.identity};
  while (!todo.empty()) {
    int x = todo.back();
    todo.pop_back();
    for (std::size_t i = 0; i < src_gens.size(); ++i) {
      const int y = A.m(x, src_gens[i]);
      const int fy = B.m(map[x], dst_gens[i]);
      if (map[y] < 0) {
        map[y] = fy;
        todo.push_back(y);
      } else if (map[y] != fy) {
        return false;
      }
    }
  }
  std::set<int> image;
  for (int v : map) {
    if (v < 0) return false;
    image.insert(v);
  }
  if (image.size() != B.order()) return false;
  for (std::size_t a = 0; a < A.order(); ++a)
    for (std::size_t b = 0; b < A.order(); ++b)
      if (map[A.m(static_cast<int>(a), static_cast<int>(b))] != B.m(map[a], map[b])) return false;
  return true;
}

/// Searches images of `src_gens` in B, matching element orders, for an isomorphism A -> B.
inline bool isomorphic(const Group& A, const std::vector<int>& src_gens, const Group& B) {
  if (A.order() != B.order()) return false;
  if (src_gens.empty()) return true;
  std::vector<int> dst(src_gens.size());
  auto search = [&](auto&& self, std::size_t i) -> bool {
    if (i == src_gens.size()) return is_isomorphism(A, src_gens, B, dst);
    const auto want = A.order_of_elt(src_gens[i]);
    for (std::size_t y = 0; y < B.order(); ++y) {
      if (B.order_of_elt(static_cast<int>(y)) != want) continue;
      dst[i] = static_cast<int>(y);
      if (self(self, i + 1)) return true;
    }
    return false;
  };
  return search(search, 0);
}

/// Complex value of a cyclotomic rendered like `-1`, `2*z5^3`, `z8 - z8^3`, `1/2*z3`.
inline std::complex<double> eval_cyclotomic(const std::string& text) {
  const double tau = 6.283185307179586476925286766559;
  std::complex<double> total = 0;
  std::size_t i = 0;
  auto skip = [&] {
    while (i < text.size() && text[i] == ' ') ++i;
  };
  auto number = [&]() -> std::uint64_t {
    std::uint64_t v = 0;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) v = v * 10 + (text[i++] - '0');
    return v;
  };
  int sign = 1;
  skip();
  while (i < text.size()) {
    if (text[i] == '-') {
      sign = -sign;
      ++i;
      skip();
      continue;
    }
    if (text[i] == '+') {
      ++i;
      skip();
      continue;
    }
    double coeff = 1;
    if (std::isdigit(static_cast<unsigned char>(text[i]))) {
      coeff = static_cast<double>(number());
      if (i < text.size() && text[i] == '/') {
        ++i;
        coeff /= static_cast<double>(number());
      }
      if (i < text.size() && text[i] == '*') ++i;
    }
    std::complex<double> root = 1;
    if (i < text.size() && text[i] == 'z') {
      ++i;
      const std::uint64_t n = number();
      std::uint64_t k = 1;
      if (i < text.size() && text[i] == '^') {
        ++i;
        k = number();
      }
      root = std::polar(1.0, tau * static_cast<double>(k) / static_cast<double>(n));
    }
    total += static_cast<double>(sign) * coeff * root;
    sign = 1;
    skip();
  }
  return total;
}

}  // namespace oracle
