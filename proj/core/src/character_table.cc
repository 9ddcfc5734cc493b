#include "grpdb/character_table.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_map>

#include "cyclotomic_detail.hpp"
#include "grpdb/error.hpp"
#include "union_find.hpp"

namespace grpdb {

namespace {

using u64 = std::uint64_t;
using Vec = std::vector<u64>;
using Mat = std::vector<Vec>;

class Field {
 public:
  explicit Field(u64 p) : p_(p) {}
  u64 p() const { return p_; }
  u64 add(u64 a, u64 b) const { return (a + b) % p_; }
  u64 sub(u64 a, u64 b) const { return (a + p_ - b) % p_; }
  u64 mul(u64 a, u64 b) const { return a * b % p_; }
  u64 pow(u64 a, u64 k) const {
    u64 r = 1;
    a %= p_;
    while (k) {
      if (k & 1) r = mul(r, a);
      a = mul(a, a);
      k >>= 1;
    }
    return r;
  }
  u64 inv(u64 a) const {
    if (a % p_ == 0) throw StructuralError("character table: division by zero mod p");
    return pow(a, p_ - 2);
  }

 private:
  u64 p_;
};

bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

u64 choose_prime(u64 order, u64 exponent) {
  const u64 root = static_cast<u64>(std::ceil(std::sqrt(static_cast<double>(order))));
  const u64 bound = 2 * root * order;
  u64 p = bound / exponent * exponent + 1;
  while (p <= bound || !is_prime(p)) p += exponent;
  return p;
}

u64 primitive_root(const Field& f) {
  const u64 p = f.p();
  const auto factors = factorize(p - 1);
  for (u64 g = 2; g < p; ++g) {
    bool ok = true;
    for (const auto& [q, e] : factors) {
      if (f.pow(g, (p - 1) / q) == 1) {
        ok = false;
        break;
      }
    }
    if (ok) return g;
  }
  return 1;
}

/// Reduced row echelon form in place; returns pivot columns.
std::vector<std::size_t> row_reduce(const Field& f, Mat& m, std::size_t cols) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t c = 0; c < cols && row < m.size(); ++c) {
    std::size_t sel = row;
    while (sel < m.size() && m[sel][c] == 0) ++sel;
    if (sel == m.size()) continue;
    std::swap(m[sel], m[row]);
    const u64 iv = f.inv(m[row][c]);
    for (u64& x : m[row]) x = f.mul(x, iv);
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == row || m[i][c] == 0) continue;
      const u64 t = m[i][c];
      for (std::size_t j = 0; j < cols; ++j) m[i][j] = f.sub(m[i][j], f.mul(t, m[row][j]));
    }
    pivots.push_back(c);
    ++row;
  }
  m.resize(row);
  return pivots;
}

/// Basis of {x : m x = 0} for a square matrix.
std::vector<Vec> nullspace(const Field& f, Mat m) {
  const std::size_t k = m.size();
  const std::vector<std::size_t> pivots = row_reduce(f, m, k);
  std::vector<bool> is_pivot(k, false);
  for (std::size_t c : pivots) is_pivot[c] = true;
  std::vector<Vec> basis;
  for (std::size_t free = 0; free < k; ++free) {
    if (is_pivot[free]) continue;
    Vec v(k, 0);
    v[free] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = f.sub(0, m[i][free]);
    basis.push_back(std::move(v));
  }
  return basis;
}

/// Characteristic polynomial (low to high, monic) through Hessenberg form.
Vec charpoly(const Field& f, Mat h) {
  const std::size_t n = h.size();
  for (std::size_t m = 1; m + 1 < n; ++m) {
    std::size_t i = m;
    while (i < n && h[i][m - 1] == 0) ++i;
    if (i == n) continue;
    if (i != m) {
      std::swap(h[i], h[m]);
      for (std::size_t r = 0; r < n; ++r) std::swap(h[r][i], h[r][m]);
    }
    const u64 iv = f.inv(h[m][m - 1]);
    for (std::size_t i2 = m + 1; i2 < n; ++i2) {
      const u64 u = f.mul(h[i2][m - 1], iv);
      if (u == 0) continue;
      for (std::size_t j = 0; j < n; ++j) h[i2][j] = f.sub(h[i2][j], f.mul(u, h[m][j]));
      for (std::size_t r = 0; r < n; ++r) h[r][m] = f.add(h[r][m], f.mul(u, h[r][i2]));
    }
  }
  std::vector<Vec> poly(n + 1);
  poly[0] = {1};
  for (std::size_t m = 1; m <= n; ++m) {
    Vec next(m + 1, 0);
    const Vec& prev = poly[m - 1];
    for (std::size_t d = 0; d < prev.size(); ++d) {
      next[d + 1] = f.add(next[d + 1], prev[d]);
      next[d] = f.sub(next[d], f.mul(h[m - 1][m - 1], prev[d]));
    }
    u64 t = 1;
    for (std::size_t i = 1; i < m; ++i) {
      t = f.mul(t, h[m - i][m - i - 1]);
      const u64 coef = f.mul(t, h[m - i - 1][m - 1]);
      const Vec& q = poly[m - i - 1];
      for (std::size_t d = 0; d < q.size(); ++d) next[d] = f.sub(next[d], f.mul(coef, q[d]));
    }
    poly[m] = std::move(next);
  }
  return poly[n];
}

/// f / (x - root), dropping the (zero) remainder.
Vec deflate(const Field& f, const Vec& poly, u64 root) {
  const std::size_t n = poly.size() - 1;
  Vec q(n, 0);
  u64 carry = 0;
  for (std::size_t d = n; d-- > 0;) {
    carry = f.add(poly[d + 1], f.mul(carry, root));
    q[d] = carry;
  }
  return q;
}

u64 evaluate(const Field& f, const Vec& poly, u64 x) {
  u64 r = 0;
  for (std::size_t d = poly.size(); d-- > 0;) r = f.add(f.mul(r, x), poly[d]);
  return r;
}

class SplitMix {
 public:
  explicit SplitMix(u64 seed) : s_(seed) {}
  u64 next() { return splitmix64(s_++); }

 private:
  u64 s_;
};

struct Subspace {
  std::vector<Vec> basis;  // columns in F_p^r, reduced: basis[j][pivot[i]] = delta_ij
  std::vector<std::size_t> pivot;
};

Subspace make_subspace(const Field& f, std::vector<Vec> vectors, std::size_t r) {
  const std::vector<std::size_t> piv = row_reduce(f, vectors, r);
  return {std::move(vectors), piv};
}

/// Dixon-Schneider splitting; returns the central character vectors (omega[class]).
std::vector<Vec> central_characters(const PermGroup& group, const ClassPartition& classes, const Field& f) {
  const std::size_t r = classes.count();
  SplitMix rng(fnv1a64(group.canonical_serialization()));
  std::vector<Elt> rep_inv(group.order());
  for (Elt x = 0; x < group.order(); ++x) rep_inv[x] = group.inv(x);

  auto combination = [&]() {
    Vec c(r);
    for (u64& x : c) x = rng.next() % f.p();
    Mat a(r, Vec(r, 0));
    for (std::size_t l = 0; l < r; ++l) {
      const Elt z = classes.classes[l].representative;
      for (Elt x = 0; x < group.order(); ++x) {
        const std::size_t k = classes.class_of[group.mul(rep_inv[x], z)];
        a[k][l] = f.add(a[k][l], c[classes.class_of[x]]);
      }
    }
    return a;
  };

  std::vector<Vec> omegas;
  std::vector<Subspace> stack;
  {
    std::vector<Vec> id(r, Vec(r, 0));
    for (std::size_t i = 0; i < r; ++i) id[i][i] = 1;
    stack.push_back(make_subspace(f, std::move(id), r));
  }
  int stalls = 0;
  while (!stack.empty()) {
    Subspace space = std::move(stack.back());
    stack.pop_back();
    const std::size_t k = space.basis.size();
    if (k == 1) {
      Vec v = space.basis[0];
      const u64 iv = f.inv(v[0]);
      for (u64& x : v) x = f.mul(x, iv);
      omegas.push_back(std::move(v));
      continue;
    }
    const Mat a = combination();
    Mat restricted(k, Vec(k, 0));  // restricted[i][j] = (A b_j)[pivot_i]
    for (std::size_t j = 0; j < k; ++j) {
      for (std::size_t i = 0; i < k; ++i) {
        const std::size_t row = space.pivot[i];
        u64 s = 0;
        for (std::size_t t = 0; t < r; ++t) {
          if (space.basis[j][t]) s = f.add(s, f.mul(a[row][t], space.basis[j][t]));
        }
        restricted[i][j] = s;
      }
    }
    const Vec poly = charpoly(f, restricted);
    std::vector<std::pair<u64, std::size_t>> roots;
    std::size_t found = 0;
    {
      Vec rest = poly;
      for (u64 x = 0; x < f.p() && found < k; ++x) {
        std::size_t mult = 0;
        while (rest.size() > 1 && evaluate(f, rest, x) == 0) {
          rest = deflate(f, rest, x);
          ++mult;
        }
        if (mult) {
          roots.emplace_back(x, mult);
          found += mult;
        }
      }
    }
    if (found != k) throw StructuralError("character table: class matrix does not split over F_p");
    if (roots.size() == 1) {
      if (++stalls > 200) throw StructuralError("character table: eigenspace splitting stalled");
      stack.push_back(std::move(space));
      continue;
    }

    // Krylov basis K_i = A'^i u; for a simple root, q(A') u with q = f / (x - root) is an eigenvector.
    Mat krylov(k, Vec(k, 0));
    for (u64& x : krylov[0]) x = rng.next() % f.p();
    for (std::size_t i = 1; i < k; ++i) {
      for (std::size_t row = 0; row < k; ++row) {
        u64 s = 0;
        for (std::size_t t = 0; t < k; ++t) s = f.add(s, f.mul(restricted[row][t], krylov[i - 1][t]));
        krylov[i][row] = s;
      }
    }
    auto lift = [&](const std::vector<Vec>& coords) {
      std::vector<Vec> out;
      for (const Vec& w : coords) {
        Vec v(r, 0);
        for (std::size_t j = 0; j < k; ++j) {
          if (w[j] == 0) continue;
          for (std::size_t t = 0; t < r; ++t) v[t] = f.add(v[t], f.mul(w[j], space.basis[j][t]));
        }
        out.push_back(std::move(v));
      }
      return out;
    };
    for (const auto& [lambda, mult] : roots) {
      std::vector<Vec> coords;
      if (mult == 1) {
        const Vec q = deflate(f, poly, lambda);
        Vec w(k, 0);
        for (std::size_t i = 0; i < k; ++i) {
          if (q[i] == 0) continue;
          for (std::size_t t = 0; t < k; ++t) w[t] = f.add(w[t], f.mul(q[i], krylov[i][t]));
        }
        if (std::any_of(w.begin(), w.end(), [](u64 x) { return x != 0; })) coords.push_back(std::move(w));
      }
      if (coords.empty()) {
        Mat shifted = restricted;
        for (std::size_t i = 0; i < k; ++i) shifted[i][i] = f.sub(shifted[i][i], lambda);
        coords = nullspace(f, std::move(shifted));
      }
      if (coords.size() != mult) throw StructuralError("character table: class algebra is not diagonalizable mod p");
      stack.push_back(make_subspace(f, lift(coords), r));
    }
  }
  return omegas;
}

u64 isqrt_exact(u64 v) {
  u64 s = static_cast<u64>(std::llround(std::sqrt(static_cast<double>(v))));
  while (s * s > v) --s;
  while ((s + 1) * (s + 1) <= v) ++s;
  return s * s == v ? s : 0;
}

/// Exact sum of multisets, reduced to the tensor basis.
class ExactSum {
 public:
  explicit ExactSum(u64 e) : e_(e), exp_(detail::root_expansions(e)), acc_(e, 0) {}

  void add(std::uint32_t l, long long c) { acc_[l % e_] += c; }
  void add(const EigenMultiset& m, long long w, std::uint32_t shift = 0) {
    for (const auto& [l, c] : m) acc_[(l + shift) % e_] += w * static_cast<long long>(c);
  }

  /// Rational integer value if the accumulated sum is rational; resets the accumulator.
  std::optional<long long> take_integer() {
    std::vector<long long> v(exp_.dim, 0);
    for (u64 l = 0; l < e_; ++l) {
      if (acc_[l] == 0) continue;
      for (const auto& [i, s] : exp_.terms[l]) v[i] += s * acc_[l];
      acc_[l] = 0;
    }
    for (std::size_t i = 1; i < v.size(); ++i) {
      if (v[i] != 0) return std::nullopt;
    }
    return v[0];
  }

 private:
  u64 e_;
  detail::RootExpansion exp_;
  std::vector<long long> acc_;
};

EigenMultiset power(const EigenMultiset& m, u64 e, u64 k) {
  std::map<std::uint32_t, std::uint32_t> acc;
  for (const auto& [l, c] : m) acc[static_cast<std::uint32_t>((l * k) % e)] += c;
  return EigenMultiset(acc.begin(), acc.end());
}

}  // namespace

RawCharacterTable character_table(const PermGroup& group, const ClassPartition& classes, std::size_t budget) {
  if (group.order() > budget) {
    throw BudgetExceeded("character table: order " + std::to_string(group.order()) + " exceeds budget " +
                         std::to_string(budget));
  }
  RawCharacterTable table;
  const std::size_t r = classes.count();
  const u64 n = group.order();
  const u64 e = group.exponent();
  table.exponent = e;
  table.prime = choose_prime(n, e);
  const Field f(table.prime);
  const u64 omega_e = f.pow(primitive_root(f), (f.p() - 1) / e);

  std::vector<std::size_t> inverse_class(r);
  for (std::size_t k = 0; k < r; ++k) inverse_class[k] = classes.class_of[group.inv(classes.classes[k].representative)];

  std::vector<Vec> values;  // chi mod p, per row and class
  for (const Vec& w : central_characters(group, classes, f)) {
    u64 s = 0;
    for (std::size_t k = 0; k < r; ++k) s = f.add(s, f.mul(f.mul(w[k], w[inverse_class[k]]), f.inv(classes.classes[k].size)));
    const u64 d = isqrt_exact(f.mul(n % f.p(), f.inv(s)));
    if (d == 0 || n % d != 0) throw StructuralError("character table: degree lift failed");
    Vec chi(r);
    for (std::size_t k = 0; k < r; ++k) chi[k] = f.mul(f.mul(w[k], d), f.inv(classes.classes[k].size));
    table.degrees.push_back(d);
    values.push_back(std::move(chi));
  }

  // Eigenvalue multiplicities by inverse Fourier transform on <g>, one class per division;
  // other classes of the division are coprime powers of it.
  std::vector<std::size_t> source(r, r);
  std::vector<u64> source_power(r, 1);
  for (std::size_t c = 0; c < r; ++c) {
    if (source[c] != r) continue;
    const Elt g = classes.classes[c].representative;
    const u64 o = classes.classes[c].element_order;
    Elt x = g;
    for (u64 j = 1; j <= o; ++j, x = group.mul(x, g)) {
      if (std::gcd(j, o) != 1) continue;
      const std::size_t cj = classes.class_of[x];
      if (source[cj] == r) {
        source[cj] = c;
        source_power[cj] = j;
      }
    }
  }
  std::unordered_map<u64, std::uint32_t> dlog;  // omega_e^l -> l
  {
    u64 x = 1;
    for (u64 l = 0; l < e; ++l, x = f.mul(x, omega_e)) dlog[x] = static_cast<std::uint32_t>(l);
  }

  table.eigen.assign(values.size(), std::vector<EigenMultiset>(r));
  for (std::size_t c = 0; c < r; ++c) {
    if (source[c] != c) continue;
    const Elt g = classes.classes[c].representative;
    const u64 o = classes.classes[c].element_order;
    const u64 scale = e / o;
    std::vector<std::size_t> power_class(o);
    Elt x = PermGroup::identity();
    for (u64 j = 0; j < o; ++j, x = group.mul(x, g)) power_class[j] = classes.class_of[x];
    const u64 omega_o = f.pow(omega_e, scale);
    Vec root(o);
    root[0] = 1;
    for (u64 t = 1; t < o; ++t) root[t] = f.mul(root[t - 1], omega_o);
    const u64 inv_o = f.inv(o % f.p());
    for (std::size_t i = 0; i < values.size(); ++i) {
      EigenMultiset m;
      if (table.degrees[i] == 1) {
        auto it = dlog.find(values[i][c]);
        if (it == dlog.end()) throw StructuralError("character table: linear value is not a root of unity");
        m.emplace_back(it->second, 1);
      } else {
        for (u64 l = 0; l < o; ++l) {
          u64 s = 0;
          for (u64 j = 0; j < o; ++j) s = f.add(s, f.mul(values[i][power_class[j]], root[(o - (j * l) % o) % o]));
          const u64 mult = f.mul(s, inv_o);
          if (mult > table.degrees[i]) throw StructuralError("character table: eigenvalue multiplicity lift failed");
          if (mult) m.emplace_back(static_cast<std::uint32_t>(l * scale), static_cast<std::uint32_t>(mult));
        }
      }
      table.eigen[i][c] = std::move(m);
    }
  }
  for (std::size_t c = 0; c < r; ++c) {
    if (source[c] == c) continue;
    for (std::size_t i = 0; i < values.size(); ++i) table.eigen[i][c] = power(table.eigen[i][source[c]], e, source_power[c]);
  }

  std::map<EigenMultiset, Cyclotomic> cache;
  table.values.assign(values.size(), std::vector<Cyclotomic>(r));
  for (std::size_t i = 0; i < values.size(); ++i) {
    for (std::size_t c = 0; c < r; ++c) {
      const EigenMultiset& m = table.eigen[i][c];
      auto it = cache.find(m);
      if (it == cache.end()) {
        std::vector<long long> coeff(e, 0);
        for (const auto& [l, cnt] : m) coeff[l] += cnt;
        it = cache.emplace(m, Cyclotomic::from_roots(e, coeff)).first;
      }
      table.values[i][c] = it->second;
    }
  }
  if (table.degrees.size() != r || !rows_orthonormal(group, classes, table)) {
    throw StructuralError("character table: orthogonality check failed");
  }
  return table;
}

bool rows_orthonormal(const PermGroup& group, const ClassPartition& classes, const RawCharacterTable& table) {
  const u64 e = table.exponent;
  ExactSum sum(e);
  const std::size_t rows = table.eigen.size();
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = i; j < rows; ++j) {
      for (std::size_t c = 0; c < classes.count(); ++c) {
        const long long w = static_cast<long long>(classes.classes[c].size);
        for (const auto& [l1, m1] : table.eigen[i][c]) {
          for (const auto& [l2, m2] : table.eigen[j][c]) {
            sum.add(static_cast<std::uint32_t>((l1 + e - l2) % e), w * m1 * m2);
          }
        }
      }
      const auto v = sum.take_integer();
      const long long expect = i == j ? static_cast<long long>(group.order()) : 0;
      if (!v || *v != expect) return false;
    }
  }
  return true;
}

bool columns_orthogonal(const PermGroup& group, const ClassPartition& classes, const RawCharacterTable& table) {
  const u64 e = table.exponent;
  ExactSum sum(e);
  const std::size_t r = classes.count();
  for (std::size_t a = 0; a < r; ++a) {
    for (std::size_t b = a; b < r; ++b) {
      for (std::size_t i = 0; i < table.eigen.size(); ++i) {
        for (const auto& [l1, m1] : table.eigen[i][a]) {
          for (const auto& [l2, m2] : table.eigen[i][b]) sum.add(static_cast<std::uint32_t>((l1 + e - l2) % e), m1 * m2);
        }
      }
      const auto v = sum.take_integer();
      const long long expect = a == b ? static_cast<long long>(group.order() / classes.classes[a].size) : 0;
      if (!v || *v != expect) return false;
    }
  }
  return true;
}

std::string to_string(Indicator indicator) {
  switch (indicator) {
    case Indicator::real: return "real";
    case Indicator::complex: return "complex";
    case Indicator::quaternionic: return "quaternionic";
  }
  return "unknown";
}

Indicator frobenius_schur(const PermGroup& group, const ClassPartition& classes, const RawCharacterTable& table,
                          std::size_t row) {
  ExactSum sum(table.exponent);
  for (std::size_t c = 0; c < classes.count(); ++c) {
    const Elt g = classes.classes[c].representative;
    sum.add(table.eigen[row][classes.class_of[group.mul(g, g)]], static_cast<long long>(classes.classes[c].size));
  }
  const auto v = sum.take_integer();
  const long long n = static_cast<long long>(group.order());
  if (v && *v == n) return Indicator::real;
  if (v && *v == 0) return Indicator::complex;
  if (v && *v == -n) return Indicator::quaternionic;
  throw StructuralError("frobenius_schur: indicator sum is not in {-1, 0, 1}");
}

RationalTable rational_table(const PermGroup&, const ClassPartition& classes, const ClassLabeling& labels,
                             const RawCharacterTable& table) {
  const u64 e = table.exponent;
  const std::size_t rows = table.eigen.size();
  std::map<std::vector<EigenMultiset>, std::size_t> row_index;
  for (std::size_t i = 0; i < rows; ++i) row_index.emplace(table.eigen[i], i);

  // Generators of the unit group mod e.
  std::vector<u64> gens;
  {
    std::vector<bool> reached(e, false);
    reached[1 % e] = true;
    std::vector<u64> members{1 % e};
    for (u64 k = 2; k < e; ++k) {
      if (std::gcd(k, e) != 1 || reached[k]) continue;
      gens.push_back(k);
      for (std::size_t pos = 0; pos < members.size(); ++pos) {
        for (u64 g : gens) {
          const u64 y = members[pos] * g % e;
          if (!reached[y]) {
            reached[y] = true;
            members.push_back(y);
          }
        }
      }
    }
  }
  detail::UnionFind uf(rows);
  for (u64 k : gens) {
    for (std::size_t i = 0; i < rows; ++i) {
      std::vector<EigenMultiset> image;
      for (const EigenMultiset& m : table.eigen[i]) image.push_back(power(m, e, k));
      auto it = row_index.find(image);
      if (it == row_index.end()) throw StructuralError("rational_table: Galois image is not a row");
      uf.unite(i, it->second);
    }
  }
  const std::vector<std::size_t> orbit_id = uf.labels();
  RationalTable out;
  for (std::size_t i = 0; i < rows; ++i) {
    if (orbit_id[i] >= out.orbits.size()) out.orbits.resize(orbit_id[i] + 1);
    out.orbits[orbit_id[i]].push_back(i);
  }
  ExactSum sum(e);
  for (const auto& orbit : out.orbits) {
    std::vector<long long> values(classes.count());
    for (std::size_t c = 0; c < classes.count(); ++c) {
      for (std::size_t i : orbit) sum.add(table.eigen[i][c], 1);
      const auto v = sum.take_integer();
      if (!v) throw StructuralError("rational_table: orbit sum is not rational");
      values[c] = *v;
    }
    std::vector<long long> per_division;
    for (const Division& d : labels.divisions) {
      for (std::size_t c : d.classes) {
        if (values[c] != values[d.classes.front()]) throw StructuralError("rational_table: row not constant on " + d.label);
      }
      per_division.push_back(values[d.classes.front()]);
    }
    out.rows.push_back(std::move(per_division));
    out.class_values.push_back(std::move(values));
  }
  return out;
}

std::vector<CosetAction> coset_actions(const PermGroup& group, const ClassPartition& classes,
                                       const ClassLabeling& labels, const std::vector<GassmannVector>& vectors,
                                       const std::vector<std::size_t>& subgroup_orders) {
  std::vector<CosetAction> out;
  for (std::size_t s = 0; s < vectors.size(); ++s) {
    CosetAction a;
    a.degree = group.order() / subgroup_orders[s];
    for (std::size_t pos = 0; pos < vectors[s].size(); ++pos) {
      const u64 size = classes.classes[labels.ordered_classes[pos]].size;
      a.character.push_back(static_cast<long long>(group.order() / size * vectors[s][pos] / subgroup_orders[s]));
    }
    out.push_back(std::move(a));
  }
  std::sort(out.begin(), out.end(), [](const CosetAction& a, const CosetAction& b) {
    if (a.degree != b.degree) return a.degree < b.degree;
    return a.character < b.character;
  });
  return out;
}

std::optional<CosetAction> smallest_containing_perm_rep(const PermGroup&, const ClassPartition& classes,
                                                        const ClassLabeling& labels,
                                                        const std::vector<CosetAction>& actions,
                                                        const std::vector<long long>& values) {
  for (const CosetAction& a : actions) {
    long long inner = 0;
    for (std::size_t pos = 0; pos < a.character.size(); ++pos) {
      const std::size_t c = labels.ordered_classes[pos];
      inner += static_cast<long long>(classes.classes[c].size) * a.character[pos] * values[c];
    }
    if (inner > 0) return a;  // actions are sorted by (degree, character)
  }
  return std::nullopt;
}

bool value_less(const Cyclotomic& a, const Cyclotomic& b) {
  if (a == b) return false;
  const std::complex<double> x = a.to_complex();
  const std::complex<double> y = b.to_complex();
  constexpr double kEps = 1e-9;
  if (std::abs(x.real() - y.real()) > kEps) return x.real() < y.real();
  if (std::abs(x.imag() - y.imag()) > kEps) return x.imag() < y.imag();
  if (a.conductor() != b.conductor()) return a.conductor() < b.conductor();
  return a.coefficients() < b.coefficients();
}

CharacterTable label_characters(const std::string& ambient, const PermGroup& group, const ClassPartition& classes,
                                const ClassLabeling& labels, const RawCharacterTable& raw,
                                const std::optional<std::vector<CosetAction>>& actions) {
  const RationalTable rational = rational_table(group, classes, labels, raw);
  CharacterTable out;
  out.exponent = raw.exponent;
  out.prime = raw.prime;
  out.class_ids = labels.ordered_classes;
  for (std::size_t c : labels.ordered_classes) out.class_labels.push_back(labels.class_label[c]);
  for (const Division& d : labels.divisions) out.division_labels.push_back(d.label);
  out.perm_reps_available = actions.has_value();

  const std::size_t nr = rational.orbits.size();
  std::vector<std::optional<CosetAction>> reps(nr);
  if (actions) {
    for (std::size_t o = 0; o < nr; ++o) {
      reps[o] = smallest_containing_perm_rep(group, classes, labels, *actions, rational.class_values[o]);
    }
  }
  std::vector<std::vector<long long>> ordered_values(nr);
  for (std::size_t o = 0; o < nr; ++o) {
    for (std::size_t c : labels.ordered_classes) ordered_values[o].push_back(rational.class_values[o][c]);
  }
  std::vector<std::size_t> order(nr);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const std::uint64_t da = raw.degrees[rational.orbits[a][0]], db = raw.degrees[rational.orbits[b][0]];
    if (da != db) return da < db;
    if (rational.orbits[a].size() != rational.orbits[b].size()) return rational.orbits[a].size() < rational.orbits[b].size();
    const std::uint64_t pa = reps[a] ? reps[a]->degree : 0, pb = reps[b] ? reps[b]->degree : 0;
    if (pa != pb) return pa < pb;
    if (reps[a] && reps[b] && reps[a]->character != reps[b]->character) return reps[a]->character < reps[b]->character;
    return ordered_values[a] < ordered_values[b];
  });

  std::map<std::uint64_t, std::size_t> next_letter;
  for (std::size_t o : order) {
    const std::uint64_t d = raw.degrees[rational.orbits[o][0]];
    const std::string label = ambient + "." + std::to_string(d) + letter_code(next_letter[d]++);
    const std::size_t rational_row = out.rational_rows.size();
    out.rational_labels.push_back(label);
    out.rational_rows.push_back(rational.rows[o]);
    out.perm_reps.push_back(reps[o]);

    std::vector<std::size_t> members = rational.orbits[o];
    std::vector<std::vector<Cyclotomic>> rows_in_order;
    for (std::size_t i : members) {
      std::vector<Cyclotomic> row;
      for (std::size_t c : labels.ordered_classes) row.push_back(raw.values[i][c]);
      rows_in_order.push_back(std::move(row));
    }
    std::vector<std::size_t> idx(members.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
      return std::lexicographical_compare(rows_in_order[a].begin(), rows_in_order[a].end(), rows_in_order[b].begin(),
                                          rows_in_order[b].end(), value_less);
    });
    std::vector<std::size_t> orbit_rows;
    for (std::size_t k = 0; k < idx.size(); ++k) {
      orbit_rows.push_back(out.complex_rows.size());
      out.complex_rows.push_back(rows_in_order[idx[k]]);
      out.degrees.push_back(d);
      out.indicators.push_back(frobenius_schur(group, classes, raw, members[idx[k]]));
      out.complex_labels.push_back(label + std::to_string(k + 1));
      out.rational_of.push_back(rational_row);
    }
    out.galois_orbits.push_back(std::move(orbit_rows));
  }

  for (const auto& [p, a] : factorize(group.order())) {
    const std::vector<std::size_t> pm = power_map(group, classes, p);
    std::vector<std::size_t> cols;
    for (std::size_t c : labels.ordered_classes) cols.push_back(labels.position[pm[c]]);
    out.power_maps[p] = std::move(cols);
  }
  return out;
}

}  // namespace grpdb
