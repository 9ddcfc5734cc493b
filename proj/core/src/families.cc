#include "grpdb/families.hpp"

#include <numeric>

#include "grpdb/error.hpp"

namespace grpdb::families {

namespace {

using Point = Permutation::Point;

Permutation from_map(std::size_t degree, const std::function<std::size_t(std::size_t)>& f) {
  std::vector<Point> images(degree);
  for (std::size_t i = 0; i < degree; ++i) images[i] = static_cast<Point>(f(i));
  return Permutation::from_images(std::move(images));
}

std::size_t power_mod(std::size_t base, std::size_t exp, std::size_t mod) {
  std::size_t result = 1 % mod;
  base %= mod;
  while (exp) {
    if (exp & 1) result = result * base % mod;
    base = base * base % mod;
    exp >>= 1;
  }
  return result;
}

std::size_t primitive_root(std::size_t p) {
  for (std::size_t g = 2; g < p; ++g) {
    bool ok = true;
    for (std::size_t d = 1; d < p - 1 && ok; ++d)
      if ((p - 1) % d == 0 && power_mod(g, d, p) == 1) ok = false;
    if (ok) return g;
  }
  return 1;
}

}  // namespace

Generators cyclic(std::size_t n) {
  if (n == 0) throw DomainError("cyclic group of order 0");
  if (n == 1) return {Permutation::identity(1)};
  return {from_map(n, [n](std::size_t i) { return (i + 1) % n; })};
}

Generators dihedral(std::size_t n) {
  if (n == 1) return cyclic(2);
  if (n == 2) return {Permutation::parse_cycles("(1,2)", 4), Permutation::parse_cycles("(3,4)", 4)};
  return {from_map(n, [n](std::size_t i) { return (i + 1) % n; }), from_map(n, [n](std::size_t i) { return (n - i) % n; })};
}

Generators symmetric(std::size_t n) {
  if (n <= 1) return {Permutation::identity(1)};
  if (n == 2) return {Permutation::parse_cycles("(1,2)", 2)};
  return {from_map(n, [n](std::size_t i) { return (i + 1) % n; }), Permutation::parse_cycles("(1,2)", n)};
}

Generators alternating(std::size_t n) {
  if (n <= 2) return {Permutation::identity(std::max<std::size_t>(n, 1))};
  if (n == 3) return {Permutation::parse_cycles("(1,2,3)", 3)};
  Generators gens{Permutation::parse_cycles("(1,2,3)", n)};
  if (n % 2 == 1) {
    gens.push_back(from_map(n, [n](std::size_t i) { return (i + 1) % n; }));
  } else {
    gens.push_back(from_map(n, [n](std::size_t i) { return i == 0 ? 0 : (i % (n - 1)) + 1; }));
  }
  return gens;
}

Generators direct_product(const Generators& a, const Generators& b) {
  const std::size_t da = a.front().degree();
  const std::size_t db = b.front().degree();
  Generators out;
  for (const auto& g : a)
    out.push_back(from_map(da + db, [&](std::size_t i) { return i < da ? g.image(i) : i; }));
  for (const auto& g : b)
    out.push_back(from_map(da + db, [&](std::size_t i) { return i < da ? i : da + g.image(i - da); }));
  return out;
}

Generators abelian(const std::vector<std::size_t>& orders) {
  if (orders.empty()) return cyclic(1);
  Generators out = cyclic(orders.front());
  for (std::size_t i = 1; i < orders.size(); ++i) out = direct_product(out, cyclic(orders[i]));
  return out;
}

Generators elementary_abelian(std::size_t p, std::size_t rank) {
  return abelian(std::vector<std::size_t>(rank, p));
}

Generators regular_from_table(std::size_t order, const std::function<std::size_t(std::size_t, std::size_t)>& mul,
                              const std::vector<std::size_t>& generators) {
  Generators out;
  for (std::size_t s : generators) out.push_back(from_map(order, [&](std::size_t x) { return mul(x, s); }));
  return out;
}

Generators regular(const PermGroup& group) {
  std::vector<std::size_t> gens(group.generator_indices().begin(), group.generator_indices().end());
  return regular_from_table(
      group.order(), [&](std::size_t a, std::size_t b) { return group.mul(static_cast<Elt>(a), static_cast<Elt>(b)); },
      gens);
}

Generators metacyclic(std::size_t m, std::size_t n, std::size_t r, std::size_t t) {
  if (power_mod(r, n, m) != 1 % m || (t * (r + m - 1)) % m != 0)
    throw DomainError("inconsistent metacyclic parameters");
  std::vector<std::size_t> rpow(n);
  for (std::size_t j = 0; j < n; ++j) rpow[j] = power_mod(r, j, m);
  auto mul = [&](std::size_t x, std::size_t y) {
    const std::size_t i1 = x % m, j1 = x / m, i2 = y % m, j2 = y / m;
    std::size_t i = (i1 + rpow[j1] * i2) % m;
    std::size_t j = j1 + j2;
    if (j >= n) {
      j -= n;
      i = (i + t) % m;
    }
    return i + m * j;
  };
  return regular_from_table(m * n, mul, {1 % (m * n), m});
}

Generators dicyclic(std::size_t n) { return metacyclic(2 * n, 2, 2 * n - 1, n); }

Generators quaternion(std::size_t order) { return dicyclic(order / 4); }

Generators affine(std::size_t p, std::size_t q) {
  if ((p - 1) % q != 0) throw DomainError("q must divide p - 1");
  const std::size_t a = power_mod(primitive_root(p), (p - 1) / q, p);
  Generators gens{from_map(p, [p](std::size_t x) { return (x + 1) % p; })};
  if (q > 1) gens.push_back(from_map(p, [p, a](std::size_t x) { return x * a % p; }));
  return gens;
}

Generators agl1_8() {
  // F_8 = F_2[x]/(x^3 + x + 1); elements are 3-bit polynomials.
  auto times_alpha = [](std::size_t v) {
    std::size_t w = v << 1;
    if (w & 8) w ^= 0b1011;
    return w;
  };
  return {from_map(8, [](std::size_t v) { return v ^ 1; }), from_map(8, times_alpha)};
}

namespace {

Generators matrix_action(std::size_t dim, std::size_t p, const std::vector<std::vector<std::size_t>>& matrices) {
  std::size_t count = 1;
  for (std::size_t i = 0; i < dim; ++i) count *= p;
  // Point k-1 encodes the nonzero vector with base-p digits of k.
  auto decode = [&](std::size_t k) {
    std::vector<std::size_t> v(dim);
    for (std::size_t i = 0; i < dim; ++i, k /= p) v[i] = k % p;
    return v;
  };
  auto encode = [&](const std::vector<std::size_t>& v) {
    std::size_t k = 0;
    for (std::size_t i = dim; i-- > 0;) k = k * p + v[i];
    return k;
  };
  Generators out;
  for (const auto& m : matrices)
    out.push_back(from_map(count - 1, [&](std::size_t point) {
      const auto v = decode(point + 1);
      std::vector<std::size_t> w(dim, 0);
      for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j) w[i] = (w[i] + m[i * dim + j] * v[j]) % p;
      return encode(w) - 1;
    }));
  return out;
}

std::vector<std::vector<std::size_t>> transvections(std::size_t dim) {
  std::vector<std::vector<std::size_t>> out;
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j) {
      if (i == j) continue;
      std::vector<std::size_t> m(dim * dim, 0);
      for (std::size_t k = 0; k < dim; ++k) m[k * dim + k] = 1;
      m[i * dim + j] = 1;
      out.push_back(std::move(m));
    }
  return out;
}

}  // namespace

Generators special_linear(std::size_t dim, std::size_t p) { return matrix_action(dim, p, transvections(dim)); }

Generators general_linear(std::size_t dim, std::size_t p) {
  auto mats = transvections(dim);
  if (p > 2) {
    std::vector<std::size_t> d(dim * dim, 0);
    for (std::size_t k = 0; k < dim; ++k) d[k * dim + k] = 1;
    d[0] = primitive_root(p);
    mats.push_back(std::move(d));
  }
  return matrix_action(dim, p, mats);
}

namespace {

NamedGroup entry(std::optional<std::string> id, std::string name, Generators gens) {
  return {std::move(id), std::move(name), std::move(gens)};
}

std::string abelian_name(const std::vector<std::size_t>& orders) {
  std::string out;
  std::size_t i = 0;
  while (i < orders.size()) {
    std::size_t j = i;
    while (j < orders.size() && orders[j] == orders[i]) ++j;
    if (!out.empty()) out += 'x';
    out += "C" + std::to_string(orders[i]);
    if (j - i > 1) out += "^" + std::to_string(j - i);
    i = j;
  }
  return out;
}

Generators heisenberg3() {
  // Upper unitriangular 3x3 matrices over F_3 as triples (a, b, c) with
  // (a,b,c)(a',b',c') = (a+a', b+b', c+c'+a b').
  auto mul = [](std::size_t x, std::size_t y) {
    const std::size_t a = x % 3, b = x / 3 % 3, c = x / 9, a2 = y % 3, b2 = y / 3 % 3, c2 = y / 9;
    return (a + a2) % 3 + 3 * ((b + b2) % 3) + 9 * ((c + c2 + a * b2) % 3);
  };
  return regular_from_table(27, mul, {1, 3});
}

}  // namespace

std::vector<NamedGroup> standard_corpus() {
  std::vector<NamedGroup> out;
  auto id = [](const char* s) { return std::optional<std::string>(s); };
  const std::nullopt_t none = std::nullopt;

  // Cyclic groups.
  const std::vector<std::pair<std::size_t, const char*>> cyclic_ids = {
      {1, "1.1"},   {2, "2.1"},   {3, "3.1"},   {4, "4.1"},   {5, "5.1"},   {6, "6.2"},   {7, "7.1"},
      {8, "8.1"},   {9, "9.1"},   {10, "10.2"}, {11, "11.1"}, {12, "12.2"}, {13, "13.1"}, {14, "14.2"},
      {15, "15.1"}, {16, "16.1"}, {17, "17.1"}, {18, "18.2"}, {19, "19.1"}, {20, "20.2"}, {21, "21.2"},
      {22, "22.2"}, {23, "23.1"}, {24, "24.2"}, {25, "25.1"}, {26, "26.2"}, {27, "27.1"}, {28, "28.2"},
      {29, "29.1"}, {30, "30.4"}, {31, "31.1"}, {32, "32.1"}, {33, "33.1"}, {35, "35.1"}, {36, "36.2"},
      {37, "37.1"}, {40, "40.2"}, {41, "41.1"}, {43, "43.1"}, {45, "45.1"}, {47, "47.1"}, {49, "49.1"},
      {53, "53.1"}, {59, "59.1"}, {60, "60.4"}, {61, "61.1"}, {64, "64.1"}, {81, "81.1"}, {128, "128.1"}};
  for (auto [n, gid] : cyclic_ids) out.push_back(entry(id(gid), "C" + std::to_string(n), cyclic(n)));
  for (std::size_t n : {34, 38, 39, 42, 44, 46, 48, 50, 52, 54, 56, 63, 72, 84, 90, 96, 100, 105, 120, 144, 180, 200})
    out.push_back(entry(none, "C" + std::to_string(n), cyclic(n)));

  // Non-cyclic abelian groups (cyclic factors listed with equal orders adjacent).
  const std::vector<std::pair<std::vector<std::size_t>, const char*>> abelian_ids = {
      {{2, 2}, "4.2"},         {{2, 4}, "8.2"},         {{2, 2, 2}, "8.5"},      {{3, 3}, "9.2"},
      {{2, 6}, "12.5"},        {{4, 4}, "16.2"},        {{2, 8}, "16.5"},        {{2, 2, 4}, "16.10"},
      {{2, 2, 2, 2}, "16.14"}, {{3, 6}, "18.5"},        {{2, 10}, "20.5"},       {{2, 12}, "24.9"},
      {{2, 2, 6}, "24.15"},    {{5, 5}, "25.2"},        {{3, 9}, "27.2"},        {{3, 3, 3}, "27.5"},
      {{2, 14}, "28.4"},       {{2, 2, 2, 2, 2}, "32.51"}, {{3, 15}, "45.2"},    {{7, 7}, "49.2"},
      {{2, 2, 2, 2, 2, 2}, "64.267"}};
  for (const auto& [orders, gid] : abelian_ids) out.push_back(entry(id(gid), abelian_name(orders), abelian(orders)));
  const std::vector<std::vector<std::size_t>> abelian_more = {
      {2, 16}, {4, 8}, {2, 2, 8}, {2, 4, 4}, {2, 2, 2, 4}, {2, 18}, {6, 6}, {3, 12}, {2, 20}, {2, 2, 10},
      {2, 24}, {4, 12}, {2, 2, 12}, {2, 2, 2, 6}, {5, 10}, {3, 18}, {3, 3, 6}, {2, 30}, {8, 8}, {4, 16},
      {2, 2, 2, 2, 2, 2, 2}, {2, 2, 2, 2, 2, 2, 2, 2, 2, 2}};
  for (const auto& orders : abelian_more) out.push_back(entry(none, abelian_name(orders), abelian(orders)));

  // Non-abelian groups with well-known small-group ids.
  out.push_back(entry(id("6.1"), "S3", symmetric(3)));
  out.push_back(entry(id("8.3"), "D4", dihedral(4)));
  out.push_back(entry(id("8.4"), "Q8", quaternion(8)));
  out.push_back(entry(id("10.1"), "D5", dihedral(5)));
  out.push_back(entry(id("12.1"), "Dic3", dicyclic(3)));
  out.push_back(entry(id("12.3"), "A4", alternating(4)));
  out.push_back(entry(id("12.4"), "D6", dihedral(6)));
  out.push_back(entry(id("14.1"), "D7", dihedral(7)));
  out.push_back(entry(id("16.4"), "C4:C4", metacyclic(4, 4, 3)));
  out.push_back(entry(id("16.6"), "C8:C2", metacyclic(8, 2, 5)));
  out.push_back(entry(id("16.7"), "D8", dihedral(8)));
  out.push_back(entry(id("16.8"), "SD16", metacyclic(8, 2, 3)));
  out.push_back(entry(id("16.9"), "Q16", quaternion(16)));
  out.push_back(entry(id("16.11"), "C2xD4", direct_product(cyclic(2), dihedral(4))));
  out.push_back(entry(id("16.12"), "C2xQ8", direct_product(cyclic(2), quaternion(8))));
  out.push_back(entry(id("18.1"), "D9", dihedral(9)));
  out.push_back(entry(id("18.3"), "C3xS3", direct_product(cyclic(3), symmetric(3))));
  out.push_back(entry(id("18.4"), "C3^2:C2", regular_from_table(
                                                 18,
                                                 [](std::size_t x, std::size_t y) {
                                                   // (v, s)(w, t) = (v + (-1)^s w, s + t) on C3^2 x| C2.
                                                   const std::size_t v1 = x % 9, s = x / 9, v2 = y % 9, t = y / 9;
                                                   const std::size_t w = s ? ((3 - v2 % 3) % 3) + 3 * ((3 - v2 / 3) % 3) : v2;
                                                   const std::size_t sum = (v1 % 3 + w % 3) % 3 + 3 * ((v1 / 3 + w / 3) % 3);
                                                   return sum + 9 * ((s + t) % 2);
                                                 },
                                                 {1, 3, 9})));
  out.push_back(entry(id("20.1"), "Dic5", dicyclic(5)));
  out.push_back(entry(id("20.3"), "F5", affine(5, 4)));
  out.push_back(entry(id("20.4"), "D10", dihedral(10)));
  out.push_back(entry(id("21.1"), "C7:C3", affine(7, 3)));
  out.push_back(entry(id("22.1"), "D11", dihedral(11)));
  out.push_back(entry(id("24.1"), "C3:C8", metacyclic(3, 8, 2)));
  out.push_back(entry(id("24.3"), "SL(2,3)", special_linear(2, 3)));
  out.push_back(entry(id("24.4"), "Dic6", dicyclic(6)));
  out.push_back(entry(id("24.5"), "C4xS3", direct_product(cyclic(4), symmetric(3))));
  out.push_back(entry(id("24.6"), "D12", dihedral(12)));
  out.push_back(entry(id("24.7"), "C2xDic3", direct_product(cyclic(2), dicyclic(3))));
  out.push_back(entry(id("24.10"), "C3xD4", direct_product(cyclic(3), dihedral(4))));
  out.push_back(entry(id("24.11"), "C3xQ8", direct_product(cyclic(3), quaternion(8))));
  out.push_back(entry(id("24.12"), "S4", symmetric(4)));
  out.push_back(entry(id("24.13"), "C2xA4", direct_product(cyclic(2), alternating(4))));
  out.push_back(entry(id("24.14"), "C2^2xS3", direct_product(abelian({2, 2}), symmetric(3))));
  out.push_back(entry(id("26.1"), "D13", dihedral(13)));
  out.push_back(entry(id("27.3"), "He3", heisenberg3()));
  out.push_back(entry(id("27.4"), "C9:C3", metacyclic(9, 3, 4)));
  out.push_back(entry(id("28.1"), "Dic7", dicyclic(7)));
  out.push_back(entry(id("28.3"), "D14", dihedral(14)));
  out.push_back(entry(id("30.1"), "C5xS3", direct_product(cyclic(5), symmetric(3))));
  out.push_back(entry(id("30.2"), "C3xD5", direct_product(cyclic(3), dihedral(5))));
  out.push_back(entry(id("30.3"), "D15", dihedral(15)));
  out.push_back(entry(id("36.10"), "S3^2", direct_product(symmetric(3), symmetric(3))));
  out.push_back(entry(id("36.11"), "C3xA4", direct_product(cyclic(3), alternating(4))));
  out.push_back(entry(id("39.1"), "C13:C3", affine(13, 3)));
  out.push_back(entry(id("42.1"), "F7", affine(7, 6)));
  out.push_back(entry(id("48.29"), "GL(2,3)", general_linear(2, 3)));
  out.push_back(entry(id("48.48"), "C2xS4", direct_product(cyclic(2), symmetric(4))));
  out.push_back(entry(id("48.49"), "C2^2xA4", direct_product(abelian({2, 2}), alternating(4))));
  out.push_back(entry(id("55.1"), "C11:C5", affine(11, 5)));
  out.push_back(entry(id("56.11"), "C2^3:C7", agl1_8()));
  out.push_back(entry(id("57.1"), "C19:C3", affine(19, 3)));
  out.push_back(entry(id("60.5"), "A5", alternating(5)));
  out.push_back(entry(id("60.9"), "C5xA4", direct_product(cyclic(5), alternating(4))));
  out.push_back(entry(id("72.42"), "C3xS4", direct_product(cyclic(3), symmetric(4))));
  out.push_back(entry(id("120.34"), "S5", symmetric(5)));
  out.push_back(entry(id("120.35"), "C2xA5", direct_product(cyclic(2), alternating(5))));
  out.push_back(entry(id("168.42"), "PSL(2,7)", special_linear(3, 2)));

  // Further families, labeled at ingest by letter code.
  for (std::size_t n : {16, 17, 18, 20, 21, 22, 24, 25, 27, 30, 32, 33, 35, 36, 40, 45, 48, 50, 60, 64, 75, 100})
    out.push_back(entry(none, "D" + std::to_string(n), dihedral(n)));
  for (std::size_t n : {8, 9, 10, 11, 12, 13, 15, 16, 18, 20, 24, 25, 30, 50})
    out.push_back(entry(none, (n == 8 || n == 16) ? "Q" + std::to_string(4 * n) : "Dic" + std::to_string(n),
                        dicyclic(n)));
  out.push_back(entry(none, "C13:C4", affine(13, 4)));
  out.push_back(entry(none, "C13:C6", affine(13, 6)));
  out.push_back(entry(none, "F11", affine(11, 10)));
  out.push_back(entry(none, "F13", affine(13, 12)));
  out.push_back(entry(none, "C31:C3", affine(31, 3)));
  out.push_back(entry(none, "C31:C5", affine(31, 5)));
  out.push_back(entry(none, "C37:C3", affine(37, 3)));
  out.push_back(entry(none, "C43:C3", affine(43, 3)));
  out.push_back(entry(none, "C7:C9", metacyclic(7, 9, 2)));
  out.push_back(entry(none, "C5:C8", metacyclic(5, 8, 2)));
  out.push_back(entry(none, "C16:C2", metacyclic(16, 2, 9)));
  out.push_back(entry(none, "SD32", metacyclic(16, 2, 7)));
  out.push_back(entry(none, "C8:C4", metacyclic(8, 4, 3)));
  out.push_back(entry(none, "C2xD8", direct_product(cyclic(2), dihedral(8))));
  out.push_back(entry(none, "C4xD4", direct_product(cyclic(4), dihedral(4))));
  out.push_back(entry(none, "C4xQ8", direct_product(cyclic(4), quaternion(8))));
  out.push_back(entry(none, "C2^2xD4", direct_product(abelian({2, 2}), dihedral(4))));
  out.push_back(entry(none, "D4^2", direct_product(dihedral(4), dihedral(4))));
  out.push_back(entry(none, "C3xD8", direct_product(cyclic(3), dihedral(8))));
  out.push_back(entry(none, "C5xD4", direct_product(cyclic(5), dihedral(4))));
  out.push_back(entry(none, "C5xQ8", direct_product(cyclic(5), quaternion(8))));
  out.push_back(entry(none, "C7xS3", direct_product(cyclic(7), symmetric(3))));
  out.push_back(entry(none, "C3xD7", direct_product(cyclic(3), dihedral(7))));
  out.push_back(entry(none, "C6xS3", direct_product(cyclic(6), symmetric(3))));
  out.push_back(entry(none, "C4xA4", direct_product(cyclic(4), alternating(4))));
  out.push_back(entry(none, "C2xSL(2,3)", direct_product(cyclic(2), special_linear(2, 3))));
  out.push_back(entry(none, "C3xSL(2,3)", direct_product(cyclic(3), special_linear(2, 3))));
  out.push_back(entry(none, "S3xD4", direct_product(symmetric(3), dihedral(4))));
  out.push_back(entry(none, "S3xQ8", direct_product(symmetric(3), quaternion(8))));
  out.push_back(entry(none, "S3xD5", direct_product(symmetric(3), dihedral(5))));
  out.push_back(entry(none, "D5^2", direct_product(dihedral(5), dihedral(5))));
  out.push_back(entry(none, "S3xA4", direct_product(symmetric(3), alternating(4))));
  out.push_back(entry(none, "C2^2xS4", direct_product(abelian({2, 2}), symmetric(4))));
  out.push_back(entry(none, "C4xS4", direct_product(cyclic(4), symmetric(4))));
  out.push_back(entry(none, "A4^2", direct_product(alternating(4), alternating(4))));
  out.push_back(entry(none, "C3xF5", direct_product(cyclic(3), affine(5, 4))));
  out.push_back(entry(none, "C2xF7", direct_product(cyclic(2), affine(7, 6))));
  out.push_back(entry(none, "C2xC2^3:C7", direct_product(cyclic(2), agl1_8())));
  out.push_back(entry(none, "C3xA5", direct_product(cyclic(3), alternating(5))));
  out.push_back(entry(none, "C3xHe3", direct_product(cyclic(3), heisenberg3())));
  out.push_back(entry(none, "S3xC3^2", direct_product(abelian({3, 3}), symmetric(3))));
  out.push_back(entry(none, "D4xC6", direct_product(cyclic(6), dihedral(4))));
  out.push_back(entry(none, "Q8xC6", direct_product(cyclic(6), quaternion(8))));
  out.push_back(entry(none, "C2^3xS3", direct_product(abelian({2, 2, 2}), symmetric(3))));
  out.push_back(entry(none, "C2xC4xS3", direct_product(abelian({2, 4}), symmetric(3))));
  return out;
}

std::vector<NamedGroup> reference_groups() {
  std::vector<NamedGroup> out;
  for (auto& g : standard_corpus()) {
    const auto group = PermGroup::generate(g.generators);
    bool commutative = true;
    for (Elt a : group.generator_indices())
      for (Elt b : group.generator_indices())
        if (group.mul(a, b) != group.mul(b, a)) commutative = false;
    if (!commutative && group.order() <= 200) out.push_back(std::move(g));
  }
  return out;
}

}  // namespace grpdb::families
