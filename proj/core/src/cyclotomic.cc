#include "grpdb/cyclotomic.hpp"

#include "cyclotomic_detail.hpp"

#include <cmath>
#include <numbers>
#include <numeric>

#include "grpdb/error.hpp"
#include "grpdb/structure.hpp"

namespace grpdb {

namespace {

struct Part {
  std::uint64_t p;
  int a;
  std::uint64_t q;    // p^a
  std::uint64_t dim;  // phi(p^a)
};

struct Layout {
  std::uint64_t n = 1;
  std::vector<Part> parts;
  std::vector<std::uint64_t> stride;
  std::uint64_t dim = 1;

  explicit Layout(std::uint64_t n_) : n(n_) {
    for (const auto& [p, a] : factorize(n)) {
      std::uint64_t q = 1;
      for (int i = 0; i < a; ++i) q *= p;
      parts.push_back({p, a, q, q / p * (p - 1)});
    }
    stride.assign(parts.size(), 1);
    for (std::size_t i = parts.size(); i-- > 0;) {
      stride[i] = dim;
      dim *= parts[i].dim;
    }
  }

  /// zeta_n^k for the basis vector with these component exponents.
  std::uint64_t root_exponent(std::uint64_t index) const {
    std::uint64_t k = 0;
    for (std::size_t i = 0; i < parts.size(); ++i) {
      const std::uint64_t e = (index / stride[i]) % parts[i].dim;
      k = (k + e * (n / parts[i].q)) % n;
    }
    return k;
  }
};

std::uint64_t mod_inverse(std::uint64_t a, std::uint64_t m) {
  long long t = 0, new_t = 1;
  long long r = static_cast<long long>(m), new_r = static_cast<long long>(a % m);
  while (new_r != 0) {
    const long long q = r / new_r;
    t -= q * new_t;
    std::swap(t, new_t);
    r -= q * new_r;
    std::swap(r, new_r);
  }
  if (t < 0) t += static_cast<long long>(m);
  return static_cast<std::uint64_t>(t);
}

/// zeta_q^e in the power basis of Q(zeta_q), q = p^a, as (index, sign) terms.
void expand_component(const Part& part, std::uint64_t e, std::vector<std::pair<std::uint64_t, int>>& out) {
  out.clear();
  e %= part.q;
  if (e < part.dim) {
    out.emplace_back(e, 1);
    return;
  }
  const std::uint64_t step = part.q / part.p;
  const std::uint64_t r = e - part.dim;
  for (std::uint64_t j = 0; j + 1 < part.p; ++j) out.emplace_back(r + j * step, -1);
}

/// Adds coeff * zeta_n^l into the tensor-basis vector `acc`.
template <typename T>
void add_root(const Layout& layout, const std::vector<std::uint64_t>& unit, std::uint64_t l, const T& coeff,
              std::vector<T>& acc) {
  std::vector<std::pair<std::uint64_t, T>> terms{{0, coeff}};
  std::vector<std::pair<std::uint64_t, int>> comp;
  for (std::size_t i = 0; i < layout.parts.size(); ++i) {
    const Part& part = layout.parts[i];
    expand_component(part, (l % part.q) * unit[i], comp);
    std::vector<std::pair<std::uint64_t, T>> next;
    next.reserve(terms.size() * comp.size());
    for (const auto& [idx, c] : terms) {
      for (const auto& [e, s] : comp) next.emplace_back(idx + e * layout.stride[i], s > 0 ? c : T(-c));
    }
    terms = std::move(next);
  }
  for (const auto& [idx, c] : terms) acc[idx] += c;
}

std::vector<std::uint64_t> unit_multipliers(const Layout& layout) {
  // zeta_n^l = prod_p zeta_q^{e_p} with e_p = l * (n/q)^{-1} mod q.
  std::vector<std::uint64_t> unit;
  for (const Part& part : layout.parts) unit.push_back(mod_inverse((layout.n / part.q) % part.q, part.q));
  return unit;
}

}  // namespace

detail::RootExpansion detail::root_expansions(std::uint64_t n) {
  const Layout layout(n);
  const std::vector<std::uint64_t> unit = unit_multipliers(layout);
  RootExpansion out;
  out.dim = layout.dim;
  std::vector<long long> acc(layout.dim, 0);
  for (std::uint64_t l = 0; l < n; ++l) {
    add_root(layout, unit, l, 1LL, acc);
    std::vector<std::pair<std::uint32_t, int>> t;
    for (std::uint64_t i = 0; i < layout.dim; ++i) {
      if (acc[i] != 0) {
        t.emplace_back(static_cast<std::uint32_t>(i), static_cast<int>(acc[i]));
        acc[i] = 0;
      }
    }
    out.terms.push_back(std::move(t));
  }
  return out;
}

std::uint64_t euler_phi(std::uint64_t n) {
  std::uint64_t phi = n;
  for (const auto& [p, a] : factorize(n)) phi = phi / p * (p - 1);
  return phi;
}

Cyclotomic::Cyclotomic(long long v) : c_{Rational(v)} {}
Cyclotomic::Cyclotomic(Rational v) : c_{std::move(v)} {}

Cyclotomic Cyclotomic::root_of_unity(std::uint64_t n, long long k) {
  if (n == 0) throw DomainError("root_of_unity: order must be positive");
  std::vector<Rational> c(n, Rational(0));
  const long long m = static_cast<long long>(n);
  c[static_cast<std::size_t>(((k % m) + m) % m)] = 1;
  return from_roots(n, c);
}

Cyclotomic Cyclotomic::from_roots(std::uint64_t n, const std::vector<long long>& coeffs) {
  std::vector<Rational> c(coeffs.begin(), coeffs.end());
  return from_roots(n, c);
}

Cyclotomic Cyclotomic::from_roots(std::uint64_t n, const std::vector<Rational>& coeffs) {
  if (n == 0 || coeffs.size() != n) throw DomainError("from_roots: need one coefficient per n-th root of unity");
  const Layout layout(n);
  const std::vector<std::uint64_t> unit = unit_multipliers(layout);
  std::vector<Rational> acc(layout.dim, Rational(0));
  for (std::uint64_t l = 0; l < n; ++l) {
    if (coeffs[l] != 0) add_root(layout, unit, l, coeffs[l], acc);
  }

  // Per prime: the largest p^t dividing every component exponent in the support.
  std::vector<int> shrink(layout.parts.size());
  for (std::size_t i = 0; i < layout.parts.size(); ++i) shrink[i] = layout.parts[i].a;
  for (std::uint64_t idx = 0; idx < layout.dim; ++idx) {
    if (acc[idx] == 0) continue;
    for (std::size_t i = 0; i < layout.parts.size(); ++i) {
      std::uint64_t e = (idx / layout.stride[i]) % layout.parts[i].dim;
      int t = 0;
      while (e != 0 && e % layout.parts[i].p == 0 && t < shrink[i]) {
        e /= layout.parts[i].p;
        ++t;
      }
      if (e != 0) shrink[i] = std::min(shrink[i], t);
    }
  }
  std::uint64_t d = 1;
  std::vector<std::uint64_t> divide(layout.parts.size(), 1);
  for (std::size_t i = 0; i < layout.parts.size(); ++i) {
    const int b = layout.parts[i].a - shrink[i];
    for (int j = 0; j < b; ++j) d *= layout.parts[i].p;
    for (int j = 0; j < shrink[i]; ++j) divide[i] *= layout.parts[i].p;
  }

  const Layout small(d);
  Cyclotomic out;
  out.n_ = d;
  out.c_.assign(small.dim, Rational(0));
  for (std::uint64_t idx = 0; idx < layout.dim; ++idx) {
    if (acc[idx] == 0) continue;
    std::uint64_t target = 0;
    std::size_t k = 0;
    for (std::size_t i = 0; i < layout.parts.size(); ++i) {
      const std::uint64_t e = (idx / layout.stride[i]) % layout.parts[i].dim;
      if (divide[i] == layout.parts[i].q) continue;  // prime dropped from the conductor
      target += (e / divide[i]) * small.stride[k++];
    }
    out.c_[target] = acc[idx];
  }
  return out;
}

std::vector<std::pair<std::uint64_t, Rational>> Cyclotomic::terms() const {
  const Layout layout(n_);
  std::vector<std::pair<std::uint64_t, Rational>> out;
  for (std::uint64_t idx = 0; idx < layout.dim; ++idx) {
    if (c_[idx] != 0) out.emplace_back(layout.root_exponent(idx), c_[idx]);
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  return out;
}

bool Cyclotomic::is_zero() const {
  for (const Rational& c : c_) {
    if (c != 0) return false;
  }
  return true;
}

Rational Cyclotomic::rational_value() const {
  if (n_ != 1) throw DomainError("rational_value: " + str() + " is not rational");
  return c_[0];
}

namespace {

std::vector<Rational> lift(const Cyclotomic& x, std::uint64_t big) {
  std::vector<Rational> out(big, Rational(0));
  const std::uint64_t scale = big / x.conductor();
  for (const auto& [k, c] : x.terms()) out[(k * scale) % big] += c;
  return out;
}

}  // namespace

Cyclotomic Cyclotomic::galois(long long k) const {
  const long long n = static_cast<long long>(n_);
  if (std::gcd(((k % n) + n) % n, n) != 1 && n_ != 1) throw DomainError("galois: exponent not coprime to conductor");
  std::vector<Rational> out(n_, Rational(0));
  for (const auto& [e, c] : terms()) {
    const long long t = (static_cast<long long>(e) * (k % n)) % n;
    out[static_cast<std::size_t>((t + n) % n)] += c;
  }
  return from_roots(n_, out);
}

std::complex<double> Cyclotomic::to_complex() const {
  std::complex<double> z = 0;
  for (const auto& [k, c] : terms()) {
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n_);
    z += static_cast<double>(c) * std::complex<double>(std::cos(angle), std::sin(angle));
  }
  return z;
}

std::string Cyclotomic::str() const {
  const auto t = terms();
  if (t.empty()) return "0";
  std::string s;
  for (const auto& [k, c] : t) {
    const bool negative = c < 0;
    const Rational mag = negative ? Rational(-c) : c;
    if (s.empty()) {
      if (negative) s += "-";
    } else {
      s += negative ? " - " : " + ";
    }
    if (k == 0) {
      s += mag.str();
      continue;
    }
    if (mag != 1) s += mag.str() + "*";
    s += "z" + std::to_string(n_);
    if (k != 1) s += "^" + std::to_string(k);
  }
  return s;
}

Cyclotomic operator+(const Cyclotomic& a, const Cyclotomic& b) {
  const std::uint64_t l = std::lcm(a.n_, b.n_);
  std::vector<Rational> x = lift(a, l);
  const std::vector<Rational> y = lift(b, l);
  for (std::uint64_t i = 0; i < l; ++i) x[i] += y[i];
  return Cyclotomic::from_roots(l, x);
}

Cyclotomic Cyclotomic::operator-() const {
  Cyclotomic out = *this;
  for (Rational& c : out.c_) c = -c;
  return out;
}

Cyclotomic operator-(const Cyclotomic& a, const Cyclotomic& b) { return a + (-b); }

Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b) {
  const std::uint64_t l = std::lcm(a.n_, b.n_);
  std::vector<Rational> out(l, Rational(0));
  const auto ta = a.terms();
  const auto tb = b.terms();
  const std::uint64_t sa = l / a.n_;
  const std::uint64_t sb = l / b.n_;
  for (const auto& [ka, ca] : ta) {
    for (const auto& [kb, cb] : tb) out[(ka * sa + kb * sb) % l] += ca * cb;
  }
  return Cyclotomic::from_roots(l, out);
}

}  // namespace grpdb
