#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace grpdb {

using Rational = boost::multiprecision::cpp_rational;

/// Exact element of a cyclotomic field, normalized to its minimal conductor.
///
/// The basis of Q(zeta_n), n = prod p^a, is the tensor product of the power bases
/// {zeta_{p^a}^i : 0 <= i < phi(p^a)} with zeta_q = exp(2 pi i / q). In this basis an element
/// lies in a subfield Q(zeta_d) exactly when it is supported on the subfield's basis, so
/// the minimal conductor is read off prime by prime. Each basis vector is a single root of
/// unity zeta_n^k, which is how terms() reports it.
class Cyclotomic {
 public:
  Cyclotomic() = default;
  Cyclotomic(long long v);  // NOLINT(google-explicit-constructor)
  explicit Cyclotomic(Rational v);

  /// zeta_n^k.
  static Cyclotomic root_of_unity(std::uint64_t n, long long k);

  /// sum over l of coeffs[l] * zeta_n^l, for l = 0 .. n-1.
  static Cyclotomic from_roots(std::uint64_t n, const std::vector<Rational>& coeffs);
  static Cyclotomic from_roots(std::uint64_t n, const std::vector<long long>& coeffs);

  std::uint64_t conductor() const noexcept { return n_; }
  /// Coefficients over the basis of Q(zeta_conductor), in mixed-radix order with the
  /// smallest prime most significant.
  const std::vector<Rational>& coefficients() const noexcept { return c_; }

  /// Nonzero terms as (k, c) meaning c * zeta_n^k, n = conductor, increasing k.
  std::vector<std::pair<std::uint64_t, Rational>> terms() const;

  bool is_zero() const;
  bool is_rational() const noexcept { return n_ == 1; }
  /// Throws DomainError unless rational.
  Rational rational_value() const;

  /// The Galois automorphism zeta -> zeta^k (k coprime to the conductor).
  Cyclotomic galois(long long k) const;
  Cyclotomic conj() const { return galois(-1); }

  std::complex<double> to_complex() const;

  /// Sum of terms such as `-1`, `2*z5^3`, `z8 - z8^3`.
  std::string str() const;

  friend Cyclotomic operator+(const Cyclotomic& a, const Cyclotomic& b);
  friend Cyclotomic operator-(const Cyclotomic& a, const Cyclotomic& b);
  friend Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b);
  Cyclotomic operator-() const;
  Cyclotomic& operator+=(const Cyclotomic& b) { return *this = *this + b; }
  Cyclotomic& operator*=(const Cyclotomic& b) { return *this = *this * b; }

  friend bool operator==(const Cyclotomic& a, const Cyclotomic& b) { return a.n_ == b.n_ && a.c_ == b.c_; }

 private:
  std::uint64_t n_ = 1;
  std::vector<Rational> c_{Rational(0)};
};

/// Euler's totient.
std::uint64_t euler_phi(std::uint64_t n);

}  // namespace grpdb
