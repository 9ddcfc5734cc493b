#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace grpdb {

/// A bijection on {1..degree}. Points are stored 0-based; text forms are 1-based.
///
/// Composition is right-to-left: `p * q` applies `q` first, then `p`, so
/// `(p * q).image(x) == p.image(q.image(x))`.
class Permutation {
 public:
  using Point = std::uint16_t;

  Permutation() = default;

  static Permutation identity(std::size_t degree);

  /// Builds from 0-based images. Throws StructuralError unless `images` is a bijection.
  static Permutation from_images(std::vector<Point> images);

  /// Builds from 1-based images, the form used in documentation and JSON.
  static Permutation from_one_based(std::span<const int> images);

  /// Parses cycle notation such as `(1,2)(3,4)` or `()`. Throws ParseError on malformed input.
  static Permutation parse_cycles(std::string_view text, std::size_t degree);

  std::size_t degree() const noexcept { return images_.size(); }
  Point image(std::size_t point) const { return images_[point]; }
  std::span<const Point> images() const noexcept { return images_; }

  bool is_identity() const noexcept;
  Permutation inverse() const;
  std::uint64_t order() const;

  /// Cycle notation with 1-based points; the identity renders as `()`.
  std::string cycles() const;

  friend Permutation operator*(const Permutation& p, const Permutation& q);
  friend Permutation compose(const Permutation& p, const Permutation& q);
  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend std::strong_ordering operator<=>(const Permutation& a, const Permutation& b) {
    return a.images_ <=> b.images_;
  }

 private:
  explicit Permutation(std::vector<Point> images) : images_(std::move(images)) {}

  std::vector<Point> images_;
};

/// Applies `q` then `p`. Throws StructuralError on degree mismatch.
Permutation compose(const Permutation& p, const Permutation& q);

struct PermutationHash {
  std::size_t operator()(const Permutation& p) const noexcept;
};

}  // namespace grpdb
