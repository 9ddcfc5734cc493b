#pragma once

#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace grpdb {

/// Index of an element in its group's ranked element list; index 0 is the identity.
using Elt = std::uint32_t;

/// Fixed-universe bitset over element indices, used for subgroups and element subsets.
class ElementSet {
 public:
  ElementSet() = default;
  explicit ElementSet(std::size_t universe) : universe_(universe), words_((universe + 63) / 64, 0) {}

  static ElementSet of(std::size_t universe, const std::vector<Elt>& members);

  std::size_t universe() const noexcept { return universe_; }
  bool contains(Elt e) const { return (words_[e >> 6] >> (e & 63)) & 1u; }
  void insert(Elt e) { words_[e >> 6] |= std::uint64_t{1} << (e & 63); }
  void erase(Elt e) { words_[e >> 6] &= ~(std::uint64_t{1} << (e & 63)); }

  std::size_t size() const noexcept;
  bool empty() const noexcept;
  bool is_subset_of(const ElementSet& other) const;

  ElementSet& operator&=(const ElementSet& other);
  ElementSet& operator|=(const ElementSet& other);
  friend ElementSet operator&(ElementSet a, const ElementSet& b) { return a &= b; }
  friend ElementSet operator|(ElementSet a, const ElementSet& b) { return a |= b; }

  /// Members in increasing index order.
  std::vector<Elt> members() const;

  template <typename F>
  void for_each(F&& f) const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      std::uint64_t bits = words_[w];
      while (bits) {
        const int b = std::countr_zero(bits);
        f(static_cast<Elt>(w * 64 + static_cast<std::size_t>(b)));
        bits &= bits - 1;
      }
    }
  }

  friend bool operator==(const ElementSet&, const ElementSet&) = default;

  /// Lexicographic order on the increasing member lists.
  friend std::strong_ordering operator<=>(const ElementSet& a, const ElementSet& b);

  std::size_t hash() const noexcept;

 private:
  std::size_t universe_ = 0;
  std::vector<std::uint64_t> words_;
};

struct ElementSetHash {
  std::size_t operator()(const ElementSet& s) const noexcept { return s.hash(); }
};

}  // namespace grpdb
