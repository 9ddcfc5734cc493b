#include "grpdb/element_set.hpp"

namespace grpdb {

ElementSet ElementSet::of(std::size_t universe, const std::vector<Elt>& members) {
  ElementSet s(universe);
  for (Elt e : members) s.insert(e);
  return s;
}

std::size_t ElementSet::size() const noexcept {
  std::size_t n = 0;
  for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
  return n;
}

bool ElementSet::empty() const noexcept {
  for (auto w : words_)
    if (w) return false;
  return true;
}

bool ElementSet::is_subset_of(const ElementSet& other) const {
  for (std::size_t i = 0; i < words_.size(); ++i)
    if (words_[i] & ~other.words_[i]) return false;
  return true;
}

ElementSet& ElementSet::operator&=(const ElementSet& other) {
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= other.words_[i];
  return *this;
}

ElementSet& ElementSet::operator|=(const ElementSet& other) {
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= other.words_[i];
  return *this;
}

std::vector<Elt> ElementSet::members() const {
  std::vector<Elt> out;
  for_each([&](Elt e) { out.push_back(e); });
  return out;
}

std::strong_ordering operator<=>(const ElementSet& a, const ElementSet& b) {
  // At the first differing index i, the set holding i sorts first unless the other set has
  // nothing beyond i (then the other list is a proper prefix).
  const std::size_t n = std::min(a.words_.size(), b.words_.size());
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint64_t diff = a.words_[i] ^ b.words_[i];
    if (!diff) continue;
    const std::uint64_t low = diff & (~diff + 1);
    const bool a_holds = (a.words_[i] & low) != 0;
    const ElementSet& other = a_holds ? b : a;
    bool other_continues = (other.words_[i] & ~((low << 1) - 1)) != 0;
    for (std::size_t j = i + 1; !other_continues && j < other.words_.size(); ++j)
      other_continues = other.words_[j] != 0;
    const bool a_first = a_holds == other_continues;
    return a_first ? std::strong_ordering::less : std::strong_ordering::greater;
  }
  return a.words_.size() <=> b.words_.size();
}

std::size_t ElementSet::hash() const noexcept {
  std::uint64_t h = 0x9e3779b97f4a7c15ull ^ universe_;
  for (auto w : words_) {
    h ^= w + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  }
  return static_cast<std::size_t>(h);
}

}  // namespace grpdb
