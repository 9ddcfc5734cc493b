#include "grpdb/permutation.hpp"

#include <numeric>

#include "grpdb/error.hpp"

namespace grpdb {

Permutation Permutation::identity(std::size_t degree) {
  std::vector<Point> images(degree);
  std::iota(images.begin(), images.end(), Point{0});
  return Permutation(std::move(images));
}

Permutation Permutation::from_images(std::vector<Point> images) {
  std::vector<bool> seen(images.size(), false);
  for (Point x : images) {
    if (x >= images.size() || seen[x]) throw StructuralError("images do not form a bijection");
    seen[x] = true;
  }
  return Permutation(std::move(images));
}

Permutation Permutation::from_one_based(std::span<const int> images) {
  std::vector<Point> zero_based;
  zero_based.reserve(images.size());
  for (int x : images) {
    if (x < 1 || static_cast<std::size_t>(x) > images.size())
      throw StructuralError("image " + std::to_string(x) + " outside 1.." + std::to_string(images.size()));
    zero_based.push_back(static_cast<Point>(x - 1));
  }
  return from_images(std::move(zero_based));
}

Permutation Permutation::parse_cycles(std::string_view text, std::size_t degree) {
  if (degree == 0 || degree > 0xFFFF) throw StructuralError("unsupported degree " + std::to_string(degree));
  std::vector<Point> images(degree);
  std::iota(images.begin(), images.end(), Point{0});
  std::vector<bool> used(degree, false);

  std::size_t pos = 0;
  auto col = [&] { return static_cast<int>(pos) + 1; };
  auto skip_ws = [&] {
    while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t')) ++pos;
  };

  skip_ws();
  if (pos == text.size()) throw ParseError("empty permutation", 1, col());
  while (pos < text.size()) {
    if (text[pos] != '(') throw ParseError("expected '('", 1, col());
    const int open_col = col();
    ++pos;
    skip_ws();
    std::vector<Point> cycle;
    if (pos < text.size() && text[pos] == ')') {
      ++pos;  // `()` denotes the identity
    } else {
      while (true) {
        skip_ws();
        if (pos >= text.size() || text[pos] < '0' || text[pos] > '9')
          throw ParseError("expected point in cycle opened here", 1, pos >= text.size() ? open_col : col());
        const int start = col();
        unsigned long value = 0;
        while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') {
          value = value * 10 + static_cast<unsigned long>(text[pos] - '0');
          if (value > degree) break;
          ++pos;
        }
        if (value < 1 || value > degree)
          throw ParseError("point outside 1.." + std::to_string(degree), 1, start);
        const auto point = static_cast<Point>(value - 1);
        if (used[point]) throw ParseError("point " + std::to_string(value) + " repeated", 1, start);
        used[point] = true;
        cycle.push_back(point);
        skip_ws();
        if (pos >= text.size()) throw ParseError("unterminated cycle", 1, open_col);
        if (text[pos] == ',') {
          ++pos;
          continue;
        }
        if (text[pos] == ')') {
          ++pos;
          break;
        }
        throw ParseError("expected ',' or ')'", 1, col());
      }
    }
    for (std::size_t i = 0; i < cycle.size(); ++i) images[cycle[i]] = cycle[(i + 1) % cycle.size()];
    skip_ws();
  }
  return Permutation(std::move(images));
}

bool Permutation::is_identity() const noexcept {
  for (std::size_t i = 0; i < images_.size(); ++i)
    if (images_[i] != i) return false;
  return true;
}

Permutation Permutation::inverse() const {
  std::vector<Point> inv(images_.size());
  for (std::size_t i = 0; i < images_.size(); ++i) inv[images_[i]] = static_cast<Point>(i);
  return Permutation(std::move(inv));
}

std::uint64_t Permutation::order() const {
  std::vector<bool> seen(images_.size(), false);
  std::uint64_t result = 1;
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (seen[i]) continue;
    std::uint64_t length = 0;
    for (std::size_t j = i; !seen[j]; j = images_[j]) {
      seen[j] = true;
      ++length;
    }
    result = std::lcm(result, length);
  }
  return result;
}

std::string Permutation::cycles() const {
  std::string out;
  std::vector<bool> seen(images_.size(), false);
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (seen[i] || images_[i] == i) continue;
    out += '(';
    bool first = true;
    for (std::size_t j = i; !seen[j]; j = images_[j]) {
      seen[j] = true;
      if (!first) out += ',';
      out += std::to_string(j + 1);
      first = false;
    }
    out += ')';
  }
  return out.empty() ? "()" : out;
}

Permutation operator*(const Permutation& p, const Permutation& q) { return compose(p, q); }

Permutation compose(const Permutation& p, const Permutation& q) {
  if (p.degree() != q.degree())
    throw StructuralError("degree mismatch: " + std::to_string(p.degree()) + " vs " + std::to_string(q.degree()));
  std::vector<Permutation::Point> images(p.degree());
  for (std::size_t i = 0; i < images.size(); ++i) images[i] = p.image(q.image(i));
  return Permutation(std::move(images));
}

std::size_t PermutationHash::operator()(const Permutation& p) const noexcept {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (auto x : p.images()) {
    h ^= x;
    h *= 0x100000001b3ull;
  }
  return static_cast<std::size_t>(h);
}

}  // namespace grpdb
