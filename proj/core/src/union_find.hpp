#pragma once

#include <cstddef>
#include <numeric>
#include <vector>

namespace grpdb::detail {

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }

  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (a < b) parent_[b] = a;
    else parent_[a] = b;
  }

  /// Component ids numbered 0, 1, ... in order of each component's smallest member.
  std::vector<std::size_t> labels() {
    std::vector<std::size_t> id(parent_.size(), static_cast<std::size_t>(-1));
    std::vector<std::size_t> out(parent_.size());
    std::size_t next = 0;
    for (std::size_t i = 0; i < parent_.size(); ++i) {
      const std::size_t r = find(i);
      if (id[r] == static_cast<std::size_t>(-1)) id[r] = next++;
      out[i] = id[r];
    }
    return out;
  }

 private:
  std::vector<std::size_t> parent_;
};

}  // namespace grpdb::detail
