#pragma once

#include <cstdint>
#include <numeric>
#include <utility>
#include <vector>

namespace modgroup {

// Disjoint sets over 0..n-1 with path halving and union by size.
template <typename Index = std::int32_t>
class UnionFind {
 public:
  UnionFind() = default;
  explicit UnionFind(std::size_t n) { reset(n); }

  void reset(std::size_t n) {
    parent_.resize(n);
    size_.assign(n, 1);
    std::iota(parent_.begin(), parent_.end(), Index{0});
    components_ = n;
  }

  Index add() {
    const auto i = static_cast<Index>(parent_.size());
    parent_.push_back(i);
    size_.push_back(1);
    ++components_;
    return i;
  }

  Index find(Index x) noexcept {
    while (parent_[static_cast<std::size_t>(x)] != x) {
      auto& p = parent_[static_cast<std::size_t>(x)];
      p = parent_[static_cast<std::size_t>(p)];
      x = p;
    }
    return x;
  }

  // Returns the surviving representative, or the common one if already joined.
  Index unite(Index x, Index y) noexcept {
    x = find(x);
    y = find(y);
    if (x == y) return x;
    if (size_[static_cast<std::size_t>(x)] < size_[static_cast<std::size_t>(y)]) std::swap(x, y);
    parent_[static_cast<std::size_t>(y)] = x;
    size_[static_cast<std::size_t>(x)] += size_[static_cast<std::size_t>(y)];
    --components_;
    return x;
  }

  bool same(Index x, Index y) noexcept { return find(x) == find(y); }
  std::size_t components() const noexcept { return components_; }
  std::size_t size() const noexcept { return parent_.size(); }

 private:
  std::vector<Index> parent_;
  std::vector<std::uint32_t> size_;
  std::size_t components_ = 0;
};

}  // namespace modgroup
