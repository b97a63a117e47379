#pragma once

#include <numeric>
#include <vector>

namespace ising::detail {

// Union-find with path halving and union by size.
class UnionFind {
 public:
  explicit UnionFind(int n) { reset(n); }

  void reset(int n) {
    parent_.resize(n);
    std::iota(parent_.begin(), parent_.end(), 0);
    size_.assign(n, 1);
  }

  int find(int p) {
    while (p != parent_[p]) {
      parent_[p] = parent_[parent_[p]];
      p = parent_[p];
    }
    return p;
  }

  void unite(int a, int b) {
    int ra = find(a), rb = find(b);
    if (ra == rb) return;
    if (size_[ra] < size_[rb]) std::swap(ra, rb);
    parent_[rb] = ra;
    size_[ra] += size_[rb];
  }

  int component_size(int p) { return size_[find(p)]; }

 private:
  std::vector<int> parent_;
  std::vector<int> size_;
};

}  // namespace ising::detail
