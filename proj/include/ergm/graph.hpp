#pragma once

#include <bit>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace ergm {

// Labeled simple graph on n nodes. Each node owns a packed bitset row of its
// neighbors, so toggling an edge touches two words and common-neighbor counts
// are a popcount over ceil(n/64) words.
class SimpleGraph {
 public:
  using Word = std::uint64_t;
  static constexpr int kWordBits = 64;

  SimpleGraph() = default;
  explicit SimpleGraph(int n);

  static SimpleGraph complete(int n);
  static SimpleGraph cycle(int n);
  static SimpleGraph complete_bipartite(int a, int b);
  static SimpleGraph from_edges(int n, std::span<const std::pair<int, int>> edges);

  int size() const { return n_; }
  int words_per_row() const { return words_; }

  bool has_edge(int i, int j) const {
    return (row_ptr(i)[j / kWordBits] >> (j % kWordBits)) & Word{1};
  }
  void set_edge(int i, int j, bool present);
  void toggle(int i, int j) { set_edge(i, j, !has_edge(i, j)); }

  std::span<const Word> row(int i) const {
    return {row_ptr(i), static_cast<std::size_t>(words_)};
  }

  int degree(int i) const;
  int common_neighbors(int i, int j) const;
  long long edge_count() const { return edges_; }

  // Graph with node v relabeled perm[v].
  SimpleGraph permuted(std::span<const int> perm) const;

  friend bool operator==(const SimpleGraph& a, const SimpleGraph& b) {
    return a.n_ == b.n_ && a.bits_ == b.bits_;
  }

 private:
  const Word* row_ptr(int i) const { return bits_.data() + static_cast<std::size_t>(i) * words_; }
  Word* row_ptr(int i) { return bits_.data() + static_cast<std::size_t>(i) * words_; }

  int n_ = 0;
  int words_ = 0;
  long long edges_ = 0;
  std::vector<Word> bits_;
};

// Index of the unordered pair (i, j), i < j, in row-major order over the
// strict upper triangle; and the inverse map.
inline long long pair_index(int n, int i, int j) {
  return static_cast<long long>(i) * (2LL * n - i - 1) / 2 + (j - i - 1);
}
std::pair<int, int> pair_from_index(int n, long long index);

}  // namespace ergm
