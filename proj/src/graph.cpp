#include "ergm/graph.hpp"

#include <string>

#include "ergm/errors.hpp"

namespace ergm {

SimpleGraph::SimpleGraph(int n) : n_(n), words_((n + kWordBits - 1) / kWordBits) {
  if (n < 1) throw ValidationError("graph must have at least one node, got " + std::to_string(n));
  bits_.assign(static_cast<std::size_t>(n) * words_, Word{0});
}

SimpleGraph SimpleGraph::complete(int n) {
  SimpleGraph g(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) g.set_edge(i, j, true);
  return g;
}

SimpleGraph SimpleGraph::cycle(int n) {
  SimpleGraph g(n);
  if (n < 3) throw ValidationError("cycle needs at least 3 nodes");
  for (int i = 0; i < n; ++i) g.set_edge(i, (i + 1) % n, true);
  return g;
}

SimpleGraph SimpleGraph::complete_bipartite(int a, int b) {
  SimpleGraph g(a + b);
  for (int i = 0; i < a; ++i)
    for (int j = a; j < a + b; ++j) g.set_edge(i, j, true);
  return g;
}

SimpleGraph SimpleGraph::from_edges(int n, std::span<const std::pair<int, int>> edges) {
  SimpleGraph g(n);
  for (auto [i, j] : edges) g.set_edge(i, j, true);
  return g;
}

void SimpleGraph::set_edge(int i, int j, bool present) {
  if (i < 0 || j < 0 || i >= n_ || j >= n_)
    throw ValidationError("node pair out of range");
  if (i == j) throw ValidationError("self-loops are not allowed (node " + std::to_string(i) + ")");
  const Word bit_j = Word{1} << (j % kWordBits);
  Word& wi = row_ptr(i)[j / kWordBits];
  const bool was = wi & bit_j;
  if (was == present) return;
  const Word bit_i = Word{1} << (i % kWordBits);
  Word& wj = row_ptr(j)[i / kWordBits];
  if (present) {
    wi |= bit_j;
    wj |= bit_i;
    ++edges_;
  } else {
    wi &= ~bit_j;
    wj &= ~bit_i;
    --edges_;
  }
}

int SimpleGraph::degree(int i) const {
  int d = 0;
  for (Word w : row(i)) d += std::popcount(w);
  return d;
}

int SimpleGraph::common_neighbors(int i, int j) const {
  const Word* a = row_ptr(i);
  const Word* b = row_ptr(j);
  int c = 0;
  for (int w = 0; w < words_; ++w) c += std::popcount(a[w] & b[w]);
  return c;
}

SimpleGraph SimpleGraph::permuted(std::span<const int> perm) const {
  if (static_cast<int>(perm.size()) != n_) throw ValidationError("permutation size mismatch");
  SimpleGraph g(n_);
  for (int i = 0; i < n_; ++i)
    for (int j = i + 1; j < n_; ++j)
      if (has_edge(i, j)) g.set_edge(perm[i], perm[j], true);
  return g;
}

std::pair<int, int> pair_from_index(int n, long long index) {
  int i = 0;
  long long row_len = n - 1;
  while (index >= row_len) {
    index -= row_len;
    ++i;
    --row_len;
  }
  return {i, i + 1 + static_cast<int>(index)};
}

}  // namespace ergm
