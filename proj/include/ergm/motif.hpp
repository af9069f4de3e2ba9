#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace ergm {

inline constexpr int kMaxCountingOrder = 8;   // hom_count brute force
inline constexpr int kMaxColoringOrder = 10;  // chromatic_number

// Small simple graph H used as a motif. The edge itself (H1) is a Motif with
// one edge; anything used as H2 must have at least two edges (see
// require_h2). The chromatic number is computed once at construction.
class Motif {
 public:
  // Throws ValidationError on loops, duplicate edges or an empty edge list,
  // SizeError when the vertex count exceeds kMaxColoringOrder.
  Motif(int vertex_count, std::vector<std::pair<int, int>> edges, std::string name = {});

  static Motif edge();
  static Motif triangle();
  static Motif clique(int l);
  static Motif cycle(int l);

  // "0-1,1-2,2-0" or one of the aliases edge, triangle, k4, c5.
  static Motif parse(std::string_view text);

  int order() const { return ell_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }
  int chromatic_number() const { return chi_; }
  const std::string& name() const { return name_; }

  bool is_edge() const { return ell_ == 2 && edges_.size() == 1; }
  bool is_triangle() const { return ell_ == 3 && edges_.size() == 3; }

  bool adjacent(int a, int b) const;
  const std::vector<int>& neighbors(int v) const { return adj_[v]; }

  // Throws HypothesisError unless the motif has k >= 2 edges.
  void require_h2() const;

 private:
  int ell_;
  std::vector<std::pair<int, int>> edges_;
  std::vector<std::vector<int>> adj_;
  int chi_;
  std::string name_;
};

// Minimal number of colors in a proper vertex coloring; exhaustive
// backtracking. SizeError above kMaxColoringOrder vertices.
int chromatic_number(int vertex_count, const std::vector<std::pair<int, int>>& edges);

}  // namespace ergm
