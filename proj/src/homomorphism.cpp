#include "ergm/homomorphism.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <string>
#include <vector>

#include "ergm/errors.hpp"

namespace ergm {

namespace {

using Word = SimpleGraph::Word;

// One constraint on the vertex placed at some depth: its image must be a
// neighbor, in graph `which`, of the image placed at depth `depth`.
struct Link {
  int depth;
  int which;
};

// Vertex order plus, for each depth, the links back to earlier depths.
struct Plan {
  std::vector<int> order;
  std::vector<std::vector<Link>> links;
};

// Greedy order: after any preset prefix, repeatedly take the vertex with the
// most already-placed neighbors (ties: larger degree, then smaller label).
std::vector<int> greedy_order(const Motif& h, std::vector<int> prefix) {
  const int l = h.order();
  std::vector<char> placed(l, 0);
  for (int v : prefix) placed[v] = 1;
  std::vector<int> order = std::move(prefix);
  while (static_cast<int>(order.size()) < l) {
    int best = -1, best_placed = -1, best_deg = -1;
    for (int v = 0; v < l; ++v) {
      if (placed[v]) continue;
      int np = 0;
      for (int u : h.neighbors(v)) np += placed[u];
      const int deg = static_cast<int>(h.neighbors(v).size());
      if (np > best_placed || (np == best_placed && deg > best_deg)) {
        best = v;
        best_placed = np;
        best_deg = deg;
      }
    }
    placed[best] = 1;
    order.push_back(best);
  }
  return order;
}

// which(edge_index) selects the graph an edge must land in.
template <class Which>
Plan make_plan(const Motif& h, std::vector<int> order, Which which) {
  const int l = h.order();
  std::vector<int> depth_of(l);
  for (int d = 0; d < l; ++d) depth_of[order[d]] = d;
  Plan plan{std::move(order), std::vector<std::vector<Link>>(l)};
  const auto& edges = h.edges();
  for (int e = 0; e < static_cast<int>(edges.size()); ++e) {
    const int da = depth_of[edges[e].first];
    const int db = depth_of[edges[e].second];
    const int w = which(e);
    if (w < 0) continue;
    if (da < db)
      plan.links[db].push_back({da, w});
    else
      plan.links[da].push_back({db, w});
  }
  return plan;
}

class Counter {
 public:
  Counter(const Plan& plan, std::array<const SimpleGraph*, 2> graphs)
      : plan_(plan), graphs_(graphs), n_(graphs[0]->size()), words_(graphs[0]->words_per_row()),
        image_(plan.order.size(), -1), buf_(plan.order.size() * words_) {
    full_.assign(words_, ~Word{0});
    if (n_ % SimpleGraph::kWordBits)
      full_.back() = (Word{1} << (n_ % SimpleGraph::kWordBits)) - 1;
  }

  void fix(int depth, int node) { image_[depth] = node; }

  std::uint64_t count_from(int depth) {
    const int l = static_cast<int>(plan_.order.size());
    if (depth == l) return 1;
    Word* cand = buf_.data() + static_cast<std::size_t>(depth) * words_;
    std::copy(full_.begin(), full_.end(), cand);
    for (const Link& link : plan_.links[depth]) {
      auto row = graphs_[link.which]->row(image_[link.depth]);
      for (int w = 0; w < words_; ++w) cand[w] &= row[w];
    }
    if (depth == l - 1) {
      std::uint64_t c = 0;
      for (int w = 0; w < words_; ++w) c += std::popcount(cand[w]);
      return c;
    }
    std::uint64_t total = 0;
    for (int w = 0; w < words_; ++w) {
      Word bits = cand[w];
      while (bits) {
        const int b = std::countr_zero(bits);
        bits &= bits - 1;
        image_[depth] = w * SimpleGraph::kWordBits + b;
        total += count_from(depth + 1);
      }
    }
    return total;
  }

 private:
  const Plan& plan_;
  std::array<const SimpleGraph*, 2> graphs_;
  int n_;
  int words_;
  std::vector<int> image_;
  std::vector<Word> buf_;
  std::vector<Word> full_;
};

void check_counting_size(const Motif& h, const SimpleGraph& g) {
  if (h.order() > kMaxCountingOrder)
    throw SizeError("homomorphism counting supports motifs with at most " +
                    std::to_string(kMaxCountingOrder) + " vertices, got " + std::to_string(h.order()));
  double bound = 1;
  for (int i = 0; i < h.order(); ++i) bound *= g.size();
  if (bound >= 9.2e18) throw SizeError("n^l overflows the homomorphism counter");
}

void check_pair(const SimpleGraph& g, int i, int j) {
  if (i == j) throw ValidationError("toggle pair is a self-loop at node " + std::to_string(i));
  if (i < 0 || j < 0 || i >= g.size() || j >= g.size())
    throw ValidationError("toggle pair out of range");
}

}  // namespace

std::uint64_t hom_count(const Motif& h, const SimpleGraph& g) {
  check_counting_size(h, g);
  const Plan plan = make_plan(h, greedy_order(h, {}), [](int) { return 0; });
  Counter counter(plan, {&g, &g});
  return counter.count_from(0);
}

double hom_density(const Motif& h, const SimpleGraph& g) {
  const std::uint64_t c = hom_count(h, g);
  double denom = 1;
  for (int i = 0; i < h.order(); ++i) denom *= g.size();
  return static_cast<double>(c) / denom;
}

namespace detail {

long long edge_toggle_delta_enumerate(const Motif& h, const SimpleGraph& g, int i, int j) {
  check_pair(g, i, j);
  check_counting_size(h, g);
  const bool present = g.has_edge(i, j);
  SimpleGraph minus = g;
  SimpleGraph plus = g;
  minus.set_edge(i, j, false);
  plus.set_edge(i, j, true);

  // Each map that uses {i,j} has a unique first H-edge e0 landing on it.
  // Earlier edges must avoid the pair (graph `minus`), later ones may use it.
  std::uint64_t total = 0;
  const auto& edges = h.edges();
  for (int e0 = 0; e0 < static_cast<int>(edges.size()); ++e0) {
    const auto [a, b] = edges[e0];
    const Plan plan = make_plan(h, greedy_order(h, {a, b}), [e0](int e) {
      return e < e0 ? 0 : (e == e0 ? -1 : 1);
    });
    Counter counter(plan, {&minus, &plus});
    for (auto [x, y] : {std::pair{i, j}, std::pair{j, i}}) {
      counter.fix(0, x);
      counter.fix(1, y);
      total += counter.count_from(2);
    }
  }
  const auto delta = static_cast<long long>(total);
  return present ? -delta : delta;
}

}  // namespace detail

long long edge_toggle_delta(const Motif& h, const SimpleGraph& g, int i, int j) {
  check_pair(g, i, j);
  const bool present = g.has_edge(i, j);
  long long delta;
  if (h.is_edge()) {
    delta = 2;
  } else if (h.is_triangle()) {
    delta = 6LL * g.common_neighbors(i, j);
  } else {
    return detail::edge_toggle_delta_enumerate(h, g, i, j);
  }
  return present ? -delta : delta;
}

StepGraphon empirical_graphon(const SimpleGraph& g) {
  const int n = g.size();
  StepGraphon f(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (g.has_edge(i, j)) f.set(i, j, 1.0);
  return f;
}

}  // namespace ergm
