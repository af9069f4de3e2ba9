#include "ergm/motif.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <set>

#include "ergm/errors.hpp"

namespace ergm {

namespace {

bool color_from(int v, int colors, const std::vector<std::vector<char>>& adj, std::vector<int>& color) {
  const int l = static_cast<int>(adj.size());
  if (v == l) return true;
  // Symmetry breaking: vertex v may open at most one new color.
  int used = 0;
  for (int u = 0; u < v; ++u) used = std::max(used, color[u] + 1);
  const int limit = std::min(colors, used + 1);
  for (int c = 0; c < limit; ++c) {
    bool ok = true;
    for (int u = 0; u < v && ok; ++u) ok = !(adj[v][u] && color[u] == c);
    if (!ok) continue;
    color[v] = c;
    if (color_from(v + 1, colors, adj, color)) return true;
  }
  color[v] = -1;
  return false;
}

int parse_label(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  int v = -1;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size() || v < 0)
    throw ValidationError("bad vertex label '" + std::string(s) + "' in motif");
  return v;
}

}  // namespace

int chromatic_number(int vertex_count, const std::vector<std::pair<int, int>>& edges) {
  if (vertex_count > kMaxColoringOrder)
    throw SizeError("chromatic_number supports at most " + std::to_string(kMaxColoringOrder) +
                    " vertices, got " + std::to_string(vertex_count));
  if (vertex_count <= 0) return 0;
  std::vector<std::vector<char>> adj(vertex_count, std::vector<char>(vertex_count, 0));
  for (auto [a, b] : edges) {
    if (a < 0 || b < 0 || a >= vertex_count || b >= vertex_count || a == b)
      throw ValidationError("chromatic_number: bad edge");
    adj[a][b] = adj[b][a] = 1;
  }
  std::vector<int> color(vertex_count, -1);
  for (int c = 1; c <= vertex_count; ++c)
    if (color_from(0, c, adj, color)) return c;
  return vertex_count;
}

Motif::Motif(int vertex_count, std::vector<std::pair<int, int>> edges, std::string name)
    : ell_(vertex_count), edges_(std::move(edges)), name_(std::move(name)) {
  for (auto [a, b] : edges_)
    if (a == b) throw ValidationError("motif has a self-loop at vertex " + std::to_string(a));
  if (ell_ < 2) throw ValidationError("motif needs at least two vertices");
  if (ell_ > kMaxColoringOrder)
    throw SizeError("motif order " + std::to_string(ell_) + " exceeds cap " +
                    std::to_string(kMaxColoringOrder));
  if (edges_.empty()) throw ValidationError("motif needs at least one edge");
  std::set<std::pair<int, int>> seen;
  adj_.assign(ell_, {});
  for (auto& [a, b] : edges_) {
    if (a < 0 || b < 0 || a >= ell_ || b >= ell_) throw ValidationError("motif edge out of range");
    if (a > b) std::swap(a, b);
    if (!seen.insert({a, b}).second)
      throw ValidationError("motif has duplicate edge " + std::to_string(a) + "-" + std::to_string(b));
    adj_[a].push_back(b);
    adj_[b].push_back(a);
  }
  chi_ = ergm::chromatic_number(ell_, edges_);
  if (name_.empty()) {
    for (std::size_t e = 0; e < edges_.size(); ++e) {
      if (e) name_ += ',';
      name_ += std::to_string(edges_[e].first) + "-" + std::to_string(edges_[e].second);
    }
  }
}

Motif Motif::edge() { return Motif(2, {{0, 1}}, "edge"); }
Motif Motif::triangle() { return Motif(3, {{0, 1}, {1, 2}, {0, 2}}, "triangle"); }

Motif Motif::clique(int l) {
  std::vector<std::pair<int, int>> e;
  for (int a = 0; a < l; ++a)
    for (int b = a + 1; b < l; ++b) e.emplace_back(a, b);
  return Motif(l, std::move(e), "k" + std::to_string(l));
}

Motif Motif::cycle(int l) {
  std::vector<std::pair<int, int>> e;
  for (int a = 0; a < l; ++a) e.emplace_back(a, (a + 1) % l);
  return Motif(l, std::move(e), "c" + std::to_string(l));
}

Motif Motif::parse(std::string_view text) {
  std::string lower;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) lower += static_cast<char>(std::tolower(c));
  if (lower == "edge") return edge();
  if (lower == "triangle") return triangle();
  if (lower == "k4") return clique(4);
  if (lower == "c5") return cycle(5);
  if (lower.empty()) throw ValidationError("empty motif string");

  std::vector<std::pair<int, int>> edges;
  int max_label = -1;
  std::string_view rest = lower;
  while (!rest.empty()) {
    const auto comma = rest.find(',');
    const std::string_view item = rest.substr(0, comma);
    rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
    const auto dash = item.find('-');
    if (dash == std::string_view::npos)
      throw ValidationError("motif edge '" + std::string(item) + "' is not of the form a-b");
    const int a = parse_label(item.substr(0, dash));
    const int b = parse_label(item.substr(dash + 1));
    max_label = std::max({max_label, a, b});
    edges.emplace_back(a, b);
  }
  return Motif(max_label + 1, std::move(edges));
}

bool Motif::adjacent(int a, int b) const {
  return std::find(adj_[a].begin(), adj_[a].end(), b) != adj_[a].end();
}

void Motif::require_h2() const {
  if (edge_count() < 2)
    throw HypothesisError("H2 must have at least two edges; '" + name_ + "' has " +
                          std::to_string(edge_count()));
}

}  // namespace ergm
