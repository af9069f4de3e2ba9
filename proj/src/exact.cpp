#include "ergm/exact.hpp"

#include <bit>
#include <cmath>
#include <limits>
#include <string>
#include <unordered_map>

#include "ergm/errors.hpp"
#include "ergm/graph.hpp"
#include "ergm/homomorphism.hpp"
#include "ergm/parallel.hpp"

namespace ergm {

namespace {

constexpr int kHomBits = 40;

using ChunkHistogram = std::unordered_map<std::uint64_t, std::uint64_t>;

ChunkHistogram enumerate_chunk(int n, const Motif& h2, const std::vector<std::pair<int, int>>& pairs,
                               int low_bits, std::uint64_t prefix) {
  SimpleGraph g(n);
  const int total_bits = static_cast<int>(pairs.size());
  for (int b = low_bits; b < total_bits; ++b)
    if (prefix >> (b - low_bits) & 1u) g.set_edge(pairs[b].first, pairs[b].second, true);
  auto hom2 = static_cast<long long>(hom_count(h2, g));
  ChunkHistogram hist;
  auto record = [&] {
    ++hist[(static_cast<std::uint64_t>(g.edge_count()) << kHomBits) | static_cast<std::uint64_t>(hom2)];
  };
  record();
  const std::uint64_t steps = std::uint64_t{1} << low_bits;
  for (std::uint64_t i = 1; i < steps; ++i) {
    const auto [a, b] = pairs[std::countr_zero(i)];
    hom2 += edge_toggle_delta(h2, g, a, b);
    g.toggle(a, b);
    record();
  }
  return hist;
}

void check_nodes(int n, const ExactOptions& opts) {
  if (n < 1) throw ValidationError("exact enumeration needs n >= 1");
  const int cap = opts.allow_expensive ? kMaxExpensiveExactNodes : kMaxExactNodes;
  if (n > cap)
    throw SizeError("exact enumeration supports n <= " + std::to_string(cap) + ", got " + std::to_string(n) +
                    (opts.allow_expensive ? "" : " (n = 8 needs the expensive option)"));
}

}  // namespace

ExactEnsemble::ExactEnsemble(int n, const Motif& h2, const ExactOptions& opts)
    : n_(n), ell_(h2.order()), k_(h2.edge_count()) {
  check_nodes(n, opts);
  h2.require_h2();
  if (h2.order() > kMaxCountingOrder)
    throw SizeError("exact enumeration supports motifs with at most " + std::to_string(kMaxCountingOrder) +
                    " vertices");

  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
  const int m = static_cast<int>(pairs.size());
  const int prefix_bits = m >= 12 ? 6 : 0;
  const int low_bits = m - prefix_bits;
  const std::int64_t chunks = std::int64_t{1} << prefix_bits;

  std::vector<ChunkHistogram> parts(chunks);
  parallel_for(chunks, opts.workers, [&](std::int64_t c) {
    parts[c] = enumerate_chunk(n, h2, pairs, low_bits, static_cast<std::uint64_t>(c));
  });
  const std::uint64_t mask = (std::uint64_t{1} << kHomBits) - 1;
  for (const auto& part : parts)
    for (auto [key, count] : part) classes_[{static_cast<int>(key >> kHomBits), key & mask}] += count;
}

std::uint64_t ExactEnsemble::graph_count() const {
  std::uint64_t total = 0;
  for (const auto& [key, count] : classes_) total += count;
  return total;
}

double ExactEnsemble::log_weight(const ClassKey& key, std::uint64_t count, const Params& p) const {
  // n^2 [beta1 * 2E/n^2 + beta2 * hom/n^l] = 2 beta1 E + beta2 hom n^(2-l)
  return std::log(static_cast<double>(count)) + 2.0 * p.beta1 * key.first +
         p.beta2 * static_cast<double>(key.second) * std::pow(static_cast<double>(n_), 2 - ell_);
}

double ExactEnsemble::psi(const Params& p) const {
  p.validate();
  double max_w = -std::numeric_limits<double>::infinity();
  for (const auto& [key, count] : classes_) max_w = std::max(max_w, log_weight(key, count, p));
  double sum = 0;
  for (const auto& [key, count] : classes_) sum += std::exp(log_weight(key, count, p) - max_w);
  return (max_w + std::log(sum)) / (static_cast<double>(n_) * n_);
}

ExactMoments ExactEnsemble::moments(const Params& p) const {
  p.validate();
  ExactMoments r;
  r.n = n_;
  r.psi = psi(p);
  const double n2 = static_cast<double>(n_) * n_;
  const double nl = std::pow(static_cast<double>(n_), ell_);
  const double log_z = r.psi * n2;
  std::vector<double> prob, t1, t2;
  double total = 0;
  for (const auto& [key, count] : classes_) {
    prob.push_back(std::exp(log_weight(key, count, p) - log_z));
    t1.push_back(2.0 * key.first / n2);
    t2.push_back(static_cast<double>(key.second) / nl);
    total += prob.back();
  }
  if (std::abs(total - 1.0) > 1e-12)
    throw ConsistencyError("exact weights sum to " + std::to_string(total) + ", not 1");
  for (std::size_t c = 0; c < prob.size(); ++c) {
    r.mean_t1 += prob[c] * t1[c];
    r.mean_t2 += prob[c] * t2[c];
  }
  for (std::size_t c = 0; c < prob.size(); ++c) {
    r.var_t1 += prob[c] * (t1[c] - r.mean_t1) * (t1[c] - r.mean_t1);
    r.var_t2 += prob[c] * (t2[c] - r.mean_t2) * (t2[c] - r.mean_t2);
  }
  return r;
}

double ExactEnsemble::gap(const Params& p) const {
  const auto m = moments(p);
  return std::pow(m.mean_t1, k_) - m.mean_t2;
}

std::uint64_t ExactEnsemble::class_count(int edges, std::uint64_t hom2) const {
  const auto it = classes_.find({edges, hom2});
  return it == classes_.end() ? 0 : it->second;
}

double psi_exact(int n, const Motif& h2, const Params& p, const ExactOptions& opts) {
  return ExactEnsemble(n, h2, opts).psi(p);
}

ExactMoments exact_moments(int n, const Motif& h2, const Params& p, const ExactOptions& opts) {
  return ExactEnsemble(n, h2, opts).moments(p);
}

double finite_gap(int n, const Motif& h2, const Params& p, const ExactOptions& opts) {
  return ExactEnsemble(n, h2, opts).gap(p);
}

MicrocanonicalClass microcanonical(int n, int edges, long long triangles) {
  check_nodes(n, {});
  MicrocanonicalClass r{0, -std::numeric_limits<double>::infinity()};
  if (edges < 0 || triangles < 0) return r;
  const ExactEnsemble ens(n, Motif::triangle());
  r.count = ens.class_count(edges, 6ULL * static_cast<std::uint64_t>(triangles));
  if (r.count > 0) r.entropy = std::log(static_cast<double>(r.count));
  return r;
}

Extrapolation psi_extrapolate(std::span<const std::pair<int, double>> values) {
  if (values.size() < 3)
    throw ValidationError("psi_extrapolate needs at least 3 points, got " + std::to_string(values.size()));
  for (std::size_t i = 1; i < values.size(); ++i)
    if (values[i].first <= values[i - 1].first)
      throw ValidationError("psi_extrapolate needs strictly increasing n");
  // Neville tableau evaluated at x = 1/n = 0. After pass `order`, entry i
  // holds the interpolant through points i..i+order.
  const std::size_t count = values.size();
  std::vector<double> x(count), p(count);
  for (std::size_t i = 0; i < count; ++i) {
    x[i] = 1.0 / values[i].first;
    p[i] = values[i].second;
  }
  double lower_order_last = p[count - 1];
  for (std::size_t order = 1; order < count; ++order) {
    if (order == count - 1) lower_order_last = p[1];
    for (std::size_t i = 0; i + order < count; ++i)
      p[i] = (x[i] * p[i + 1] - x[i + order] * p[i]) / (x[i] - x[i + order]);
  }
  return {p[0], std::abs(p[0] - lower_order_last)};
}

}  // namespace ergm
