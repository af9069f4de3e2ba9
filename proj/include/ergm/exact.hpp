#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <utility>
#include <vector>

#include "ergm/motif.hpp"
#include "ergm/params.hpp"

namespace ergm {

inline constexpr int kMaxExactNodes = 7;
inline constexpr int kMaxExpensiveExactNodes = 8;

struct ExactOptions {
  bool allow_expensive = false;  // permits n = 8 (2^28 graphs)
  int workers = 0;               // 0: hardware concurrency
};

struct ExactMoments {
  int n = 0;
  double psi = 0;
  double mean_t1 = 0;
  double mean_t2 = 0;
  double var_t1 = 0;
  double var_t2 = 0;
};

// All labeled graphs on n nodes, grouped by (edge count, hom(H2, G)). The
// grouping is exact integer bookkeeping, so everything downstream (free
// energy, moments, microcanonical counts) is a finite sum over classes.
//
// Enumeration runs in Gray-code order inside each fixed prefix of the edge
// bitmask, so consecutive graphs differ by one toggle and hom(H2, .) is
// maintained with edge_toggle_delta. Prefix chunks are independent and their
// histograms merge by addition, making the result independent of the
// worker count.
class ExactEnsemble {
 public:
  using ClassKey = std::pair<int, std::uint64_t>;  // (edges, hom(H2, G))

  ExactEnsemble(int n, const Motif& h2, const ExactOptions& opts = {});

  int nodes() const { return n_; }
  int motif_order() const { return ell_; }
  int motif_edges() const { return k_; }
  const std::map<ClassKey, std::uint64_t>& classes() const { return classes_; }
  std::uint64_t graph_count() const;

  // (1/n^2) log sum_G exp(n^2 [beta1 t(edge,G) + beta2 t(H2,G)]).
  double psi(const Params& p) const;
  ExactMoments moments(const Params& p) const;
  // (E t(edge))^k - E t(H2).
  double gap(const Params& p) const;
  std::uint64_t class_count(int edges, std::uint64_t hom2) const;

 private:
  double log_weight(const ClassKey& key, std::uint64_t count, const Params& p) const;

  int n_;
  int ell_;
  int k_;
  std::map<ClassKey, std::uint64_t> classes_;
};

double psi_exact(int n, const Motif& h2, const Params& p, const ExactOptions& opts = {});
ExactMoments exact_moments(int n, const Motif& h2, const Params& p, const ExactOptions& opts = {});
double finite_gap(int n, const Motif& h2, const Params& p, const ExactOptions& opts = {});

struct MicrocanonicalClass {
  std::uint64_t count = 0;
  double entropy = 0;  // ln(count); -infinity for an empty class
};

// Number of labeled graphs on n nodes with exactly `edges` edges and
// `triangles` triangles. Infeasible counts give an empty class.
MicrocanonicalClass microcanonical(int n, int edges, long long triangles);

struct Extrapolation {
  double estimate = 0;
  double error = 0;  // |difference of the two highest-order extrapolants|
};

// Polynomial (Richardson) extrapolation of psi_n in 1/n to 1/n = 0 through
// all supplied points. Needs >= 3 points with strictly increasing n.
Extrapolation psi_extrapolate(std::span<const std::pair<int, double>> values);

}  // namespace ergm
