#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ergm/exact.hpp"
#include "ergm/mcmc.hpp"
#include "ergm/motif.hpp"
#include "ergm/params.hpp"
#include "ergm/variational.hpp"

namespace ergm {

// `count` evenly spaced values on the half-open interval [lo, hi):
// lo + i (hi - lo) / count. count = 0 is an empty range; count = 1 is {lo}.
struct ParamRange {
  double lo = 0;
  double hi = 0;
  int count = 1;

  std::vector<double> values() const;
  static ParamRange single(double v) { return {v, v, 1}; }
};

struct ScanOptions {
  int exact_n = 0;          // 0 disables the finite-n gap column
  int ascent_blocks = 0;    // 0 disables the ascent column; must be a multiple of chi - 1
  int ascent_restarts = 2;
  std::uint64_t seed = 0;   // master seed for ascent restarts
  int workers = 0;
};

struct ScanRecord {
  double beta1 = 0;
  double beta2 = 0;
  double er_value = 0;
  double mp_value = 0;
  Phase winner = Phase::disordered;
  double C = 0;
  double u_star = 0;
  double p_star = 0;
  std::optional<double> ascent_objective;
  std::optional<double> finite_n_gap;
  // Ascent found a step graphon strictly better than both ansatz values.
  bool ascent_beats_ansatz = false;
};

// Row-major over beta1 then beta2. HypothesisError when chi(H2) < 3.
std::vector<ScanRecord> scan_grid(const Motif& h2, const ParamRange& beta1, const ParamRange& beta2,
                                  const ScanOptions& opts = {});

struct TransitionEstimate {
  double beta1 = 0;
  double beta2_critical = 0;
  double bracket_lo = 0;  // multipartite ansatz wins here
  double bracket_hi = 0;  // constant ansatz wins here
  double bracket_width = 0;
  std::string method = "ansatz_crossing";
  // d/d beta1 of the winning branch on either side of the bracket.
  double dbeta1_disordered = 0;
  double dbeta1_multipartite = 0;
};

inline constexpr double kTransitionSearchFloor = -1e4;

// Bisection on the sign of er_value - mp_value over beta2 in [-1e4, 0).
// ConsistencyError if there is no sign change or the bracket reaches into
// the analytic strip |beta2| < 2 / (k (k-1)).
TransitionEstimate find_transition(const Motif& h2, double beta1, double tolerance);

struct VerifyCheck {
  std::string name;
  bool passed = true;
  bool report_only = false;
  double value = 0;
  double threshold = 0;
  std::string detail;
};

struct VerifyOptions {
  int n_exact = 0;  // 0: MCMC-only mode
  ChainConfig chain;
  int structure_blocks = 4;
};

struct VerifyReport {
  Params params;
  std::string motif;
  AnsatzComparison ansatz;
  std::optional<ExactMoments> exact;
  std::optional<ChainStats> chain;
  std::optional<double> structure_distance;
  std::vector<VerifyCheck> checks;

  bool passed() const;
};

// Cross-checks one parameter point. Exact-vs-MCMC checks run when the chain
// size equals n_exact; derivative gaps against the variational prediction
// are reported without a threshold; the structure and density checks apply
// when the multipartite ansatz wins.
VerifyReport verify_point(const Motif& h2, const Params& p, const VerifyOptions& opts);

}  // namespace ergm
