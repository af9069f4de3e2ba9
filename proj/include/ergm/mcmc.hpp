#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "ergm/graph.hpp"
#include "ergm/graphon.hpp"
#include "ergm/motif.hpp"
#include "ergm/params.hpp"

namespace ergm {

using Rng = std::mt19937_64;

inline constexpr int kBatchCount = 20;

struct AnnealStage {
  double beta2 = 0;
  long long sweeps = 0;
};

// Geometric ladder -1, -2, -4, ... down to `target`, which is always the last
// stage. Every stage gets `sweeps_per_stage` sweeps. A target >= -1 gives a
// single stage.
std::vector<AnnealStage> geometric_ladder(double target, long long sweeps_per_stage);

struct ChainConfig {
  int n = 10;
  Motif motif = Motif::triangle();
  Params params;
  long long burn_in = 100;   // sweeps at the target parameters
  long long samples = 1000;  // sweeps during which records are taken
  long long thinning = 1;    // sweeps between records
  std::uint64_t seed = 0;
  std::vector<AnnealStage> annealing;  // run before burn-in; last stage at params.beta2

  // Throws ValidationError. At least kBatchCount records are required for
  // the batch-means error estimate.
  void validate() const;
};

struct TraceRow {
  long long sweep = 0;
  double t1 = 0;
  double t2 = 0;
};

struct ChainStats {
  double mean_t1 = 0;
  double mean_t2 = 0;
  double se_t1 = 0;
  double se_t2 = 0;
  double acceptance_rate = 0;  // fraction of sampling-phase steps that changed the graph
  long long steps = 0;
  SimpleGraph final_graph;
  std::vector<TraceRow> trace;
};

// Hamiltonian difference H(G + ij) - H(G - ij) with
// H = n^2 [beta1 t(edge, .) + beta2 t(H2, .)].
double hamiltonian_delta(const SimpleGraph& g, const Motif& h2, const Params& p, int i, int j);

// Heat-bath probability that {i,j} is present after an update of that pair.
double edge_probability(const SimpleGraph& g, const Motif& h2, const Params& p, int i, int j);

// One heat-bath update of a uniformly chosen pair. Returns true when the
// graph changed.
bool glauber_step(SimpleGraph& g, const Motif& h2, const Params& p, Rng& rng);

// Deterministic given config.seed.
ChainStats run_chain(const ChainConfig& config);

struct StructureDiagnostic {
  double distance = 0;       // block-permutation cut distance (upper bound)
  StepGraphon fitted;        // coarsened, reordered empirical graphon
  StepGraphon reference;     // p* g with r = chi(H2) - 1 equal parts
  std::vector<int> part_of;  // part label of each node
};

// Reorders nodes by a greedy (chi(H2)-1)-way max-cut partition, coarsens the
// empirical graphon to m equal blocks and measures its cut distance to the
// multipartite reference with p* = logistic(2 beta1). For three or more
// parts the partition heuristic is approximate.
StructureDiagnostic structure_diagnostic(const SimpleGraph& g, const Motif& h2, const Params& p, int m = 4);

// Greedy max-cut style partition into r parts followed by single-node moves
// until no move lowers the within-part edge count.
std::vector<int> greedy_partition(const SimpleGraph& g, int r);

}  // namespace ergm
