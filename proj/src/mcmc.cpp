#include "ergm/mcmc.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "ergm/errors.hpp"
#include "ergm/homomorphism.hpp"

namespace ergm {

std::vector<AnnealStage> geometric_ladder(double target, long long sweeps_per_stage) {
  std::vector<AnnealStage> stages;
  for (double b = -1.0; b > target; b *= 2.0) stages.push_back({b, sweeps_per_stage});
  stages.push_back({target, sweeps_per_stage});
  return stages;
}

void ChainConfig::validate() const {
  params.validate();
  motif.require_h2();
  if (motif.order() > kMaxCountingOrder)
    throw SizeError("sampler supports motifs with at most " + std::to_string(kMaxCountingOrder) + " vertices");
  if (n < 2) throw ValidationError("chain needs n >= 2 nodes");
  if (burn_in < 1 || samples < 1 || thinning < 1)
    throw ValidationError("burn_in, samples and thinning must all be >= 1");
  if (samples / thinning < kBatchCount)
    throw ValidationError("samples / thinning must give at least " + std::to_string(kBatchCount) +
                          " records for batch means");
  for (const auto& s : annealing)
    if (s.sweeps < 0 || !std::isfinite(s.beta2)) throw ValidationError("bad annealing stage");
  if (!annealing.empty() && annealing.back().beta2 != params.beta2)
    throw ValidationError("annealing schedule must end at the target beta2");
}

namespace {

double hom_scale(const SimpleGraph& g, const Motif& h2) {
  return std::pow(static_cast<double>(g.size()), 2 - h2.order());
}

// Change in hom(H2, .) when {i,j} goes from absent to present.
long long added_homs(const SimpleGraph& g, const Motif& h2, int i, int j) {
  const long long d = edge_toggle_delta(h2, g, i, j);
  return g.has_edge(i, j) ? -d : d;
}

std::pair<int, int> random_pair(int n, Rng& rng) {
  std::uniform_int_distribution<int> first(0, n - 1);
  std::uniform_int_distribution<int> second(0, n - 2);
  const int i = first(rng);
  int j = second(rng);
  if (j >= i) ++j;
  return {std::min(i, j), std::max(i, j)};
}

// Heat-bath move that keeps a running hom(H2, .) count in sync.
bool update(SimpleGraph& g, const Motif& h2, const Params& p, double scale, Rng& rng, long long& hom2) {
  const auto [i, j] = random_pair(g.size(), rng);
  const long long added = added_homs(g, h2, i, j);
  const double prob = logistic(2.0 * p.beta1 + p.beta2 * static_cast<double>(added) * scale);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  const bool want = unif(rng) < prob;
  const bool had = g.has_edge(i, j);
  if (want == had) return false;
  g.set_edge(i, j, want);
  hom2 += want ? added : -added;
  return true;
}

struct BatchMeans {
  double mean = 0;
  double se = 0;
};

BatchMeans batch_means(const std::vector<double>& x) {
  const std::size_t size = x.size() / kBatchCount;
  const std::size_t offset = x.size() - size * kBatchCount;
  std::vector<double> means(kBatchCount, 0.0);
  for (int b = 0; b < kBatchCount; ++b) {
    for (std::size_t i = 0; i < size; ++i) means[b] += x[offset + b * size + i];
    means[b] /= static_cast<double>(size);
  }
  BatchMeans r;
  r.mean = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
  const double bm = std::accumulate(means.begin(), means.end(), 0.0) / kBatchCount;
  double ss = 0;
  for (double m : means) ss += (m - bm) * (m - bm);
  r.se = std::sqrt(ss / (kBatchCount - 1) / kBatchCount);
  return r;
}

}  // namespace

double hamiltonian_delta(const SimpleGraph& g, const Motif& h2, const Params& p, int i, int j) {
  return 2.0 * p.beta1 + p.beta2 * static_cast<double>(added_homs(g, h2, i, j)) * hom_scale(g, h2);
}

double edge_probability(const SimpleGraph& g, const Motif& h2, const Params& p, int i, int j) {
  return logistic(hamiltonian_delta(g, h2, p, i, j));
}

bool glauber_step(SimpleGraph& g, const Motif& h2, const Params& p, Rng& rng) {
  long long unused = 0;
  return update(g, h2, p, hom_scale(g, h2), rng, unused);
}

ChainStats run_chain(const ChainConfig& config) {
  config.validate();
  const int n = config.n;
  const Motif& h2 = config.motif;
  Rng rng(config.seed);

  // Start from the exact beta2 = 0 law: independent edges.
  SimpleGraph g(n);
  {
    std::bernoulli_distribution coin(logistic(2.0 * config.params.beta1));
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (coin(rng)) g.set_edge(i, j, true);
  }
  long long hom2 = static_cast<long long>(hom_count(h2, g));
  const double scale = hom_scale(g, h2);
  const long long sweep_steps = static_cast<long long>(n) * (n - 1) / 2;

  auto run_sweeps = [&](const Params& p, long long sweeps) {
    long long changed = 0;
    for (long long s = 0; s < sweeps * sweep_steps; ++s) changed += update(g, h2, p, scale, rng, hom2);
    return changed;
  };

  for (const auto& stage : config.annealing) run_sweeps({config.params.beta1, stage.beta2}, stage.sweeps);
  run_sweeps(config.params, config.burn_in);

  ChainStats stats;
  std::vector<double> t1, t2;
  const double n2 = static_cast<double>(n) * n;
  const double nl = std::pow(static_cast<double>(n), h2.order());
  long long changed = 0;
  for (long long sweep = 1; sweep <= config.samples; ++sweep) {
    changed += run_sweeps(config.params, 1);
    if (sweep % config.thinning == 0) {
      t1.push_back(2.0 * static_cast<double>(g.edge_count()) / n2);
      t2.push_back(static_cast<double>(hom2) / nl);
      stats.trace.push_back({sweep, t1.back(), t2.back()});
    }
  }
  const auto b1 = batch_means(t1);
  const auto b2 = batch_means(t2);
  stats.mean_t1 = b1.mean;
  stats.se_t1 = b1.se;
  stats.mean_t2 = b2.mean;
  stats.se_t2 = b2.se;
  stats.steps = config.samples * sweep_steps;
  stats.acceptance_rate = static_cast<double>(changed) / static_cast<double>(stats.steps);
  stats.final_graph = std::move(g);
  return stats;
}

std::vector<int> greedy_partition(const SimpleGraph& g, int r) {
  const int n = g.size();
  if (r < 1) throw ValidationError("partition needs r >= 1 parts");
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return g.degree(a) > g.degree(b); });

  std::vector<int> part(n, -1);
  std::vector<int> size(r, 0);
  // links[v][q]: neighbors of v currently in part q
  std::vector<std::vector<int>> links(n, std::vector<int>(r, 0));
  auto assign = [&](int v, int q) {
    const int old = part[v];
    for (int u = 0; u < n; ++u) {
      if (u == v || !g.has_edge(u, v)) continue;
      if (old >= 0) --links[u][old];
      ++links[u][q];
    }
    if (old >= 0) --size[old];
    ++size[q];
    part[v] = q;
  };
  for (int v : order) {
    int best = 0;
    for (int q = 1; q < r; ++q)
      if (links[v][q] < links[v][best] || (links[v][q] == links[v][best] && size[q] < size[best])) best = q;
    assign(v, best);
  }
  for (int pass = 0; pass < 100; ++pass) {
    bool moved = false;
    for (int v = 0; v < n; ++v) {
      int best = part[v];
      for (int q = 0; q < r; ++q)
        if (links[v][q] < links[v][best]) best = q;
      if (best != part[v]) {
        assign(v, best);
        moved = true;
      }
    }
    if (!moved) break;
  }
  return part;
}

StructureDiagnostic structure_diagnostic(const SimpleGraph& g, const Motif& h2, const Params& p, int m) {
  p.validate();
  if (m < 1 || m > 10) throw SizeError("structure_diagnostic supports 1 <= m <= 10 blocks");
  const int chi = h2.chromatic_number();
  if (chi < 3)
    throw HypothesisError("structure_diagnostic needs chromatic number >= 3; '" + h2.name() + "' has " +
                          std::to_string(chi));
  const int r = chi - 1;
  StructureDiagnostic d;
  d.part_of = greedy_partition(g, r);

  std::vector<int> order(g.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return d.part_of[a] < d.part_of[b]; });
  std::vector<int> relabel(g.size());
  for (int pos = 0; pos < g.size(); ++pos) relabel[order[pos]] = pos;

  d.fitted = empirical_graphon(g.permuted(relabel)).coarsened(m);
  d.reference = StepGraphon::multipartite(r, logistic(2.0 * p.beta1));
  d.distance = delta_cut(d.fitted, d.reference);
  return d;
}

}  // namespace ergm
