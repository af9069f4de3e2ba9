#include "ergm/scan.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ergm/errors.hpp"
#include "ergm/graphon.hpp"
#include "ergm/parallel.hpp"

namespace ergm {

std::vector<double> ParamRange::values() const {
  if (count < 0) throw ValidationError("range count must be >= 0");
  if (!std::isfinite(lo) || !std::isfinite(hi)) throw ValidationError("range bounds must be finite");
  std::vector<double> v;
  v.reserve(count);
  for (int i = 0; i < count; ++i) v.push_back(lo + i * (hi - lo) / count);
  return v;
}

std::vector<ScanRecord> scan_grid(const Motif& h2, const ParamRange& beta1, const ParamRange& beta2,
                                  const ScanOptions& opts) {
  h2.require_h2();
  const int chi = h2.chromatic_number();
  if (chi < 3)
    throw HypothesisError("scan needs chromatic number >= 3 for the multipartite columns; '" + h2.name() +
                          "' has " + std::to_string(chi));
  if (opts.ascent_blocks > 0 && opts.ascent_blocks % (chi - 1) != 0)
    throw ValidationError("ascent block count must be a multiple of chi - 1 = " + std::to_string(chi - 1));

  const auto b1 = beta1.values();
  const auto b2 = beta2.values();
  std::vector<ScanRecord> out(b1.size() * b2.size());
  if (out.empty()) return out;

  std::optional<ExactEnsemble> ensemble;
  if (opts.exact_n > 0) ensemble.emplace(opts.exact_n, h2, ExactOptions{false, opts.workers});

  parallel_for(static_cast<std::int64_t>(out.size()), opts.workers, [&](std::int64_t idx) {
    const Params p{b1[idx / b2.size()], b2[idx % b2.size()]};
    const auto c = compare_ansatz(p, h2);
    ScanRecord& r = out[idx];
    r.beta1 = p.beta1;
    r.beta2 = p.beta2;
    r.er_value = c.er_value;
    r.mp_value = c.mp_value;
    r.winner = c.winner;
    r.C = c.order_parameter_C;
    r.u_star = c.u_star;
    r.p_star = c.p_star;
    if (ensemble) r.finite_n_gap = ensemble->gap(p);
    if (opts.ascent_blocks > 0) {
      AscentOptions ao;
      ao.restarts = opts.ascent_restarts;
      ao.seed = splitmix64(opts.seed ^ static_cast<std::uint64_t>(idx));
      ao.workers = 1;
      const double best = ascend_objective(h2, p, opts.ascent_blocks, ao).objective;
      r.ascent_objective = best;
      r.ascent_beats_ansatz = best > std::max(c.er_value, c.mp_value) + 1e-9;
    }
  });
  return out;
}

TransitionEstimate find_transition(const Motif& h2, double beta1, double tolerance) {
  h2.require_h2();
  if (!(tolerance > 0)) throw ValidationError("tolerance must be positive");
  const int k = h2.edge_count();
  const double mp = multipartite_free_energy({beta1, 0.0}, h2).value;
  auto diff = [&](double b2) { return er_free_energy({beta1, b2}, k) - mp; };

  double lo = kTransitionSearchFloor;
  double hi = 0.0;
  const double d_lo = diff(lo);
  const double d_hi = diff(hi);
  if (!(d_lo < 0 && d_hi > 0)) {
    std::ostringstream msg;
    msg << "no ansatz crossing on [" << lo << ", 0) at beta1 = " << beta1 << ": er - mp = " << d_lo
        << " at the floor, " << d_hi << " at 0";
    throw ConsistencyError(msg.str());
  }
  while (hi - lo > tolerance) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (diff(mid) < 0 ? lo : hi) = mid;
  }
  const double strip = -2.0 / (static_cast<double>(k) * (k - 1));
  if (hi > strip) {
    std::ostringstream msg;
    msg << "ansatz crossing bracket [" << lo << ", " << hi << "] reaches into the analytic strip beta2 > "
        << strip;
    throw ConsistencyError(msg.str());
  }
  TransitionEstimate t;
  t.beta1 = beta1;
  t.bracket_lo = lo;
  t.bracket_hi = hi;
  t.bracket_width = hi - lo;
  t.beta2_critical = 0.5 * (lo + hi);
  t.dbeta1_disordered = solve_u_star({beta1, hi}, k).u_star;
  t.dbeta1_multipartite = multipartite_free_energy({beta1, lo}, h2).edge_density;
  return t;
}

bool VerifyReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const VerifyCheck& c) { return c.passed; });
}

VerifyReport verify_point(const Motif& h2, const Params& p, const VerifyOptions& opts) {
  p.validate();
  h2.require_h2();
  VerifyReport rep;
  rep.params = p;
  rep.motif = h2.name();
  const bool has_mp = h2.chromatic_number() >= 3;
  if (has_mp) {
    rep.ansatz = compare_ansatz(p, h2);
  } else {
    const auto s = solve_u_star(p, h2.edge_count());
    rep.ansatz.er_value = s.value;
    rep.ansatz.u_star = s.u_star;
    rep.ansatz.winner_dbeta1 = s.u_star;
    rep.ansatz.winner_dbeta2 = std::pow(s.u_star, h2.edge_count());
  }

  if (opts.n_exact > 0) {
    rep.exact = exact_moments(opts.n_exact, h2, p);
    rep.checks.push_back({"dpsi_dbeta1_vs_variational", true, true,
                          std::abs(rep.exact->mean_t1 - rep.ansatz.winner_dbeta1), 0.0,
                          "exact E t(edge) at n = " + std::to_string(opts.n_exact) +
                              " minus the winning-branch beta1 derivative"});
    rep.checks.push_back({"dpsi_dbeta2_vs_variational", true, true,
                          std::abs(rep.exact->mean_t2 - rep.ansatz.winner_dbeta2), 0.0,
                          "exact E t(H2) minus the winning-branch beta2 derivative"});
  }

  ChainConfig cfg = opts.chain;
  cfg.motif = h2;
  cfg.params = p;
  if (!cfg.annealing.empty()) cfg.annealing.back().beta2 = p.beta2;
  rep.chain = run_chain(cfg);

  if (rep.exact && cfg.n == opts.n_exact) {
    const double d1 = std::abs(rep.chain->mean_t1 - rep.exact->mean_t1);
    const double d2 = std::abs(rep.chain->mean_t2 - rep.exact->mean_t2);
    rep.checks.push_back({"exact_vs_mcmc_t1", d1 <= 3 * rep.chain->se_t1 + 1e-12, false, d1,
                          3 * rep.chain->se_t1, "|MCMC - exact| against 3 batch-means standard errors"});
    rep.checks.push_back({"exact_vs_mcmc_t2", d2 <= 3 * rep.chain->se_t2 + 1e-12, false, d2,
                          3 * rep.chain->se_t2, "|MCMC - exact| against 3 batch-means standard errors"});
  }

  if (has_mp) {
    const auto diag = structure_diagnostic(rep.chain->final_graph, h2, p, opts.structure_blocks);
    rep.structure_distance = diag.distance;
    const bool multipartite = rep.ansatz.winner == Phase::multipartite;
    rep.checks.push_back({"structure_distance", !multipartite || diag.distance < 0.1, !multipartite,
                          diag.distance, 0.1,
                          "block-permutation cut distance of the final graph to p* g (upper bound)"});
    if (multipartite) {
      const double edge_density = multipartite_free_energy(p, h2).edge_density;
      const double dt1 = std::abs(rep.chain->mean_t1 - edge_density);
      rep.checks.push_back({"mcmc_h2_density", rep.chain->mean_t2 < 0.01, false, rep.chain->mean_t2, 0.01,
                            "multipartite branch predicts t(H2) = 0"});
      rep.checks.push_back({"mcmc_edge_density", dt1 < 0.05, false, dt1, 0.05,
                            "|MCMC t(edge) - p* (r-1)/r|"});
    }
  }
  return rep;
}

}  // namespace ergm
