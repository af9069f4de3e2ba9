#include "ergm/graphon.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <iomanip>
#include <numeric>
#include <ostream>
#include <random>

#include "ergm/errors.hpp"
#include "ergm/parallel.hpp"
#include "ergm/variational.hpp"

namespace ergm {

StepGraphon::StepGraphon(int m, double fill) : m_(m) {
  if (m < 1) throw ValidationError("step graphon needs at least one block");
  if (!(fill >= 0 && fill <= 1)) throw ValidationError("graphon values must lie in [0,1]");
  values_.assign(static_cast<std::size_t>(m) * m, fill);
}

StepGraphon::StepGraphon(int m, std::vector<double> values) : m_(m), values_(std::move(values)) {
  if (m < 1) throw ValidationError("step graphon needs at least one block");
  if (values_.size() != static_cast<std::size_t>(m) * m)
    throw ValidationError("graphon value count does not match m*m");
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) {
      const double v = (*this)(a, b);
      if (!(v >= 0 && v <= 1)) throw ValidationError("graphon values must lie in [0,1]");
      if (v != (*this)(b, a)) throw ValidationError("graphon matrix is not symmetric");
    }
}

StepGraphon StepGraphon::constant(double u, int m) { return StepGraphon(m, u); }

StepGraphon StepGraphon::multipartite(int r, double p, int m) {
  if (r < 1) throw ValidationError("multipartite graphon needs r >= 1 parts");
  if (m == 0) m = r;
  StepGraphon g(m);
  for (int a = 0; a < m; ++a)
    for (int b = a + 1; b < m; ++b)
      if (a * r / m != b * r / m) g.set(a, b, p);
  return g;
}

void StepGraphon::set(int a, int b, double v) {
  if (!(v >= 0 && v <= 1)) throw ValidationError("graphon values must lie in [0,1]");
  values_[static_cast<std::size_t>(a) * m_ + b] = v;
  values_[static_cast<std::size_t>(b) * m_ + a] = v;
}

StepGraphon StepGraphon::refined(int l) const {
  if (l % m_ != 0) throw ValidationError("refinement must be a multiple of the block count");
  const int f = l / m_;
  StepGraphon r(l);
  for (int a = 0; a < l; ++a)
    for (int b = 0; b < l; ++b) r.values_[static_cast<std::size_t>(a) * l + b] = (*this)(a / f, b / f);
  return r;
}

StepGraphon StepGraphon::permuted(std::span<const int> perm) const {
  StepGraphon r(m_);
  for (int a = 0; a < m_; ++a)
    for (int b = 0; b < m_; ++b)
      r.values_[static_cast<std::size_t>(a) * m_ + b] = (*this)(perm[a], perm[b]);
  return r;
}

StepGraphon StepGraphon::coarsened(int m) const {
  if (m < 1) throw ValidationError("coarsening needs at least one block");
  // Work in units of 1/(m_ * m): source block a spans [a m, (a+1) m), target
  // block A spans [A m_, (A+1) m_).
  auto overlap = [&](int a, int big_a) {
    const long lo = std::max<long>(static_cast<long>(a) * m, static_cast<long>(big_a) * m_);
    const long hi = std::min<long>(static_cast<long>(a + 1) * m, static_cast<long>(big_a + 1) * m_);
    return std::max<long>(0, hi - lo);
  };
  StepGraphon r(m);
  const double norm = static_cast<double>(m_) * m_;
  for (int big_a = 0; big_a < m; ++big_a)
    for (int big_b = big_a; big_b < m; ++big_b) {
      double sum = 0;
      for (int a = 0; a < m_; ++a) {
        const long oa = overlap(a, big_a);
        if (!oa) continue;
        for (int b = 0; b < m_; ++b) {
          const long ob = overlap(b, big_b);
          if (ob) sum += static_cast<double>(oa * ob) * (*this)(a, b);
        }
      }
      r.set(big_a, big_b, std::clamp(sum / norm, 0.0, 1.0));
    }
  return r;
}

StepGraphon read_graphon(std::istream& in) {
  int m = 0;
  if (!(in >> m) || m < 1) throw ValidationError("graphon file: first token must be a positive block count");
  std::vector<double> v(static_cast<std::size_t>(m) * m);
  for (auto& x : v)
    if (!(in >> x)) throw ValidationError("graphon file: expected " + std::to_string(m * m) + " values");
  std::string extra;
  if (in >> extra) throw ValidationError("graphon file: trailing data '" + extra + "'");
  return StepGraphon(m, std::move(v));
}

StepGraphon read_graphon_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open graphon file " + path);
  return read_graphon(in);
}

void write_graphon(std::ostream& out, const StepGraphon& h) {
  const int m = h.blocks();
  out << m << '\n' << std::setprecision(17);
  for (int a = 0; a < m; ++a) {
    for (int b = 0; b < m; ++b) out << (b ? " " : "") << h(a, b);
    out << '\n';
  }
}

namespace {

void check_assignment_cap(const Motif& h, int m) {
  double size = 1;
  for (int i = 0; i < h.order(); ++i) size *= m;
  if (size > static_cast<double>(kMaxBlockAssignments))
    throw SizeError("t_graphon: m^l = " + std::to_string(m) + "^" + std::to_string(h.order()) +
                    " exceeds the cap of " + std::to_string(kMaxBlockAssignments) + " block assignments");
}

double power(int m, int l) {
  double d = 1;
  for (int i = 0; i < l; ++i) d *= m;
  return d;
}

// Edges grouped by their later endpoint in the identity vertex order.
std::vector<std::vector<int>> back_edges(const Motif& h) {
  std::vector<std::vector<int>> back(h.order());
  for (auto [a, b] : h.edges()) back[std::max(a, b)].push_back(std::min(a, b));
  return back;
}

double assign_sum(int depth, double prod, const std::vector<std::vector<int>>& back, const StepGraphon& g,
                  std::vector<int>& blocks) {
  const int l = static_cast<int>(back.size());
  if (depth == l) return prod;
  double total = 0;
  for (int x = 0; x < g.blocks(); ++x) {
    double p = prod;
    for (int u : back[depth]) p *= g(blocks[u], x);
    if (p == 0) continue;
    blocks[depth] = x;
    total += assign_sum(depth + 1, p, back, g, blocks);
  }
  return total;
}

int lcm_blocks(const StepGraphon& f, const StepGraphon& g) {
  const int l = std::lcm(f.blocks(), g.blocks());
  if (l > kMaxCutRefinement)
    throw SizeError("cut distance: common refinement of " + std::to_string(l) + " blocks exceeds cap " +
                    std::to_string(kMaxCutRefinement));
  return l;
}

// Exact cut norm of the L x L block matrix d (row-major), in units of block
// measure. For each row subset S the best column subset takes all positive
// or all negative column sums; Gray-code order updates the sums in O(L).
CutWitness cut_norm_matrix(const std::vector<double>& d, int l) {
  CutWitness best{0.0, l, 0, 0};
  std::vector<double> col(l, 0.0);
  const std::uint32_t total = 1u << l;
  std::uint32_t prev = 0;
  for (std::uint32_t i = 1; i < total; ++i) {
    const std::uint32_t gray = i ^ (i >> 1);
    const std::uint32_t flip = gray ^ prev;
    const int a = std::countr_zero(flip);
    const double sign = (gray & flip) ? 1.0 : -1.0;
    for (int b = 0; b < l; ++b) col[b] += sign * d[static_cast<std::size_t>(a) * l + b];
    prev = gray;
    double pos = 0, neg = 0;
    std::uint32_t pos_mask = 0, neg_mask = 0;
    for (int b = 0; b < l; ++b) {
      if (col[b] > 0) {
        pos += col[b];
        pos_mask |= 1u << b;
      } else if (col[b] < 0) {
        neg -= col[b];
        neg_mask |= 1u << b;
      }
    }
    if (pos > best.value) best = {pos, l, gray, pos_mask};
    if (neg > best.value) best = {neg, l, gray, neg_mask};
  }
  // Re-evaluate the witness directly so its value is not subject to the
  // incremental update's rounding.
  double exact = 0;
  for (int a = 0; a < l; ++a)
    if (best.rows >> a & 1u)
      for (int b = 0; b < l; ++b)
        if (best.cols >> b & 1u) exact += d[static_cast<std::size_t>(a) * l + b];
  best.value = std::abs(exact) / (static_cast<double>(l) * l);
  return best;
}

std::vector<double> difference(const StepGraphon& f, const StepGraphon& g) {
  std::vector<double> d(f.values().size());
  for (std::size_t i = 0; i < d.size(); ++i) d[i] = f.values()[i] - g.values()[i];
  return d;
}

}  // namespace

double t_graphon(const Motif& h, const StepGraphon& g) {
  check_assignment_cap(h, g.blocks());
  std::vector<int> blocks(h.order(), 0);
  return assign_sum(0, 1.0, back_edges(h), g, blocks) / power(g.blocks(), h.order());
}

std::vector<double> t_graphon_gradient(const Motif& h, const StepGraphon& g) {
  check_assignment_cap(h, g.blocks());
  const int m = g.blocks();
  const int l = h.order();
  const auto& edges = h.edges();
  const int k = static_cast<int>(edges.size());
  std::vector<double> grad(static_cast<std::size_t>(m) * m, 0.0);
  std::vector<int> blocks(l, 0);
  std::vector<double> val(k), prefix(k + 1), suffix(k + 1);
  for (;;) {
    for (int e = 0; e < k; ++e) val[e] = g(blocks[edges[e].first], blocks[edges[e].second]);
    prefix[0] = 1;
    for (int e = 0; e < k; ++e) prefix[e + 1] = prefix[e] * val[e];
    suffix[k] = 1;
    for (int e = k - 1; e >= 0; --e) suffix[e] = suffix[e + 1] * val[e];
    for (int e = 0; e < k; ++e) {
      const double others = prefix[e] * suffix[e + 1];
      if (others != 0)
        grad[static_cast<std::size_t>(blocks[edges[e].first]) * m + blocks[edges[e].second]] += others;
    }
    int pos = 0;
    while (pos < l && ++blocks[pos] == m) blocks[pos++] = 0;
    if (pos == l) break;
  }
  const double norm = power(m, l);
  for (double& x : grad) x /= norm;
  return grad;
}

double I_graphon(const StepGraphon& g) {
  double s = 0;
  for (double v : g.values()) s += entropy_I(v);
  return s / (static_cast<double>(g.blocks()) * g.blocks());
}

double T_graphon(const StepGraphon& g, const Motif& h2, const Params& p) {
  return p.beta1 * t_graphon(Motif::edge(), g) + p.beta2 * t_graphon(h2, g);
}

GraphonFunctionals functionals(const StepGraphon& g, const Motif& h2, const Params& p) {
  GraphonFunctionals r;
  r.t_h1 = t_graphon(Motif::edge(), g);
  r.t_h2 = t_graphon(h2, g);
  r.I_value = I_graphon(g);
  r.T_value = p.beta1 * r.t_h1 + p.beta2 * r.t_h2;
  r.objective = r.T_value - r.I_value;
  return r;
}

CutWitness cut_norm_witness(const StepGraphon& f, const StepGraphon& g) {
  const int l = lcm_blocks(f, g);
  return cut_norm_matrix(difference(f.refined(l), g.refined(l)), l);
}

double cut_norm_dist(const StepGraphon& f, const StepGraphon& g) { return cut_norm_witness(f, g).value; }

double cut_objective(const StepGraphon& f, const StepGraphon& g, std::span<const double> s,
                     std::span<const double> t) {
  const int l = lcm_blocks(f, g);
  if (static_cast<int>(s.size()) != l || static_cast<int>(t.size()) != l)
    throw ValidationError("cut_objective: membership vectors must have one entry per refined block");
  const auto d = difference(f.refined(l), g.refined(l));
  double sum = 0;
  for (int a = 0; a < l; ++a)
    for (int b = 0; b < l; ++b) sum += s[a] * t[b] * d[static_cast<std::size_t>(a) * l + b];
  return sum / (static_cast<double>(l) * l);
}

DeltaCut delta_cut_search(const StepGraphon& f, const StepGraphon& g) {
  const int l = lcm_blocks(f, g);
  const StepGraphon fr = f.refined(l);
  const StepGraphon gr = g.refined(l);
  auto eval = [&](const std::vector<int>& perm) {
    return cut_norm_matrix(difference(fr.permuted(perm), gr), l).value;
  };
  DeltaCut best;
  best.permutation.resize(l);
  std::iota(best.permutation.begin(), best.permutation.end(), 0);
  best.value = eval(best.permutation);
  if (l <= kMaxExhaustivePermutationBlocks) {
    std::vector<int> perm = best.permutation;
    while (std::next_permutation(perm.begin(), perm.end())) {
      const double v = eval(perm);
      if (v < best.value) best = {v, perm, true};
    }
    return best;
  }
  best.exhaustive = false;
  bool improved = true;
  while (improved && best.value > 0) {
    improved = false;
    for (int a = 0; a < l && !improved; ++a)
      for (int b = a + 1; b < l && !improved; ++b) {
        std::vector<int> perm = best.permutation;
        std::swap(perm[a], perm[b]);
        const double v = eval(perm);
        if (v < best.value - 1e-15) {
          best.value = v;
          best.permutation = std::move(perm);
          improved = true;
        }
      }
  }
  return best;
}

double delta_cut(const StepGraphon& f, const StepGraphon& g) { return delta_cut_search(f, g).value; }

namespace {

constexpr double kEntryLo = 1e-9;
constexpr double kEntryHi = 1.0 - 1e-9;

struct FreeEntries {
  int m;
  std::vector<std::pair<int, int>> index;  // (a, b), a <= b

  explicit FreeEntries(int m_) : m(m_) {
    for (int a = 0; a < m; ++a)
      for (int b = a; b < m; ++b) index.emplace_back(a, b);
  }
  std::vector<double> extract(const StepGraphon& g) const {
    std::vector<double> x;
    for (auto [a, b] : index) x.push_back(g(a, b));
    return x;
  }
  StepGraphon build(const std::vector<double>& x) const {
    StepGraphon g(m);
    for (std::size_t i = 0; i < index.size(); ++i) g.set(index[i].first, index[i].second, x[i]);
    return g;
  }
};

double objective_of(const StepGraphon& g, const Motif& h2, const Params& p) {
  return functionals(g, h2, p).objective;
}

// Gradient of T - I per free entry divided by that entry's measure
// (1/m^2 on the diagonal, 2/m^2 off it): the L^2 gradient of the functional.
std::vector<double> scaled_gradient(const FreeEntries& fe, const StepGraphon& g, const Motif& h2,
                                    const Params& p, std::vector<double>& raw) {
  const int m = fe.m;
  const auto g1 = t_graphon_gradient(Motif::edge(), g);
  const auto g2 = t_graphon_gradient(h2, g);
  const double cell = 1.0 / (static_cast<double>(m) * m);
  std::vector<double> dir(fe.index.size());
  raw.assign(fe.index.size(), 0.0);
  for (std::size_t i = 0; i < fe.index.size(); ++i) {
    const auto [a, b] = fe.index[i];
    const std::size_t ab = static_cast<std::size_t>(a) * m + b;
    const std::size_t ba = static_cast<std::size_t>(b) * m + a;
    const double dt1 = a == b ? g1[ab] : g1[ab] + g1[ba];
    const double dt2 = a == b ? g2[ab] : g2[ab] + g2[ba];
    const double weight = (a == b ? 1.0 : 2.0) * cell;
    raw[i] = p.beta1 * dt1 + p.beta2 * dt2 - weight * entropy_I_derivative(g(a, b));
    dir[i] = raw[i] / weight;
  }
  return dir;
}

std::vector<double> clipped(std::vector<double> x) {
  for (double& v : x) v = std::clamp(v, kEntryLo, kEntryHi);
  return x;
}

}  // namespace

AscentResult ascend_from(const Motif& h2, const Params& p, StepGraphon start, int max_iterations,
                         double tolerance) {
  p.validate();
  const FreeEntries fe(start.blocks());
  std::vector<double> x = clipped(fe.extract(start));
  StepGraphon g = fe.build(x);
  double value = objective_of(g, h2, p);
  AscentResult res;
  std::vector<double> raw;
  for (res.iterations = 0; res.iterations < max_iterations; ++res.iterations) {
    const auto dir = scaled_gradient(fe, g, h2, p, raw);
    double mapping = 0;
    for (std::size_t i = 0; i < x.size(); ++i)
      mapping = std::max(mapping, std::abs(std::clamp(x[i] + dir[i], kEntryLo, kEntryHi) - x[i]));
    if (mapping < tolerance) {
      res.converged = true;
      break;
    }
    // Backtracking (Armijo) line search halving from step 1.
    bool accepted = false;
    for (double step = 1.0; step > 1e-30; step *= 0.5) {
      std::vector<double> trial(x.size());
      double slope = 0;
      for (std::size_t i = 0; i < x.size(); ++i) {
        trial[i] = std::clamp(x[i] + step * dir[i], kEntryLo, kEntryHi);
        slope += raw[i] * (trial[i] - x[i]);
      }
      StepGraphon tg = fe.build(trial);
      const double tv = objective_of(tg, h2, p);
      if (tv > value && tv >= value + 1e-4 * slope) {
        accepted = true;
        x = std::move(trial);
        g = std::move(tg);
        value = tv;
        break;
      }
    }
    if (!accepted) {
      // No ascent step exists at working precision.
      res.converged = true;
      break;
    }
  }
  res.graphon = std::move(g);
  res.objective = value;
  return res;
}

AscentResult ascend_objective(const Motif& h2, const Params& p, int m, const AscentOptions& opts) {
  if (m < 1 || m > 8) throw SizeError("ascend_objective supports 1 <= m <= 8 blocks, got " + std::to_string(m));
  if (h2.order() > 6) throw SizeError("ascend_objective supports motifs with at most 6 vertices");
  h2.require_h2();
  p.validate();

  std::vector<StepGraphon> starts;
  const auto u = solve_u_star(p, h2.edge_count());
  starts.push_back(StepGraphon::constant(std::clamp(u.u_star, kEntryLo, kEntryHi), m));
  if (h2.chromatic_number() >= 3 && m >= h2.chromatic_number() - 1) {
    const auto mp = multipartite_free_energy(p, h2);
    starts.push_back(StepGraphon::multipartite(mp.parts, mp.p_star, m));
  }
  for (int r = 0; r < opts.restarts; ++r) {
    std::mt19937_64 rng(splitmix64(opts.seed + static_cast<std::uint64_t>(r)));
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    StepGraphon s(m);
    for (int a = 0; a < m; ++a)
      for (int b = a; b < m; ++b) s.set(a, b, unif(rng));
    starts.push_back(std::move(s));
  }

  std::vector<AscentResult> results(starts.size());
  parallel_for(static_cast<std::int64_t>(starts.size()), opts.workers, [&](std::int64_t i) {
    results[i] = ascend_from(h2, p, starts[i], opts.max_iterations, opts.tolerance);
  });
  std::size_t best = 0;
  for (std::size_t i = 1; i < results.size(); ++i)
    if (results[i].objective > results[best].objective) best = i;
  return results[best];
}

}  // namespace ergm
