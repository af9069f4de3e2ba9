#include "ergm/variational.hpp"

#include <array>
#include <cmath>
#include <string>

#include "ergm/errors.hpp"

namespace ergm {

namespace {

constexpr double kClipLo = 1e-12;
constexpr double kClipHi = 1.0 - 1e-12;
constexpr int kGridPoints = 1024;

double stationarity(const Params& p, int k, double u) {
  return p.beta1 + k * p.beta2 * std::pow(u, k - 1) - entropy_I_derivative(u);
}

}  // namespace

double entropy_I(double u) {
  if (!(u >= 0.0 && u <= 1.0)) throw DomainError("entropy_I: u = " + std::to_string(u) + " not in [0,1]");
  double v = 0;
  if (u > 0) v += 0.5 * u * std::log(u);
  if (u < 1) v += 0.5 * (1 - u) * std::log1p(-u);
  return v;
}

double entropy_I_derivative(double u) { return 0.5 * (std::log(u) - std::log1p(-u)); }

double scalar_objective(const Params& p, int k, double u) {
  return p.beta1 * u + p.beta2 * std::pow(u, k) - entropy_I(u);
}

ScalarSolution solve_u_star(const Params& p, int k) {
  p.validate();
  if (k < 1) throw ValidationError("edge count k must be positive");

  std::array<double, kGridPoints> u{}, f{};
  const double step = (kClipHi - kClipLo) / (kGridPoints - 1);
  for (int i = 0; i < kGridPoints; ++i) {
    u[i] = kClipLo + i * step;
    f[i] = scalar_objective(p, k, u[i]);
  }
  int best = 0;
  int local_maxima = 0;
  for (int i = 0; i < kGridPoints; ++i) {
    const bool left_ok = i == 0 || f[i] > f[i - 1];
    const bool right_ok = i == kGridPoints - 1 || f[i] >= f[i + 1];
    if (left_ok && right_ok) ++local_maxima;
    if (f[i] > f[best]) best = i;
  }

  double lo = u[best > 0 ? best - 1 : 0];
  double hi = u[best < kGridPoints - 1 ? best + 1 : kGridPoints - 1];
  double root;
  if (stationarity(p, k, lo) <= 0) {
    root = lo;
  } else if (stationarity(p, k, hi) >= 0) {
    root = hi;
  } else {
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) break;
      if (stationarity(p, k, mid) > 0)
        lo = mid;
      else
        hi = mid;
    }
    root = std::abs(stationarity(p, k, lo)) < std::abs(stationarity(p, k, hi)) ? lo : hi;
  }
  return {root, scalar_objective(p, k, root), local_maxima == 1};
}

double er_free_energy(const Params& p, int k) { return solve_u_star(p, k).value; }

MultipartiteSolution multipartite_free_energy(const Params& p, const Motif& h2) {
  p.validate();
  const int chi = h2.chromatic_number();
  if (chi < 3)
    throw HypothesisError("multipartite ansatz needs chromatic number >= 3; '" + h2.name() +
                          "' has " + std::to_string(chi));
  MultipartiteSolution s;
  s.parts = chi - 1;
  const double frac = static_cast<double>(s.parts - 1) / s.parts;
  s.p_star = logistic(2.0 * p.beta1);
  s.value = frac * (p.beta1 * s.p_star - entropy_I(s.p_star));
  s.edge_density = s.p_star * frac;
  return s;
}

std::string_view to_string(Phase w) {
  return w == Phase::disordered ? "disordered" : "multipartite";
}

AnsatzComparison compare_ansatz(const Params& p, const Motif& h2) {
  const auto mp = multipartite_free_energy(p, h2);
  const int k = h2.edge_count();
  const auto er = solve_u_star(p, k);
  AnsatzComparison c;
  c.er_value = er.value;
  c.mp_value = mp.value;
  c.u_star = er.u_star;
  c.p_star = mp.p_star;
  if (mp.value > er.value) {
    c.winner = Phase::multipartite;
    c.order_parameter_C = std::pow(mp.edge_density, k);
    c.winner_dbeta1 = mp.edge_density;
    c.winner_dbeta2 = 0;
  } else {
    c.winner = Phase::disordered;
    c.order_parameter_C = 0;
    c.winner_dbeta1 = er.u_star;
    c.winner_dbeta2 = std::pow(er.u_star, k);
  }
  return c;
}

}  // namespace ergm
