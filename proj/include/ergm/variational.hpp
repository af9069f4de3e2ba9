#pragma once

#include <string_view>

#include "ergm/motif.hpp"
#include "ergm/params.hpp"

namespace ergm {

// I(u) = u/2 ln u + (1-u)/2 ln(1-u), with the limit value 0 at u = 0, 1.
// DomainError outside [0,1].
double entropy_I(double u);

// I'(u) = 1/2 ln(u / (1-u)).
double entropy_I_derivative(double u);

struct ScalarSolution {
  double u_star = 0.5;
  double value = 0;
  bool unique = true;  // grid scan saw a single local maximum
};

// Objective of the constant-graphon problem:
//   beta1 u + beta2 u^k - I(u).
double scalar_objective(const Params& p, int k, double u);

// Global maximizer on [0,1]: 1024-point grid to bracket, then bisection on
// beta1 + k beta2 u^(k-1) = 1/2 ln(u/(1-u)) inside [1e-12, 1 - 1e-12].
ScalarSolution solve_u_star(const Params& p, int k);

// Value of the constant-graphon problem, i.e. T - I maximized over constants.
double er_free_energy(const Params& p, int k);

struct MultipartiteSolution {
  double value = 0;
  double p_star = 0;
  int parts = 0;           // r = chi(H2) - 1
  double edge_density = 0;  // t(edge, p* g) = p* (r-1)/r
};

// Maximizes T - I over p g, g the complete r-partite indicator with equal
// parts and r = chi(H2) - 1. H2 has no homomorphism into g, so the objective
// is ((r-1)/r)(beta1 p - I(p)), maximized at p* = logistic(2 beta1).
// HypothesisError when chi(H2) < 3.
MultipartiteSolution multipartite_free_energy(const Params& p, const Motif& h2);

enum class Phase { disordered, multipartite };
std::string_view to_string(Phase w);

struct AnsatzComparison {
  double er_value = 0;
  double mp_value = 0;
  double u_star = 0;
  double p_star = 0;
  Phase winner = Phase::disordered;
  // (t(H1, h*))^k - t(H2, h*) at the winning ansatz h*: 0 for a constant
  // graphon, (p*(r-1)/r)^k on the multipartite branch.
  double order_parameter_C = 0;
  // d/d beta1 and d/d beta2 of the winning branch value.
  double winner_dbeta1 = 0;
  double winner_dbeta2 = 0;
};

AnsatzComparison compare_ansatz(const Params& p, const Motif& h2);

}  // namespace ergm
